//! Classification of singular forms: the corank-one pipeline, the plane-curve
//! cases and an exhaustive orbit oracle. Every run yields a [`Certificate`].

mod corank;
mod orbits;
mod plane;
mod shapes;

use std::fmt;

use crate::error::{Error, Result};
use crate::fullrank::normalize_full_rank;
use crate::gf::{Elem, Field, Twist};
use crate::linalg::{Matrix, Vector};

pub use corank::{
    classify_corank_one, classify_corank_one_in, lemma4_reduce, lemma5_step, lemma_g_chain, lemma_h_chain,
    lemma_h_prime_chain, move_kernel_to_last, Reduction,
};
pub use orbits::{brute_force_orbits, LadderLevel, OrbitClass, OrbitReport, ORBIT_BUDGET};
pub use plane::{classify_plane, classify_plane_in, rank_one_factors};
pub use shapes::{b_shape, g_shape, h_prime_shape, h_shape, r_shape};

/// Normal-form label of a certificate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Ws(usize),
    Identity,
    PlaneZ0,
    PlaneZ1,
    PlaneX0,
    PlaneX1,
    PlaneX2,
}

impl Label {
    /// The matrix the certified congruence must reach, of size `n + 1`.
    pub fn normal_form(&self, field: &Field, n: usize) -> Result<Matrix> {
        let plane = |s| if n == 2 { w_matrix(field, 2, s) } else { Err(Error::IndexOutOfRange { s, n }) };
        match *self {
            Label::Ws(s) => w_matrix(field, n, s),
            Label::Identity => Ok(Matrix::identity(field, n + 1)),
            Label::PlaneX0 => plane(0),
            Label::PlaneX1 => plane(1),
            Label::PlaneX2 => plane(2),
            Label::PlaneZ0 | Label::PlaneZ1 => {
                if n != 2 {
                    return Err(Error::IndexOutOfRange { s: 0, n });
                }
                let mut m = Matrix::zeros(field, 3, 3);
                let (i, j) = if *self == Label::PlaneZ0 { (0, 0) } else { (1, 0) };
                m.set(i, j, field.one());
                Ok(m)
            }
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Ws(s) => write!(f, "W_{s}"),
            Label::Identity => write!(f, "I"),
            Label::PlaneZ0 => write!(f, "Z0"),
            Label::PlaneZ1 => write!(f, "Z1"),
            Label::PlaneX0 => write!(f, "X0"),
            Label::PlaneX1 => write!(f, "X1"),
            Label::PlaneX2 => write!(f, "X2"),
        }
    }
}

/// Names of the recorded transformations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepName {
    KernelMove,
    FullRankOnBlock,
    Permute,
    Scale,
    TG,
    TH,
    THPrime,
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    TPrime,
    TDoublePrime,
    LinePair,
}

impl StepName {
    pub const ALL: [StepName; 17] = [
        StepName::KernelMove,
        StepName::FullRankOnBlock,
        StepName::Permute,
        StepName::Scale,
        StepName::TG,
        StepName::TH,
        StepName::THPrime,
        StepName::T1,
        StepName::T2,
        StepName::T3,
        StepName::T4,
        StepName::T5,
        StepName::T6,
        StepName::T7,
        StepName::TPrime,
        StepName::TDoublePrime,
        StepName::LinePair,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            StepName::KernelMove => "kernel-move",
            StepName::FullRankOnBlock => "fullrank-on-block",
            StepName::Permute => "permute",
            StepName::Scale => "scale",
            StepName::TG => "T_G",
            StepName::TH => "T_H",
            StepName::THPrime => "T_H'",
            StepName::T1 => "T_1",
            StepName::T2 => "T_2",
            StepName::T3 => "T_3",
            StepName::T4 => "T_4",
            StepName::T5 => "T_5",
            StepName::T6 => "T_6",
            StepName::T7 => "T_7",
            StepName::TPrime => "T'",
            StepName::TDoublePrime => "T''",
            StepName::LinePair => "line-pair",
        }
    }

    pub fn parse(s: &str) -> Option<StepName> {
        StepName::ALL.into_iter().find(|n| n.as_str() == s)
    }
}

impl fmt::Display for StepName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Bookkeeping attached to a step; purely informational for the verifier.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct StepParams {
    pub s: Option<usize>,
    pub r: Option<usize>,
    pub vectors: Vec<(String, Vector)>,
    pub note: Option<String>,
}

impl StepParams {
    pub fn s(s: usize) -> StepParams {
        StepParams { s: Some(s), ..Default::default() }
    }

    pub fn sr(s: usize, r: usize) -> StepParams {
        StepParams { s: Some(s), r: Some(r), ..Default::default() }
    }

    pub fn with(mut self, name: &str, v: &[Elem]) -> StepParams {
        self.vectors.push((name.to_string(), v.to_vec()));
        self
    }

    pub fn note(mut self, note: &str) -> StepParams {
        self.note = Some(note.to_string());
        self
    }
}

/// One transformation and the matrix it produces from its predecessor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub name: StepName,
    pub params: StepParams,
    pub matrix: Matrix,
    pub claimed: Matrix,
}

/// A replayable classification result. `input` lives in its own field;
/// everything else lives in `field`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub input: Matrix,
    pub q: Twist,
    pub label: Label,
    pub t: Matrix,
    pub field: Field,
    pub trace: Vec<Step>,
    pub seed: Option<u64>,
}

impl Certificate {
    /// `n` such that the matrices have size `n + 1`.
    pub fn n(&self) -> usize {
        self.input.rows() - 1
    }

    /// Index `s` of a `W_s` label, including the plane aliases.
    pub fn s(&self) -> Option<usize> {
        match self.label {
            Label::Ws(s) => Some(s),
            Label::PlaneX0 => Some(0),
            Label::PlaneX1 => Some(1),
            Label::PlaneX2 => Some(2),
            _ => None,
        }
    }
}

/// Dispatches on rank: full rank to the identity, rank `n` to `W_s`, and
/// rank one in the plane to `Z0` or `Z1`.
pub fn classify(a: &Matrix, q: Twist, cap: usize) -> Result<Certificate> {
    if !a.is_square() || a.rows() < 2 {
        return Err(Error::DimensionMismatch(format!("need a square matrix of size at least 2, got {}x{}", a.rows(), a.cols())));
    }
    Twist::for_field(q.q(), a.field())?;
    let size = a.rows();
    let rank = a.rank();
    if rank == size {
        return normalize(a, q, cap);
    }
    if size == 3 {
        return classify_plane(a, q, cap);
    }
    if rank + 1 == size {
        return classify_corank_one(a, q, cap);
    }
    Err(Error::RankMismatch { expected: format!("{} or {}", size - 1, size), found: rank })
}

/// Certificate for a full-rank matrix, a single step onto the identity.
pub fn normalize(a: &Matrix, q: Twist, cap: usize) -> Result<Certificate> {
    let w = normalize_full_rank(a, q, cap)?;
    let size = a.rows();
    let identity = Matrix::identity(&w.field, size);
    let step = Step { name: StepName::FullRankOnBlock, params: StepParams::s(size), matrix: w.t.clone(), claimed: identity };
    Ok(Certificate { input: a.clone(), q, label: Label::Identity, t: w.t, field: w.field, trace: vec![step], seed: None })
}

/// `W_s = diag(I_s, E_{n-s+1})`.
pub fn w_matrix(field: &Field, n: usize, s: usize) -> Result<Matrix> {
    if s > n {
        return Err(Error::IndexOutOfRange { s, n });
    }
    Ok(Matrix::identity(field, s).direct_sum(&e_matrix(field, n - s + 1)))
}

/// `r x r` matrix with ones directly below the diagonal.
pub fn e_matrix(field: &Field, r: usize) -> Matrix {
    let mut m = Matrix::zeros(field, r, r);
    for i in 1..r {
        m.set(i, i - 1, field.one());
    }
    m
}

// Accumulates steps applied to a working matrix.
pub(crate) struct Run {
    pub q: Twist,
    pub cur: Matrix,
    pub t: Matrix,
    pub steps: Vec<Step>,
}

impl Run {
    pub fn new(a: &Matrix, q: Twist) -> Run {
        Run { q, cur: a.clone(), t: Matrix::identity(a.field(), a.rows()), steps: Vec::new() }
    }

    pub fn field(&self) -> &Field {
        self.cur.field()
    }

    pub fn n(&self) -> usize {
        self.cur.rows() - 1
    }

    pub fn apply(&mut self, name: StepName, params: StepParams, matrix: Matrix) -> Result<()> {
        let claimed = self.cur.congruence_unchecked(&matrix, self.q)?;
        self.t = self.t.mul(&matrix)?;
        self.cur = claimed.clone();
        self.steps.push(Step { name, params, matrix, claimed });
        Ok(())
    }

    /// Fails unless the working matrix equals `expected`.
    pub fn expect(&self, shape: &str, expected: &Matrix) -> Result<()> {
        if &self.cur == expected {
            Ok(())
        } else {
            Err(shape_error(shape, &self.cur))
        }
    }

    pub fn certificate(self, input: &Matrix, label: Label) -> Certificate {
        Certificate {
            input: input.clone(),
            q: self.q,
            label,
            t: self.t,
            field: self.cur.field().clone(),
            trace: self.steps,
            seed: None,
        }
    }
}

// Invertible matrix with the given columns at the given positions, the rest
// filled by standard basis vectors in increasing order.
pub(crate) fn basis_with(k: &Field, n: usize, fixed: &[(usize, &Vector)]) -> Result<Matrix> {
    let mut cols: Vec<Vector> = fixed.iter().map(|(_, v)| (*v).clone()).collect();
    let mut fill = Vec::new();
    for i in 0..n {
        if cols.len() == n {
            break;
        }
        let mut e = vec![k.zero(); n];
        e[i] = k.one();
        cols.push(e.clone());
        if Matrix::from_cols(k, &cols)?.rank() < cols.len() {
            cols.pop();
        } else {
            fill.push(e);
        }
    }
    let mut t = Matrix::zeros(k, n, n);
    let mut fill = fill.into_iter();
    for j in 0..n {
        match fixed.iter().find(|(p, _)| *p == j) {
            Some((_, v)) => t.set_col(j, v),
            None => t.set_col(j, &fill.next().ok_or(Error::Singular)?),
        }
    }
    Ok(t)
}

pub(crate) fn shape_error(shape: &str, m: &Matrix) -> Error {
    Error::ShapeMismatch { shape: shape.to_string(), matrix: m.pretty() }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;

    #[test]
    fn normal_form_examples() {
        let k = build_field(2, 1).unwrap();
        assert_eq!(w_matrix(&k, 1, 0).unwrap(), Matrix::from_ints(&k, &[&[0, 0], &[1, 0]]));
        assert_eq!(w_matrix(&k, 1, 1).unwrap(), Matrix::from_ints(&k, &[&[1, 0], &[0, 0]]));
        assert_eq!(w_matrix(&k, 2, 2).unwrap(), Matrix::from_ints(&k, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]));
        assert!(w_matrix(&k, 1, 2).is_err());
        assert_eq!(e_matrix(&k, 1), Matrix::zeros(&k, 1, 1));
        assert_eq!(e_matrix(&k, 0).rows(), 0);
    }

    #[test]
    fn step_names_roundtrip() {
        for n in StepName::ALL {
            assert_eq!(StepName::parse(n.as_str()), Some(n));
        }
        assert_eq!(StepName::parse("T_9"), None);
    }

    #[test]
    fn w_matrix_kernel_is_last_coordinate() {
        let k = build_field(3, 1).unwrap();
        for n in 1..5 {
            for s in 0..=n {
                let (r, ker) = w_matrix(&k, n, s).unwrap().rank_kernel();
                assert_eq!(r, n);
                let mut e = vec![k.zero(); n + 1];
                e[n] = k.one();
                assert_eq!(ker, vec![e]);
            }
        }
    }
}
