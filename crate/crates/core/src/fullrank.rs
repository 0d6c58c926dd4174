//! Congruence of an invertible matrix to the identity, `tT A T^(q) = I`.
//!
//! Three in-field stages: solve a Frobenius-twisted equation to make the
//! matrix q-Hermitian, diagonalize the Hermitian form, then scale by
//! `(q+1)`-th roots. A stage that needs a larger field reports
//! [`Error::NeedsExtension`] and [`normalize_full_rank`] restarts from the
//! input over the larger field.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::gf::{build_field, gcd, kth_root_with_cap, lcm, Elem, Embedding, Field, Twist, MAX_FIELD_DEGREE};
use crate::linalg::{semilinear_fixed_space, twist_vec, Matrix, SemilinearSpec, Vector};

const TRACE_SEED: u64 = 0x6c61_6e67;

// below this many prime-field unknowns the fixed space is solved as a linear system
const DIRECT_SOLVE_LIMIT: usize = 48;

/// `P(A) = (tA)^{-1} A^(q)`; equal to `I` exactly when `tA = A^(q)`.
pub fn asymmetry(a: &Matrix, q: Twist) -> Result<Matrix> {
    let ti = a.transpose().inverse()?;
    ti.mul(&a.twist(q, 1))
}

pub fn is_hermitian(a: &Matrix, q: Twist) -> bool {
    a.is_square() && a.transpose() == a.twist(q, 1)
}

// Q^{s^{r-1}} ... Q^{s} Q with s = q^2
fn twisted_norm(qm: &Matrix, q: Twist, r: usize) -> Result<Matrix> {
    let mut acc = qm.clone();
    let mut cur = qm.clone();
    for _ in 1..r {
        cur = cur.twist(q, 2);
        acc = cur.mul(&acc)?;
    }
    Ok(acc)
}

/// Degree over `F_p` of the smallest field, in the chain of multiples of the
/// current degree, over which `T^(q^2) = Q T` has an invertible solution.
pub fn lang_degree(qm: &Matrix, q: Twist, cap: usize) -> Result<usize> {
    let k = qm.field();
    let d = k.degree();
    let step = 2 * q.e() as usize;
    if !d.is_multiple_of(step) {
        return Ok(lcm(d, step));
    }
    let norm = twisted_norm(qm, q, d / step)?;
    let limit = cap / d;
    let mut pow = norm.clone();
    for m in 1..=limit.max(1) {
        if pow.is_identity() {
            return Ok(d * m);
        }
        pow = pow.mul(&norm)?;
    }
    Err(Error::ExtensionCap { needed: d * (limit + 1), cap })
}

/// Invertible `T` over the field of `Q` with `T^(q^2) = Q T`, or
/// [`Error::NeedsExtension`] naming the field degree where one exists.
pub fn lang_solve_in(qm: &Matrix, q: Twist, cap: usize) -> Result<Matrix> {
    let k = qm.field().clone();
    let n = qm.rows();
    if !qm.is_square() {
        return Err(Error::DimensionMismatch("Lang equation needs a square matrix".into()));
    }
    if qm.is_identity() && k.degree().is_multiple_of(2 * q.e() as usize) {
        return Ok(Matrix::identity(&k, n));
    }
    let needed = lang_degree(qm, q, cap)?;
    if needed != k.degree() {
        return Err(Error::NeedsExtension { degree: needed });
    }
    if n * k.degree() <= DIRECT_SOLVE_LIMIT {
        let spec = SemilinearSpec { q_matrix: qm.clone(), sigma_exponent: 2 };
        let basis = semilinear_fixed_space(&spec, q, &k)?;
        if basis.len() != n {
            return Err(Error::Internal("fixed space has deficient dimension".into()));
        }
        return Matrix::from_cols(&k, &basis);
    }
    fixed_vectors_by_trace(qm, q)
}

// Fixed vectors of v -> Q^{-1} v^(q^2) as orbit sums of random vectors.
fn fixed_vectors_by_trace(qm: &Matrix, q: Twist) -> Result<Matrix> {
    let k = qm.field();
    let n = qm.rows();
    let r = k.degree() / (2 * q.e() as usize);
    let qinv = qm.inverse()?;
    let mut rng = ChaCha8Rng::seed_from_u64(TRACE_SEED);
    let mut cols: Vec<Vector> = Vec::with_capacity(n);
    for _ in 0..64 * n {
        let mut cur: Vector = (0..n).map(|_| k.random(&mut rng)).collect();
        let mut acc = cur.clone();
        for _ in 1..r {
            cur = qinv.mul_vec(&twist_vec(k, &cur, q, 2))?;
            for (a, c) in acc.iter_mut().zip(&cur) {
                *a = k.add(a, c);
            }
        }
        cols.push(acc);
        if Matrix::from_cols(k, &cols)?.rank() < cols.len() {
            cols.pop();
        }
        if cols.len() == n {
            return Matrix::from_cols(k, &cols);
        }
    }
    Err(Error::Internal("orbit sums failed to span the fixed space".into()))
}

/// [`lang_solve_in`] over the smallest sufficient extension of the field of `Q`.
pub fn lang_solve(qm: &Matrix, q: Twist, cap: usize) -> Result<(Matrix, Field)> {
    let mut field = qm.field().clone();
    loop {
        let local = qm.embed(&field)?;
        match lang_solve_in(&local, q, cap) {
            Ok(t) => return Ok((t, field)),
            Err(Error::NeedsExtension { degree }) => field = grow(&field, degree, cap)?,
            Err(e) => return Err(e),
        }
    }
}

/// Field of degree `lcm(current, degree)` over the same prime field.
pub fn grow(field: &Field, degree: usize, cap: usize) -> Result<Field> {
    let target = lcm(field.degree(), degree);
    if target > cap.min(MAX_FIELD_DEGREE) {
        return Err(Error::ExtensionCap { needed: target, cap });
    }
    build_field(field.p() as u64, target)
}

/// `(A_h, T_1)` with `A_h = tT_1 A T_1^(q)` q-Hermitian.
pub fn hermitize(a: &Matrix, q: Twist, cap: usize) -> Result<(Matrix, Matrix)> {
    let pa = asymmetry(a, q)?;
    if pa.is_identity() {
        return Ok((a.clone(), Matrix::identity(a.field(), a.rows())));
    }
    let t = lang_solve_in(&pa.inverse()?, q, cap)?;
    let ah = a.congruence_unchecked(&t, q)?;
    if !is_hermitian(&ah, q) {
        return Err(Error::Internal("Lang solution did not produce a Hermitian matrix".into()));
    }
    Ok((ah, t))
}

/// `(D, T_2)` with `D = tT_2 H T_2^(q)` diagonal, by Gram-Schmidt on the
/// q-Hermitian form of `H`.
pub fn hermitian_diagonalize(h: &Matrix, q: Twist) -> Result<(Matrix, Matrix)> {
    if !is_hermitian(h, q) {
        return Err(Error::NotHermitian);
    }
    let k = h.field();
    let n = h.rows();
    if h.rank() < n {
        return Err(Error::Singular);
    }
    let form = |x: &[Elem], y: &[Elem]| h.form_value(x, y, q);
    let mut span: Vec<Vector> = (0..n)
        .map(|i| {
            let mut e = vec![k.zero(); n];
            e[i] = k.one();
            e
        })
        .collect();
    let mut chosen: Vec<Vector> = Vec::with_capacity(n);
    let mut diag = Vec::with_capacity(n);
    while !span.is_empty() {
        let v = anisotropic(k, q, &span, &form)?;
        let value = form(&v, &v)?;
        // complement inside span: sum_b form(v, c_b) x_b^q = 0
        let row: Vec<Elem> = span.iter().map(|c| form(&v, c)).collect::<Result<_>>()?;
        let (_, ker) = Matrix::from_rows(k, vec![row])?.rank_kernel();
        span = ker
            .iter()
            .map(|y| {
                let x = twist_vec(k, y, q, -1);
                let mut u = vec![k.zero(); n];
                for (xb, c) in x.iter().zip(&span) {
                    for (ui, ci) in u.iter_mut().zip(c) {
                        *ui = k.add(ui, &k.mul(xb, ci));
                    }
                }
                u
            })
            .collect();
        chosen.push(v);
        diag.push(value);
    }
    let t = Matrix::from_cols(k, &chosen)?;
    Ok((Matrix::diagonal(k, &diag), t))
}

// First basis vector with nonzero value, else c_a + l c_b with l running
// through the Hermitian subfield in enumeration order, so that every chosen
// vector keeps its entries there and orthogonality stays symmetric.
fn anisotropic<F>(k: &Field, q: Twist, span: &[Vector], form: &F) -> Result<Vector>
where
    F: Fn(&[Elem], &[Elem]) -> Result<Elem>,
{
    for c in span {
        if !form(c, c)?.is_zero() {
            return Ok(c.clone());
        }
    }
    let hermitian_degree = 2 * q.e() as usize;
    let sub_degree = gcd(k.degree(), hermitian_degree);
    let sub = build_field(k.p() as u64, sub_degree)?;
    let emb = Embedding::new(&sub, k)?;
    let lambdas: Vec<Elem> = sub.elements()?.skip(1).map(|x| emb.apply(&x)).collect();
    for a in 0..span.len() {
        for b in a + 1..span.len() {
            for l in &lambdas {
                let v: Vector = span[a].iter().zip(&span[b]).map(|(x, y)| k.add(x, &k.mul(l, y))).collect();
                if !form(&v, &v)?.is_zero() {
                    return Ok(v);
                }
            }
        }
    }
    // every value vanishes: only possible when the field misses F_{q^2}
    Err(Error::NeedsExtension { degree: lcm(k.degree(), hermitian_degree) })
}

/// `T_3 = diag(mu_i)` with `mu_i^(q+1) c_i = 1`.
pub fn scale_diagonal_to_identity(d: &Matrix, q: Twist) -> Result<Matrix> {
    let k = d.field();
    if !d.is_diagonal() {
        return Err(Error::Precondition("scaling needs a diagonal matrix".into()));
    }
    let mut mus = Vec::with_capacity(d.rows());
    for i in 0..d.rows() {
        let c = d.get(i, i);
        if c.is_zero() {
            return Err(Error::Singular);
        }
        let cinv = k.elem(k.inv(c)?);
        let (mu, field) = kth_root_with_cap(&cinv, q.q() + 1, MAX_FIELD_DEGREE)?;
        if &field != k {
            return Err(Error::NeedsExtension { degree: field.degree() });
        }
        mus.push(mu.value);
    }
    Ok(Matrix::diagonal(k, &mus))
}

/// Everything needed to re-check `tT A T^(q) = I` without re-running the solver.
#[derive(Clone, Debug)]
pub struct FullRankWitness {
    pub field: Field,
    /// Input embedded into `field`.
    pub input: Matrix,
    pub hermitize: Matrix,
    pub hermitian: Matrix,
    pub diagonalize: Matrix,
    pub diagonal: Matrix,
    pub scale: Matrix,
    pub t: Matrix,
}

impl FullRankWitness {
    /// Recomputes each stage product from scratch.
    pub fn check(&self, q: Twist) -> Result<bool> {
        let ah = self.input.congruence_unchecked(&self.hermitize, q)?;
        let d = ah.congruence_unchecked(&self.diagonalize, q)?;
        let i = d.congruence_unchecked(&self.scale, q)?;
        let t = self.hermitize.mul(&self.diagonalize)?.mul(&self.scale)?;
        Ok(ah == self.hermitian
            && d == self.diagonal
            && i.is_identity()
            && t == self.t
            && self.input.congruence_unchecked(&self.t, q)?.is_identity())
    }
}

/// One attempt in the field of `a`.
pub fn normalize_in_field(a: &Matrix, q: Twist, cap: usize) -> Result<FullRankWitness> {
    let k = a.field().clone();
    let n = a.rows();
    if !a.is_square() {
        return Err(Error::DimensionMismatch("full-rank normalization needs a square matrix".into()));
    }
    let rank = a.rank();
    if rank != n {
        return Err(Error::RankMismatch { expected: n.to_string(), found: rank });
    }
    let (t1, ah, t2, diag) = if a.is_diagonal() {
        (Matrix::identity(&k, n), a.clone(), Matrix::identity(&k, n), a.clone())
    } else {
        let (ah, t1) = hermitize(a, q, cap)?;
        let (diag, t2) = hermitian_diagonalize(&ah, q)?;
        (t1, ah, t2, diag)
    };
    let t3 = scale_diagonal_to_identity(&diag, q)?;
    let t = t1.mul(&t2)?.mul(&t3)?;
    Ok(FullRankWitness {
        field: k,
        input: a.clone(),
        hermitize: t1,
        hermitian: ah,
        diagonalize: t2,
        diagonal: diag,
        scale: t3,
        t,
    })
}

/// `T` over an extension with `tT A T^(q) = I`. The working field grows,
/// restarting from `A`, until every stage succeeds or `cap` is exceeded.
pub fn normalize_full_rank(a: &Matrix, q: Twist, cap: usize) -> Result<FullRankWitness> {
    Twist::for_field(q.q(), a.field())?;
    let mut field = a.field().clone();
    loop {
        let local = a.embed(&field)?;
        match normalize_in_field(&local, q, cap) {
            Ok(w) => return Ok(w),
            Err(Error::NeedsExtension { degree }) => field = grow(&field, degree, cap)?,
            Err(e) => return Err(e),
        }
    }
}
