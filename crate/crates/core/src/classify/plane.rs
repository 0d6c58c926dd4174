use super::{basis_with, classify_corank_one, classify_corank_one_in, Certificate, Label, Run, StepName, StepParams};
use crate::error::{Error, Result};
use crate::fullrank::grow;
use crate::gf::{kth_root_with_cap, Twist, MAX_FIELD_DEGREE};
use crate::linalg::{twist_vec, Matrix, Vector};

fn plane_label(label: Label) -> Label {
    match label {
        Label::Ws(0) => Label::PlaneX0,
        Label::Ws(1) => Label::PlaneX1,
        Label::Ws(2) => Label::PlaneX2,
        other => other,
    }
}

fn check_plane(a: &Matrix, q: Twist) -> Result<usize> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(Error::DimensionMismatch(format!("plane curves need a 3x3 matrix, got {}x{}", a.rows(), a.cols())));
    }
    Twist::for_field(q.q(), a.field())?;
    let rank = a.rank();
    if rank == 0 || rank == 3 {
        return Err(Error::RankMismatch { expected: "1 or 2".into(), found: rank });
    }
    Ok(rank)
}

/// Splits a rank-one `A` as `t(alpha) beta` with a 1 in `alpha`.
pub fn rank_one_factors(a: &Matrix) -> Result<(Vector, Vector)> {
    let k = a.field();
    let (i, j) = (0..a.rows())
        .flat_map(|i| (0..a.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| !a.get(i, j).is_zero())
        .ok_or(Error::ZeroVector)?;
    let pivot = k.inv(a.get(i, j))?;
    let alpha = (0..a.rows()).map(|r| k.mul(a.get(r, j), &pivot)).collect();
    Ok((alpha, a.row(i)))
}

fn rank_one_in(a: &Matrix, q: Twist) -> Result<Certificate> {
    let k = a.field().clone();
    let mut run = Run::new(a, q);
    let (alpha, beta) = rank_one_factors(a)?;
    // the semilinear factor is the q-th power of this linear form
    let beta1 = twist_vec(&k, &beta, q, -1);
    let params = StepParams::default().with("alpha", &alpha).with("beta", &beta);
    let same_line = Matrix::from_cols(&k, &[alpha.clone(), beta1.clone()])?.rank() == 1;
    let label = if same_line {
        let r = basis_with(&k, 3, &[(0, &alpha)])?.transpose();
        run.apply(StepName::LinePair, params.note("both factors cut the same line"), r.inverse()?)?;
        let c = run.cur.get(0, 0).clone();
        if !k.is_one(&c) {
            let target = k.elem(k.inv(&c)?);
            let (mu, field) = kth_root_with_cap(&target, q.q() + 1, MAX_FIELD_DEGREE)?;
            if field != k {
                return Err(Error::NeedsExtension { degree: field.degree() });
            }
            run.apply(StepName::Scale, StepParams::default(), Matrix::diagonal(&k, &[mu.value, k.one(), k.one()]))?;
        }
        Label::PlaneZ0
    } else {
        let r = basis_with(&k, 3, &[(0, &beta1), (1, &alpha)])?.transpose();
        run.apply(StepName::LinePair, params.note("distinct lines"), r.inverse()?)?;
        Label::PlaneZ1
    };
    run.expect(&label.to_string(), &label.normal_form(&k, 2)?)?;
    Ok(run.certificate(a, label))
}

/// One pass in the field of `a`.
pub fn classify_plane_in(a: &Matrix, q: Twist, cap: usize) -> Result<Certificate> {
    match check_plane(a, q)? {
        2 => {
            let mut cert = classify_corank_one_in(a, q, cap)?;
            cert.label = plane_label(cert.label);
            Ok(cert)
        }
        _ => rank_one_in(a, q),
    }
}

/// Certified normal form of a plane curve of rank one or two:
/// `Z0, Z1` for rank one, `X0, X1, X2` for rank two.
pub fn classify_plane(a: &Matrix, q: Twist, cap: usize) -> Result<Certificate> {
    if check_plane(a, q)? == 2 {
        let mut cert = classify_corank_one(a, q, cap)?;
        cert.label = plane_label(cert.label);
        return Ok(cert);
    }
    let mut field = a.field().clone();
    loop {
        let local = a.embed(&field)?;
        match rank_one_in(&local, q) {
            Ok(mut cert) => {
                cert.input = a.clone();
                return Ok(cert);
            }
            Err(Error::NeedsExtension { degree }) => field = grow(&field, degree, cap)?,
            Err(e) => return Err(e),
        }
    }
}
