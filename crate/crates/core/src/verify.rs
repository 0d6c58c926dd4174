//! Certificate checking that uses only field arithmetic and matrix algebra.
//! The normal forms are rebuilt here rather than taken from the classifier.

use crate::classify::{Certificate, Label};
use crate::error::{Error, Result};
use crate::gf::{Field, Twist};
use crate::linalg::Matrix;

/// Result of replaying a certificate. A failure at index `trace.len()`
/// refers to the final equalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail { step: usize, reason: String },
}

impl Verdict {
    pub fn passed(&self) -> bool {
        *self == Verdict::Pass
    }
}

fn target(field: &Field, label: Label, size: usize) -> Option<Matrix> {
    let one = field.one();
    let mut m = Matrix::zeros(field, size, size);
    let w = |m: &mut Matrix, s: usize| {
        if s + 1 > size {
            return false;
        }
        for i in 0..s {
            m.set(i, i, one.clone());
        }
        for i in s + 1..size {
            m.set(i, i - 1, one.clone());
        }
        true
    };
    let ok = match label {
        Label::Ws(s) => w(&mut m, s),
        Label::Identity => {
            m = Matrix::identity(field, size);
            true
        }
        Label::PlaneX0 => size == 3 && w(&mut m, 0),
        Label::PlaneX1 => size == 3 && w(&mut m, 1),
        Label::PlaneX2 => size == 3 && w(&mut m, 2),
        Label::PlaneZ0 if size == 3 => {
            m.set(0, 0, one.clone());
            true
        }
        Label::PlaneZ1 if size == 3 => {
            m.set(1, 0, one.clone());
            true
        }
        _ => false,
    };
    ok.then_some(m)
}

/// Structural problems (wrong fields, sizes, twist) are errors; failed
/// equalities are a [`Verdict::Fail`].
pub fn verify(cert: &Certificate) -> Result<Verdict> {
    let k = &cert.field;
    let size = cert.input.rows();
    if !cert.input.is_square() {
        return Err(Error::Malformed("input is not square".into()));
    }
    if cert.input.field().p() != k.p() || !k.degree().is_multiple_of(cert.input.field().degree()) {
        return Err(Error::Malformed("input field is not a subfield of the certificate field".into()));
    }
    let q = Twist::for_field(cert.q.q(), k)?;
    let input = cert.input.embed(k)?;
    let fail = |step: usize, reason: String| Ok(Verdict::Fail { step, reason });

    let mut cur = input.clone();
    let mut product = Matrix::identity(k, size);
    for (i, step) in cert.trace.iter().enumerate() {
        for m in [&step.matrix, &step.claimed] {
            if m.field() != k || m.rows() != size || m.cols() != size {
                return fail(i, format!("{} matrix has the wrong field or size", step.name));
            }
        }
        let next = match cur.congruence(&step.matrix, q) {
            Ok(next) => next,
            Err(e) => return fail(i, format!("{}: {e}", step.name)),
        };
        if next != step.claimed {
            return fail(i, format!("{} does not produce the claimed matrix", step.name));
        }
        product = product.mul(&step.matrix)?;
        cur = next;
    }

    let end = cert.trace.len();
    let Some(normal) = target(k, cert.label, size) else {
        return fail(end, format!("label {} does not fit size {size}", cert.label));
    };
    if cert.t.field() != k || cert.t.rows() != size || cert.t.cols() != size {
        return fail(end, "T has the wrong field or size".into());
    }
    if product != cert.t {
        return fail(end, "product of the steps differs from T".into());
    }
    if cur != normal {
        return fail(end, "last claimed matrix is not the normal form".into());
    }
    match input.congruence(&cert.t, q) {
        Ok(m) if m == normal => Ok(Verdict::Pass),
        Ok(_) => fail(end, "T does not take the input to the normal form".into()),
        Err(e) => fail(end, format!("T: {e}")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::{classify, classify_corank_one, e_matrix, w_matrix};
    use crate::gf::{build_field, DEFAULT_MAX_EXT_DEGREE};

    #[test]
    fn targets_match_classifier_forms() {
        let k = build_field(3, 1).unwrap();
        for n in 1..5 {
            for s in 0..=n {
                assert_eq!(target(&k, Label::Ws(s), n + 1).unwrap(), w_matrix(&k, n, s).unwrap());
            }
        }
        for l in [Label::PlaneZ0, Label::PlaneZ1, Label::PlaneX0, Label::PlaneX1, Label::PlaneX2] {
            assert_eq!(target(&k, l, 3).unwrap(), l.normal_form(&k, 2).unwrap());
        }
        assert!(target(&k, Label::Ws(3), 3).is_none());
    }

    #[test]
    fn pass_and_fail() {
        let k = build_field(2, 2).unwrap();
        let q = Twist::new(2).unwrap();
        let a = e_matrix(&k, 4).congruence(&Matrix::from_ints(&k, &[&[1, 1, 0, 0], &[0, 1, 0, 0], &[1, 0, 1, 0], &[0, 0, 1, 1]]), q).unwrap();
        let cert = classify_corank_one(&a, q, DEFAULT_MAX_EXT_DEGREE).unwrap();
        assert!(verify(&cert).unwrap().passed());
        let mut bad = cert.clone();
        bad.label = Label::Ws(1);
        assert_eq!(verify(&bad).unwrap(), Verdict::Fail { step: cert.trace.len(), reason: "last claimed matrix is not the normal form".into() });
        let mut bad = cert.clone();
        let x = k.add(bad.trace[0].claimed.get(0, 0), &k.one());
        bad.trace[0].claimed.set(0, 0, x);
        assert!(matches!(verify(&bad).unwrap(), Verdict::Fail { step: 0, .. }));
        let full = classify(&Matrix::identity(&k, 3), q, DEFAULT_MAX_EXT_DEGREE).unwrap();
        assert!(verify(&full).unwrap().passed());
    }
}
