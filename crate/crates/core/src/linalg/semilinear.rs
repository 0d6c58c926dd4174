use super::{Matrix, Vector};
use crate::error::{Error, Result};
use crate::gf::{prime, Elem, Field, Twist};

/// The equation `v^(q^j) = Q v`.
#[derive(Clone, Debug)]
pub struct SemilinearSpec {
    pub q_matrix: Matrix,
    pub sigma_exponent: u32,
}

/// Basis over `F_{q^j}` of `{v in ambient^N : v^(q^j) = Q v}`.
///
/// The map `v -> Q^{-1} v^(q^j)` is linear over the prime field, so its fixed
/// points are the kernel of an `ND x ND` system over `F_p`, `D = [ambient : F_p]`.
/// From that kernel we keep a maximal subset that is independent over the
/// ambient field; by descent it is a basis over the fixed field.
pub fn semilinear_fixed_space(spec: &SemilinearSpec, q: Twist, ambient: &Field) -> Result<Vec<Vector>> {
    let j = spec.sigma_exponent;
    if j == 0 {
        return Err(Error::Precondition("sigma exponent must be positive".into()));
    }
    let fixed_degree = (q.e() * j) as usize;
    if ambient.p() != q.p() || !ambient.degree().is_multiple_of(fixed_degree) {
        return Err(Error::NotSubfield { p: q.p(), from: fixed_degree, to: ambient.degree() });
    }
    let qm = spec.q_matrix.embed(ambient)?;
    if !qm.is_square() {
        return Err(Error::DimensionMismatch("Q must be square".into()));
    }
    let qinv = qm.inverse()?;
    let n = qm.rows();
    let d = ambient.degree();
    let p = ambient.p();
    let shift = (q.e() * j) as i64;

    let dim = n * d;
    let mut sys = vec![vec![0u32; dim]; dim];
    for i in 0..n {
        for k in 0..d {
            let mut basis = ambient.zero();
            basis.0[k] = 1;
            let image = ambient.frobenius_k(&basis, shift);
            let col = i * d + k;
            for r in 0..n {
                let y = ambient.mul(qinv.get(r, i), &image);
                for (kk, &c) in y.0.iter().enumerate() {
                    sys[r * d + kk][col] = c;
                }
            }
            sys[col][col] = (sys[col][col] + p - 1) % p;
        }
    }
    let kernel = prime::kernel(sys, dim, p);

    let mut chosen: Vec<Vector> = Vec::new();
    for kv in kernel {
        let v: Vector = (0..n).map(|i| Elem(kv[i * d..(i + 1) * d].iter().copied().collect())).collect();
        chosen.push(v);
        let m = Matrix::from_cols(ambient, &chosen)?;
        if m.rank() < chosen.len() {
            chosen.pop();
        }
        if chosen.len() == n {
            break;
        }
    }
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::build_field;
    use crate::linalg::twist_vec;

    #[test]
    fn identity_fixes_everything_over_fixed_field() {
        let q = Twist::new(2).unwrap();
        for d in [2, 4] {
            let k = build_field(2, d).unwrap();
            let spec = SemilinearSpec { q_matrix: Matrix::identity(&k, 2), sigma_exponent: 2 };
            let basis = semilinear_fixed_space(&spec, q, &k).unwrap();
            assert_eq!(basis.len(), 2);
            for v in &basis {
                assert_eq!(&twist_vec(&k, v, q, 2), v);
            }
        }
    }

    #[test]
    fn cube_root_line_over_f64() {
        let q = Twist::new(2).unwrap();
        let f4 = build_field(2, 2).unwrap();
        let f64_ = build_field(2, 6).unwrap();
        let spec = SemilinearSpec {
            q_matrix: Matrix::from_rows(&f4, vec![vec![f4.generator()]]).unwrap(),
            sigma_exponent: 2,
        };
        let basis = semilinear_fixed_space(&spec, q, &f64_).unwrap();
        assert_eq!(basis.len(), 1);
        let t = &basis[0][0];
        let g = Matrix::from_rows(&f4, vec![vec![f4.generator()]]).unwrap().embed(&f64_).unwrap();
        assert_eq!(&f64_.pow(t, 3), g.get(0, 0));
        // F_16 holds no such t
        let f16 = build_field(2, 4).unwrap();
        assert!(semilinear_fixed_space(&spec, q, &f16).unwrap().is_empty());
    }

    #[test]
    fn rejects_missing_fixed_field() {
        let q = Twist::new(2).unwrap();
        let k = build_field(2, 3).unwrap();
        let spec = SemilinearSpec { q_matrix: Matrix::identity(&k, 1), sigma_exponent: 2 };
        assert!(semilinear_fixed_space(&spec, q, &k).is_err());
    }
}
