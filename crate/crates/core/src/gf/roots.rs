use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_field, Elem, Embedding, Field, FieldElem, Poly, DEFAULT_MAX_EXT_DEGREE};
use crate::error::{Error, Result};

/// Fields up to this size are searched exhaustively for roots.
pub const ROOT_SCAN_LIMIT: u64 = 1 << 12;

const SPLIT_SEED: u64 = 0x7477_6973_7466_6f72;

/// All roots of `f` in its field by evaluating at every element, in enumeration order.
pub fn roots_by_scan(f: &Poly) -> Result<Vec<Elem>> {
    let k = f.field();
    Ok(k.elements()?.filter(|x| f.eval(x).is_zero()).collect())
}

/// All distinct roots of a nonzero `f`, sorted in enumeration order, by
/// isolating the split part `gcd(X^{|F|} - X, f)` and splitting it with
/// random trace maps. The randomness only affects running time.
pub fn roots_by_splitting(f: &Poly) -> Vec<Elem> {
    let k = f.field();
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let f = f.monic();
    let h = Poly::x_power_field_size(&f, 1);
    let g = h.sub(&Poly::x(k)).gcd(&f);
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
    let mut out = Vec::new();
    split_linear(&g, &mut rng, &mut out);
    out.sort();
    out
}

fn split_linear(g: &Poly, rng: &mut ChaCha8Rng, out: &mut Vec<Elem>) {
    let k = g.field();
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            out.push(k.neg(&g.coeffs()[0]));
            return;
        }
        _ => {}
    }
    let p = k.p();
    loop {
        let a = k.random_nonzero(rng);
        let ax = Poly::new(k, vec![k.zero(), a]).rem(g);
        let t = absolute_trace(&ax, g);
        let u = if p == 2 {
            t.gcd(g)
        } else {
            // shift by a random residue so that t and -t are told apart
            let c = k.from_int(rng.gen_range(0..p as i64));
            let t = t.add(&Poly::constant(k, c));
            t.pow_mod((p as u64 - 1) / 2, g).sub(&Poly::constant(k, k.one())).gcd(g)
        };
        let du = u.degree().unwrap_or(0);
        if du > 0 && du < g.degree().unwrap() {
            let (rest, _) = g.divrem(&u);
            split_linear(&u, rng, out);
            split_linear(&rest, rng, out);
            return;
        }
    }
}

// sum_{i < D} h^{p^i} mod g, D = [F : F_p]
fn absolute_trace(h: &Poly, g: &Poly) -> Poly {
    let mut acc = h.clone();
    let mut cur = h.clone();
    for _ in 1..h.field().degree() {
        cur = cur.frobenius_mod(g);
        acc = acc.add(&cur);
    }
    acc
}

/// Roots of `f` in its field, sorted in enumeration order. Small fields are
/// scanned; larger ones use [`roots_by_splitting`].
pub fn roots(f: &Poly) -> Vec<Elem> {
    match f.field().size() {
        Some(n) if n <= ROOT_SCAN_LIMIT => roots_by_scan(f).expect("field within scan limit"),
        _ => roots_by_splitting(f),
    }
}

/// Smallest `j >= 1` such that `f` has a root in the degree-`j` extension of
/// its field, i.e. the least degree of an irreducible factor.
pub fn min_root_degree(f: &Poly) -> Option<usize> {
    let k = f.field();
    let deg = f.degree()?;
    if deg == 0 {
        return None;
    }
    let f = f.monic();
    let x = Poly::x(k);
    let mut h = x.rem(&f);
    for j in 1..=deg {
        for _ in 0..k.degree() {
            h = h.frobenius_mod(&f);
        }
        if h.sub(&x).gcd(&f).degree().unwrap_or(0) > 0 {
            return Some(j);
        }
    }
    None
}

/// A `k`-th root of `x` in the smallest field of the chain `d, 2d, 3d, ...`
/// containing one; the returned root is the least in enumeration order.
pub fn kth_root(x: &FieldElem, k: u64) -> Result<(FieldElem, Field)> {
    kth_root_with_cap(x, k, DEFAULT_MAX_EXT_DEGREE)
}

pub fn kth_root_with_cap(x: &FieldElem, k: u64, cap: usize) -> Result<(FieldElem, Field)> {
    if k == 0 {
        return Err(Error::Precondition("root index must be positive".into()));
    }
    let base = &x.field;
    if x.is_zero() || k == 1 {
        return Ok((x.clone(), base.clone()));
    }
    let f = Poly::binomial(base, k as usize, &x.value);
    let m = min_root_degree(&f).ok_or_else(|| Error::Internal("X^k - x has no factor".into()))?;
    let degree = base.degree() * m;
    if degree > cap {
        return Err(Error::ExtensionCap { needed: degree, cap });
    }
    let target = if m == 1 { base.clone() } else { build_field(base.p() as u64, degree)? };
    let emb = Embedding::new(base, &target)?;
    let xk = emb.apply(&x.value);
    let rs = roots(&Poly::binomial(&target, k as usize, &xk));
    let y = rs.into_iter().next().ok_or_else(|| Error::Internal("root expected in extension".into()))?;
    Ok((target.elem(y), target))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splitting_agrees_with_scan() {
        for (p, d) in [(2, 4), (2, 6), (3, 3), (5, 2), (7, 2), (2, 1), (3, 1)] {
            let k = build_field(p, d).unwrap();
            let n = k.size().unwrap();
            for s in 0..12u64 {
                // product of a few linear factors times an irreducible-ish quadratic
                let mut f = Poly::constant(&k, k.one());
                for t in 0..(s % 4 + 1) {
                    let r = k.from_index((s * 7 + t * 13) % n);
                    f = f.mul(&Poly::new(&k, vec![k.neg(&r), k.one()]));
                }
                f = f.mul(&Poly::new(&k, vec![k.from_index((s * 5 + 1) % n), k.from_index(s % n), k.one()]));
                let mut scan = roots_by_scan(&f).unwrap();
                scan.dedup();
                assert_eq!(roots_by_splitting(&f), scan, "{p}^{d} case {s}");
            }
        }
    }

    #[test]
    fn cube_root_of_f4_generator_lives_in_f64() {
        let f4 = build_field(2, 2).unwrap();
        let g = f4.elem(f4.generator());
        let (y, field) = kth_root(&g, 3).unwrap();
        assert_eq!(field.degree(), 6);
        let g64 = g.embed(&field).unwrap();
        assert_eq!(y.pow(3), g64);
        // oracle: no cube root in F_16, since g^5 = g^2 != 1
        let f16 = build_field(2, 4).unwrap();
        let g16 = g.embed(&f16).unwrap();
        assert!(!g16.pow(5).field.is_one(&g16.pow(5).value));
        assert!(roots_by_scan(&Poly::binomial(&f16, 3, &g16.value)).unwrap().is_empty());
        // the returned root is the least one
        let all = roots_by_scan(&Poly::binomial(&field, 3, &g64.value)).unwrap();
        assert_eq!(all.len(), 3);
        assert_eq!(all[0], y.value);
    }

    #[test]
    fn trivial_roots() {
        let f4 = build_field(2, 2).unwrap();
        let one = f4.elem(f4.one());
        assert_eq!(kth_root(&one, 3).unwrap(), (one.clone(), f4.clone()));
        let g = f4.elem(f4.generator());
        assert_eq!(kth_root(&g, 1).unwrap().0, g);
        let zero = f4.elem(f4.zero());
        assert_eq!(kth_root(&zero, 5).unwrap().0, zero);
    }

    #[test]
    fn min_root_degree_of_irreducible() {
        let f2 = build_field(2, 1).unwrap();
        let f = Poly::new(&f2, vec![f2.one(), f2.one(), f2.one()]);
        assert_eq!(min_root_degree(&f), Some(2));
        let g = Poly::new(&f2, vec![f2.zero(), f2.one(), f2.one()]);
        assert_eq!(min_root_degree(&g), Some(1));
    }
}
