//! Finite fields `F_{p^d}` presented by a deterministic irreducible polynomial.
//!
//! A [`Field`] is a cheap, clonable handle. Raw elements ([`Elem`]) are bare
//! coefficient vectors and are combined through the field that owns them;
//! [`FieldElem`] pairs the two for convenient operator syntax.

mod embed;
mod poly;
pub(crate) mod prime;
mod roots;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use smallvec::SmallVec;

use crate::error::{Error, Result};

pub use embed::Embedding;
pub use poly::Poly;
pub use roots::{kth_root, kth_root_with_cap, min_root_degree, roots, roots_by_scan, roots_by_splitting};

/// Largest extension degree [`build_field`] accepts.
pub const MAX_FIELD_DEGREE: usize = 1024;

/// Default cap on the degree over F_p of any working field a driver may grow into.
pub const DEFAULT_MAX_EXT_DEGREE: usize = 256;

/// Fields up to this size may be enumerated in full.
pub const ENUMERATION_BUDGET: u64 = 1 << 20;

type Coeffs = SmallVec<[u32; 4]>;

/// Raw element: `d` coefficients in `[0, p)` over the power basis `1, g, ..., g^{d-1}`.
///
/// Ordering is the enumeration order of [`Field::elements`]: the integer
/// `sum c_i p^i`, i.e. coefficients compared from the top degree down.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Elem(pub(crate) Coeffs);

impl Elem {
    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl Ord for Elem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for Elem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct FieldCtx {
    p: u32,
    d: usize,
    modulus: Vec<u32>,
    // (j, p - m_j) for the nonzero low coefficients m_j of the modulus
    reduction: Vec<(usize, u32)>,
}

/// Handle to `F_{p^d}`. Equality compares the presentation.
#[derive(Clone)]
pub struct Field(Arc<FieldCtx>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.d == other.0.d && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.d)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.0.p, self.0.d)
    }
}

/// Builds `F_{p^d}` from the lexicographically smallest monic irreducible
/// polynomial of degree `d` (coefficients compared from the constant term up).
pub fn build_field(p: u64, d: usize) -> Result<Field> {
    if !prime::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p >= 1 << 16 {
        return Err(Error::CharacteristicTooLarge(p));
    }
    if d == 0 || d > MAX_FIELD_DEGREE {
        return Err(Error::DegreeOutOfBounds { degree: d, max: MAX_FIELD_DEGREE });
    }
    let p = p as u32;
    let modulus = prime::smallest_irreducible(p, d);
    Ok(Field::from_modulus(p, modulus))
}

/// The prime field `F_p`.
pub fn prime_field(p: u64) -> Result<Field> {
    build_field(p, 1)
}

impl Field {
    fn from_modulus(p: u32, modulus: Vec<u32>) -> Field {
        let d = modulus.len() - 1;
        let reduction = modulus[..d]
            .iter()
            .enumerate()
            .filter(|(_, &m)| m != 0)
            .map(|(j, &m)| (j, p - m))
            .collect();
        Field(Arc::new(FieldCtx { p, d, modulus, reduction }))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.d
    }

    /// Defining polynomial, ascending degree, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    /// `p^d`, if it fits in a `u64`.
    pub fn size(&self) -> Option<u64> {
        (self.0.p as u64).checked_pow(self.0.d as u32)
    }

    pub fn same_as(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: self.to_string(), right: other.to_string() })
        }
    }

    pub fn zero(&self) -> Elem {
        Elem(SmallVec::from_elem(0, self.0.d))
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    /// Residue of an integer, placed in the constant coefficient.
    pub fn from_int(&self, n: i64) -> Elem {
        let mut e = self.zero();
        e.0[0] = n.rem_euclid(self.0.p as i64) as u32;
        e
    }

    /// The class of `x` modulo the defining polynomial.
    pub fn generator(&self) -> Elem {
        if self.0.d == 1 {
            // x is the defining polynomial itself or x - c; the class of x is -m_0
            return Elem(SmallVec::from_elem((self.0.p - self.0.modulus[0]) % self.0.p, 1));
        }
        let mut e = self.zero();
        e.0[1] = 1;
        e
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() != self.0.d {
            return Err(Error::Malformed(format!(
                "expected {} coefficients, got {}",
                self.0.d,
                coeffs.len()
            )));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c >= self.0.p) {
            return Err(Error::Malformed(format!("coefficient {c} not below p = {}", self.0.p)));
        }
        Ok(Elem(SmallVec::from_slice(coeffs)))
    }

    /// Element with enumeration index `idx` (`sum c_i p^i = idx`).
    pub fn from_index(&self, mut idx: u64) -> Elem {
        let mut e = self.zero();
        for c in e.0.iter_mut() {
            *c = (idx % self.0.p as u64) as u32;
            idx /= self.0.p as u64;
        }
        e
    }

    pub fn index_of(&self, x: &Elem) -> Option<u64> {
        let mut idx: u64 = 0;
        for &c in x.0.iter().rev() {
            idx = idx.checked_mul(self.0.p as u64)?.checked_add(c as u64)?;
        }
        Some(idx)
    }

    pub fn is_one(&self, x: &Elem) -> bool {
        x.0[0] == 1 && x.0[1..].iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        let p = self.0.p;
        Elem(a.0.iter().zip(b.0.iter()).map(|(&x, &y)| {
            let s = x + y;
            if s >= p { s - p } else { s }
        }).collect())
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        let p = self.0.p;
        Elem(a.0.iter().zip(b.0.iter()).map(|(&x, &y)| if x >= y { x - y } else { x + p - y }).collect())
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        let p = self.0.p;
        Elem(a.0.iter().map(|&x| if x == 0 { 0 } else { p - x }).collect())
    }

    /// Multiplication by a prime-field scalar.
    pub fn scale(&self, a: &Elem, c: u32) -> Elem {
        let p = self.0.p;
        Elem(a.0.iter().map(|&x| prime::mul_mod(x, c % p, p)).collect())
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        let d = self.0.d;
        let p = self.0.p as u64;
        if d == 1 {
            return Elem(SmallVec::from_elem(((a.0[0] as u64 * b.0[0] as u64) % p) as u32, 1));
        }
        let mut acc: SmallVec<[u64; 16]> = SmallVec::from_elem(0, 2 * d - 1);
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u64;
            for (slot, &y) in acc[i..i + d].iter_mut().zip(b.0.iter()) {
                *slot += x * y as u64;
            }
        }
        self.reduce(acc)
    }

    fn reduce(&self, mut acc: SmallVec<[u64; 16]>) -> Elem {
        let d = self.0.d;
        let p = self.0.p as u64;
        for i in (d..acc.len()).rev() {
            let c = acc[i] % p;
            if c == 0 {
                continue;
            }
            for &(j, negm) in &self.0.reduction {
                acc[i - d + j] += c * negm as u64;
            }
        }
        Elem(acc[..d].iter().map(|&x| (x % p) as u32).collect())
    }

    pub fn square(&self, a: &Elem) -> Elem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut r = self.one();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.square(&base);
            }
        }
        r
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.0.p;
        if self.0.d == 1 {
            return Ok(Elem(SmallVec::from_elem(prime::inv_mod(a.0[0], p), 1)));
        }
        // invariant: s_i * a == r_i (mod modulus)
        let mut r0 = self.0.modulus.clone();
        let mut r1: Vec<u32> = a.0.to_vec();
        prime::trim(&mut r1);
        let mut s0: Vec<u32> = Vec::new();
        let mut s1: Vec<u32> = vec![1];
        while r1.len() > 1 {
            let (q, r) = prime::divrem(&r0, &r1, p);
            let s = prime::sub(&s0, &prime::mul_poly(&q, &s1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        let c = prime::inv_mod(r1[0], p);
        let mut out = self.zero();
        for (slot, &x) in out.0.iter_mut().zip(s1.iter()) {
            *slot = prime::mul_mod(x, c, p);
        }
        Ok(out)
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^p`.
    pub fn frobenius(&self, a: &Elem) -> Elem {
        let d = self.0.d;
        let p = self.0.p as usize;
        if d == 1 {
            return a.clone();
        }
        if p > 64 {
            return self.pow(a, p as u64);
        }
        let mut acc: SmallVec<[u64; 16]> = SmallVec::from_elem(0, (d - 1) * p + 1);
        for (i, &c) in a.0.iter().enumerate() {
            acc[i * p] = c as u64;
        }
        self.reduce(acc)
    }

    /// `a^{p^k}` for any integer `k`; negative `k` inverts the Frobenius.
    pub fn frobenius_k(&self, a: &Elem, k: i64) -> Elem {
        let steps = k.rem_euclid(self.0.d as i64);
        let mut x = a.clone();
        for _ in 0..steps {
            x = self.frobenius(&x);
        }
        x
    }

    /// `a^{q^i}`; for `i < 0` the unique `q^{-i}`-th root.
    pub fn frobenius_pow(&self, a: &Elem, q: Twist, i: i64) -> Elem {
        debug_assert_eq!(q.p, self.0.p);
        self.frobenius_k(a, q.e as i64 * i)
    }

    /// Uniformly random element.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        let p = self.0.p;
        Elem((0..self.0.d).map(|_| rng.gen_range(0..p)).collect())
    }

    /// Uniformly random nonzero element.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        loop {
            let x = self.random(rng);
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// All elements in enumeration order, zero first.
    pub fn elements(&self) -> Result<impl Iterator<Item = Elem> + '_> {
        match self.size() {
            Some(n) if n <= ENUMERATION_BUDGET => Ok((0..n).map(move |i| self.from_index(i))),
            _ => Err(Error::FieldTooLarge {
                size: format!("{}^{}", self.0.p, self.0.d),
                budget: ENUMERATION_BUDGET,
            }),
        }
    }

    pub fn elem(&self, value: Elem) -> FieldElem {
        FieldElem { field: self.clone(), value }
    }

    /// Human-readable form as a polynomial in the generator `g`.
    pub fn format(&self, x: &Elem) -> String {
        let mut terms = Vec::new();
        for (i, &c) in x.0.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && i > 0 { String::new() } else { c.to_string() };
            terms.push(match i {
                0 => c.to_string(),
                1 => format!("{coeff}g"),
                _ => format!("{coeff}g^{i}"),
            });
        }
        if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        }
    }
}

/// The twist parameter `q = p^e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Twist {
    p: u32,
    e: u32,
}

impl Twist {
    pub fn new(q: u64) -> Result<Twist> {
        if q < 2 {
            return Err(Error::NotAPowerOfP { q, p: 0 });
        }
        let p = (2..=q).find(|k| q.is_multiple_of(*k)).unwrap_or(q);
        let mut e = 0;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(Error::NotAPowerOfP { q, p: p as u32 });
        }
        if p >= 1 << 16 {
            return Err(Error::CharacteristicTooLarge(p));
        }
        Ok(Twist { p: p as u32, e })
    }

    /// Checks that `q` is a power of the characteristic of `field`.
    pub fn for_field(q: u64, field: &Field) -> Result<Twist> {
        let t = Twist::new(q)?;
        if t.p != field.p() {
            return Err(Error::NotAPowerOfP { q, p: field.p() });
        }
        Ok(t)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.e)
    }
}

impl fmt::Display for Twist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.q())
    }
}

/// An element together with its field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElem {
    pub field: Field,
    pub value: Elem,
}

impl FieldElem {
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn inv(&self) -> Result<FieldElem> {
        Ok(self.field.elem(self.field.inv(&self.value)?))
    }

    pub fn checked_div(&self, other: &FieldElem) -> Result<FieldElem> {
        self.field.same_as(&other.field)?;
        Ok(self.field.elem(self.field.div(&self.value, &other.value)?))
    }

    pub fn pow(&self, e: u64) -> FieldElem {
        self.field.elem(self.field.pow(&self.value, e))
    }

    pub fn frobenius_pow(&self, q: Twist, i: i64) -> FieldElem {
        self.field.elem(self.field.frobenius_pow(&self.value, q, i))
    }

    pub fn embed(&self, target: &Field) -> Result<FieldElem> {
        let e = Embedding::new(&self.field, target)?;
        Ok(target.elem(e.apply(&self.value)))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.field.format(&self.value), self.field)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(&self.value))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:ident) => {
        impl std::ops::$trait<&FieldElem> for &FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                assert!(self.field == rhs.field, "field mismatch: {} vs {}", self.field, rhs.field);
                self.field.elem(self.field.$op(&self.value, &rhs.value))
            }
        }
        impl std::ops::$trait<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, add);
binop!(Sub, sub, sub);
binop!(Mul, mul, mul);

impl std::ops::Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        self.field.elem(self.field.neg(&self.value))
    }
}

impl std::ops::Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 { a } else { gcd(b, a % b) }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> Field {
        build_field(2, 2).unwrap()
    }

    #[test]
    fn small_fields() {
        assert_eq!(build_field(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(f4().modulus(), &[1, 1, 1]);
        assert_eq!(build_field(3, 1).unwrap().size(), Some(3));
        assert!(matches!(build_field(4, 1), Err(Error::NotPrime(4))));
        assert!(matches!(build_field(2, 0), Err(Error::DegreeOutOfBounds { .. })));
    }

    #[test]
    fn build_field_is_deterministic() {
        for (p, d) in [(2, 8), (3, 5), (5, 3), (2, 30)] {
            assert_eq!(build_field(p, d).unwrap(), build_field(p, d).unwrap());
        }
    }

    #[test]
    fn f4_arithmetic() {
        let k = f4();
        let g = k.generator();
        let g1 = k.add(&g, &k.one());
        assert_eq!(k.mul(&g, &g), g1);
        assert_eq!(k.inv(&g).unwrap(), g1);
        assert_eq!(k.add(&g, &k.zero()), g);
        assert_eq!(k.div(&k.one(), &k.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn frobenius_examples() {
        let k = f4();
        let q = Twist::new(2).unwrap();
        let g = k.generator();
        let g1 = k.add(&g, &k.one());
        assert_eq!(k.frobenius_pow(&g, q, 1), g1);
        assert_eq!(k.frobenius_pow(&g1, q, -1), g);
        assert_eq!(k.frobenius_pow(&g, q, 0), g);
    }

    #[test]
    fn enumeration_order() {
        let k = f4();
        let all: Vec<Elem> = k.elements().unwrap().collect();
        let g = k.generator();
        assert_eq!(all, vec![k.zero(), k.one(), g.clone(), k.add(&g, &k.one())]);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
        let f3: Vec<u64> = build_field(3, 1).unwrap().elements().unwrap().map(|e| e.0[0] as u64).collect();
        assert_eq!(f3, vec![0, 1, 2]);
        assert!(build_field(2, 21).unwrap().elements().is_err());
    }

    // Oracle: inverse by exhaustive search.
    #[test]
    fn inverse_matches_search() {
        for (p, d) in [(2, 4), (3, 2), (5, 2), (2, 6)] {
            let k = build_field(p, d).unwrap();
            let all: Vec<Elem> = k.elements().unwrap().collect();
            for x in all.iter().skip(1) {
                let inv = all.iter().find(|y| k.is_one(&k.mul(x, y))).unwrap();
                assert_eq!(&k.inv(x).unwrap(), inv);
            }
        }
    }

    #[test]
    fn frobenius_matches_power() {
        let k = build_field(3, 4).unwrap();
        for x in k.elements().unwrap().step_by(7) {
            assert_eq!(k.frobenius(&x), k.pow(&x, 3));
        }
    }

    #[test]
    fn twist_parsing() {
        let t = Twist::new(9).unwrap();
        assert_eq!((t.p(), t.e(), t.q()), (3, 2, 9));
        assert!(Twist::new(6).is_err());
        assert!(Twist::for_field(4, &build_field(3, 2).unwrap()).is_err());
    }

    #[test]
    fn prime_field_generator() {
        let k = build_field(5, 1).unwrap();
        // defining polynomial is x, so the class of x is 0
        assert!(k.generator().is_zero());
    }
}
