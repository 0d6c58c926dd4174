use super::{Elem, Field};

/// Univariate polynomial over a [`Field`], ascending degree, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn new(field: &Field, coeffs: Vec<Elem>) -> Poly {
        let mut p = Poly { field: field.clone(), coeffs };
        p.trim();
        p
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &Field, c: Elem) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The monomial `X`.
    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    /// `X^k - c`.
    pub fn binomial(field: &Field, k: usize, c: &Elem) -> Poly {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[0] = field.neg(c);
        coeffs[k] = field.add(&coeffs[k], &field.one());
        Poly::new(field, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let k = &self.field;
        let mut acc = k.zero();
        for c in self.coeffs.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = k.zero();
        let coeffs = (0..n)
            .map(|i| k.add(self.coeffs.get(i).unwrap_or(&zero), other.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        Poly::new(k, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = k.zero();
        let coeffs = (0..n)
            .map(|i| k.sub(self.coeffs.get(i).unwrap_or(&zero), other.coeffs.get(i).unwrap_or(&zero)))
            .collect();
        Poly::new(k, coeffs)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let k = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(k);
        }
        let mut coeffs = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = k.add(&coeffs[i + j], &k.mul(a, b));
            }
        }
        Poly::new(k, coeffs)
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, m: &Poly) -> (Poly, Poly) {
        let k = &self.field;
        let dm = m.degree().expect("division by the zero polynomial");
        let lead_inv = k.inv(&m.coeffs[dm]).expect("leading coefficient is nonzero");
        let mut r = self.coeffs.clone();
        if r.len() <= dm {
            return (Poly::zero(k), self.clone());
        }
        let mut q = vec![k.zero(); r.len() - dm];
        while r.len() > dm {
            let top = r.len() - 1;
            let c = k.mul(&r[top], &lead_inv);
            let shift = top - dm;
            if !c.is_zero() {
                for (j, mj) in m.coeffs.iter().enumerate() {
                    r[shift + j] = k.sub(&r[shift + j], &k.mul(&c, mj));
                }
            }
            q[shift] = c;
            r.pop();
        }
        (Poly::new(k, q), Poly::new(k, r))
    }

    pub fn rem(&self, m: &Poly) -> Poly {
        self.divrem(m).1
    }

    pub fn monic(&self) -> Poly {
        let k = &self.field;
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => {
                let li = k.inv(lead).expect("nonzero leading coefficient");
                Poly::new(k, self.coeffs.iter().map(|c| k.mul(c, &li)).collect())
            }
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^p mod m`: Frobenius on coefficients, exponents spread by `p`.
    pub fn frobenius_mod(&self, m: &Poly) -> Poly {
        let k = &self.field;
        let p = k.p() as usize;
        if p > 64 {
            return self.pow_mod(p as u64, m);
        }
        let mut coeffs = vec![k.zero(); self.coeffs.len().saturating_sub(1) * p + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * p] = k.frobenius(c);
        }
        Poly::new(k, coeffs).rem(m)
    }

    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let k = &self.field;
        let mut base = self.rem(m);
        let mut r = Poly::constant(k, k.one()).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        r
    }

    /// `X^{|F|^j} mod m`, computed by `j * d` Frobenius steps.
    pub fn x_power_field_size(m: &Poly, j: usize) -> Poly {
        let k = m.field();
        let mut h = Poly::x(k).rem(m);
        for _ in 0..j * k.degree() {
            h = h.frobenius_mod(m);
        }
        h
    }
}
