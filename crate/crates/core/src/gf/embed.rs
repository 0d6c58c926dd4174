use super::{roots, Elem, Field, Poly};
use crate::error::{Error, Result};

/// Field homomorphism `F_{p^a} -> F_{p^b}` (`a | b`) sending the source
/// generator to the least root of its defining polynomial in the target.
#[derive(Clone, Debug)]
pub struct Embedding {
    src: Field,
    dst: Field,
    // images of 1, g, ..., g^{a-1}
    powers: Vec<Elem>,
}

impl Embedding {
    pub fn new(src: &Field, dst: &Field) -> Result<Embedding> {
        if src.p() != dst.p() || !dst.degree().is_multiple_of(src.degree()) {
            return Err(Error::NotSubfield { p: src.p(), from: src.degree(), to: dst.degree() });
        }
        if src == dst {
            let powers = (0..src.degree()).map(|i| monomial(dst, i)).collect();
            return Ok(Embedding { src: src.clone(), dst: dst.clone(), powers });
        }
        let image = if src.degree() == 1 {
            dst.from_int(src.generator().0[0] as i64)
        } else {
            let coeffs = src.modulus().iter().map(|&c| dst.from_int(c as i64)).collect();
            let f = Poly::new(dst, coeffs);
            roots(&f)
                .into_iter()
                .next()
                .ok_or_else(|| Error::Internal("defining polynomial has no root in an extension".into()))?
        };
        let mut powers = Vec::with_capacity(src.degree());
        let mut cur = dst.one();
        for _ in 0..src.degree() {
            powers.push(cur.clone());
            cur = dst.mul(&cur, &image);
        }
        Ok(Embedding { src: src.clone(), dst: dst.clone(), powers })
    }

    pub fn source(&self) -> &Field {
        &self.src
    }

    pub fn target(&self) -> &Field {
        &self.dst
    }

    /// Image of the source generator.
    pub fn generator_image(&self) -> Elem {
        if self.src.degree() == 1 {
            self.dst.from_int(self.src.generator().0[0] as i64)
        } else {
            self.powers[1].clone()
        }
    }

    pub fn apply(&self, x: &Elem) -> Elem {
        let mut acc = self.dst.zero();
        for (&c, pw) in x.0.iter().zip(self.powers.iter()) {
            if c != 0 {
                acc = self.dst.add(&acc, &self.dst.scale(pw, c));
            }
        }
        acc
    }
}

fn monomial(k: &Field, i: usize) -> Elem {
    let mut e = k.zero();
    e.0[i] = 1;
    e
}
