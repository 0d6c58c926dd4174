//! Explicit matrices of the intermediate block shapes, all of size `n + 1`.
//! `d` is the leading `(s-1) x (s-1)` block, `a1`/`a2` the row vectors that
//! border it (`a2^(q) = a1`).

use crate::gf::{Elem, Field};
use crate::linalg::Matrix;

fn chain(m: &mut Matrix, from: usize) {
    let k = m.field().clone();
    for i in from..m.rows() - 1 {
        m.set(i + 1, i, k.one());
    }
}

fn bordered(k: &Field, n: usize, s: usize, d: &Matrix, a1: &[Elem], a2: Option<&[Elem]>) -> Matrix {
    let mut m = Matrix::zeros(k, n + 1, n + 1);
    m.paste(0, 0, d);
    for (j, x) in a1.iter().enumerate() {
        m.set(s - 1, j, k.neg(x));
    }
    if let Some(a2) = a2 {
        for (i, x) in a2.iter().enumerate() {
            m.set(i, s - 1, k.neg(x));
        }
    }
    m
}

/// `W_s` with the row vector `a` added to row `s + r`, columns `< s`.
pub fn g_shape(k: &Field, n: usize, s: usize, r: usize, a: &[Elem]) -> Matrix {
    let mut m = Matrix::identity(k, s).direct_sum(&super::e_matrix(k, n - s + 1));
    if s + r <= n {
        for (j, x) in a.iter().enumerate() {
            m.set(s + r, j, x.clone());
        }
    }
    m
}

/// Chain below the diagonal from column `s-1`, an extra diagonal 1 at
/// `s+r-1`, and `-a1`, `-a2` bordering `d`.
pub fn h_shape(k: &Field, n: usize, s: usize, r: usize, d: &Matrix, a1: &[Elem], a2: &[Elem]) -> Matrix {
    let mut m = bordered(k, n, s, d, a1, Some(a2));
    chain(&mut m, s - 1);
    m.set(s + r - 1, s + r - 1, k.one());
    m
}

/// The H-shape with its diagonal entry removed.
pub fn r_shape(k: &Field, n: usize, s: usize, d: &Matrix, a1: &[Elem], a2: &[Elem]) -> Matrix {
    let mut m = bordered(k, n, s, d, a1, Some(a2));
    chain(&mut m, s - 1);
    m
}

/// Chain from column `s-1`, `-a1` in row `s-1` and an extra 1 at `(s+r, s+r+1)`.
pub fn h_prime_shape(k: &Field, n: usize, s: usize, r: usize, d: &Matrix, a1: &[Elem]) -> Matrix {
    let mut m = bordered(k, n, s, d, a1, None);
    chain(&mut m, s - 1);
    m.set(s + r, s + r + 1, k.one());
    m
}

/// `diag(D_s, E_{n-s+1})` with `b` in row `s`, columns `< s`.
pub fn b_shape(k: &Field, n: usize, s: usize, d: &Matrix, b: &[Elem]) -> Matrix {
    let mut m = Matrix::zeros(k, n + 1, n + 1);
    m.paste(0, 0, d);
    if s <= n {
        for (j, x) in b.iter().enumerate() {
            m.set(s, j, x.clone());
        }
    }
    chain(&mut m, s);
    m
}

/// `(D_s, b_s)` if `m` has the B_s zero pattern.
pub fn split_b_shape(m: &Matrix, s: usize) -> Option<(Matrix, Vec<Elem>)> {
    let n = m.rows() - 1;
    let k = m.field();
    let d = m.block(s, s);
    let b: Vec<Elem> = if s <= n { (0..s).map(|j| m.get(s, j).clone()).collect() } else { Vec::new() };
    if &b_shape(k, n, s, &d, &b) == m {
        Some((d, b))
    } else {
        None
    }
}
