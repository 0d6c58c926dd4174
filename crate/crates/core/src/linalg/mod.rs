//! Dense matrices over a [`Field`] and the q-twist primitives.

mod semilinear;

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field, Twist};

pub use semilinear::{semilinear_fixed_space, SemilinearSpec};

/// Column vector of raw field elements.
pub type Vector = Vec<Elem>;

/// Row-major matrix whose entries all live in one field.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl Matrix {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<Elem>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if data.iter().any(|x| x.0.len() != field.degree()) {
            return Err(Error::Malformed("entry has the wrong number of coefficients".into()));
        }
        Ok(Matrix { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// Matrix with small integer entries reduced into the prime field.
    pub fn from_ints(field: &Field, rows: &[&[i64]]) -> Matrix {
        let data = rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        Matrix::from_rows(field, data).expect("rectangular integer rows")
    }

    pub fn diagonal(field: &Field, diag: &[Elem]) -> Matrix {
        let mut m = Matrix::zeros(field, diag.len(), diag.len());
        for (i, x) in diag.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    /// Uniformly random entries.
    pub fn random<R: Rng + ?Sized>(field: &Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        let data = (0..rows * cols).map(|_| field.random(rng)).collect();
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Uniformly random invertible matrix, by rejection.
    pub fn random_invertible<R: Rng + ?Sized>(field: &Field, n: usize, rng: &mut R) -> Matrix {
        loop {
            let m = Matrix::random(field, n, n, rng);
            if m.rank() == n {
                return m;
            }
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn set_col(&mut self, j: usize, v: &[Elem]) {
        for (i, x) in v.iter().enumerate() {
            self.set(i, j, x.clone());
        }
    }

    pub fn from_cols(field: &Field, cols: &[Vector]) -> Result<Matrix> {
        let c = cols.len();
        let r = cols.first().map_or(0, |v| v.len());
        let mut m = Matrix::zeros(field, r, c);
        for (j, v) in cols.iter().enumerate() {
            if v.len() != r {
                return Err(Error::DimensionMismatch("ragged columns".into()));
            }
            m.set_col(j, v);
        }
        Ok(m)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = self.get(i, j);
                    if i == j {
                        self.field.is_one(x)
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self.get(i, j).is_zero()))
    }

    fn check_field(&self, other: &Matrix) -> Result<()> {
        self.field.same_as(&other.field)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("sum of differently shaped matrices".into()));
        }
        let k = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| k.add(a, b)).collect();
        Ok(Matrix { field: k.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        let k = &self.field;
        let data = self.data.iter().map(|a| k.mul(a, c)).collect();
        Matrix { field: k.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_field(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let k = &self.field;
        let mut out = Matrix::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = k.add(&out.data[idx], &k.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!("{}-vector for {} columns", v.len(), self.cols)));
        }
        let k = &self.field;
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = k.zero();
                for (j, x) in v.iter().enumerate() {
                    acc = k.add(&acc, &k.mul(self.get(i, j), x));
                }
                acc
            })
            .collect())
    }

    /// Entrywise `x -> x^{q^i}`.
    pub fn twist(&self, q: Twist, i: i64) -> Matrix {
        let k = &self.field;
        let data = self.data.iter().map(|a| k.frobenius_pow(a, q, i)).collect();
        Matrix { field: k.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `tT * self * T^(q)`, without checking that `T` is invertible.
    pub fn congruence_unchecked(&self, t: &Matrix, q: Twist) -> Result<Matrix> {
        if !self.is_square() || !t.is_square() || t.rows != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "congruence of a {}x{} matrix by a {}x{} transformation",
                self.rows, self.cols, t.rows, t.cols
            )));
        }
        t.transpose().mul(self)?.mul(&t.twist(q, 1))
    }

    /// `tT * self * T^(q)`; singular `T` is rejected.
    pub fn congruence(&self, t: &Matrix, q: Twist) -> Result<Matrix> {
        if t.is_square() && t.rank() != t.rows {
            return Err(Error::Singular);
        }
        self.congruence_unchecked(t, q)
    }

    /// `tx * self * y^(q)`.
    pub fn form_value(&self, x: &[Elem], y: &[Elem], q: Twist) -> Result<Elem> {
        if x.len() != self.rows || y.len() != self.cols {
            return Err(Error::DimensionMismatch("vector length does not match the form".into()));
        }
        let k = &self.field;
        let yq: Vector = y.iter().map(|c| k.frobenius_pow(c, q, 1)).collect();
        let ay = self.mul_vec(&yq)?;
        let mut acc = k.zero();
        for (a, b) in x.iter().zip(&ay) {
            acc = k.add(&acc, &k.mul(a, b));
        }
        Ok(acc)
    }

    /// Reduced row echelon form and the pivot columns, pivoting on the first
    /// nonzero entry in column order.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let k = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = k.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..m.cols {
                let x = k.mul(m.get(r, j), &inv);
                m.set(r, j, x);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    let x = k.sub(m.get(i, j), &k.mul(&f, m.get(r, j)));
                    m.set(i, j, x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Rank and a basis of `{v : self * v = 0}`, one vector per free column
    /// in increasing order, with a 1 in that free coordinate.
    pub fn rank_kernel(&self) -> (usize, Vec<Vector>) {
        let k = &self.field;
        let (m, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let basis = (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![k.zero(); self.cols];
                v[free] = k.one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = k.neg(m.get(row, free));
                }
                v
            })
            .collect();
        (pivots.len(), basis)
    }

    /// Basis of `{u : tu * self = 0}`.
    pub fn left_kernel(&self) -> Vec<Vector> {
        self.transpose().rank_kernel().1
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let k = &self.field;
        let mut aug = Matrix::zeros(k, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, k.one());
        }
        let (m, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Singular);
        }
        let mut inv = Matrix::zeros(k, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, m.get(i, n + j).clone());
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let k = &self.field;
        let mut m = self.clone();
        let n = m.rows;
        let mut det = k.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(k.zero());
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = k.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = k.mul(&det, &piv);
            let inv = k.inv(&piv)?;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = k.mul(m.get(i, c), &inv);
                for j in c..n {
                    let x = k.sub(m.get(i, j), &k.mul(&f, m.get(c, j)));
                    m.set(i, j, x);
                }
            }
        }
        Ok(det)
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(&self.field, rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }

    /// Top-left `r x c` block.
    pub fn block(&self, r: usize, c: usize) -> Matrix {
        let rows: Vec<usize> = (0..r).collect();
        let cols: Vec<usize> = (0..c).collect();
        self.submatrix(&rows, &cols)
    }

    /// Copies `b` into `self` with its top-left corner at `(i0, j0)`.
    pub fn paste(&mut self, i0: usize, j0: usize, b: &Matrix) {
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.set(i0 + i, j0 + j, b.get(i, j).clone());
            }
        }
    }

    /// `diag(self, other)`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    /// Image under a field embedding.
    pub fn embed_with(&self, e: &Embedding) -> Result<Matrix> {
        self.field.same_as(e.source())?;
        let data = self.data.iter().map(|x| e.apply(x)).collect();
        Ok(Matrix { field: e.target().clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn embed(&self, target: &Field) -> Result<Matrix> {
        if &self.field == target {
            return Ok(self.clone());
        }
        self.embed_with(&Embedding::new(&self.field, target)?)
    }

    /// Human-readable rendering, one row per line.
    pub fn pretty(&self) -> String {
        let cells: Vec<String> = self.data.iter().map(|x| self.field.format(x)).collect();
        let width = cells.iter().map(|c| c.len()).max().unwrap_or(1);
        let mut out = String::new();
        for i in 0..self.rows {
            out.push('[');
            for j in 0..self.cols {
                if j > 0 {
                    out.push_str(", ");
                }
                out.push_str(&format!("{:>width$}", cells[i * self.cols + j]));
            }
            out.push_str("]\n");
        }
        out
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{} over {}\n{}", self.rows, self.cols, self.field, self.pretty())
    }
}

/// Invertible matrix whose column `position` is `v`; the other columns are
/// standard basis vectors in increasing order, skipping the coordinate of
/// the last nonzero entry of `v`.
pub fn complete_basis(field: &Field, v: &[Elem], position: usize) -> Result<Matrix> {
    let n = v.len();
    if position >= n {
        return Err(Error::DimensionMismatch(format!("position {position} in dimension {n}")));
    }
    let pivot = v.iter().rposition(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
    let mut t = Matrix::zeros(field, n, n);
    let mut fill = (0..n).filter(|&i| i != pivot);
    for j in 0..n {
        if j == position {
            t.set_col(j, v);
        } else {
            let i = fill.next().expect("n - 1 fill vectors");
            t.set(i, j, field.one());
        }
    }
    Ok(t)
}

/// Permutation matrix with `P e_j = e_{perm[j]}`.
pub fn permutation(field: &Field, perm: &[usize]) -> Matrix {
    let mut m = Matrix::zeros(field, perm.len(), perm.len());
    for (j, &i) in perm.iter().enumerate() {
        m.set(i, j, field.one());
    }
    m
}

/// Entrywise twist of a vector.
pub fn twist_vec(field: &Field, v: &[Elem], q: Twist, i: i64) -> Vector {
    v.iter().map(|x| field.frobenius_pow(x, q, i)).collect()
}
