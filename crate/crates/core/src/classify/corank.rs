use super::shapes::{b_shape, g_shape, h_prime_shape, h_shape, r_shape, split_b_shape};
use super::{basis_with, shape_error, w_matrix, Certificate, Label, Run, Step, StepName, StepParams};
use crate::error::{Error, Result};
use crate::fullrank::{grow, normalize_in_field};
use crate::gf::{Elem, Field, Twist};
use crate::linalg::{complete_basis, permutation, twist_vec, Matrix, Vector};

/// Where a reduction step left the working matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Reached `W_s`.
    Normal(usize),
    /// Reached the `B_s` shape with this `s`.
    Next(usize),
}

fn neg_vec(k: &Field, v: &[Elem]) -> Vector {
    v.iter().map(|x| k.neg(x)).collect()
}

// row vector times matrix
fn vec_mat(k: &Field, v: &[Elem], m: &Matrix) -> Vector {
    (0..m.cols())
        .map(|j| v.iter().enumerate().fold(k.zero(), |acc, (i, x)| k.add(&acc, &k.mul(x, m.get(i, j)))))
        .collect()
}

fn t_g(k: &Field, n: usize, s: usize, r: usize, a: &[Elem], q: Twist) -> Matrix {
    let mut t = Matrix::identity(k, n + 1);
    for (i, x) in a.iter().enumerate() {
        t.set(i, s + r, k.neg(x));
        t.set(s + r + 1, i, k.frobenius_pow(x, q, 1));
    }
    t
}

fn t_h(k: &Field, n: usize, s: usize, r: usize) -> Matrix {
    let mut t = Matrix::identity(k, n + 1);
    t.set(s + r, s + r - 1, k.neg(&k.one()));
    t.set(s + r, s + r + 1, k.one());
    t
}

fn t_h_prime(k: &Field, n: usize, s: usize, r: usize) -> Matrix {
    let mut t = Matrix::identity(k, n + 1);
    t.set(s + r + 1, s + r + 3, k.one());
    t.set(s + r + 2, s + r, k.neg(&k.one()));
    t
}

fn t_1(k: &Field, n: usize, s: usize, a2: &[Elem]) -> Matrix {
    let mut t = Matrix::identity(k, n + 1);
    for (j, x) in a2.iter().enumerate() {
        t.set(s - 1, j, k.neg(x));
    }
    t
}

fn t_2(k: &Field, n: usize, a2: &[Elem]) -> Matrix {
    let mut t = Matrix::identity(k, n + 1);
    for (j, x) in a2.iter().enumerate() {
        t.set(n, j, x.clone());
    }
    t.set(n, n - 1, k.neg(&k.one()));
    t
}

fn t_4(k: &Field, n: usize) -> Matrix {
    let mut t = Matrix::identity(k, n + 1);
    t.set(n, n - 1, k.neg(&k.one()));
    t
}

fn t_5(k: &Field, n: usize, s: usize, a2: &[Elem]) -> Matrix {
    let mut t = Matrix::identity(k, n + 1);
    t.set(s - 1, s + 1, k.one());
    for (j, x) in a2.iter().enumerate() {
        t.set(s, j, x.clone());
    }
    t
}

fn t_6(k: &Field, n: usize) -> Matrix {
    let mut t = Matrix::identity(k, n + 1);
    t.set(n, n - 2, k.neg(&k.one()));
    t
}

fn swap_perm(k: &Field, n: usize, a: usize, b: usize) -> Matrix {
    let mut perm: Vec<usize> = (0..=n).collect();
    perm.swap(a, b);
    permutation(k, &perm)
}

// I + a2^t a1
fn leading_block(k: &Field, a1: &[Elem], a2: &[Elem]) -> Matrix {
    let m = a1.len();
    let mut d = Matrix::identity(k, m);
    for i in 0..m {
        for j in 0..m {
            let x = k.add(d.get(i, j), &k.mul(&a2[i], &a1[j]));
            d.set(i, j, x);
        }
    }
    d
}

impl Run {
    /// Applies `T_G` from `G_{s,r}` until the added row falls off the bottom.
    pub(crate) fn g_chain(&mut self, s: usize, mut r: usize, mut a: Vector) -> Result<()> {
        let k = self.field().clone();
        let n = self.n();
        let q = self.q;
        self.expect("G_{s,r}", &g_shape(&k, n, s, r, &a))?;
        while s + r < n {
            let t = t_g(&k, n, s, r, &a, q);
            self.apply(StepName::TG, StepParams::sr(s, r).with("a", &a), t)?;
            a = twist_vec(&k, &a, q, 2);
            r += 2;
            self.expect("G_{s,r+2}", &g_shape(&k, n, s, r, &a))?;
        }
        if s + r == n && a.iter().any(|x| !x.is_zero()) {
            return Err(Error::ParityDeadEnd(format!("G-chain stuck at s={s}, r={r}, n={n}")));
        }
        Ok(())
    }

    /// `H_{s,r}` to `H_{s,n-s}` by repeated `T_H`.
    pub(crate) fn h_chain(&mut self, s: usize, mut r: usize, d: &Matrix, a1: &[Elem], a2: &[Elem]) -> Result<()> {
        let k = self.field().clone();
        let n = self.n();
        self.expect("H_{s,r}", &h_shape(&k, n, s, r, d, a1, a2))?;
        while r < n - s {
            if s + r + 1 > n {
                return Err(Error::ParityDeadEnd(format!("H-chain would need n-s-r-1 = 0 at s={s}, r={r}")));
            }
            self.apply(StepName::TH, StepParams::sr(s, r), t_h(&k, n, s, r))?;
            r += 2;
            self.expect("H_{s,r+2}", &h_shape(&k, n, s, r, d, a1, a2))?;
        }
        Ok(())
    }

    /// `H'_{s,r}` to `H'_{s,n-s-2}` by repeated `T_H'`.
    pub(crate) fn h_prime_chain(&mut self, s: usize, mut r: usize, d: &Matrix, a1: &[Elem]) -> Result<()> {
        let k = self.field().clone();
        let n = self.n();
        self.expect("H'_{s,r}", &h_prime_shape(&k, n, s, r, d, a1))?;
        while r + 2 < n - s {
            if s + r + 3 > n {
                return Err(Error::ParityDeadEnd(format!("H'-chain would need n-s-r-3 = 0 at s={s}, r={r}")));
            }
            self.apply(StepName::THPrime, StepParams::sr(s, r), t_h_prime(&k, n, s, r))?;
            r += 2;
            self.expect("H'_{s,r+2}", &h_prime_shape(&k, n, s, r, d, a1))?;
        }
        Ok(())
    }

    /// From `P_s` (identity block, `a` in row `s`) to `W_s` or `B_{s-1}`.
    pub(crate) fn lemma4(&mut self, s: usize, mut a: Vector) -> Result<Reduction> {
        let k = self.field().clone();
        let n = self.n();
        let q = self.q;
        self.expect("P_s", &g_shape(&k, n, s, 0, &a))?;
        if (n - s + 1).is_multiple_of(2) {
            self.g_chain(s, 0, a)?;
            return Ok(Reduction::Normal(s));
        }

        let idx = a.iter().rposition(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
        if idx != s - 1 {
            self.apply(StepName::Permute, StepParams::s(s).note("move a nonzero entry to column s-1"), swap_perm(&k, n, idx, s - 1))?;
            a.swap(idx, s - 1);
        }
        let lambda = k.inv(&a[s - 1])?;
        if !k.is_one(&lambda) {
            let mut diag = vec![k.one(); n + 1];
            diag[s] = lambda.clone();
            for i in s + 1..=n {
                diag[i] = k.inv(&k.frobenius_pow(&diag[i - 1], q, 1))?;
            }
            self.apply(StepName::Scale, StepParams::s(s), Matrix::diagonal(&k, &diag))?;
            a = a.iter().map(|x| k.mul(x, &lambda)).collect();
        }
        self.expect("P'_s", &g_shape(&k, n, s, 0, &a))?;

        let a1: Vector = a[..s - 1].to_vec();
        let a2 = twist_vec(&k, &a1, q, -1);
        let d = leading_block(&k, &a1, &a2);
        let params = || StepParams::s(s).with("a'", &a1).with("a''", &a2);
        let next = b_shape(&k, n, s - 1, &d, &neg_vec(&k, &a1));

        self.apply(StepName::T1, params(), t_1(&k, n, s, &a2))?;
        self.expect("Q_s", &h_shape(&k, n, s, 0, &d, &a1, &a2))?;
        if s == n {
            self.apply(StepName::T2, params(), t_2(&k, n, &a2))?;
            self.expect("B_{s-1}", &next)?;
            return Ok(Reduction::Next(s - 1));
        }

        self.apply(StepName::T3, params(), t_h(&k, n, s, 0))?;
        self.h_chain(s, 2, &d, &a1, &a2)?;
        self.apply(StepName::T4, params(), t_4(&k, n))?;
        self.expect("R_s", &r_shape(&k, n, s, &d, &a1, &a2))?;
        if s == 1 {
            self.expect("W_0", &w_matrix(&k, n, 0)?)?;
            return Ok(Reduction::Normal(0));
        }

        self.apply(StepName::T5, params(), t_5(&k, n, s, &a2))?;
        self.expect("R'_s", &h_prime_shape(&k, n, s, 0, &d, &a1))?;
        if n - s - 1 > 1 {
            self.apply(StepName::T7, params(), t_h_prime(&k, n, s, 0))?;
            self.h_prime_chain(s, 2, &d, &a1)?;
        }
        self.apply(StepName::T6, params(), t_6(&k, n))?;
        self.expect("B_{s-1}", &next)?;
        Ok(Reduction::Next(s - 1))
    }

    /// From `B_s` of rank `n` to `W_s` or `B_{s-1}`.
    pub(crate) fn lemma5(&mut self, s: usize, cap: usize) -> Result<Reduction> {
        let k = self.field().clone();
        let n = self.n();
        let q = self.q;
        let (d, b) = split_b_shape(&self.cur, s).ok_or_else(|| shape_error("B_s", &self.cur))?;
        if s == 0 {
            return Ok(Reduction::Normal(0));
        }

        if !d.det()?.is_zero() {
            let mut b1 = b.clone();
            if !d.is_identity() {
                let w = normalize_in_field(&d, q, cap)?;
                let t = w.t.direct_sum(&Matrix::identity(&k, n - s + 1));
                self.apply(StepName::FullRankOnBlock, StepParams::s(s), t)?;
                b1 = vec_mat(&k, &b, &w.t.twist(q, 1));
            }
            self.expect("P_s", &b_shape(&k, n, s, &Matrix::identity(&k, s), &b1))?;
            if b1.iter().all(|x| x.is_zero()) {
                return Ok(Reduction::Normal(s));
            }
            return self.lemma4(s, b1);
        }

        // a row of D_s is a combination of the others; take the last such row
        let left = d.left_kernel();
        let j = left
            .iter()
            .filter_map(|u| u.iter().rposition(|x| !x.is_zero()))
            .max()
            .ok_or_else(|| Error::Internal("singular block without left kernel".into()))?;
        let mut u = left.into_iter().find(|u| !u[j].is_zero()).expect("row j is dependent");
        if j != s - 1 {
            self.apply(StepName::Permute, StepParams::s(s).note("move the dependent row to s-1"), swap_perm(&k, n, j, s - 1))?;
            u.swap(j, s - 1);
            split_b_shape(&self.cur, s).ok_or_else(|| shape_error("B_s", &self.cur))?;
        }
        let lead = k.inv(&u[s - 1])?;
        let w: Vector = u[..s - 1].iter().map(|x| k.neg(&k.mul(x, &lead))).collect();
        if w.iter().any(|x| !x.is_zero()) {
            let mut t = Matrix::identity(&k, n + 1);
            for (i, x) in w.iter().enumerate() {
                t.set(i, s - 1, k.neg(x));
            }
            self.apply(StepName::TPrime, StepParams::s(s).with("w", &w), t)?;
        }
        if self.cur.row(s - 1).iter().any(|x| !x.is_zero()) {
            return Err(shape_error("B''_s", &self.cur));
        }
        let rows: Vec<usize> = (0..s - 1).chain(std::iter::once(s)).collect();
        let cols: Vec<usize> = (0..s).collect();
        let qm = self.cur.submatrix(&rows, &cols);
        let qinv = qm.inverse().map_err(|_| Error::RankMismatch { expected: n.to_string(), found: self.cur.rank() })?;
        let qp = qinv.twist(q, -1);
        self.apply(StepName::TDoublePrime, StepParams::s(s), qp.direct_sum(&Matrix::identity(&k, n - s + 1)))?;
        let pp = qp.block(s - 1, s - 1);
        let g: Vector = (0..s - 1).map(|i| qp.get(i, s - 1).clone()).collect();
        self.expect("B_{s-1}", &b_shape(&k, n, s - 1, &pp.transpose(), &g))?;
        Ok(Reduction::Next(s - 1))
    }
}

/// `(B, T_0)` with `B = tT_0 A T_0^(q)` having a zero last column.
///
/// The last column of `T_0` is the q-th root of the kernel vector. When the
/// leading `n x n` block would come out invertible and the left kernel
/// vector is independent of that column, it is placed in column `n-1`,
/// which zeroes row `n-1` of `B`.
pub fn move_kernel_to_last(a: &Matrix, q: Twist) -> Result<(Matrix, Matrix)> {
    let k = a.field();
    let n = a.rows() - 1;
    let (rank, ker) = a.rank_kernel();
    if rank != n {
        return Err(Error::RankMismatch { expected: n.to_string(), found: rank });
    }
    let v = twist_vec(k, &ker[0], q, -1);
    let t = complete_basis(k, &v, n)?;
    let b = a.congruence_unchecked(&t, q)?;
    if n >= 1 && !b.block(n, n).det()?.is_zero() {
        let l = a.left_kernel().remove(0);
        if Matrix::from_cols(k, &[l.clone(), v.clone()])?.rank() == 2 {
            let t = basis_with(k, n + 1, &[(n - 1, &l), (n, &v)])?;
            return Ok((a.congruence_unchecked(&t, q)?, t));
        }
    }
    Ok((b, t))
}

fn check_corank_input(a: &Matrix, q: Twist) -> Result<usize> {
    if !a.is_square() || a.rows() < 2 {
        return Err(Error::DimensionMismatch(format!("need a square matrix of size at least 2, got {}x{}", a.rows(), a.cols())));
    }
    Twist::for_field(q.q(), a.field())?;
    let n = a.rows() - 1;
    let rank = a.rank();
    if rank != n {
        return Err(Error::RankMismatch { expected: n.to_string(), found: rank });
    }
    Ok(n)
}

/// One pass of the pipeline in the field of `a`.
pub fn classify_corank_one_in(a: &Matrix, q: Twist, cap: usize) -> Result<Certificate> {
    let n = check_corank_input(a, q)?;
    let k = a.field().clone();
    let mut run = Run::new(a, q);
    let (_, t0) = move_kernel_to_last(a, q)?;
    if !t0.is_identity() {
        run.apply(StepName::KernelMove, StepParams::s(n), t0)?;
    }
    let mut s = n;
    loop {
        match run.lemma5(s, cap)? {
            Reduction::Normal(s) => {
                run.expect("W_s", &w_matrix(&k, n, s)?)?;
                return Ok(run.certificate(a, Label::Ws(s)));
            }
            Reduction::Next(next) => s = next,
        }
    }
}

/// Certified `T` with `tT A T^(q) = W_s` for a rank-`n` matrix of size
/// `n + 1`, growing the working field as needed up to degree `cap`.
pub fn classify_corank_one(a: &Matrix, q: Twist, cap: usize) -> Result<Certificate> {
    check_corank_input(a, q)?;
    let mut field = a.field().clone();
    loop {
        let local = a.embed(&field)?;
        match classify_corank_one_in(&local, q, cap) {
            Ok(mut cert) => {
                cert.input = a.clone();
                return Ok(cert);
            }
            Err(Error::NeedsExtension { degree }) => field = grow(&field, degree, cap)?,
            Err(e) => return Err(e),
        }
    }
}

/// Runs the `T_G` chain on a matrix in `G_{s,r}` shape.
pub fn lemma_g_chain(b: &Matrix, q: Twist, s: usize, r: usize) -> Result<(Matrix, Vec<Step>)> {
    let k = b.field();
    let a: Vector = (0..s).map(|j| if s + r < b.rows() { b.get(s + r, j).clone() } else { k.zero() }).collect();
    let mut run = Run::new(b, q);
    run.g_chain(s, r, a)?;
    Ok((run.cur, run.steps))
}

/// Reduces a matrix in `P_s` shape to `W_s` or `B_{s-1}`.
pub fn lemma4_reduce(p: &Matrix, q: Twist, s: usize) -> Result<(Matrix, Vec<Step>, Reduction)> {
    let a: Vector = (0..s).map(|j| p.get(s, j).clone()).collect();
    let mut run = Run::new(p, q);
    let red = run.lemma4(s, a)?;
    Ok((run.cur, run.steps, red))
}

fn h_params(b: &Matrix, s: usize) -> (Matrix, Vector, Vector) {
    let k = b.field();
    let d = b.block(s - 1, s - 1);
    let a1 = (0..s - 1).map(|j| k.neg(b.get(s - 1, j))).collect();
    let a2 = (0..s - 1).map(|i| k.neg(b.get(i, s - 1))).collect();
    (d, a1, a2)
}

/// Runs the `T_H` chain on a matrix in `H_{s,r}` shape up to `H_{s,n-s}`.
pub fn lemma_h_chain(b: &Matrix, q: Twist, s: usize, r: usize) -> Result<(Matrix, Vec<Step>)> {
    let (d, a1, a2) = h_params(b, s);
    let mut run = Run::new(b, q);
    run.h_chain(s, r, &d, &a1, &a2)?;
    Ok((run.cur, run.steps))
}

/// Runs the `T_H'` chain on a matrix in `H'_{s,r}` shape up to `H'_{s,n-s-2}`.
pub fn lemma_h_prime_chain(b: &Matrix, q: Twist, s: usize, r: usize) -> Result<(Matrix, Vec<Step>)> {
    let (d, a1, _) = h_params(b, s);
    let mut run = Run::new(b, q);
    run.h_prime_chain(s, r, &d, &a1)?;
    Ok((run.cur, run.steps))
}

/// One reduction of a rank-`n` matrix in `B_s` shape.
pub fn lemma5_step(b: &Matrix, q: Twist, s: usize, cap: usize) -> Result<(Matrix, Vec<Step>, Reduction)> {
    let mut run = Run::new(b, q);
    let red = run.lemma5(s, cap)?;
    Ok((run.cur, run.steps, red))
}
