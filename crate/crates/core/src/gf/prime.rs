//! Polynomials and dense linear algebra over a prime field F_p, with
//! coefficients stored as plain `u32` residues.

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p as u64 - 2, p)
}

pub(crate) fn trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

pub(crate) fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out = vec![0u32; n];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

/// Remainder of `a` modulo `m` (leading coefficient of `m` must be nonzero).
pub(crate) fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = mul_mod(r[top], lead_inv, p);
        if c != 0 {
            let shift = top - dm;
            for (j, &mj) in m.iter().enumerate() {
                let t = mul_mod(c, mj, p);
                r[shift + j] = (r[shift + j] + p - t) % p;
            }
        }
        trim(&mut r);
    }
    r
}

pub(crate) fn mul_poly(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = acc.into_iter().map(|x| x as u32).collect();
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by `m` (leading coefficient of `m` nonzero).
pub(crate) fn divrem(a: &[u32], m: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let dm = m.len() - 1;
    if r.len() <= dm {
        return (Vec::new(), r);
    }
    let lead_inv = inv_mod(m[dm], p);
    let mut q = vec![0u32; r.len() - dm];
    while r.len() > dm {
        let top = r.len() - 1;
        let c = mul_mod(r[top], lead_inv, p);
        let shift = top - dm;
        q[shift] = c;
        for (j, &mj) in m.iter().enumerate() {
            let t = mul_mod(c, mj, p);
            r[shift + j] = (r[shift + j] + p - t) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn monic_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(&lead) = x.last() {
        let li = inv_mod(lead, p);
        for c in x.iter_mut() {
            *c = mul_mod(*c, li, p);
        }
    }
    x
}

/// `h^p mod f` for `h` with coefficients in F_p: the p-th power only spreads
/// coefficients, since `c^p = c` for every residue.
pub(crate) fn frobenius_mod(h: &[u32], f: &[u32], p: u32) -> Vec<u32> {
    let mut spread = vec![0u32; h.len().saturating_sub(1) * p as usize + 1];
    for (i, &c) in h.iter().enumerate() {
        spread[i * p as usize] = c;
    }
    rem(&spread, f, p)
}

/// Exact irreducibility test for a monic `f` of degree `d`:
/// `gcd(x^{p^j} - x, f) = 1` for every `1 <= j <= d/2`.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    if d <= 1 {
        return d == 1;
    }
    if f[0] == 0 {
        return false;
    }
    let x = vec![0, 1];
    let mut h = rem(&x, f, p);
    for _ in 1..=d / 2 {
        h = frobenius_mod(&h, f, p);
        let g = monic_gcd(&sub(&h, &x, p), f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible polynomial of degree `d`,
/// comparing the coefficient lists from the constant term upwards.
pub(crate) fn smallest_irreducible(p: u32, d: usize) -> Vec<u32> {
    let mut low = vec![0u32; d];
    if d > 1 {
        // a vanishing constant term makes x a factor
        low[0] = 1;
    }
    loop {
        let mut f = low.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        let mut i = d;
        loop {
            i -= 1;
            low[i] += 1;
            if low[i] < p {
                break;
            }
            low[i] = 0;
            assert!(i > 0, "irreducible polynomials exist in every degree");
        }
    }
}

/// Kernel of a dense `rows x cols` matrix over F_p (row-major), as a list of
/// basis vectors in order of increasing free column.
pub(crate) fn kernel(mut m: Vec<Vec<u32>>, cols: usize, p: u32) -> Vec<Vec<u32>> {
    let rows = m.len();
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                if y != 0 {
                    *x = (*x + p - mul_mod(f, y, p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut basis = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u32; cols];
        v[free] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            let x = m[row][free];
            v[pc] = (p - x) % p;
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let ps: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
    }

    #[test]
    fn irreducible_quadratic_over_f2() {
        assert_eq!(smallest_irreducible(2, 2), vec![1, 1, 1]);
        assert!(!is_irreducible(&[1, 0, 1], 2));
    }

    // Oracle: trial division by every monic polynomial of degree <= d/2.
    fn irreducible_by_trial(f: &[u32], p: u32) -> bool {
        let d = f.len() - 1;
        for k in 1..=d / 2 {
            let count = (p as usize).pow(k as u32);
            for idx in 0..count {
                let mut g = Vec::with_capacity(k + 1);
                let mut t = idx;
                for _ in 0..k {
                    g.push((t % p as usize) as u32);
                    t /= p as usize;
                }
                g.push(1);
                if rem(f, &g, p).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn distinct_degree_test_matches_trial_division() {
        for (p, d) in [(2u32, 5usize), (2, 6), (3, 4), (5, 3)] {
            let count = (p as usize).pow(d as u32);
            for idx in 0..count {
                let mut f = Vec::new();
                let mut t = idx;
                for _ in 0..d {
                    f.push((t % p as usize) as u32);
                    t /= p as usize;
                }
                f.push(1);
                assert_eq!(is_irreducible(&f, p), irreducible_by_trial(&f, p), "{f:?}");
            }
        }
    }

    #[test]
    fn smallest_irreducible_is_first_in_order() {
        // F_16: candidates ordered by (c0, c1, c2, c3); x^4+x^3+1 = (1,0,0,1) precedes x^4+x+1 = (1,1,0,0)
        assert_eq!(smallest_irreducible(2, 4), vec![1, 0, 0, 1, 1]);
        assert_eq!(smallest_irreducible(3, 2), vec![1, 0, 1]);
    }

    #[test]
    fn kernel_of_rank_one() {
        let k = kernel(vec![vec![1, 1, 0]], 3, 2);
        assert_eq!(k, vec![vec![1, 1, 0], vec![0, 0, 1]]);
    }
}
