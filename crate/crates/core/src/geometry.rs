//! Rational points, singular loci, the cone over the singular point,
//! tangents of plane curves and automorphism conditions for `X_s`.

use std::collections::BTreeSet;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::classify::w_matrix;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field, Twist};
use crate::linalg::{twist_vec, Matrix, Vector};

/// Largest `|K|^(n+1)` walked when enumerating points.
pub const POINT_BUDGET: u64 = 1 << 24;

/// Homogeneous coordinates with the first nonzero coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePoint {
    coords: Vector,
}

impl ProjectivePoint {
    pub fn new(field: &Field, coords: Vector) -> Result<ProjectivePoint> {
        let lead = coords.iter().position(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
        let inv = field.inv(&coords[lead])?;
        Ok(ProjectivePoint { coords: coords.iter().map(|x| field.mul(x, &inv)).collect() })
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn format(&self, field: &Field) -> String {
        let parts: Vec<String> = self.coords.iter().map(|x| field.format(x)).collect();
        format!("({})", parts.join(":"))
    }

    fn key(&self, field: &Field) -> Vec<u64> {
        self.coords.iter().map(|x| field.index_of(x).unwrap_or(u64::MAX)).collect()
    }
}

fn check_budget(field: &Field, dim: usize) -> Result<u64> {
    let size = field.size().filter(|s| s.checked_pow(dim as u32).is_some_and(|t| t <= POINT_BUDGET));
    size.ok_or_else(|| Error::FieldTooLarge { size: format!("{}^{}", field.p(), field.degree() * dim), budget: POINT_BUDGET })
}

/// All points of `P^{dim-1}(K)`, grouped by the position of the leading 1.
pub fn projective_points(field: &Field, dim: usize) -> Result<Vec<ProjectivePoint>> {
    let size = check_budget(field, dim)?;
    let mut out = Vec::new();
    for lead in 0..dim {
        let free = dim - lead - 1;
        for mut idx in 0..size.pow(free as u32) {
            let mut coords = vec![field.zero(); dim];
            coords[lead] = field.one();
            for c in coords.iter_mut().skip(lead + 1) {
                *c = field.from_index(idx % size);
                idx /= size;
            }
            out.push(ProjectivePoint { coords });
        }
    }
    Ok(out)
}

/// `tx A x^(q)`.
pub fn form_at(a: &Matrix, q: Twist, x: &[Elem]) -> Result<Elem> {
    a.form_value(x, x, q)
}

/// Points of `X_A` over `field` (which must contain the entries of `A`).
pub fn enum_points(a: &Matrix, q: Twist, field: &Field) -> Result<Vec<ProjectivePoint>> {
    let a = a.embed(field)?;
    let mut out = Vec::new();
    for p in projective_points(field, a.rows())? {
        if form_at(&a, q, &p.coords)?.is_zero() {
            out.push(p);
        }
    }
    Ok(out)
}

/// `|X_A(F_{q^j})|` for `j = 1..=max_j`, each field containing that of `A`.
pub fn point_counts(a: &Matrix, q: Twist, max_j: usize) -> Result<Vec<usize>> {
    (1..=max_j)
        .map(|j| {
            let degree = crate::gf::lcm(q.e() as usize * j, a.field().degree());
            let k = crate::gf::build_field(q.p() as u64, degree)?;
            Ok(enum_points(a, q, &k)?.len())
        })
        .collect()
}

/// Points where every partial derivative `(A x^(q))_i` vanishes.
pub fn singular_points(a: &Matrix, q: Twist, field: &Field) -> Result<Vec<ProjectivePoint>> {
    let a = a.embed(field)?;
    let (_, kernel) = a.rank_kernel();
    if kernel.is_empty() {
        return Ok(Vec::new());
    }
    let size = check_budget(field, kernel.len())?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for mut idx in 1..size.pow(kernel.len() as u32) {
        let mut v = vec![field.zero(); a.rows()];
        for basis in &kernel {
            let c = field.from_index(idx % size);
            idx /= size;
            for (x, b) in v.iter_mut().zip(basis) {
                *x = field.add(x, &field.mul(&c, b));
            }
        }
        let p = ProjectivePoint::new(field, twist_vec(field, &v, q, -1))?;
        if seen.insert(p.key(field)) {
            out.push(p);
        }
    }
    out.sort_by_key(|p| p.key(field));
    Ok(out)
}

/// The decomposition `F = F_q x_n + F_{q+1}` of the form of `W_s`.
#[derive(Clone, Debug)]
pub struct ConeData {
    pub s: usize,
    pub n: usize,
    /// Matrix of `F_{q+1}` in `y_0..y_{n-1}`.
    pub fq1_matrix: Matrix,
    /// Matrix of the section `V_s` in `P^{n-2}`, when `s <= n-2`.
    pub vs_matrix: Option<Matrix>,
}

impl ConeData {
    /// `F_q(y)`: zero for `s = n`, else `y_{n-1}^q`.
    pub fn f_q(&self, field: &Field, q: Twist, y: &[Elem]) -> Elem {
        if self.s == self.n {
            field.zero()
        } else {
            field.frobenius_pow(&y[self.n - 1], q, 1)
        }
    }

    pub fn f_q1(&self, q: Twist, y: &[Elem]) -> Result<Elem> {
        self.fq1_matrix.form_value(y, y, q)
    }
}

pub fn cone_invariants(field: &Field, s: usize, n: usize) -> Result<ConeData> {
    if n == 0 || s > n {
        return Err(Error::IndexOutOfRange { s, n });
    }
    let fq1_matrix = if s == n {
        Matrix::identity(field, n)
    } else {
        w_matrix(field, n - 1, s)?
    };
    let vs_matrix = if n >= 2 && s + 2 <= n { Some(w_matrix(field, n - 2, s)?) } else { None };
    Ok(ConeData { s, n, fq1_matrix, vs_matrix })
}

/// Checks `F = F_q x_n + F_{q+1}` at every point of `P^n(field)`.
pub fn cone_identity_holds(cone: &ConeData, q: Twist, field: &Field) -> Result<bool> {
    let w = w_matrix(field, cone.n, cone.s)?;
    for p in projective_points(field, cone.n + 1)? {
        let x = p.coords();
        let y = &x[..cone.n];
        let rhs = field.add(&field.mul(&cone.f_q(field, q, y), &x[cone.n]), &cone.f_q1(q, y)?);
        if form_at(&w, q, x)? != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Points of `X_s` other than the cone point on the line joining it to a
/// point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiberClass {
    Empty,
    Single,
    Line,
}

fn at_infinity(n: usize, point: &[Elem]) -> Result<()> {
    if point.len() != n + 1 || !point[n].is_zero() || point.iter().all(|x| x.is_zero()) {
        return Err(Error::Precondition("point must be nonzero with last coordinate 0".into()));
    }
    Ok(())
}

/// Case analysis on `F_q(y)` and `F_{q+1}(y)`.
pub fn fiber_class(s: usize, n: usize, q: Twist, field: &Field, point: &[Elem]) -> Result<FiberClass> {
    at_infinity(n, point)?;
    let cone = cone_invariants(field, s, n)?;
    let y = &point[..n];
    Ok(if !cone.f_q(field, q, y).is_zero() {
        FiberClass::Single
    } else if cone.f_q1(q, y)?.is_zero() {
        FiberClass::Line
    } else {
        FiberClass::Empty
    })
}

/// Counts the points `(y : t)` of `X_s` directly.
pub fn fiber_by_enumeration(s: usize, n: usize, q: Twist, field: &Field, point: &[Elem]) -> Result<FiberClass> {
    at_infinity(n, point)?;
    let w = w_matrix(field, n, s)?;
    let size = check_budget(field, 1)?;
    let mut x = point.to_vec();
    let mut hits = 0;
    for t in 0..size {
        x[n] = field.from_index(t);
        if form_at(&w, q, &x)?.is_zero() {
            hits += 1;
        }
    }
    Ok(match hits {
        0 => FiberClass::Empty,
        1 => FiberClass::Single,
        h if h == size => FiberClass::Line,
        h => return Err(Error::Internal(format!("{h} points on a fiber"))),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoundtripReport {
    pub samples: usize,
    /// Draws with `y_{n-1} = 0`, outside the chart.
    pub skipped: usize,
    pub passed: usize,
}

/// Samples `Q = (y : 0)` with `y_{n-1} != 0`, lifts it to
/// `(y : -F_{q+1}(y) / y_{n-1}^q)` on `X_s`, and projects back from the cone point.
pub fn rational_roundtrip(s: usize, n: usize, q: Twist, field: &Field, samples: usize, seed: u64) -> Result<RoundtripReport> {
    if n < 2 || s >= n || (n, s) == (2, 0) {
        return Err(Error::Precondition(format!("no rational parametrization for n={n}, s={s}")));
    }
    let cone = cone_invariants(field, s, n)?;
    let w = w_matrix(field, n, s)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RoundtripReport { samples: 0, skipped: 0, passed: 0 };
    while report.samples < samples {
        let y: Vector = (0..n).map(|_| field.random(&mut rng)).collect();
        if y[n - 1].is_zero() {
            report.skipped += 1;
            continue;
        }
        report.samples += 1;
        let denom = field.frobenius_pow(&y[n - 1], q, 1);
        let t = field.neg(&field.div(&cone.f_q1(q, &y)?, &denom)?);
        let mut x = y.clone();
        x.push(t);
        let mut back = x[..n].to_vec();
        back.push(field.zero());
        let mut start = y.clone();
        start.push(field.zero());
        if form_at(&w, q, &x)?.is_zero() && ProjectivePoint::new(field, back)? == ProjectivePoint::new(field, start)? {
            report.passed += 1;
        }
    }
    Ok(report)
}

/// Coefficients `g = A x^(q)` of the tangent hyperplane `sum g_i y_i = 0`.
pub fn tangent_hyperplane(a: &Matrix, q: Twist, x: &[Elem]) -> Result<Vector> {
    if !form_at(a, q, x)?.is_zero() {
        return Err(Error::Precondition("point is not on the hypersurface".into()));
    }
    let g = a.mul_vec(&twist_vec(a.field(), x, q, 1))?;
    if g.iter().all(|v| v.is_zero()) {
        return Err(Error::Precondition("tangent hyperplane at a singular point".into()));
    }
    Ok(g)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Strangeness {
    /// Every tangent passes through this point.
    Center(ProjectivePoint),
    NoCenter,
    /// All tangents are one line, so no single center is determined.
    SingleTangent(Vector),
    Inconclusive { smooth_points: usize },
}

fn smooth_points(a: &Matrix, q: Twist, field: &Field) -> Result<Vec<(ProjectivePoint, Vector)>> {
    let a = a.embed(field)?;
    let mut out = Vec::new();
    for p in enum_points(&a, q, field)? {
        if let Ok(g) = tangent_hyperplane(&a, q, p.coords()) {
            out.push((p, g));
        }
    }
    Ok(out)
}

fn concurrence(field: &Field, tangents: &[Vector]) -> Result<Strangeness> {
    if tangents.len() < 3 {
        return Ok(Strangeness::Inconclusive { smooth_points: tangents.len() });
    }
    let m = Matrix::from_rows(field, tangents.to_vec())?;
    let (rank, kernel) = m.rank_kernel();
    Ok(match rank {
        1 => Strangeness::SingleTangent(ProjectivePoint::new(field, tangents[0].clone())?.coords),
        2 => Strangeness::Center(ProjectivePoint::new(field, kernel[0].clone())?),
        _ => Strangeness::NoCenter,
    })
}

fn plane_check(a: &Matrix) -> Result<()> {
    if a.rows() != 3 || a.cols() != 3 {
        return Err(Error::DimensionMismatch("strangeness is defined for plane curves".into()));
    }
    Ok(())
}

/// Common point of the tangent lines at all smooth `field`-points.
pub fn strangeness_center(a: &Matrix, q: Twist, field: &Field) -> Result<Strangeness> {
    plane_check(a)?;
    let tangents: Vec<Vector> = smooth_points(a, q, field)?.into_iter().map(|(_, g)| g).collect();
    concurrence(field, &tangents)
}

/// Strangeness of one part of a reducible curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentStrangeness {
    /// The line, for a linear component; `None` for the residual points.
    pub line: Option<Vector>,
    pub smooth_points: usize,
    pub result: Strangeness,
}

fn line_through(field: &Field, a: &[Elem], b: &[Elem]) -> Result<Vector> {
    let m = Matrix::from_rows(field, vec![a.to_vec(), b.to_vec()])?;
    let (_, kernel) = m.rank_kernel();
    Ok(ProjectivePoint::new(field, kernel[0].clone())?.coords)
}

/// Splits the smooth points into those on lines contained in the curve and
/// the rest, and runs the tangent test on each part. Containment of a line
/// needs more than `q + 1` rational points, so `|field| > q` is required.
pub fn strangeness_by_component(a: &Matrix, q: Twist, field: &Field) -> Result<Vec<ComponentStrangeness>> {
    plane_check(a)?;
    let size = check_budget(field, 3)?;
    if size <= q.q() {
        return Err(Error::Precondition("field too small to detect linear components".into()));
    }
    let local = a.embed(field)?;
    let points = enum_points(&local, q, field)?;
    let on_curve: BTreeSet<Vec<u64>> = points.iter().map(|p| p.key(field)).collect();
    let mut lines: Vec<Vector> = Vec::new();
    let all = projective_points(field, 3)?;
    for (i, p) in points.iter().enumerate() {
        for r in &points[i + 1..] {
            let line = line_through(field, p.coords(), r.coords())?;
            if lines.contains(&line) {
                continue;
            }
            let contained = all
                .iter()
                .filter(|x| dot(field, &line, x.coords()).is_zero())
                .all(|x| on_curve.contains(&x.key(field)));
            if contained {
                lines.push(line);
            }
        }
    }
    let smooth = smooth_points(&local, q, field)?;
    let mut out = Vec::new();
    let mut rest: Vec<Vector> = Vec::new();
    let mut buckets: Vec<Vec<Vector>> = vec![Vec::new(); lines.len()];
    for (p, g) in smooth {
        match lines.iter().position(|l| dot(field, l, p.coords()).is_zero()) {
            Some(i) => buckets[i].push(g),
            None => rest.push(g),
        }
    }
    for (line, tangents) in lines.into_iter().zip(buckets) {
        out.push(ComponentStrangeness { line: Some(line), smooth_points: tangents.len(), result: concurrence(field, &tangents)? });
    }
    out.push(ComponentStrangeness { line: None, smooth_points: rest.len(), result: concurrence(field, &rest)? });
    Ok(out)
}

fn dot(field: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    a.iter().zip(b).fold(field.zero(), |acc, (x, y)| field.add(&acc, &field.mul(x, y)))
}

/// `delta` with `tM W_s M^(q) = delta W_s`, if any.
pub fn aut_membership(m: &Matrix, s: usize, n: usize, q: Twist) -> Result<Option<Elem>> {
    let k = m.field();
    let w = w_matrix(k, n, s)?;
    let image = w.congruence(m, q)?;
    let (i, j) = if s > 0 { (0, 0) } else { (1, 0) };
    let delta = image.get(i, j).clone();
    if delta.is_zero() || image != w.scale(&delta) {
        return Ok(None);
    }
    Ok(Some(delta))
}

/// `M` split as `[[T, ta, 0], [b, d, 0], [c, e, 1]]` after scaling its
/// last column to `e_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutCandidate {
    pub m: Matrix,
    pub t: Matrix,
    pub a: Vector,
    pub b: Vector,
    pub c: Vector,
    pub d: Elem,
    pub e: Elem,
    pub delta: Elem,
    /// Whether the last column was a multiple of `e_n`.
    pub fixes_cone_point: bool,
}

impl AutCandidate {
    /// Decomposes `m`, taking `delta = d^q`.
    pub fn from_matrix(m: &Matrix, q: Twist) -> Result<AutCandidate> {
        let k = m.field();
        let size = m.rows();
        if !m.is_square() || size < 3 {
            return Err(Error::DimensionMismatch("candidates need size at least 3".into()));
        }
        let n = size - 1;
        let lambda = m.get(n, n).clone();
        let fixes = !lambda.is_zero() && (0..n).all(|i| m.get(i, n).is_zero());
        let m = if fixes { m.scale(&k.inv(&lambda)?) } else { m.clone() };
        let h = n - 1;
        let d = m.get(h, h).clone();
        Ok(AutCandidate {
            t: m.block(h, h),
            a: (0..h).map(|i| m.get(i, h).clone()).collect(),
            b: (0..h).map(|j| m.get(h, j).clone()).collect(),
            c: (0..h).map(|j| m.get(n, j).clone()).collect(),
            e: m.get(n, h).clone(),
            delta: k.frobenius_pow(&d, q, 1),
            d,
            fixes_cone_point: fixes,
            m,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutReport {
    /// Block equations of `tM W_s M^(q) = delta W_s`; these decide membership.
    pub conditions: Vec<(&'static str, bool)>,
    /// The compact list for `s <= n-2`, which also asks for
    /// `delta^q = delta` and `d = delta`. Empty for the other shapes.
    pub compact: Vec<(&'static str, bool)>,
}

impl AutReport {
    pub fn holds(&self) -> bool {
        self.conditions.iter().all(|(_, ok)| *ok)
    }

    pub fn compact_holds(&self) -> bool {
        self.holds() && self.compact.iter().all(|(_, ok)| *ok)
    }
}

fn is_scalar_identity(m: &Matrix, c: &Elem) -> bool {
    *m == Matrix::identity(m.field(), m.rows()).scale(c)
}

/// The block conditions describing `Aut(X_s)`: the general list for
/// `s <= n-2`, and the explicit shapes for `s = n-1` and `s = n`.
pub fn aut_structural_check(cand: &AutCandidate, s: usize, n: usize, q: Twist) -> Result<AutReport> {
    let k = cand.m.field().clone();
    if cand.m.rows() != n + 1 || s > n {
        return Err(Error::DimensionMismatch(format!("candidate of size {} for n={n}, s={s}", cand.m.rows())));
    }
    let mut conditions = vec![("fixes cone point", cand.fixes_cone_point)];
    let mut compact = Vec::new();
    let h = n - 1;
    let zero_vec = |v: &[Elem]| v.iter().all(|x| x.is_zero());
    if s == n {
        // [[T_n, 0], [u, 1]] with tT_n T_n^(q) = lambda I
        let tn = cand.m.block(n, n);
        let gram = tn.transpose().mul(&tn.twist(q, 1))?;
        let lambda = gram.get(0, 0).clone();
        conditions.push(("tT T^(q) scalar", !lambda.is_zero() && is_scalar_identity(&gram, &lambda)));
    } else if s == h {
        // diag(T_{n-1}, beta, 1) with tT T^(q) = beta^q I
        let beta = cand.d.clone();
        let off_block = zero_vec(&cand.a) && zero_vec(&cand.b) && zero_vec(&cand.c) && cand.e.is_zero();
        conditions.push(("block diagonal", off_block));
        let gram = cand.t.transpose().mul(&cand.t.twist(q, 1))?;
        let target = k.frobenius_pow(&beta, q, 1);
        conditions.push(("tT T^(q) = beta^q I", !beta.is_zero() && is_scalar_identity(&gram, &target)));
    } else {
        let delta = &cand.delta;
        let wp = w_matrix(&k, n - 2, s)?;
        let tq = cand.t.twist(q, 1);
        let aq = twist_vec(&k, &cand.a, q, 1);
        let dq = k.frobenius_pow(&cand.d, q, 1);
        let mut last = vec![k.zero(); h];
        last[h - 1] = k.one();
        // a W' + d (0,...,0,1)
        let row: Vector = (0..h)
            .map(|j| {
                let aw = (0..h).fold(k.zero(), |acc, i| k.add(&acc, &k.mul(&cand.a[i], wp.get(i, j))));
                k.add(&aw, &k.mul(&cand.d, &last[j]))
            })
            .collect();
        let e1 = cand.t.transpose().mul(&wp)?.mul(&tq)? == wp.scale(delta);
        let lhs2: Vector = (0..h).map(|j| dot(&k, &row, &tq.col(j))).collect();
        let e2 = lhs2 == last.iter().map(|x| k.mul(x, delta)).collect::<Vector>();
        let tw = cand.t.transpose().mul(&wp)?.mul_vec(&aq)?;
        let e3 = tw.iter().zip(&cand.c).all(|(x, c)| k.add(x, &k.mul(c, &dq)).is_zero());
        let e4 = k.add(&dot(&k, &row, &aq), &k.mul(&cand.e, &dq)).is_zero();
        conditions.push(("tT W' T^(q) = delta W'", e1));
        conditions.push(("[a W' + d e] T^(q) = delta e", e2));
        conditions.push(("tT W' ta^(q) + tc d^q = 0", e3));
        conditions.push(("[a W' + d e] ta^(q) + e d^q = 0", e4));
        conditions.push(("b = 0", zero_vec(&cand.b)));
        conditions.push(("d^q = delta != 0", dq == *delta && !delta.is_zero()));
        compact.push(("tT W' T^(q) = delta W', delta^q = delta != 0", e1 && !delta.is_zero() && k.frobenius_pow(delta, q, 1) == *delta));
        compact.push(("d = delta", cand.d == *delta));
        compact.push(("[a W' + d e] T^(q) = delta e", e2));
        compact.push(("tT W' ta^(q) + tc d^q = 0", e3));
        compact.push(("[a W' + d e] ta^(q) + e d^q = 0", e4));
    }
    Ok(AutReport { conditions, compact })
}

/// Whether `M` maps every `field`-point of `X_s` to a point of `X_s`.
pub fn aut_point_stabilizer(m: &Matrix, s: usize, n: usize, q: Twist, field: &Field) -> Result<bool> {
    let m = m.embed(field)?;
    let w = w_matrix(field, n, s)?;
    for p in enum_points(&w, q, field)? {
        let image = m.mul_vec(p.coords())?;
        if !form_at(&w, q, &image)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
