use std::collections::VecDeque;

use super::{classify, Label};
use crate::error::{Error, Result};
use crate::gf::{build_field, Elem, Field, Twist};
use crate::linalg::Matrix;

/// Largest matrix space `|K|^((n+1)^2)` the oracle walks.
pub const ORBIT_BUDGET: u64 = 1 << 18;

/// Members per orbit re-classified besides the representative.
pub const MEMBER_CHECKS: u64 = 64;

/// Orbits of the normal forms over one field of the ladder.
#[derive(Clone, Debug)]
pub struct LadderLevel {
    pub degree: usize,
    pub orbit_sizes: Vec<(Label, u64)>,
    /// No matrix lies in two normal-form orbits.
    pub disjoint: bool,
}

/// One orbit of the base field.
#[derive(Clone, Debug)]
pub struct OrbitClass {
    pub representative: Matrix,
    pub size: u64,
    /// The normal form whose orbit contains it, and the first ladder degree where that happens.
    pub landed: Option<(Label, usize)>,
    /// Label from the classifier on the representative.
    pub pipeline: Option<Label>,
    /// Further members classified, all compared with `pipeline`.
    pub checked: u64,
    pub members_agree: bool,
}

#[derive(Clone, Debug)]
pub struct OrbitReport {
    pub n: usize,
    pub q: Twist,
    pub m: usize,
    pub rank: usize,
    pub ladder: Vec<LadderLevel>,
    pub classes: Vec<OrbitClass>,
}

impl OrbitReport {
    /// Disjoint normal-form orbits, and no class contradicting the classifier.
    /// Classes that never land within the ladder are not contradictions.
    pub fn consistent(&self) -> bool {
        self.ladder.iter().all(|l| l.disjoint)
            && self.classes.iter().all(|c| {
                c.members_agree && c.pipeline.is_some() && c.landed.is_none_or(|(l, _)| Some(l) == c.pipeline)
            })
    }

    /// Classes that meet no normal-form orbit over any ladder field.
    pub fn unresolved(&self) -> usize {
        self.classes.iter().filter(|c| c.landed.is_none()).count()
    }

    /// Whether the two normal forms stay in different orbits at every level.
    pub fn separated(&self, a: Label, b: Label) -> bool {
        self.ladder.iter().all(|l| {
            l.disjoint
                && l.orbit_sizes.iter().any(|(x, _)| *x == a)
                && l.orbit_sizes.iter().any(|(x, _)| *x == b)
        })
    }
}

struct Space {
    field: Field,
    size: u64,
    dim: usize,
    cells: usize,
}

impl Space {
    fn new(field: &Field, dim: usize) -> Result<Space> {
        let cells = dim * dim;
        let too_large = || Error::FieldTooLarge {
            size: format!("{}^{}", field.p(), field.degree() * cells),
            budget: ORBIT_BUDGET,
        };
        let size = field.size().ok_or_else(too_large)?;
        let total = size.checked_pow(cells as u32).ok_or_else(too_large)?;
        if total > ORBIT_BUDGET {
            return Err(too_large());
        }
        Ok(Space { field: field.clone(), size, dim, cells })
    }

    fn total(&self) -> u64 {
        self.size.pow(self.cells as u32)
    }

    fn encode(&self, m: &Matrix) -> u64 {
        let mut code = 0;
        for i in (0..self.cells).rev() {
            code = code * self.size + self.field.index_of(m.get(i / self.dim, i % self.dim)).expect("enumerable field");
        }
        code
    }

    fn decode(&self, mut code: u64) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.dim, self.dim);
        for i in 0..self.cells {
            m.set(i / self.dim, i % self.dim, self.field.from_index(code % self.size));
            code /= self.size;
        }
        m
    }
}

fn primitive_element(k: &Field) -> Elem {
    let order = k.size().expect("small field") - 1;
    let mut primes = Vec::new();
    let mut rest = order;
    let mut f = 2;
    while f * f <= rest {
        if rest.is_multiple_of(f) {
            primes.push(f);
            while rest.is_multiple_of(f) {
                rest /= f;
            }
        }
        f += 1;
    }
    if rest > 1 {
        primes.push(rest);
    }
    (1..=order)
        .map(|i| k.from_index(i))
        .find(|x| primes.iter().all(|r| !k.is_one(&k.pow(x, order / r))))
        .expect("multiplicative group is cyclic")
}

// transvections over an F_p-basis plus one primitive diagonal
fn generators(k: &Field, dim: usize) -> Vec<Matrix> {
    let mut gens = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if i == j {
                continue;
            }
            for t in 0..k.degree() {
                let mut g = Matrix::identity(k, dim);
                let mut b = k.zero();
                b.0[t] = 1;
                g.set(i, j, b);
                gens.push(g);
            }
        }
    }
    let mut d = Matrix::identity(k, dim);
    d.set(0, 0, primitive_element(k));
    gens.push(d);
    gens
}

// Tags every matrix of the orbit of `start` with `tag`; returns the orbit size
// and whether a differently tagged matrix was reached.
fn flood(space: &Space, gens: &[Matrix], q: Twist, start: &Matrix, tag: u32, tags: &mut [u32]) -> (u64, bool) {
    let first = space.encode(start);
    let mut clash = tags[first as usize] != 0 && tags[first as usize] != tag;
    if tags[first as usize] == tag {
        return (0, clash);
    }
    tags[first as usize] = tag;
    let mut queue = VecDeque::from([first]);
    let mut size = 1;
    while let Some(code) = queue.pop_front() {
        let m = space.decode(code);
        for g in gens {
            let next = space.encode(&m.congruence_unchecked(g, q).expect("square generators"));
            match tags[next as usize] {
                0 => {
                    tags[next as usize] = tag;
                    size += 1;
                    queue.push_back(next);
                }
                t if t != tag => clash = true,
                _ => {}
            }
        }
    }
    (size, clash)
}

fn normal_forms(n: usize, rank: usize) -> Result<Vec<Label>> {
    Ok(match (n, rank) {
        (_, r) if r == n + 1 => vec![Label::Identity],
        (2, 2) => vec![Label::PlaneX0, Label::PlaneX1, Label::PlaneX2],
        (2, 1) => vec![Label::PlaneZ0, Label::PlaneZ1],
        (_, r) if r == n => (0..=n).map(Label::Ws).collect(),
        _ => return Err(Error::RankMismatch { expected: format!("{} or {}", n, n + 1), found: rank }),
    })
}

/// Exhaustive orbit partition of the rank-`rank` matrices of size `n + 1`
/// over `F_{q^m}`, compared with the normal-form orbits over the fields
/// `F_{q^{mj}}` that fit in [`ORBIT_BUDGET`] and with the classifier.
pub fn brute_force_orbits(n: usize, q: Twist, m: usize, rank: usize, cap: usize) -> Result<OrbitReport> {
    if n == 0 || m == 0 {
        return Err(Error::Precondition("need n >= 1 and m >= 1".into()));
    }
    let dim = n + 1;
    let labels = normal_forms(n, rank)?;
    let base_degree = q.e() as usize * m;
    let base = build_field(q.p() as u64, base_degree)?;
    let base_space = Space::new(&base, dim)?;

    let gens = generators(&base, dim);
    let mut tags = vec![0u32; base_space.total() as usize];
    let mut classes = Vec::new();
    for code in 0..base_space.total() {
        if tags[code as usize] != 0 {
            continue;
        }
        let a = base_space.decode(code);
        if a.rank() != rank {
            continue;
        }
        let tag = classes.len() as u32 + 1;
        let (size, _) = flood(&base_space, &gens, q, &a, tag, &mut tags);
        let pipeline = classify(&a, q, cap).ok().map(|c| c.label);
        classes.push(OrbitClass { representative: a, size, landed: None, pipeline, checked: 0, members_agree: true });
    }
    for code in 0..base_space.total() {
        let tag = tags[code as usize] as usize;
        if tag == 0 {
            continue;
        }
        let class = &mut classes[tag - 1];
        if class.checked < MEMBER_CHECKS && base_space.encode(&class.representative) != code {
            let label = classify(&base_space.decode(code), q, cap).ok().map(|c| c.label);
            class.members_agree &= label == class.pipeline;
            class.checked += 1;
        }
    }

    let mut ladder = Vec::new();
    let mut degree = base_degree;
    while let Ok(space) = build_field(q.p() as u64, degree).and_then(|k| Space::new(&k, dim)) {
        let k = space.field.clone();
        let gens = generators(&k, dim);
        let mut tags = vec![0u32; space.total() as usize];
        let mut orbit_sizes = Vec::new();
        let mut disjoint = true;
        for (i, label) in labels.iter().enumerate() {
            let (size, clash) = flood(&space, &gens, q, &label.normal_form(&k, n)?, i as u32 + 1, &mut tags);
            disjoint &= !clash && size > 0;
            orbit_sizes.push((*label, size));
        }
        for class in classes.iter_mut().filter(|c| c.landed.is_none()) {
            let tag = tags[space.encode(&class.representative.embed(&k)?) as usize] as usize;
            if tag > 0 {
                class.landed = Some((labels[tag - 1], degree));
            }
        }
        ladder.push(LadderLevel { degree, orbit_sizes, disjoint });
        degree += base_degree;
    }
    Ok(OrbitReport { n, q, m, rank, ladder, classes })
}
