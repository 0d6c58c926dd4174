use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twistform::classify::{classify, classify_corank_one, w_matrix, Certificate, Label};
use twistform::gf::{build_field, kth_root, Field, Twist, DEFAULT_MAX_EXT_DEGREE};
use twistform::linalg::Matrix;
use twistform::random::random_rank_matrix;
use twistform::verify::verify;
use twistform::wire::{certificate_to_string, parse_certificate};

const FIELDS: [(u64, usize); 8] = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 1), (7, 2)];

fn field_and_twist(idx: usize, e: u32) -> (Field, Twist) {
    let (p, d) = FIELDS[idx % FIELDS.len()];
    let k = build_field(p, d).unwrap();
    let e = 1 + e % d as u32;
    (k, Twist::new(p.pow(e)).unwrap())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn congruence_composes(idx in 0usize..8, e in 0u32..4, size in 1usize..5, seed in any::<u64>()) {
        let (k, q) = field_and_twist(idx, e);
        let mut r = rng(seed);
        let a = Matrix::random(&k, size, size, &mut r);
        let s = Matrix::random(&k, size, size, &mut r);
        let t = Matrix::random(&k, size, size, &mut r);
        let stepwise = a.congruence_unchecked(&s, q).unwrap().congruence_unchecked(&t, q).unwrap();
        prop_assert_eq!(stepwise, a.congruence_unchecked(&s.mul(&t).unwrap(), q).unwrap());
    }

    #[test]
    fn twist_is_a_ring_homomorphism(idx in 0usize..8, e in 0u32..4, size in 1usize..5, seed in any::<u64>()) {
        let (k, q) = field_and_twist(idx, e);
        let mut r = rng(seed);
        let s = Matrix::random(&k, size, size, &mut r);
        let t = Matrix::random(&k, size, size, &mut r);
        prop_assert_eq!(s.mul(&t).unwrap().twist(q, 1), s.twist(q, 1).mul(&t.twist(q, 1)).unwrap());
        prop_assert_eq!(s.add(&t).unwrap().twist(q, 1), s.twist(q, 1).add(&t.twist(q, 1)).unwrap());
        prop_assert_eq!(s.transpose().twist(q, 1), s.twist(q, 1).transpose());
        let g = Matrix::random_invertible(&k, size, &mut r);
        prop_assert_eq!(g.inverse().unwrap().twist(q, 1), g.twist(q, 1).inverse().unwrap());
    }

    #[test]
    fn frobenius_inverse_roundtrip(idx in 0usize..8, e in 0u32..4, i in -6i64..6, seed in any::<u64>()) {
        let (k, q) = field_and_twist(idx, e);
        let x = k.random(&mut rng(seed));
        prop_assert_eq!(k.frobenius_pow(&k.frobenius_pow(&x, q, i), q, -i), x.clone());
        prop_assert_eq!(k.frobenius_pow(&x, q, 1), k.pow(&x, q.q()));
        prop_assert_eq!(k.frobenius_pow(&x, q, k.degree() as i64), x);
    }

    #[test]
    fn kth_root_post_condition(idx in 0usize..8, k_exp in 1u64..13, seed in any::<u64>()) {
        let (k, _) = field_and_twist(idx, 0);
        let x = k.elem(k.random(&mut rng(seed)));
        let (y, field) = kth_root(&x, k_exp).unwrap();
        prop_assert_eq!(field.degree() % k.degree(), 0);
        prop_assert_eq!(y.pow(k_exp), x.embed(&field).unwrap());
    }

    #[test]
    fn random_matrices_have_the_requested_rank(idx in 0usize..8, size in 1usize..5, rank in 0usize..5, seed in any::<u64>()) {
        let (k, _) = field_and_twist(idx, 0);
        match random_rank_matrix(&k, size, rank, seed) {
            Ok(a) => {
                prop_assert_eq!(a.rank(), rank);
                prop_assert_eq!(a, random_rank_matrix(&k, size, rank, seed).unwrap());
            }
            Err(_) => prop_assert!(rank > size),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn disguised_normal_forms_are_recovered(idx in 0usize..8, n in 1usize..4, s_pick in 0usize..4, seed in any::<u64>()) {
        let (k, q) = field_and_twist(idx, 0);
        let s = s_pick % (n + 1);
        let t = Matrix::random_invertible(&k, n + 1, &mut rng(seed));
        let a = w_matrix(&k, n, s).unwrap().congruence(&t, q).unwrap();
        let cert = classify_corank_one(&a, q, DEFAULT_MAX_EXT_DEGREE).unwrap();
        prop_assert_eq!(cert.label, Label::Ws(s));
        prop_assert!(verify(&cert).unwrap().passed());
        prop_assert_eq!(parse_certificate(&certificate_to_string(&cert)).unwrap(), cert);
    }

    #[test]
    fn tampered_certificates_fail(seed in any::<u64>(), which in any::<u64>(), delta in 1u64..4) {
        let k = build_field(2, 2).unwrap();
        let q = Twist::new(2).unwrap();
        let rank = 2 + (seed % 2) as usize;
        let a = random_rank_matrix(&k, 3, rank, seed).unwrap();
        let cert = classify(&a, q, DEFAULT_MAX_EXT_DEGREE).unwrap();
        prop_assert!(verify(&cert).unwrap().passed());
        let slots = matrix_slots(&cert);
        let (m, i) = (which as usize % slots, (which >> 32) as usize);
        let bad = mutate(&cert, m, i, delta);
        prop_assert!(!matches!(verify(&bad), Ok(v) if v.passed()));
    }
}

fn matrix_slots(c: &Certificate) -> usize {
    2 + 2 * c.trace.len()
}

// Adds the element with index `delta` (nonzero) to one entry of the `m`-th matrix.
fn mutate(c: &Certificate, m: usize, i: usize, delta: u64) -> Certificate {
    let mut bad = c.clone();
    let target = match m {
        0 => &mut bad.input,
        1 => &mut bad.t,
        m => {
            let step = &mut bad.trace[(m - 2) / 2];
            if m % 2 == 0 {
                &mut step.matrix
            } else {
                &mut step.claimed
            }
        }
    };
    let k = target.field().clone();
    let cells = target.rows() * target.cols();
    let (r, col) = ((i % cells) / target.cols(), i % target.cols());
    let d = k.from_index(delta % (k.size().unwrap() - 1) + 1);
    let x = k.add(target.get(r, col), &d);
    target.set(r, col, x);
    bad
}
