use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twistform::classify::{brute_force_orbits, classify, classify_corank_one, w_matrix, Certificate, Label};
use twistform::fullrank::normalize_full_rank;
use twistform::geometry::{
    aut_membership, aut_structural_check, enum_points, point_counts, rational_roundtrip, strangeness_by_component, strangeness_center, AutCandidate,
    ProjectivePoint, Strangeness,
};
use twistform::gf::{build_field, kth_root, Field, Twist, DEFAULT_MAX_EXT_DEGREE};
use twistform::linalg::Matrix;
use twistform::random::random_rank_matrix;
use twistform::verify::verify;

const CAP: usize = DEFAULT_MAX_EXT_DEGREE;

type Outcome = Result<String, String>;

type Criterion = (u32, Duration, fn() -> Outcome);

fn check(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: twistform::Error) -> String {
    e.to_string()
}

fn all_matrices(k: &Field, size: usize) -> impl Iterator<Item = Matrix> + '_ {
    let order = k.size().unwrap();
    let cells = size * size;
    (0..order.pow(cells as u32)).map(move |mut code| {
        let mut m = Matrix::zeros(k, size, size);
        for i in 0..cells {
            m.set(i / size, i % size, k.from_index(code % order));
            code /= order;
        }
        m
    })
}

fn normalizes(a: &Matrix, q: Twist) -> Result<bool, String> {
    let w = normalize_full_rank(a, q, CAP).map_err(err)?;
    Ok(w.input.congruence(&w.t, q).map_err(err)?.is_identity() && w.check(q).map_err(err)?)
}

fn criterion1() -> Outcome {
    let mut count = 0;
    let f2 = build_field(2, 1).map_err(err)?;
    let q2 = Twist::new(2).map_err(err)?;
    for a in all_matrices(&f2, 2).filter(|a| a.rank() == 2) {
        check(normalizes(&a, q2)?, format!("GL_2(F_2) matrix\n{}", a.pretty()))?;
        count += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (p, d, size) in [(2, 2, 2), (2, 1, 3), (2, 2, 3), (3, 2, 2)] {
        let k = build_field(p, d).map_err(err)?;
        let twists = [Twist::new(p).map_err(err)?, Twist::new(p.pow(d as u32)).map_err(err)?];
        for i in 0..100 {
            let a = Matrix::random_invertible(&k, size, &mut rng);
            let q = twists[i % 2];
            check(normalizes(&a, q)?, format!("GL_{size}({k}) with q={q}\n{}", a.pretty()))?;
            count += 1;
        }
    }
    Ok(format!("{count} matrices reach I exactly"))
}

fn criterion2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut count = 0;
    let mut fields = Vec::new();
    for (p, d) in [(2, 1), (2, 2), (2, 4), (3, 1), (3, 2), (3, 4)] {
        let k = build_field(p, d).map_err(err)?;
        let q = Twist::new(p).map_err(err)?;
        for n in 1..=4 {
            for s in 0..=n {
                let w = w_matrix(&k, n, s).map_err(err)?;
                for _ in 0..50 {
                    let t = Matrix::random_invertible(&k, n + 1, &mut rng);
                    let a = w.congruence(&t, q).map_err(err)?;
                    let cert = classify_corank_one(&a, q, CAP).map_err(|e| format!("{k} q={q} n={n} s={s}: {e}"))?;
                    check(cert.label == Label::Ws(s), format!("{k} n={n} s={s} labelled {}", cert.label))?;
                    check(verify(&cert).map_err(err)?.passed(), format!("{k} n={n} s={s}: certificate does not replay"))?;
                    count += 1;
                }
            }
        }
        fields.push(format!("{k} q={q}"));
    }
    Ok(format!("{count} disguised W_s recovered and replayed over {}", fields.join(", ")))
}

fn criterion3() -> Outcome {
    let q2 = Twist::new(2).map_err(err)?;
    let r = brute_force_orbits(1, q2, 1, 1, CAP).map_err(err)?;
    let degrees: Vec<usize> = r.ladder.iter().map(|l| l.degree).collect();
    check(r.separated(Label::Ws(0), Label::Ws(1)), "W_0 and W_1 share an orbit")?;
    check(r.consistent() && r.unresolved() == 0, "orbit partition disagrees with the classifier")?;

    let mut vectors = 0;
    for p in [2u64, 3] {
        let q = Twist::new(p).map_err(err)?;
        let k = build_field(p, 1).map_err(err)?;
        for n in 1..=3 {
            let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            for s in 0..=n {
                let counts = point_counts(&w_matrix(&k, n, s).map_err(err)?, q, 3).map_err(err)?;
                if let Some(t) = seen.insert(counts.clone(), s) {
                    return Err(format!("q={q} n={n}: s={t} and s={s} both count {counts:?}"));
                }
                vectors += 1;
            }
        }
    }

    let f2 = build_field(2, 1).map_err(err)?;
    let f4 = build_field(2, 2).map_err(err)?;
    for j in 1..=3 {
        let k = build_field(2, j).map_err(err)?;
        check(enum_points(&w_matrix(&f2, 1, 0).map_err(err)?, q2, &k).map_err(err)?.len() == 2, "X_0 on the line")?;
        check(enum_points(&w_matrix(&f2, 1, 1).map_err(err)?, q2, &k).map_err(err)?.len() == 1, "X_1 on the line")?;
    }
    let x2 = w_matrix(&f2, 2, 2).map_err(err)?;
    check(enum_points(&x2, q2, &f4).map_err(err)?.len() == 13, "X_2 over F_4 should have 13 points")?;
    let parts = strangeness_by_component(&x2, q2, &f4).map_err(err)?;
    let lines = parts.iter().filter(|c| c.line.is_some()).count();
    let stray = parts.iter().filter(|c| c.line.is_none()).map(|c| c.smooth_points).sum::<usize>();
    check(lines == 3 && stray == 0, format!("X_2 over F_4 splits into {lines} lines plus {stray} points"))?;
    Ok(format!(
        "ladder degrees {degrees:?} keep W_0, W_1 apart; {vectors} distinct count vectors; X_0: 2, X_1: 1, X_2(F_4): 13 on 3 lines"
    ))
}

fn criterion4() -> Outcome {
    let q = Twist::new(2).map_err(err)?;
    let mut report = Vec::new();
    let mut compact_gaps = 0;
    for d in [1, 2] {
        let k = build_field(2, d).map_err(err)?;
        let mut sizes = [0usize; 3];
        let mut group = 0;
        for m in all_matrices(&k, 3).filter(|m| m.rank() == 3) {
            group += 1;
            let cand = AutCandidate::from_matrix(&m, q).map_err(err)?;
            for (s, size) in sizes.iter_mut().enumerate() {
                let member = aut_membership(&m, s, 2, q).map_err(err)?.is_some();
                let structural = aut_structural_check(&cand, s, 2, q).map_err(err)?;
                if member != structural.holds() {
                    return Err(format!("s={s}: membership {member}, block conditions {}\n{}", structural.holds(), m.pretty()));
                }
                compact_gaps += (member != structural.compact_holds()) as usize;
                *size += member as usize;
            }
        }
        report.push(format!("|GL_3({k})| = {group}, |Aut(X_s)| = {sizes:?}"));
    }
    Ok(format!("{}; compact list rejects {compact_gaps} members", report.join("; ")))
}

fn criterion5() -> Outcome {
    let q = Twist::new(2).map_err(err)?;
    let f2 = build_field(2, 1).map_err(err)?;
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    let plane = [Label::PlaneZ0, Label::PlaneZ1, Label::PlaneX0, Label::PlaneX1, Label::PlaneX2];
    for a in all_matrices(&f2, 3).filter(|a| !a.is_zero() && a.rank() <= 2) {
        let cert = classify(&a, q, CAP).map_err(err)?;
        check(plane.contains(&cert.label), format!("label {} outside the plane list", cert.label))?;
        check(verify(&cert).map_err(err)?.passed(), format!("certificate for\n{}does not replay", a.pretty()))?;
        *tally.entry(cert.label.to_string()).or_default() += 1;
    }
    check(tally.len() == 5, format!("only {} classes met", tally.len()))?;
    let f16 = build_field(2, 4).map_err(err)?;
    let center = ProjectivePoint::new(&f16, vec![f16.zero(), f16.one(), f16.zero()]).map_err(err)?;
    let x1 = strangeness_center(&w_matrix(&f16, 2, 1).map_err(err)?, q, &f16).map_err(err)?;
    check(x1 == Strangeness::Center(center), format!("X_1 over F_16: {x1:?}"))?;
    let fermat = strangeness_center(&Matrix::identity(&f16, 3), q, &f16).map_err(err)?;
    check(fermat == Strangeness::NoCenter, format!("Fermat cubic: {fermat:?}"))?;
    Ok(format!("{tally:?}, all certificates replay; X_1 strange at (0:1:0); Fermat cubic not strange"))
}

fn criterion6() -> Outcome {
    let q = Twist::new(2).map_err(err)?;
    let f16 = build_field(2, 4).map_err(err)?;
    for (n, s) in [(2, 1), (3, 1), (3, 2)] {
        let r = rational_roundtrip(s, n, q, &f16, 20, 6).map_err(err)?;
        check(r.samples == 20 && r.passed == 20, format!("n={n} s={s}: {}/{}", r.passed, r.samples))?;
    }
    Ok("20/20 chart points round-trip for (n,s) = (2,1), (3,1), (3,2)".into())
}

fn criterion7() -> Outcome {
    let q = Twist::new(3).map_err(err)?;
    let f9 = build_field(3, 2).map_err(err)?;
    let mut tally: BTreeMap<String, usize> = BTreeMap::new();
    for seed in 0..500 {
        let a = random_rank_matrix(&f9, 3, 2, seed).map_err(err)?;
        *tally.entry(classify(&a, q, CAP).map_err(err)?.label.to_string()).or_default() += 1;
    }
    let x1 = tally.get("X1").copied().unwrap_or(0);
    check(2 * x1 > 500, format!("W_1 in {x1}/500 cases: {tally:?}"))?;
    Ok(format!("W_1 in {x1}/500 cases ({tally:?})"))
}

fn matrices_mut(c: &mut Certificate) -> Vec<&mut Matrix> {
    let mut out = vec![&mut c.input, &mut c.t];
    for step in c.trace.iter_mut() {
        out.push(&mut step.matrix);
        out.push(&mut step.claimed);
    }
    out
}

fn tamper_all(cert: &Certificate) -> Result<usize, String> {
    let slots = 2 + 2 * cert.trace.len();
    let mut tried = 0;
    for slot in 0..slots {
        let mut probe = cert.clone();
        let (k, rows, cols) = {
            let m = &matrices_mut(&mut probe)[slot];
            (m.field().clone(), m.rows(), m.cols())
        };
        let order = k.size().unwrap();
        let deltas: Vec<u64> = if order <= 16 { (1..order).collect() } else { vec![1, 2, order - 1] };
        for i in 0..rows {
            for j in 0..cols {
                for &delta in &deltas {
                    let mut bad = cert.clone();
                    let m = &mut *matrices_mut(&mut bad).swap_remove(slot);
                    let x = k.add(m.get(i, j), &k.from_index(delta));
                    m.set(i, j, x);
                    if matches!(verify(&bad), Ok(v) if v.passed()) {
                        return Err(format!("mutation of matrix {slot} entry ({i},{j}) by {delta} still verifies"));
                    }
                    tried += 1;
                }
            }
        }
    }
    Ok(tried)
}

fn criterion8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cases = 200;
    for (p, d) in [(2, 1), (2, 3), (3, 2), (5, 1), (7, 2)] {
        let k = build_field(p, d).map_err(err)?;
        let q = Twist::new(p).map_err(err)?;
        for _ in 0..cases {
            let size = 1 + (k.random(&mut rng).coeffs()[0] as usize % 4);
            let a = Matrix::random(&k, size, size, &mut rng);
            let s = Matrix::random(&k, size, size, &mut rng);
            let t = Matrix::random(&k, size, size, &mut rng);
            let lhs = a.congruence_unchecked(&s, q).map_err(err)?.congruence_unchecked(&t, q).map_err(err)?;
            check(lhs == a.congruence_unchecked(&s.mul(&t).map_err(err)?, q).map_err(err)?, "congruence composition")?;
            check(s.mul(&t).map_err(err)?.twist(q, 1) == s.twist(q, 1).mul(&t.twist(q, 1)).map_err(err)?, "twist of a product")?;
            check(s.add(&t).map_err(err)?.twist(q, 1) == s.twist(q, 1).add(&t.twist(q, 1)).map_err(err)?, "twist of a sum")?;
            let x = k.random(&mut rng);
            check(k.frobenius_pow(&k.frobenius_pow(&x, q, 1), q, -1) == x, "Frobenius inverse")?;
            let e = 1 + (k.random(&mut rng).coeffs()[0] as u64 % 9);
            let (y, big) = kth_root(&k.elem(x.clone()), e).map_err(err)?;
            check(y.pow(e) == k.elem(x).embed(&big).map_err(err)?, "k-th root")?;
        }
    }

    let mut certs = Vec::new();
    let f2 = build_field(2, 1).map_err(err)?;
    let f4 = build_field(2, 2).map_err(err)?;
    let q2 = Twist::new(2).map_err(err)?;
    for seed in 0..4 {
        for rank in [1, 2, 3] {
            certs.push(classify(&random_rank_matrix(&f4, 3, rank, seed).map_err(err)?, q2, CAP).map_err(err)?);
        }
        certs.push(classify(&random_rank_matrix(&f2, 4, 3, seed).map_err(err)?, q2, CAP).map_err(err)?);
        certs.push(classify(&random_rank_matrix(&f4, 4, 3, seed).map_err(err)?, q2, CAP).map_err(err)?);
    }
    let mut mutations = 0;
    for c in &certs {
        check(verify(c).map_err(err)?.passed(), "unmodified certificate fails")?;
        mutations += tamper_all(c)?;
    }
    Ok(format!(
        "{} algebraic cases; {mutations} single-entry mutations of {} certificates all rejected",
        5 * cases,
        certs.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (1, Duration::from_secs(30), criterion1),
        (2, Duration::from_secs(60), criterion2),
        (3, Duration::from_secs(120), criterion3),
        (4, Duration::from_secs(120), criterion4),
        (5, Duration::from_secs(60), criterion5),
        (6, Duration::from_secs(10), criterion6),
        (7, Duration::from_secs(30), criterion7),
        (8, Duration::from_secs(30), criterion8),
    ];
    let mut failed = 0;
    for (id, budget, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let in_time = took <= budget;
        let (verdict, detail) = match &outcome {
            Ok(d) if in_time => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("over the time budget; {d}")),
            Err(e) => ("FAIL", e.clone()),
        };
        failed += (verdict == "FAIL") as usize;
        println!("criterion {id}: {verdict} [{:.2}s of {}s] {detail}", took.as_secs_f64(), budget.as_secs());
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
