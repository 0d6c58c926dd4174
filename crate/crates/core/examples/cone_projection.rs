//! Projection from the cone point: invariants, fibers, and the rational chart.

use twistform::geometry::{cone_invariants, cone_identity_holds, fiber_class, projective_points, rational_roundtrip, FiberClass};
use twistform::gf::{build_field, Twist};

fn main() -> twistform::Result<()> {
    let k = build_field(2, 2)?;
    let q = Twist::new(2)?;
    let (s, n) = (1, 3);
    let cone = cone_invariants(&k, s, n)?;
    println!("F_q matrix:\n{}", cone.fq1_matrix.pretty());
    assert!(cone_identity_holds(&cone, q, &k)?);

    let mut tally = [0usize; 3];
    for p in projective_points(&k, n)? {
        let mut x = p.coords().to_vec();
        x.push(k.zero());
        tally[match fiber_class(s, n, q, &k, &x)? {
            FiberClass::Empty => 0,
            FiberClass::Single => 1,
            FiberClass::Line => 2,
        }] += 1;
    }
    println!("fibers over P^{}: empty {}, single {}, line {}", n - 1, tally[0], tally[1], tally[2]);

    let f16 = build_field(2, 4)?;
    for (n, s) in [(2, 1), (3, 1), (3, 2)] {
        let r = rational_roundtrip(s, n, q, &f16, 20, 9)?;
        println!("n={n} s={s}: {}/{} chart points round-trip", r.passed, r.samples);
    }
    Ok(())
}
