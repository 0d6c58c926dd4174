//! Form stabilizers of `X_s` and their block description.

use twistform::geometry::{aut_membership, aut_structural_check, AutCandidate};
use twistform::gf::{build_field, Twist};
use twistform::linalg::Matrix;

fn main() -> twistform::Result<()> {
    let k = build_field(2, 1)?;
    let q = Twist::new(2)?;
    let mut members = [0usize; 3];
    let mut agree = true;
    for mut code in 0u32..512 {
        let mut m = Matrix::zeros(&k, 3, 3);
        for i in 0..9 {
            m.set(i / 3, i % 3, k.from_int((code & 1) as i64));
            code >>= 1;
        }
        if m.rank() < 3 {
            continue;
        }
        for (s, count) in members.iter_mut().enumerate() {
            let member = aut_membership(&m, s, 2, q)?.is_some();
            let report = aut_structural_check(&AutCandidate::from_matrix(&m, q)?, s, 2, q)?;
            *count += member as usize;
            agree &= member == report.holds();
        }
    }
    println!("|Aut(X_s)| over F_2 for s = 0, 1, 2: {members:?}; block conditions agree: {agree}");

    let f4 = build_field(2, 2)?;
    let g = f4.generator();
    let m = Matrix::diagonal(&f4, &[f4.mul(&g, &g), g, f4.one()]);
    let report = aut_structural_check(&AutCandidate::from_matrix(&m, q)?, 0, 2, q)?;
    println!("diag(g^2, g, 1) on X_0: member {:?}", aut_membership(&m, 0, 2, q)?.map(|d| f4.format(&d)));
    for (name, ok) in report.conditions.iter().chain(&report.compact) {
        println!("  {name}: {ok}");
    }
    Ok(())
}
