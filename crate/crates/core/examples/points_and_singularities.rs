//! Rational points, point counts and the singular locus of `X_s`.

use twistform::classify::w_matrix;
use twistform::geometry::{enum_points, point_counts, singular_points};
use twistform::gf::{build_field, Twist};

fn main() -> twistform::Result<()> {
    let q = Twist::new(2)?;
    let f2 = build_field(2, 1)?;
    let f4 = build_field(2, 2)?;
    for n in 1..=3 {
        for s in 0..=n {
            let w = w_matrix(&f2, n, s)?;
            let sing = singular_points(&w, q, &f4)?;
            println!("n={n} s={s}: counts over F_2, F_4, F_8 = {:?}, singular {}", point_counts(&w, q, 3)?, sing[0].format(&f4));
        }
    }
    let x22 = enum_points(&w_matrix(&f2, 2, 2)?, q, &f4)?;
    println!("X_2 in the plane has {} points over {f4}", x22.len());
    Ok(())
}
