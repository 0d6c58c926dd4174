//! A full-rank matrix is congruent to the identity over a finite extension.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistform::fullrank::{is_hermitian, normalize_full_rank};
use twistform::gf::{build_field, Twist, DEFAULT_MAX_EXT_DEGREE};
use twistform::linalg::Matrix;

fn main() -> twistform::Result<()> {
    let k = build_field(2, 2)?;
    let q = Twist::new(2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let a = Matrix::random_invertible(&k, 3, &mut rng);
    println!("A over {k}:\n{}", a.pretty());

    let w = normalize_full_rank(&a, q, DEFAULT_MAX_EXT_DEGREE)?;
    println!("working field {}", w.field);
    println!("hermitian stage is q-Hermitian: {}", is_hermitian(&w.hermitian, q));
    println!("diagonal stage:\n{}", w.diagonal.pretty());
    println!("T =\n{}", w.t.pretty());
    assert!(w.check(q)?);
    assert!(w.input.congruence(&w.t, q)?.is_identity());
    Ok(())
}
