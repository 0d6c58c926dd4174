//! Solving `v^(q^2) = Q v` by restriction of scalars to the prime field.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistform::fullrank::{lang_degree, lang_solve};
use twistform::gf::{build_field, Twist, DEFAULT_MAX_EXT_DEGREE};
use twistform::linalg::{semilinear_fixed_space, Matrix, SemilinearSpec};

fn main() -> twistform::Result<()> {
    let k = build_field(3, 2)?;
    let q = Twist::new(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let qm = Matrix::random_invertible(&k, 3, &mut rng);
    println!("Q =\n{}", qm.pretty());

    let degree = lang_degree(&qm, q, DEFAULT_MAX_EXT_DEGREE)?;
    let ambient = build_field(3, degree)?;
    let spec = SemilinearSpec { q_matrix: qm.clone(), sigma_exponent: 2 };
    let basis = semilinear_fixed_space(&spec, q, &ambient)?;
    println!("solutions live over {ambient}; {} independent fixed vectors", basis.len());

    let (t, field) = lang_solve(&qm, q, DEFAULT_MAX_EXT_DEGREE)?;
    assert_eq!(t.twist(q, 2), qm.embed(&field)?.mul(&t)?);
    println!("T^(q^2) = Q T holds over {field}");
    Ok(())
}
