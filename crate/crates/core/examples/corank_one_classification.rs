//! Recovering the normal form `W_s` of a disguised corank-one matrix.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistform::classify::{classify_corank_one, w_matrix, Label};
use twistform::gf::{build_field, Twist, DEFAULT_MAX_EXT_DEGREE};
use twistform::linalg::Matrix;

fn main() -> twistform::Result<()> {
    let k = build_field(3, 2)?;
    let q = Twist::new(3)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let n = 3;
    for s in 0..=n {
        let t = Matrix::random_invertible(&k, n + 1, &mut rng);
        let a = w_matrix(&k, n, s)?.congruence(&t, q)?;
        let cert = classify_corank_one(&a, q, DEFAULT_MAX_EXT_DEGREE)?;
        let names: Vec<&str> = cert.trace.iter().map(|st| st.name.as_str()).collect();
        println!("s={s}: label {} over {} via {}", cert.label, cert.field, names.join(", "));
        assert_eq!(cert.label, Label::Ws(s));
    }
    Ok(())
}
