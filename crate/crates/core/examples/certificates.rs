//! Certificates survive JSON and catch any tampered entry.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twistform::classify::{classify, w_matrix};
use twistform::gf::{build_field, Twist, DEFAULT_MAX_EXT_DEGREE};
use twistform::linalg::Matrix;
use twistform::verify::{verify, Verdict};
use twistform::wire::{certificate_to_string, parse_certificate};

fn main() -> twistform::Result<()> {
    let k = build_field(2, 2)?;
    let q = Twist::new(2)?;
    let t = Matrix::random_invertible(&k, 4, &mut ChaCha8Rng::seed_from_u64(3));
    let a = w_matrix(&k, 3, 1)?.congruence(&t, q)?;
    let cert = classify(&a, q, DEFAULT_MAX_EXT_DEGREE)?;
    let text = certificate_to_string(&cert);
    println!("{} bytes of JSON, {} steps, label {}", text.len(), cert.trace.len(), cert.label);

    let back = parse_certificate(&text)?;
    println!("replayed: {:?}", verify(&back)?);

    let mut bad = back.clone();
    let last = bad.trace.len() - 1;
    let x = k.add(bad.trace[last].matrix.get(0, 0), &k.one());
    bad.trace[last].matrix.set(0, 0, x);
    match verify(&bad)? {
        Verdict::Fail { step, reason } => println!("tampered copy fails at step {step}: {reason}"),
        Verdict::Pass => unreachable!("a changed step matrix cannot replay"),
    }
    Ok(())
}
