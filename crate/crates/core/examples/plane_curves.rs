//! The five classes of singular plane curves.

use std::collections::BTreeMap;

use twistform::classify::classify;
use twistform::gf::{build_field, Twist, DEFAULT_MAX_EXT_DEGREE};
use twistform::linalg::Matrix;
use twistform::verify::verify;

fn main() -> twistform::Result<()> {
    let k = build_field(2, 1)?;
    let q = Twist::new(2)?;
    let mut tally = BTreeMap::new();
    for mut code in 1u32..512 {
        let mut a = Matrix::zeros(&k, 3, 3);
        for i in 0..9 {
            a.set(i / 3, i % 3, k.from_int((code & 1) as i64));
            code >>= 1;
        }
        if a.rank() == 3 {
            continue;
        }
        let cert = classify(&a, q, DEFAULT_MAX_EXT_DEGREE)?;
        assert!(verify(&cert)?.passed());
        *tally.entry(cert.label.to_string()).or_insert(0) += 1;
    }
    for (label, count) in tally {
        println!("{label}: {count} matrices");
    }
    Ok(())
}
