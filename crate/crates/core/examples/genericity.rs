//! Random singular plane curves are mostly of type `X_1`.

use std::collections::BTreeMap;

use twistform::classify::classify;
use twistform::gf::{build_field, Twist, DEFAULT_MAX_EXT_DEGREE};
use twistform::random::random_rank_matrix;

fn main() -> twistform::Result<()> {
    let k = build_field(3, 2)?;
    let q = Twist::new(3)?;
    let mut tally = BTreeMap::new();
    for seed in 0..500 {
        let a = random_rank_matrix(&k, 3, 2, seed)?;
        *tally.entry(classify(&a, q, DEFAULT_MAX_EXT_DEGREE)?.label.to_string()).or_insert(0) += 1;
    }
    println!("{tally:?}");
    Ok(())
}
