//! Exhaustive orbits of the twisted congruence action on small matrix spaces.

use twistform::classify::{brute_force_orbits, Label};
use twistform::gf::{Twist, DEFAULT_MAX_EXT_DEGREE};

fn main() -> twistform::Result<()> {
    let q = Twist::new(2)?;
    let r = brute_force_orbits(1, q, 1, 1, DEFAULT_MAX_EXT_DEGREE)?;
    for level in &r.ladder {
        println!("degree {}: normal-form orbits {:?}, disjoint {}", level.degree, level.orbit_sizes, level.disjoint);
    }
    for c in &r.classes {
        println!("orbit of size {} -> {:?}, classifier says {:?}", c.size, c.landed, c.pipeline);
    }
    println!("consistent {}, W_0 and W_1 separated {}", r.consistent(), r.separated(Label::Ws(0), Label::Ws(1)));
    Ok(())
}
