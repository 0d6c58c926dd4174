//! Tangent concurrence for plane curves.

use twistform::classify::w_matrix;
use twistform::geometry::{strangeness_by_component, strangeness_center, ProjectivePoint, Strangeness};
use twistform::gf::{build_field, Field, Twist};
use twistform::linalg::Matrix;

fn describe(k: &Field, s: &Strangeness) -> twistform::Result<String> {
    Ok(match s {
        Strangeness::Center(p) => format!("center {}", p.format(k)),
        Strangeness::NoCenter => "no center".into(),
        Strangeness::SingleTangent(l) => format!("one tangent line {}", ProjectivePoint::new(k, l.clone())?.format(k)),
        Strangeness::Inconclusive { smooth_points } => format!("inconclusive with {smooth_points} smooth points"),
    })
}

fn main() -> twistform::Result<()> {
    let q = Twist::new(2)?;
    let f16 = build_field(2, 4)?;
    let x1 = w_matrix(&f16, 2, 1)?;
    println!("X_1: {}", describe(&f16, &strangeness_center(&x1, q, &f16)?)?);
    println!("Fermat cubic: {}", describe(&f16, &strangeness_center(&Matrix::identity(&f16, 3), q, &f16)?)?);
    for c in strangeness_by_component(&w_matrix(&f16, 2, 2)?, q, &f16)? {
        println!("X_2, {} smooth points: {}", c.smooth_points, describe(&f16, &c.result)?);
    }
    Ok(())
}
