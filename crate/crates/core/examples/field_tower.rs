//! Field construction, Frobenius, embeddings and k-th roots.

use twistform::gf::{build_field, kth_root, Embedding, Twist};

fn main() -> twistform::Result<()> {
    let f4 = build_field(2, 2)?;
    let f16 = build_field(2, 4)?;
    println!("{f4} has modulus {:?}, {f16} has modulus {:?}", f4.modulus(), f16.modulus());

    let g = f4.generator();
    let q = Twist::new(2)?;
    println!("g = {}, g^q = {}, g^(q^-1) = {}", f4.format(&g), f4.format(&f4.frobenius_pow(&g, q, 1)), f4.format(&f4.frobenius_pow(&g, q, -1)));

    let e = Embedding::new(&f4, &f16)?;
    let img = e.apply(&g);
    println!("g lands on {} in {f16}", f16.format(&img));
    assert_eq!(f16.add(&f16.mul(&img, &img), &f16.add(&img, &f16.one())), f16.zero());

    // g has no cube root in F_4
    let (root, field) = kth_root(&f4.elem(g.clone()), 3)?;
    println!("cube root of g: {root} in {field}");
    assert_eq!(root.pow(3), f4.elem(g).embed(&field)?);
    Ok(())
}
