//! Words in the letters `x_k`, `x_k'`: involution, canonical classes,
//! primitivity, and realization as matrix products per group.
//!
//! cargo run --example words -- "x1 x2' x1"

use spinv::exactalg::FieldSpec;
use spinv::matform::{sigma_coeffs, Group};
use spinv::wordalg::{Realizer, Word};

fn main() -> spinv::Result<()> {
    let text = std::env::args().nth(1).unwrap_or_else(|| "x2 x1 x1'".to_string());
    let w: Word = text.parse()?;
    println!("w          = {w}");
    println!("w'         = {}", w.involute());
    println!("class      = {}", w.canonical_class());
    println!("rotation   = {}", w.min_rotation());
    println!("primitive  = {}", w.is_primitive());
    let (root, power) = w.primitive_root();
    println!("root^power = ({root})^{power}");

    let d = w.max_index().max(1);
    let field = FieldSpec::prime(7)?;
    for group in [Group::Gl, Group::O, Group::Sp] {
        let r = Realizer::generic(group, 2, d, field)?;
        let m = r.realize(&w)?;
        println!("{group}(2): sigma_1 = {}", sigma_coeffs(&m).sigma(1));
    }

    let all = Word::all_up_to(2, 3, true);
    let mut classes: Vec<Word> = all.iter().map(Word::canonical_class).collect();
    classes.sort();
    classes.dedup();
    println!("{} words of length <= 3 in x1, x2 fall into {} classes", all.len(), classes.len());
    Ok(())
}
