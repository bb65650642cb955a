//! Polynomials in the symbols `sigma_t(w)` and their images under
//! `phi_n`.
//!
//! cargo run --example sigma_ring

use spinv::eval_maps::{EvalContext, Evaluator};
use spinv::exactalg::{FieldSpec, Scalar};
use spinv::matform::Group;
use spinv::sigma_ring::SigmaPoly;

fn main() -> spinv::Result<()> {
    let q = FieldSpec::Rationals;
    let s1 = SigmaPoly::symbol(q, 1, &"x1".parse()?)?;
    let s2 = SigmaPoly::symbol(q, 1, &"x2".parse()?)?;
    let s12 = SigmaPoly::symbol(q, 1, &"x2 x1".parse()?)?;
    let s12t = SigmaPoly::symbol(q, 1, &"x1 x2'".parse()?)?;
    let f = &(&(&s1 * &s2) - &s12) + &s12t.scale(&Scalar::from_i64(q, 2))?;
    println!("f = {f}");
    println!("multidegree {:?}", f.mdeg(2));
    println!("components {:?}", f.components(2).keys().collect::<Vec<_>>());

    for group in [Group::Gl, Group::O, Group::Sp] {
        let ev = Evaluator::new(EvalContext::new(group, 2, 2, q)?)?;
        println!("phi_2 over {group}: {}", ev.phi(&f)?);
    }

    // sigma_3 of a 2x2 matrix is in the kernel
    let ev = Evaluator::new(EvalContext::new(Group::Gl, 2, 1, q)?)?;
    let s3 = SigmaPoly::symbol(q, 3, &"x1".parse()?)?;
    assert!(ev.phi(&s3)?.is_zero());
    Ok(())
}
