//! Invariance of `sigma_t(X_w)` under sampled group elements.
//!
//! cargo run --release --example invariance

use spinv::eval_maps::{check_invariance, EvalContext};
use spinv::exactalg::FieldSpec;
use spinv::matform::{GroupSampler, Group};

fn main() -> spinv::Result<()> {
    let field = FieldSpec::prime(7)?;
    let mut sampler = GroupSampler::new(field, 3)?;
    let g = sampler.sample(Group::Sp, 4)?;
    println!("a symplectic element of GF(7)^4x4:\n{g}");

    for (group, n) in [(Group::Sp, 2), (Group::O, 3), (Group::Gl, 2)] {
        let report = check_invariance(&EvalContext::new(group, n, 2, field)?, 2, 5, 1)?;
        println!(
            "{group}({n}): {} words, {} classes, {} checks, {} violations, control moved: {}",
            report.words,
            report.classes,
            report.checks,
            report.violations.len(),
            report.control_moved
        );
    }
    Ok(())
}
