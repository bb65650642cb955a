//! Evaluate every relation `phi_n(rho_{t,r}(a, b, c))` of a small sweep
//! and confirm each one is the zero polynomial.
//!
//! cargo run --release --example relation_sweep

use spinv::eval_maps::{verify_relations, EvalContext, RelationSweep};
use spinv::exactalg::FieldSpec;
use spinv::matform::Group;

fn main() -> spinv::Result<()> {
    for (group, n) in [(Group::Sp, 2), (Group::O, 2), (Group::O, 3)] {
        let mut sweep = RelationSweep::new(EvalContext::new(group, n, 2, FieldSpec::prime(7)?)?);
        sweep.max_word_len = 1;
        sweep.controls = true;
        let out = verify_relations(&sweep)?;
        let zero = out.records.iter().filter(|r| r.result == "zero").count();
        println!(
            "{group}({n}): {} records, {zero} zero, {} failures, pairs {:?}",
            out.records.len(),
            out.failures().count(),
            sweep.pairs()
        );
        if let Some(r) = out.records.iter().find(|r| r.expected == "nonzero") {
            println!("  control {}_{},{} -> {}", r.relation.kind, r.relation.t, r.relation.r, r.witness_term.as_deref().unwrap_or("?"));
        }
    }
    Ok(())
}
