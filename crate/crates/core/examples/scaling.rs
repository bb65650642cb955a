//! The `2^k` scaling under `y -> z - z'`, then `z -> y`, `z' -> -y`.
//!
//! cargo run --release --example scaling

use spinv::eval_maps::scaling_check;
use spinv::exactalg::FieldSpec;

fn main() -> spinv::Result<()> {
    for field in [FieldSpec::prime(7)?, FieldSpec::Rationals] {
        for r in scaling_check(2, 1, field, 3, 2, 4)? {
            println!("{} k={} terms={:>4} passed={} f = {}", r.field, r.k, r.terms, r.passed, r.f);
        }
    }
    Ok(())
}
