//! The maps between the symplectic invariants and `I_n`: both composite
//! identities and the skew-symmetric congruence witness.
//!
//! cargo run --release --example iso_composites

use spinv::exactalg::FieldSpec;
use spinv::iso_maps::{check_skew_witness, i_generators, mu, psi_expr, sp_generators, theta, verify_composites};

fn main() -> spinv::Result<()> {
    let field = FieldSpec::prime(7)?;
    for f in sp_generators(2, 1, 2).iter().take(4) {
        let m = mu(f)?;
        let h = theta(&m)?;
        println!("{f}  ->  mu: {m}  ->  theta: {h}  ->  Psi: {}", psi_expr(&h)?);
    }
    for g in i_generators(2, 1, 2).iter().take(3) {
        println!("{g}  ->  Psi: {}", psi_expr(g)?);
    }
    let records = verify_composites(2, 2, 2, field)?;
    let failed = records.iter().filter(|r| r.status != "pass").count();
    println!("{} composite checks, {failed} failed", records.len());
    let w = check_skew_witness(2, 2, 2, 10, field, 5)?;
    println!("witness: {} samples x {} generators, passed {}", w.samples, w.generators, w.passed());
    Ok(())
}
