//! The relation families as signed sums of products over closed paths.
//!
//! cargo run --example expand -- rho 2 1

use spinv::quiver_rel::{build_relation, Quiver, RelationKind};

fn main() -> spinv::Result<()> {
    let mut args = std::env::args().skip(1);
    let kind: RelationKind = args.next().as_deref().unwrap_or("sigma").parse()?;
    let t: u32 = args.next().map_or(Ok(1), |s| s.parse()).map_err(|e| spinv::Error::InvalidArgument(format!("{e}")))?;
    let r: u32 = args.next().map_or(Ok(1), |s| s.parse()).map_err(|e| spinv::Error::InvalidArgument(format!("{e}")))?;

    let expr = build_relation(kind, t, r)?;
    println!("{expr}");
    println!("{} terms", expr.terms.len());
    let q = Quiver::q();
    for term in expr.terms.iter().take(5) {
        let paths: Vec<String> = term.factors.iter().map(|f| format!("{}^{:?}", f.path, q.mdeg(&f.path))).collect();
        println!("  {:+} {}", term.sign, paths.join(" "));
    }
    println!("{}", expr.to_json_pretty());
    Ok(())
}
