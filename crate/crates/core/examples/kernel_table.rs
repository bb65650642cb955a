//! Kernel components of `phi_n` against the span of relation multiples.
//!
//! cargo run --release --example kernel_table -- sp 2 2 3

use spinv::eval_maps::EvalContext;
use spinv::exactalg::FieldSpec;
use spinv::kernel_lab::{component_basis, dimension_table, format_table, kernel_component};
use spinv::matform::Group;

fn main() -> spinv::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let arg = |i: usize, default: &str| args.get(i).cloned().unwrap_or_else(|| default.to_string());
    let group: Group = arg(0, "gl").parse()?;
    let num = |s: String| s.parse::<u32>().map_err(|e| spinv::Error::InvalidArgument(e.to_string()));
    let n = num(arg(1, "2"))? as usize;
    let d = num(arg(2, "1"))? as usize;
    let maxdeg = num(arg(3, "4"))?;
    let ctx = EvalContext::new(group, n, d, FieldSpec::prime(7)?)?;

    let rows = dimension_table(&ctx, maxdeg, None)?;
    print!("{}", format_table(&rows));

    let top = vec![maxdeg; 1].into_iter().chain(std::iter::repeat_n(0, d - 1)).collect::<Vec<_>>();
    let basis = component_basis(&top, group)?;
    let kernel = kernel_component(&top, &ctx)?;
    println!("component {top:?}: basis of {}, image rank {}", basis.len(), kernel.image_rank);
    for k in &kernel.kernel {
        println!("  {k}");
    }
    Ok(())
}
