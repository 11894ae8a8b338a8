//! Grid-search the crossover rate for one variant and function.
//!
//! ```text
//! cargo run --release --example tune_crossover_rate -- [variant] [function] [runs_per_cr]
//! ```

use devolab::tuning::{default_cr_grid, tune_cr};
use devolab::{BenchmarkFn, ControlParams, FnId, VariantSpec};

fn main() -> devolab::Result<()> {
    let mut args = std::env::args().skip(1);
    let variant: VariantSpec = args.next().as_deref().unwrap_or("best/1/exp").parse()?;
    let id: FnId = args.next().as_deref().unwrap_or("f11").parse()?;
    let runs: usize = args.next().map(|s| s.parse().expect("runs must be an integer")).unwrap_or(10);

    let params = ControlParams { max_gen: 500, max_fe: 30_000, ..ControlParams::default() };
    let t = tune_cr(variant, &BenchmarkFn::new(id), &default_cr_grid(), runs, &params, 5)?;

    println!("{variant} on {id}, {runs} runs per CR, 500 generations");
    println!("{:>5} {:>12} {:>24}", "CR", "MOV", "95% CI");
    for c in &t.cells {
        let mark = if c.cr == t.chosen.cr { " <" } else { "" };
        println!("{:>5.1} {:>12.4e}   [{:.3e}, {:.3e}]{mark}", c.cr, c.mov, c.ci.lo, c.ci.hi);
    }
    println!("published CR for this pair: {}", devolab::cr_lookup(variant, id)?);
    Ok(())
}
