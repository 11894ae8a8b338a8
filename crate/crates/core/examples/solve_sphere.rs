//! Step a single DE run generation by generation and watch it converge.
//!
//! ```text
//! cargo run --release --example solve_sphere -- [variant] [seed]
//! ```

use devolab::{BenchmarkFn, ControlParams, FnId, RunState, VariantSpec};

fn main() -> devolab::Result<()> {
    let mut args = std::env::args().skip(1);
    let variant: VariantSpec = args.next().as_deref().unwrap_or("rand/1/bin").parse()?;
    let seed: u64 = args.next().map(|s| s.parse().expect("seed must be an integer")).unwrap_or(1);

    let params = ControlParams::default().with_cr(devolab::cr_lookup(variant, FnId::F1)?);
    let mut state = RunState::new(variant, BenchmarkFn::new(FnId::F1), params, seed)?;

    println!("{variant} on f1, NP={}, CR={}", params.np, params.cr);
    println!("{:>6} {:>8} {:>6} {:>12}", "gen", "FEs", "F", "best");
    while state.step() {
        if state.generation() % 100 == 0 {
            println!(
                "{:>6} {:>8} {:>6.3} {:>12.4e}",
                state.generation(),
                state.fe_count(),
                state.f_current(),
                state.best_ever().fitness
            );
        }
    }
    let rec = state.record();
    println!(
        "stopped: {:?} after {} generations, {} FEs, best {:.3e}",
        state.termination().unwrap(),
        state.generation(),
        rec.fe_used,
        rec.final_best
    );
    Ok(())
}
