//! A small resumable campaign on disk, followed by the markdown report.
//!
//! Interrupt it and run it again: finished runs are kept.
//!
//! ```text
//! cargo run --release --example campaign -- [out_dir]
//! ```

use std::path::PathBuf;

use devolab::harness::{execute_in, write_summary, CrSource, ExecOptions, ExperimentPlan};
use devolab::{ControlParams, FnId, VariantSpec};

fn main() -> devolab::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "campaign-out".into()));
    let plan = ExperimentPlan {
        variants: ["rand/1/bin", "best/2/bin", "current-to-rand/1/exp", "rand-to-best/1/bin"]
            .iter()
            .map(|s| s.parse::<VariantSpec>())
            .collect::<Result<_, _>>()?,
        functions: vec![FnId::F1, FnId::F3, FnId::F6, FnId::F9, FnId::F10, FnId::F11],
        runs: 5,
        params: ControlParams { max_gen: 1000, max_fe: 60_000, ..ControlParams::default() },
        cr_source: CrSource::Published,
        base_seed: 2024,
    };

    let store = execute_in(&plan, &dir, ExecOptions::default())?;
    write_summary(&store, &dir)?;
    println!("{}", devolab::report::render(&store));
    eprintln!("results in {}", dir.display());
    Ok(())
}
