//! Run every variant on one function and rank them by mean final value.
//!
//! ```text
//! cargo run --release --example variant_shootout -- [function] [runs]
//! ```

use devolab::{de, metrics, BenchmarkFn, ControlParams, FnId, VariantSpec};
use rayon::prelude::*;

fn main() -> devolab::Result<()> {
    let mut args = std::env::args().skip(1);
    let id: FnId = args.next().as_deref().unwrap_or("f9").parse()?;
    let runs: usize = args.next().map(|s| s.parse().expect("runs must be an integer")).unwrap_or(10);
    let function = BenchmarkFn::new(id);
    let base = ControlParams::default();

    let mut rows = VariantSpec::all()
        .into_par_iter()
        .map(|v| {
            let params = base.with_cr(devolab::cr_lookup(v, id)?);
            let records = (0..runs)
                .map(|r| de::run(v, &function, &params, devolab::seed::derive_seed(0, v, id, r)))
                .collect::<devolab::Result<Vec<_>>>()?;
            Ok((
                v,
                metrics::mov(&records)?,
                metrics::convergence_speed(&records, params.max_fe)?,
                metrics::q_measure(&records)?,
            ))
        })
        .collect::<devolab::Result<Vec<_>>>()?;
    rows.sort_by(|a, b| a.1.total_cmp(&b.1));

    println!("{} ({}), {runs} runs each", id, function.name());
    println!("{:<22} {:>12} {:>8} {:>10}", "variant", "MOV", "Cs%", "Qm");
    for (v, mov, cs, qm) in rows {
        let qm = qm.qm.map_or(devolab::report::UNDEFINED.to_string(), |q| format!("{q:.1}"));
        println!("{:<22} {:>12.4e} {:>8.2} {:>10}", v.to_string(), mov, cs, qm);
    }
    Ok(())
}
