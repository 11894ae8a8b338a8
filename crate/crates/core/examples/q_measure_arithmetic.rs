//! Q-measure bookkeeping: per-function pieces, pooling, and the
//! undefined case.

use devolab::metrics::{PcUnits, QmSummary};

fn show(label: &str, s: &QmSummary) {
    let qm = s.qm.map_or(devolab::report::UNDEFINED.to_string(), |q| format!("{q:.2}"));
    println!(
        "{label:<28} sumEj={:<10} nc={:<4} runs={:<4} C={:<10} Pc={:<7} Qm={qm}",
        s.sum_ej,
        s.nc,
        s.total_runs,
        s.c.map_or("-".into(), |c| format!("{c:.2}")),
        s.pc_percent().map_or("-".into(), |p| format!("{p:.1}%")),
    );
}

fn main() -> devolab::Result<()> {
    let perfect = QmSummary::from_counts(18_000_000, 100, 100)?;
    let mostly = QmSummary::from_counts(15_480_000, 86, 100)?;
    let never = QmSummary::from_counts(0, 0, 100)?;
    show("every run succeeds", &perfect);
    show("86 of 100 succeed", &mostly);
    show("no successes", &never);

    let two_functions = QmSummary::from_counts(9_000_000, 100, 100)?;
    let pooled = two_functions.merge(&QmSummary::from_counts(4_000_000, 80, 100)?)?;
    show("pooled over two functions", &pooled);

    let frac = QmSummary::from_counts_in(15_480_000, 86, 100, PcUnits::Fraction)?;
    show("Pc as a fraction", &frac);
    Ok(())
}
