//! Print the benchmark suite and check every function at its optimizer.

use devolab::{catalog, FunctionClass};

fn main() -> devolab::Result<()> {
    for class in FunctionClass::ALL {
        println!("{}:", class.label());
        for f in catalog().into_iter().filter(|f| f.class() == class) {
            let at_opt = f.evaluate_deterministic(&f.optimizer())?;
            println!(
                "  {:<4} {:<28} [{:>8}, {:>8}]  f(x*) = {:.3e}{}",
                f.id.to_string(),
                f.name(),
                f.bounds[0].low,
                f.bounds[0].high,
                at_opt,
                if f.is_noisy() { "  (plus noise)" } else { "" }
            );
        }
    }

    let mut rng = devolab::seed::rng_from_seed(3);
    let quartic = devolab::BenchmarkFn::new(devolab::FnId::F7);
    let zero = vec![0.0; quartic.dim];
    let draws: Vec<f64> = (0..5).map(|_| quartic.evaluate(&zero, &mut rng).unwrap()).collect();
    println!("f7 at the origin, five draws: {draws:.3?}");
    Ok(())
}
