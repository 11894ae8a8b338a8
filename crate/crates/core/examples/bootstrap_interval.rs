//! Percentile bootstrap interval for a mean, and its empirical coverage.

use devolab::metrics::{bootstrap_ci, DEFAULT_LEVEL, DEFAULT_RESAMPLES};
use devolab::seed::rng_from_seed;
use rand::Rng;

fn main() -> devolab::Result<()> {
    let mut rng = rng_from_seed(11);
    let sample: Vec<f64> = (0..40).map(|_| rng.random_range(0.0..10.0)).collect();
    let mean = sample.iter().sum::<f64>() / sample.len() as f64;
    let ci = bootstrap_ci(&sample, DEFAULT_RESAMPLES, DEFAULT_LEVEL, &mut rng)?;
    println!("mean {mean:.3}, 95% interval [{:.3}, {:.3}]", ci.lo, ci.hi);

    let trials = 300;
    let covered = (0..trials)
        .filter(|_| {
            let s: Vec<f64> = (0..40).map(|_| rng.random_range(0.0..10.0)).collect();
            bootstrap_ci(&s, 500, DEFAULT_LEVEL, &mut rng).unwrap().contains(5.0)
        })
        .count();
    println!("true mean 5.0 covered in {covered}/{trials} repetitions");
    Ok(())
}
