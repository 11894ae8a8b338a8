//! Differential evolution variant laboratory.
//!
//! Fourteen DE variants (seven mutation strategies × binomial/exponential
//! crossover), fourteen benchmark functions, and a seeded experiment harness
//! measuring mean objective value, convergence speed and Q-measure.
//!
//! ```no_run
//! use devolab::{run, BenchmarkFn, ControlParams, FnId, VariantSpec};
//!
//! let variant: VariantSpec = "rand/1/bin".parse().unwrap();
//! let sphere = BenchmarkFn::new(FnId::F1);
//! let params = ControlParams::default().with_cr(0.9);
//! let record = run(variant, &sphere, &params, 42).unwrap();
//! println!("{} after {} evaluations", record.final_best, record.fe_used);
//! ```

pub mod benchmarks;
pub mod cli;
pub mod de;
pub mod error;
pub mod harness;
pub mod metrics;
pub mod params;
pub mod report;
pub mod seed;
pub mod tuning;
pub mod variant;

pub use benchmarks::{catalog, BenchmarkFn, FnId, FunctionClass, Modality};
pub use de::{run, Genome, Individual, Population, RunState};
pub use error::{Error, Result};
pub use harness::{execute, execute_in, CrSource, ExecOptions, ExperimentPlan, Grouping, ResultStore};
pub use metrics::{bootstrap_ci, convergence_speed, mov, q_measure, ConfidenceInterval, QmSummary, RunRecord};
pub use params::{ControlParams, FRange};
pub use tuning::{cr_lookup, tune_cr};
pub use variant::{Crossover, Mutation, VariantSpec};
