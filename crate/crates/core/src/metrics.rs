//! Run-level outcomes and the three measurements computed over them:
//! mean objective value (MOV), convergence speed (Cs) and Q-measure (Qm),
//! plus the percentile bootstrap used when tuning CR.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::benchmarks::FnId;
use crate::error::{Error, Result};
use crate::variant::VariantSpec;

/// Outcome of one seeded run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub variant: VariantSpec,
    pub function: FnId,
    pub seed: u64,
    pub cr: f64,
    pub final_best: f64,
    /// Evaluations consumed, the NP initial ones included.
    pub fe_used: u64,
    pub success: bool,
}

fn nonempty(records: &[RunRecord], what: &str) -> Result<()> {
    if records.is_empty() {
        Err(Error::Usage(format!("{what} of an empty record list")))
    } else {
        Ok(())
    }
}

/// Mean of the final best values.
pub fn mov(records: &[RunRecord]) -> Result<f64> {
    nonempty(records, "MOV")?;
    Ok(records.iter().map(|r| r.final_best).sum::<f64>() / records.len() as f64)
}

/// Mean percentage of `max_fe` consumed before termination.
pub fn convergence_speed(records: &[RunRecord], max_fe: u64) -> Result<f64> {
    nonempty(records, "convergence speed")?;
    if max_fe == 0 {
        return Err(Error::Usage("max_fe must be positive".into()));
    }
    let total: f64 = records.iter().map(|r| 100.0 * r.fe_used as f64 / max_fe as f64).sum();
    Ok(total / records.len() as f64)
}

/// How the probability of convergence is expressed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PcUnits {
    /// 0..=100, as printed in the published tables.
    #[default]
    Percent,
    /// 0..=1.
    Fraction,
}

/// Q-measure of a group of runs. `c`, `pc` and `qm` are `None` when no run
/// succeeded (rendered as "−").
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QmSummary {
    /// Total evaluations over successful runs.
    pub sum_ej: u64,
    /// Number of successful runs.
    pub nc: usize,
    pub total_runs: usize,
    /// Convergence measure `sum_ej / nc`.
    pub c: Option<f64>,
    /// Probability of convergence in `units`.
    pub pc: Option<f64>,
    /// `c / pc`.
    pub qm: Option<f64>,
    pub units: PcUnits,
}

impl QmSummary {
    pub fn from_counts(sum_ej: u64, nc: usize, total_runs: usize) -> Result<Self> {
        Self::from_counts_in(sum_ej, nc, total_runs, PcUnits::Percent)
    }

    pub fn from_counts_in(sum_ej: u64, nc: usize, total_runs: usize, units: PcUnits) -> Result<Self> {
        if total_runs == 0 {
            return Err(Error::Usage("Q-measure of an empty record list".into()));
        }
        if nc > total_runs {
            return Err(Error::Usage(format!("{nc} successes out of {total_runs} runs")));
        }
        let (c, pc, qm) = if nc == 0 {
            (None, None, None)
        } else {
            let c = sum_ej as f64 / nc as f64;
            let frac = nc as f64 / total_runs as f64;
            let pc = match units {
                PcUnits::Percent => 100.0 * frac,
                PcUnits::Fraction => frac,
            };
            (Some(c), Some(pc), Some(c / pc))
        };
        Ok(Self {
            sum_ej,
            nc,
            total_runs,
            c,
            pc,
            qm,
            units,
        })
    }

    pub fn is_defined(&self) -> bool {
        self.qm.is_some()
    }

    /// Probability of convergence as a percentage regardless of `units`.
    pub fn pc_percent(&self) -> Option<f64> {
        (self.nc > 0).then(|| 100.0 * self.nc as f64 / self.total_runs as f64)
    }

    /// Pool two groups; sums and counts are additive.
    pub fn merge(&self, other: &QmSummary) -> Result<QmSummary> {
        Self::from_counts_in(
            self.sum_ej + other.sum_ej,
            self.nc + other.nc,
            self.total_runs + other.total_runs,
            self.units,
        )
    }
}

pub fn q_measure(records: &[RunRecord]) -> Result<QmSummary> {
    q_measure_in(records, PcUnits::Percent)
}

pub fn q_measure_in(records: &[RunRecord], units: PcUnits) -> Result<QmSummary> {
    nonempty(records, "Q-measure")?;
    let (sum_ej, nc) = records
        .iter()
        .filter(|r| r.success)
        .fold((0u64, 0usize), |(s, n), r| (s + r.fe_used, n + 1));
    QmSummary::from_counts_in(sum_ej, nc, records.len(), units)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfidenceInterval {
    pub lo: f64,
    pub hi: f64,
    pub level: f64,
}

impl ConfidenceInterval {
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }
}

pub const DEFAULT_RESAMPLES: usize = 2000;
pub const DEFAULT_LEVEL: f64 = 0.95;

/// Linear-interpolation quantile of sorted data (the "type 7" definition).
fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    let frac = pos - lo as f64;
    sorted[lo] + (sorted[hi] - sorted[lo]) * frac
}

/// Percentile bootstrap interval for the mean of `samples`.
pub fn bootstrap_ci<R: Rng + ?Sized>(
    samples: &[f64],
    resamples: usize,
    level: f64,
    rng: &mut R,
) -> Result<ConfidenceInterval> {
    if samples.is_empty() {
        return Err(Error::Usage("bootstrap of an empty sample".into()));
    }
    if resamples < 100 {
        return Err(Error::Usage(format!("at least 100 resamples required, got {resamples}")));
    }
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Usage(format!("confidence level must lie in (0, 1), got {level}")));
    }
    let n = samples.len();
    let mut means: Vec<f64> = (0..resamples)
        .map(|_| (0..n).map(|_| samples[rng.random_range(0..n)]).sum::<f64>() / n as f64)
        .collect();
    means.sort_by(f64::total_cmp);
    let lo = quantile_sorted(&means, (1.0 - level) / 2.0);
    let hi = quantile_sorted(&means, (1.0 + level) / 2.0);
    Ok(ConfidenceInterval { lo, hi, level })
}
