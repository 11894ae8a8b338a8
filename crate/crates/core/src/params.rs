use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::variant::VariantSpec;

/// Closed interval `[low, high]` from which the scale factor is drawn.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FRange {
    pub low: f64,
    pub high: f64,
}

impl FRange {
    pub fn new(low: f64, high: f64) -> Self {
        Self { low, high }
    }
}

impl Default for FRange {
    fn default() -> Self {
        Self::new(0.3, 0.9)
    }
}

/// Control parameters shared by every variant.
///
/// Defaults: NP = 60, 3000 generations, 180 000 function evaluations,
/// F drawn from [0.3, 0.9] once per generation with K = F, success tolerance
/// 1e-12. `cr` has no meaningful default; callers resolve it per
/// (variant, function) pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ControlParams {
    pub np: usize,
    pub max_gen: usize,
    pub max_fe: u64,
    pub f_range: FRange,
    pub cr: f64,
    pub tolerance: f64,
    pub k_equals_f: bool,
}

impl Default for ControlParams {
    fn default() -> Self {
        Self {
            np: 60,
            max_gen: 3000,
            max_fe: 180_000,
            f_range: FRange::default(),
            cr: 0.9,
            tolerance: 1e-12,
            k_equals_f: true,
        }
    }
}

impl ControlParams {
    pub fn with_cr(mut self, cr: f64) -> Self {
        self.cr = cr;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.np == 0 {
            return Err(Error::config("population size must be positive"));
        }
        if self.max_gen == 0 {
            return Err(Error::config("max_gen must be positive"));
        }
        if self.max_fe < self.np as u64 {
            return Err(Error::config(format!(
                "max_fe ({}) must cover at least the initial population ({})",
                self.max_fe, self.np
            )));
        }
        let FRange { low, high } = self.f_range;
        if !(low.is_finite() && high.is_finite() && low > 0.0 && high <= 2.0 && low <= high) {
            return Err(Error::config(format!(
                "F range [{low}, {high}] must satisfy 0 < low <= high <= 2"
            )));
        }
        validate_cr(self.cr)?;
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::config(format!(
                "tolerance must be a positive finite number, got {}",
                self.tolerance
            )));
        }
        Ok(())
    }

    /// Parameter checks plus the population-size requirement of `variant`.
    pub fn validate_for(&self, variant: VariantSpec) -> Result<()> {
        self.validate()?;
        let need = variant.min_population();
        if self.np < need {
            return Err(Error::config(format!(
                "{variant} draws {} distinct members besides the target and needs NP >= {need}, got NP = {}",
                variant.mutation.random_members(),
                self.np
            )));
        }
        Ok(())
    }
}

pub(crate) fn validate_cr(cr: f64) -> Result<()> {
    if (0.0..=1.0).contains(&cr) {
        Ok(())
    } else {
        Err(Error::config(format!("CR must lie in [0, 1], got {cr}")))
    }
}
