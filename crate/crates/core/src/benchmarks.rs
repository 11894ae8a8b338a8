//! The fourteen test functions, all minimised with optimum value 0.
//!
//! | id  | function                         | range        | class                    |
//! |-----|----------------------------------|--------------|--------------------------|
//! | f1  | sphere                           | [-100, 100]  | unimodal separable       |
//! | f2  | Schwefel 2.22                    | [-10, 10]    | unimodal separable       |
//! | f3  | Schwefel 1.2 (double sum)        | [-100, 100]  | unimodal nonseparable    |
//! | f4  | Schwefel 2.21 (max)              | [-100, 100]  | unimodal separable       |
//! | f5  | Rosenbrock                       | [-30, 30]    | multimodal nonseparable  |
//! | f6  | step                             | [-100, 100]  | unimodal separable       |
//! | f7  | quartic with uniform noise       | [-1.28, 1.28]| unimodal separable       |
//! | f8  | Schwefel 2.26, shifted to zero   | [-500, 500]  | multimodal separable     |
//! | f9  | Rastrigin                        | [-5.12, 5.12]| multimodal separable     |
//! | f10 | Ackley                           | [-30, 30]    | multimodal nonseparable  |
//! | f11 | Griewank                         | [-600, 600]  | multimodal nonseparable  |
//! | f12 | generalized penalized #1         | [-50, 50]    | multimodal nonseparable  |
//! | f13 | generalized penalized #2         | [-50, 50]    | multimodal nonseparable  |
//! | f14 | generalized Bohachevsky          | [-100, 100]  | multimodal separable     |

use std::f64::consts::{E, PI};
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Value of `Σ x_i sin(√|x_i|)` at the Schwefel optimizer in 30 dimensions.
pub const SCHWEFEL_OFFSET_30: f64 = 12569.48661816488;

/// Coordinate of the Schwefel 2.26 optimizer.
pub const SCHWEFEL_OPTIMUM_COORD: f64 = 420.9687;

pub const DEFAULT_DIM: usize = 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FnId {
    F1,
    F2,
    F3,
    F4,
    F5,
    F6,
    F7,
    F8,
    F9,
    F10,
    F11,
    F12,
    F13,
    F14,
}

impl FnId {
    pub const ALL: [FnId; 14] = [
        FnId::F1,
        FnId::F2,
        FnId::F3,
        FnId::F4,
        FnId::F5,
        FnId::F6,
        FnId::F7,
        FnId::F8,
        FnId::F9,
        FnId::F10,
        FnId::F11,
        FnId::F12,
        FnId::F13,
        FnId::F14,
    ];

    /// 1-based function number.
    pub fn number(self) -> usize {
        self as usize + 1
    }

    pub fn from_number(n: usize) -> Option<FnId> {
        n.checked_sub(1).and_then(|i| FnId::ALL.get(i).copied())
    }

    pub fn name(self) -> &'static str {
        match self {
            FnId::F1 => "sphere",
            FnId::F2 => "schwefel-2.22",
            FnId::F3 => "schwefel-1.2",
            FnId::F4 => "schwefel-2.21",
            FnId::F5 => "rosenbrock",
            FnId::F6 => "step",
            FnId::F7 => "quartic-noise",
            FnId::F8 => "schwefel-2.26",
            FnId::F9 => "rastrigin",
            FnId::F10 => "ackley",
            FnId::F11 => "griewank",
            FnId::F12 => "penalized-1",
            FnId::F13 => "penalized-2",
            FnId::F14 => "bohachevsky",
        }
    }

    pub fn class(self) -> FunctionClass {
        use FnId::*;
        match self {
            F1 | F2 | F4 | F6 | F7 => FunctionClass::UnimodalSeparable,
            F3 => FunctionClass::UnimodalNonseparable,
            F8 | F9 | F14 => FunctionClass::MultimodalSeparable,
            F5 | F10 | F11 | F12 | F13 => FunctionClass::MultimodalNonseparable,
        }
    }

    fn half_width(self) -> f64 {
        use FnId::*;
        match self {
            F1 | F3 | F4 | F6 | F14 => 100.0,
            F2 => 10.0,
            F5 | F10 => 30.0,
            F7 => 1.28,
            F8 => 500.0,
            F9 => 5.12,
            F11 => 600.0,
            F12 | F13 => 50.0,
        }
    }

    /// Coordinate value of the (symmetric) global minimiser.
    pub fn optimizer_coord(self) -> f64 {
        match self {
            FnId::F5 | FnId::F13 => 1.0,
            FnId::F8 => SCHWEFEL_OPTIMUM_COORD,
            FnId::F12 => -1.0,
            _ => 0.0,
        }
    }
}

impl fmt::Display for FnId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "f{}", self.number())
    }
}

impl FromStr for FnId {
    type Err = Error;

    /// Accepts `f1`, `F01`, `1` or a function name such as `rastrigin`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let digits = t.strip_prefix('f').unwrap_or(&t);
        digits
            .parse::<usize>()
            .ok()
            .and_then(FnId::from_number)
            .or_else(|| FnId::ALL.into_iter().find(|f| f.name() == t))
            .ok_or_else(|| {
                let names: Vec<String> = FnId::ALL
                    .iter()
                    .map(|f| format!("{f} ({})", f.name()))
                    .collect();
                Error::config(format!(
                    "unknown function `{s}`; valid functions are: {}",
                    names.join(", ")
                ))
            })
    }
}

impl Serialize for FnId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FnId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Modality {
    Unimodal,
    Multimodal,
}

/// The four feature groups used to pool results.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FunctionClass {
    UnimodalSeparable,
    UnimodalNonseparable,
    MultimodalSeparable,
    MultimodalNonseparable,
}

impl FunctionClass {
    pub const ALL: [FunctionClass; 4] = [
        FunctionClass::UnimodalSeparable,
        FunctionClass::UnimodalNonseparable,
        FunctionClass::MultimodalSeparable,
        FunctionClass::MultimodalNonseparable,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FunctionClass::UnimodalSeparable => "unimodal separable",
            FunctionClass::UnimodalNonseparable => "unimodal nonseparable",
            FunctionClass::MultimodalSeparable => "multimodal separable",
            FunctionClass::MultimodalNonseparable => "multimodal nonseparable",
        }
    }

    pub fn modality(self) -> Modality {
        match self {
            FunctionClass::UnimodalSeparable | FunctionClass::UnimodalNonseparable => Modality::Unimodal,
            _ => Modality::Multimodal,
        }
    }

    pub fn separable(self) -> bool {
        matches!(self, FunctionClass::UnimodalSeparable | FunctionClass::MultimodalSeparable)
    }

    pub fn members(self) -> Vec<FnId> {
        FnId::ALL.into_iter().filter(|f| f.class() == self).collect()
    }
}

impl fmt::Display for FunctionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FunctionClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace(['-', '_'], " ").to_ascii_lowercase();
        FunctionClass::ALL
            .into_iter()
            .find(|c| c.label() == t)
            .ok_or_else(|| Error::config(format!("unknown function class `{s}`")))
    }
}

/// Which formula f6 uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepForm {
    /// `Σ ⌊x_i + 0.5⌋²` on [-100, 100].
    #[default]
    Floor,
    /// `Σ (x_i + 0.5)²` on [-1.28, 1.28], the form printed in the source table.
    PrintedQuadratic,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    pub low: f64,
    pub high: f64,
}

impl Bounds {
    pub fn symmetric(half_width: f64) -> Self {
        Self {
            low: -half_width,
            high: half_width,
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        self.low <= x && x <= self.high
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.low, self.high)
    }
}

/// Arguments of the penalty term `u(x, a, k, m)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PenaltyParams {
    pub a: f64,
    pub k: f64,
    pub m: f64,
}

impl PenaltyParams {
    pub const PENALIZED: PenaltyParams = PenaltyParams {
        a: 10.0,
        k: 100.0,
        m: 4.0,
    };
}

/// `k (x - a)^m` above `a`, `k (-x - a)^m` below `-a`, zero in between.
pub fn penalty_u(x: f64, p: PenaltyParams) -> f64 {
    if x > p.a {
        p.k * (x - p.a).powf(p.m)
    } else if x < -p.a {
        p.k * (-x - p.a).powf(p.m)
    } else {
        0.0
    }
}

pub fn y_transform(x: f64) -> f64 {
    1.0 + (x + 1.0) / 4.0
}

/// A configured benchmark: id, dimension, bounds and traits.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkFn {
    pub id: FnId,
    pub dim: usize,
    pub bounds: Vec<Bounds>,
    pub step_form: StepForm,
}

impl BenchmarkFn {
    pub fn new(id: FnId) -> Self {
        Self::with_dim(id, DEFAULT_DIM)
    }

    pub fn with_dim(id: FnId, dim: usize) -> Self {
        Self {
            id,
            dim,
            bounds: vec![Bounds::symmetric(id.half_width()); dim],
            step_form: StepForm::Floor,
        }
    }

    /// f6 with the literal printed formula and range.
    pub fn printed_step(dim: usize) -> Self {
        Self {
            id: FnId::F6,
            dim,
            bounds: vec![Bounds::symmetric(1.28); dim],
            step_form: StepForm::PrintedQuadratic,
        }
    }

    pub fn name(&self) -> &'static str {
        self.id.name()
    }

    pub fn class(&self) -> FunctionClass {
        self.id.class()
    }

    pub fn modality(&self) -> Modality {
        self.class().modality()
    }

    pub fn separable(&self) -> bool {
        self.class().separable()
    }

    pub fn optimum_value(&self) -> f64 {
        0.0
    }

    /// Only f7 draws from the noise stream.
    pub fn is_noisy(&self) -> bool {
        self.id == FnId::F7
    }

    /// A documented global minimiser.
    pub fn optimizer(&self) -> Vec<f64> {
        let c = match (self.id, self.step_form) {
            (FnId::F6, StepForm::PrintedQuadratic) => -0.5,
            (id, _) => id.optimizer_coord(),
        };
        vec![c; self.dim]
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::config(format!("{}: dimension must be positive", self.id)));
        }
        if self.bounds.len() != self.dim {
            return Err(Error::config(format!(
                "{}: {} bounds for dimension {}",
                self.id,
                self.bounds.len(),
                self.dim
            )));
        }
        for (j, b) in self.bounds.iter().enumerate() {
            if !(b.low.is_finite() && b.high.is_finite() && b.low <= b.high) {
                return Err(Error::config(format!(
                    "{}: invalid bounds [{}, {}] in dimension {j}",
                    self.id, b.low, b.high
                )));
            }
        }
        if self.id == FnId::F8 && self.dim != DEFAULT_DIM {
            // The published offset is exact only for 30 variables.
            return Err(Error::config(
                "f8 is offset for 30 variables; other dimensions are not supported",
            ));
        }
        Ok(())
    }

    /// Evaluate `x`, checking its length. f7 draws one uniform [0, 1) sample
    /// from `noise`; every other function leaves the stream untouched.
    pub fn evaluate<R: Rng + ?Sized>(&self, x: &[f64], noise: &mut R) -> Result<f64> {
        self.check_len(x)?;
        Ok(self.value(x, noise))
    }

    /// Evaluation without the f7 noise term. Pure for every function.
    pub fn evaluate_deterministic(&self, x: &[f64]) -> Result<f64> {
        self.check_len(x)?;
        Ok(self.deterministic(x))
    }

    fn check_len(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return Err(Error::config(format!(
                "{} expects {} variables, got {}",
                self.id,
                self.dim,
                x.len()
            )));
        }
        Ok(())
    }

    /// Unchecked evaluation used in the engine's inner loop.
    pub(crate) fn value<R: Rng + ?Sized>(&self, x: &[f64], noise: &mut R) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        let v = self.deterministic(x);
        if self.is_noisy() {
            v + noise.random::<f64>()
        } else {
            v
        }
    }

    fn deterministic(&self, x: &[f64]) -> f64 {
        match self.id {
            FnId::F1 => sphere(x),
            FnId::F2 => schwefel_2_22(x),
            FnId::F3 => schwefel_1_2(x),
            FnId::F4 => x.iter().fold(0.0, |m, v| m.max(v.abs())),
            FnId::F5 => rosenbrock(x),
            FnId::F6 => match self.step_form {
                StepForm::Floor => x.iter().map(|v| (v + 0.5).floor().powi(2)).sum(),
                StepForm::PrintedQuadratic => x.iter().map(|v| (v + 0.5).powi(2)).sum(),
            },
            FnId::F7 => x
                .iter()
                .enumerate()
                .map(|(i, v)| (i + 1) as f64 * v.powi(4))
                .sum(),
            FnId::F8 => SCHWEFEL_OFFSET_30 - x.iter().map(|v| v * v.abs().sqrt().sin()).sum::<f64>(),
            FnId::F9 => x
                .iter()
                .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
                .sum(),
            FnId::F10 => ackley(x),
            FnId::F11 => griewank(x),
            FnId::F12 => penalized_1(x),
            FnId::F13 => penalized_2(x),
            FnId::F14 => bohachevsky(x),
        }
    }
}

fn sphere(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum()
}

fn schwefel_2_22(x: &[f64]) -> f64 {
    let sum: f64 = x.iter().map(|v| v.abs()).sum();
    let prod: f64 = x.iter().map(|v| v.abs()).product();
    sum + prod
}

fn schwefel_1_2(x: &[f64]) -> f64 {
    let mut prefix = 0.0;
    let mut total = 0.0;
    for v in x {
        prefix += v;
        total += prefix * prefix;
    }
    total
}

fn rosenbrock(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
        .sum()
}

fn ackley(x: &[f64]) -> f64 {
    let n = x.len() as f64;
    let sq = x.iter().map(|v| v * v).sum::<f64>() / n;
    let cos = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
    20.0 + E - 20.0 * (-0.2 * sq.sqrt()).exp() - cos.exp()
}

fn griewank(x: &[f64]) -> f64 {
    let sum = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
    let prod: f64 = x
        .iter()
        .enumerate()
        .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
        .product();
    sum - prod + 1.0
}

fn penalty_sum(x: &[f64]) -> f64 {
    x.iter().map(|&v| penalty_u(v, PenaltyParams::PENALIZED)).sum()
}

fn penalized_1(x: &[f64]) -> f64 {
    let n = x.len();
    let y: Vec<f64> = x.iter().map(|&v| y_transform(v)).collect();
    let sin2 = |v: f64| (PI * v).sin().powi(2);
    let inner: f64 = y
        .windows(2)
        .map(|w| (w[0] - 1.0).powi(2) * (1.0 + 10.0 * sin2(w[1])))
        .sum();
    let core = 10.0 * sin2(y[0]) + inner + (y[n - 1] - 1.0).powi(2);
    PI / n as f64 * core + penalty_sum(x)
}

fn penalized_2(x: &[f64]) -> f64 {
    let n = x.len();
    let sin2 = |v: f64| v.sin().powi(2);
    let inner: f64 = x
        .windows(2)
        .map(|w| (w[0] - 1.0).powi(2) * (1.0 + sin2(3.0 * PI * w[1])))
        .sum();
    let last = x[n - 1];
    let core = sin2(3.0 * PI * x[0]) + inner + (last - 1.0).powi(2) * (1.0 + sin2(2.0 * PI * last));
    0.1 * core + penalty_sum(x)
}

fn bohachevsky(x: &[f64]) -> f64 {
    x.windows(2)
        .map(|w| {
            w[0] * w[0] + 2.0 * w[1] * w[1] - 0.3 * (3.0 * PI * w[0]).cos() - 0.4 * (4.0 * PI * w[1]).cos()
                + 0.7
        })
        .sum()
}

/// The fourteen functions at the default dimension, f1 through f14.
pub fn catalog() -> Vec<BenchmarkFn> {
    FnId::ALL.into_iter().map(BenchmarkFn::new).collect()
}

/// Machine-readable description of one catalog entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: FnId,
    pub name: String,
    pub dim: usize,
    pub low: f64,
    pub high: f64,
    pub modality: Modality,
    pub separable: bool,
    pub class: FunctionClass,
    pub optimum_value: f64,
    pub optimizer_coord: f64,
}

impl From<&BenchmarkFn> for CatalogEntry {
    fn from(f: &BenchmarkFn) -> Self {
        Self {
            id: f.id,
            name: f.name().to_string(),
            dim: f.dim,
            low: f.bounds[0].low,
            high: f.bounds[0].high,
            modality: f.modality(),
            separable: f.separable(),
            class: f.class(),
            optimum_value: f.optimum_value(),
            optimizer_coord: f.optimizer()[0],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::seed::rng_from_seed;
    use rand::Rng;

    fn eval(id: FnId, x: &[f64]) -> f64 {
        BenchmarkFn::new(id).evaluate_deterministic(x).unwrap()
    }

    #[test]
    fn analytic_zeros() {
        let zero = [0.0; 30];
        for id in [FnId::F1, FnId::F9, FnId::F10, FnId::F11] {
            assert!(eval(id, &zero).abs() < 1e-12, "{id}");
        }
        assert_eq!(eval(FnId::F1, &[1.0; 30]), 30.0);
        assert_eq!(eval(FnId::F5, &[1.0; 30]), 0.0);
    }

    #[test]
    fn every_function_is_zero_at_its_optimizer() {
        let mut rng = rng_from_seed(0);
        for f in catalog() {
            let x = f.optimizer();
            let v = f.evaluate_deterministic(&x).unwrap();
            let tol = if f.id == FnId::F8 { 1e-3 } else { 1e-9 };
            assert!(v.abs() < tol, "{} at optimizer = {v}", f.id);
            // The noisy evaluation only adds [0, 1).
            let noisy = f.evaluate(&x, &mut rng).unwrap();
            assert!(noisy - v >= 0.0 && noisy - v < 1.0);
        }
    }

    #[test]
    fn schwefel_offset_matches_direct_sum() {
        // One coordinate of the sum, replicated 30 times.
        let c = SCHWEFEL_OPTIMUM_COORD;
        let per_coord = c * c.sqrt().sin();
        let direct = 30.0 * per_coord;
        assert!((direct - SCHWEFEL_OFFSET_30).abs() < 1e-3);
        let v = eval(FnId::F8, &[c; 30]);
        assert!(v.abs() < 1e-3 && v > -1e-3, "{v}");
    }

    #[test]
    fn penalized_1_optimizer_terms() {
        // y = 1 at x = -1: all sin^2(pi) and (y-1)^2 terms vanish.
        assert_eq!(y_transform(-1.0), 1.0);
        assert!(eval(FnId::F12, &[-1.0; 30]).abs() < 1e-9);
    }

    #[test]
    fn penalty_spot_values() {
        let p = PenaltyParams::PENALIZED;
        assert_eq!(penalty_u(5.0, p), 0.0);
        assert_eq!(penalty_u(10.0, p), 0.0);
        assert_eq!(penalty_u(-10.0, p), 0.0);
        assert_eq!(penalty_u(11.0, p), 100.0);
        assert_eq!(penalty_u(-12.0, p), 1600.0);
    }

    #[test]
    fn y_transform_spots() {
        assert_eq!(y_transform(3.0), 2.0);
        assert_eq!(y_transform(-5.0), 0.0);
    }

    #[test]
    fn dimension_mismatch_is_config_error() {
        let f = BenchmarkFn::new(FnId::F1);
        let mut rng = rng_from_seed(1);
        assert!(matches!(f.evaluate(&[0.0; 29], &mut rng), Err(Error::Config(_))));
    }

    #[test]
    fn catalog_grouping() {
        let cat = catalog();
        assert_eq!(cat.len(), 14);
        let ids = |c: FunctionClass| c.members();
        use FnId::*;
        assert_eq!(ids(FunctionClass::UnimodalSeparable), vec![F1, F2, F4, F6, F7]);
        assert_eq!(ids(FunctionClass::UnimodalNonseparable), vec![F3]);
        assert_eq!(ids(FunctionClass::MultimodalSeparable), vec![F8, F9, F14]);
        assert_eq!(ids(FunctionClass::MultimodalNonseparable), vec![F5, F10, F11, F12, F13]);
        let f3 = &cat[2];
        assert_eq!(f3.modality(), Modality::Unimodal);
        assert!(!f3.separable());
        let f5 = &cat[4];
        assert_eq!(f5.modality(), Modality::Multimodal);
        assert!(!f5.separable());
        for f in &cat {
            f.validate().unwrap();
        }
    }

    #[test]
    fn parse_function_ids() {
        assert_eq!("f1".parse::<FnId>().unwrap(), FnId::F1);
        assert_eq!("F14".parse::<FnId>().unwrap(), FnId::F14);
        assert_eq!("9".parse::<FnId>().unwrap(), FnId::F9);
        assert_eq!("rastrigin".parse::<FnId>().unwrap(), FnId::F9);
        let err = "f15".parse::<FnId>().unwrap_err().to_string();
        assert!(err.contains("f14 (bohachevsky)"));
    }

    #[test]
    fn printed_step_form() {
        let f = BenchmarkFn::printed_step(30);
        assert_eq!(f.bounds[0], Bounds::symmetric(1.28));
        assert_eq!(f.evaluate_deterministic(&f.optimizer()).unwrap(), 0.0);
        assert_eq!(f.evaluate_deterministic(&[0.0; 30]).unwrap(), 7.5);
        // Floor form is flat on [-0.5, 0.5).
        let g = BenchmarkFn::new(FnId::F6);
        assert_eq!(g.evaluate_deterministic(&[0.49; 30]).unwrap(), 0.0);
        assert_eq!(g.evaluate_deterministic(&[0.5; 30]).unwrap(), 30.0);
    }

    #[test]
    fn pure_functions_agree_bitwise_and_noise_is_bounded() {
        let mut rng = rng_from_seed(3);
        for f in catalog() {
            let x: Vec<f64> = f.bounds.iter().map(|b| rng.random_range(b.low..=b.high)).collect();
            let a = f.evaluate(&x, &mut rng).unwrap();
            let b = f.evaluate(&x, &mut rng).unwrap();
            if f.is_noisy() {
                assert!((a - b).abs() < 1.0);
            } else {
                assert_eq!(a.to_bits(), b.to_bits(), "{}", f.id);
            }
        }
    }

    #[test]
    fn f7_noise_statistics() {
        let f = BenchmarkFn::new(FnId::F7);
        let x = [0.5; 30];
        let det = f.evaluate_deterministic(&x).unwrap();
        let mut rng = rng_from_seed(11);
        let samples: Vec<f64> = (0..10_000).map(|_| f.evaluate(&x, &mut rng).unwrap()).collect();
        let max = samples.iter().cloned().fold(f64::MIN, f64::max);
        let min = samples.iter().cloned().fold(f64::MAX, f64::min);
        let mean = samples.iter().sum::<f64>() / samples.len() as f64;
        assert!(max - min <= 1.0);
        assert!((mean - (det + 0.5)).abs() < 0.02, "{mean} vs {det}");
    }

    #[test]
    fn nonnegative_on_random_samples() {
        let mut rng = rng_from_seed(5);
        use FnId::*;
        for id in [F1, F2, F4, F7, F9, F11, F14] {
            let f = BenchmarkFn::new(id);
            for _ in 0..20_000 {
                let x: Vec<f64> = f.bounds.iter().map(|b| rng.random_range(b.low..=b.high)).collect();
                let v = f.evaluate_deterministic(&x).unwrap();
                assert!(v >= 0.0, "{id}: {v}");
            }
        }
    }

    #[test]
    fn separable_coordinate_moves_toward_optimizer_do_not_increase() {
        // Starting near the optimizer, snapping any one coordinate onto its
        // optimal value never makes a separable function worse.
        let mut rng = rng_from_seed(9);
        use FnId::*;
        for id in [F1, F2, F6, F9] {
            let f = BenchmarkFn::new(id);
            let opt = f.optimizer();
            for _ in 0..200 {
                let x: Vec<f64> = opt.iter().map(|c| c + rng.random_range(-0.4..0.4)).collect();
                let base = f.evaluate_deterministic(&x).unwrap();
                for j in 0..x.len() {
                    let mut y = x.clone();
                    y[j] = opt[j];
                    assert!(f.evaluate_deterministic(&y).unwrap() <= base + 1e-12, "{id}");
                }
            }
        }
    }

    #[test]
    fn schwefel_minimum_approached_from_above() {
        // Random search plus per-coordinate golden refinement; separability
        // lets the 1-D minimiser be applied to each coordinate.
        let f = BenchmarkFn::new(FnId::F8);
        let mut rng = rng_from_seed(13);
        let mut best = vec![0.0; 30];
        let mut best_v = f64::INFINITY;
        for _ in 0..20_000 {
            let x: Vec<f64> = (0..30).map(|_| rng.random_range(-500.0..=500.0)).collect();
            let v = f.evaluate_deterministic(&x).unwrap();
            assert!(v > -1e-3);
            if v < best_v {
                best_v = v;
                best = x;
            }
        }
        let one_d = |t: f64| -t * t.abs().sqrt().sin();
        for xj in best.iter_mut() {
            let (mut lo, mut hi) = (-500.0_f64, 500.0_f64);
            // grid then golden section
            let mut arg = *xj;
            for k in 0..=10_000 {
                let t = lo + (hi - lo) * k as f64 / 10_000.0;
                if one_d(t) < one_d(arg) {
                    arg = t;
                }
            }
            lo = (arg - 0.1).max(-500.0);
            hi = (arg + 0.1).min(500.0);
            let g = (5f64.sqrt() - 1.0) / 2.0;
            for _ in 0..100 {
                let a = hi - g * (hi - lo);
                let b = lo + g * (hi - lo);
                if one_d(a) < one_d(b) {
                    hi = b;
                } else {
                    lo = a;
                }
            }
            *xj = 0.5 * (lo + hi);
        }
        let v = f.evaluate_deterministic(&best).unwrap();
        assert!((-1e-6..1e-2).contains(&v), "{v}");
    }
}
