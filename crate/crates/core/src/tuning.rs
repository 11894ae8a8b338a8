//! Crossover-rate selection: the published per-pair CR table, and the grid
//! search that reproduces it (runs per CR, bootstrap CI of the MOV, pick the
//! best interval).

use std::collections::BTreeMap;
use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchmarks::{BenchmarkFn, FnId};
use crate::de;
use crate::error::{Error, Result};
use crate::metrics::{bootstrap_ci, ConfidenceInterval, DEFAULT_LEVEL, DEFAULT_RESAMPLES};
use crate::params::{validate_cr, ControlParams};
use crate::seed::{rng_from_seed, seed_for_key};
use crate::variant::VariantSpec;

/// Tuned CR per variant, in `VariantSpec::all()` order. Each row lists the
/// seven printed "a/b" cells; `a` belongs to f1..f7 and `b` to f8..f14 of
/// the same column.
const CR_TABLE: [[(f64, f64); 7]; 14] = [
    [(0.9, 0.5), (0.2, 0.1), (0.9, 0.9), (0.5, 0.1), (0.9, 0.1), (0.2, 0.1), (0.8, 0.1)],
    [(0.9, 0.0), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9)],
    [(0.1, 0.1), (0.1, 0.1), (0.5, 0.1), (0.2, 0.1), (0.8, 0.3), (0.1, 0.8), (0.7, 0.1)],
    [(0.9, 0.7), (0.8, 0.9), (0.9, 0.8), (0.9, 0.8), (0.8, 0.9), (0.8, 0.8), (0.9, 0.8)],
    [(0.3, 0.2), (0.1, 0.1), (0.9, 0.1), (0.2, 0.1), (0.9, 0.1), (0.2, 0.1), (0.9, 0.1)],
    [(0.9, 0.3), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9)],
    [(0.1, 0.7), (0.3, 0.1), (0.7, 0.4), (0.2, 0.1), (0.6, 0.1), (0.1, 0.1), (0.5, 0.1)],
    [(0.9, 0.3), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9)],
    [(0.5, 0.4), (0.1, 0.1), (0.9, 0.1), (0.2, 0.1), (0.1, 0.2), (0.1, 0.3), (0.2, 0.1)],
    [(0.9, 0.3), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9)],
    [(0.2, 0.8), (0.1, 0.1), (0.9, 0.1), (0.2, 0.2), (0.1, 0.2), (0.3, 0.1), (0.2, 0.1)],
    [(0.9, 0.1), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9)],
    [(0.1, 0.8), (0.1, 0.1), (0.9, 0.9), (0.4, 0.1), (0.8, 0.1), (0.4, 0.2), (0.8, 0.1)],
    [(0.9, 0.4), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9), (0.9, 0.9)],
];

/// Published tuned CR for a (variant, function) pair.
pub fn cr_lookup(variant: VariantSpec, function: FnId) -> Result<f64> {
    let row = VariantSpec::all()
        .iter()
        .position(|v| *v == variant)
        .ok_or_else(|| Error::config(format!("no CR entry for variant {variant}")))?;
    let n = function.number();
    let (col, second) = if n <= 7 { (n - 1, false) } else { (n - 8, true) };
    let (a, b) = CR_TABLE[row][col];
    Ok(if second { b } else { a })
}

/// The eleven-point grid 0.0, 0.1, ..., 1.0.
pub fn default_cr_grid() -> Vec<f64> {
    (0..=10).map(|i| i as f64 / 10.0).collect()
}

pub const DEFAULT_RUNS_PER_CR: usize = 50;

/// Result of one grid point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrCell {
    pub cr: f64,
    pub mov: f64,
    pub ci: ConfidenceInterval,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrTuning {
    pub variant: VariantSpec,
    pub function: FnId,
    pub chosen: CrCell,
    pub cells: Vec<CrCell>,
}

/// Pick the cell with the lowest CI midpoint, then the narrower interval,
/// then the smaller CR.
pub fn choose_cr(cells: &[CrCell]) -> Option<&CrCell> {
    cells.iter().min_by(|a, b| {
        a.ci.midpoint()
            .total_cmp(&b.ci.midpoint())
            .then(a.ci.width().total_cmp(&b.ci.width()))
            .then(a.cr.total_cmp(&b.cr))
    })
}

/// Summarise one grid point from its final best values.
pub fn evaluate_cell(cr: f64, finals: &[f64], seed: u64) -> Result<CrCell> {
    let mut rng = rng_from_seed(seed);
    let ci = bootstrap_ci(finals, DEFAULT_RESAMPLES, DEFAULT_LEVEL, &mut rng)?;
    let mov = finals.iter().sum::<f64>() / finals.len() as f64;
    Ok(CrCell { cr, mov, ci })
}

fn cell_key(base_seed: u64, variant: VariantSpec, function: FnId, cr: f64) -> String {
    format!("{base_seed}/{variant}/{function}/cr={cr}")
}

/// Grid search for one (variant, function) pair. Cells run in parallel on
/// the current rayon pool; every run and every bootstrap has its own
/// derived seed so the outcome does not depend on scheduling.
pub fn tune_cr(
    variant: VariantSpec,
    function: &BenchmarkFn,
    cr_grid: &[f64],
    runs_per_cr: usize,
    params: &ControlParams,
    base_seed: u64,
) -> Result<CrTuning> {
    if cr_grid.is_empty() {
        return Err(Error::config("CR grid must not be empty"));
    }
    if runs_per_cr < 2 {
        return Err(Error::config("tuning needs at least 2 runs per CR"));
    }
    for &cr in cr_grid {
        validate_cr(cr)?;
    }
    params.with_cr(cr_grid[0]).validate_for(variant)?;
    function.validate()?;

    let cells = cr_grid
        .par_iter()
        .map(|&cr| {
            let key = cell_key(base_seed, variant, function.id, cr);
            let p = params.with_cr(cr);
            let finals = (0..runs_per_cr)
                .into_par_iter()
                .map(|run| {
                    de::run(variant, function, &p, seed_for_key(&format!("{key}/{run}"))).map(|r| r.final_best)
                })
                .collect::<Result<Vec<f64>>>()?;
            evaluate_cell(cr, &finals, seed_for_key(&format!("{key}/bootstrap")))
        })
        .collect::<Result<Vec<CrCell>>>()?;
    let chosen = choose_cr(&cells).cloned().expect("grid is nonempty");
    Ok(CrTuning {
        variant,
        function: function.id,
        chosen,
        cells,
    })
}

/// Crossover rates per (variant, function) pair.
pub type CrMap = BTreeMap<(VariantSpec, FnId), f64>;

/// One line of a CR map file. The CI columns are informational and may be
/// empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CrMapRow {
    pub variant: VariantSpec,
    pub function: FnId,
    pub cr: f64,
    pub mov: Option<f64>,
    pub ci_lo: Option<f64>,
    pub ci_hi: Option<f64>,
}

impl From<&CrTuning> for CrMapRow {
    fn from(t: &CrTuning) -> Self {
        Self {
            variant: t.variant,
            function: t.function,
            cr: t.chosen.cr,
            mov: Some(t.chosen.mov),
            ci_lo: Some(t.chosen.ci.lo),
            ci_hi: Some(t.chosen.ci.hi),
        }
    }
}

pub fn write_cr_map<W: Write>(rows: &[CrMapRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io("<cr map>", e))?;
    Ok(())
}

pub fn read_cr_map<R: Read>(input: R) -> Result<CrMap> {
    let mut rdr = csv::Reader::from_reader(input);
    let mut map = CrMap::new();
    for row in rdr.deserialize::<CrMapRow>() {
        let row = row?;
        validate_cr(row.cr)?;
        if map.insert((row.variant, row.function), row.cr).is_some() {
            return Err(Error::config(format!(
                "CR map lists ({}, {}) twice",
                row.variant, row.function
            )));
        }
    }
    Ok(map)
}
