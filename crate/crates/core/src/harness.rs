//! Experiment orchestration: expand a plan into seeded runs, execute them in
//! parallel, persist every record as it completes, and aggregate the store
//! into per-cell and per-function-class summaries.
//!
//! On-disk layout of an experiment directory:
//!
//! * `plan.json`   manifest: the plan, its fingerprint, RNG name, creation time
//! * `runs.csv`    `variant,function,run_index,seed,cr,final_best,fe_used,success`
//! * `summary.csv` `scope,variant,function_or_class,mov,cs_percent,sum_ej,nc,c,pc_percent,qm`
//!
//! `runs.csv` is appended to (and flushed) after every run, so an interrupted
//! campaign resumes from the completed rows. When a campaign finishes the
//! file is rewritten in key order, which makes its bytes independent of
//! scheduling.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::{self, File, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::benchmarks::{BenchmarkFn, FnId, FunctionClass};
use crate::de;
use crate::error::{Error, Result};
use crate::metrics::{convergence_speed, mov, q_measure, QmSummary, RunRecord};
use crate::params::{validate_cr, ControlParams};
use crate::seed::{derive_seed, seed_for_key, RNG_NAME};
use crate::tuning::{cr_lookup, tune_cr, CrMap, CrMapRow};
use crate::variant::VariantSpec;

pub const PLAN_FILE: &str = "plan.json";
pub const RUNS_FILE: &str = "runs.csv";
pub const SUMMARY_FILE: &str = "summary.csv";

/// Where each (variant, function) pair gets its crossover rate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CrSource {
    /// The published per-pair table.
    #[serde(alias = "table3")]
    Published,
    /// One CR for every pair.
    Fixed { cr: f64 },
    /// An explicit map; every planned pair must be present.
    Explicit { entries: Vec<CrMapRow> },
    /// Grid search before the campaign.
    Tuned { grid: Vec<f64>, runs_per_cr: usize },
}

impl CrSource {
    pub fn explicit(map: &CrMap) -> Self {
        CrSource::Explicit {
            entries: map
                .iter()
                .map(|(&(variant, function), &cr)| CrMapRow {
                    variant,
                    function,
                    cr,
                    mov: None,
                    ci_lo: None,
                    ci_hi: None,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentPlan {
    pub variants: Vec<VariantSpec>,
    pub functions: Vec<FnId>,
    pub runs: usize,
    /// `params.cr` is ignored; the CR comes from `cr_source`.
    pub params: ControlParams,
    pub cr_source: CrSource,
    pub base_seed: u64,
}

impl ExperimentPlan {
    /// All 14 variants on all 14 functions, 100 runs each, published CRs.
    pub fn full(base_seed: u64) -> Self {
        Self {
            variants: VariantSpec::all(),
            functions: FnId::ALL.to_vec(),
            runs: 100,
            params: ControlParams::default(),
            cr_source: CrSource::Published,
            base_seed,
        }
    }

    pub fn cells(&self) -> impl Iterator<Item = (VariantSpec, FnId)> + '_ {
        self.variants
            .iter()
            .flat_map(move |&v| self.functions.iter().map(move |&f| (v, f)))
    }

    pub fn total_runs(&self) -> usize {
        self.variants.len() * self.functions.len() * self.runs
    }

    pub fn validate(&self) -> Result<()> {
        if self.variants.is_empty() || self.functions.is_empty() {
            return Err(Error::config("plan needs at least one variant and one function"));
        }
        if self.runs == 0 {
            return Err(Error::config("plan needs at least one run per cell"));
        }
        let unique_v: BTreeSet<_> = self.variants.iter().collect();
        let unique_f: BTreeSet<_> = self.functions.iter().collect();
        if unique_v.len() != self.variants.len() || unique_f.len() != self.functions.len() {
            return Err(Error::config("plan lists a variant or function twice"));
        }
        for &v in &self.variants {
            self.params.validate_for(v)?;
        }
        for &f in &self.functions {
            BenchmarkFn::new(f).validate()?;
        }
        match &self.cr_source {
            CrSource::Fixed { cr } => validate_cr(*cr)?,
            CrSource::Explicit { entries } => {
                for e in entries {
                    validate_cr(e.cr)?;
                }
            }
            CrSource::Tuned { grid, runs_per_cr } => {
                if grid.is_empty() || *runs_per_cr < 2 {
                    return Err(Error::config("tuned CR needs a nonempty grid and at least 2 runs per CR"));
                }
                for &cr in grid {
                    validate_cr(cr)?;
                }
            }
            CrSource::Published => {}
        }
        Ok(())
    }

    /// Resolve the CR of every planned pair. Tuning, when requested, happens
    /// here.
    pub fn resolve_crs(&self) -> Result<BTreeMap<(VariantSpec, FnId), f64>> {
        self.validate()?;
        let mut out = BTreeMap::new();
        match &self.cr_source {
            CrSource::Published => {
                for (v, f) in self.cells() {
                    out.insert((v, f), cr_lookup(v, f)?);
                }
            }
            CrSource::Fixed { cr } => {
                for cell in self.cells() {
                    out.insert(cell, *cr);
                }
            }
            CrSource::Explicit { entries } => {
                let map: BTreeMap<_, _> = entries.iter().map(|e| ((e.variant, e.function), e.cr)).collect();
                let mut missing = Vec::new();
                for cell in self.cells() {
                    match map.get(&cell) {
                        Some(&cr) => {
                            out.insert(cell, cr);
                        }
                        None => missing.push(format!("{}/{}", cell.0, cell.1)),
                    }
                }
                if !missing.is_empty() {
                    return Err(Error::config(format!(
                        "CR map has no entry for: {}",
                        missing.join(", ")
                    )));
                }
            }
            CrSource::Tuned { grid, runs_per_cr } => {
                let cells: Vec<_> = self.cells().collect();
                let tuned = cells
                    .par_iter()
                    .map(|&(v, f)| {
                        tune_cr(v, &BenchmarkFn::new(f), grid, *runs_per_cr, &self.params, self.base_seed)
                            .map(|t| ((v, f), t.chosen.cr))
                    })
                    .collect::<Result<Vec<_>>>()?;
                out.extend(tuned);
            }
        }
        Ok(out)
    }

    /// Stable hash of the plan's canonical JSON form.
    pub fn fingerprint(&self) -> String {
        let json = serde_json::to_string(self).expect("plan serializes");
        format!("{:016x}", seed_for_key(&json))
    }
}

/// The `plan.json` manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanManifest {
    pub plan: ExperimentPlan,
    pub fingerprint: String,
    pub rng: String,
    pub created_unix: u64,
}

impl PlanManifest {
    pub fn new(plan: ExperimentPlan) -> Self {
        let created_unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        Self {
            fingerprint: plan.fingerprint(),
            plan,
            rng: RNG_NAME.to_string(),
            created_unix,
        }
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self)?;
        fs::write(path, text + "\n").map_err(|e| Error::io(path, e))
    }
}

/// Key of one run in the store.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RunKey {
    pub variant: VariantSpec,
    pub function: FnId,
    pub run_index: usize,
}

/// One line of `runs.csv`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRow {
    pub variant: VariantSpec,
    pub function: FnId,
    pub run_index: usize,
    pub seed: u64,
    pub cr: f64,
    pub final_best: f64,
    pub fe_used: u64,
    pub success: bool,
}

impl RunRow {
    pub fn new(run_index: usize, r: &RunRecord) -> Self {
        Self {
            variant: r.variant,
            function: r.function,
            run_index,
            seed: r.seed,
            cr: r.cr,
            final_best: r.final_best,
            fe_used: r.fe_used,
            success: r.success,
        }
    }

    pub fn key(&self) -> RunKey {
        RunKey {
            variant: self.variant,
            function: self.function,
            run_index: self.run_index,
        }
    }

    pub fn record(&self) -> RunRecord {
        RunRecord {
            variant: self.variant,
            function: self.function,
            seed: self.seed,
            cr: self.cr,
            final_best: self.final_best,
            fe_used: self.fe_used,
            success: self.success,
        }
    }
}

/// Append-only collection of run records for one plan.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultStore {
    plan: ExperimentPlan,
    fingerprint: String,
    records: BTreeMap<RunKey, RunRecord>,
}

impl ResultStore {
    pub fn new(plan: ExperimentPlan) -> Self {
        Self {
            fingerprint: plan.fingerprint(),
            plan,
            records: BTreeMap::new(),
        }
    }

    pub fn plan(&self) -> &ExperimentPlan {
        &self.plan
    }

    pub fn fingerprint(&self) -> &str {
        &self.fingerprint
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn insert(&mut self, run_index: usize, record: RunRecord) -> Result<()> {
        let key = RunKey {
            variant: record.variant,
            function: record.function,
            run_index,
        };
        if self.records.contains_key(&key) {
            return Err(Error::Usage(format!(
                "duplicate record for {}/{} run {run_index}",
                key.variant, key.function
            )));
        }
        self.records.insert(key, record);
        Ok(())
    }

    pub fn contains(&self, key: &RunKey) -> bool {
        self.records.contains_key(key)
    }

    pub fn rows(&self) -> impl Iterator<Item = RunRow> + '_ {
        self.records.iter().map(|(k, r)| RunRow::new(k.run_index, r))
    }

    /// Records of one cell, in run order.
    pub fn cell(&self, variant: VariantSpec, function: FnId) -> Vec<RunRecord> {
        let lo = RunKey {
            variant,
            function,
            run_index: 0,
        };
        let hi = RunKey {
            variant,
            function,
            run_index: usize::MAX,
        };
        self.records.range(lo..=hi).map(|(_, r)| *r).collect()
    }

    /// Records of a cell when every planned run is present.
    pub fn complete_cell(&self, variant: VariantSpec, function: FnId) -> Option<Vec<RunRecord>> {
        let recs = self.cell(variant, function);
        (recs.len() == self.plan.runs).then_some(recs)
    }

    /// Keys the plan requires but the store lacks.
    pub fn missing_keys(&self) -> Vec<RunKey> {
        self.plan
            .cells()
            .flat_map(|(variant, function)| {
                (0..self.plan.runs).map(move |run_index| RunKey {
                    variant,
                    function,
                    run_index,
                })
            })
            .filter(|k| !self.records.contains_key(k))
            .collect()
    }

    /// Human-readable list of incomplete cells.
    pub fn missing_cells(&self) -> Vec<String> {
        let mut per_cell: BTreeMap<(VariantSpec, FnId), usize> = BTreeMap::new();
        for k in self.missing_keys() {
            *per_cell.entry((k.variant, k.function)).or_default() += 1;
        }
        per_cell
            .into_iter()
            .map(|((v, f), n)| format!("{v}/{f} ({n} of {} runs missing)", self.plan.runs))
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        self.missing_keys().is_empty()
    }

    pub fn ensure_complete(&self) -> Result<()> {
        let missing = self.missing_cells();
        if missing.is_empty() {
            Ok(())
        } else {
            Err(Error::Incomplete { missing })
        }
    }

    /// Load `runs.csv` and `plan.json` from an experiment directory.
    pub fn load(dir: &Path) -> Result<Self> {
        let manifest = PlanManifest::read(&dir.join(PLAN_FILE))?;
        let mut store = ResultStore::new(manifest.plan);
        let runs = dir.join(RUNS_FILE);
        if runs.exists() {
            for row in read_rows(&runs)? {
                store.insert(row.run_index, row.record())?;
            }
        }
        Ok(store)
    }

    pub fn write_runs_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for row in self.rows() {
            w.serialize(row)?;
        }
        w.flush().map_err(|e| Error::io(RUNS_FILE, e))?;
        Ok(())
    }
}

/// Read `runs.csv`, dropping a malformed final line left by an interrupted
/// write.
fn read_rows(path: &Path) -> Result<Vec<RunRow>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rdr = csv::ReaderBuilder::new().flexible(true).from_reader(file);
    let parsed: Vec<_> = rdr.deserialize::<RunRow>().collect();
    let n = parsed.len();
    let mut rows = Vec::with_capacity(n);
    for (i, row) in parsed.into_iter().enumerate() {
        match row {
            Ok(r) => rows.push(r),
            Err(_) if i + 1 == n => break,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(rows)
}

/// Execution options.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ExecOptions {
    /// Worker threads; 0 means rayon's default.
    pub jobs: usize,
}


fn pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::config(format!("cannot build a pool of {jobs} threads: {e}")))
}

struct Task {
    key: RunKey,
    cr: f64,
    seed: u64,
}

fn tasks_for(store: &ResultStore, crs: &BTreeMap<(VariantSpec, FnId), f64>) -> Vec<Task> {
    let base = store.plan.base_seed;
    store
        .missing_keys()
        .into_iter()
        .map(|key| Task {
            cr: crs[&(key.variant, key.function)],
            seed: derive_seed(base, key.variant, key.function, key.run_index),
            key,
        })
        .collect()
}

fn run_task(plan: &ExperimentPlan, t: &Task) -> Result<RunRecord> {
    let f = BenchmarkFn::new(t.key.function);
    de::run(t.key.variant, &f, &plan.params.with_cr(t.cr), t.seed)
}

/// Run every cell of `plan` in memory.
pub fn execute(plan: &ExperimentPlan, opts: ExecOptions) -> Result<ResultStore> {
    let crs = plan.resolve_crs()?;
    let mut store = ResultStore::new(plan.clone());
    let tasks = tasks_for(&store, &crs);
    let results = pool(opts.jobs)?.install(|| {
        tasks
            .par_iter()
            .map(|t| run_task(plan, t).map(|r| (t.key.run_index, r)))
            .collect::<Result<Vec<_>>>()
    })?;
    for (idx, rec) in results {
        store.insert(idx, rec)?;
    }
    Ok(store)
}

/// Run `plan` into `dir`, resuming from any rows already there.
///
/// The directory's manifest must match the plan. Each finished run is
/// appended to `runs.csv` immediately; on a storage error the rows written
/// so far stay on disk.
pub fn execute_in(plan: &ExperimentPlan, dir: &Path, opts: ExecOptions) -> Result<ResultStore> {
    plan.validate()?;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let manifest_path = dir.join(PLAN_FILE);
    if manifest_path.exists() {
        let existing = PlanManifest::read(&manifest_path)?;
        if existing.fingerprint != plan.fingerprint() || existing.plan != *plan {
            return Err(Error::config(format!(
                "{} holds a different plan (fingerprint {}); use a fresh output directory",
                dir.display(),
                existing.fingerprint
            )));
        }
    }
    let crs = plan.resolve_crs()?;
    if !manifest_path.exists() {
        PlanManifest::new(plan.clone()).write(&manifest_path)?;
    }

    let runs_path = dir.join(RUNS_FILE);
    let mut store = ResultStore::new(plan.clone());
    if runs_path.exists() {
        for row in read_rows(&runs_path)? {
            let expected_cr = crs.get(&(row.variant, row.function));
            let expected_seed = derive_seed(plan.base_seed, row.variant, row.function, row.run_index);
            if expected_cr != Some(&row.cr) || row.seed != expected_seed || row.run_index >= plan.runs {
                return Err(Error::config(format!(
                    "{} contains a row that does not belong to this plan: {}/{} run {}",
                    runs_path.display(),
                    row.variant,
                    row.function,
                    row.run_index
                )));
            }
            store.insert(row.run_index, row.record())?;
        }
    }
    // Start from a clean, sorted file so a torn last line never survives.
    rewrite_runs(&store, &runs_path)?;

    let tasks = tasks_for(&store, &crs);
    let file = OpenOptions::new()
        .append(true)
        .open(&runs_path)
        .map_err(|e| Error::io(&runs_path, e))?;
    let writer = Mutex::new(csv::WriterBuilder::new().has_headers(false).from_writer(file));
    let results = pool(opts.jobs)?.install(|| {
        tasks
            .par_iter()
            .map(|t| {
                let rec = run_task(plan, t)?;
                let mut w = writer.lock().expect("writer lock");
                w.serialize(RunRow::new(t.key.run_index, &rec))?;
                w.flush().map_err(|e| Error::io(&runs_path, e))?;
                Ok((t.key.run_index, rec))
            })
            .collect::<Result<Vec<_>>>()
    })?;
    drop(writer);
    for (idx, rec) in results {
        store.insert(idx, rec)?;
    }
    rewrite_runs(&store, &runs_path)?;
    Ok(store)
}

fn rewrite_runs(store: &ResultStore, path: &Path) -> Result<()> {
    let tmp: PathBuf = path.with_extension("csv.tmp");
    {
        let file = File::create(&tmp).map_err(|e| Error::io(&tmp, e))?;
        store.write_runs_csv(file)?;
    }
    fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

/// Per (variant, function) measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct CellSummary {
    pub variant: VariantSpec,
    pub function: FnId,
    pub mov: f64,
    pub cs_percent: f64,
    pub qm: QmSummary,
}

/// Q-measure of one variant pooled over a set of functions.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupSummary {
    pub variant: VariantSpec,
    /// Per-function pieces, in plan order.
    pub per_function: Vec<(FnId, QmSummary)>,
    pub pooled: QmSummary,
    pub mov: f64,
    pub cs_percent: f64,
}

pub fn summarize_cell(store: &ResultStore, variant: VariantSpec, function: FnId) -> Option<CellSummary> {
    let recs = store.complete_cell(variant, function)?;
    Some(CellSummary {
        variant,
        function,
        mov: mov(&recs).ok()?,
        cs_percent: convergence_speed(&recs, store.plan.params.max_fe).ok()?,
        qm: q_measure(&recs).ok()?,
    })
}

/// Pool the runs of `variant` over `functions`; `None` if any cell is
/// incomplete.
pub fn summarize_group(store: &ResultStore, variant: VariantSpec, functions: &[FnId]) -> Option<GroupSummary> {
    let mut all = Vec::new();
    let mut per_function = Vec::with_capacity(functions.len());
    for &f in functions {
        let recs = store.complete_cell(variant, f)?;
        per_function.push((f, q_measure(&recs).ok()?));
        all.extend(recs);
    }
    Some(GroupSummary {
        variant,
        per_function,
        pooled: q_measure(&all).ok()?,
        mov: mov(&all).ok()?,
        cs_percent: convergence_speed(&all, store.plan.params.max_fe).ok()?,
    })
}

/// Ascending by Qm, undefined rows last, ties in variant order.
pub fn sort_by_qm(rows: &mut [GroupSummary]) {
    rows.sort_by(|a, b| match (a.pooled.qm, b.pooled.qm) {
        (Some(x), Some(y)) => x.total_cmp(&y).then(a.variant.cmp(&b.variant)),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => a.variant.cmp(&b.variant),
    });
}

/// Functions of `class` that the plan covers, in plan order.
pub fn class_functions(plan: &ExperimentPlan, class: FunctionClass) -> Vec<FnId> {
    plan.functions.iter().copied().filter(|f| f.class() == class).collect()
}

/// Group summaries over an arbitrary function set, sorted by Qm.
pub fn aggregate_group(store: &ResultStore, functions: &[FnId]) -> Result<Vec<GroupSummary>> {
    let mut missing = Vec::new();
    let mut rows = Vec::new();
    for &v in &store.plan.variants {
        match summarize_group(store, v, functions) {
            Some(g) => rows.push(g),
            None => missing.extend(
                functions
                    .iter()
                    .filter(|&&f| store.complete_cell(v, f).is_none())
                    .map(|f| format!("{v}/{f}")),
            ),
        }
    }
    if !missing.is_empty() {
        return Err(Error::Incomplete { missing });
    }
    sort_by_qm(&mut rows);
    Ok(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Grouping {
    PerCell,
    PerFunctionClass,
}

/// One line of `summary.csv`. Undefined Q-measure fields are empty.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub scope: String,
    pub variant: VariantSpec,
    pub function_or_class: String,
    pub mov: f64,
    pub cs_percent: f64,
    pub sum_ej: u64,
    pub nc: usize,
    pub c: Option<f64>,
    pub pc_percent: Option<f64>,
    pub qm: Option<f64>,
}

impl SummaryRow {
    fn new(scope: &str, variant: VariantSpec, what: String, mov: f64, cs: f64, q: &QmSummary) -> Self {
        Self {
            scope: scope.to_string(),
            variant,
            function_or_class: what,
            mov,
            cs_percent: cs,
            sum_ej: q.sum_ej,
            nc: q.nc,
            c: q.c,
            pc_percent: q.pc_percent(),
            qm: q.qm,
        }
    }
}

/// Summary rows for a complete store.
///
/// `PerCell` yields one row per (variant, function) in plan order.
/// `PerFunctionClass` pools each class's functions and yields rows sorted
/// ascending by Qm within each class, undefined rows last.
pub fn aggregate(store: &ResultStore, grouping: Grouping) -> Result<Vec<SummaryRow>> {
    store.ensure_complete()?;
    let mut out = Vec::new();
    match grouping {
        Grouping::PerCell => {
            for (v, f) in store.plan.cells() {
                let s = summarize_cell(store, v, f).expect("complete store");
                out.push(SummaryRow::new("cell", v, f.to_string(), s.mov, s.cs_percent, &s.qm));
            }
        }
        Grouping::PerFunctionClass => {
            for class in FunctionClass::ALL {
                let fns = class_functions(&store.plan, class);
                if fns.is_empty() {
                    continue;
                }
                for g in aggregate_group(store, &fns)? {
                    out.push(SummaryRow::new(
                        "class",
                        g.variant,
                        class.label().to_string(),
                        g.mov,
                        g.cs_percent,
                        &g.pooled,
                    ));
                }
            }
        }
    }
    Ok(out)
}

pub fn write_summary_csv<W: Write>(rows: &[SummaryRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r)?;
    }
    w.flush().map_err(|e| Error::io(SUMMARY_FILE, e))?;
    Ok(())
}

/// Write `summary.csv` (cell rows, then class rows) into `dir`.
pub fn write_summary(store: &ResultStore, dir: &Path) -> Result<Vec<SummaryRow>> {
    let mut rows = aggregate(store, Grouping::PerCell)?;
    rows.extend(aggregate(store, Grouping::PerFunctionClass)?);
    let path = dir.join(SUMMARY_FILE);
    let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
    write_summary_csv(&rows, file)?;
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> VariantSpec {
        name.parse().unwrap()
    }

    fn tiny_plan(runs: usize) -> ExperimentPlan {
        ExperimentPlan {
            variants: vec![v("rand/1/bin"), v("best/2/exp")],
            functions: vec![FnId::F1, FnId::F9],
            runs,
            params: ControlParams {
                np: 12,
                max_gen: 20,
                max_fe: 240,
                ..ControlParams::default()
            },
            cr_source: CrSource::Published,
            base_seed: 3,
        }
    }

    #[test]
    fn plan_counts() {
        assert_eq!(ExperimentPlan::full(0).total_runs(), 19_600);
        assert_eq!(tiny_plan(3).total_runs(), 12);
    }

    #[test]
    fn explicit_map_must_cover_every_cell() {
        let mut plan = tiny_plan(1);
        let mut map = CrMap::new();
        map.insert((v("rand/1/bin"), FnId::F1), 0.5);
        plan.cr_source = CrSource::explicit(&map);
        let err = plan.resolve_crs().unwrap_err().to_string();
        assert!(err.contains("best/2/exp/f9"), "{err}");
    }

    #[test]
    fn invalid_plans_are_rejected_before_running() {
        let mut plan = tiny_plan(1);
        plan.cr_source = CrSource::Fixed { cr: 1.2 };
        assert!(matches!(execute(&plan, ExecOptions::default()), Err(Error::Config(_))));
        let mut plan = tiny_plan(0);
        plan.runs = 0;
        assert!(plan.validate().is_err());
        let mut plan = tiny_plan(1);
        plan.params.np = 4;
        assert!(plan.validate().is_err());
    }

    #[test]
    fn execute_counts_and_seeds() {
        let plan = tiny_plan(3);
        let store = execute(&plan, ExecOptions { jobs: 2 }).unwrap();
        assert_eq!(store.len(), 12);
        assert!(store.is_complete());
        let seeds: BTreeSet<u64> = store.rows().map(|r| r.seed).collect();
        assert_eq!(seeds.len(), 12);
        let again = execute(&plan, ExecOptions { jobs: 1 }).unwrap();
        assert_eq!(store, again);
        // CR taken from the published table.
        assert!(store.cell(v("rand/1/bin"), FnId::F1).iter().all(|r| r.cr == 0.9));
        assert!(store.cell(v("rand/1/bin"), FnId::F9).iter().all(|r| r.cr == 0.1));
    }

    #[test]
    fn duplicate_insert_rejected() {
        let plan = tiny_plan(1);
        let mut store = execute(&plan, ExecOptions::default()).unwrap();
        let rec = store.cell(v("rand/1/bin"), FnId::F1)[0];
        assert!(store.insert(0, rec).is_err());
    }

    #[test]
    fn incomplete_store_lists_missing_cells() {
        let plan = tiny_plan(2);
        let full = execute(&plan, ExecOptions::default()).unwrap();
        let mut partial = ResultStore::new(plan);
        for row in full.rows().filter(|r| !(r.function == FnId::F9 && r.run_index == 1)) {
            partial.insert(row.run_index, row.record()).unwrap();
        }
        match aggregate(&partial, Grouping::PerCell) {
            Err(Error::Incomplete { missing }) => {
                assert_eq!(missing.len(), 2);
                assert!(missing[0].contains("f9"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn class_pooling_is_additive() {
        let mut plan = tiny_plan(3);
        plan.functions = vec![FnId::F1, FnId::F2, FnId::F3];
        let store = execute(&plan, ExecOptions::default()).unwrap();
        let fns = class_functions(&plan, FunctionClass::UnimodalSeparable);
        assert_eq!(fns, vec![FnId::F1, FnId::F2]);
        for g in aggregate_group(&store, &fns).unwrap() {
            let sum: u64 = g.per_function.iter().map(|(_, q)| q.sum_ej).sum();
            let nc: usize = g.per_function.iter().map(|(_, q)| q.nc).sum();
            assert_eq!(g.pooled.sum_ej, sum);
            assert_eq!(g.pooled.nc, nc);
        }
        // A single-function class equals its own cell.
        for g in aggregate_group(&store, &[FnId::F3]).unwrap() {
            assert_eq!(g.pooled, summarize_cell(&store, g.variant, FnId::F3).unwrap().qm);
        }
    }
}
