//! Command-line front end: `list`, `run`, `tune-cr` and `report`.
//!
//! Exit codes: 0 success, 2 configuration error, 3 incomplete store on
//! `report`, 1 anything else.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::benchmarks::{catalog, BenchmarkFn, CatalogEntry, FnId, FunctionClass};
use crate::error::{Error, Result};
use crate::harness::{self, CrSource, ExecOptions, ExperimentPlan, PlanManifest, ResultStore};
use crate::params::ControlParams;
use crate::report;
use crate::tuning::{self, default_cr_grid, CrMapRow, DEFAULT_RUNS_PER_CR};
use crate::variant::VariantSpec;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;

/// Environment variable that overrides `--seed`.
pub const SEED_ENV: &str = "DEVOLAB_SEED";

#[derive(Debug, Parser)]
#[command(name = "devolab", version, about = "Differential evolution variant laboratory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the 14 variants and 14 benchmark functions.
    List {
        #[arg(long, value_enum, default_value_t = ListFormat::Markdown)]
        format: ListFormat,
    },
    /// Execute an experiment plan and write runs.csv, summary.csv and plan.json.
    Run(RunArgs),
    /// Grid-search CR per (variant, function) and write a CR map.
    TuneCr(TuneArgs),
    /// Render the MOV, convergence-speed and Q-measure tables for a completed experiment directory.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ListFormat {
    Markdown,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Markdown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Preset {
    /// 10 runs per cell.
    Desk,
    /// 100 runs per cell.
    #[value(alias = "paper")]
    Full,
}

impl Preset {
    fn runs(self) -> usize {
        match self {
            Preset::Desk => 10,
            Preset::Full => 100,
        }
    }
}

#[derive(Debug, Args)]
pub struct Selection {
    /// Variant name such as rand/1/bin (repeatable; default all 14).
    #[arg(long = "variant")]
    pub variants: Vec<String>,
    /// Function id such as f1 (repeatable; default all 14).
    #[arg(long = "function")]
    pub functions: Vec<String>,
    /// Base seed; the DEVOLAB_SEED environment variable takes precedence.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
    /// Population size.
    #[arg(long)]
    pub np: Option<usize>,
    /// Maximum generations; the evaluation budget becomes NP × generations.
    #[arg(long)]
    pub max_gen: Option<usize>,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    #[command(flatten)]
    pub sel: Selection,
    /// Independent runs per cell (overrides the preset).
    #[arg(long)]
    pub runs: Option<usize>,
    /// One CR for every cell instead of the published table.
    #[arg(long, conflicts_with = "cr_map")]
    pub cr: Option<f64>,
    /// CR map file written by `tune-cr`.
    #[arg(long)]
    pub cr_map: Option<PathBuf>,
    /// Replay the plan stored in a plan.json manifest.
    #[arg(long, conflicts_with_all = ["cr", "cr_map", "runs", "preset"])]
    pub manifest: Option<PathBuf>,
    /// Output directory.
    #[arg(long, default_value = "devolab-out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = Preset::Full)]
    pub preset: Preset,
    /// Also print the report in this format.
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Debug, Args)]
pub struct TuneArgs {
    #[command(flatten)]
    pub sel: Selection,
    /// Runs per grid point.
    #[arg(long, default_value_t = DEFAULT_RUNS_PER_CR)]
    pub runs_per_cr: usize,
    /// Comma-separated CR grid (default 0.0,0.1,...,1.0).
    #[arg(long, value_delimiter = ',')]
    pub grid: Vec<f64>,
    /// CR map output file.
    #[arg(long, default_value = "cr_map.csv")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Experiment directory written by `run`.
    #[arg(long, default_value = "devolab-out")]
    pub out: PathBuf,
    #[arg(long, value_enum, default_value_t = OutputFormat::Markdown)]
    pub format: OutputFormat,
}

/// Parse `args` and run, writing normal output to `stdout` and diagnostics
/// to `stderr`. Returns the process exit code.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_CONFIG;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            match e {
                Error::Config(_) | Error::Json(_) => EXIT_CONFIG,
                Error::Incomplete { .. } => EXIT_INCOMPLETE,
                _ => EXIT_FAILURE,
            }
        }
    }
}

fn dispatch(cmd: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::List { format } => {
            stdout.write_all(cmd_list(format)?.as_bytes()).map_err(stdout_err)?;
            Ok(EXIT_OK)
        }
        Command::Run(args) => cmd_run(&args, stdout, stderr),
        Command::TuneCr(args) => cmd_tune_cr(&args, stdout),
        Command::Report(args) => cmd_report(&args, stdout, stderr),
    }
}

fn stdout_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

/// Catalog of variants and functions.
pub fn cmd_list(format: ListFormat) -> Result<String> {
    let variants: Vec<String> = VariantSpec::all().iter().map(|v| v.to_string()).collect();
    let functions: Vec<CatalogEntry> = catalog().iter().map(CatalogEntry::from).collect();
    match format {
        ListFormat::Json => {
            let doc = serde_json::json!({ "variants": variants, "functions": functions });
            Ok(serde_json::to_string_pretty(&doc)? + "\n")
        }
        ListFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for f in &functions {
                w.serialize(f)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::io("<csv>", e.into_error()))?;
            Ok(String::from_utf8(bytes).expect("csv is UTF-8"))
        }
        ListFormat::Markdown => {
            let mut out = String::from("## Variants\n\n");
            for v in &variants {
                out.push_str(&format!("- {v}\n"));
            }
            out.push_str("\n## Functions\n");
            for class in FunctionClass::ALL {
                let members = class.members();
                out.push_str(&format!("\n### {} ({} functions)\n\n", class.label(), members.len()));
                out.push_str("| id | name | range | dim | optimizer |\n|---|---|---|---:|---:|\n");
                for id in members {
                    let e = &functions[id.number() - 1];
                    out.push_str(&format!(
                        "| {} | {} | [{}, {}] | {} | {} |\n",
                        e.id, e.name, e.low, e.high, e.dim, e.optimizer_coord
                    ));
                }
            }
            Ok(out)
        }
    }
}

fn effective_seed(cli_seed: u64) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(s) if !s.trim().is_empty() => s
            .trim()
            .parse()
            .map_err(|_| Error::config(format!("{SEED_ENV}={s} is not an unsigned integer"))),
        _ => Ok(cli_seed),
    }
}

fn parse_variants(names: &[String]) -> Result<Vec<VariantSpec>> {
    if names.is_empty() {
        return Ok(VariantSpec::all());
    }
    names.iter().map(|n| n.parse()).collect()
}

fn parse_functions(names: &[String]) -> Result<Vec<FnId>> {
    if names.is_empty() {
        return Ok(FnId::ALL.to_vec());
    }
    names.iter().map(|n| n.parse()).collect()
}

fn params_from(sel: &Selection) -> ControlParams {
    let mut p = ControlParams::default();
    if let Some(np) = sel.np {
        p.np = np;
    }
    if let Some(g) = sel.max_gen {
        p.max_gen = g;
    }
    if sel.np.is_some() || sel.max_gen.is_some() {
        p.max_fe = (p.np * p.max_gen) as u64;
    }
    p
}

fn read_cr_map_file(path: &Path) -> Result<tuning::CrMap> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    tuning::read_cr_map(file).map_err(|e| match e {
        Error::Csv(c) => Error::config(format!("{}: {c}", path.display())),
        other => other,
    })
}

/// Build the plan a `run` invocation describes. Nothing is executed here.
pub fn plan_from_args(args: &RunArgs) -> Result<ExperimentPlan> {
    if let Some(path) = &args.manifest {
        return Ok(PlanManifest::read(path)?.plan);
    }
    let cr_source = match (&args.cr, &args.cr_map) {
        (Some(cr), _) => CrSource::Fixed { cr: *cr },
        (None, Some(path)) => CrSource::explicit(&read_cr_map_file(path)?),
        (None, None) => CrSource::Published,
    };
    let plan = ExperimentPlan {
        variants: parse_variants(&args.sel.variants)?,
        functions: parse_functions(&args.sel.functions)?,
        runs: args.runs.unwrap_or(args.preset.runs()),
        params: params_from(&args.sel),
        cr_source,
        base_seed: effective_seed(args.sel.seed)?,
    };
    plan.validate()?;
    Ok(plan)
}

pub fn cmd_run(args: &RunArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let plan = plan_from_args(args)?;
    // Resolve every CR up front so a bad map never starts a run.
    plan.resolve_crs()?;
    let _ = writeln!(
        stderr,
        "running {} run(s) into {}",
        plan.total_runs(),
        args.out.display()
    );
    let store = harness::execute_in(&plan, &args.out, ExecOptions { jobs: args.sel.jobs })?;
    let rows = harness::write_summary(&store, &args.out)?;
    match args.format {
        Some(OutputFormat::Markdown) => stdout.write_all(report::render(&store).as_bytes()).map_err(stdout_err)?,
        Some(OutputFormat::Csv) => harness::write_summary_csv(&rows, &mut *stdout)?,
        None => {}
    }
    Ok(EXIT_OK)
}

pub fn cmd_tune_cr(args: &TuneArgs, stdout: &mut dyn Write) -> Result<i32> {
    let variants = parse_variants(&args.sel.variants)?;
    let functions = parse_functions(&args.sel.functions)?;
    let grid = if args.grid.is_empty() { default_cr_grid() } else { args.grid.clone() };
    let params = params_from(&args.sel);
    let seed = effective_seed(args.sel.seed)?;
    for &v in &variants {
        params.validate_for(v)?;
    }
    let cells: Vec<(VariantSpec, FnId)> = variants
        .iter()
        .flat_map(|&v| functions.iter().map(move |&f| (v, f)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.sel.jobs)
        .build()
        .map_err(|e| Error::config(e.to_string()))?;
    let tuned = pool.install(|| {
        cells
            .par_iter()
            .map(|&(v, f)| tuning::tune_cr(v, &BenchmarkFn::new(f), &grid, args.runs_per_cr, &params, seed))
            .collect::<Result<Vec<_>>>()
    })?;
    let rows: Vec<CrMapRow> = tuned.iter().map(CrMapRow::from).collect();
    if let Some(dir) = args.out.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let file = File::create(&args.out).map_err(|e| Error::io(&args.out, e))?;
    tuning::write_cr_map(&rows, file)?;
    for t in &tuned {
        let _ = writeln!(
            stdout,
            "{}/{}: CR = {} (MOV {:.4e}, CI [{:.4e}, {:.4e}])",
            t.variant, t.function, t.chosen.cr, t.chosen.mov, t.chosen.ci.lo, t.chosen.ci.hi
        );
    }
    Ok(EXIT_OK)
}

pub fn cmd_report(args: &ReportArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<i32> {
    let store = ResultStore::load(&args.out)?;
    let missing = store.missing_cells();
    match args.format {
        OutputFormat::Markdown => stdout.write_all(report::render(&store).as_bytes()).map_err(stdout_err)?,
        OutputFormat::Csv => {
            if missing.is_empty() {
                let rows = harness::write_summary(&store, &args.out)?;
                harness::write_summary_csv(&rows, &mut *stdout)?;
            }
        }
    }
    if missing.is_empty() {
        Ok(EXIT_OK)
    } else {
        let _ = writeln!(stderr, "incomplete store: {}", missing.join(", "));
        Ok(EXIT_INCOMPLETE)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["devolab"];
        full.extend_from_slice(args);
        let code = main_with(full, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn list_has_fourteen_variants() {
        let (code, out, _) = call(&["list"]);
        assert_eq!(code, 0);
        let variants = out.lines().filter(|l| l.starts_with("- ")).count();
        assert_eq!(variants, 14);
        assert!(out.contains("multimodal nonseparable (5 functions)"));
    }

    #[test]
    fn list_json_parses() {
        let (_, out, _) = call(&["list", "--format", "json"]);
        let doc: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(doc["variants"].as_array().unwrap().len(), 14);
        let fns: Vec<CatalogEntry> = serde_json::from_value(doc["functions"].clone()).unwrap();
        assert_eq!(fns.len(), 14);
        assert_eq!(fns[7].id, FnId::F8);
        assert_eq!(fns[7].low, -500.0);
    }

    #[test]
    fn unknown_names_are_config_errors() {
        let (code, _, err) = call(&["run", "--variant", "rand/7/bin", "--out", "/nonexistent/x"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(err.contains("rand-to-best/1/exp"), "{err}");
        let (code, _, err) = call(&["tune-cr", "--function", "f99"]);
        assert_eq!(code, EXIT_CONFIG);
        assert!(err.contains("f14"));
        let (code, _, _) = call(&["run", "--preset", "huge"]);
        assert_eq!(code, EXIT_CONFIG);
    }

    #[test]
    fn presets_and_overrides() {
        let parse = |args: &[&str]| {
            let mut full = vec!["devolab", "run"];
            full.extend_from_slice(args);
            match Cli::try_parse_from(full).unwrap().command {
                Command::Run(a) => plan_from_args(&a).unwrap(),
                _ => unreachable!(),
            }
        };
        let p = parse(&["--preset", "desk", "--variant", "rand/1/bin", "--function", "f1"]);
        assert_eq!(p.runs, 10);
        assert_eq!(p.cr_source, CrSource::Published);
        assert_eq!(p.params, ControlParams::default());
        let p = parse(&["--runs", "3", "--np", "20", "--max-gen", "50", "--cr", "0.4"]);
        assert_eq!(p.runs, 3);
        assert_eq!(p.params.max_fe, 1000);
        assert_eq!(p.cr_source, CrSource::Fixed { cr: 0.4 });
        assert_eq!(p.variants.len(), 14);
        assert_eq!(parse(&[]).runs, 100);
    }
}
