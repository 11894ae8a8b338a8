//! Markdown rendering of a result store in the shape of the published
//! tables: MOV by modality, convergence speed with column minima starred,
//! and Q-measure per function class sorted ascending.
//!
//! Incomplete cells render as blanks; the report lists them up front.

use std::fmt::Write;

use crate::benchmarks::{FnId, FunctionClass, Modality};
use crate::harness::{class_functions, sort_by_qm, summarize_cell, summarize_group, ResultStore};
use crate::metrics::QmSummary;

/// Placeholder for an undefined Q-measure.
pub const UNDEFINED: &str = "−";

fn fmt2(x: f64) -> String {
    format!("{x:.2}")
}

fn header(out: &mut String, first: &str, cols: &[String]) {
    let _ = writeln!(out, "| {first} | {} |", cols.join(" | "));
    let _ = writeln!(out, "|---|{}", "---:|".repeat(cols.len()));
}

/// Plan functions of one modality, class by class.
fn modality_columns(store: &ResultStore, modality: Modality) -> Vec<FnId> {
    let plan = store.plan();
    let classes: &[FunctionClass] = match modality {
        Modality::Unimodal => &[FunctionClass::UnimodalSeparable, FunctionClass::UnimodalNonseparable],
        Modality::Multimodal => &[FunctionClass::MultimodalSeparable, FunctionClass::MultimodalNonseparable],
    };
    classes.iter().flat_map(|&c| class_functions(plan, c)).collect()
}

/// MOV tables, one per modality, two decimals.
pub fn mov_tables(store: &ResultStore) -> String {
    let mut out = String::new();
    for modality in [Modality::Unimodal, Modality::Multimodal] {
        let cols = modality_columns(store, modality);
        if cols.is_empty() {
            continue;
        }
        let title = match modality {
            Modality::Unimodal => "MOV obtained for unimodal functions",
            Modality::Multimodal => "MOV obtained for multimodal functions",
        };
        let _ = writeln!(out, "### {title}\n");
        header(&mut out, "Variant", &cols.iter().map(|f| f.to_string()).collect::<Vec<_>>());
        for &v in &store.plan().variants {
            let cells: Vec<String> = cols
                .iter()
                .map(|&f| summarize_cell(store, v, f).map(|s| fmt2(s.mov)).unwrap_or_default())
                .collect();
            let _ = writeln!(out, "| {v} | {} |", cells.join(" | "));
        }
        out.push('\n');
    }
    out
}

/// Convergence speed per variant × function. In each column the lowest
/// percentage is marked with `*`, unless the whole column is equal.
pub fn cs_table(store: &ResultStore) -> String {
    let plan = store.plan();
    let mut fns = plan.functions.clone();
    fns.sort();
    let values: Vec<Vec<Option<f64>>> = plan
        .variants
        .iter()
        .map(|&v| fns.iter().map(|&f| summarize_cell(store, v, f).map(|s| s.cs_percent)).collect())
        .collect();
    let mut minima = Vec::with_capacity(fns.len());
    for j in 0..fns.len() {
        let col: Vec<f64> = values.iter().filter_map(|row| row[j]).collect();
        let min = col.iter().copied().fold(f64::INFINITY, f64::min);
        let max = col.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        // Compare at display precision so visually equal values are treated alike.
        minima.push((min < max && fmt2(min) != fmt2(max)).then(|| fmt2(min)));
    }

    let mut out = String::from("### Convergence speed (% of the evaluation budget; lowest marked with *)\n\n");
    header(&mut out, "Variant", &fns.iter().map(|f| f.to_string()).collect::<Vec<_>>());
    for (v, row) in plan.variants.iter().zip(&values) {
        let cells: Vec<String> = row
            .iter()
            .zip(&minima)
            .map(|(x, min)| match x {
                Some(x) => {
                    let s = fmt2(*x);
                    if min.as_deref() == Some(s.as_str()) {
                        s + "*"
                    } else {
                        s
                    }
                }
                None => String::new(),
            })
            .collect();
        let _ = writeln!(out, "| {v} | {} |", cells.join(" | "));
    }
    out.push('\n');
    out
}

fn sum_ej_cell(q: &QmSummary) -> String {
    if q.nc == 0 {
        UNDEFINED.to_string()
    } else {
        q.sum_ej.to_string()
    }
}

fn opt2(x: Option<f64>) -> String {
    x.map(fmt2).unwrap_or_else(|| UNDEFINED.to_string())
}

/// Q-measure table for one class, ascending, undefined rows last.
pub fn qm_table(store: &ResultStore, class: FunctionClass) -> Option<String> {
    let fns = class_functions(store.plan(), class);
    if fns.is_empty() {
        return None;
    }
    let mut out = format!("### Q-measure for {} functions (ascending)\n\n", class.label());
    let mut cols: Vec<String> = fns.iter().map(|f| f.to_string()).collect();
    cols.extend(["SumEj".into(), "C".into(), "Qm=C/Pc".into()]);
    header(&mut out, "Variant", &cols);

    let mut groups = Vec::new();
    let mut incomplete = Vec::new();
    for &v in &store.plan().variants {
        match summarize_group(store, v, &fns) {
            Some(g) => groups.push(g),
            None => incomplete.push(v),
        }
    }
    sort_by_qm(&mut groups);
    for g in &groups {
        let mut cells: Vec<String> = g.per_function.iter().map(|(_, q)| sum_ej_cell(q)).collect();
        cells.push(sum_ej_cell(&g.pooled));
        cells.push(opt2(g.pooled.c));
        cells.push(opt2(g.pooled.qm));
        let _ = writeln!(out, "| {} | {} |", g.variant, cells.join(" | "));
    }
    for v in incomplete {
        let _ = writeln!(out, "| {v} | {} |", vec![""; cols.len()].join(" | "));
    }
    out.push('\n');
    Some(out)
}

/// Full Markdown report.
pub fn render(store: &ResultStore) -> String {
    let plan = store.plan();
    let mut out = String::from("# DE variant report\n\n");
    let _ = writeln!(
        out,
        "{} variant(s) × {} function(s) × {} run(s); NP = {}, max generations = {}, max FEs = {}, base seed = {}.\n",
        plan.variants.len(),
        plan.functions.len(),
        plan.runs,
        plan.params.np,
        plan.params.max_gen,
        plan.params.max_fe,
        plan.base_seed
    );
    let missing = store.missing_cells();
    if !missing.is_empty() {
        let _ = writeln!(out, "**Incomplete store.** Missing cells:\n");
        for m in &missing {
            let _ = writeln!(out, "- {m}");
        }
        out.push('\n');
    }
    out.push_str(&mov_tables(store));
    out.push_str(&cs_table(store));
    for class in FunctionClass::ALL {
        if let Some(t) = qm_table(store, class) {
            out.push_str(&t);
        }
    }
    out
}
