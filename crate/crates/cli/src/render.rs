//! Deterministic plain-text rendering of reports. Every function here is a
//! pure map from values to strings: identical inputs produce identical
//! bytes, so command output can be diffed and cached. Anything that varies
//! between runs (wall-clock timing) must go to stderr, never through here.

use seqea::sequential::SubalgebraClosure;
use seqea::{ModelExpr, ValidationReport};

/// One-line summary of a validation sweep: `pass (N checks)` or `FAIL`.
pub fn report_line(name: &str, report: &ValidationReport) -> String {
    if report.passed() {
        format!("{name}: pass ({} checks)", report.checks)
    } else {
        format!("{name}: FAIL ({} checks)", report.checks)
    }
}

/// Indented violation lines, one per recorded law breach.
pub fn violation_lines(report: &ValidationReport) -> String {
    let mut out = String::new();
    for v in &report.violations {
        out.push_str(&format!("  {}: {}\n", v.law, v.witness));
    }
    out
}

/// Indented informational notes.
pub fn note_lines(report: &ValidationReport) -> String {
    let mut out = String::new();
    for n in &report.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
    out
}

/// A short, structural description of a model: the family, its immediate
/// parts, and sizes where finite.
pub fn model_brief(m: &ModelExpr) -> String {
    match m {
        ModelExpr::Finite { table, product } => {
            let with = if product.is_some() { ", with product" } else { "" };
            format!("finite({} elements{with})", table.size())
        }
        ModelExpr::Boolean { atoms } => format!("boolean({atoms} atoms)"),
        ModelExpr::Interval => "interval".into(),
        ModelExpr::MatrixInterval => "matrix_interval".into(),
        ModelExpr::HorizontalSum { parts } => {
            let inner: Vec<String> = parts.iter().map(model_brief).collect();
            format!("horizontal_sum[{}]", inner.join(", "))
        }
        ModelExpr::DirectSum { parts } => {
            let inner: Vec<String> = parts.iter().map(model_brief).collect();
            format!("direct_sum[{}]", inner.join(", "))
        }
        ModelExpr::Corner { base, idempotent } => {
            format!("corner({}, cut at {idempotent})", model_brief(base))
        }
    }
}

/// A product table as indented rows, `i | i∘0 i∘1 ...` per line.
pub fn product_rows(product: &[usize], size: usize) -> String {
    let mut out = String::new();
    for i in 0..size {
        let row: Vec<String> = (0..size).map(|j| product[i * size + j].to_string()).collect();
        out.push_str(&format!("  {i} | {}\n", row.join(" ")));
    }
    out
}

/// A subalgebra (center/commutant/bicommutant) as a keyed block.
pub fn closure_block(label: &str, closure: &SubalgebraClosure) -> String {
    let mut out = String::new();
    out.push_str(&format!("{label}: {}\n", closure.set.describe()));
    let mut closed = Vec::new();
    for (flag, name) in [
        (closure.closed_under_sum, "sum"),
        (closure.closed_under_complement, "complement"),
        (closure.closed_under_product, "product"),
    ] {
        if flag {
            closed.push(name);
        }
    }
    out.push_str(&format!("closed under: {}\n", closed.join(" ")));
    out.push_str(&format!("exact: {}\n", yes_no(closure.exact)));
    for n in &closure.notes {
        out.push_str(&format!("  note: {n}\n"));
    }
    out
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}
