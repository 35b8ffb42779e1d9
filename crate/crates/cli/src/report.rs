use std::fmt::Write as _;

use maxline::{Check, SearchMode, VerificationReport};

pub fn to_json(report: &VerificationReport) -> String {
    let mut text = serde_json::to_string_pretty(report).expect("report is always serializable");
    text.push('\n');
    text
}

pub fn from_json(text: &str) -> serde_json::Result<VerificationReport> {
    serde_json::from_str(text)
}

fn check_name(c: Check) -> &'static str {
    match c {
        Check::Pass => "pass",
        Check::Fail => "fail",
        Check::NotApplicable => "n/a",
    }
}

/// Key/value summary for the terminal. Leaves out the elapsed time so that
/// repeated runs print identical text.
pub fn summary(r: &VerificationReport) -> String {
    let mode = match r.mode {
        SearchMode::Exhaustive => "exhaustive",
        SearchMode::BranchAndBound => "branch_and_bound",
    };
    let mut out = String::new();
    let _ = writeln!(out, "m = {}", r.m);
    let _ = writeln!(out, "mode = {mode}");
    let _ = writeln!(out, "max_phi_found = {}", r.max_phi_found);
    let _ = writeln!(out, "formula_value = {}", r.formula_value);
    let _ = writeln!(out, "roots_examined = {}", r.roots_examined);
    let _ = writeln!(out, "optimal_classes = {}", r.optimal_classes.len());
    for class in &r.optimal_classes {
        let _ = writeln!(out, "  {class}");
    }
    let checks = &r.lemma_checks;
    for (name, value) in [
        ("two_circuit_present", checks.two_circuit_present),
        ("star_incidence", checks.star_incidence),
        ("arc_degree_bound", checks.arc_degree_bound),
        ("odd_order_degree_lemma", checks.odd_order_degree_lemma),
    ] {
        let _ = writeln!(out, "{name} = {}", check_name(value));
    }
    let verdict = if r.consistent() { "consistent" } else { "MISMATCH" };
    let _ = writeln!(out, "verdict = {verdict}");
    out
}
