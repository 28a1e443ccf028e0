//! Aligned plain-text rendering of H-representations and reports.

use std::fmt::Write as _;

use nok_core::polytope::{HPolytope, LinearConstraint};
use nok_core::rational::format_rational;
use nok_core::verify::{RegressionReport, VerificationReport};

use num_traits::{Signed, Zero};

/// One constraint as `a1·x1 + … <= b` over the given coordinate labels.
fn render_row(row: &LinearConstraint, labels: &[String], relation: &str) -> String {
    let mut terms = String::new();
    for (c, label) in row.coeffs.iter().zip(labels) {
        if c.is_zero() {
            continue;
        }
        if terms.is_empty() {
            if c.is_negative() {
                terms.push('-');
            }
        } else {
            terms.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let magnitude = c.abs();
        if magnitude != 1u8.into() {
            let _ = write!(terms, "{magnitude}·");
        }
        terms.push_str(label);
    }
    if terms.is_empty() {
        terms.push('0');
    }
    format!("{terms} {relation} {}", row.bound)
}

/// Human-readable H-representation, one constraint per line.
pub fn render_hrep(p: &HPolytope, labels: Option<&[String]>) -> String {
    let labels: Vec<String> = match labels {
        Some(l) => l.to_vec(),
        None => (1..=p.dim()).map(|j| format!("x{j}")).collect(),
    };
    let mut out = format!("dim {}\n", p.dim());
    for row in p.ineqs() {
        out.push_str(&render_row(row, &labels, "<="));
        out.push('\n');
    }
    for row in p.eqs() {
        out.push_str(&render_row(row, &labels, "="));
        out.push('\n');
    }
    out
}

/// The verification report as an aligned table with a verdict line.
pub fn render_verification(report: &VerificationReport) -> String {
    let headers = ["k", "fflv_sum", "gz_sum", "demazure_dim"];
    let rows: Vec<[String; 4]> = report
        .rows
        .iter()
        .map(|r| {
            [
                r.k.to_string(),
                r.fflv_sum_count.to_string(),
                r.gz_sum_count.to_string(),
                r.demazure_dim.to_string(),
            ]
        })
        .collect();
    let mut widths = [0usize; 4];
    for (w, h) in widths.iter_mut().zip(headers) {
        *w = h.len();
    }
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: [&str; 4]| {
        let mut text = String::new();
        for (t, (cell, width)) in cells.iter().zip(widths).enumerate() {
            if t > 0 {
                text.push_str("  ");
            }
            let _ = write!(text, "{cell:>width$}");
        }
        out.push_str(text.trim_end());
        out.push('\n');
    };
    line(headers);
    for row in &rows {
        line([&row[0], &row[1], &row[2], &row[3]]);
    }

    if let Some(poly) = &report.polynomials {
        let _ = writeln!(out, "ehrhart degree {}", poly.degree);
        for (name, coeffs) in [
            ("fflv", &poly.fflv),
            ("gz", &poly.gz),
            ("hilbert", &poly.hilbert),
        ] {
            let rendered: Vec<String> = coeffs.iter().map(format_rational).collect();
            let _ = writeln!(out, "  {name:<8} [{}]", rendered.join(", "));
        }
        let _ = writeln!(
            out,
            "  polynomials {}",
            if poly.pass { "agree" } else { "DISAGREE" }
        );
    }
    let _ = writeln!(
        out,
        "verdict: {}",
        if report.verdict { "pass" } else { "fail" }
    );
    if let Some(row) = &report.first_discrepancy {
        let _ = writeln!(
            out,
            "first discrepancy at k={}: fflv={} gz={} demazure={}",
            row.k, row.fflv_sum_count, row.gz_sum_count, row.demazure_dim
        );
    }
    out
}

/// The regression report, one check per line.
pub fn render_regression(report: &RegressionReport) -> String {
    let mut out = String::new();
    for check in &report.checks {
        let _ = write!(
            out,
            "{}: {}",
            check.name,
            if check.pass { "ok" } else { "FAIL" }
        );
        if let Some(detail) = &check.detail {
            let _ = write!(out, " ({detail})");
        }
        out.push('\n');
    }
    let _ = writeln!(
        out,
        "verdict: {}",
        if report.pass { "pass" } else { "fail" }
    );
    out
}
