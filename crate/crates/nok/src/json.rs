//! Canonical JSON schemas.
//!
//! Key order is fixed by struct declaration order and never changes;
//! integers are unquoted JSON numbers, rationals are canonical `"p/q"`
//! strings with positive denominator. These layouts are the interchange
//! contract of the command line and are pinned by tests.

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};

use nok_core::demazure::CharacterReport;
use nok_core::lattice::EhrhartPolynomial;
use nok_core::polytope::{HPolytope, LinearConstraint};
use nok_core::rational::{format_rational, Int};
use nok_core::verify::{PolynomialCheck, RegressionReport, VerificationReport, VerifyRow};
use nok_core::weight::{BundleSpec, Weight};

/// `{"a": [...], "b": n}` — one constraint row.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RowJson {
    pub a: Vec<i128>,
    pub b: i128,
}

/// `{"dim": D, "order": "row-major-u", "labels": [...], "ineqs": [...], "eqs": [...]}`
///
/// `labels` is present only on table-indexed output (the factor commands);
/// plain H-reps omit it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HrepJson {
    pub dim: usize,
    pub order: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub ineqs: Vec<RowJson>,
    pub eqs: Vec<RowJson>,
}

/// Fixed value of the `order` field: row-major over the triangular table.
pub const ROW_MAJOR_ORDER: &str = "row-major-u";

fn row_to_json(row: &LinearConstraint) -> Result<RowJson> {
    let a = row
        .coeffs
        .iter()
        .map(|c| i128::try_from(c).map_err(|_| anyhow!("coefficient exceeds 128 bits")))
        .collect::<Result<Vec<_>>>()?;
    let b = i128::try_from(&row.bound).map_err(|_| anyhow!("bound exceeds 128 bits"))?;
    Ok(RowJson { a, b })
}

fn row_from_json(row: &RowJson, dim: usize) -> Result<LinearConstraint> {
    if row.a.len() != dim {
        bail!(
            "constraint row has {} coefficients, expected {dim}",
            row.a.len()
        );
    }
    Ok(LinearConstraint::new(
        row.a.iter().map(|&c| Int::from(c)).collect(),
        Int::from(row.b),
    ))
}

pub fn hrep_to_json(p: &HPolytope, labels: Option<Vec<String>>) -> Result<HrepJson> {
    Ok(HrepJson {
        dim: p.dim(),
        order: ROW_MAJOR_ORDER.to_string(),
        labels,
        ineqs: p
            .ineqs()
            .iter()
            .map(row_to_json)
            .collect::<Result<Vec<_>>>()?,
        eqs: p
            .eqs()
            .iter()
            .map(row_to_json)
            .collect::<Result<Vec<_>>>()?,
    })
}

pub fn hrep_from_json(j: &HrepJson) -> Result<HPolytope> {
    let ineqs = j
        .ineqs
        .iter()
        .map(|r| row_from_json(r, j.dim))
        .collect::<Result<Vec<_>>>()?;
    let eqs = j
        .eqs
        .iter()
        .map(|r| row_from_json(r, j.dim))
        .collect::<Result<Vec<_>>>()?;
    Ok(HPolytope::new(j.dim, ineqs, eqs))
}

/// `{"n": 3, "weights": [[1,0,-1],[1,0]]}` — `weights[i]` has length `n-i`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BundleSpecJson {
    pub n: usize,
    pub weights: Vec<Vec<i64>>,
}

pub fn spec_to_json(spec: &BundleSpec) -> BundleSpecJson {
    BundleSpecJson {
        n: spec.n(),
        weights: spec
            .weights()
            .iter()
            .map(|w| w.entries().to_vec())
            .collect(),
    }
}

pub fn spec_from_json(j: &BundleSpecJson) -> Result<BundleSpec> {
    let weights = j
        .weights
        .iter()
        .map(|entries| Weight::new(entries.clone()).map_err(|e| anyhow!("{e}")))
        .collect::<Result<Vec<_>>>()?;
    BundleSpec::new(j.n, weights).map_err(|e| anyhow!("{e}"))
}

/// `{"dim": D, "summands": [<hrep>, ...]}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MinkowskiSpecJson {
    pub dim: usize,
    pub summands: Vec<HrepJson>,
}

/// `{"n": 3, "terms": [{"exp": [...], "coeff": c}, ...]}` — exponents in
/// lexicographic order.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CharacterJson {
    pub n: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coeff: i128,
}

pub fn character_to_json(report: &CharacterReport) -> Result<CharacterJson> {
    let terms = report
        .polynomial
        .terms()
        .map(|(e, c)| {
            Ok(TermJson {
                exp: e.to_vec(),
                coeff: i128::try_from(c).map_err(|_| anyhow!("coefficient exceeds 128 bits"))?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CharacterJson {
        n: report.polynomial.vars(),
        terms,
    })
}

/// `{"degree": d, "coefficients": ["1/1", ...]}` — constant term first.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EhrhartJson {
    pub degree: usize,
    pub coefficients: Vec<String>,
}

pub fn ehrhart_to_json(poly: &EhrhartPolynomial) -> EhrhartJson {
    EhrhartJson {
        degree: poly.degree,
        coefficients: poly.coefficients.iter().map(format_rational).collect(),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyRowJson {
    pub k: u32,
    pub fflv_sum_count: u128,
    pub gz_sum_count: u128,
    pub demazure_dim: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PolynomialCheckJson {
    pub degree: usize,
    pub fflv: Vec<String>,
    pub gz: Vec<String>,
    pub hilbert: Vec<String>,
    pub pass: bool,
}

/// `{"spec": ..., "rows": [...], "polynomials": ...|null,
///   "verdict": "pass"|"fail", "first_discrepancy": ...|null}`
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerificationJson {
    pub spec: BundleSpecJson,
    pub rows: Vec<VerifyRowJson>,
    pub polynomials: Option<PolynomialCheckJson>,
    pub verdict: String,
    pub first_discrepancy: Option<VerifyRowJson>,
}

fn verify_row_to_json(row: &VerifyRow) -> VerifyRowJson {
    VerifyRowJson {
        k: row.k,
        fflv_sum_count: row.fflv_sum_count,
        gz_sum_count: row.gz_sum_count,
        demazure_dim: row.demazure_dim,
    }
}

fn polynomial_check_to_json(check: &PolynomialCheck) -> PolynomialCheckJson {
    PolynomialCheckJson {
        degree: check.degree,
        fflv: check.fflv.iter().map(format_rational).collect(),
        gz: check.gz.iter().map(format_rational).collect(),
        hilbert: check.hilbert.iter().map(format_rational).collect(),
        pass: check.pass,
    }
}

pub fn verification_to_json(report: &VerificationReport) -> VerificationJson {
    VerificationJson {
        spec: spec_to_json(&report.spec),
        rows: report.rows.iter().map(verify_row_to_json).collect(),
        polynomials: report.polynomials.as_ref().map(polynomial_check_to_json),
        verdict: if report.verdict { "pass" } else { "fail" }.to_string(),
        first_discrepancy: report.first_discrepancy.as_ref().map(verify_row_to_json),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegressionCheckJson {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RegressionJson {
    pub checks: Vec<RegressionCheckJson>,
    pub verdict: String,
}

pub fn regression_to_json(report: &RegressionReport) -> RegressionJson {
    RegressionJson {
        checks: report
            .checks
            .iter()
            .map(|c| RegressionCheckJson {
                name: c.name.clone(),
                pass: c.pass,
                detail: c.detail.clone(),
            })
            .collect(),
        verdict: if report.pass { "pass" } else { "fail" }.to_string(),
    }
}

/// Renders any of the serializable payloads with a trailing newline.
pub fn to_pretty_string<T: Serialize>(value: &T) -> Result<String> {
    let mut out = serde_json::to_string_pretty(value).context("serializing JSON")?;
    out.push('\n');
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use nok_core::polytope::int_box;

    #[test]
    fn hrep_round_trip_is_identity_after_normalize() {
        let mut p = int_box(&[(0, 2), (-1, 1)]);
        p.push_ineq(LinearConstraint::from_i64(&[2, 2], 4));
        let j = hrep_to_json(&p, None).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        let parsed: HrepJson = serde_json::from_str(&text).unwrap();
        let q = hrep_from_json(&parsed).unwrap();
        assert_eq!(p.normalize(), q.normalize());
    }

    #[test]
    fn spec_json_shape() {
        let spec = spec_from_json(&BundleSpecJson {
            n: 3,
            weights: vec![vec![1, 0, -1], vec![1, 0]],
        })
        .unwrap();
        let text = serde_json::to_string(&spec_to_json(&spec)).unwrap();
        assert_eq!(text, r#"{"n":3,"weights":[[1,0,-1],[1,0]]}"#);
        // Wrong shapes are rejected.
        assert!(spec_from_json(&BundleSpecJson {
            n: 3,
            weights: vec![vec![1, 0]]
        })
        .is_err());
        assert!(spec_from_json(&BundleSpecJson {
            n: 3,
            weights: vec![vec![0, 1, 2], vec![1, 0]]
        })
        .is_err());
    }

    #[test]
    fn key_order_is_pinned() {
        let p = int_box(&[(0, 1)]);
        let j = hrep_to_json(&p, None).unwrap();
        let text = serde_json::to_string(&j).unwrap();
        assert!(
            text.starts_with(r#"{"dim":1,"order":"row-major-u","ineqs":"#),
            "{text}"
        );
    }
}
