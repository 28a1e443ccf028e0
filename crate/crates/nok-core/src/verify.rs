//! End-to-end cross-checks at desk scale: for a weight tuple, the lattice
//! counts of the dilated sums of embedded polytopes (both models) must
//! match the dimension of the nested Demazure character at every dilation,
//! and — given enough dilations — the interpolated counting polynomials
//! must agree coefficientwise with the character's growth polynomial.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand_core::{RngCore, SeedableRng};

use crate::demazure::{gdc, schur, weyl_dim};
use crate::fflv::{embed_fflv, fflv, AmbientFrame};
use crate::gz::embed_gz;
use crate::lattice::{self, Count, LatticeError, ProjectionChain};
use crate::lp;
use crate::minkowski::MinkowskiSpec;
use crate::polytope::{HPolytope, LinearConstraint};
use crate::rational::Rational;
use crate::weight::{BundleSpec, Weight};

/// One dilation row of a verification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyRow {
    pub k: u32,
    pub fflv_sum_count: Count,
    pub gz_sum_count: Count,
    pub demazure_dim: Count,
}

impl VerifyRow {
    pub fn agrees(&self) -> bool {
        self.fflv_sum_count == self.gz_sum_count && self.gz_sum_count == self.demazure_dim
    }
}

/// Coefficientwise comparison of the two counting polynomials and the
/// character growth polynomial (constant terms first).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialCheck {
    pub degree: usize,
    pub fflv: Vec<Rational>,
    pub gz: Vec<Rational>,
    pub hilbert: Vec<Rational>,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub spec: BundleSpec,
    pub rows: Vec<VerifyRow>,
    pub polynomials: Option<PolynomialCheck>,
    pub verdict: bool,
    pub first_discrepancy: Option<VerifyRow>,
}

#[derive(Clone, Debug)]
pub enum VerifyError {
    /// A count exceeded the supported range; the partial report holds every
    /// completed row.
    ResourceExceeded {
        partial: Box<VerificationReport>,
        reason: String,
    },
}

fn count_error(spec: &BundleSpec, rows: Vec<VerifyRow>, err: LatticeError) -> VerifyError {
    let verdict = rows.iter().all(VerifyRow::agrees);
    let first_discrepancy = rows.iter().find(|r| !r.agrees()).cloned();
    VerifyError::ResourceExceeded {
        partial: Box::new(VerificationReport {
            spec: spec.clone(),
            rows,
            polynomials: None,
            verdict,
            first_discrepancy,
        }),
        reason: format!("{err}"),
    }
}

/// Which polytope model a sum is built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SumModel {
    Fflv,
    Gz,
}

/// The Minkowski sum of the embedded factor polytopes of `spec`.
pub fn embedded_sum(spec: &BundleSpec, model: SumModel) -> MinkowskiSpec {
    let frame = AmbientFrame::new(spec.n());
    let summands = (1..spec.n())
        .map(|i| match model {
            SumModel::Fflv => embed_fflv(frame, i, spec.factor(i)),
            SumModel::Gz => embed_gz(frame, i, spec.factor(i)),
        })
        .collect();
    MinkowskiSpec::new(frame.dim(), summands).expect("factor polytopes are nonempty")
}

/// Counts `k·(Σ summands)` for `k = 0..=max_k`, preferring one explicit
/// H-rep plus a reusable projection chain, falling back to membership
/// counting per dilation.
fn sum_counts(sum: &MinkowskiSpec, max_k: u32, row_cap: usize) -> Result<Vec<Count>, LatticeError> {
    match sum.explicit_hrep(row_cap) {
        Ok(hrep) => match ProjectionChain::build(&hrep, row_cap) {
            Ok(chain) => (0..=max_k).map(|k| chain.count(k)).collect(),
            Err(_) => (0..=max_k).map(|k| sum.count_sum(k, row_cap)).collect(),
        },
        Err(_) => (0..=max_k).map(|k| sum.count_sum(k, row_cap)).collect(),
    }
}

/// One column of a verification run: the dilation counts of the embedded
/// sum in the chosen model.
pub fn sum_dilation_counts(
    spec: &BundleSpec,
    model: SumModel,
    max_k: u32,
    row_cap: usize,
) -> Result<Vec<Count>, LatticeError> {
    sum_counts(&embedded_sum(spec, model), max_k, row_cap)
}

/// The character column: dimensions of the nested character at `kΛ`.
pub fn character_dimensions(spec: &BundleSpec, max_k: u32) -> Result<Vec<Count>, LatticeError> {
    (0..=max_k)
        .map(|k| {
            Count::try_from(&gdc(&spec.scaled(k)).dimension)
                .map_err(|_| LatticeError::CountOverflow)
        })
        .collect()
}

/// Builds the report from precomputed columns (exposed so a caller may
/// compute the columns concurrently; the result does not depend on how the
/// columns were scheduled).
pub fn assemble_report(
    spec: &BundleSpec,
    fflv_counts: &[Count],
    gz_counts: &[Count],
    demazure_dims: &[Count],
    row_cap: usize,
) -> VerificationReport {
    assert_eq!(fflv_counts.len(), gz_counts.len());
    assert_eq!(gz_counts.len(), demazure_dims.len());
    let max_k = fflv_counts.len() - 1;
    let rows: Vec<VerifyRow> = (0..=max_k)
        .map(|k| VerifyRow {
            k: k as u32,
            fflv_sum_count: fflv_counts[k],
            gz_sum_count: gz_counts[k],
            demazure_dim: demazure_dims[k],
        })
        .collect();

    // Polynomial-level comparison when enough hold-out rows exist.
    let polynomials = embedded_sum(spec, SumModel::Fflv)
        .explicit_hrep(row_cap)
        .ok()
        .and_then(|hrep| lp::affine_dim(&hrep))
        .filter(|&d| max_k >= d + 2)
        .map(|d| {
            let fit = |counts: &[Count]| -> Result<Vec<Rational>, LatticeError> {
                Ok(lattice::ehrhart_from_counts(counts, d)?.coefficients)
            };
            match (fit(fflv_counts), fit(gz_counts), fit(demazure_dims)) {
                (Ok(fflv), Ok(gz), Ok(hilbert)) => {
                    let pass = fflv == gz && gz == hilbert;
                    PolynomialCheck {
                        degree: d,
                        fflv,
                        gz,
                        hilbert,
                        pass,
                    }
                }
                // A hold-out mismatch means some column is not polynomial:
                // report it as a failing check rather than an error.
                _ => PolynomialCheck {
                    degree: d,
                    fflv: vec![],
                    gz: vec![],
                    hilbert: vec![],
                    pass: false,
                },
            }
        });

    let rows_pass = rows.iter().all(VerifyRow::agrees);
    let poly_pass = polynomials.as_ref().is_none_or(|p| p.pass);
    let first_discrepancy = rows.iter().find(|r| !r.agrees()).cloned();
    VerificationReport {
        spec: spec.clone(),
        rows,
        polynomials,
        verdict: rows_pass && poly_pass,
        first_discrepancy,
    }
}

/// Checks the count identity for `spec` at dilations `0..=max_k`, and when
/// `max_k` leaves at least two hold-out rows past the sum's affine
/// dimension also compares the three interpolated polynomials.
pub fn verify_theorem(
    spec: &BundleSpec,
    max_k: u32,
    row_cap: usize,
) -> Result<VerificationReport, VerifyError> {
    let fflv_counts = sum_dilation_counts(spec, SumModel::Fflv, max_k, row_cap)
        .map_err(|e| count_error(spec, vec![], e))?;
    let gz_counts = sum_dilation_counts(spec, SumModel::Gz, max_k, row_cap)
        .map_err(|e| count_error(spec, vec![], e))?;
    let demazure_dims =
        character_dimensions(spec, max_k).map_err(|e| count_error(spec, vec![], e))?;
    Ok(assemble_report(
        spec,
        &fflv_counts,
        &gz_counts,
        &demazure_dims,
        row_cap,
    ))
}

/// One named check of the worked rank-3 example.
#[derive(Clone, Debug)]
pub struct RegressionCheck {
    pub name: String,
    pub pass: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug)]
pub struct RegressionReport {
    pub checks: Vec<RegressionCheck>,
    pub pass: bool,
}

/// Compares two H-reps after normalization, naming the first mismatched
/// row of either side.
fn compare_hreps(got: &HPolytope, expected: &HPolytope) -> Result<(), String> {
    let got = got.normalize();
    let expected = expected.normalize();
    if got == expected {
        return Ok(());
    }
    let describe = |row: &LinearConstraint, kind: &str| -> String {
        format!("{kind} row {:?} <= {}", row.coeffs, row.bound)
    };
    for row in got.ineqs() {
        if !expected.ineqs().contains(row) {
            return Err(format!("unexpected {}", describe(row, "inequality")));
        }
    }
    for row in expected.ineqs() {
        if !got.ineqs().contains(row) {
            return Err(format!("missing {}", describe(row, "inequality")));
        }
    }
    for row in got.eqs() {
        if !expected.eqs().contains(row) {
            return Err(format!("unexpected {}", describe(row, "equality")));
        }
    }
    for row in expected.eqs() {
        if !got.eqs().contains(row) {
            return Err(format!("missing {}", describe(row, "equality")));
        }
    }
    Err(String::from("row multiplicities differ"))
}

/// The rank-3 regression: the first factor's six inequality rows, the
/// second factor's pinned segment, and — for strictly dominant pairs — the
/// seven-row H-rep of the sum.
pub fn regression_example(lambda1: &Weight, lambda2: &Weight, row_cap: usize) -> RegressionReport {
    assert_eq!(lambda1.size(), 3, "first factor has rank 3");
    assert_eq!(lambda2.size(), 2, "second factor has rank 2");
    let frame = AmbientFrame::new(3);
    let mut checks = Vec::new();

    // Expected first-factor system: 0 <= u11 <= λ1-λ2, 0 <= u12 <= λ2-λ3,
    // u21 >= 0, u11 + u21 + u12 <= λ1-λ3.
    let (l1, l2, l3) = (lambda1.entry(0), lambda1.entry(1), lambda1.entry(2));
    let expected_fflv = HPolytope::new(
        3,
        vec![
            LinearConstraint::from_i64(&[-1, 0, 0], 0),
            LinearConstraint::from_i64(&[0, -1, 0], 0),
            LinearConstraint::from_i64(&[0, 0, -1], 0),
            LinearConstraint::from_i64(&[1, 0, 0], l1 - l2),
            LinearConstraint::from_i64(&[0, 1, 0], l2 - l3),
            LinearConstraint::from_i64(&[1, 1, 1], l1 - l3),
        ],
        vec![],
    );
    let got = fflv(lambda1);
    checks.push(match compare_hreps(&got, &expected_fflv) {
        Ok(()) => RegressionCheck {
            name: String::from("first factor: six inequality rows"),
            pass: true,
            detail: None,
        },
        Err(detail) => RegressionCheck {
            name: String::from("first factor: six inequality rows"),
            pass: false,
            detail: Some(detail),
        },
    });

    // Expected second-factor embedding: the pinned segment
    // {u11 = u21 = 0, 0 <= u12 <= λ²1-λ²2}.
    let (m1, m2) = (lambda2.entry(0), lambda2.entry(1));
    let expected_segment = HPolytope::new(
        3,
        vec![
            LinearConstraint::from_i64(&[0, -1, 0], 0),
            LinearConstraint::from_i64(&[0, 1, 0], m1 - m2),
        ],
        vec![
            LinearConstraint::from_i64(&[1, 0, 0], 0),
            LinearConstraint::from_i64(&[0, 0, 1], 0),
        ],
    );
    let got = embed_fflv(frame, 2, lambda2);
    checks.push(match compare_hreps(&got, &expected_segment) {
        Ok(()) => RegressionCheck {
            name: String::from("second factor: pinned segment"),
            pass: true,
            detail: None,
        },
        Err(detail) => RegressionCheck {
            name: String::from("second factor: pinned segment"),
            pass: false,
            detail: Some(detail),
        },
    });

    // Strictly dominant pairs: the sum has exactly seven non-redundant rows.
    if l1 > l2 && l2 > l3 && m1 > m2 {
        let sum = MinkowskiSpec::new(
            3,
            vec![embed_fflv(frame, 1, lambda1), embed_fflv(frame, 2, lambda2)],
        )
        .expect("factor polytopes are nonempty");
        let check = match sum.explicit_hrep(row_cap) {
            Ok(hrep) => {
                let rows = hrep.row_count();
                RegressionCheck {
                    name: String::from("sum: seven non-redundant rows"),
                    pass: rows == 7,
                    detail: (rows != 7).then(|| format!("got {rows} rows")),
                }
            }
            Err(e) => RegressionCheck {
                name: String::from("sum: seven non-redundant rows"),
                pass: false,
                detail: Some(format!("{e}")),
            },
        };
        checks.push(check);
    }

    let pass = checks.iter().all(|c| c.pass);
    RegressionReport { checks, pass }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub cases: usize,
    pub failure: Option<String>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.failure.is_none()
    }
}

/// All dominant weights of the given size with entries in `0..=max_entry`.
pub fn dominant_weights(size: usize, max_entry: i64) -> Vec<Weight> {
    let mut out = Vec::new();
    let mut entries = vec![0i64; size];
    fn fill(entries: &mut Vec<i64>, pos: usize, hi: i64, out: &mut Vec<Weight>) {
        if pos == entries.len() {
            out.push(Weight::new(entries.clone()).expect("tuples are non-increasing"));
            return;
        }
        for v in 0..=hi {
            entries[pos] = v;
            fill(entries, pos + 1, v, out);
        }
    }
    fill(&mut entries, 0, max_entry, &mut out);
    out
}

/// Single-factor consistency: for every dominant weight with entries in
/// `0..=max_entry` and every factor slot, both embedded polytopes count to
/// the Weyl dimension; in the first slot the nested character must equal
/// the pattern-enumeration oracle as a polynomial. Stops at the first
/// failing weight.
pub fn single_weight_suite(n: usize, max_entry: i64, row_cap: usize) -> SuiteReport {
    let frame = AmbientFrame::new(n);
    let mut cases = 0;
    for i in 1..n {
        let size = n - i + 1;
        for w in dominant_weights(size, max_entry) {
            cases += 1;
            let expected = weyl_dim(&w);
            let fflv_count = lattice::count_lattice_points(&embed_fflv(frame, i, &w), row_cap);
            let gz_count = lattice::count_lattice_points(&embed_gz(frame, i, &w), row_cap);
            let expected_count = Count::try_from(&expected).ok();
            if fflv_count.as_ref().ok() != expected_count.as_ref()
                || gz_count.as_ref().ok() != expected_count.as_ref()
            {
                return SuiteReport {
                    cases,
                    failure: Some(format!(
                        "factor {i}, weight {:?}: counts {fflv_count:?} / {gz_count:?}, Weyl dimension {expected}",
                        w.entries()
                    )),
                };
            }
            if i == 1 {
                let report = gdc(&BundleSpec::single(w.clone()));
                let oracle = schur(&w, n);
                if report.polynomial != oracle {
                    return SuiteReport {
                        cases,
                        failure: Some(format!(
                            "weight {:?}: nested character differs from the pattern oracle",
                            w.entries()
                        )),
                    };
                }
            }
        }
    }
    SuiteReport {
        cases,
        failure: None,
    }
}

/// Deterministic pseudo-random weight tuple: same seed, same tuple.
pub fn random_spec(n: usize, max_entry: i64, seed: u64) -> BundleSpec {
    assert!(n >= 2 && max_entry >= 0);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let bound = (max_entry + 1) as u32;
    let limit = u32::MAX - (u32::MAX % bound);
    let mut draw = move || loop {
        let v = rng.next_u32();
        if v < limit {
            return (v % bound) as i64;
        }
    };
    let weights = (0..n - 1)
        .map(|j| {
            let mut entries: Vec<i64> = (0..n - j).map(|_| draw()).collect();
            entries.sort_unstable_by(|a, b| b.cmp(a));
            Weight::new(entries).expect("sorted tuples are dominant")
        })
        .collect();
    BundleSpec::new(n, weights).expect("shapes are constructed to fit")
}

/// Lower-bound consistency used by the harness: every summand's count is a
/// lower bound for the count of the whole sum (the sums contain every
/// summand since each contains its base point).
pub fn summand_count_lower_bound(spec: &BundleSpec, row_cap: usize) -> Option<Count> {
    let frame = AmbientFrame::new(spec.n());
    (1..spec.n())
        .map(|i| lattice::count_lattice_points(&embed_fflv(frame, i, spec.factor(i)), row_cap).ok())
        .collect::<Option<Vec<_>>>()
        .map(|counts| counts.into_iter().max().unwrap_or(1))
}
