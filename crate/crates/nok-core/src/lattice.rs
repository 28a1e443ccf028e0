//! Exact lattice-point enumeration, Ehrhart interpolation, and normalized
//! volume.
//!
//! Counting walks coordinates depth-first with exact per-prefix bounds read
//! off a precomputed chain of Fourier–Motzkin projections (last coordinate
//! projected out repeatedly). The chain is built once per polytope and
//! reused across dilations: scaling a polytope by `k ≥ 0` scales every bound
//! in the chain by `k`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::lp::{self, LpError, LpStatus};
use crate::polytope::{dot_int, HPolytope};
use crate::rational::{ceil_int, factorial, floor_int, Int, Rational};

/// Lattice counts. Desk-scale instances stay far below this width; anything
/// larger is reported as an overflow rather than silently wrapped.
pub type Count = u128;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeError {
    /// The polytope is unbounded in the named coordinate.
    Unbounded { coord: usize },
    /// The polytope is empty where a nonempty one is required.
    Empty,
    /// Hold-out dilation counts disagree with the interpolated polynomial.
    InterpolationMismatch {
        dilation: u32,
        expected: Int,
        actual: Int,
    },
    /// A count exceeded the `Count` width.
    CountOverflow,
}

impl fmt::Display for LatticeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeError::Unbounded { coord } => {
                write!(f, "polytope is unbounded in coordinate {coord}")
            }
            LatticeError::Empty => write!(f, "polytope is empty"),
            LatticeError::InterpolationMismatch {
                dilation,
                expected,
                actual,
            } => write!(
                f,
                "count at dilation {dilation} is {actual}, interpolation predicts {expected}"
            ),
            LatticeError::CountOverflow => write!(f, "lattice count exceeds 128 bits"),
        }
    }
}

impl core::error::Error for LatticeError {}

/// Per-coordinate interval of a nonempty bounded polytope, found by exact
/// LP in each axis direction.
pub fn bounding_box(p: &HPolytope) -> Result<Vec<(Rational, Rational)>, LatticeError> {
    if lp::feasible(p).status != LpStatus::Feasible {
        return Err(LatticeError::Empty);
    }
    let mut out = Vec::with_capacity(p.dim());
    for coord in 0..p.dim() {
        let mut c = vec![Int::zero(); p.dim()];
        c[coord] = Int::one();
        let hi = lp::maximize(&c, p);
        c[coord] = -Int::one();
        let lo = lp::maximize(&c, p);
        match (lo.status, hi.status) {
            (LpStatus::Feasible, LpStatus::Feasible) => {
                out.push((-lo.optimum.expect("bounded"), hi.optimum.expect("bounded")));
            }
            _ => return Err(LatticeError::Unbounded { coord }),
        }
    }
    Ok(out)
}

/// Chain of projections `P₁ ⊂ ℝ¹, …, P_D = P` with `P_j` the orthogonal
/// projection of `P` onto the first `j` coordinates.
pub struct ProjectionChain {
    levels: Vec<HPolytope>,
}

impl ProjectionChain {
    /// Builds the chain by projecting out the last coordinate repeatedly.
    /// Fails with `DimensionOverflow` when an intermediate system exceeds
    /// `row_cap`; callers fall back to box scanning.
    pub fn build(p: &HPolytope, row_cap: usize) -> Result<Self, LpError> {
        assert!(p.dim() >= 1, "chain needs at least one coordinate");
        let mut levels = vec![p.clone()];
        let mut current = p.clone();
        for j in (1..p.dim()).rev() {
            let keep: Vec<usize> = (0..j).collect();
            current = lp::fm_project(&current, &keep, row_cap)?;
            levels.push(current.clone());
        }
        levels.reverse();
        Ok(ProjectionChain { levels })
    }

    /// Lattice count of the dilate `k·P`.
    pub fn count(&self, k: u32) -> Result<Count, LatticeError> {
        let k = Int::from(k);
        let dim = self.levels.len();
        let mut prefix: Vec<Int> = Vec::with_capacity(dim);
        self.walk(0, &k, &mut prefix)
    }

    fn walk(&self, level: usize, k: &Int, prefix: &mut Vec<Int>) -> Result<Count, LatticeError> {
        let Some((lo, hi)) = self.level_bounds(level, k, prefix)? else {
            return Ok(0);
        };
        if level + 1 == self.levels.len() {
            let width = &hi - &lo + Int::one();
            return Count::try_from(width).map_err(|_| LatticeError::CountOverflow);
        }
        let mut total: Count = 0;
        let mut x = lo;
        while x <= hi {
            prefix.push(x.clone());
            let below = self.walk(level + 1, k, prefix)?;
            prefix.pop();
            total = total
                .checked_add(below)
                .ok_or(LatticeError::CountOverflow)?;
            x += Int::one();
        }
        Ok(total)
    }

    /// Integer bounds for coordinate `level` given the prefix, against the
    /// level polytope with bounds scaled by `k`. `None` means the branch is
    /// empty. Rows not involving the new coordinate are already implied by
    /// earlier levels and are skipped.
    fn level_bounds(
        &self,
        level: usize,
        k: &Int,
        prefix: &[Int],
    ) -> Result<Option<(Int, Int)>, LatticeError> {
        let poly = &self.levels[level];
        debug_assert_eq!(poly.dim(), level + 1);
        let mut lo: Option<Int> = None;
        let mut hi: Option<Int> = None;

        for row in poly.eqs() {
            let coeff = &row.coeffs[level];
            if coeff.is_zero() {
                continue;
            }
            let rest = &row.bound * k - dot_int(&row.coeffs[..level], prefix);
            let value = Rational::new(rest, coeff.clone());
            if !value.is_integer() {
                return Ok(None);
            }
            let value = value.to_integer();
            match (&mut lo, &mut hi) {
                (Some(l), _) if *l < value => *l = value.clone(),
                (None, _) => lo = Some(value.clone()),
                _ => {}
            }
            match &mut hi {
                Some(h) if *h > value => *h = value,
                None => hi = Some(value),
                _ => {}
            }
        }

        for row in poly.ineqs() {
            let coeff = &row.coeffs[level];
            if coeff.is_zero() {
                // A zero-coefficient row depends only on the prefix. It is
                // implied for real completions, but an infeasible marker row
                // (empty polytope) shows up exactly here; the empty set stays
                // empty under every dilation, so the bound is read unscaled.
                if row.is_zero_row() && row.bound.is_negative() {
                    return Ok(None);
                }
                continue;
            }
            let rest = &row.bound * k - dot_int(&row.coeffs[..level], prefix);
            let value = Rational::new(rest, coeff.clone());
            if coeff.is_positive() {
                let bound = floor_int(&value);
                match &mut hi {
                    Some(h) if *h > bound => *h = bound,
                    None => hi = Some(bound),
                    _ => {}
                }
            } else {
                let bound = ceil_int(&value);
                match &mut lo {
                    Some(l) if *l < bound => *l = bound,
                    None => lo = Some(bound),
                    _ => {}
                }
            }
        }

        match (lo, hi) {
            (Some(lo), Some(hi)) => {
                if lo <= hi {
                    Ok(Some((lo, hi)))
                } else {
                    Ok(None)
                }
            }
            // A bounded polytope bounds every projection level; a missing
            // side means genuine unboundedness.
            _ => Err(LatticeError::Unbounded { coord: level }),
        }
    }
}

/// Exact number of integer points of `p`. Uses the projection chain; if an
/// intermediate projection exceeds `row_cap`, falls back to scanning the
/// LP bounding box with exact membership tests.
pub fn count_lattice_points(p: &HPolytope, row_cap: usize) -> Result<Count, LatticeError> {
    match ProjectionChain::build(p, row_cap) {
        Ok(chain) => chain.count(1),
        Err(LpError::DimensionOverflow { .. }) => box_scan_count(p),
        Err(LpError::EmptyInput) => Ok(0),
    }
}

/// Fallback counter: scan every integer point of the bounding box.
fn box_scan_count(p: &HPolytope) -> Result<Count, LatticeError> {
    let bounds = match bounding_box(p) {
        Ok(bounds) => bounds,
        Err(LatticeError::Empty) => return Ok(0),
        Err(e) => return Err(e),
    };
    let ranges: Vec<(Int, Int)> = bounds
        .iter()
        .map(|(lo, hi)| (ceil_int(lo), floor_int(hi)))
        .collect();
    if ranges.iter().any(|(lo, hi)| lo > hi) {
        return Ok(0);
    }
    let mut point: Vec<Int> = ranges.iter().map(|(lo, _)| lo.clone()).collect();
    let mut total: Count = 0;
    'scan: loop {
        if p.contains_int(&point) {
            total = total.checked_add(1).ok_or(LatticeError::CountOverflow)?;
        }
        for j in (0..point.len()).rev() {
            if point[j] < ranges[j].1 {
                point[j] += Int::one();
                for r in point.iter_mut().skip(j + 1).zip(ranges.iter().skip(j + 1)) {
                    *r.0 = r.1 .0.clone();
                }
                continue 'scan;
            }
        }
        break;
    }
    Ok(total)
}

/// Degree-`d` polynomial with exact rational coefficients, constant term
/// first. Values at nonnegative integers are the dilation counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EhrhartPolynomial {
    pub degree: usize,
    /// `coefficients[t]` multiplies `k^t`; length `degree + 1`.
    pub coefficients: Vec<Rational>,
}

impl EhrhartPolynomial {
    pub fn eval(&self, k: &Int) -> Rational {
        let x = Rational::from_integer(k.clone());
        let mut acc = Rational::zero();
        for c in self.coefficients.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }

    pub fn leading_coefficient(&self) -> &Rational {
        self.coefficients
            .last()
            .expect("coefficients are never empty")
    }
}

/// Interpolates the exact polynomial of degree `< values.len()` through
/// `(0, values[0]), (1, values[1]), …` by Newton's divided differences.
/// Coefficients come back constant-first.
pub fn fit_integer_sequence(values: &[Int]) -> Vec<Rational> {
    assert!(!values.is_empty());
    let n = values.len();
    // Divided-difference table (in place).
    let mut dd: Vec<Rational> = values
        .iter()
        .map(|v| Rational::from_integer(v.clone()))
        .collect();
    for order in 1..n {
        for i in (order..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            dd[i] = num / Rational::from_integer(Int::from(order));
        }
    }
    // Expand Newton form: sum dd[i] * x(x-1)...(x-i+1).
    let mut coeffs = vec![Rational::zero(); n];
    let mut basis = vec![Rational::zero(); n];
    basis[0] = Rational::one();
    for (i, c) in dd.iter().enumerate() {
        if !c.is_zero() {
            for t in 0..=i {
                let delta = c * &basis[t];
                coeffs[t] += delta;
            }
        }
        if i + 1 < n {
            // basis <- basis * (x - i)
            let shift = Rational::from_integer(Int::from(i));
            for t in (0..=i).rev() {
                let carry = basis[t].clone();
                basis[t + 1] += &carry;
                basis[t] = -(&shift * carry);
            }
        }
    }
    coeffs
}

/// Ehrhart polynomial of a bounded lattice polytope by exact interpolation
/// through the counts at `k = 0, …, d`, verified against fresh counts at
/// `d+1` and `d+2`.
pub fn ehrhart(p: &HPolytope, d: usize, row_cap: usize) -> Result<EhrhartPolynomial, LatticeError> {
    let counts = dilation_counts(p, (d + 2) as u32, row_cap)?;
    ehrhart_from_counts(&counts, d)
}

/// Counts of `k·P` for `k = 0..=max_k`, computed from a single chain when
/// projections fit the cap.
pub fn dilation_counts(
    p: &HPolytope,
    max_k: u32,
    row_cap: usize,
) -> Result<Vec<Count>, LatticeError> {
    match ProjectionChain::build(p, row_cap) {
        Ok(chain) => (0..=max_k).map(|k| chain.count(k)).collect(),
        Err(LpError::DimensionOverflow { .. }) => (0..=max_k)
            .map(|k| box_scan_count(&p.dilate(&Rational::from_integer(Int::from(k)))))
            .collect(),
        Err(LpError::EmptyInput) => Ok(vec![0; max_k as usize + 1]),
    }
}

/// Interpolation + hold-out verification over precomputed counts
/// `counts[k] = |kP ∩ ℤ^D|` for `k = 0..=d+2` (longer slices use every
/// extra entry as a further hold-out).
pub fn ehrhart_from_counts(counts: &[Count], d: usize) -> Result<EhrhartPolynomial, LatticeError> {
    assert!(counts.len() >= d + 3, "need counts at 0..=d+2");
    let values: Vec<Int> = counts[..=d].iter().map(|&c| Int::from(c)).collect();
    let coefficients = fit_integer_sequence(&values);
    let poly = EhrhartPolynomial {
        degree: d,
        coefficients,
    };
    for (k, &actual) in counts.iter().enumerate().skip(d + 1) {
        let expected = poly.eval(&Int::from(k));
        let actual = Int::from(actual);
        if expected != Rational::from_integer(actual.clone()) {
            return Err(LatticeError::InterpolationMismatch {
                dilation: k as u32,
                expected: expected.to_integer(),
                actual,
            });
        }
    }
    Ok(poly)
}

/// `d!` times the leading coefficient of the degree-`d` Ehrhart polynomial.
pub fn normalized_volume(
    p: &HPolytope,
    d: usize,
    row_cap: usize,
) -> Result<Rational, LatticeError> {
    let poly = ehrhart(p, d, row_cap)?;
    Ok(Rational::from_integer(factorial(d)) * poly.leading_coefficient())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lp::DEFAULT_FM_ROW_CAP;
    use crate::polytope::{int_box, HPolytope, LinearConstraint};
    use crate::rational::{parse_rational, rat_int};

    fn ineq(coeffs: &[i64], bound: i64) -> LinearConstraint {
        LinearConstraint::from_i64(coeffs, bound)
    }

    #[test]
    fn box_bounds() {
        let square = int_box(&[(0, 1), (0, 1)]);
        let bounds = bounding_box(&square).unwrap();
        assert_eq!(
            bounds,
            alloc::vec![(rat_int(0), rat_int(1)), (rat_int(0), rat_int(1))]
        );
    }

    #[test]
    fn box_bounds_point_and_errors() {
        let point = HPolytope::new(1, alloc::vec![], alloc::vec![ineq(&[2], 4)]);
        assert_eq!(
            bounding_box(&point).unwrap(),
            alloc::vec![(rat_int(2), rat_int(2))]
        );
        assert_eq!(
            bounding_box(&HPolytope::infeasible(2)),
            Err(LatticeError::Empty)
        );
        let halfline = HPolytope::new(1, alloc::vec![ineq(&[-1], 0)], alloc::vec![]);
        assert_eq!(
            bounding_box(&halfline),
            Err(LatticeError::Unbounded { coord: 0 })
        );
    }

    #[test]
    fn count_cube() {
        let cube = int_box(&[(0, 1), (0, 1), (0, 1)]);
        assert_eq!(count_lattice_points(&cube, DEFAULT_FM_ROW_CAP).unwrap(), 8);
    }

    #[test]
    fn count_with_equalities_and_empty() {
        let seg = int_box(&[(0, 3)]);
        let embedded = seg.coordinate_embed(3, &[2]).unwrap();
        assert_eq!(
            count_lattice_points(&embedded, DEFAULT_FM_ROW_CAP).unwrap(),
            4
        );
        assert_eq!(
            count_lattice_points(&HPolytope::infeasible(3), DEFAULT_FM_ROW_CAP).unwrap(),
            0
        );
        // Equality pin at a non-integer point kills every branch.
        let p = HPolytope::new(
            2,
            int_box(&[(0, 3), (0, 3)]).ineqs().to_vec(),
            alloc::vec![ineq(&[0, 2], 3)],
        );
        assert_eq!(count_lattice_points(&p, DEFAULT_FM_ROW_CAP).unwrap(), 0);
    }

    #[test]
    fn count_matches_box_scan_on_simplex() {
        // x, y, z >= 0, x + y + z <= 4.
        let mut p = int_box(&[(0, 4), (0, 4), (0, 4)]);
        p.push_ineq(ineq(&[1, 1, 1], 4));
        let via_chain = count_lattice_points(&p, DEFAULT_FM_ROW_CAP).unwrap();
        let via_scan = box_scan_count(&p).unwrap();
        assert_eq!(via_chain, via_scan);
        assert_eq!(via_chain, 35); // C(4+3,3)
    }

    #[test]
    fn chain_counts_scale_with_dilation() {
        let mut p = int_box(&[(0, 2), (0, 2)]);
        p.push_ineq(ineq(&[1, 1], 3));
        let chain = ProjectionChain::build(&p, DEFAULT_FM_ROW_CAP).unwrap();
        for k in 0..=4u32 {
            let direct =
                count_lattice_points(&p.dilate(&rat_int(k as i64)), DEFAULT_FM_ROW_CAP).unwrap();
            assert_eq!(chain.count(k).unwrap(), direct, "k = {k}");
        }
        assert_eq!(chain.count(0).unwrap(), 1);
    }

    #[test]
    fn ehrhart_segment() {
        let seg = int_box(&[(0, 1)]);
        let poly = ehrhart(&seg, 1, DEFAULT_FM_ROW_CAP).unwrap();
        assert_eq!(poly.coefficients, alloc::vec![rat_int(1), rat_int(1)]);
    }

    #[test]
    fn ehrhart_point_is_constant_one() {
        let point = int_box(&[(2, 2), (1, 1)]);
        let poly = ehrhart(&point, 2, DEFAULT_FM_ROW_CAP).unwrap();
        assert_eq!(poly.eval(&Int::from(5)), rat_int(1));
        assert_eq!(poly.coefficients[0], rat_int(1));
    }

    #[test]
    fn ehrhart_unit_cube_and_volume() {
        let cube = int_box(&[(0, 1), (0, 1), (0, 1)]);
        let poly = ehrhart(&cube, 3, DEFAULT_FM_ROW_CAP).unwrap();
        // (k+1)^3
        assert_eq!(
            poly.coefficients,
            alloc::vec![rat_int(1), rat_int(3), rat_int(3), rat_int(1)]
        );
        assert_eq!(
            normalized_volume(&cube, 3, DEFAULT_FM_ROW_CAP).unwrap(),
            rat_int(6)
        );
        let seg2 = int_box(&[(0, 2)]);
        assert_eq!(
            normalized_volume(&seg2, 1, DEFAULT_FM_ROW_CAP).unwrap(),
            rat_int(2)
        );
    }

    #[test]
    fn interpolation_mismatch_detected() {
        // Not a polynomial sequence: degree-1 fit through k=0,1 predicts 3 at k=2.
        let counts: Vec<Count> = alloc::vec![1, 2, 4, 8];
        let err = ehrhart_from_counts(&counts, 1).unwrap_err();
        assert!(matches!(
            err,
            LatticeError::InterpolationMismatch { dilation: 2, .. }
        ));
    }

    #[test]
    fn fit_recovers_polynomials() {
        // f(k) = (k+1)^2 = 1 + 2k + k^2.
        let values: Vec<Int> = (0..4).map(|k: i64| Int::from((k + 1) * (k + 1))).collect();
        let coeffs = fit_integer_sequence(&values);
        assert_eq!(
            coeffs,
            alloc::vec![rat_int(1), rat_int(2), rat_int(1), rat_int(0)]
        );
        // Half-integer leading coefficient: f(k) = k(k+1)/2.
        let values: Vec<Int> = (0..3).map(|k: i64| Int::from(k * (k + 1) / 2)).collect();
        let coeffs = fit_integer_sequence(&values);
        assert_eq!(coeffs[2], parse_rational("1/2").unwrap());
    }

    #[test]
    fn count_monotone_under_certified_inclusion() {
        let small = int_box(&[(0, 1), (0, 2)]);
        let mut middle = int_box(&[(0, 2), (0, 2)]);
        middle.push_ineq(ineq(&[1, 1], 3));
        let big = int_box(&[(-1, 3), (0, 4)]);
        for (p, q) in [(&small, &middle), (&middle, &big), (&small, &big)] {
            assert!(crate::lp::contains_polytope(q, p));
            let cp = count_lattice_points(p, DEFAULT_FM_ROW_CAP).unwrap();
            let cq = count_lattice_points(q, DEFAULT_FM_ROW_CAP).unwrap();
            assert!(cp <= cq);
        }
    }

    #[test]
    fn count_invariant_under_embedding_and_permutation() {
        let mut p = int_box(&[(0, 2), (0, 1)]);
        p.push_ineq(ineq(&[1, 1], 2));
        let base = count_lattice_points(&p, DEFAULT_FM_ROW_CAP).unwrap();
        let embedded = p.coordinate_embed(4, &[3, 1]).unwrap();
        assert_eq!(
            count_lattice_points(&embedded, DEFAULT_FM_ROW_CAP).unwrap(),
            base
        );
        let permuted = p.coordinate_embed(2, &[1, 0]).unwrap();
        assert_eq!(
            count_lattice_points(&permuted, DEFAULT_FM_ROW_CAP).unwrap(),
            base
        );
    }
}
