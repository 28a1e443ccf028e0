//! Integer H-representations and the affine manipulations shared by every
//! geometric module.
//!
//! A polytope is stored as two row lists over arbitrary-precision integers:
//! inequalities `a·x ≤ b` and equalities `a·x = b`. Infeasible systems are
//! legal values; [`HPolytope::infeasible`] is the canonical representative.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::rational::{Int, Rational};

/// One constraint row; whether it is `a·x ≤ b` or `a·x = b` is determined
/// by which list of the polytope it sits in.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearConstraint {
    pub coeffs: Vec<Int>,
    pub bound: Int,
}

impl LinearConstraint {
    pub fn new(coeffs: Vec<Int>, bound: Int) -> Self {
        LinearConstraint { coeffs, bound }
    }

    /// Integer-coefficient row from machine integers.
    pub fn from_i64(coeffs: &[i64], bound: i64) -> Self {
        LinearConstraint {
            coeffs: coeffs.iter().map(|&c| Int::from(c)).collect(),
            bound: Int::from(bound),
        }
    }

    pub fn is_zero_row(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// gcd of the absolute values of the nonzero coefficients (zero for the
    /// all-zero row).
    pub fn coeff_gcd(&self) -> Int {
        let mut g = Int::zero();
        for c in &self.coeffs {
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        g
    }

    /// Divides the row by `gcd(coeff_gcd, bound)`; exact over the reals, so
    /// safe in LP pipelines. Does nothing to the all-zero row.
    pub fn reduce_real(&mut self) {
        let mut g = self.coeff_gcd();
        if g.is_zero() {
            return;
        }
        g = g.gcd(&self.bound);
        if g > Int::from(1) {
            for c in &mut self.coeffs {
                *c = &*c / &g;
            }
            self.bound = &self.bound / &g;
        }
    }

    pub fn negated(&self) -> Self {
        LinearConstraint {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            bound: -&self.bound,
        }
    }
}

pub fn dot_int(coeffs: &[Int], point: &[Int]) -> Int {
    debug_assert_eq!(coeffs.len(), point.len());
    let mut acc = Int::zero();
    for (c, x) in coeffs.iter().zip(point) {
        if !c.is_zero() && !x.is_zero() {
            acc += c * x;
        }
    }
    acc
}

pub fn dot_rational(coeffs: &[Int], point: &[Rational]) -> Rational {
    debug_assert_eq!(coeffs.len(), point.len());
    let mut acc = Rational::zero();
    for (c, x) in coeffs.iter().zip(point) {
        if !c.is_zero() {
            acc += Rational::from_integer(c.clone()) * x;
        }
    }
    acc
}

/// Error from [`HPolytope::coordinate_embed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EmbedError {
    PlacementNotInjective,
}

impl fmt::Display for EmbedError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EmbedError::PlacementNotInjective => write!(f, "placement is not injective"),
        }
    }
}

impl core::error::Error for EmbedError {}

/// Exact H-representation in a fixed ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HPolytope {
    dim: usize,
    ineqs: Vec<LinearConstraint>,
    eqs: Vec<LinearConstraint>,
}

impl HPolytope {
    pub fn new(dim: usize, ineqs: Vec<LinearConstraint>, eqs: Vec<LinearConstraint>) -> Self {
        for row in ineqs.iter().chain(&eqs) {
            assert_eq!(
                row.coeffs.len(),
                dim,
                "constraint width must match dimension"
            );
        }
        HPolytope { dim, ineqs, eqs }
    }

    /// The whole space (no constraints).
    pub fn universe(dim: usize) -> Self {
        HPolytope {
            dim,
            ineqs: Vec::new(),
            eqs: Vec::new(),
        }
    }

    /// Canonical infeasible polytope: the single row `0·x ≤ -1`.
    pub fn infeasible(dim: usize) -> Self {
        HPolytope {
            dim,
            ineqs: vec![LinearConstraint::new(vec![Int::zero(); dim], -Int::from(1))],
            eqs: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ineqs(&self) -> &[LinearConstraint] {
        &self.ineqs
    }

    pub fn eqs(&self) -> &[LinearConstraint] {
        &self.eqs
    }

    pub fn push_ineq(&mut self, row: LinearConstraint) {
        assert_eq!(row.coeffs.len(), self.dim);
        self.ineqs.push(row);
    }

    pub fn push_eq(&mut self, row: LinearConstraint) {
        assert_eq!(row.coeffs.len(), self.dim);
        self.eqs.push(row);
    }

    pub fn row_count(&self) -> usize {
        self.ineqs.len() + self.eqs.len()
    }

    /// Exact membership for an integer point.
    pub fn contains_int(&self, point: &[Int]) -> bool {
        self.ineqs
            .iter()
            .all(|r| dot_int(&r.coeffs, point) <= r.bound)
            && self
                .eqs
                .iter()
                .all(|r| dot_int(&r.coeffs, point) == r.bound)
    }

    /// Exact membership for a rational point.
    pub fn contains_rational(&self, point: &[Rational]) -> bool {
        self.ineqs
            .iter()
            .all(|r| dot_rational(&r.coeffs, point) <= Rational::from_integer(r.bound.clone()))
            && self
                .eqs
                .iter()
                .all(|r| dot_rational(&r.coeffs, point) == Rational::from_integer(r.bound.clone()))
    }

    /// Lattice-preserving canonical form.
    ///
    /// Each row is divided by the gcd of its coefficients; inequality bounds
    /// round down (`b ↦ ⌊b/g⌋`), which never changes the lattice-point set.
    /// An equality whose gcd does not divide its bound has no integer or
    /// real solutions, so the canonical infeasible polytope is returned.
    /// Trivially true rows are dropped, equalities get a canonical sign, and
    /// rows are sorted and deduplicated. Idempotent.
    pub fn normalize(&self) -> HPolytope {
        let mut ineqs: Vec<LinearConstraint> = Vec::with_capacity(self.ineqs.len());
        for row in &self.ineqs {
            let g = row.coeff_gcd();
            if g.is_zero() {
                if row.bound.is_negative() {
                    return HPolytope::infeasible(self.dim);
                }
                continue;
            }
            let mut out = row.clone();
            if g > Int::from(1) {
                for c in &mut out.coeffs {
                    *c = &*c / &g;
                }
                out.bound = out.bound.div_floor(&g);
            }
            ineqs.push(out);
        }

        let mut eqs: Vec<LinearConstraint> = Vec::with_capacity(self.eqs.len());
        for row in &self.eqs {
            let g = row.coeff_gcd();
            if g.is_zero() {
                if !row.bound.is_zero() {
                    return HPolytope::infeasible(self.dim);
                }
                continue;
            }
            let mut out = row.clone();
            if g > Int::from(1) {
                if !out.bound.is_multiple_of(&g) {
                    return HPolytope::infeasible(self.dim);
                }
                for c in &mut out.coeffs {
                    *c = &*c / &g;
                }
                out.bound = &out.bound / &g;
            }
            // Canonical sign: first nonzero coefficient positive.
            if let Some(first) = out.coeffs.iter().find(|c| !c.is_zero()) {
                if first.is_negative() {
                    out = out.negated();
                }
            }
            eqs.push(out);
        }

        ineqs.sort();
        ineqs.dedup();
        eqs.sort();
        eqs.dedup();
        HPolytope {
            dim: self.dim,
            ineqs,
            eqs,
        }
    }

    /// The dilate `k·P` for `k ≥ 0`: every bound is multiplied by `k`,
    /// clearing denominators through the coefficients when `k` is not an
    /// integer. `dilate(P, 1) = P`.
    pub fn dilate(&self, k: &Rational) -> HPolytope {
        assert!(!k.is_negative(), "dilation factor must be nonnegative");
        let p = k.numer();
        let q = k.denom();
        let scale_row = |row: &LinearConstraint| -> LinearConstraint {
            let coeffs = if q == &Int::from(1) {
                row.coeffs.clone()
            } else {
                row.coeffs.iter().map(|c| c * q).collect()
            };
            LinearConstraint {
                coeffs,
                bound: &row.bound * p,
            }
        };
        HPolytope {
            dim: self.dim,
            ineqs: self.ineqs.iter().map(scale_row).collect(),
            eqs: self.eqs.iter().map(scale_row).collect(),
        }
    }

    /// Places this polytope into `target_dim` coordinates: source coordinate
    /// `j` goes to `placement[j]`, and every coordinate outside the image is
    /// pinned by the equality `x_t = 0`. Lattice points are in bijection
    /// with the original ones.
    pub fn coordinate_embed(
        &self,
        target_dim: usize,
        placement: &[usize],
    ) -> Result<HPolytope, EmbedError> {
        assert_eq!(placement.len(), self.dim);
        let mut placed = vec![false; target_dim];
        for &t in placement {
            if t >= target_dim || placed[t] {
                return Err(EmbedError::PlacementNotInjective);
            }
            placed[t] = true;
        }

        let scatter = |row: &LinearConstraint| -> LinearConstraint {
            let mut coeffs = vec![Int::zero(); target_dim];
            for (j, c) in row.coeffs.iter().enumerate() {
                coeffs[placement[j]] = c.clone();
            }
            LinearConstraint {
                coeffs,
                bound: row.bound.clone(),
            }
        };

        let mut out = HPolytope {
            dim: target_dim,
            ineqs: self.ineqs.iter().map(scatter).collect(),
            eqs: self.eqs.iter().map(scatter).collect(),
        };
        for (t, was_placed) in placed.iter().enumerate() {
            if !was_placed {
                let mut coeffs = vec![Int::zero(); target_dim];
                coeffs[t] = Int::from(1);
                out.eqs.push(LinearConstraint {
                    coeffs,
                    bound: Int::zero(),
                });
            }
        }
        Ok(out)
    }

    /// Cartesian product: `self` on the first coordinate block, `other` on
    /// the second.
    pub fn product(&self, other: &HPolytope) -> HPolytope {
        let dim = self.dim + other.dim;
        let left = |row: &LinearConstraint| -> LinearConstraint {
            let mut coeffs = row.coeffs.clone();
            coeffs.resize(dim, Int::zero());
            LinearConstraint {
                coeffs,
                bound: row.bound.clone(),
            }
        };
        let right = |row: &LinearConstraint| -> LinearConstraint {
            let mut coeffs = vec![Int::zero(); self.dim];
            coeffs.extend(row.coeffs.iter().cloned());
            LinearConstraint {
                coeffs,
                bound: row.bound.clone(),
            }
        };
        HPolytope {
            dim,
            ineqs: self
                .ineqs
                .iter()
                .map(left)
                .chain(other.ineqs.iter().map(right))
                .collect(),
            eqs: self
                .eqs
                .iter()
                .map(left)
                .chain(other.eqs.iter().map(right))
                .collect(),
        }
    }

    /// Translate by an integer vector: `P + shift`.
    pub fn translate(&self, shift: &[Int]) -> HPolytope {
        assert_eq!(shift.len(), self.dim);
        let move_row = |row: &LinearConstraint| -> LinearConstraint {
            LinearConstraint {
                coeffs: row.coeffs.clone(),
                bound: &row.bound + dot_int(&row.coeffs, shift),
            }
        };
        HPolytope {
            dim: self.dim,
            ineqs: self.ineqs.iter().map(move_row).collect(),
            eqs: self.eqs.iter().map(move_row).collect(),
        }
    }
}

/// Axis-aligned box `[lo₁, hi₁] × … × [lo_D, hi_D]` as an H-polytope.
pub fn int_box(bounds: &[(i64, i64)]) -> HPolytope {
    let dim = bounds.len();
    let mut out = HPolytope::universe(dim);
    for (j, &(lo, hi)) in bounds.iter().enumerate() {
        let mut up = vec![Int::zero(); dim];
        up[j] = Int::from(1);
        out.push_ineq(LinearConstraint::new(up.clone(), Int::from(hi)));
        up[j] = -Int::from(1);
        out.push_ineq(LinearConstraint::new(up, Int::from(-lo)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn ineq(coeffs: &[i64], bound: i64) -> LinearConstraint {
        LinearConstraint::from_i64(coeffs, bound)
    }

    #[test]
    fn normalize_gcd_scaling() {
        // {2x <= 4} -> {x <= 2}
        let p = HPolytope::new(1, vec![ineq(&[2], 4)], vec![]);
        let n = p.normalize();
        assert_eq!(n.ineqs(), &[ineq(&[1], 2)]);
    }

    #[test]
    fn normalize_integer_hull_rounding() {
        // {2x <= 3} -> {x <= 1}; same lattice points on the line.
        let p = HPolytope::new(1, vec![ineq(&[2], 3)], vec![]);
        let n = p.normalize();
        assert_eq!(n.ineqs(), &[ineq(&[1], 1)]);
        for x in -10i64..=10 {
            let point = [Int::from(x)];
            assert_eq!(p.contains_int(&point), n.contains_int(&point), "x = {x}");
        }
    }

    #[test]
    fn normalize_infeasible_marker() {
        let p = HPolytope::new(1, vec![ineq(&[0], -1)], vec![]);
        assert_eq!(p.normalize(), HPolytope::infeasible(1));
        // Equality with gcd not dividing the bound has no solutions at all.
        let p = HPolytope::new(1, vec![], vec![ineq(&[2], 3)]);
        assert_eq!(p.normalize(), HPolytope::infeasible(1));
    }

    #[test]
    fn normalize_idempotent_and_dedups() {
        let p = HPolytope::new(
            2,
            vec![
                ineq(&[2, 0], 4),
                ineq(&[1, 0], 2),
                ineq(&[0, 3], 3),
                ineq(&[0, 0], 5),
            ],
            vec![ineq(&[-1, 1], 0)],
        );
        let once = p.normalize();
        assert_eq!(once, once.normalize());
        assert_eq!(once.ineqs().len(), 2);
        // Equality got the canonical sign.
        assert_eq!(once.eqs(), &[ineq(&[1, -1], 0)]);
    }

    #[test]
    fn dilate_cube_and_identity() {
        let cube = int_box(&[(0, 1), (0, 1), (0, 1)]);
        let doubled = cube.dilate(&rat_int(2));
        assert_eq!(doubled, int_box(&[(0, 2), (0, 2), (0, 2)]));
        assert_eq!(cube.dilate(&rat_int(1)), cube);
    }

    #[test]
    fn dilate_composes() {
        let p = int_box(&[(0, 1), (-1, 2)]);
        let a = p.dilate(&rat_int(2)).dilate(&rat_int(3));
        let b = p.dilate(&rat_int(6));
        assert_eq!(a.normalize(), b.normalize());
    }

    #[test]
    fn dilate_rational_clears_denominators() {
        let p = HPolytope::new(1, vec![ineq(&[1], 2), ineq(&[-1], 0)], vec![]);
        let half = p.dilate(&rat(1, 2));
        // x <= 1 after clearing: 2x <= 2.
        assert!(half.contains_rational(&[rat_int(1)]));
        assert!(!half.contains_rational(&[rat(3, 2)]));
    }

    #[test]
    fn embed_segment_into_three_dims() {
        // 0 <= t <= 1 placed at coordinate 2 (zero-based index 1).
        let seg = int_box(&[(0, 1)]);
        let e = seg.coordinate_embed(3, &[1]).unwrap();
        assert!(e.contains_int(&[Int::from(0), Int::from(1), Int::from(0)]));
        assert!(!e.contains_int(&[Int::from(1), Int::from(0), Int::from(0)]));
        assert_eq!(e.eqs().len(), 2);
    }

    #[test]
    fn embed_identity_is_noop() {
        let p = int_box(&[(0, 2), (0, 1)]);
        let e = p.coordinate_embed(2, &[0, 1]).unwrap();
        assert_eq!(e, p);
    }

    #[test]
    fn embed_rejects_collisions() {
        let p = int_box(&[(0, 1), (0, 1)]);
        assert_eq!(
            p.coordinate_embed(3, &[1, 1]),
            Err(EmbedError::PlacementNotInjective)
        );
        assert_eq!(
            p.coordinate_embed(2, &[0, 2]),
            Err(EmbedError::PlacementNotInjective)
        );
    }

    #[test]
    fn product_blocks() {
        let seg = int_box(&[(0, 1)]);
        let square = seg.product(&seg);
        assert_eq!(square, int_box(&[(0, 1), (0, 1)]));

        let point = HPolytope::new(1, vec![], vec![ineq(&[1], 0)]);
        let prod = seg.product(&point);
        assert!(prod.contains_int(&[Int::from(1), Int::from(0)]));
        assert!(!prod.contains_int(&[Int::from(1), Int::from(1)]));
    }

    #[test]
    fn translate_shifts_bounds() {
        let seg = int_box(&[(0, 2)]);
        let moved = seg.translate(&[Int::from(5)]);
        assert!(moved.contains_int(&[Int::from(7)]));
        assert!(!moved.contains_int(&[Int::from(4)]));
    }
}
