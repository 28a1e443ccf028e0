//! Minkowski sums of embedded H-polytopes: membership with decomposition
//! certificates, explicit H-representations via projection, and lattice
//! counts of dilates.
//!
//! Sums are held intensionally as their summand list; the explicit H-rep is
//! an optional flattening (projection can blow up, membership never does).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Zero;

use crate::lattice::{self, Count, LatticeError};
use crate::lp::{self, LpError, LpStatus};
use crate::polytope::{HPolytope, LinearConstraint};
use crate::rational::{ceil_int, floor_int, Int, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinkowskiError {
    NoSummands,
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    EmptySummand {
        index: usize,
    },
}

impl fmt::Display for MinkowskiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinkowskiError::NoSummands => write!(f, "a sum needs at least one summand"),
            MinkowskiError::DimensionMismatch {
                index,
                expected,
                got,
            } => {
                write!(
                    f,
                    "summand {index} has dimension {got}, expected {expected}"
                )
            }
            MinkowskiError::EmptySummand { index } => {
                write!(f, "summand {index} is empty")
            }
        }
    }
}

impl core::error::Error for MinkowskiError {}

/// A Minkowski sum `P₁ + … + P_k` of nonempty polytopes in a common
/// ambient dimension.
#[derive(Clone, Debug)]
pub struct MinkowskiSpec {
    dim: usize,
    summands: Vec<HPolytope>,
}

impl MinkowskiSpec {
    /// Validates dimensions and nonemptiness (one feasibility LP each).
    pub fn new(dim: usize, summands: Vec<HPolytope>) -> Result<Self, MinkowskiError> {
        if summands.is_empty() {
            return Err(MinkowskiError::NoSummands);
        }
        for (index, s) in summands.iter().enumerate() {
            if s.dim() != dim {
                return Err(MinkowskiError::DimensionMismatch {
                    index,
                    expected: dim,
                    got: s.dim(),
                });
            }
            if lp::feasible(s).status != LpStatus::Feasible {
                return Err(MinkowskiError::EmptySummand { index });
            }
        }
        Ok(MinkowskiSpec { dim, summands })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn summands(&self) -> &[HPolytope] {
        &self.summands
    }

    /// Every summand dilated by `k`; `k·(ΣP_t) = Σ(kP_t)`.
    pub fn dilate(&self, k: &Rational) -> MinkowskiSpec {
        MinkowskiSpec {
            dim: self.dim,
            summands: self.summands.iter().map(|s| s.dilate(k)).collect(),
        }
    }

    /// The block system with one variable block per summand. With a target
    /// point the blocks are tied by `Σ_t x_t = p` (denominators cleared);
    /// without one, a free block `y` is appended and tied by `Σ_t x_t = y`.
    pub fn lifted_system(&self, target: Option<&[Rational]>) -> HPolytope {
        let k = self.summands.len();
        let block_dim = self.dim * k;
        let total_dim = if target.is_some() {
            block_dim
        } else {
            block_dim + self.dim
        };

        let mut out = HPolytope::universe(total_dim);
        for (t, summand) in self.summands.iter().enumerate() {
            let offset = t * self.dim;
            for row in summand.ineqs() {
                out.push_ineq(scatter(row, offset, total_dim));
            }
            for row in summand.eqs() {
                out.push_eq(scatter(row, offset, total_dim));
            }
        }
        for j in 0..self.dim {
            match target {
                Some(p) => {
                    debug_assert_eq!(p.len(), self.dim);
                    let denom = p[j].denom().clone();
                    let mut coeffs = vec![Int::zero(); total_dim];
                    for t in 0..k {
                        coeffs[t * self.dim + j] = denom.clone();
                    }
                    out.push_eq(LinearConstraint::new(coeffs, p[j].numer().clone()));
                }
                None => {
                    let mut coeffs = vec![Int::zero(); total_dim];
                    for t in 0..k {
                        coeffs[t * self.dim + j] = Int::from(1);
                    }
                    coeffs[block_dim + j] = -Int::from(1);
                    out.push_eq(LinearConstraint::new(coeffs, Int::zero()));
                }
            }
        }
        out
    }

    /// Exact membership of `p` in the sum; a positive answer comes with a
    /// decomposition `p = Σ x_t`, `x_t` in summand `t`.
    pub fn member(&self, p: &[Rational]) -> Option<Vec<Vec<Rational>>> {
        assert_eq!(p.len(), self.dim);
        let lifted = self.lifted_system(Some(p));
        let outcome = lp::feasible(&lifted);
        if outcome.status != LpStatus::Feasible {
            return None;
        }
        let witness = outcome.witness.expect("feasible outcome has a witness");
        let parts: Vec<Vec<Rational>> = witness
            .chunks(self.dim)
            .take(self.summands.len())
            .map(|c| c.to_vec())
            .collect();
        debug_assert!(parts
            .iter()
            .zip(&self.summands)
            .all(|(part, summand)| summand.contains_rational(part)));
        parts.into()
    }

    /// Irredundant H-representation of the sum: project the lifted system
    /// onto the `y` block, then drop redundant rows. Fails with
    /// `DimensionOverflow` when projection exceeds `row_cap` (counting can
    /// still proceed through [`MinkowskiSpec::member`]).
    pub fn explicit_hrep(&self, row_cap: usize) -> Result<HPolytope, LpError> {
        let lifted = self.lifted_system(None);
        let block_dim = self.dim * self.summands.len();
        let keep: Vec<usize> = (block_dim..block_dim + self.dim).collect();
        let projected = lp::fm_project(&lifted, &keep, row_cap)?;
        lp::remove_redundant(&projected)
    }

    /// Lattice count of `k·(Σ P_t)`: through the explicit H-rep when the
    /// projection fits the row cap, otherwise by scanning the bounding box
    /// of the dilated sum with per-point membership LPs.
    pub fn count_sum(&self, k: u32, row_cap: usize) -> Result<Count, LatticeError> {
        match self.explicit_hrep(row_cap) {
            Ok(hrep) => {
                let dilated = hrep.dilate(&Rational::from_integer(Int::from(k)));
                lattice::count_lattice_points(&dilated, row_cap)
            }
            Err(LpError::DimensionOverflow { .. }) => self
                .dilate(&Rational::from_integer(Int::from(k)))
                .count_by_membership(),
            Err(LpError::EmptyInput) => Ok(0),
        }
    }

    /// Box-scan counting driven by membership LPs only.
    fn count_by_membership(&self) -> Result<Count, LatticeError> {
        // The box of a sum is the componentwise sum of the summand boxes.
        let mut lo = vec![Rational::zero(); self.dim];
        let mut hi = vec![Rational::zero(); self.dim];
        for summand in &self.summands {
            let bounds = lattice::bounding_box(summand)?;
            for (j, (l, h)) in bounds.into_iter().enumerate() {
                lo[j] += l;
                hi[j] += h;
            }
        }
        let ranges: Vec<(Int, Int)> = lo
            .iter()
            .zip(&hi)
            .map(|(l, h)| (ceil_int(l), floor_int(h)))
            .collect();
        if ranges.iter().any(|(l, h)| l > h) {
            return Ok(0);
        }
        let mut point: Vec<Int> = ranges.iter().map(|(l, _)| l.clone()).collect();
        let mut total: Count = 0;
        'scan: loop {
            let rational: Vec<Rational> = point
                .iter()
                .map(|v| Rational::from_integer(v.clone()))
                .collect();
            if self.member(&rational).is_some() {
                total = total.checked_add(1).ok_or(LatticeError::CountOverflow)?;
            }
            for j in (0..point.len()).rev() {
                if point[j] < ranges[j].1 {
                    point[j] += Int::from(1);
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
}

fn scatter(row: &LinearConstraint, offset: usize, total_dim: usize) -> LinearConstraint {
    let mut coeffs = vec![Int::zero(); total_dim];
    for (j, c) in row.coeffs.iter().enumerate() {
        if !c.is_zero() {
            coeffs[offset + j] = c.clone();
        }
    }
    LinearConstraint::new(coeffs, row.bound.clone())
}
