//! Exact rational linear programming.
//!
//! A dense two-phase primal simplex over [`Rational`] with Bland's
//! anti-cycling pivot rule: termination is guaranteed and every answer is
//! exact. Free variables are split as `x = u - v`; a full artificial basis
//! drives phase one. On top of the solver sit the redundancy filter and
//! Fourier–Motzkin projection with interleaved pruning.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::polytope::{HPolytope, LinearConstraint};
use crate::rational::{Int, Rational};

/// Default cap on intermediate constraint rows during projection.
pub const DEFAULT_FM_ROW_CAP: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LpStatus {
    Feasible,
    Infeasible,
    Unbounded,
}

/// Outcome of a feasibility or optimization query. A feasible outcome always
/// carries an exact witness point; `optimum` is present only for bounded
/// optimization.
#[derive(Clone, Debug)]
pub struct LpOutcome {
    pub status: LpStatus,
    pub witness: Option<Vec<Rational>>,
    pub optimum: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpError {
    /// `remove_redundant` was handed an infeasible system.
    EmptyInput,
    /// Intermediate row count exceeded the configured cap.
    DimensionOverflow { rows: usize, cap: usize },
}

impl fmt::Display for LpError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LpError::EmptyInput => write!(f, "input polytope is empty"),
            LpError::DimensionOverflow { rows, cap } => {
                write!(f, "projection exceeded the row cap ({rows} rows > {cap})")
            }
        }
    }
}

impl core::error::Error for LpError {}

// ---------------------------------------------------------------------------
// Simplex core
// ---------------------------------------------------------------------------

struct Tableau {
    /// `rows[i]` has `ncols` structural/slack/artificial entries plus the
    /// right-hand side at index `ncols`.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn rhs(&self, i: usize) -> &Rational {
        &self.rows[i][self.ncols]
    }

    /// Pivot on `(row, col)`: row is scaled to make the pivot 1, then the
    /// column is eliminated from every other row and from `obj`.
    fn pivot(&mut self, row: usize, col: usize, obj: &mut [Rational], value: &mut Rational) {
        let pivot = self.rows[row][col].clone();
        debug_assert!(!pivot.is_zero());
        if !pivot.is_one() {
            for entry in self.rows[row].iter_mut() {
                if !entry.is_zero() {
                    *entry /= &pivot;
                }
            }
        }
        let pivot_row = self.rows[row].clone();
        for (i, r) in self.rows.iter_mut().enumerate() {
            if i == row || r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for (entry, p) in r.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *entry -= &factor * p;
                }
            }
            r[col] = Rational::zero();
        }
        if !obj[col].is_zero() {
            let factor = obj[col].clone();
            for (entry, p) in obj.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *entry -= &factor * p;
                }
            }
            *value += &factor * &pivot_row[self.ncols];
            obj[col] = Rational::zero();
        }
        self.basis[row] = col;
    }

    /// Maximizes the objective encoded in `obj` (reduced costs) with Bland's
    /// rule. Returns `false` when an improving column is unbounded.
    fn run(&mut self, obj: &mut [Rational], value: &mut Rational, col_limit: usize) -> bool {
        loop {
            // Bland: smallest improving column index.
            let Some(entering) = (0..col_limit).find(|&j| obj[j].is_positive()) else {
                return true;
            };
            let mut leaving: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let coeff = &self.rows[i][entering];
                if !coeff.is_positive() {
                    continue;
                }
                let ratio = self.rhs(i) / coeff;
                let better = match &leaving {
                    None => true,
                    Some((best_i, best)) => {
                        ratio < *best || (ratio == *best && self.basis[i] < self.basis[*best_i])
                    }
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            let Some((row, _)) = leaving else {
                return false;
            };
            self.pivot(row, entering, obj, value);
        }
    }
}

/// Solves `maximize c·x` over `p` (`c = None` asks feasibility only).
fn solve(p: &HPolytope, c: Option<&[Rational]>) -> LpOutcome {
    let dim = p.dim();
    let rows: Vec<(&LinearConstraint, bool)> = p
        .ineqs()
        .iter()
        .map(|r| (r, true))
        .chain(p.eqs().iter().map(|r| (r, false)))
        .collect();
    let m = rows.len();

    // Columns for variables that actually occur (in a row or the objective);
    // absent variables are free and take witness value 0.
    let mut active = vec![false; dim];
    for (row, _) in &rows {
        for (j, coeff) in row.coeffs.iter().enumerate() {
            if !coeff.is_zero() {
                active[j] = true;
            }
        }
    }
    if let Some(c) = c {
        for (j, coeff) in c.iter().enumerate() {
            if !coeff.is_zero() {
                active[j] = true;
            }
        }
    }
    let mut var_cols: Vec<Option<usize>> = vec![None; dim];
    let mut ncols = 0;
    for j in 0..dim {
        if active[j] {
            var_cols[j] = Some(ncols); // u at ncols, v at ncols + 1
            ncols += 2;
        }
    }
    let slack_base = ncols;
    let n_slacks = p.ineqs().len();
    ncols += n_slacks;
    let struct_cols = ncols;
    let art_base = ncols;
    ncols += m;

    let mut tableau = Tableau {
        rows: Vec::with_capacity(m),
        basis: (0..m).map(|i| art_base + i).collect(),
        ncols,
    };
    for (i, (row, is_ineq)) in rows.iter().enumerate() {
        let mut data = vec![Rational::zero(); ncols + 1];
        let flip = row.bound.is_negative();
        for (j, coeff) in row.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let value = Rational::from_integer(if flip { -coeff } else { coeff.clone() });
            let col = var_cols[j].expect("active variable has columns");
            data[col] = value.clone();
            data[col + 1] = -value;
        }
        if *is_ineq {
            data[slack_base + i] = if flip {
                -Rational::one()
            } else {
                Rational::one()
            };
        }
        data[art_base + i] = Rational::one();
        data[ncols] = Rational::from_integer(if flip {
            -row.bound.clone()
        } else {
            row.bound.clone()
        });
        tableau.rows.push(data);
    }

    // Phase one: maximize -(sum of artificials). With the artificial basis,
    // the reduced cost of column j is the column sum over all rows.
    let mut obj = vec![Rational::zero(); ncols + 1];
    let mut value = Rational::zero();
    for row in &tableau.rows {
        for j in 0..struct_cols {
            if !row[j].is_zero() {
                obj[j] += &row[j];
            }
        }
        value -= &row[ncols];
    }
    tableau.run(&mut obj, &mut value, struct_cols);
    if value.is_negative() {
        return LpOutcome {
            status: LpStatus::Infeasible,
            witness: None,
            optimum: None,
        };
    }

    // Drive leftover artificials out of the basis; an all-zero pivot row is a
    // redundant constraint and can be ignored (its artificial stays at zero).
    for i in 0..tableau.rows.len() {
        if tableau.basis[i] < art_base {
            continue;
        }
        if let Some(col) = (0..struct_cols).find(|&j| !tableau.rows[i][j].is_zero()) {
            let mut dummy_value = Rational::zero();
            tableau.pivot(i, col, &mut obj, &mut dummy_value);
        }
    }

    let witness = |tableau: &Tableau| -> Vec<Rational> {
        let mut cols = vec![Rational::zero(); struct_cols];
        for (i, &b) in tableau.basis.iter().enumerate() {
            if b < struct_cols {
                cols[b] = tableau.rhs(i).clone();
            }
        }
        (0..dim)
            .map(|j| match var_cols[j] {
                Some(col) => &cols[col] - &cols[col + 1],
                None => Rational::zero(),
            })
            .collect()
    };

    let Some(c) = c else {
        return LpOutcome {
            status: LpStatus::Feasible,
            witness: Some(witness(&tableau)),
            optimum: None,
        };
    };

    // Phase two: reduced costs of the real objective under the current basis.
    let mut obj = vec![Rational::zero(); ncols + 1];
    for (j, col) in var_cols.iter().enumerate() {
        if let Some(col) = *col {
            if !c[j].is_zero() {
                obj[col] = c[j].clone();
                obj[col + 1] = -c[j].clone();
            }
        }
    }
    let mut value = Rational::zero();
    for i in 0..tableau.rows.len() {
        let b = tableau.basis[i];
        if b < struct_cols && !obj[b].is_zero() {
            let factor = obj[b].clone();
            let row = tableau.rows[i].clone();
            for (entry, p) in obj.iter_mut().zip(&row) {
                if !p.is_zero() {
                    *entry -= &factor * p;
                }
            }
            value += &factor * &row[ncols];
            obj[b] = Rational::zero();
        }
    }
    if !tableau.run(&mut obj, &mut value, struct_cols) {
        return LpOutcome {
            status: LpStatus::Unbounded,
            witness: None,
            optimum: None,
        };
    }
    LpOutcome {
        status: LpStatus::Feasible,
        witness: Some(witness(&tableau)),
        optimum: Some(value),
    }
}

// ---------------------------------------------------------------------------
// Public operations
// ---------------------------------------------------------------------------

/// Exact feasibility with witness.
pub fn feasible(p: &HPolytope) -> LpOutcome {
    solve(p, None)
}

/// Exact maximization of the integer functional `c·x` over `p`.
pub fn maximize(c: &[Int], p: &HPolytope) -> LpOutcome {
    let c: Vec<Rational> = c
        .iter()
        .map(|v| Rational::from_integer(v.clone()))
        .collect();
    solve(p, Some(&c))
}

/// Maximization with a rational objective (used internally).
pub fn maximize_rational(c: &[Rational], p: &HPolytope) -> LpOutcome {
    solve(p, Some(c))
}

/// Drops every inequality that never cuts: `a·x ≤ b` is redundant iff
/// maximizing `a·x` over the remaining rows (equalities always kept) stays
/// within `b`, or the remaining system is infeasible. Rows are processed in
/// order and removals are permanent, so the survivors form an irredundant
/// subsystem describing the same point set.
pub fn remove_redundant(p: &HPolytope) -> Result<HPolytope, LpError> {
    if feasible(p).status != LpStatus::Feasible {
        return Err(LpError::EmptyInput);
    }
    let mut kept: Vec<LinearConstraint> = p.ineqs().to_vec();
    let mut idx = 0;
    while idx < kept.len() {
        let candidate = kept.remove(idx);
        let trial = HPolytope::new(p.dim(), kept.clone(), p.eqs().to_vec());
        let outcome = maximize(&candidate.coeffs, &trial);
        let redundant = match outcome.status {
            LpStatus::Feasible => {
                outcome.optimum.expect("bounded maximize has an optimum")
                    <= Rational::from_integer(candidate.bound.clone())
            }
            LpStatus::Infeasible => true,
            LpStatus::Unbounded => false,
        };
        if !redundant {
            kept.insert(idx, candidate);
            idx += 1;
        }
    }
    Ok(HPolytope::new(p.dim(), kept, p.eqs().to_vec()))
}

// ---------------------------------------------------------------------------
// Fourier–Motzkin projection
// ---------------------------------------------------------------------------

struct FmSystem {
    dim: usize,
    ineqs: Vec<LinearConstraint>,
    eqs: Vec<LinearConstraint>,
}

impl FmSystem {
    fn as_polytope(&self) -> HPolytope {
        HPolytope::new(self.dim, self.ineqs.clone(), self.eqs.clone())
    }

    /// Drops trivially true rows; reports `false` when a row is syntactically
    /// infeasible (zero coefficients with an impossible bound).
    fn tidy(&mut self) -> bool {
        let mut ok = true;
        self.ineqs.retain(|r| {
            if r.is_zero_row() {
                if r.bound.is_negative() {
                    ok = false;
                }
                false
            } else {
                true
            }
        });
        self.eqs.retain(|r| {
            if r.is_zero_row() {
                if !r.bound.is_zero() {
                    ok = false;
                }
                false
            } else {
                true
            }
        });
        if !ok {
            return false;
        }
        self.ineqs.sort();
        self.ineqs.dedup();
        // Parallel rows with the same coefficients: keep the tightest bound.
        self.ineqs.dedup_by(|next, prev| {
            if next.coeffs == prev.coeffs {
                // Sorted by (coeffs, bound), so prev.bound <= next.bound.
                true
            } else {
                false
            }
        });
        self.eqs.sort();
        self.eqs.dedup();
        true
    }

    /// Substitutes the pivot equality into every other row to eliminate
    /// variable `var`. Inequalities are combined with a positive multiple of
    /// themselves, so directions are preserved.
    fn substitute_eq(&mut self, pivot: LinearConstraint, var: usize) {
        let pivot_coeff = pivot.coeffs[var].clone();
        debug_assert!(!pivot_coeff.is_zero());
        let scale = pivot_coeff.abs();
        let sign = if pivot_coeff.is_negative() {
            -Int::one()
        } else {
            Int::one()
        };
        let combine = |row: &LinearConstraint| -> LinearConstraint {
            let row_coeff = &row.coeffs[var];
            if row_coeff.is_zero() {
                return row.clone();
            }
            let t = &sign * row_coeff;
            let mut out = LinearConstraint {
                coeffs: row
                    .coeffs
                    .iter()
                    .zip(&pivot.coeffs)
                    .map(|(r, p)| r * &scale - &t * p)
                    .collect(),
                bound: &row.bound * &scale - &t * &pivot.bound,
            };
            debug_assert!(out.coeffs[var].is_zero());
            out.reduce_real();
            out
        };
        self.ineqs = self.ineqs.iter().map(combine).collect();
        self.eqs = self.eqs.iter().map(combine).collect();
    }

    /// Classic pairwise elimination of `var` from the inequalities.
    fn combine_ineqs(&mut self, var: usize, cap: usize) -> Result<(), LpError> {
        let mut zero_rows = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for row in self.ineqs.drain(..) {
            match row.coeffs[var].sign() {
                num_bigint::Sign::NoSign => zero_rows.push(row),
                num_bigint::Sign::Plus => pos.push(row),
                num_bigint::Sign::Minus => neg.push(row),
            }
        }
        let expected = zero_rows.len() + pos.len() * neg.len();
        if expected + self.eqs.len() > cap {
            return Err(LpError::DimensionOverflow {
                rows: expected + self.eqs.len(),
                cap,
            });
        }
        let mut out = zero_rows;
        for p_row in &pos {
            let a = &p_row.coeffs[var];
            for q_row in &neg {
                let c_abs = q_row.coeffs[var].abs();
                let mut row = LinearConstraint {
                    coeffs: p_row
                        .coeffs
                        .iter()
                        .zip(&q_row.coeffs)
                        .map(|(pc, qc)| pc * &c_abs + a * qc)
                        .collect(),
                    bound: &p_row.bound * &c_abs + a * &q_row.bound,
                };
                debug_assert!(row.coeffs[var].is_zero());
                row.reduce_real();
                out.push(row);
            }
        }
        self.ineqs = out;
        Ok(())
    }

    /// LP-based pruning of the inequality list (the system is known
    /// feasible: projections of a nonempty set stay nonempty).
    fn prune(&mut self) {
        if self.ineqs.len() <= 16 {
            return;
        }
        let pruned = remove_redundant(&self.as_polytope())
            .expect("pruned system stays feasible during projection");
        self.ineqs = pruned.ineqs().to_vec();
    }
}

/// H-representation of the orthogonal projection of `p` onto the kept
/// coordinates (result coordinates follow the original order). Equalities
/// are used for substitution first; each genuine elimination is followed by
/// redundancy pruning. Fails with `DimensionOverflow` if an intermediate
/// system would exceed `row_cap` rows.
pub fn fm_project(p: &HPolytope, keep: &[usize], row_cap: usize) -> Result<HPolytope, LpError> {
    assert!(!keep.is_empty(), "keep set must be nonempty");
    let mut keep: Vec<usize> = keep.to_vec();
    keep.sort_unstable();
    keep.dedup();
    assert!(
        *keep.last().unwrap() < p.dim(),
        "keep indices must be in range"
    );

    let project_cols = |sys: &FmSystem, keep: &[usize]| -> HPolytope {
        let shrink = |row: &LinearConstraint| LinearConstraint {
            coeffs: keep.iter().map(|&j| row.coeffs[j].clone()).collect(),
            bound: row.bound.clone(),
        };
        HPolytope::new(
            keep.len(),
            sys.ineqs.iter().map(shrink).collect(),
            sys.eqs.iter().map(shrink).collect(),
        )
    };

    if feasible(p).status != LpStatus::Feasible {
        return Ok(HPolytope::infeasible(keep.len()));
    }

    let mut sys = FmSystem {
        dim: p.dim(),
        ineqs: p.ineqs().to_vec(),
        eqs: p.eqs().to_vec(),
    };
    if !sys.tidy() {
        return Ok(HPolytope::infeasible(keep.len()));
    }

    let mut to_eliminate: Vec<usize> = (0..p.dim())
        .filter(|j| keep.binary_search(j).is_err())
        .collect();

    while !to_eliminate.is_empty() {
        // Prefer equality substitutions; otherwise eliminate the variable
        // with the smallest positive*negative fan-out.
        let mut choice: Option<(usize, usize)> = None;
        for (slot, &var) in to_eliminate.iter().enumerate() {
            if self_eq_with_var(&sys.eqs, var).is_some() {
                choice = Some((slot, var));
                break;
            }
        }
        let (slot, var, via_eq) = match choice {
            Some((slot, var)) => (slot, var, true),
            None => {
                let (slot, var) = to_eliminate
                    .iter()
                    .copied()
                    .enumerate()
                    .min_by_key(|&(_, var)| {
                        let pos = sys
                            .ineqs
                            .iter()
                            .filter(|r| r.coeffs[var].is_positive())
                            .count();
                        let neg = sys
                            .ineqs
                            .iter()
                            .filter(|r| r.coeffs[var].is_negative())
                            .count();
                        (pos * neg, var)
                    })
                    .expect("elimination set is nonempty");
                (slot, var, false)
            }
        };
        to_eliminate.swap_remove(slot);

        if via_eq {
            let pivot_idx = self_eq_with_var(&sys.eqs, var).expect("pivot equality exists");
            let pivot = sys.eqs.swap_remove(pivot_idx);
            sys.substitute_eq(pivot, var);
        } else {
            sys.combine_ineqs(var, row_cap)?;
        }
        if !sys.tidy() {
            return Ok(HPolytope::infeasible(keep.len()));
        }
        if sys.ineqs.len() + sys.eqs.len() > row_cap {
            return Err(LpError::DimensionOverflow {
                rows: sys.ineqs.len() + sys.eqs.len(),
                cap: row_cap,
            });
        }
        if !via_eq {
            sys.prune();
        }
    }

    Ok(project_cols(&sys, &keep))
}

/// Index of an equality with the smallest nonzero coefficient magnitude on
/// `var`, if any.
fn self_eq_with_var(eqs: &[LinearConstraint], var: usize) -> Option<usize> {
    let mut best: Option<(usize, Int)> = None;
    for (i, row) in eqs.iter().enumerate() {
        let c = row.coeffs[var].abs();
        if c.is_zero() {
            continue;
        }
        let better = match &best {
            None => true,
            Some((_, b)) => c < *b,
        };
        if better {
            best = Some((i, c));
        }
    }
    best.map(|(i, _)| i)
}

/// The affine dimension of a nonempty polytope: ambient dimension minus the
/// rank of the stated equalities together with the implied ones (inequality
/// rows that are tight on the whole set).
pub fn affine_dim(p: &HPolytope) -> Option<usize> {
    if feasible(p).status != LpStatus::Feasible {
        return None;
    }
    let mut normals: Vec<Vec<Rational>> = Vec::new();
    for row in p.eqs() {
        normals.push(
            row.coeffs
                .iter()
                .map(|c| Rational::from_integer(c.clone()))
                .collect(),
        );
    }
    for row in p.ineqs() {
        // Tight everywhere iff the minimum of a·x already equals b.
        let neg: Vec<Int> = row.coeffs.iter().map(|c| -c).collect();
        let outcome = maximize(&neg, p);
        if outcome.status == LpStatus::Feasible
            && outcome.optimum == Some(Rational::from_integer(-row.bound.clone()))
        {
            normals.push(
                row.coeffs
                    .iter()
                    .map(|c| Rational::from_integer(c.clone()))
                    .collect(),
            );
        }
    }
    Some(p.dim() - rank_rational(normals))
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank_rational(mut rows: Vec<Vec<Rational>>) -> usize {
    let mut rank = 0;
    let width = rows.first().map_or(0, Vec::len);
    for col in 0..width {
        let Some(pivot_row) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot_row);
        let pivot = rows[rank][col].clone();
        for i in 0..rows.len() {
            if i == rank || rows[i][col].is_zero() {
                continue;
            }
            let factor = &rows[i][col] / &pivot;
            let pivot_row = rows[rank].clone();
            for (entry, p) in rows[i][col..width].iter_mut().zip(&pivot_row[col..width]) {
                let delta = &factor * p;
                *entry -= delta;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Certified containment `p ⊆ q`: every constraint of `q` is satisfied by
/// the whole of `p` (checked by one LP per row).
pub fn contains_polytope(q: &HPolytope, p: &HPolytope) -> bool {
    if feasible(p).status != LpStatus::Feasible {
        return true;
    }
    for row in q.ineqs() {
        let outcome = maximize(&row.coeffs, p);
        match outcome.status {
            LpStatus::Feasible => {
                if outcome.optimum.expect("bounded optimum")
                    > Rational::from_integer(row.bound.clone())
                {
                    return false;
                }
            }
            _ => return false,
        }
    }
    for row in q.eqs() {
        for candidate in [row.clone(), row.negated()] {
            let outcome = maximize(&candidate.coeffs, p);
            match outcome.status {
                LpStatus::Feasible => {
                    if outcome.optimum.expect("bounded optimum")
                        > Rational::from_integer(candidate.bound.clone())
                    {
                        return false;
                    }
                }
                _ => return false,
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::int_box;
    use crate::rational::{rat, rat_int};

    fn ineq(coeffs: &[i64], bound: i64) -> LinearConstraint {
        LinearConstraint::from_i64(coeffs, bound)
    }

    fn check_witness(p: &HPolytope, outcome: &LpOutcome) {
        let w = outcome
            .witness
            .as_ref()
            .expect("feasible outcome has witness");
        assert!(
            p.contains_rational(w),
            "witness must satisfy every constraint exactly"
        );
    }

    #[test]
    fn feasible_unit_interval() {
        let p = int_box(&[(0, 1)]);
        let out = feasible(&p);
        assert_eq!(out.status, LpStatus::Feasible);
        check_witness(&p, &out);
    }

    #[test]
    fn infeasible_pair() {
        // x >= 1 and x <= 0.
        let p = HPolytope::new(
            1,
            alloc::vec![ineq(&[-1], -1), ineq(&[1], 0)],
            alloc::vec![],
        );
        assert_eq!(feasible(&p).status, LpStatus::Infeasible);
    }

    #[test]
    fn maximize_unit_square() {
        let p = int_box(&[(0, 1), (0, 1)]);
        let out = maximize(&[Int::from(1), Int::from(1)], &p);
        assert_eq!(out.status, LpStatus::Feasible);
        assert_eq!(out.optimum, Some(rat_int(2)));
        check_witness(&p, &out);
    }

    #[test]
    fn maximize_unbounded() {
        // x >= 0 only.
        let p = HPolytope::new(1, alloc::vec![ineq(&[-1], 0)], alloc::vec![]);
        let out = maximize(&[Int::from(1)], &p);
        assert_eq!(out.status, LpStatus::Unbounded);
    }

    #[test]
    fn maximize_with_equalities() {
        // x + y = 3, 0 <= x <= 2, 0 <= y <= 2; maximize x.
        let p = HPolytope::new(
            2,
            alloc::vec![
                ineq(&[1, 0], 2),
                ineq(&[-1, 0], 0),
                ineq(&[0, 1], 2),
                ineq(&[0, -1], 0)
            ],
            alloc::vec![ineq(&[1, 1], 3)],
        );
        let out = maximize(&[Int::from(1), Int::from(0)], &p);
        assert_eq!(out.optimum, Some(rat_int(2)));
        check_witness(&p, &out);
    }

    #[test]
    fn maximize_fractional_vertex() {
        // x + 2y <= 1, 2x + y <= 1, x,y >= 0: max x+y at (1/3, 1/3).
        let p = HPolytope::new(
            2,
            alloc::vec![
                ineq(&[1, 2], 1),
                ineq(&[2, 1], 1),
                ineq(&[-1, 0], 0),
                ineq(&[0, -1], 0)
            ],
            alloc::vec![],
        );
        let out = maximize(&[Int::from(1), Int::from(1)], &p);
        assert_eq!(out.optimum, Some(rat(2, 3)));
        check_witness(&p, &out);
    }

    #[test]
    fn redundant_row_removed() {
        // Unit square plus x <= 2.
        let mut p = int_box(&[(0, 1), (0, 1)]);
        p.push_ineq(ineq(&[1, 0], 2));
        let r = remove_redundant(&p).unwrap();
        assert_eq!(r.ineqs().len(), 4);
        assert!(!r.ineqs().contains(&ineq(&[1, 0], 2)));
    }

    #[test]
    fn irredundant_system_unchanged() {
        let p = int_box(&[(0, 1), (0, 1)]);
        let r = remove_redundant(&p).unwrap();
        assert_eq!(r.ineqs().len(), 4);
    }

    #[test]
    fn remove_redundant_rejects_empty() {
        let p = HPolytope::infeasible(2);
        assert_eq!(remove_redundant(&p), Err(LpError::EmptyInput));
    }

    #[test]
    fn implied_equality_pair_survives() {
        // x <= 0 and -x <= 0 jointly pin x = 0; neither row is droppable.
        let p = HPolytope::new(
            2,
            alloc::vec![
                ineq(&[1, 0], 0),
                ineq(&[-1, 0], 0),
                ineq(&[0, 1], 1),
                ineq(&[0, -1], 0)
            ],
            alloc::vec![],
        );
        let r = remove_redundant(&p).unwrap();
        assert_eq!(r.ineqs().len(), 4);
    }

    #[test]
    fn project_triangle_to_axis() {
        // {0<=x<=1, 0<=y<=1, x+y<=1} keep {x} -> {0 <= x <= 1}.
        let mut p = int_box(&[(0, 1), (0, 1)]);
        p.push_ineq(ineq(&[1, 1], 1));
        let q = fm_project(&p, &[0], DEFAULT_FM_ROW_CAP)
            .unwrap()
            .normalize();
        assert_eq!(q, int_box(&[(0, 1)]).normalize());
    }

    #[test]
    fn project_product_recovers_factor() {
        let p = int_box(&[(0, 2), (1, 3)]);
        let q = int_box(&[(-1, 1)]);
        let prod = p.product(&q);
        let back = fm_project(&prod, &[0, 1], DEFAULT_FM_ROW_CAP)
            .unwrap()
            .normalize();
        assert_eq!(back, p.normalize());
    }

    #[test]
    fn project_uses_equalities_first() {
        // x = y, 0 <= y <= 2, project to x: [0, 2].
        let p = HPolytope::new(
            2,
            alloc::vec![ineq(&[0, 1], 2), ineq(&[0, -1], 0)],
            alloc::vec![ineq(&[1, -1], 0)],
        );
        let q = fm_project(&p, &[0], DEFAULT_FM_ROW_CAP)
            .unwrap()
            .normalize();
        assert_eq!(q, int_box(&[(0, 2)]).normalize());
    }

    #[test]
    fn project_empty_is_empty() {
        let p = HPolytope::new(
            1,
            alloc::vec![ineq(&[1], -1), ineq(&[-1], 0)],
            alloc::vec![],
        );
        let prod = p.product(&int_box(&[(0, 5)]));
        let q = fm_project(&prod, &[1], DEFAULT_FM_ROW_CAP).unwrap();
        assert_eq!(feasible(&q).status, LpStatus::Infeasible);
    }

    #[test]
    fn row_cap_triggers() {
        // A random-ish dense system where one elimination fans out past the cap.
        let mut p = int_box(&[(0, 3), (0, 3), (0, 3)]);
        for a in -2i64..=2 {
            for b in -2i64..=2 {
                if (a, b) != (0, 0) {
                    p.push_ineq(ineq(&[a, b, 1], 6));
                    p.push_ineq(ineq(&[a, b, -1], 6));
                }
            }
        }
        let err = fm_project(&p, &[0], 10).unwrap_err();
        assert!(matches!(err, LpError::DimensionOverflow { .. }));
    }

    #[test]
    fn affine_dim_detects_flats() {
        let square = int_box(&[(0, 1), (0, 1)]);
        assert_eq!(affine_dim(&square), Some(2));
        // Segment embedded by equality.
        let p = HPolytope::new(
            2,
            alloc::vec![ineq(&[1, 0], 1), ineq(&[-1, 0], 0)],
            alloc::vec![ineq(&[0, 1], 0)],
        );
        assert_eq!(affine_dim(&p), Some(1));
        // Implied equality from an inequality pair.
        let p = HPolytope::new(
            2,
            alloc::vec![
                ineq(&[1, 0], 1),
                ineq(&[-1, 0], 0),
                ineq(&[0, 1], 0),
                ineq(&[0, -1], 0)
            ],
            alloc::vec![],
        );
        assert_eq!(affine_dim(&p), Some(1));
        assert_eq!(affine_dim(&HPolytope::infeasible(2)), None);
    }

    #[test]
    fn containment_certificates() {
        let small = int_box(&[(0, 1), (0, 1)]);
        let big = int_box(&[(0, 2), (0, 2)]);
        assert!(contains_polytope(&big, &small));
        assert!(!contains_polytope(&small, &big));
    }
}
