//! The triangular coordinate table, Dyck paths, and the polytope they cut
//! out of a dominant weight, together with its embedding into the common
//! ambient space.
//!
//! For rank `m` the table has rows `l = 1..m-1`, row `l` holding the
//! coordinates `u^l_1, …, u^l_{m-l}` (so position `(l, c)` is valid iff
//! `l + c ≤ m`). The canonical ambient order is row-major:
//! `(u¹₁, …, u¹_{m-1}; u²₁, …, u²_{m-2}; …; u^{m-1}₁)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::polytope::{HPolytope, LinearConstraint};
use crate::rational::Int;
use crate::weight::Weight;

/// Position `(row l, column c)` in the triangular table, one-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TablePosition {
    pub row: usize,
    pub col: usize,
}

impl TablePosition {
    pub fn new(row: usize, col: usize) -> Self {
        TablePosition { row, col }
    }
}

/// A path from `(1, i)` to `(1, j-1)` whose steps either extend down the
/// column, `(l, c) → (l+1, c)`, or shift up-right, `(l, c) → (l-1, c+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyckPath {
    pub endpoints: (usize, usize),
    pub positions: Vec<TablePosition>,
}

/// Ambient coordinate bookkeeping for rank `n`: the table above with
/// `d = n(n-1)/2` coordinates, together with the factor subspace dimensions
/// `d_i = (n-i+1)(n-i)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AmbientFrame {
    pub n: usize,
}

impl AmbientFrame {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "rank must be at least 2");
        AmbientFrame { n }
    }

    pub fn dim(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// Dimension of the factor-`i` subspace, `1 ≤ i ≤ n-1`.
    pub fn factor_dim(&self, i: usize) -> usize {
        let m = self.n - i + 1;
        m * (m - 1) / 2
    }

    /// Row-major ambient index of table position `(l, c)`.
    pub fn index(&self, pos: TablePosition) -> usize {
        debug_assert!(pos.row >= 1 && pos.col >= 1 && pos.row + pos.col <= self.n);
        let before: usize = (1..pos.row).map(|r| self.n - r).sum();
        before + pos.col - 1
    }

    /// Inverse of [`AmbientFrame::index`].
    pub fn position(&self, mut index: usize) -> TablePosition {
        for row in 1..self.n {
            let width = self.n - row;
            if index < width {
                return TablePosition::new(row, index + 1);
            }
            index -= width;
        }
        panic!("ambient index out of range");
    }

    /// Coordinate labels `u^l_c` (or any other letter) in ambient order.
    pub fn labels(&self, letter: char) -> Vec<String> {
        (0..self.dim())
            .map(|idx| {
                let pos = self.position(idx);
                alloc::format!("{letter}^{}_{}", pos.row, pos.col)
            })
            .collect()
    }

    /// The column-shift placement used by the factor-`i` embeddings:
    /// intrinsic `(l, c)` goes to ambient `(l, c + i - 1)`. Returns the
    /// ambient index for each intrinsic index in row-major order.
    pub fn factor_placement(&self, i: usize) -> Vec<usize> {
        assert!((1..self.n).contains(&i), "factor index out of range");
        let m = self.n - i + 1;
        let inner = AmbientFrame::new(m);
        (0..inner.dim())
            .map(|idx| {
                let pos = inner.position(idx);
                self.index(TablePosition::new(pos.row, pos.col + i - 1))
            })
            .collect()
    }
}

/// All Dyck paths from `(1, i)` to `(1, j-1)` in the rank-`m` table, in
/// lexicographic order of their position lists.
pub fn dyck_paths(m: usize, i: usize, j: usize) -> Vec<DyckPath> {
    assert!(1 <= i && i < j && j <= m, "need 1 <= i < j <= m");
    let target = TablePosition::new(1, j - 1);
    let mut out = Vec::new();
    let mut current = vec![TablePosition::new(1, i)];
    walk_paths(m, target, &mut current, &mut out);
    out.sort_by(|a, b| a.positions.cmp(&b.positions));
    DyckPath::check_order(&out);
    out.into_iter()
        .map(|p| DyckPath {
            endpoints: (i, j),
            positions: p.positions,
        })
        .collect()
}

impl DyckPath {
    fn check_order(paths: &[DyckPath]) {
        debug_assert!(paths.windows(2).all(|w| w[0].positions < w[1].positions));
    }
}

fn walk_paths(
    m: usize,
    target: TablePosition,
    current: &mut Vec<TablePosition>,
    out: &mut Vec<DyckPath>,
) {
    let last = *current.last().expect("path is never empty");
    if last == target {
        out.push(DyckPath {
            endpoints: (0, 0),
            positions: current.clone(),
        });
        return;
    }
    // Shifting can only increase the column; prune branches past the target.
    if last.col > target.col {
        return;
    }
    let extend = TablePosition::new(last.row + 1, last.col);
    if extend.row + extend.col <= m {
        current.push(extend);
        walk_paths(m, target, current, out);
        current.pop();
    }
    if last.row >= 2 {
        let shift = TablePosition::new(last.row - 1, last.col + 1);
        if shift.row + shift.col <= m {
            current.push(shift);
            walk_paths(m, target, current, out);
            current.pop();
        }
    }
}

/// The lattice polytope of a dominant weight `Λ` of rank `m`, in
/// `ℝ^{m(m-1)/2}`: nonnegativity for every coordinate plus one row
/// `Σ_{(l,c) ∈ path} u^l_c ≤ λ_i - λ_j` per Dyck path.
pub fn fflv(weight: &Weight) -> HPolytope {
    let m = weight.size();
    assert!(m >= 2, "rank must be at least 2");
    let frame = AmbientFrame::new(m);
    let dim = frame.dim();
    let mut out = HPolytope::universe(dim);
    for idx in 0..dim {
        let mut coeffs = vec![Int::zero(); dim];
        coeffs[idx] = -Int::from(1);
        out.push_ineq(LinearConstraint::new(coeffs, Int::zero()));
    }
    for i in 1..m {
        for j in i + 1..=m {
            let bound = weight.entry(i - 1) - weight.entry(j - 1);
            for path in dyck_paths(m, i, j) {
                let mut coeffs = vec![Int::zero(); dim];
                for pos in &path.positions {
                    coeffs[frame.index(*pos)] = Int::from(1);
                }
                out.push_ineq(LinearConstraint::new(coeffs, Int::from(bound)));
            }
        }
    }
    out
}

/// Embeds the factor-`i` polytope into the ambient space of rank `n`:
/// intrinsic coordinate `(l, c)` is placed at ambient `(l, c + i - 1)` and
/// every ambient coordinate in columns `< i` is pinned to zero. Lattice
/// points are in bijection with those of `fflv(weight)`.
pub fn embed_fflv(frame: AmbientFrame, i: usize, weight: &Weight) -> HPolytope {
    assert_eq!(
        weight.size(),
        frame.n - i + 1,
        "factor {i} expects a weight of rank n-i+1"
    );
    let placement = frame.factor_placement(i);
    fflv(weight)
        .coordinate_embed(frame.dim(), &placement)
        .expect("column-shift placement is injective")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::count_lattice_points;
    use crate::lp::DEFAULT_FM_ROW_CAP;

    fn weight(entries: &[i64]) -> Weight {
        Weight::new(entries.to_vec()).unwrap()
    }

    fn positions(path: &DyckPath) -> Vec<(usize, usize)> {
        path.positions.iter().map(|p| (p.row, p.col)).collect()
    }

    #[test]
    fn frame_layout() {
        let frame = AmbientFrame::new(3);
        assert_eq!(frame.dim(), 3);
        assert_eq!(frame.factor_dim(1), 3);
        assert_eq!(frame.factor_dim(2), 1);
        assert_eq!(frame.index(TablePosition::new(1, 1)), 0);
        assert_eq!(frame.index(TablePosition::new(1, 2)), 1);
        assert_eq!(frame.index(TablePosition::new(2, 1)), 2);
        for idx in 0..frame.dim() {
            assert_eq!(frame.index(frame.position(idx)), idx);
        }
        // d_1 = d and the factor gaps are n - i.
        let frame = AmbientFrame::new(5);
        assert_eq!(frame.factor_dim(1), frame.dim());
        for i in 1..4 {
            assert_eq!(frame.factor_dim(i) - frame.factor_dim(i + 1), 5 - i);
        }
    }

    #[test]
    fn dyck_paths_rank_three() {
        let p12 = dyck_paths(3, 1, 2);
        assert_eq!(p12.len(), 1);
        assert_eq!(positions(&p12[0]), [(1, 1)]);
        let p23 = dyck_paths(3, 2, 3);
        assert_eq!(p23.len(), 1);
        assert_eq!(positions(&p23[0]), [(1, 2)]);
        let p13 = dyck_paths(3, 1, 3);
        assert_eq!(p13.len(), 1);
        assert_eq!(positions(&p13[0]), [(1, 1), (2, 1), (1, 2)]);
    }

    #[test]
    fn dyck_paths_adjacent_always_single() {
        for m in 2..=5 {
            for i in 1..m {
                let paths = dyck_paths(m, i, i + 1);
                assert_eq!(paths.len(), 1);
                assert_eq!(positions(&paths[0]), [(1, i)]);
            }
        }
    }

    #[test]
    fn dyck_paths_rank_four_long_pair() {
        let paths = dyck_paths(4, 1, 4);
        let got: Vec<_> = paths.iter().map(positions).collect();
        assert_eq!(
            got,
            alloc::vec![
                alloc::vec![(1, 1), (2, 1), (1, 2), (2, 2), (1, 3)],
                alloc::vec![(1, 1), (2, 1), (3, 1), (2, 2), (1, 3)],
            ]
        );
    }

    #[test]
    fn fflv_rank_three_rows() {
        let p = fflv(&weight(&[1, 0, -1]));
        assert_eq!(p.dim(), 3);
        assert_eq!(p.ineqs().len(), 6);
        assert_eq!(p.eqs().len(), 0);
        // u11 <= 1, u12 <= 1, u11 + u21 + u12 <= 2, all >= 0.
        assert!(p.contains_int(&[Int::from(1), Int::from(1), Int::from(0)]));
        assert!(p.contains_int(&[Int::from(0), Int::from(0), Int::from(2)]));
        assert!(!p.contains_int(&[Int::from(1), Int::from(1), Int::from(1)]));
        assert!(!p.contains_int(&[Int::from(2), Int::from(0), Int::from(0)]));
    }

    #[test]
    fn fflv_counts() {
        let cap = DEFAULT_FM_ROW_CAP;
        assert_eq!(
            count_lattice_points(&fflv(&weight(&[1, 0, -1])), cap).unwrap(),
            8
        );
        assert_eq!(
            count_lattice_points(&fflv(&weight(&[1, 0, 0])), cap).unwrap(),
            3
        );
        // Constant weights give the single point at the origin.
        assert_eq!(
            count_lattice_points(&fflv(&weight(&[2, 2, 2])), cap).unwrap(),
            1
        );
    }

    #[test]
    fn fflv_origin_membership_and_shift_invariance() {
        for entries in [&[3i64, 1, 0][..], &[2, 2, 0], &[5, 4, 1]] {
            let p = fflv(&weight(entries));
            assert!(p.contains_int(&[Int::from(0), Int::from(0), Int::from(0)]));
            let shifted: Vec<i64> = entries.iter().map(|e| e + 7).collect();
            assert_eq!(p, fflv(&weight(&shifted)));
        }
    }

    #[test]
    fn embed_segment_example() {
        // Rank 3, factor 2, weight (1,0): the segment 0 <= u12 <= 1 with
        // u11 = u21 = 0.
        let frame = AmbientFrame::new(3);
        let seg = embed_fflv(frame, 2, &weight(&[1, 0]));
        assert!(seg.contains_int(&[Int::from(0), Int::from(1), Int::from(0)]));
        assert!(!seg.contains_int(&[Int::from(0), Int::from(2), Int::from(0)]));
        assert!(!seg.contains_int(&[Int::from(1), Int::from(0), Int::from(0)]));
        assert_eq!(seg.eqs().len(), 2);
        assert_eq!(count_lattice_points(&seg, DEFAULT_FM_ROW_CAP).unwrap(), 2);
    }

    #[test]
    fn embed_identity_at_factor_one() {
        let frame = AmbientFrame::new(3);
        let w = weight(&[1, 0, -1]);
        assert_eq!(embed_fflv(frame, 1, &w), fflv(&w));
    }

    #[test]
    fn embed_preserves_counts() {
        let frame = AmbientFrame::new(4);
        let w = weight(&[1, 0, 0]);
        let inner = count_lattice_points(&fflv(&w), DEFAULT_FM_ROW_CAP).unwrap();
        let embedded = count_lattice_points(&embed_fflv(frame, 2, &w), DEFAULT_FM_ROW_CAP).unwrap();
        assert_eq!(inner, 3);
        assert_eq!(embedded, inner);
    }

    #[test]
    fn embed_preserves_ehrhart_polynomial() {
        let frame = AmbientFrame::new(4);
        let w = weight(&[2, 1, 0]);
        let inner = crate::lattice::ehrhart(&fflv(&w), 3, DEFAULT_FM_ROW_CAP).unwrap();
        let outer =
            crate::lattice::ehrhart(&embed_fflv(frame, 2, &w), 3, DEFAULT_FM_ROW_CAP).unwrap();
        assert_eq!(inner.coefficients, outer.coefficients);
    }

    #[test]
    fn long_pair_functional_maximum() {
        // max (u11 + u21 + u12) over the rank-3 polytope of (1,0,-1) is the
        // long-pair bound 2.
        use crate::rational::rat_int;
        let p = fflv(&weight(&[1, 0, -1]));
        let out = crate::lp::maximize(&[Int::from(1), Int::from(1), Int::from(1)], &p);
        assert_eq!(out.optimum, Some(rat_int(2)));
    }

    #[test]
    fn bounding_box_of_rank_three_example() {
        use crate::rational::rat_int;
        let p = fflv(&weight(&[1, 0, -1]));
        let bounds = crate::lattice::bounding_box(&p).unwrap();
        assert_eq!(
            bounds,
            alloc::vec![
                (rat_int(0), rat_int(1)),
                (rat_int(0), rat_int(1)),
                (rat_int(0), rat_int(2)),
            ]
        );
    }
}
