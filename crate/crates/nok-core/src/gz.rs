//! Interlacing-pattern polytopes and their embeddings into the ambient
//! space, plus the distinguished apex point of each factor.
//!
//! The rank-`m` polytope `gz(Λ)` lives in the same triangular table as the
//! `u`-coordinates (written `z^l_j` here): row 0 is the weight itself and
//! every entry interlaces the two neighbours above it,
//! `z^{l-1}_j ≥ z^l_j ≥ z^{l-1}_{j+1}`.
//!
//! The factor-`i` embedding places intrinsic `(l, j)` at ambient
//! `(l, j+i-1)` — the same column shift as the companion model — and pins
//! the ambient coordinates in columns `< i`. The pinned values and the
//! per-row offsets are chosen so that the embedded polytope contains
//! [`apex`] as a vertex: ambient rows `< i` sit at zero and ambient row
//! `i + l - 1` carries the weight tail `(λ_{l+1}, …, λ_{n-i+1})`. Lattice
//! points biject with those of `gz(Λ)`, and Minkowski sums of these
//! embeddings match the generalized character dimensions factor by factor.

use alloc::vec;
use alloc::vec::Vec;

use crate::fflv::{AmbientFrame, TablePosition};
use num_traits::Zero;

use crate::polytope::{HPolytope, LinearConstraint};
use crate::rational::Int;
use crate::weight::Weight;

/// The interlacing polytope of a dominant weight of rank `m`, in
/// `ℝ^{m(m-1)/2}` with row-major `z` coordinates.
pub fn gz(weight: &Weight) -> HPolytope {
    let m = weight.size();
    assert!(m >= 2, "rank must be at least 2");
    let frame = AmbientFrame::new(m);
    let dim = frame.dim();
    let mut out = HPolytope::universe(dim);
    // Row 1 interlaces the weight itself: λ_j >= z¹_j >= λ_{j+1}.
    for j in 1..m {
        let idx = frame.index(TablePosition::new(1, j));
        let mut up = vec![Int::zero(); dim];
        up[idx] = Int::from(1);
        out.push_ineq(LinearConstraint::new(up, Int::from(weight.entry(j - 1))));
        let mut down = vec![Int::zero(); dim];
        down[idx] = -Int::from(1);
        out.push_ineq(LinearConstraint::new(down, Int::from(-weight.entry(j))));
    }
    // Deeper rows interlace the row above: z^{l-1}_j >= z^l_j >= z^{l-1}_{j+1}.
    for l in 2..m {
        for j in 1..=(m - l) {
            let here = frame.index(TablePosition::new(l, j));
            let above_left = frame.index(TablePosition::new(l - 1, j));
            let above_right = frame.index(TablePosition::new(l - 1, j + 1));
            let mut up = vec![Int::zero(); dim];
            up[here] = Int::from(1);
            up[above_left] = -Int::from(1);
            out.push_ineq(LinearConstraint::new(up, Int::zero()));
            let mut down = vec![Int::zero(); dim];
            down[here] = -Int::from(1);
            down[above_right] = Int::from(1);
            out.push_ineq(LinearConstraint::new(down, Int::zero()));
        }
    }
    out
}

/// The distinguished point of factor `i`: zeros on ambient rows `< i`,
/// while ambient row `i + l - 1` carries `(λ_{l+1}, …, λ_{n-i+1})`.
pub fn apex(frame: AmbientFrame, i: usize, weight: &Weight) -> Vec<Int> {
    assert_eq!(
        weight.size(),
        frame.n - i + 1,
        "factor {i} expects a weight of rank n-i+1"
    );
    let mut out = vec![Int::zero(); frame.dim()];
    for (idx, slot) in out.iter_mut().enumerate() {
        let pos = frame.position(idx);
        if pos.row >= i {
            // Entry c of ambient row l is λ_{(l-i+1)+c}; the index is always
            // in range because l + c <= n.
            *slot = Int::from(weight.entry(pos.row - i + pos.col));
        }
    }
    out
}

/// Embeds the factor-`i` interlacing polytope into the rank-`n` ambient
/// space so that [`apex`] is a vertex. See the module docs for the shape.
pub fn embed_gz(frame: AmbientFrame, i: usize, weight: &Weight) -> HPolytope {
    assert_eq!(
        weight.size(),
        frame.n - i + 1,
        "factor {i} expects a weight of rank n-i+1"
    );
    let m = frame.n - i + 1;
    let inner_frame = AmbientFrame::new(m);

    // Shift the intrinsic polytope so that the rows landing above the pinned
    // block (ambient rows < i) start at zero: intrinsic (l, j) moves by
    // -λ_{l+j} when l < i.
    let mut shift = vec![Int::zero(); inner_frame.dim()];
    for (idx, slot) in shift.iter_mut().enumerate() {
        let pos = inner_frame.position(idx);
        if pos.row < i {
            *slot = -Int::from(weight.entry(pos.row + pos.col - 1));
        }
    }
    let inner = gz(weight).translate(&shift);

    let placement = frame.factor_placement(i);
    let embedded = inner
        .coordinate_embed(frame.dim(), &placement)
        .expect("column-shift placement is injective");

    // Raise the pinned coordinates (columns < i) from zero to their apex
    // values; the placed coordinates are untouched.
    let mut lift = vec![Int::zero(); frame.dim()];
    let apex_point = apex(frame, i, weight);
    for idx in 0..frame.dim() {
        let pos = frame.position(idx);
        if pos.col < i {
            lift[idx] = apex_point[idx].clone();
        }
    }
    embedded.translate(&lift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::count_lattice_points;
    use crate::lp::{self, DEFAULT_FM_ROW_CAP};
    use crate::rational::Rational;

    fn weight(entries: &[i64]) -> Weight {
        Weight::new(entries.to_vec()).unwrap()
    }

    fn pt(values: &[i64]) -> Vec<Int> {
        values.iter().map(|&v| Int::from(v)).collect()
    }

    #[test]
    fn gz_rank_three_system() {
        // 1 >= z11 >= 0, 0 >= z12 >= -1, z11 >= z21 >= z12.
        let p = gz(&weight(&[1, 0, -1]));
        assert_eq!(p.dim(), 3);
        assert!(p.contains_int(&pt(&[1, -1, 0])));
        assert!(p.contains_int(&pt(&[1, -1, 1])));
        assert!(!p.contains_int(&pt(&[0, 0, 1])));
        assert!(!p.contains_int(&pt(&[2, 0, 0])));
        assert_eq!(count_lattice_points(&p, DEFAULT_FM_ROW_CAP).unwrap(), 8);
    }

    #[test]
    fn gz_degenerate_shapes() {
        // Constant weight: the single point (c, c, ..., c).
        let p = gz(&weight(&[2, 2, 2]));
        assert_eq!(count_lattice_points(&p, DEFAULT_FM_ROW_CAP).unwrap(), 1);
        assert!(p.contains_int(&pt(&[2, 2, 2])));
        // Rank two: the segment [λ₂, λ₁].
        let seg = gz(&weight(&[1, 0]));
        assert!(seg.contains_int(&pt(&[0])));
        assert!(seg.contains_int(&pt(&[1])));
        assert!(!seg.contains_int(&pt(&[2])));
    }

    #[test]
    fn apex_examples() {
        let frame = AmbientFrame::new(3);
        assert_eq!(apex(frame, 1, &weight(&[3, 1, 0])), pt(&[1, 0, 0]));
        assert_eq!(apex(frame, 1, &weight(&[0, 0, 0])), pt(&[0, 0, 0]));
        assert_eq!(apex(frame, 2, &weight(&[1, 0])), pt(&[0, 0, 0]));
        assert_eq!(apex(frame, 2, &weight(&[3, 2])), pt(&[0, 0, 2]));
        let frame = AmbientFrame::new(4);
        assert_eq!(apex(frame, 2, &weight(&[2, 1, 0])), pt(&[0, 0, 0, 1, 0, 0]));
    }

    #[test]
    fn apex_lies_in_embedding() {
        for (n, i, entries) in [
            (3, 1, &[3i64, 1, 0][..]),
            (3, 2, &[1, 0]),
            (3, 2, &[3, 2]),
            (4, 2, &[2, 1, 0]),
            (4, 3, &[4, 1]),
        ] {
            let frame = AmbientFrame::new(n);
            let w = weight(entries);
            let p = embed_gz(frame, i, &w);
            let a = apex(frame, i, &w);
            assert!(
                p.contains_int(&a),
                "apex must lie in the embedding (n={n}, i={i})"
            );
        }
    }

    #[test]
    fn apex_is_a_vertex() {
        // d linearly independent constraints are tight at the apex.
        let frame = AmbientFrame::new(3);
        let w = weight(&[3, 1, 0]);
        let p = embed_gz(frame, 1, &w);
        let a: Vec<Rational> = apex(frame, 1, &w)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        let mut tight: Vec<Vec<Rational>> = Vec::new();
        for row in p.eqs() {
            tight.push(
                row.coeffs
                    .iter()
                    .map(|c| Rational::from_integer(c.clone()))
                    .collect(),
            );
        }
        for row in p.ineqs() {
            if crate::polytope::dot_rational(&row.coeffs, &a)
                == Rational::from_integer(row.bound.clone())
            {
                tight.push(
                    row.coeffs
                        .iter()
                        .map(|c| Rational::from_integer(c.clone()))
                        .collect(),
                );
            }
        }
        assert_eq!(lp::rank_rational(tight), frame.dim());
    }

    #[test]
    fn embed_identity_at_factor_one() {
        let frame = AmbientFrame::new(3);
        let w = weight(&[1, 0, -1]);
        assert_eq!(embed_gz(frame, 1, &w), gz(&w));
    }

    #[test]
    fn embed_segment_factor_two() {
        // The factor-2 segment at rank 3 runs along z¹₂ between the pins
        // z¹₁ = 0 and z²₁ = λ₂.
        let frame = AmbientFrame::new(3);
        let seg = embed_gz(frame, 2, &weight(&[1, 0]));
        assert!(seg.contains_int(&pt(&[0, 0, 0])));
        assert!(seg.contains_int(&pt(&[0, 1, 0])));
        assert!(!seg.contains_int(&pt(&[0, 2, 0])));
        assert!(!seg.contains_int(&pt(&[0, 0, 1])));
        assert_eq!(count_lattice_points(&seg, DEFAULT_FM_ROW_CAP).unwrap(), 2);

        let seg = embed_gz(frame, 2, &weight(&[3, 2]));
        assert!(seg.contains_int(&pt(&[0, 0, 2])));
        assert!(seg.contains_int(&pt(&[0, 1, 2])));
        assert!(!seg.contains_int(&pt(&[0, 2, 2])));
        assert_eq!(count_lattice_points(&seg, DEFAULT_FM_ROW_CAP).unwrap(), 2);
    }

    #[test]
    fn embed_constant_weight_is_single_point() {
        let frame = AmbientFrame::new(4);
        let p = embed_gz(frame, 2, &weight(&[3, 3, 3]));
        assert_eq!(count_lattice_points(&p, DEFAULT_FM_ROW_CAP).unwrap(), 1);
        assert!(p.contains_int(&apex(frame, 2, &weight(&[3, 3, 3]))));
    }

    #[test]
    fn embed_preserves_counts() {
        let frame = AmbientFrame::new(4);
        for (i, entries) in [(2usize, &[2i64, 1, 0][..]), (3, &[3, 1])] {
            let w = weight(entries);
            let inner = count_lattice_points(&gz(&w), DEFAULT_FM_ROW_CAP).unwrap();
            let outer = count_lattice_points(&embed_gz(frame, i, &w), DEFAULT_FM_ROW_CAP).unwrap();
            assert_eq!(inner, outer, "factor {i}");
        }
    }

    #[test]
    fn embed_preserves_ehrhart_polynomial() {
        let frame = AmbientFrame::new(4);
        let w = weight(&[2, 1, 0]);
        let inner = crate::lattice::ehrhart(&gz(&w), 3, DEFAULT_FM_ROW_CAP).unwrap();
        let outer =
            crate::lattice::ehrhart(&embed_gz(frame, 2, &w), 3, DEFAULT_FM_ROW_CAP).unwrap();
        assert_eq!(inner.coefficients, outer.coefficients);
    }
}
