//! Dominant integral weights of `GL_m` and per-factor weight tuples.

use alloc::vec::Vec;
use core::fmt;

/// Errors from weight construction and padding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightError {
    /// Entries are not non-increasing: `entries[pos] < entries[pos + 1]`.
    DominanceViolation { pos: usize },
    /// Requested padding length is shorter than the weight.
    SizeMismatch { size: usize, target: usize },
    /// A weight tuple does not fit the `(n-1)`-factor shape.
    BadShape {
        factor: usize,
        expected: usize,
        got: usize,
    },
}

impl fmt::Display for WeightError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightError::DominanceViolation { pos } => {
                write!(
                    f,
                    "entries must be non-increasing (violated at position {pos})"
                )
            }
            WeightError::SizeMismatch { size, target } => {
                write!(f, "cannot pad weight of size {size} to length {target}")
            }
            WeightError::BadShape {
                factor,
                expected,
                got,
            } => {
                write!(
                    f,
                    "factor {factor} must be a weight of size {expected}, got {got}"
                )
            }
        }
    }
}

impl core::error::Error for WeightError {}

/// A dominant integral weight: a non-increasing tuple of integers.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Weight {
    entries: Vec<i64>,
}

impl Weight {
    /// Validates dominance (`λ₁ ≥ λ₂ ≥ …`) and wraps the tuple.
    pub fn new(entries: Vec<i64>) -> Result<Self, WeightError> {
        for pos in 0..entries.len().saturating_sub(1) {
            if entries[pos] < entries[pos + 1] {
                return Err(WeightError::DominanceViolation { pos });
            }
        }
        Ok(Weight { entries })
    }

    /// The zero weight of the given size.
    pub fn zero(size: usize) -> Self {
        Weight {
            entries: alloc::vec![0; size],
        }
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn entry(&self, idx: usize) -> i64 {
        self.entries[idx]
    }

    /// Extends the tuple to length `n` with trailing zeros. The result is a
    /// plain tuple, not a `Weight`: it is dominant only when the last entry
    /// is nonnegative.
    pub fn padded(&self, n: usize) -> Result<Vec<i64>, WeightError> {
        if self.entries.len() > n {
            return Err(WeightError::SizeMismatch {
                size: self.entries.len(),
                target: n,
            });
        }
        let mut out = self.entries.clone();
        out.resize(n, 0);
        Ok(out)
    }

    /// Entrywise multiple `k·Λ` (dominance is preserved for `k ≥ 0`).
    pub fn scaled(&self, k: u32) -> Weight {
        Weight {
            entries: self.entries.iter().map(|&e| e * i64::from(k)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// True when all entries are equal (the associated polytopes are points).
    pub fn is_constant(&self) -> bool {
        self.entries.windows(2).all(|w| w[0] == w[1])
    }
}

/// A tuple `(Λ₁, …, Λ_{n-1})` of dominant weights, one per factor, with
/// `Λ_i` a weight of `GL_{n-i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BundleSpec {
    n: usize,
    weights: Vec<Weight>,
}

impl BundleSpec {
    /// Validates the shape: exactly `n-1` weights, the `i`-th of size
    /// `n-i+1` (so `weights[j]` has size `n-j` in zero-based indexing).
    pub fn new(n: usize, weights: Vec<Weight>) -> Result<Self, WeightError> {
        if n < 2 || weights.len() != n - 1 {
            return Err(WeightError::BadShape {
                factor: 0,
                expected: n.saturating_sub(1),
                got: weights.len(),
            });
        }
        for (j, w) in weights.iter().enumerate() {
            if w.size() != n - j {
                return Err(WeightError::BadShape {
                    factor: j + 1,
                    expected: n - j,
                    got: w.size(),
                });
            }
        }
        Ok(BundleSpec { n, weights })
    }

    /// The all-zero tuple for rank `n`.
    pub fn zero(n: usize) -> Self {
        let weights = (0..n - 1).map(|j| Weight::zero(n - j)).collect();
        BundleSpec { n, weights }
    }

    /// The tuple carrying `weight` in the first slot and zeros elsewhere.
    pub fn single(weight: Weight) -> Self {
        let n = weight.size();
        let mut weights = Vec::with_capacity(n - 1);
        weights.push(weight);
        for j in 1..n - 1 {
            weights.push(Weight::zero(n - j));
        }
        BundleSpec { n, weights }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    /// The weight for factor `i` (one-based, `1 ≤ i ≤ n-1`).
    pub fn factor(&self, i: usize) -> &Weight {
        &self.weights[i - 1]
    }

    /// Entrywise multiple `k·(Λ₁, …, Λ_{n-1})`.
    pub fn scaled(&self, k: u32) -> BundleSpec {
        BundleSpec {
            n: self.n,
            weights: self.weights.iter().map(|w| w.scaled(k)).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn weight_construction() {
        let w = Weight::new(vec![1, 0, -1]).unwrap();
        assert_eq!(w.size(), 3);
        assert!(Weight::new(vec![0, 0, 0]).unwrap().is_zero());
        assert_eq!(
            Weight::new(vec![0, 1]),
            Err(WeightError::DominanceViolation { pos: 0 })
        );
    }

    #[test]
    fn padding() {
        let w = Weight::new(vec![1, 0]).unwrap();
        assert_eq!(w.padded(3).unwrap(), vec![1, 0, 0]);
        let w = Weight::new(vec![1, 0, -1]).unwrap();
        assert_eq!(w.padded(3).unwrap(), vec![1, 0, -1]);
        let w = Weight::new(vec![0, 0]).unwrap();
        assert_eq!(w.padded(4).unwrap(), vec![0, 0, 0, 0]);
        assert!(w.padded(1).is_err());
    }

    #[test]
    fn padded_dominance() {
        // The padded tuple is dominant exactly when the last entry is >= 0.
        let ok = Weight::new(vec![2, 1]).unwrap().padded(4).unwrap();
        assert!(Weight::new(ok).is_ok());
        let bad = Weight::new(vec![1, -1]).unwrap().padded(3).unwrap();
        assert!(Weight::new(bad).is_err());
    }

    #[test]
    fn spec_shape_and_scaling() {
        let spec = BundleSpec::new(
            3,
            vec![
                Weight::new(vec![1, 0, -1]).unwrap(),
                Weight::new(vec![1, 0]).unwrap(),
            ],
        )
        .unwrap();
        let doubled = spec.scaled(2);
        assert_eq!(doubled.factor(1).entries(), &[2, 0, -2]);
        assert_eq!(doubled.factor(2).entries(), &[2, 0]);
        assert_eq!(spec.scaled(0), BundleSpec::zero(3));

        let single = BundleSpec::new(2, vec![Weight::new(vec![3, 0]).unwrap()]).unwrap();
        assert_eq!(single.scaled(3).factor(1).entries(), &[9, 0]);

        assert!(BundleSpec::new(3, vec![Weight::zero(2), Weight::zero(2)]).is_err());
        assert!(BundleSpec::new(1, vec![]).is_err());
    }

    #[test]
    fn scale_composes() {
        let spec = BundleSpec::new(
            3,
            vec![
                Weight::new(vec![2, 1, 0]).unwrap(),
                Weight::new(vec![1, 0]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(spec.scaled(6), spec.scaled(2).scaled(3));
    }
}
