//! Laurent-polynomial character calculus: Demazure operators, the nested
//! character of a weight tuple, and independent representation-theoretic
//! oracles (interlacing-pattern enumeration and the Weyl dimension formula).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::rational::Int;
use crate::weight::{BundleSpec, Weight};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharacterError {
    /// Operator index outside `1..=n-1`.
    IndexOutOfRange { index: usize, vars: usize },
}

impl fmt::Display for CharacterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacterError::IndexOutOfRange { index, vars } => {
                write!(
                    f,
                    "operator index {index} out of range for {vars} variables"
                )
            }
        }
    }
}

impl core::error::Error for CharacterError {}

/// Finitely supported map from exponent vectors in `ℤⁿ` to nonzero integer
/// coefficients. Terms are kept in lexicographic exponent order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    vars: usize,
    terms: BTreeMap<Vec<i64>, Int>,
}

impl LaurentPolynomial {
    pub fn zero(vars: usize) -> Self {
        LaurentPolynomial {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: usize) -> Self {
        Self::monomial(vec![0; vars], Int::one())
    }

    pub fn monomial(exponent: Vec<i64>, coeff: Int) -> Self {
        let vars = exponent.len();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        LaurentPolynomial { vars, terms }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &Int)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exponent: Vec<i64>, coeff: Int) {
        debug_assert_eq!(exponent.len(), self.vars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exponent) {
            alloc::collections::btree_map::Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            alloc::collections::btree_map::Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        debug_assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    /// Multiplication by a single monomial (shifts every exponent).
    pub fn mul_monomial(&self, exponent: &[i64]) -> LaurentPolynomial {
        debug_assert_eq!(exponent.len(), self.vars);
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let shifted: Vec<i64> = e.iter().zip(exponent).map(|(a, b)| a + b).collect();
            terms.insert(shifted, c.clone());
        }
        LaurentPolynomial {
            vars: self.vars,
            terms,
        }
    }

    /// Evaluation at all variables equal to one: the sum of coefficients.
    pub fn dimension(&self) -> Int {
        let mut total = Int::zero();
        for c in self.terms.values() {
            total += c;
        }
        total
    }

    /// Swaps the exponents at positions `i-1` and `i` (one-based `i`).
    pub fn swap_vars(&self, i: usize) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero(self.vars);
        for (e, c) in &self.terms {
            let mut swapped = e.clone();
            swapped.swap(i - 1, i);
            out.add_term(swapped, c.clone());
        }
        out
    }
}

/// Character of a weight tuple together with its dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterReport {
    pub polynomial: LaurentPolynomial,
    pub dimension: Int,
}

impl CharacterReport {
    fn new(polynomial: LaurentPolynomial) -> Self {
        let dimension = polynomial.dimension();
        CharacterReport {
            polynomial,
            dimension,
        }
    }
}

/// The `i`-th Demazure operator (isobaric divided difference), applied
/// monomial-wise through its closed form. For a monomial with
/// `a = μ_i - μ_{i+1}`:
///
/// * `a ≥ 0`: the geometric string `Σ_{t=0}^{a} x^{μ - t(e_i - e_{i+1})}`;
/// * `a = -1`: zero;
/// * `a ≤ -2`: `-Σ_{t=1}^{-a-1} x^{μ + t(e_i - e_{i+1})}`.
pub fn demazure_op(i: usize, f: &LaurentPolynomial) -> Result<LaurentPolynomial, CharacterError> {
    let vars = f.vars();
    if i == 0 || i >= vars {
        return Err(CharacterError::IndexOutOfRange { index: i, vars });
    }
    let mut out = LaurentPolynomial::zero(vars);
    for (exponent, coeff) in f.terms() {
        let a = exponent[i - 1] - exponent[i];
        if a >= 0 {
            let mut e = exponent.to_vec();
            for _ in 0..=a {
                out.add_term(e.clone(), coeff.clone());
                e[i - 1] -= 1;
                e[i] += 1;
            }
        } else if a <= -2 {
            let mut e = exponent.to_vec();
            for _ in 1..=(-a - 1) {
                e[i - 1] += 1;
                e[i] -= 1;
                out.add_term(e.clone(), -coeff.clone());
            }
        }
        // a == -1 contributes nothing.
    }
    Ok(out)
}

/// The nested character of a weight tuple: starting from the monomial of
/// the padded first weight, alternately apply the operator prefix
/// `T_{n-i}…T_1` and multiply by the monomial of the next padded weight,
/// finishing with a single `T_1`.
pub fn gdc(spec: &BundleSpec) -> CharacterReport {
    let n = spec.n();
    let mut f = weight_monomial(spec.factor(1), n);
    for i in 1..n {
        if i > 1 {
            f = f.mul_monomial(&pad_exponent(spec.factor(i), n));
        }
        for op in 1..=(n - i) {
            f = demazure_op(op, &f).expect("operator index within range");
        }
    }
    CharacterReport::new(f)
}

fn pad_exponent(weight: &Weight, n: usize) -> Vec<i64> {
    weight.padded(n).expect("factor weights fit the rank")
}

fn weight_monomial(weight: &Weight, n: usize) -> LaurentPolynomial {
    LaurentPolynomial::monomial(pad_exponent(weight, n), Int::one())
}

/// Independent character oracle: the sum of `x^{μ(pattern)}` over all
/// integer interlacing patterns with top row `Λ` (after shifting by the
/// last entry so the tableau model applies, then dividing back out). The
/// result uses `n ≥ m` variables but involves only the first `m`.
pub fn schur(weight: &Weight, vars: usize) -> LaurentPolynomial {
    let m = weight.size();
    assert!(
        vars >= m,
        "need at least as many variables as the weight size"
    );
    let shift = weight.entry(m - 1);
    let top: Vec<i64> = weight.entries().iter().map(|&e| e - shift).collect();

    let mut out = LaurentPolynomial::zero(vars);
    let mut rows: Vec<Vec<i64>> = vec![top];
    enumerate_patterns(&mut rows, &mut |rows| {
        // μ_k = |row of length k| - |row of length k+1|; rows[t] has length
        // m - t, and the shift adds `shift` to each of the first m slots.
        let mut exponent = vec![0i64; vars];
        for k in 0..m {
            let this: i64 = rows[m - 1 - k].iter().sum();
            let below: i64 = if k == 0 { 0 } else { rows[m - k].iter().sum() };
            exponent[k] = this - below + shift;
        }
        out.add_term(exponent, Int::one());
    });
    out
}

/// Recursively extends `rows` by every integer row interlacing the last one.
fn enumerate_patterns(rows: &mut Vec<Vec<i64>>, visit: &mut impl FnMut(&[Vec<i64>])) {
    let last = rows.last().expect("top row present");
    if last.len() == 1 {
        visit(rows);
        return;
    }
    let width = last.len() - 1;
    let mut next = vec![0i64; width];
    fill_interlacing(rows, &mut next, 0, width, visit);
}

fn fill_interlacing(
    rows: &mut Vec<Vec<i64>>,
    next: &mut Vec<i64>,
    j: usize,
    width: usize,
    visit: &mut impl FnMut(&[Vec<i64>]),
) {
    if j == width {
        rows.push(next.clone());
        enumerate_patterns(rows, visit);
        rows.pop();
        return;
    }
    let last = rows.last().expect("top row present");
    let hi = last[j];
    let lo = last[j + 1];
    for v in lo..=hi {
        next[j] = v;
        fill_interlacing(rows, next, j + 1, width, visit);
    }
}

/// Weyl dimension formula for `GL_m`:
/// `∏_{i<j} (λ_i - λ_j + j - i) / (j - i)`, computed exactly.
pub fn weyl_dim(weight: &Weight) -> Int {
    let m = weight.size();
    let mut numer = Int::one();
    let mut denom = Int::one();
    for i in 0..m {
        for j in i + 1..m {
            numer *= Int::from(weight.entry(i) - weight.entry(j) + (j - i) as i64);
            denom *= Int::from((j - i) as i64);
        }
    }
    let (q, r) = num_integer::Integer::div_rem(&numer, &denom);
    debug_assert!(r.is_zero(), "Weyl dimension is always an integer");
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weight(entries: &[i64]) -> Weight {
        Weight::new(entries.to_vec()).unwrap()
    }

    fn mono(e: &[i64]) -> LaurentPolynomial {
        LaurentPolynomial::monomial(e.to_vec(), Int::one())
    }

    #[test]
    fn operator_base_cases() {
        // x1 -> x1 + x2
        let f = demazure_op(1, &mono(&[1, 0])).unwrap();
        assert_eq!(f, mono(&[1, 0]).add(&mono(&[0, 1])));
        // x2 -> 0
        let f = demazure_op(1, &mono(&[0, 1])).unwrap();
        assert!(f.is_zero());
        // constants are fixed
        let f = demazure_op(1, &LaurentPolynomial::one(2)).unwrap();
        assert_eq!(f, LaurentPolynomial::one(2));
        // a <= -2 produces the negative interior string: x2^2 -> -x1 x2
        let f = demazure_op(1, &mono(&[0, 2])).unwrap();
        let mut expected = LaurentPolynomial::zero(2);
        expected.add_term(alloc::vec![1, 1], -Int::one());
        assert_eq!(f, expected);
        assert!(demazure_op(2, &mono(&[1, 0])).is_err());
        assert!(demazure_op(0, &mono(&[1, 0])).is_err());
    }

    #[test]
    fn nested_character_examples() {
        let spec = BundleSpec::new(3, alloc::vec![weight(&[1, 0, 0]), weight(&[0, 0])]).unwrap();
        let report = gdc(&spec);
        assert_eq!(report.dimension, Int::from(3));
        assert_eq!(report.polynomial, schur(&weight(&[1, 0, 0]), 3));

        let spec = BundleSpec::new(3, alloc::vec![weight(&[0, 0, 0]), weight(&[1, 0])]).unwrap();
        let report = gdc(&spec);
        assert_eq!(report.dimension, Int::from(2));
        assert_eq!(report.polynomial, mono(&[1, 0, 0]).add(&mono(&[0, 1, 0])));

        let spec = BundleSpec::new(3, alloc::vec![weight(&[1, 0, -1]), weight(&[0, 0])]).unwrap();
        assert_eq!(gdc(&spec).dimension, Int::from(8));
    }

    #[test]
    fn example_mixed_pair_dimension() {
        let spec = BundleSpec::new(3, alloc::vec![weight(&[1, 0, -1]), weight(&[1, 0])]).unwrap();
        assert_eq!(gdc(&spec).dimension, Int::from(13));
    }

    #[test]
    fn schur_small_cases() {
        let e1 = schur(&weight(&[1, 0, 0]), 3);
        assert_eq!(
            e1,
            mono(&[1, 0, 0])
                .add(&mono(&[0, 1, 0]))
                .add(&mono(&[0, 0, 1]))
        );
        let e2 = schur(&weight(&[1, 1, 0]), 3);
        assert_eq!(
            e2,
            mono(&[1, 1, 0])
                .add(&mono(&[1, 0, 1]))
                .add(&mono(&[0, 1, 1]))
        );
        assert_eq!(schur(&weight(&[0, 0, 0]), 3), LaurentPolynomial::one(3));
    }

    #[test]
    fn schur_handles_negative_entries() {
        let s = schur(&weight(&[1, 0, -1]), 3);
        assert_eq!(s.dimension(), Int::from(8));
        // Weight zero appears with multiplicity two in this character.
        let zero_coeff = s
            .terms()
            .find(|(e, _)| e.iter().all(|&v| v == 0))
            .unwrap()
            .1;
        assert_eq!(zero_coeff, &Int::from(2));
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(weyl_dim(&weight(&[1, 0, -1])), Int::from(8));
        assert_eq!(weyl_dim(&weight(&[0, 0])), Int::from(1));
        for k in 0..5i64 {
            let w = weight(&[k, 0, -k]);
            assert_eq!(weyl_dim(&w), Int::from((k + 1).pow(3)));
        }
        // Schur term counts are pattern counts, which the formula must match.
        for entries in [&[2i64, 0, 0][..], &[2, 1, 0], &[3, 1], &[2, 2, 1, 0]] {
            let w = weight(entries);
            assert_eq!(schur(&w, w.size()).dimension(), weyl_dim(&w), "{entries:?}");
        }
    }
}
