//! Exact scalar types shared by every module.
//!
//! `Rational` is always kept canonical: lowest terms, positive denominator.
//! The `p/q` text form below is the canonical interchange syntax for rational
//! values everywhere in this workspace (JSON payloads, sidecar files, report
//! columns): numerator with optional sign, `/`, positive denominator, no
//! whitespace. Integers render as `p/1`.

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision integer used for constraint rows, counts, and
/// Laurent coefficients.
pub type Int = BigInt;

/// Arbitrary-precision rational, canonical by construction.
pub type Rational = BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q`. Panics on a zero denominator.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Renders a rational in the canonical `p/q` form.
pub fn format_rational(value: &Rational) -> String {
    let mut out = value.numer().to_string();
    out.push('/');
    out.push_str(&value.denom().to_string());
    out
}

/// Parses the canonical `p/q` form (also accepts a bare integer `p`).
pub fn parse_rational(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (p, q) = match text.split_once('/') {
        Some((p, q)) => (p, q),
        None => (text, "1"),
    };
    let numer: BigInt = p.parse().ok()?;
    let denom: BigInt = q.parse().ok()?;
    if denom.is_zero() || denom.is_negative() {
        return None;
    }
    Some(Rational::new(numer, denom))
}

/// Exact floor of a rational as an integer.
pub fn floor_int(value: &Rational) -> Int {
    value.floor().to_integer()
}

/// Exact ceiling of a rational as an integer.
pub fn ceil_int(value: &Rational) -> Int {
    value.ceil().to_integer()
}

/// `value!` for small nonnegative integers.
pub fn factorial(n: usize) -> Int {
    let mut out = Int::one();
    for k in 2..=n {
        out *= Int::from(k);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form() {
        let half = rat(2, 4);
        assert_eq!(half, rat(1, 2));
        assert_eq!(format_rational(&half), "1/2");
        let neg = rat(3, -6);
        assert_eq!(format_rational(&neg), "-1/2");
        assert_eq!(format_rational(&rat_int(7)), "7/1");
    }

    #[test]
    fn parse_round_trip() {
        for text in ["0/1", "-5/3", "12/7", "4/1"] {
            let v = parse_rational(text).unwrap();
            assert_eq!(format_rational(&v), text);
        }
        assert_eq!(parse_rational("3"), Some(rat_int(3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("1/-2"), None);
    }

    #[test]
    fn floor_ceil() {
        assert_eq!(floor_int(&rat(7, 2)), Int::from(3));
        assert_eq!(ceil_int(&rat(7, 2)), Int::from(4));
        assert_eq!(floor_int(&rat(-7, 2)), Int::from(-4));
        assert_eq!(ceil_int(&rat(-7, 2)), Int::from(-3));
        assert_eq!(floor_int(&rat_int(5)), Int::from(5));
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), Int::one());
        assert_eq!(factorial(3), Int::from(6));
        assert_eq!(factorial(6), Int::from(720));
    }
}
