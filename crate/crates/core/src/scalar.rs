//! Arithmetic modes for tableau entries.
//!
//! Two scalar types back every dictionary: `f64` with an absolute sign
//! tolerance, used for benchmarks, and [`Rational`] (arbitrary precision),
//! used wherever the answer has to be exact. Sign tests always go through
//! [`Scalar::signum_eps`] so the same pivot code serves both modes.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Default absolute tolerance for float-mode sign tests (7 decimal places).
pub const DEFAULT_EPS: f64 = 1e-7;

/// Arithmetic mode chosen when a dictionary is built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    Float,
    Exact,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Float => f.write_str("float"),
            Mode::Exact => f.write_str("exact"),
        }
    }
}

pub trait Scalar:
    Clone + PartialEq + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + Zero + One + Signed + 'static
{
    const MODE: Mode;

    fn from_rational(r: &Rational) -> Self;

    fn to_f64(&self) -> f64;

    /// Sign of `self`, treating `|self| <= eps` as zero. Exact scalars ignore `eps`.
    fn signum_eps(&self, eps: f64) -> Ordering;

    /// Rendering used by traces and reports.
    fn render(&self) -> String;

    fn from_i64(v: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(v)))
    }

    fn is_pos(&self, eps: f64) -> bool {
        self.signum_eps(eps) == Ordering::Greater
    }

    fn is_neg(&self, eps: f64) -> bool {
        self.signum_eps(eps) == Ordering::Less
    }

    fn is_zero_eps(&self, eps: f64) -> bool {
        self.signum_eps(eps) == Ordering::Equal
    }

    /// Compares two values, reporting `Equal` when they differ by at most `eps`.
    fn cmp_eps(&self, other: &Self, eps: f64) -> Ordering {
        (self.clone() - other.clone()).signum_eps(eps)
    }
}

impl Scalar for f64 {
    const MODE: Mode = Mode::Float;

    fn from_rational(r: &Rational) -> Self {
        ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn signum_eps(&self, eps: f64) -> Ordering {
        if *self > eps {
            Ordering::Greater
        } else if *self < -eps {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    fn render(&self) -> String {
        if *self == 0.0 {
            "0".to_string()
        } else {
            format!("{self}")
        }
    }
}

impl Scalar for Rational {
    const MODE: Mode = Mode::Exact;

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn signum_eps(&self, _eps: f64) -> Ordering {
        if self.is_positive() {
            Ordering::Greater
        } else if self.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    }

    fn render(&self) -> String {
        format_rational(self)
    }
}

/// Parses an integer, decimal fraction (`-1.25`, `.5`, `3.`) or `p/q` token exactly.
pub fn parse_rational(token: &str) -> Option<Rational> {
    if token.is_empty() {
        return None;
    }
    if let Some((num, den)) = token.split_once('/') {
        let num = BigInt::from_str(num).ok()?;
        let den = BigInt::from_str(den).ok()?;
        if den.is_zero() {
            return None;
        }
        return Some(Rational::new(num, den));
    }
    let (negative, body) = match token.as_bytes()[0] {
        b'-' => (true, &token[1..]),
        b'+' => (false, &token[1..]),
        _ => (false, token),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    let all_digits = |s: &str| s.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut num = if digits.is_empty() {
        BigInt::zero()
    } else {
        BigInt::from_str(&digits).ok()?
    };
    if negative {
        num = -num;
    }
    let den = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(Rational::new(num, den))
}

/// Formats a rational as a plain decimal when its expansion terminates,
/// otherwise as `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        return r.numer().to_string();
    }
    let mut den = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let mut twos = 0usize;
    let mut fives = 0usize;
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format!("{}/{}", r.numer(), r.denom());
    }
    let places = twos.max(fives);
    let scaled = r * Rational::from_integer(num_traits::pow(BigInt::from(10), places));
    let digits = scaled.to_integer().abs().to_string();
    let digits = format!("{digits:0>width$}", width = places + 1);
    let (int_part, frac_part) = digits.split_at(digits.len() - places);
    let sign = if r.is_negative() { "-" } else { "" };
    format!("{sign}{int_part}.{frac_part}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn parses_decimal_tokens_exactly() {
        assert_eq!(parse_rational("12"), Some(q(12, 1)));
        assert_eq!(parse_rational("-1.25"), Some(q(-5, 4)));
        assert_eq!(parse_rational(".5"), Some(q(1, 2)));
        assert_eq!(parse_rational("3."), Some(q(3, 1)));
        assert_eq!(parse_rational("+0.1"), Some(q(1, 10)));
        assert_eq!(parse_rational("2/6"), Some(q(1, 3)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("-"), None);
        assert_eq!(parse_rational("1e5"), None);
        assert_eq!(parse_rational("."), None);
    }

    #[test]
    fn formats_terminating_and_repeating() {
        assert_eq!(format_rational(&q(-6, 5)), "-1.2");
        assert_eq!(format_rational(&q(5, 2)), "2.5");
        assert_eq!(format_rational(&q(1, 40)), "0.025");
        assert_eq!(format_rational(&q(-1, 40)), "-0.025");
        assert_eq!(format_rational(&q(42, 1)), "42");
        assert_eq!(format_rational(&q(1, 3)), "1/3");
    }

    #[test]
    fn float_sign_respects_tolerance() {
        assert!(1e-8f64.is_zero_eps(DEFAULT_EPS));
        assert!((-2e-7f64).is_neg(DEFAULT_EPS));
        assert_eq!(1.0f64.cmp_eps(&(1.0 + 1e-9), DEFAULT_EPS), Ordering::Equal);
        let tiny = q(1, 1_000_000_000);
        assert!(tiny.is_pos(DEFAULT_EPS));
    }
}
