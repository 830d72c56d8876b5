//! Exact rationals and integer-vector helpers.
//!
//! Every number in the system is a [`Rational`]. `num-rational` keeps values
//! reduced with a positive denominator, which is the canonical form the rest
//! of the code relies on.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

/// Builds `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds `n/d` in canonical form. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds a point from integer coordinates.
pub fn point(coords: &[i64]) -> Vec<Rational> {
    coords.iter().map(|&c| int(c)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RationalParseError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}`")]
    Malformed(String),
    #[error("denominator must be positive in `{0}`")]
    NonPositiveDenominator(String),
}

/// Parses `p`, `-p` or `p/q` with `q > 0`. Decimal notation is rejected.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numerator = parse_integer(num).ok_or_else(|| RationalParseError::Malformed(text.into()))?;
    let denominator = match den {
        None => BigInt::one(),
        Some(d) => {
            let d = parse_integer(d).ok_or_else(|| RationalParseError::Malformed(text.into()))?;
            if !d.is_positive() {
                return Err(RationalParseError::NonPositiveDenominator(text.into()));
            }
            d
        }
    };
    Ok(Rational::new(numerator, denominator))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Displays a rational as `p` or `p/q`.
pub struct Display<'a>(pub &'a Rational);

impl fmt::Display for Display<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

pub fn to_string(r: &Rational) -> String {
    Display(r).to_string()
}

/// True when `r` is reduced with a positive denominator.
pub fn is_canonical(r: &Rational) -> bool {
    r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
}

/// Debug-build hook asserting canonical form.
#[inline]
pub fn debug_assert_canonical(r: &Rational) {
    debug_assert!(is_canonical(r), "non-canonical rational {}/{}", r.numer(), r.denom());
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

pub fn dot_int(a: &[BigInt], b: &[BigInt]) -> BigInt {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(BigInt::zero(), |acc, (x, y)| acc + x * y)
}

/// Divides an integer vector by the gcd of its entries. The zero vector is
/// left untouched.
pub fn primitive(v: &mut [BigInt]) {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Scales a rational vector by the lcm of its denominators and returns the
/// primitive integer vector with the same direction.
pub fn integer_direction(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let mut out: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect();
    primitive(&mut out);
    out
}

/// Like [`integer_direction`] but only clears denominators, keeping the
/// scale factor positive and the vector integral.
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let l = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    v.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()
}

pub fn to_rational_vec(v: &[BigInt]) -> Vec<Rational> {
    v.iter().map(|x| Rational::from_integer(x.clone())).collect()
}

pub fn abs(r: &Rational) -> Rational {
    r.abs()
}
