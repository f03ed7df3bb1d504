//! Exact rational scalars.
//!
//! All quantities in the crate (Gram entries, Cartan entries, projection
//! coefficients, base coordinates) are arbitrary-precision rationals, kept
//! in lowest terms with positive denominator by the underlying
//! [`num_rational::BigRational`] type. Rationals serialize as `"p/q"`, or
//! `"p"` when the denominator is one, which is exactly what the `Display`
//! and `FromStr` implementations produce and accept.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational number, always in lowest terms.
pub type Rat = num_rational::BigRational;

/// `n` as a rational.
pub fn rint(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n/d` as a rational (panics if `d == 0`).
pub fn rfrac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn rzero() -> Rat {
    Rat::zero()
}

pub fn rone() -> Rat {
    Rat::one()
}

/// Parse a rational from `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| ParseRatError(s.to_string()))?;
            let d: BigInt = d.trim().parse().map_err(|_| ParseRatError(s.to_string()))?;
            if d.is_zero() {
                return Err(ParseRatError(s.to_string()));
            }
            Ok(Rat::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().map_err(|_| ParseRatError(s.to_string()))?;
            Ok(Rat::from_integer(n))
        }
    }
}

/// Format as `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        let mut s = r.numer().to_string();
        s.push('/');
        s.push_str(&r.denom().to_string());
        s
    }
}

/// Format a coordinate vector as `(a, b, ...)`.
pub fn format_coords(v: &[Rat]) -> String {
    let mut s = String::from("(");
    for (i, c) in v.iter().enumerate() {
        if i > 0 {
            s.push_str(", ");
        }
        s.push_str(&format_rat(c));
    }
    s.push(')');
    s
}

/// `true` iff the rational is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// `true` iff every entry is an integer.
pub fn all_integer(v: &[Rat]) -> bool {
    v.iter().all(is_integer)
}

/// Entrywise negation.
pub fn neg_coords(v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|c| -c).collect()
}

/// Entrywise sum (lengths must agree).
pub fn add_coords(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Entrywise difference (lengths must agree).
pub fn sub_coords(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Scalar multiple.
pub fn scale_coords(c: &Rat, v: &[Rat]) -> Vec<Rat> {
    v.iter().map(|x| c * x).collect()
}

/// `a + c*b`.
pub fn add_scaled(a: &[Rat], c: &Rat, b: &[Rat]) -> Vec<Rat> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + c * y).collect()
}

/// All-zero vector of length `n`.
pub fn zero_coords(n: usize) -> Vec<Rat> {
    (0..n).map(|_| Rat::zero()).collect()
}

pub fn is_zero_coords(v: &[Rat]) -> bool {
    v.iter().all(|c| c.is_zero())
}

/// Signs of the nonzero entries: `(has_positive, has_negative)`.
pub fn coord_signs(v: &[Rat]) -> (bool, bool) {
    let mut pos = false;
    let mut neg = false;
    for c in v {
        if c.is_positive() {
            pos = true;
        } else if c.is_negative() {
            neg = true;
        }
    }
    (pos, neg)
}

/// Error parsing a rational from text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseRatError(pub String);

impl fmt::Display for ParseRatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid rational literal: {:?}", self.0)
    }
}
