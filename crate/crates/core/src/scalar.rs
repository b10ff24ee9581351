//! Exact rational scalars.
//!
//! Every coordinate and every predicate in this crate is computed over
//! arbitrary-precision rationals. `num`'s `BigRational` keeps values reduced
//! with a positive denominator, so equal values always have identical
//! representation and comparisons are exact.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

use crate::error::{Error, Result};

/// The scalar type used throughout the crate: an always-reduced rational with
/// positive denominator.
pub type Scalar = BigRational;

/// Scalar from a machine integer.
pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

/// Scalar `p/q`. Panics on `q = 0`; intended for literals in code and tests.
pub fn frac(p: i64, q: i64) -> Scalar {
    assert!(q != 0, "zero denominator");
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p"` or `"p/q"`. Rejects `q = 0` and anything else malformed.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let s = s.trim();
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num =
        BigInt::from_str(num_str).map_err(|_| Error::Parse(format!("bad integer {num_str:?}")))?;
    let den = match den_str {
        Some(d) => BigInt::from_str(d).map_err(|_| Error::Parse(format!("bad integer {d:?}")))?,
        None => BigInt::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Formats as `"p"` or `"p/q"`; the inverse of [`parse_scalar`].
pub fn format_scalar(x: &Scalar) -> String {
    x.to_string()
}

/// Sign of a scalar as -1, 0 or 1.
pub fn sign(x: &Scalar) -> i8 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

/// Clears denominators and divides by the content, turning a rational vector
/// into the unique primitive integer vector with the same direction (up to
/// sign, which the caller fixes). Returns `None` when all entries are zero.
pub fn primitive_integer_vector(v: &[Scalar]) -> Option<Vec<BigInt>> {
    use num::Integer;
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    Some(ints.into_iter().map(|x| x / &gcd).collect())
}
