//! Exact arbitrary-precision rational scalars.
//!
//! Every scalar in the engine is a [`Rational`]: numerator and denominator
//! are arbitrary-precision integers, values are kept in lowest terms with a
//! positive denominator, and arithmetic is exact. The ASCII wire form is
//! `"p/q"`, or just `"p"` when the denominator is one, with an optional
//! leading minus sign.

use alloc::string::{String, ToString};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// The only scalar type of the engine. `num_rational::BigRational` already
/// maintains the lowest-terms / positive-denominator invariants.
pub type Rational = num_rational::BigRational;

/// Integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational `n/d`. Panics if `d == 0`; intended for literals in code.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses the ASCII form `"p/q"` or `"p"` with optional leading `-`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::InvalidInput(alloc::format!("malformed rational literal {s:?}"));
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let numer: BigInt = num_str.parse().map_err(|_| bad())?;
    let denom: BigInt = match den_str {
        Some(d) => d.parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::InvalidInput(alloc::format!(
            "zero denominator in rational literal {s:?}"
        )));
    }
    Ok(Rational::new(numer, denom))
}

/// Renders in the same ASCII form accepted by [`parse_rational`].
pub fn render_rational(r: &Rational) -> String {
    r.to_string()
}

/// True if `r` is a (possibly negative) integer.
pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Largest integer not exceeding `r`.
pub fn floor_int(r: &Rational) -> BigInt {
    r.floor().to_integer()
}

/// Smallest integer not below `r`.
pub fn ceil_int(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

/// Sign as -1 / 0 / +1.
pub fn sign(r: &Rational) -> i8 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        for s in [
            "0",
            "1",
            "-1",
            "2/3",
            "-7/5",
            "22/7",
            "-100000000000000000001/3",
        ] {
            let r = parse_rational(s).unwrap();
            assert_eq!(render_rational(&r), s);
        }
    }

    #[test]
    fn parse_normalizes_to_lowest_terms() {
        assert_eq!(parse_rational("4/6").unwrap(), frac(2, 3));
        assert_eq!(parse_rational("3/-6").unwrap(), frac(-1, 2));
        assert_eq!(render_rational(&parse_rational("-4/2").unwrap()), "-2");
    }

    #[test]
    fn rejects_malformed_literals() {
        for s in ["", "1/0", "a", "1/2/3", "1.5", "2 /3"] {
            assert!(parse_rational(s).is_err(), "accepted {s:?}");
        }
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = frac(1, 3);
        let b = frac(1, 6);
        assert_eq!(&a + &b, frac(1, 2));
        assert_eq!(&a - &b, frac(1, 6));
        assert_eq!(&a * &b, frac(1, 18));
        assert_eq!(&a / &b, int(2));
    }
}
