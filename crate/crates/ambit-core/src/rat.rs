//! Exact rational scalars.
//!
//! Every coefficient, distance and function value in this crate is an
//! arbitrary-precision rational; nothing is ever rounded. Values travel
//! through files as `p/q` strings in lowest terms with positive
//! denominator (`p` alone when the denominator is 1).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::One;

use crate::error::{Error, Result};

/// Arbitrary-precision rational number.
pub type Rat = BigRational;

/// Rational from an integer pair. Panics if `den == 0`; intended for
/// literals in code and tests.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

/// Parse a `p/q` or `p` literal. The result is reduced to lowest terms
/// with a positive denominator; a zero denominator is rejected.
pub fn parse_rat(literal: &str) -> Result<Rat> {
    let bad = || Error::BadRational {
        literal: literal.to_string(),
    };
    let (num_str, den_str) = match literal.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (literal, None),
    };
    let numer: BigInt = num_str.trim().parse().map_err(|_| bad())?;
    let denom: BigInt = match den_str {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => BigInt::one(),
    };
    if denom == BigInt::from(0) {
        return Err(bad());
    }
    Ok(Rat::new(numer, denom))
}

/// Render in lowest terms with positive denominator; integers drop the
/// `/q` part. This is the one textual form used in files and reports.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "1", "-7", "1/2", "-3/4", "22/7"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(format_rat(&r), s);
        }
    }

    #[test]
    fn parse_normalizes() {
        assert_eq!(format_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert_eq!(format_rat(&parse_rat("3/-2").unwrap()), "-3/2");
        assert_eq!(format_rat(&parse_rat("-0").unwrap()), "0");
        assert_eq!(format_rat(&parse_rat("4/2").unwrap()), "2");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "a", "1/0", "1/2/3", "1.5"] {
            assert!(parse_rat(s).is_err(), "{s:?} should not parse");
        }
    }
}
