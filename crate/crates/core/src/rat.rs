//! Exact rational scalars.
//!
//! Every GPT-side quantity in this crate is a [`Rat`]: an arbitrary-precision
//! rational kept in lowest terms with a positive denominator. There is no
//! rounding anywhere on this side of the library; the quantum module is the
//! only place floating point appears.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

/// Arbitrary-precision rational. `num` keeps it reduced with denominator > 0.
pub type Rat = BigRational;

/// Shorthand for small rational constants.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Integer as a rational.
pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn zero() -> Rat {
    Rat::zero()
}

pub fn one() -> Rat {
    Rat::one()
}

/// Parses "p/q" or a plain integer, exactly.
pub fn parse_rat(s: &str) -> Result<Rat> {
    Rat::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational `{s}`: {e}")))
}

/// Renders in lowest terms, omitting the denominator when it is 1.
pub fn format_rat(r: &Rat) -> String {
    r.to_string()
}

/// Exact conversion of an f64 (every finite double is a dyadic rational).
pub fn rat_from_f64(x: f64) -> Result<Rat> {
    Rat::from_float(x).ok_or_else(|| Error::Parse(format!("non-finite value {x}")))
}

/// Nearest f64 to an exact rational; fine for display and quantum bridging.
pub fn rat_to_f64(r: &Rat) -> f64 {
    let f = |b: &BigInt| -> f64 {
        let s = b.to_string();
        s.parse::<f64>().unwrap_or(f64::NAN)
    };
    // Scale down huge numerator/denominator pairs before dividing.
    let digits = r.numer().abs().to_string().len() as i64 - r.denom().to_string().len() as i64;
    if digits.abs() > 250 {
        return if digits > 0 {
            f64::INFINITY * r.numer().signum().to_string().parse::<f64>().unwrap_or(1.0)
        } else {
            0.0
        };
    }
    f(r.numer()) / f(r.denom())
}

/// Sum of a slice of rationals.
pub fn rat_sum<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> Rat {
    xs.into_iter().fold(Rat::zero(), |acc, x| acc + x)
}

/// Exact dot product.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "1", "-3", "1/2", "-7/5", "10/4"] {
            let r = parse_rat(s).unwrap();
            let t = format_rat(&r);
            assert_eq!(parse_rat(&t).unwrap(), r);
        }
        assert_eq!(format_rat(&parse_rat("10/4").unwrap()), "5/2");
        assert_eq!(format_rat(&parse_rat("2/1").unwrap()), "2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1.5").is_err());
    }

    #[test]
    fn dot_is_exact() {
        let a = vec![rat(1, 3), rat(1, 7)];
        let b = vec![rat(3, 1), rat(7, 1)];
        assert_eq!(dot(&a, &b), int(2));
    }

    #[test]
    fn f64_round_trips_for_dyadics() {
        let r = rat_from_f64(0.375).unwrap();
        assert_eq!(r, rat(3, 8));
        assert_eq!(rat_to_f64(&r), 0.375);
    }
}
