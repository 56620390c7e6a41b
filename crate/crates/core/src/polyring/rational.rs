use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact rational coefficient, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Formats as `p/q`, or `p` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parses `p`, `-p` or `p/q` (surrounding whitespace ignored).
pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = |position: usize| Error::Syntax {
        position,
        expected: "rational literal p or p/q".into(),
    };
    let (num_part, den_part) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numer: BigInt = num_part.parse().map_err(|_| bad(0))?;
    let denom = match den_part {
        Some(d) => {
            if d.starts_with(['-', '+']) {
                return Err(bad(num_part.len() + 1));
            }
            let d: BigInt = d.parse().map_err(|_| bad(num_part.len() + 1))?;
            if d.is_zero() {
                return Err(Error::ZeroDenominator {
                    position: num_part.len() + 1,
                });
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(Rational::new(numer, denom))
}

pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or_else(|| {
        if value.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes_sign_and_gcd() {
        let r = parse_rational("6/-4");
        assert!(r.is_err());
        let r = parse_rational("-6/4").unwrap();
        assert_eq!(format_rational(&r), "-3/2");
        assert_eq!(format_rational(&parse_rational("0/7").unwrap()), "0");
        assert!(parse_rational("0/7").unwrap().denom().is_one());
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert!(matches!(
            parse_rational("3/0"),
            Err(Error::ZeroDenominator { .. })
        ));
    }
}
