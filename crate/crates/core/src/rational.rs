//! Exact rational scalars and their text form.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Parses `p/q`, an integer, or a finite decimal such as `-0.125` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let s = text.trim();
    let malformed = || Error::MalformedNumber(text.to_string());
    if s.is_empty() {
        return Err(malformed());
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_integer(num).ok_or_else(malformed)?;
        let den = parse_integer(den).ok_or_else(malformed)?;
        if den.is_zero() {
            return Err(Error::ZeroDenominator(text.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match s.as_bytes()[0] {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(malformed());
    }
    let all_digits = |p: &str| p.bytes().all(|b| b.is_ascii_digit());
    if !all_digits(int_part) || !all_digits(frac_part) {
        return Err(malformed());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().map_err(|_| malformed())?;
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Canonical text form: `p/q`, or just `p` for integers.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_fractions_decimals_and_integers() {
        assert_eq!(parse_rational("3/6").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("0.5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-1.125").unwrap(), rat(-9, 8));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("4/-8").unwrap(), rat(-1, 2));
    }

    #[test]
    fn rejects_malformed_text() {
        for bad in ["", "abc", "1/", "/2", "1.2.3", "1e3", "--1", "1/2/3", "."] {
            assert!(
                matches!(parse_rational(bad), Err(Error::MalformedNumber(_))),
                "{bad:?} should be malformed"
            );
        }
        assert!(matches!(parse_rational("1/0"), Err(Error::ZeroDenominator(_))));
    }

    #[test]
    fn formats_canonically() {
        assert_eq!(format_rational(&rat(2, 4)), "1/2");
        assert_eq!(format_rational(&int(-3)), "-3");
    }

    proptest! {
        #[test]
        fn format_then_parse_is_identity(n in -10_000i64..10_000, d in 1i64..10_000) {
            let value = rat(n, d);
            prop_assert_eq!(parse_rational(&format_rational(&value)).unwrap(), value);
        }
    }
}
