//! Exact rational scalars and their decimal text forms.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact scalar used for every range-plane coordinate and field value.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty numeric literal")]
    Empty,
    #[error("invalid numeric literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Order by cross-multiplication; cheaper than the library's
/// continued-fraction comparison for the small operands seen here.
pub fn qcmp(a: &Rational, b: &Rational) -> std::cmp::Ordering {
    if a.denom() == b.denom() {
        a.numer().cmp(b.numer())
    } else {
        (a.numer() * b.denom()).cmp(&(b.numer() * a.denom()))
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses a decimal literal (`-1.25`, `3e-2`, `.5`) or a fraction (`1/3`)
/// into the exact rational it denotes.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    if let Some((n, d)) = s.split_once('/') {
        let num = parse_decimal(n).ok_or_else(|| ParseRationalError::Invalid(s.into()))?;
        let den = parse_decimal(d).ok_or_else(|| ParseRationalError::Invalid(s.into()))?;
        if den.is_zero() {
            return Err(ParseRationalError::ZeroDenominator(s.into()));
        }
        return Ok(num / den);
    }
    parse_decimal(s).ok_or_else(|| ParseRationalError::Invalid(s.into()))
}

fn parse_decimal(s: &str) -> Option<Rational> {
    let s = s.trim();
    let (negative, body) = match s.as_bytes().first()? {
        b'-' => (true, &s[1..]),
        b'+' => (false, &s[1..]),
        _ => (false, s),
    };
    let (mantissa, exponent) = match body.find(['e', 'E']) {
        Some(pos) => (&body[..pos], body[pos + 1..].parse::<i32>().ok()?),
        None => (body, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i, f),
        None => (mantissa, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = Rational::from_integer(digits.parse::<BigInt>().ok()?);
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    if scale >= 0 {
        value *= Rational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= Rational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

/// True when the value has a terminating decimal expansion.
pub fn is_terminating(r: &Rational) -> bool {
    let mut d = r.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    while d.is_even() {
        d /= &two;
    }
    while (&d % &five).is_zero() {
        d /= &five;
    }
    d.is_one()
}

/// Decimal rendering: exact when the expansion terminates, otherwise
/// truncated after `max_frac` fractional digits.
pub fn to_decimal_string(r: &Rational, max_frac: usize) -> String {
    let negative = r.is_negative();
    let a = r.abs();
    let (whole, rem) = a.numer().div_rem(a.denom());
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if !rem.is_zero() {
        out.push('.');
        let mut rem = rem;
        let ten = BigInt::from(10);
        for _ in 0..max_frac {
            rem *= &ten;
            let (digit, next) = rem.div_rem(a.denom());
            out.push_str(&digit.to_string());
            rem = next;
            if rem.is_zero() {
                break;
            }
        }
    }
    out
}

/// Text form used by the mesh writer: a decimal literal when exact,
/// otherwise `num/den`.
pub fn to_literal(r: &Rational) -> String {
    if is_terminating(r) {
        to_decimal_string(r, usize::MAX)
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        if r.numer().sign() == Sign::Minus {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Exact rational closest to `x` among those with denominator `10^digits`.
pub fn from_f64_rounded(x: f64, digits: u32) -> Rational {
    let scale = 10f64.powi(digits as i32);
    let n = (x * scale).round() as i64;
    Rational::new(BigInt::from(n), num_traits::pow(BigInt::from(10), digits as usize))
}

pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
    (a + b) / int(2)
}

/// Wrapper that prints a rational as a short decimal.
pub struct Approx<'a>(pub &'a Rational);

impl fmt::Display for Approx<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&to_f64(self.0), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_rational("0.1").unwrap(), ratio(1, 10));
        assert_eq!(parse_rational("-1.25").unwrap(), ratio(-5, 4));
        assert_eq!(parse_rational("3e-2").unwrap(), ratio(3, 100));
        assert_eq!(parse_rational("2.5E1").unwrap(), int(25));
        assert_eq!(parse_rational(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_rational("1/3").unwrap(), ratio(1, 3));
        assert_eq!(parse_rational("+7").unwrap(), int(7));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("nan").is_err());
        assert!(parse_rational("inf").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("-").is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal_string(&ratio(-5, 4), 10), "-1.25");
        assert_eq!(to_decimal_string(&ratio(1, 3), 4), "0.3333");
        assert_eq!(to_literal(&ratio(1, 3)), "1/3");
        assert_eq!(to_literal(&ratio(3, 8)), "0.375");
        assert_eq!(to_literal(&int(-2)), "-2");
    }

    proptest::proptest! {
        #[test]
        fn literal_round_trip(n in -100000i64..100000, d in 1i64..5000) {
            let r = ratio(n, d);
            proptest::prop_assert_eq!(parse_rational(&to_literal(&r)).unwrap(), r);
        }
    }
}
