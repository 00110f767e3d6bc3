//! Exact arithmetic: constructible reals, big rationals and polynomial
//! algebra. Every certificate in the crate bottoms out here.

mod integer;
mod interval;
mod multipoly;
mod poly;
mod real;
mod tower;

pub use integer::{compare_log, digit_count, LogComparison};
pub use interval::{rational_sqrt, Interval};
pub use multipoly::{expand_product, Eisenstein, Monomial, MultiPolynomial};
pub use poly::{divisors, IntPolynomial};
pub use real::{compare, ExactReal, MAX_REFINEMENT_STEPS};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NumError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("interval refinement exhausted its step budget")]
    RefinementExhausted,
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}

/// Parses `"-3"`, `"3/5"` or `"0.25"` into a rational.
pub fn parse_rational(text: &str) -> Result<BigRational, NumError> {
    let t = text.trim();
    let bad = || NumError::Parse(text.to_string());
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let negative = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n: BigInt = digits.parse().map_err(|_| bad())?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let q = BigRational::new(n, d);
        return Ok(if negative { -q } else { q });
    }
    let n: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(n))
}

/// Decimal rendering of `q` at `digits` significant digits, rounding half
/// to even, without exponent notation and without trailing zeros.
pub fn format_significant(q: &BigRational, digits: u32) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let negative = q.is_negative();
    let mag = q.abs();
    let ten = BigInt::from(10);
    // exponent e with 10^e <= mag < 10^(e+1)
    let mut e: i64 = mag.numer().to_string().len() as i64 - mag.denom().to_string().len() as i64;
    let pow10 = |k: i64| -> BigRational {
        if k >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), k as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-k) as usize))
        }
    };
    while mag < pow10(e) {
        e -= 1;
    }
    while mag >= pow10(e + 1) {
        e += 1;
    }
    let shift = digits as i64 - 1 - e;
    let scaled = &mag * pow10(shift);
    let mut n = round_half_even(&scaled);
    let mut shift = shift;
    if n == num_traits::pow(ten.clone(), digits as usize) {
        n /= &ten;
        shift -= 1;
    }
    // value = n * 10^-shift
    let mut s = n.to_string();
    let text = if shift <= 0 {
        s.push_str(&"0".repeat((-shift) as usize));
        s
    } else {
        let shift = shift as usize;
        if s.len() <= shift {
            s = format!("{}{}", "0".repeat(shift - s.len() + 1), s);
        }
        let (int, frac) = s.split_at(s.len() - shift);
        let frac = frac.trim_end_matches('0');
        if frac.is_empty() {
            int.to_string()
        } else {
            format!("{int}.{frac}")
        }
    };
    if negative {
        format!("-{text}")
    } else {
        text
    }
}

fn round_half_even(q: &BigRational) -> BigInt {
    let (fl, rem) = q.numer().div_mod_floor(q.denom());
    let twice: BigInt = &rem * 2;
    match twice.cmp(q.denom()) {
        std::cmp::Ordering::Less => fl,
        std::cmp::Ordering::Greater => fl + 1,
        std::cmp::Ordering::Equal => {
            if fl.is_even() {
                fl
            } else {
                fl + 1
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("3/5").unwrap(), q(3, 5));
        assert_eq!(parse_rational("-0.25").unwrap(), q(-1, 4));
        assert_eq!(parse_rational(" 7 ").unwrap(), q(7, 1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn significant_digits() {
        assert_eq!(format_significant(&q(1, 3), 12), "0.333333333333");
        assert_eq!(format_significant(&q(2, 3), 12), "0.666666666667");
        assert_eq!(format_significant(&q(-800, 1), 12), "-800");
        assert_eq!(format_significant(&q(1, 8), 2), "0.12");
        assert_eq!(format_significant(&q(3, 8), 2), "0.38");
        assert_eq!(
            format_significant(&q(9_999_999_999_995, 10), 12),
            "1000000000000"
        );
        assert_eq!(format_significant(&q(12345, 1_000_000), 3), "0.0123");
    }
}
