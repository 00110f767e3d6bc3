//! Big-integer certificates: digit counts and logarithm comparisons.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{Pow, Signed, Zero};

use super::NumError;

/// Number of base-10 digits of a positive integer.
pub fn digit_count(n: &BigInt) -> Result<usize, NumError> {
    if !n.is_positive() {
        return Err(NumError::Domain(format!("digit count of non-positive {n}")));
    }
    Ok(n.to_str_radix(10).len())
}

/// Outcome of comparing `log_b(a)` with `p/q`, with the integers that decide it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogComparison {
    pub ordering: Ordering,
    /// `a^q`
    pub lhs: BigInt,
    /// `b^p`
    pub rhs: BigInt,
}

/// Orders `log_b(a)` against `p/q` by comparing `a^q` with `b^p`.
///
/// `x ↦ b^x` and `x ↦ x^q` are increasing for `b > 1`, `q > 0`, so applying
/// both to each side preserves the order.
pub fn compare_log(a: u64, b: u64, p: i64, q: u32) -> Result<LogComparison, NumError> {
    if a < 2 || b < 2 {
        return Err(NumError::Domain(
            "logarithm base and argument must exceed 1".into(),
        ));
    }
    if q == 0 {
        return Err(NumError::Domain("denominator must be positive".into()));
    }
    let lhs = BigInt::from(a).pow(q);
    if p <= 0 {
        // log_b(a) > 0 >= p/q
        return Ok(LogComparison {
            ordering: Ordering::Greater,
            lhs,
            rhs: BigInt::zero(),
        });
    }
    let rhs = BigInt::from(b).pow(p as u64);
    Ok(LogComparison {
        ordering: lhs.cmp(&rhs),
        lhs,
        rhs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digits() {
        assert_eq!(digit_count(&BigInt::from(125).pow(100u32)).unwrap(), 210);
        assert_eq!(digit_count(&BigInt::from(1000)).unwrap(), 4);
        assert!(digit_count(&BigInt::zero()).is_err());
        assert!(digit_count(&BigInt::from(-5)).is_err());
    }

    #[test]
    fn log_comparisons() {
        let c = compare_log(3, 2, 3, 2).unwrap();
        assert_eq!(
            (c.ordering, c.lhs, c.rhs),
            (Ordering::Greater, 9.into(), 8.into())
        );
        let c = compare_log(5, 3, 3, 2).unwrap();
        assert_eq!(
            (c.ordering, c.lhs, c.rhs),
            (Ordering::Less, 25.into(), 27.into())
        );
        assert_eq!(compare_log(4, 2, 2, 1).unwrap().ordering, Ordering::Equal);
    }
}
