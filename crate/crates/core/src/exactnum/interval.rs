//! Rational intervals with outward rounding onto a dyadic grid.
//!
//! Every operation returns an interval that contains the exact result of
//! the operation applied to any members of its inputs. Endpoints are
//! rounded outward onto the grid `2^-bits` so that their size stays
//! bounded while precision is raised.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits as usize
}

/// Largest grid point `k / 2^bits` not above `q`.
pub(crate) fn floor_to_grid(q: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let n = (q.numer() * &scale).div_floor(q.denom());
    BigRational::new(n, scale)
}

/// Smallest grid point `k / 2^bits` not below `q`.
pub(crate) fn ceil_to_grid(q: &BigRational, bits: u32) -> BigRational {
    let scale = pow2(bits);
    let n = (q.numer() * &scale).div_ceil(q.denom());
    BigRational::new(n, scale)
}

impl Interval {
    pub fn point(q: BigRational) -> Self {
        Interval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    /// Encloses a rational by its neighbouring grid points.
    pub fn around(q: &BigRational, bits: u32) -> Self {
        Interval {
            lo: floor_to_grid(q, bits),
            hi: ceil_to_grid(q, bits),
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Sign of every member, if the interval does not straddle zero.
    pub fn sign(&self) -> Option<std::cmp::Ordering> {
        use std::cmp::Ordering::*;
        if self.lo.is_positive() {
            Some(Greater)
        } else if self.hi.is_negative() {
            Some(Less)
        } else if self.lo.is_zero() && self.hi.is_zero() {
            Some(Equal)
        } else {
            None
        }
    }

    /// Intersection of two intervals known to share a member.
    pub fn meet(&self, other: &Interval) -> Interval {
        let lo = if self.lo > other.lo {
            &self.lo
        } else {
            &other.lo
        };
        let hi = if self.hi < other.hi {
            &self.hi
        } else {
            &other.hi
        };
        if lo > hi {
            // Both are sound enclosures, so this only happens on a bug upstream.
            return self.clone();
        }
        Interval {
            lo: lo.clone(),
            hi: hi.clone(),
        }
    }

    /// Strictly below `other` everywhere.
    pub fn below(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &other.hi,
            hi: &self.hi - &other.lo,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn mul(&self, other: &Interval, bits: u32) -> Interval {
        let products = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let (lo, hi) = min_max(&products);
        Interval {
            lo: floor_to_grid(lo, bits),
            hi: ceil_to_grid(hi, bits),
        }
    }

    /// `None` when the divisor interval still contains zero.
    pub fn div(&self, other: &Interval, bits: u32) -> Option<Interval> {
        if other.contains_zero() {
            return None;
        }
        let quotients = [
            &self.lo / &other.lo,
            &self.lo / &other.hi,
            &self.hi / &other.lo,
            &self.hi / &other.hi,
        ];
        let (lo, hi) = min_max(&quotients);
        Some(Interval {
            lo: floor_to_grid(lo, bits),
            hi: ceil_to_grid(hi, bits),
        })
    }

    /// Enclosure of the square root of the non-negative part.
    pub fn sqrt(&self, bits: u32) -> Interval {
        let scale = pow2(2 * bits);
        let lo = if self.lo.is_positive() {
            let n = (self.lo.numer() * &scale).div_floor(self.lo.denom());
            BigRational::new(n.sqrt(), pow2(bits))
        } else {
            BigRational::zero()
        };
        let hi = if self.hi.is_positive() {
            let n = (self.hi.numer() * &scale).div_ceil(self.hi.denom());
            let mut s = n.sqrt();
            if &s * &s < n {
                s += 1;
            }
            BigRational::new(s, pow2(bits))
        } else {
            BigRational::zero()
        };
        Interval { lo, hi }
    }
}

fn min_max(values: &[BigRational]) -> (&BigRational, &BigRational) {
    let mut lo = &values[0];
    let mut hi = &values[0];
    for v in &values[1..] {
        if v < lo {
            lo = v;
        }
        if v > hi {
            hi = v;
        }
    }
    (lo, hi)
}

/// Rational square root when `q` is the square of a rational.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer();
    let d = q.denom();
    let rn = n.sqrt();
    let rd = d.sqrt();
    if &rn * &rn == *n && &rd * &rd == *d {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// Number of bits needed so that a grid of `2^-bits` resolves `q` (> 0).
pub(crate) fn bits_for(q: &BigRational) -> u32 {
    if !q.is_positive() {
        return 0;
    }
    // 2^-bits <= q  <=>  bits >= log2(d / n)
    let d_bits = q.denom().bits();
    let n_bits = q.numer().bits();
    d_bits.saturating_sub(n_bits).saturating_add(1) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn grid_rounding_is_outward() {
        let third = q(1, 3);
        let iv = Interval::around(&third, 10);
        assert!(iv.contains(&third));
        assert!(iv.width() <= q(1, 1024));
    }

    #[test]
    fn sqrt_encloses() {
        let two = Interval::point(q(2, 1));
        let s = two.sqrt(40);
        assert!(&s.lo * &s.lo <= q(2, 1));
        assert!(&s.hi * &s.hi >= q(2, 1));
        assert!(s.width() <= q(1, 1 << 39));
    }

    #[test]
    fn division_by_straddling_interval_is_refused() {
        let a = Interval::point(q(1, 1));
        let b = Interval::new(q(-1, 10), q(1, 10));
        assert!(a.div(&b, 10).is_none());
    }

    #[test]
    fn rational_square_roots() {
        assert_eq!(rational_sqrt(&q(9, 4)), Some(q(3, 2)));
        assert_eq!(rational_sqrt(&q(2, 1)), None);
        assert_eq!(rational_sqrt(&q(-4, 1)), None);
    }
}
