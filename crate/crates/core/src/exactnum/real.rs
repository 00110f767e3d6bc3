//! Constructible reals.
//!
//! An [`ExactReal`] is an immutable expression DAG over big rationals with
//! the operations `+ - * /` and `sqrt`. Each node carries a cached rational
//! interval that only ever shrinks. Comparisons try the intervals first and
//! fall back to an exact zero test in a tower of quadratic extensions
//! (see [`super::tower`]), so equal values always compare as `Equal`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::interval::{rational_sqrt, Interval};
use super::tower::Tower;
use super::NumError;

/// Precision, in bits below the binary point, of the first interval evaluation.
const INITIAL_BITS: u32 = 64;
/// Precision ceiling for a single refinement request.
const MAX_BITS: u32 = 1 << 20;
/// Number of width-halving steps `compare` may spend before giving up.
pub const MAX_REFINEMENT_STEPS: u32 = 4096;

#[derive(Debug)]
pub(crate) enum Expr {
    Rational(BigRational),
    Add(ExactReal, ExactReal),
    Sub(ExactReal, ExactReal),
    Mul(ExactReal, ExactReal),
    Div(ExactReal, ExactReal),
    Sqrt(ExactReal),
}

#[derive(Debug, Clone)]
struct Approx {
    bits: u32,
    interval: Option<Interval>,
}

pub(crate) struct Node {
    pub(crate) expr: Expr,
    cache: Mutex<Option<Approx>>,
}

impl fmt::Debug for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.expr.fmt(f)
    }
}

/// A real number in the closure of the rationals under `+ - * /` and `sqrt`.
#[derive(Clone)]
pub struct ExactReal(pub(crate) Arc<Node>);

impl ExactReal {
    fn from_expr(expr: Expr) -> Self {
        let cache = match &expr {
            Expr::Rational(q) => Some(Approx {
                bits: u32::MAX,
                interval: Some(Interval::point(q.clone())),
            }),
            _ => None,
        };
        ExactReal(Arc::new(Node {
            expr,
            cache: Mutex::new(cache),
        }))
    }

    pub fn rational(q: BigRational) -> Self {
        Self::from_expr(Expr::Rational(q))
    }

    pub fn from_integer(n: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// The rational value, when the expression is a bare rational leaf.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0.expr {
            Expr::Rational(q) => Some(q),
            _ => None,
        }
    }

    pub(crate) fn node_id(&self) -> usize {
        Arc::as_ptr(&self.0) as usize
    }

    /// Number of distinct nodes reachable from this value.
    pub fn node_count(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![self.clone()];
        while let Some(v) = stack.pop() {
            if !seen.insert(v.node_id()) {
                continue;
            }
            match &v.0.expr {
                Expr::Rational(_) => {}
                Expr::Sqrt(a) => stack.push(a.clone()),
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                    stack.push(a.clone());
                    stack.push(b.clone());
                }
            }
        }
        seen.len()
    }

    pub fn checked_div(&self, other: &ExactReal) -> Result<ExactReal, NumError> {
        if other.is_zero()? {
            return Err(NumError::DivisionByZero);
        }
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return Ok(Self::rational(a / b));
        }
        if let Some(b) = other.as_rational() {
            if b.is_one() {
                return Ok(self.clone());
            }
        }
        if self.as_rational().is_some_and(|a| a.is_zero()) {
            return Ok(ExactReal::zero());
        }
        Ok(Self::from_expr(Expr::Div(self.clone(), other.clone())))
    }

    /// Principal square root. Fails with a domain error on negative input.
    pub fn sqrt(&self) -> Result<ExactReal, NumError> {
        if let Some(q) = self.as_rational() {
            if q.is_negative() {
                return Err(NumError::Domain(format!(
                    "square root of negative rational {q}"
                )));
            }
            if let Some(r) = rational_sqrt(q) {
                return Ok(Self::rational(r));
            }
            return Ok(Self::from_expr(Expr::Sqrt(self.clone())));
        }
        match self.signum()? {
            Ordering::Less => Err(NumError::Domain(format!(
                "square root of negative value ≈ {}",
                self.to_f64()
            ))),
            Ordering::Equal => Ok(ExactReal::zero()),
            Ordering::Greater => Ok(Self::from_expr(Expr::Sqrt(self.clone()))),
        }
    }

    pub fn square(&self) -> ExactReal {
        self * self
    }

    pub fn abs(&self) -> Result<ExactReal, NumError> {
        Ok(match self.signum()? {
            Ordering::Less => -self,
            _ => self.clone(),
        })
    }

    /// Enclosure at grid precision `2^-bits`; `None` while a divisor still
    /// straddles zero at that precision.
    fn approx(&self, bits: u32) -> Option<Interval> {
        {
            let cache = self.0.cache.lock().expect("interval cache poisoned");
            if let Some(a) = cache.as_ref() {
                if a.bits >= bits {
                    return a.interval.clone();
                }
            }
        }
        let fresh = match &self.0.expr {
            Expr::Rational(q) => Some(Interval::around(q, bits)),
            Expr::Add(a, b) => Some(a.approx(bits)?.add(&b.approx(bits)?)),
            Expr::Sub(a, b) => Some(a.approx(bits)?.sub(&b.approx(bits)?)),
            Expr::Mul(a, b) => Some(a.approx(bits)?.mul(&b.approx(bits)?, bits)),
            Expr::Div(a, b) => a.approx(bits)?.div(&b.approx(bits)?, bits),
            Expr::Sqrt(a) => Some(a.approx(bits)?.sqrt(bits)),
        };
        let mut cache = self.0.cache.lock().expect("interval cache poisoned");
        let merged = match (cache.as_ref().and_then(|a| a.interval.as_ref()), fresh) {
            (Some(old), Some(new)) => Some(old.meet(&new)),
            (Some(old), None) => Some(old.clone()),
            (None, new) => new,
        };
        if cache.as_ref().is_none_or(|a| a.bits < bits) {
            *cache = Some(Approx {
                bits,
                interval: merged.clone(),
            });
        }
        merged
    }

    /// Current cached enclosure, computing a first one if needed.
    pub fn interval(&self) -> Interval {
        self.refine_to_bits(INITIAL_BITS)
            .expect("initial interval evaluation failed")
    }

    fn cached_bits(&self) -> u32 {
        let cache = self.0.cache.lock().expect("interval cache poisoned");
        cache.as_ref().map_or(0, |a| a.bits)
    }

    fn refine_to_bits(&self, bits: u32) -> Result<Interval, NumError> {
        let mut b = bits.max(16);
        loop {
            if let Some(iv) = self.approx(b) {
                return Ok(iv);
            }
            if b >= MAX_BITS {
                return Err(NumError::RefinementExhausted);
            }
            b = b.saturating_mul(2).min(MAX_BITS);
        }
    }

    /// Enclosure of width at most `width` (> 0).
    pub fn refine(&self, width: &BigRational) -> Result<Interval, NumError> {
        let mut bits = self
            .cached_bits()
            .clamp(INITIAL_BITS, MAX_BITS)
            .max(super::interval::bits_for(width) + 4);
        loop {
            let iv = self.refine_to_bits(bits)?;
            if &iv.width() <= width {
                return Ok(iv);
            }
            if bits >= MAX_BITS {
                return Err(NumError::RefinementExhausted);
            }
            bits = bits.saturating_add(bits / 2 + 16).min(MAX_BITS);
        }
    }

    /// Decimal approximation, good to double precision.
    pub fn to_f64(&self) -> f64 {
        let iv = self
            .refine(&BigRational::new(BigInt::one(), BigInt::one() << 80usize))
            .unwrap_or_else(|_| self.interval());
        iv.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Rational approximation within `width` of the true value.
    pub fn approximate(&self, width: &BigRational) -> Result<BigRational, NumError> {
        Ok(self.refine(width)?.midpoint())
    }

    /// Exact zero test.
    pub fn is_zero(&self) -> Result<bool, NumError> {
        if let Some(q) = self.as_rational() {
            return Ok(q.is_zero());
        }
        if let Some(sign) = self.interval().sign() {
            return Ok(sign == Ordering::Equal);
        }
        Ok(Tower::new().is_zero(self))
    }

    /// Exact sign.
    pub fn signum(&self) -> Result<Ordering, NumError> {
        compare(self, &ExactReal::zero())
    }
}

/// Exact ordering of two constructible reals.
///
/// Intervals are refined (target width halving from 1) only after the
/// exact zero test has established that the difference is nonzero, so
/// the refinement loop always terminates.
pub fn compare(x: &ExactReal, y: &ExactReal) -> Result<Ordering, NumError> {
    if let (Some(a), Some(b)) = (x.as_rational(), y.as_rational()) {
        return Ok(a.cmp(b));
    }
    if Arc::ptr_eq(&x.0, &y.0) {
        return Ok(Ordering::Equal);
    }
    let ix = x.interval();
    let iy = y.interval();
    if ix.below(&iy) {
        return Ok(Ordering::Less);
    }
    if iy.below(&ix) {
        return Ok(Ordering::Greater);
    }
    let diff = x - y;
    if Tower::new().is_zero(&diff) {
        return Ok(Ordering::Equal);
    }
    let two = BigRational::from_integer(BigInt::from(2));
    let mut width = BigRational::one();
    for _ in 0..MAX_REFINEMENT_STEPS {
        let ix = x.refine(&width)?;
        let iy = y.refine(&width)?;
        if ix.below(&iy) {
            return Ok(Ordering::Less);
        }
        if iy.below(&ix) {
            return Ok(Ordering::Greater);
        }
        width /= &two;
    }
    Err(NumError::RefinementExhausted)
}

impl PartialEq for ExactReal {
    fn eq(&self, other: &Self) -> bool {
        compare(self, other).expect("exact comparison failed") == Ordering::Equal
    }
}

impl Eq for ExactReal {}

impl PartialOrd for ExactReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExactReal {
    fn cmp(&self, other: &Self) -> Ordering {
        compare(self, other).expect("exact comparison failed")
    }
}

impl fmt::Debug for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => write!(f, "≈{}", self.to_f64()),
        }
    }
}

impl fmt::Display for ExactReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(q) => write!(f, "{q}"),
            None => write!(
                f,
                "{}",
                super::format_significant(&self.approximate_for_display(), 12)
            ),
        }
    }
}

impl ExactReal {
    fn approximate_for_display(&self) -> BigRational {
        let width = BigRational::new(BigInt::one(), BigInt::one() << 100usize);
        self.approximate(&width)
            .unwrap_or_else(|_| self.interval().midpoint())
    }
}

impl From<BigRational> for ExactReal {
    fn from(q: BigRational) -> Self {
        ExactReal::rational(q)
    }
}

impl From<i64> for ExactReal {
    fn from(n: i64) -> Self {
        ExactReal::from_integer(n)
    }
}

fn add_impl(a: &ExactReal, b: &ExactReal) -> ExactReal {
    match (a.as_rational(), b.as_rational()) {
        (Some(x), Some(y)) => ExactReal::rational(x + y),
        (Some(x), _) if x.is_zero() => b.clone(),
        (_, Some(y)) if y.is_zero() => a.clone(),
        _ => ExactReal::from_expr(Expr::Add(a.clone(), b.clone())),
    }
}

fn sub_impl(a: &ExactReal, b: &ExactReal) -> ExactReal {
    match (a.as_rational(), b.as_rational()) {
        (Some(x), Some(y)) => ExactReal::rational(x - y),
        (_, Some(y)) if y.is_zero() => a.clone(),
        _ => ExactReal::from_expr(Expr::Sub(a.clone(), b.clone())),
    }
}

fn mul_impl(a: &ExactReal, b: &ExactReal) -> ExactReal {
    match (a.as_rational(), b.as_rational()) {
        (Some(x), Some(y)) => ExactReal::rational(x * y),
        (Some(x), _) | (_, Some(x)) if x.is_zero() => ExactReal::zero(),
        (Some(x), _) if x.is_one() => b.clone(),
        (_, Some(y)) if y.is_one() => a.clone(),
        _ => ExactReal::from_expr(Expr::Mul(a.clone(), b.clone())),
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:ident) => {
        impl $trait<&ExactReal> for &ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: &ExactReal) -> ExactReal {
                $imp(self, rhs)
            }
        }
        impl $trait<ExactReal> for ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: ExactReal) -> ExactReal {
                $imp(&self, &rhs)
            }
        }
        impl $trait<&ExactReal> for ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: &ExactReal) -> ExactReal {
                $imp(&self, rhs)
            }
        }
        impl $trait<ExactReal> for &ExactReal {
            type Output = ExactReal;
            fn $method(self, rhs: ExactReal) -> ExactReal {
                $imp(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, add_impl);
forward_binop!(Sub, sub, sub_impl);
forward_binop!(Mul, mul, mul_impl);

impl Neg for &ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        match self.as_rational() {
            Some(q) => ExactReal::rational(-q),
            None => sub_impl(&ExactReal::zero(), self),
        }
    }
}

impl Neg for ExactReal {
    type Output = ExactReal;
    fn neg(self) -> ExactReal {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt(n: i64) -> ExactReal {
        ExactReal::from_integer(n).sqrt().unwrap()
    }

    #[test]
    fn sum_of_roots_equals_nested_root() {
        let lhs = sqrt(2) + sqrt(3);
        let inner = ExactReal::from_integer(5) + ExactReal::from_integer(2) * sqrt(6);
        let rhs = inner.sqrt().unwrap();
        assert_eq!(compare(&lhs, &rhs).unwrap(), Ordering::Equal);
    }

    #[test]
    fn identical_rationals() {
        let a = ExactReal::from_ratio(3, 5);
        assert_eq!(
            compare(&a, &ExactReal::from_ratio(6, 10)).unwrap(),
            Ordering::Equal
        );
    }

    #[test]
    fn root_two_above_truncation() {
        let t = ExactReal::from_ratio(141421356, 100000000);
        assert_eq!(compare(&sqrt(2), &t).unwrap(), Ordering::Greater);
    }

    #[test]
    fn negative_radicand_is_a_domain_error() {
        assert!(matches!(
            ExactReal::from_integer(-1).sqrt(),
            Err(NumError::Domain(_))
        ));
        let neg = sqrt(2) - ExactReal::from_integer(2);
        assert!(matches!(neg.sqrt(), Err(NumError::Domain(_))));
    }

    #[test]
    fn sqrt_of_exact_zero_folds() {
        let z = sqrt(2) * sqrt(2) - ExactReal::from_integer(2);
        assert!(z.sqrt().unwrap().as_rational().is_some_and(|q| q.is_zero()));
    }

    #[test]
    fn division_by_hidden_zero_is_rejected() {
        let z = sqrt(3) * sqrt(3) - ExactReal::from_integer(3);
        assert!(matches!(
            ExactReal::one().checked_div(&z),
            Err(NumError::DivisionByZero)
        ));
    }

    #[test]
    fn tiny_nonzero_difference_is_separated() {
        // sqrt(10^12 + 1) - 10^6 ≈ 5e-7
        let big = ExactReal::from_integer(1_000_000_000_001).sqrt().unwrap();
        let d = big - ExactReal::from_integer(1_000_000);
        assert_eq!(d.signum().unwrap(), Ordering::Greater);
    }

    #[test]
    fn refinement_is_monotone() {
        let x = sqrt(2) + sqrt(5);
        let coarse = x.refine(&BigRational::one()).unwrap();
        let fine = x
            .refine(&BigRational::new(1.into(), BigInt::one() << 200usize))
            .unwrap();
        assert!(coarse.lo <= fine.lo && fine.hi <= coarse.hi);
    }
}
