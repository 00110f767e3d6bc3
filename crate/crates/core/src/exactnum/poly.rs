//! Dense univariate polynomials over the integers.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer polynomial, coefficients stored lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        p.trim();
        p
    }

    /// From small integer coefficients, lowest degree first.
    pub fn from_coeffs(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_coeffs(&[0, 1])
    }

    pub fn constant(c: i64) -> Self {
        Self::from_coeffs(&[c])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::constant(1);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| {
                acc * x + BigRational::from_integer(c.clone())
            })
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use num_traits::ToPrimitive;
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact quotient by the linear factor vanishing at `root`.
    ///
    /// For a root `p/q` in lowest terms the quotient by `q·x − p` has integer
    /// coefficients (Gauss's lemma). Returns `None` if `root` is not a root.
    pub fn deflate(&self, root: &BigRational) -> Option<IntPolynomial> {
        if self.is_zero() || !self.eval_rational(root).is_zero() {
            return None;
        }
        let (p, q) = (root.numer().clone(), root.denom().clone());
        let n = self.coeffs.len() - 1;
        // self = (q x - p) * sum b_i x^i, solve from the top down
        let mut b = vec![BigInt::zero(); n];
        let mut carry = BigInt::zero();
        for i in (1..=n).rev() {
            let target = &self.coeffs[i] + &carry;
            let (quot, rem) = target.div_rem(&q);
            if !rem.is_zero() {
                return None;
            }
            carry = &quot * &p;
            b[i - 1] = quot;
        }
        if &self.coeffs[0] + carry != BigInt::zero() {
            return None;
        }
        Some(IntPolynomial::new(b))
    }

    /// Every rational root, by the rational root theorem.
    ///
    /// Candidates are `±d/e` with `d | a_0` and `e | a_n`, each confirmed by
    /// exact evaluation. A zero constant term contributes the root 0 and is
    /// factored out first.
    pub fn rational_roots(&self) -> BTreeSet<BigRational> {
        let mut roots = BTreeSet::new();
        if self.is_zero() {
            return roots;
        }
        let shift = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if shift > 0 {
            roots.insert(BigRational::zero());
        }
        let reduced = IntPolynomial::new(self.coeffs[shift..].to_vec());
        if reduced.degree() == Some(0) {
            return roots;
        }
        let a0 = reduced.coeffs[0].abs();
        let an = reduced.leading().expect("nonzero").abs();
        let numerators = divisors(&a0);
        let denominators = divisors(&an);
        for d in &numerators {
            for e in &denominators {
                for sign in [1, -1] {
                    let cand = BigRational::new(d * sign, e.clone());
                    if reduced.eval_rational(&cand).is_zero() {
                        roots.insert(cand);
                    }
                }
            }
        }
        roots
    }

    /// `Σ |c_i| r^i`, an upper bound for `|p(t)|` on `[-r, r]`.
    pub fn coeff_bound(&self, r: &BigRational) -> Result<BigRational, super::NumError> {
        if !self.coeff(0).is_zero() {
            return Err(super::NumError::Domain(
                "coefficient bound expects a zero constant term".into(),
            ));
        }
        if !r.is_positive() {
            return Err(super::NumError::Domain("radius must be positive".into()));
        }
        let mut power = BigRational::one();
        let mut total = BigRational::zero();
        for c in &self.coeffs {
            total += BigRational::from_integer(c.abs()) * &power;
            power *= r;
        }
        Ok(total)
    }
}

/// Positive divisors of `n` (> 0) by trial division.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            small.push(d.clone());
            let other = n / &d;
            if other != d {
                large.push(other);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_ops {
    ($($trait:ident :: $method:ident),*) => {$(
        impl $trait for IntPolynomial {
            type Output = IntPolynomial;
            fn $method(self, rhs: IntPolynomial) -> IntPolynomial {
                (&self).$method(&rhs)
            }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul);

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let mag = c.abs();
            let show_coeff = !mag.is_one() || i == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_roots_examples() {
        assert!(IntPolynomial::from_coeffs(&[1, -3, 0, 1])
            .rational_roots()
            .is_empty());
        let r: Vec<_> = IntPolynomial::from_coeffs(&[1, -2, 0, 1])
            .rational_roots()
            .into_iter()
            .collect();
        assert_eq!(r, vec![q(1, 1)]);
        let r: Vec<_> = IntPolynomial::from_coeffs(&[-4, 0, 1])
            .rational_roots()
            .into_iter()
            .collect();
        assert_eq!(r, vec![q(-2, 1), q(2, 1)]);
    }

    #[test]
    fn non_integer_and_zero_roots() {
        // x (2x - 1)(3x + 2)
        let p = &(&IntPolynomial::x() * &IntPolynomial::from_coeffs(&[-1, 2]))
            * &IntPolynomial::from_coeffs(&[2, 3]);
        let r: Vec<_> = p.rational_roots().into_iter().collect();
        assert_eq!(r, vec![q(-2, 3), q(0, 1), q(1, 2)]);
    }

    #[test]
    fn coeff_bound_examples() {
        let p = IntPolynomial::from_coeffs(&[0, -1, 0, 1, 1, -2, -1]);
        assert_eq!(p.coeff_bound(&q(1, 2)).unwrap(), q(49, 64));
        assert_eq!(IntPolynomial::x().coeff_bound(&q(1, 1)).unwrap(), q(1, 1));
        assert_eq!(
            IntPolynomial::from_coeffs(&[0, 1, 1])
                .coeff_bound(&q(1, 2))
                .unwrap(),
            q(3, 4)
        );
        assert!(IntPolynomial::from_coeffs(&[1, 1])
            .coeff_bound(&q(1, 2))
            .is_err());
    }

    #[test]
    fn deflation() {
        let p = IntPolynomial::from_coeffs(&[1, -2, 0, 1]);
        assert_eq!(
            p.deflate(&q(1, 1)).unwrap(),
            IntPolynomial::from_coeffs(&[-1, 1, 1])
        );
        let p = IntPolynomial::from_coeffs(&[-1, 2]);
        assert_eq!(p.deflate(&q(1, 2)).unwrap(), IntPolynomial::constant(1));
        assert!(p.deflate(&q(1, 1)).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(
            IntPolynomial::from_coeffs(&[1, -3, 0, 1]).to_string(),
            "x^3 - 3x + 1"
        );
    }
}
