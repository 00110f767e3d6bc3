//! Sparse multivariate polynomials with coefficients in `Z[ω]`, where
//! `ω² + ω + 1 = 0`.
//!
//! Terms are kept in graded lexicographic order (total degree first, then
//! lexicographic with the first variable largest), so printing and
//! iteration are deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `re + om·ω` with `ω` a primitive cube root of unity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Eisenstein {
    pub re: BigInt,
    pub om: BigInt,
}

impl Eisenstein {
    pub fn new(re: impl Into<BigInt>, om: impl Into<BigInt>) -> Self {
        Eisenstein {
            re: re.into(),
            om: om.into(),
        }
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Eisenstein::new(n, 0)
    }

    pub fn omega() -> Self {
        Eisenstein::new(0, 1)
    }

    /// `ω^k`, reduced to the basis `{1, ω}`.
    pub fn omega_pow(k: u32) -> Self {
        match k % 3 {
            0 => Eisenstein::new(1, 0),
            1 => Eisenstein::new(0, 1),
            _ => Eisenstein::new(-1, -1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.om.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.om.is_zero()
    }

    /// Complex conjugate, which swaps `ω` and `ω²`.
    pub fn conj(&self) -> Self {
        // re + om ω²  =  (re - om) - om ω
        Eisenstein::new(&self.re - &self.om, -&self.om)
    }
}

impl Add for &Eisenstein {
    type Output = Eisenstein;
    fn add(self, rhs: &Eisenstein) -> Eisenstein {
        Eisenstein::new(&self.re + &rhs.re, &self.om + &rhs.om)
    }
}

impl Sub for &Eisenstein {
    type Output = Eisenstein;
    fn sub(self, rhs: &Eisenstein) -> Eisenstein {
        Eisenstein::new(&self.re - &rhs.re, &self.om - &rhs.om)
    }
}

impl Mul for &Eisenstein {
    type Output = Eisenstein;
    fn mul(self, rhs: &Eisenstein) -> Eisenstein {
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bd(-1 - ω)
        let bd = &self.om * &rhs.om;
        Eisenstein::new(
            &self.re * &rhs.re - &bd,
            &self.re * &rhs.om + &self.om * &rhs.re - bd,
        )
    }
}

impl Neg for &Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Eisenstein {
        Eisenstein::new(-&self.re, -&self.om)
    }
}

impl fmt::Display for Eisenstein {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.om.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}ω", self.om),
            (false, false) => write!(f, "({} + {}ω)", self.re, self.om),
        }
    }
}

/// Exponent vector, ordered graded-lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `nvars` variables over `Z[ω]`. No stored zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Eisenstein>,
}

impl MultiPolynomial {
    pub fn zero(nvars: usize) -> Self {
        MultiPolynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Eisenstein) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(vec![0; nvars]), c);
        p
    }

    /// The variable with index `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(nvars, i, 1, Eisenstein::integer(1))
    }

    /// `c · v_i^exp`.
    pub fn term(nvars: usize, i: usize, exp: u32, c: Eisenstein) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i] = exp;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(e), c);
        p
    }

    /// `Σ c_i v_i` for a linear form.
    pub fn linear(coeffs: &[Eisenstein]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (i, c) in coeffs.iter().enumerate() {
            p = &p + &Self::term(n, i, 1, c.clone());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: Eisenstein) {
        assert_eq!(m.0.len(), self.nvars, "monomial arity mismatch");
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m.clone()).or_default();
        *entry = &*entry + &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn coeff(&self, exps: &[u32]) -> Eisenstein {
        self.terms
            .get(&Monomial(exps.to_vec()))
            .cloned()
            .unwrap_or_default()
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Eisenstein)> {
        self.terms.iter().rev()
    }

    /// True when every coefficient lies in `Z`.
    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(Eisenstein::is_integer)
    }

    pub fn conj(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.conj());
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::constant(self.nvars, Eisenstein::integer(1));
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Replace variable `i` by the polynomial `subs[i]` (all over the same
    /// target variable set).
    pub fn compose(&self, subs: &[MultiPolynomial]) -> MultiPolynomial {
        assert_eq!(subs.len(), self.nvars, "one substitution per variable");
        let target = subs.first().map_or(0, |s| s.nvars);
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = &t * &subs[i].pow(e);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Rewrite `v_i^k` as `replacement` wherever the exponent of `v_i` is at
    /// least `k`, until no such exponent remains.
    pub fn reduce_power(&self, i: usize, k: u32, replacement: &MultiPolynomial) -> MultiPolynomial {
        assert!(k > 0);
        let mut out = Self::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            let times = e[i] / k;
            e[i] %= k;
            let mut t = MultiPolynomial::zero(self.nvars);
            t.add_term(Monomial(e), c.clone());
            if times > 0 {
                t = &t * &replacement.pow(times);
                t = t.reduce_power(i, k, replacement);
            }
            out = &out + &t;
        }
        out
    }

    /// Evaluation at integer points, with coefficients mapped through
    /// `ω = (re, om)` arithmetic.
    pub fn eval_integer(&self, point: &[BigInt]) -> Eisenstein {
        let mut acc = Eisenstein::default();
        for (m, c) in &self.terms {
            let mut v = BigInt::one();
            for (x, &e) in point.iter().zip(&m.0) {
                v *= x.pow(e);
            }
            acc = &acc + &(c * &Eisenstein::integer(v));
        }
        acc
    }

    pub fn display_with(&self, names: &[&str]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let (neg, mag) = if c.is_integer() && c.re.is_negative() {
                (true, Eisenstein::integer(-&c.re))
            } else {
                (false, c.clone())
            };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let unit = mag.is_integer() && mag.re.is_one();
            let is_const = m.degree() == 0;
            if !unit || is_const {
                out.push_str(&mag.to_string());
            }
            for (name, &e) in names.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => out.push_str(name),
                    _ => out.push_str(&format!("{name}^{e}")),
                }
            }
        }
        out
    }
}

impl Add for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn add(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn sub(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn neg(self) -> MultiPolynomial {
        let mut out = MultiPolynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPolynomial {
    type Output = MultiPolynomial;
    fn mul(self, rhs: &MultiPolynomial) -> MultiPolynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = MultiPolynomial::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let e = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), c1 * c2);
            }
        }
        out
    }
}

/// Expanded product of a nonempty list of factors.
pub fn expand_product(factors: &[MultiPolynomial]) -> MultiPolynomial {
    let (first, rest) = factors.split_first().expect("at least one factor");
    rest.iter().fold(first.clone(), |acc, f| &acc * f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(k: u32) -> Eisenstein {
        Eisenstein::omega_pow(k)
    }

    #[test]
    fn omega_relations() {
        let one = Eisenstein::integer(1);
        let sum = &(&one + &w(1)) + &w(2);
        assert!(sum.is_zero());
        assert_eq!(&w(1) * &w(2), one);
        assert_eq!(w(1).conj(), w(2));
    }

    #[test]
    fn conjugate_pair_product() {
        let a = MultiPolynomial::linear(&[w(0), w(1), w(2)]);
        let b = MultiPolynomial::linear(&[w(0), w(2), w(1)]);
        let p = expand_product(&[a, b]);
        assert_eq!(
            p.display_with(&["x", "y", "z"]),
            "x^2 - xy - xz + y^2 - yz + z^2"
        );
    }

    #[test]
    fn grlex_order() {
        let x = Monomial(vec![1, 0, 0]);
        let y2 = Monomial(vec![0, 2, 0]);
        let y = Monomial(vec![0, 1, 0]);
        assert!(y2 > x);
        assert!(x > y);
    }

    #[test]
    fn reduce_power_replaces_cubes() {
        // u^4 with u^3 -> t  gives  t u
        let u4 = MultiPolynomial::term(2, 1, 4, Eisenstein::integer(1));
        let t = MultiPolynomial::var(2, 0);
        let r = u4.reduce_power(1, 3, &t);
        assert_eq!(r.coeff(&[1, 1]), Eisenstein::integer(1));
        assert_eq!(r.len(), 1);
    }
}
