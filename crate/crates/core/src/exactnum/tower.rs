//! Exact zero test by normalization in a tower of quadratic extensions.
//!
//! Evaluating an [`ExactReal`] DAG bottom-up, every square root is either
//! found inside the current field `K_n = Q(√r_1, …, √r_n)` or adjoined as a
//! new generator `√r_{n+1}`. A new radicand is only adjoined after an exact
//! search has shown it is not a square in `K_n`, so every level is a genuine
//! degree-two extension and the representation `a + b·√r_L` (with `a, b` in
//! `K_{L-1}`) is unique. Zero is then a purely structural property.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::rc::Rc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::interval::{rational_sqrt, Interval};
use super::real::{ExactReal, Expr};

/// Element of the tower. `Ext` always has a nonzero `b`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Elem {
    Q(BigRational),
    Ext {
        level: usize,
        a: Rc<Elem>,
        b: Rc<Elem>,
    },
}

impl Elem {
    fn zero() -> Self {
        Elem::Q(BigRational::zero())
    }

    fn from_int(n: i64) -> Self {
        Elem::Q(BigRational::from_integer(BigInt::from(n)))
    }

    fn level(&self) -> usize {
        match self {
            Elem::Q(_) => 0,
            Elem::Ext { level, .. } => *level,
        }
    }

    pub(crate) fn is_zero(&self) -> bool {
        matches!(self, Elem::Q(q) if q.is_zero())
    }
}

pub(crate) struct Tower {
    radicands: Vec<Elem>,
    root_cache: Vec<Option<(u32, Interval)>>,
}

impl Tower {
    pub(crate) fn new() -> Self {
        Tower {
            radicands: Vec::new(),
            root_cache: Vec::new(),
        }
    }

    pub(crate) fn depth(&self) -> usize {
        self.radicands.len()
    }

    fn split(&self, x: &Elem, level: usize) -> (Elem, Elem) {
        match x {
            Elem::Ext { level: l, a, b } if *l == level => ((**a).clone(), (**b).clone()),
            _ => (x.clone(), Elem::zero()),
        }
    }

    fn make(level: usize, a: Elem, b: Elem) -> Elem {
        if b.is_zero() {
            a
        } else {
            Elem::Ext {
                level,
                a: Rc::new(a),
                b: Rc::new(b),
            }
        }
    }

    fn add(&self, x: &Elem, y: &Elem) -> Elem {
        if let (Elem::Q(p), Elem::Q(q)) = (x, y) {
            return Elem::Q(p + q);
        }
        if x.is_zero() {
            return y.clone();
        }
        if y.is_zero() {
            return x.clone();
        }
        let level = x.level().max(y.level());
        let (a1, b1) = self.split(x, level);
        let (a2, b2) = self.split(y, level);
        Self::make(level, self.add(&a1, &a2), self.add(&b1, &b2))
    }

    fn neg(&self, x: &Elem) -> Elem {
        match x {
            Elem::Q(q) => Elem::Q(-q),
            Elem::Ext { level, a, b } => Elem::Ext {
                level: *level,
                a: Rc::new(self.neg(a)),
                b: Rc::new(self.neg(b)),
            },
        }
    }

    fn sub(&self, x: &Elem, y: &Elem) -> Elem {
        self.add(x, &self.neg(y))
    }

    fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        if let (Elem::Q(p), Elem::Q(q)) = (x, y) {
            return Elem::Q(p * q);
        }
        if x.is_zero() || y.is_zero() {
            return Elem::zero();
        }
        let level = x.level().max(y.level());
        let (a1, b1) = self.split(x, level);
        let (a2, b2) = self.split(y, level);
        let r = &self.radicands[level - 1];
        let mut a = self.mul(&a1, &a2);
        if !b1.is_zero() && !b2.is_zero() {
            a = self.add(&a, &self.mul(&self.mul(&b1, &b2), r));
        }
        let b = self.add(&self.mul(&a1, &b2), &self.mul(&a2, &b1));
        Self::make(level, a, b)
    }

    /// Inverse of a nonzero element.
    fn inv(&self, x: &Elem) -> Elem {
        match x {
            Elem::Q(q) => Elem::Q(q.recip()),
            Elem::Ext { level, a, b } => {
                let r = &self.radicands[level - 1];
                let norm = self.sub(&self.mul(a, a), &self.mul(&self.mul(b, b), r));
                let inv_norm = self.inv(&norm);
                Self::make(
                    *level,
                    self.mul(a, &inv_norm),
                    self.neg(&self.mul(b, &inv_norm)),
                )
            }
        }
    }

    fn half(&self, x: &Elem) -> Elem {
        self.mul(
            x,
            &Elem::Q(BigRational::new(BigInt::one(), BigInt::from(2))),
        )
    }

    /// Some square root of `x` inside `K_level`, if one exists.
    fn try_sqrt(&self, x: &Elem, level: usize) -> Option<Elem> {
        if level == 0 {
            return match x {
                Elem::Q(q) => rational_sqrt(q).map(Elem::Q),
                Elem::Ext { .. } => unreachable!("element above requested level"),
            };
        }
        let (a, b) = self.split(x, level);
        let r = &self.radicands[level - 1];
        if b.is_zero() {
            if let Some(s) = self.try_sqrt(&a, level - 1) {
                return Some(s);
            }
            // a = r * s^2  gives  √a = s·√r
            let quotient = self.mul(&a, &self.inv(r));
            return self
                .try_sqrt(&quotient, level - 1)
                .map(|s| Self::make(level, Elem::zero(), s));
        }
        // (u + v√r)^2 = a + b√r  with  u^2 + r v^2 = a, 2uv = b
        let norm = self.sub(&self.mul(&a, &a), &self.mul(&self.mul(&b, &b), r));
        let m = self.try_sqrt(&norm, level - 1)?;
        for candidate in [self.add(&a, &m), self.sub(&a, &m)] {
            let u_sq = self.half(&candidate);
            if u_sq.is_zero() {
                continue;
            }
            if let Some(u) = self.try_sqrt(&u_sq, level - 1) {
                let v = self.mul(&b, &self.inv(&self.add(&u, &u)));
                return Some(Self::make(level, u, v));
            }
        }
        None
    }

    fn root_interval(&mut self, level: usize, bits: u32) -> Option<Interval> {
        if let Some((b, iv)) = &self.root_cache[level - 1] {
            if *b >= bits {
                return Some(iv.clone());
            }
        }
        let r = self.radicands[level - 1].clone();
        let iv = self.interval(&r, bits)?.sqrt(bits);
        self.root_cache[level - 1] = Some((bits, iv.clone()));
        Some(iv)
    }

    fn interval(&mut self, x: &Elem, bits: u32) -> Option<Interval> {
        match x {
            Elem::Q(q) => Some(Interval::around(q, bits)),
            Elem::Ext { level, a, b } => {
                let ia = self.interval(a, bits)?;
                let ib = self.interval(b, bits)?;
                let root = self.root_interval(*level, bits)?;
                Some(ia.add(&ib.mul(&root, bits)))
            }
        }
    }

    /// Sign of a nonzero element by numeric refinement.
    fn sign(&mut self, x: &Elem) -> Ordering {
        if let Elem::Q(q) = x {
            return q.cmp(&BigRational::zero());
        }
        let mut bits = 64;
        loop {
            if let Some(iv) = self.interval(x, bits) {
                if iv.lo.is_positive() {
                    return Ordering::Greater;
                }
                if iv.hi.is_negative() {
                    return Ordering::Less;
                }
            }
            bits *= 2;
        }
    }

    fn adjoin_sqrt(&mut self, x: Elem) -> Elem {
        if x.is_zero() {
            return Elem::zero();
        }
        let top = self.depth();
        if let Some(s) = self.try_sqrt(&x, top) {
            return if self.sign(&s) == Ordering::Less {
                self.neg(&s)
            } else {
                s
            };
        }
        self.radicands.push(x);
        self.root_cache.push(None);
        Self::make(self.depth(), Elem::zero(), Elem::from_int(1))
    }

    pub(crate) fn eval(&mut self, x: &ExactReal) -> Elem {
        let mut memo = HashMap::new();
        self.eval_memo(x, &mut memo)
    }

    fn eval_memo(&mut self, x: &ExactReal, memo: &mut HashMap<usize, Elem>) -> Elem {
        let id = x.node_id();
        if let Some(e) = memo.get(&id) {
            return e.clone();
        }
        let e = match &x.0.expr {
            Expr::Rational(q) => Elem::Q(q.clone()),
            Expr::Add(a, b) => {
                let (ea, eb) = (self.eval_memo(a, memo), self.eval_memo(b, memo));
                self.add(&ea, &eb)
            }
            Expr::Sub(a, b) => {
                let (ea, eb) = (self.eval_memo(a, memo), self.eval_memo(b, memo));
                self.sub(&ea, &eb)
            }
            Expr::Mul(a, b) => {
                let (ea, eb) = (self.eval_memo(a, memo), self.eval_memo(b, memo));
                self.mul(&ea, &eb)
            }
            Expr::Div(a, b) => {
                let (ea, eb) = (self.eval_memo(a, memo), self.eval_memo(b, memo));
                assert!(!eb.is_zero(), "divisor checked nonzero at construction");
                let inv = self.inv(&eb);
                self.mul(&ea, &inv)
            }
            Expr::Sqrt(a) => {
                let ea = self.eval_memo(a, memo);
                self.adjoin_sqrt(ea)
            }
        };
        memo.insert(id, e.clone());
        e
    }

    pub(crate) fn is_zero(&mut self, x: &ExactReal) -> bool {
        self.eval(x).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt(n: i64) -> ExactReal {
        ExactReal::from_integer(n).sqrt().unwrap()
    }

    #[test]
    fn dependent_radicals_do_not_grow_the_tower() {
        // √8 = 2√2 and √18 = 3√2 live in Q(√2)
        let x = sqrt(8) + sqrt(18) - ExactReal::from_integer(5) * sqrt(2);
        let mut t = Tower::new();
        assert!(t.is_zero(&x));
        assert_eq!(t.depth(), 1);
    }

    #[test]
    fn denesting_is_found() {
        // √(3 + 2√2) = 1 + √2
        let inner = ExactReal::from_integer(3) + ExactReal::from_integer(2) * sqrt(2);
        let x = inner.sqrt().unwrap() - ExactReal::one() - sqrt(2);
        let mut t = Tower::new();
        assert!(t.is_zero(&x));
        assert_eq!(t.depth(), 1);
    }

    #[test]
    fn root_of_product_over_independent_generators() {
        // √6 = √2·√3 once both are adjoined
        let x = sqrt(2) * sqrt(3) - sqrt(6);
        let mut t = Tower::new();
        assert!(t.is_zero(&x));
        assert_eq!(t.depth(), 2);
    }

    #[test]
    fn principal_branch_is_chosen() {
        // √((1 - √2)^2) = √2 - 1, not 1 - √2
        let d = ExactReal::one() - sqrt(2);
        let x = d.square().sqrt().unwrap() - (sqrt(2) - ExactReal::one());
        assert!(Tower::new().is_zero(&x));
    }

    #[test]
    fn nonzero_stays_nonzero() {
        let x = sqrt(2) + sqrt(3) - sqrt(5);
        assert!(!Tower::new().is_zero(&x));
    }
}
