//! Fixed 50-digit floating point for numeric cross-checks.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

/// Decimal digits carried by every evaluation.
pub(crate) const DIGITS: usize = 50;
/// Working precision in bits: 50 digits plus guard bits.
const PRECISION: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;

pub(crate) struct Hp {
    cc: Consts,
}

impl Hp {
    pub(crate) fn new() -> Self {
        Hp {
            cc: Consts::new().expect("constant cache allocates"),
        }
    }

    pub(crate) fn int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, PRECISION)
    }

    pub(crate) fn ratio(&self, n: i64, d: i64) -> BigFloat {
        self.int(n).div(&self.int(d), PRECISION, RM)
    }

    pub(crate) fn pi(&mut self) -> BigFloat {
        self.cc.pi(PRECISION, RM)
    }

    /// `deg` degrees in radians.
    pub(crate) fn radians(&mut self, deg: i64) -> BigFloat {
        let pi = self.pi();
        pi.mul(&self.ratio(deg, 180), PRECISION, RM)
    }

    pub(crate) fn sin(&mut self, x: &BigFloat) -> BigFloat {
        x.sin(PRECISION, RM, &mut self.cc)
    }

    pub(crate) fn cos(&mut self, x: &BigFloat) -> BigFloat {
        x.cos(PRECISION, RM, &mut self.cc)
    }

    pub(crate) fn ln(&mut self, x: &BigFloat) -> BigFloat {
        x.ln(PRECISION, RM, &mut self.cc)
    }

    pub(crate) fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, PRECISION, RM)
    }

    pub(crate) fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, PRECISION, RM)
    }

    pub(crate) fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, PRECISION, RM)
    }

    pub(crate) fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, PRECISION, RM)
    }

    pub(crate) fn powi(&self, a: &BigFloat, n: usize) -> BigFloat {
        a.powi(n, PRECISION, RM)
    }

    /// Nearest `f64`, through the decimal rendering.
    pub(crate) fn nearest_f64(&mut self, x: &BigFloat) -> f64 {
        self.decimal(x)
            .parse()
            .expect("decimal rendering parses as f64")
    }

    pub(crate) fn decimal(&mut self, x: &BigFloat) -> String {
        x.format(Radix::Dec, RM, &mut self.cc)
            .expect("finite value formats")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_and_logs_match_known_digits() {
        let mut hp = Hp::new();
        let pi = hp.pi();
        assert!((hp.nearest_f64(&pi) - std::f64::consts::PI).abs() < 1e-15);
        let two = hp.int(2);
        let ln2 = hp.ln(&two);
        assert!((hp.nearest_f64(&ln2) - std::f64::consts::LN_2).abs() < 1e-15);
        // sin 30° = 1/2 to far beyond f64 precision
        let r = hp.radians(30);
        let s = hp.sin(&r);
        let err = hp.sub(&s, &hp.ratio(1, 2));
        assert!(hp.nearest_f64(&err).abs() < 1e-45);
    }
}
