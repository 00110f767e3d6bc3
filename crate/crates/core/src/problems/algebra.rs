//! Exact certificates for the algebraic problems.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

use super::hp::{Hp, DIGITS};
use super::{sci, Certificate, ProblemError, EVALUATION_TOL};
use crate::exactnum::{
    compare, compare_log, digit_count, expand_product, Eisenstein, ExactReal, IntPolynomial,
    MultiPolynomial, NumError,
};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn poly(coeffs: &[i64]) -> IntPolynomial {
    IntPolynomial::from_coeffs(coeffs)
}

/// Interval of reals with exact endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactInterval {
    pub lo: ExactReal,
    pub hi: ExactReal,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl ExactInterval {
    pub fn new(
        lo: ExactReal,
        hi: ExactReal,
        lo_closed: bool,
        hi_closed: bool,
    ) -> Result<Self, NumError> {
        if compare(&lo, &hi)? == Ordering::Greater {
            return Err(NumError::Domain(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(ExactInterval {
            lo,
            hi,
            lo_closed,
            hi_closed,
        })
    }

    pub fn contains(&self, x: &ExactReal) -> Result<bool, NumError> {
        let above = match compare(x, &self.lo)? {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        let below = match compare(x, &self.hi)? {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        Ok(above && below)
    }
}

impl std::fmt::Display for ExactInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let open = if self.lo_closed { '[' } else { '(' };
        let close = if self.hi_closed { ']' } else { ')' };
        write!(f, "{open}{}, {}{close}", self.lo, self.hi)
    }
}

// ---------------------------------------------------------------- p01

/// `(1 + y²)(11 − 16y) − (1 − y²)(8y + 1)`: the inequality after `y = √(1−x)/√(1+x)`.
fn p01_difference() -> IntPolynomial {
    &(&poly(&[1, 0, 1]) * &poly(&[11, -16])) - &(&poly(&[1, 0, -1]) * &poly(&[1, 8]))
}

/// Whether `x(8√(1−x) + √(1+x)) ≤ 11√(1+x) − 16√(1−x)` holds, exactly.
pub(crate) fn p01_holds(x: &BigRational) -> Result<bool, NumError> {
    let x = ExactReal::rational(x.clone());
    let one = ExactReal::one();
    let minus = (&one - &x).sqrt()?;
    let plus = (&one + &x).sqrt()?;
    let lhs = &x * &(&(&ExactReal::from_integer(8) * &minus) + &plus);
    let rhs = &(&ExactReal::from_integer(11) * &plus) - &(&ExactReal::from_integer(16) * &minus);
    Ok(compare(&lhs, &rhs)? != Ordering::Greater)
}

/// Solution set of the inequality over positive `x`.
///
/// The transformed difference is `(2y − 1)·q(y)` with `q < 0` on `[0, 1]`, so
/// the inequality reduces to `y ≤ 1/2`. `y` decreases in `x`, and
/// `x = (1 − y²)/(1 + y²)` maps `y = 1/2` to the lower end and `y = 0` to
/// the upper end.
pub fn p01_certificate() -> Result<ExactInterval, ProblemError> {
    let roots = p01_difference().rational_roots();
    let y0 = match roots.iter().collect::<Vec<_>>().as_slice() {
        [y] => (*y).clone(),
        _ => {
            return Err(ProblemError::Domain(format!(
                "expected one rational root, found {roots:?}"
            )))
        }
    };
    let x_of = |y: &BigRational| (BigRational::one() - y * y) / (BigRational::one() + y * y);
    Ok(ExactInterval::new(
        ExactReal::rational(x_of(&y0)),
        ExactReal::rational(x_of(&BigRational::zero())),
        true,
        true,
    )?)
}

pub(crate) fn verify_p01() -> Result<Vec<Certificate>, ProblemError> {
    let mut out = Vec::new();
    let interval = p01_certificate()?;
    let expected = ExactInterval::new(ExactReal::from_ratio(3, 5), ExactReal::one(), true, true)?;
    let same = interval.lo_closed
        && interval.hi_closed
        && interval.lo == expected.lo
        && interval.hi == expected.hi;
    out.push(Certificate::exact(
        "solution set is 3/5 ≤ x ≤ 1",
        format!("{interval}"),
        same,
    ));

    let diff = p01_difference();
    let factored = &poly(&[-1, 2]) * &poly(&[-10, 4, -4]);
    out.push(Certificate::exact(
        "(1+y²)(11−16y) − (1−y²)(8y+1) = (2y−1)(−4y²+4y−10)",
        format!("both sides expand to {diff}"),
        diff == factored,
    ));
    let reversed =
        &(&poly(&[1, 0, -1]) * &poly(&[1, 8])) - &(&poly(&[1, 0, 1]) * &poly(&[11, -16]));
    out.push(Certificate::exact(
        "(1−y²)(8y+1) − (1+y²)(11−16y) = −(2y−1)(−4y²+4y−10)",
        format!("{reversed}"),
        reversed == -&factored,
    ));

    // −4y² + 4y − 10 = −10 + r(y) with |r| ≤ coeff_bound(r, 1) < 10 on [−1, 1].
    let bound = poly(&[0, 4, -4]).coeff_bound(&BigRational::one())?;
    out.push(Certificate::exact(
        "−4y² + 4y − 10 < 0 for 0 ≤ y ≤ 1",
        format!("|4y − 4y²| ≤ {bound} < 10"),
        bound < BigRational::from_integer(10.into()),
    ));

    let y_half = q(1, 2);
    let x_half =
        (BigRational::one() - &y_half * &y_half) / (BigRational::one() + &y_half * &y_half);
    out.push(Certificate::exact(
        "y = 1/2 maps to x = 3/5",
        format!("x = {x_half}"),
        x_half == q(3, 5),
    ));

    let probes: [(i64, i64, bool); 5] = [
        (0, 1, false),
        (1, 2, false),
        (3, 5, true),
        (4, 5, true),
        (1, 1, true),
    ];
    for (n, d, expect) in probes {
        let x = q(n, d);
        let holds = p01_holds(&x)?;
        let member = interval.contains(&ExactReal::rational(x.clone()))?;
        out.push(Certificate::exact(
            format!(
                "inequality at x = {x} {}",
                if expect { "holds" } else { "fails" }
            ),
            format!("holds = {holds}, in solution set = {member}"),
            holds == expect && member == expect,
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------- p12

/// `(y³ + 1)³ − 8(2y − 1)`: the equation after cubing both sides.
fn p12_cubed() -> IntPolynomial {
    &poly(&[1, 0, 0, 1]).pow(3) - &poly(&[-8, 16])
}

/// Quotient and remainder of `p` by a monic `d` over the integers.
fn divide_monic(p: &IntPolynomial, d: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
    let dd = d.degree().expect("nonzero divisor");
    assert!(d.leading().is_some_and(|c| c.is_one()), "monic divisor");
    let mut rem: Vec<BigInt> = p.coeffs().to_vec();
    let mut quot = vec![BigInt::zero(); rem.len().saturating_sub(dd).max(1)];
    while rem.len() > dd {
        let k = rem.len() - 1 - dd;
        let c = rem.pop().expect("nonempty");
        for i in 0..dd {
            rem[k + i] -= &c * d.coeff(i);
        }
        quot[k] = c;
    }
    (IntPolynomial::new(quot), IntPolynomial::new(rem))
}

/// The real solutions of `2∛(2y − 1) = y³ + 1`, ascending.
///
/// With `x = ∛(2y − 1)` the equation becomes the symmetric system
/// `2x = y³ + 1`, `2y = x³ + 1`; the map `t ↦ (t³ + 1)/2` is increasing, so
/// `x = y` and `y³ − 2y + 1 = 0`.
pub fn p12_roots() -> Result<Vec<ExactReal>, ProblemError> {
    let p = poly(&[1, -2, 0, 1]);
    let rational = p.rational_roots();
    let mut roots: Vec<ExactReal> = rational.iter().cloned().map(ExactReal::rational).collect();
    let mut rest = p.clone();
    for r in &rational {
        rest = rest
            .deflate(r)
            .ok_or_else(|| ProblemError::Domain(format!("{r} does not divide {p}")))?;
    }
    match rest.degree() {
        Some(0) => {}
        Some(2) => {
            let [c, b, a] = [0, 1, 2].map(|i| BigRational::from_integer(rest.coeff(i)));
            let disc = &b * &b - BigRational::from_integer(4.into()) * &a * &c;
            let root = ExactReal::rational(disc).sqrt()?;
            let two_a = ExactReal::rational(BigRational::from_integer(2.into()) * &a);
            let minus_b = ExactReal::rational(-b);
            roots.push((&minus_b + &root).checked_div(&two_a)?);
            roots.push((&minus_b - &root).checked_div(&two_a)?);
        }
        _ => return Err(ProblemError::Domain(format!("unexpected cofactor {rest}"))),
    }
    roots.sort();
    Ok(roots)
}

pub(crate) fn verify_p12() -> Result<Vec<Certificate>, ProblemError> {
    let mut out = Vec::new();
    let roots = p12_roots()?;
    let sqrt5 = ExactReal::from_integer(5).sqrt()?;
    let half = ExactReal::from_ratio(1, 2);
    let expected = [
        &(&ExactReal::from_integer(-1) - &sqrt5) * &half,
        &(&ExactReal::from_integer(-1) + &sqrt5) * &half,
        ExactReal::one(),
    ];
    out.push(Certificate::exact(
        "roots are (−1−√5)/2, (−1+√5)/2, 1",
        roots
            .iter()
            .map(ExactReal::to_string)
            .collect::<Vec<_>>()
            .join(", "),
        roots.len() == 3 && roots.iter().zip(&expected).all(|(a, b)| a == b),
    ));

    let eight = ExactReal::from_integer(8);
    for r in &roots {
        let lhs = (&(&r.square() * r) + &ExactReal::one()).square();
        let lhs = &lhs * &(&(&r.square() * r) + &ExactReal::one());
        let rhs = &eight * &(&(r + r) - &ExactReal::one());
        let eq = compare(&lhs, &rhs)? == Ordering::Equal;
        out.push(Certificate::exact(
            format!("(y³+1)³ = 8(2y−1) at y = {r}"),
            format!("both sides ≈ {rhs}"),
            eq,
        ));
    }
    let at_zero = p12_cubed().eval_rational(&BigRational::zero());
    out.push(Certificate::exact(
        "y = 0 is not a root",
        format!("(0+1)³ − 8(0−1) = {at_zero}"),
        !at_zero.is_zero(),
    ));

    let rational = poly(&[1, -2, 0, 1]).rational_roots();
    out.push(Certificate::exact(
        "the only rational root of y³ − 2y + 1 is 1",
        format!("{rational:?}"),
        rational.len() == 1 && rational.contains(&BigRational::one()),
    ));
    let (quot, rem) = divide_monic(&p12_cubed(), &poly(&[1, -2, 0, 1]));
    out.push(Certificate::exact(
        "y³ − 2y + 1 divides (y³+1)³ − 8(2y−1)",
        format!("quotient {quot}, remainder {rem}"),
        rem.is_zero(),
    ));

    // Product of (y − rᵢ) against y³ − 2y + 1 through the elementary symmetric functions.
    let (a, b, c) = (&roots[0], &roots[1], &roots[2]);
    let e1 = &(a + b) + c;
    let e2 = &(&(a * b) + &(a * c)) + &(b * c);
    let e3 = &(a * b) * c;
    let matches =
        e1.is_zero()? && e2 == ExactReal::from_integer(-2) && e3 == ExactReal::from_integer(-1);
    out.push(Certificate::exact(
        "(y − r₁)(y − r₂)(y − r₃) = y³ − 2y + 1",
        format!("e₁ = {e1}, e₂ = {e2}, e₃ = {e3}"),
        matches,
    ));
    Ok(out)
}

// ---------------------------------------------------------------- p17

/// Solution set `x = π/4 + kπ` and the bound that rules out `sin x ≠ cos x`.
#[derive(Debug, Clone, PartialEq)]
pub struct P17Solutions {
    /// Representative over `π`: the solutions are `offset·π + kπ`.
    pub offset: BigRational,
    pub period: BigRational,
    /// `coeff_bound(−t⁶ − 2t⁵ + t⁴ + t³ − t, 1/2)`.
    pub bound: BigRational,
}

impl std::fmt::Display for P17Solutions {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "x = ({})π + k·({})π", self.offset, self.period)
    }
}

/// `t³(1 + t − 2t² − t³) − (1 + t)` with `t = sin x cos x`.
fn p17_polynomial() -> IntPolynomial {
    poly(&[-1, -1, 0, 1, 1, -2, -1])
}

pub fn p17_solutions() -> Result<P17Solutions, ProblemError> {
    let p = p17_polynomial();
    let tail = &p - &IntPolynomial::constant(p.coeff(0).try_into().expect("small constant"));
    Ok(P17Solutions {
        offset: q(1, 4),
        period: BigRational::one(),
        bound: tail.coeff_bound(&q(1, 2))?,
    })
}

/// `sin⁷ + 1/sin³ − (cos⁷ + 1/cos³)` for exact sine and cosine values.
fn p17_residue(s: &ExactReal, c: &ExactReal) -> Result<ExactReal, NumError> {
    let side = |v: &ExactReal| -> Result<ExactReal, NumError> {
        let v3 = &v.square() * v;
        let v7 = &(&v3 * &v3) * v;
        Ok(&v7 + &ExactReal::one().checked_div(&v3)?)
    };
    Ok(&side(s)? - &side(c)?)
}

pub(crate) fn verify_p17() -> Result<Vec<Certificate>, ProblemError> {
    let mut out = Vec::new();
    let sol = p17_solutions()?;
    out.push(Certificate::exact(
        "solutions are x = π/4 + kπ",
        format!("{sol}"),
        sol.offset == q(1, 4) && sol.period == BigRational::one(),
    ));

    // sin = cos = √2/2 at π/4 and −√2/2 at 5π/4, built along different routes.
    for sign in [1, -1] {
        let s = &ExactReal::from_integer(sign) * &ExactReal::from_ratio(1, 2).sqrt()?;
        let c = ExactReal::from_integer(sign).checked_div(&ExactReal::from_integer(2).sqrt()?)?;
        let r = p17_residue(&s, &c)?;
        out.push(Certificate::exact(
            format!(
                "sin x = cos x = {}√2/2 solves the equation",
                if sign > 0 { "" } else { "−" }
            ),
            format!("residue {r}"),
            r.is_zero()?,
        ));
    }

    let (s, c) = (MultiPolynomial::var(2, 0), MultiPolynomial::var(2, 1));
    let mut lhs = MultiPolynomial::zero(2);
    for k in 0..=6 {
        lhs = &lhs + &(&s.pow(6 - k) * &c.pow(k));
    }
    let p = &s.pow(2) + &c.pow(2);
    let t = &s * &c;
    let two = MultiPolynomial::constant(2, Eisenstein::integer(2));
    let rhs = &(&(&p.pow(3) + &(&t * &p.pow(2))) - &(&two * &(&p * &t.pow(2)))) - &t.pow(3);
    out.push(Certificate::exact(
        "Σ sin^(6−k) cos^k = p³ + tp² − 2pt² − t³ with p = sin² + cos², t = sin·cos",
        format!("{} terms on each side", lhs.len()),
        lhs == rhs,
    ));

    let derived = &(&poly(&[0, 0, 0, 1]) * &poly(&[1, 1, -2, -1])) - &poly(&[1, 1]);
    out.push(Certificate::exact(
        "t³(1 + t − 2t² − t³) − (1 + t) = −t⁶ − 2t⁵ + t⁴ + t³ − t − 1",
        format!("{derived}"),
        derived == p17_polynomial(),
    ));
    out.push(Certificate::exact(
        "coefficient bound on |t| ≤ 1/2 is 49/64 < 1",
        format!("1/64 + 2/32 + 1/16 + 1/8 + 1/2 = {}", sol.bound),
        sol.bound == q(49, 64) && sol.bound < BigRational::one(),
    ));

    let mut hp = Hp::new();
    for (deg, expect_equal) in [(45, true), (60, false)] {
        let x = hp.radians(deg);
        let (s, c) = (hp.sin(&x), hp.cos(&x));
        let side = |hp: &Hp, v: &astro_float::BigFloat| {
            hp.add(&hp.powi(v, 7), &hp.div(&hp.int(1), &hp.powi(v, 3)))
        };
        let diff = hp.sub(&side(&hp, &s), &side(&hp, &c));
        let d = hp.nearest_f64(&diff).abs();
        out.push(Certificate::numeric(
            format!(
                "at x = {deg}° the sides {} at {DIGITS} digits",
                if expect_equal { "agree" } else { "differ" }
            ),
            format!("|difference| = {}", sci(d)),
            (d < EVALUATION_TOL) == expect_equal,
        ));
    }
    Ok(out)
}

// ---------------------------------------------------------------- p38

pub fn p38_certificate() -> Result<Vec<Certificate>, ProblemError> {
    let p = poly(&[1, -3, 0, 1]);
    let mut out = Vec::new();
    let roots = p.rational_roots();
    out.push(Certificate::exact(
        "x³ − 3x + 1 has no rational root",
        format!("candidates ±1, rational roots {roots:?}"),
        roots.is_empty(),
    ));
    for x in [1, -1] {
        let v = p.eval_rational(&BigRational::from_integer(x.into()));
        out.push(Certificate::exact(
            format!("p({x}) ≠ 0"),
            format!("p({x}) = {v}"),
            !v.is_zero(),
        ));
    }

    let mut hp = Hp::new();
    let ten = hp.radians(10);
    let s = hp.sin(&ten);
    let x = hp.mul(&hp.int(2), &s);
    let value = hp.add(
        &hp.sub(&hp.powi(&x, 3), &hp.mul(&hp.int(3), &x)),
        &hp.int(1),
    );
    let residual = hp.nearest_f64(&value).abs();
    out.push(Certificate::numeric(
        format!("|p(2 sin 10°)| < 1e-12 at {DIGITS} digits"),
        format!("|p| = {}", sci(residual)),
        residual < EVALUATION_TOL,
    ));
    // The bridge: 3 sin 10° − 4 sin³ 10° = sin 30° = 1/2.
    let triple = hp.sub(
        &hp.mul(&hp.int(3), &s),
        &hp.mul(&hp.int(4), &hp.powi(&s, 3)),
    );
    let gap = hp.nearest_f64(&hp.sub(&triple, &hp.ratio(1, 2))).abs();
    out.push(Certificate::numeric(
        "3 sin 10° − 4 sin³ 10° = 1/2",
        format!("|difference| = {}", sci(gap)),
        gap < EVALUATION_TOL,
    ));
    Ok(out)
}

// ---------------------------------------------------------------- p52

pub fn p52_certificate() -> Result<Vec<Certificate>, ProblemError> {
    let mut out = Vec::new();
    let upper = compare_log(3, 2, 3, 2)?;
    out.push(Certificate::exact(
        "log₂ 3 > 3/2",
        format!("3² = {} > {} = 2³", upper.lhs, upper.rhs),
        upper.ordering == Ordering::Greater,
    ));
    let lower = compare_log(5, 3, 3, 2)?;
    out.push(Certificate::exact(
        "log₃ 5 < 3/2",
        format!("5² = {} < {} = 3³", lower.lhs, lower.rhs),
        lower.ordering == Ordering::Less,
    ));
    let conclusion = if upper.ordering == Ordering::Greater && lower.ordering == Ordering::Less {
        Ordering::Greater
    } else {
        Ordering::Equal
    };
    out.push(Certificate::exact(
        "log₂ 3 > log₃ 5",
        format!("{conclusion:?}"),
        conclusion == Ordering::Greater,
    ));

    let mut hp = Hp::new();
    let (l2, l3, l5) = (hp.ln(&hp.int(2)), hp.ln(&hp.int(3)), hp.ln(&hp.int(5)));
    let a = hp.div(&l3, &l2);
    let b = hp.div(&l5, &l3);
    let (fa, fb) = (hp.nearest_f64(&a), hp.nearest_f64(&b));
    let gap = hp.nearest_f64(&hp.sub(&a, &b));
    out.push(Certificate::numeric(
        format!("{DIGITS}-digit logarithms agree with the ordering"),
        format!("log₂ 3 = {fa:.15}, log₃ 5 = {fb:.15}"),
        gap > 0.0 && fa > 1.5 && fb < 1.5,
    ));
    Ok(out)
}

// ---------------------------------------------------------------- p61

pub fn p61_digits() -> Result<Vec<Certificate>, ProblemError> {
    let mut out = Vec::new();
    let n: BigInt = Pow::pow(BigInt::from(125), 100u32);
    let digits = digit_count(&n)?;
    out.push(Certificate::exact(
        "125^100 has 210 digits",
        format!("digits={digits}"),
        digits == 210,
    ));

    let factor: BigRational = Pow::pow(q(1024, 1000), 30u32);
    let ten = BigRational::from_integer(10.into());
    out.push(Certificate::exact(
        "1 < 1.024^30 < 10",
        format!(
            "1.024^30 ≈ {}",
            crate::exactnum::format_significant(&factor, 12)
        ),
        factor > BigRational::one() && factor < ten,
    ));
    let ten_210 = BigRational::from_integer(Pow::pow(BigInt::from(10), 210u32));
    let quotient = &ten_210 / &factor;
    out.push(Certificate::exact(
        "125^100 = 10^210 / 1.024^30",
        "exact rational equality",
        quotient == BigRational::from_integer(n),
    ));
    Ok(out)
}

// ---------------------------------------------------------------- p65

/// `x + ωⁱ y + ωʲ z` over the variables `(x, y, z)`.
fn conjugate_factor(i: u32, j: u32) -> MultiPolynomial {
    MultiPolynomial::linear(&[
        Eisenstein::integer(1),
        Eisenstein::omega_pow(i),
        Eisenstein::omega_pow(j),
    ])
}

pub fn p65_identity_check() -> Result<Vec<Certificate>, ProblemError> {
    let mut out = Vec::new();
    let names = ["x", "y", "z"];
    let [x, y, z] = [0, 1, 2].map(|i| MultiPolynomial::var(3, i));
    let int = |n: i64| MultiPolynomial::constant(3, Eisenstein::integer(n));
    let cubes = &(&x.pow(3) + &y.pow(3)) + &z.pow(3);
    let xyz = &(&x * &y) * &z;

    // (a) the eight non-trivial factors and x + y + z
    let mut factors: Vec<MultiPolynomial> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .filter(|&ij| ij != (0, 0))
        .map(|(i, j)| conjugate_factor(i, j))
        .collect();
    let eight = expand_product(&factors);
    factors.push(conjugate_factor(0, 0));
    let nine = expand_product(&factors);
    let target = &cubes.pow(3) - &(&int(27) * &xyz.pow(3));
    out.push(Certificate::exact(
        "(x+y+z) · Π of the eight conjugate factors = (x³+y³+z³)³ − 27x³y³z³",
        format!(
            "{} terms, integer coefficients: {}",
            nine.len(),
            nine.has_integer_coefficients()
        ),
        nine == target,
    ));
    let lead = nine.coeff(&[9, 0, 0]);
    out.push(Certificate::exact(
        "coefficient of x⁹ is 1",
        format!("{lead}"),
        lead == Eisenstein::integer(1),
    ));
    out.push(Certificate::exact(
        "the eight-factor product has integer coefficients",
        format!("{} terms", eight.len()),
        eight.has_integer_coefficients(),
    ));

    // (b) the two-step form
    let pair = expand_product(&[conjugate_factor(1, 2), conjugate_factor(2, 1)]);
    let two_step = &(&(&(&x.pow(2) + &y.pow(2)) - &(&y * &z)) + &z.pow(2)) - &(&x * &(&y + &z));
    out.push(Certificate::exact(
        "(x+ωy+ω²z)(x+ω²y+ωz) = x² + y² − yz + z² − x(y+z)",
        pair.display_with(&names),
        pair == two_step,
    ));
    let sum = &(&x + &y) + &z;
    let lhs = &sum * &two_step;
    let rhs = &cubes - &(&int(3) * &xyz);
    out.push(Certificate::exact(
        "(x+y+z)(x²+y²+z²−xy−yz−xz) = x³+y³+z³−3xyz",
        rhs.display_with(&names),
        lhs == rhs,
    ));
    let at = [1, 2, 3].map(BigInt::from);
    let (l, r) = (lhs.eval_integer(&at), rhs.eval_integer(&at));
    out.push(Certificate::exact(
        "identity (b) at (1, 2, 3)",
        format!("6·3 = {l} = 36 − 18 = {r}"),
        l == r,
    ));

    // (c) (s − u)(s² + su + u²) = s³ − t with u³ = t, over (s, u, t)
    let [s, u, t] = [0, 1, 2].map(|i| MultiPolynomial::var(3, i));
    let last = &(&s - &u) * &(&(&s.pow(2) + &(&s * &u)) + &u.pow(2));
    let reduced = last.reduce_power(1, 3, &t);
    let goal = &s.pow(3) - &t;
    out.push(Certificate::exact(
        "(s − ∛t)(s² + s∛t + ∛t²) = s³ − t",
        reduced.display_with(&["s", "u", "t"]),
        reduced == goal,
    ));
    // composing s = x³+y³+z³ and ∛t = 3xyz recovers the denominator of (a)
    let composed = goal.compose(&[cubes.clone(), &int(3) * &xyz, &int(27) * &xyz.pow(3)]);
    out.push(Certificate::exact(
        "s³ − t with s = a+b+c, t = 27abc matches (a)",
        format!("{} terms", composed.len()),
        composed == target,
    ));

    for (a, b, c) in [(1.0f64, 8.0f64, 27.0f64), (2.0, 3.0, 5.0)] {
        let (x, y, z) = (a.cbrt(), b.cbrt(), c.cbrt());
        let direct = 1.0 / (x + y + z);
        let num = x * x + y * y + z * z - (a * b).cbrt() - (a * c).cbrt() - (b * c).cbrt();
        let s = a + b + c;
        let r = (a * b * c).cbrt();
        let displayed = num / (s - 3.0 * r);
        let t = 27.0 * a * b * c;
        let root = 3.0 * r;
        let rationalized = num * (s * s + s * root + root * root) / (s.powi(3) - t);
        let err = (displayed - direct)
            .abs()
            .max((rationalized - direct).abs());
        out.push(Certificate::numeric(
            format!("rationalized forms equal 1/(∛{a} + ∛{b} + ∛{c})"),
            format!("value {direct:.15}, max deviation {}", sci(err)),
            err < EVALUATION_TOL,
        ));
    }
    Ok(out)
}

pub(crate) fn verify_p38() -> Result<Vec<Certificate>, ProblemError> {
    p38_certificate()
}

pub(crate) fn verify_p52() -> Result<Vec<Certificate>, ProblemError> {
    p52_certificate()
}

pub(crate) fn verify_p61() -> Result<Vec<Certificate>, ProblemError> {
    p61_digits()
}

pub(crate) fn verify_p65() -> Result<Vec<Certificate>, ProblemError> {
    p65_identity_check()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_pass(c: &[Certificate]) -> bool {
        c.iter().all(|c| c.pass)
    }

    #[test]
    fn p01_interval_and_endpoints() {
        let i = p01_certificate().unwrap();
        assert_eq!(i.lo, ExactReal::from_ratio(3, 5));
        assert_eq!(i.hi, ExactReal::one());
        assert!(i.lo_closed && i.hi_closed);
        // at x = 0: LHS 0 against RHS 11 − 16 = −5
        assert!(!p01_holds(&q(0, 1)).unwrap());
        assert!(p01_holds(&q(3, 5)).unwrap());
        assert!(all_pass(&verify_p01().unwrap()));
    }

    #[test]
    fn p01_agrees_with_floating_point_away_from_the_boundary() {
        for k in 1..=100 {
            let x = k as f64 / 100.0;
            if (x - 0.6).abs() < 1e-9 {
                continue;
            }
            let float = x * (8.0 * (1.0 - x).sqrt() + (1.0 + x).sqrt())
                <= 11.0 * (1.0 + x).sqrt() - 16.0 * (1.0 - x).sqrt();
            assert_eq!(p01_holds(&q(k, 100)).unwrap(), float, "x = {x}");
        }
    }

    #[test]
    fn p12_roots_are_the_three_expected() {
        let r = p12_roots().unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r[2], ExactReal::one());
        let approx: Vec<f64> = r.iter().map(ExactReal::to_f64).collect();
        assert!((approx[0] + 1.618_033_988_749_895).abs() < 1e-12);
        assert!((approx[1] - 0.618_033_988_749_895).abs() < 1e-12);
        assert!(all_pass(&verify_p12().unwrap()));
    }

    #[test]
    fn monic_division() {
        let (q, r) = divide_monic(&poly(&[-1, 0, 1]), &poly(&[-1, 1]));
        assert_eq!(q, poly(&[1, 1]));
        assert!(r.is_zero());
        let (_, r) = divide_monic(&poly(&[1, 0, 1]), &poly(&[-1, 1]));
        assert_eq!(r, poly(&[2]));
    }

    #[test]
    fn p17_bound_is_49_over_64() {
        assert_eq!(p17_solutions().unwrap().bound, q(49, 64));
        assert!(all_pass(&verify_p17().unwrap()));
    }

    #[test]
    fn p17_residue_is_nonzero_off_the_diagonal() {
        // sin 30° = 1/2, cos 30° = √3/2
        let s = ExactReal::from_ratio(1, 2);
        let c = &ExactReal::from_integer(3).sqrt().unwrap() * &ExactReal::from_ratio(1, 2);
        assert!(!p17_residue(&s, &c).unwrap().is_zero().unwrap());
    }

    #[test]
    fn exact_certificate_problems_pass() {
        for c in [
            p38_certificate(),
            p52_certificate(),
            p61_digits(),
            p65_identity_check(),
        ] {
            let c = c.unwrap();
            assert!(all_pass(&c), "{c:#?}");
        }
    }

    #[test]
    fn p61_digit_count_matches_logarithm() {
        // 100·log10(125) = 209.69…, so 210 digits
        let digits = (100.0 * 125f64.log10()).floor() as usize + 1;
        assert_eq!(digits, 210);
        assert!(p61_digits().unwrap()[0].witness.contains("210"));
    }

    #[test]
    fn interval_rejects_reversed_ends() {
        assert!(ExactInterval::new(ExactReal::one(), ExactReal::zero(), true, true).is_err());
        let open = ExactInterval::new(ExactReal::zero(), ExactReal::one(), false, false).unwrap();
        assert!(!open.contains(&ExactReal::zero()).unwrap());
        assert!(open.contains(&ExactReal::from_ratio(1, 2)).unwrap());
    }
}
