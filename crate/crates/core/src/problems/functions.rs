//! Numeric probes over fixed function catalogs.

use super::{sci, Certificate, ProblemError, MINIMIZER_TOL, QUADRATURE_TOL};

/// Catalog of candidates for `F(x₁) − F(x₂) ≤ (x₁ − x₂)²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Candidate {
    Constant(f64),
    /// `F(x) = k·x`
    Linear(f64),
    Sin,
    Square,
}

impl Candidate {
    pub const CATALOG: [Candidate; 6] = [
        Candidate::Constant(5.0),
        Candidate::Constant(-2.5),
        Candidate::Linear(1.0),
        Candidate::Linear(-3.0),
        Candidate::Sin,
        Candidate::Square,
    ];

    pub fn eval(self, x: f64) -> f64 {
        match self {
            Candidate::Constant(c) => c,
            Candidate::Linear(k) => k * x,
            Candidate::Sin => x.sin(),
            Candidate::Square => x * x,
        }
    }

    pub fn is_constant(self) -> bool {
        matches!(self, Candidate::Constant(_))
    }

    pub fn name(self) -> String {
        match self {
            Candidate::Constant(c) => format!("F(x) = {c}"),
            Candidate::Linear(k) => format!("F(x) = {k}x"),
            Candidate::Sin => "F(x) = sin x".into(),
            Candidate::Square => "F(x) = x²".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    ConsistentWithConstant,
    /// A pair with `F(x₁) − F(x₂) > (x₁ − x₂)²`.
    Violation {
        x1: f64,
        x2: f64,
        increment: f64,
        bound: f64,
    },
}

/// First pair of `grid` on which `candidate` breaks the inequality.
pub fn p07_probe(candidate: Candidate, grid: &[(f64, f64)]) -> Classification {
    for &(x1, x2) in grid {
        let increment = candidate.eval(x1) - candidate.eval(x2);
        let bound = (x1 - x2) * (x1 - x2);
        if increment > bound {
            return Classification::Violation {
                x1,
                x2,
                increment,
                bound,
            };
        }
    }
    Classification::ConsistentWithConstant
}

/// All ordered pairs of multiples of 1/20 in `[−2, 2]`.
pub(crate) fn p07_grid() -> Vec<(f64, f64)> {
    let pts: Vec<f64> = (-40..=40).map(|k| k as f64 / 20.0).collect();
    pts.iter()
        .flat_map(|&a| pts.iter().map(move |&b| (a, b)))
        .collect()
}

pub(crate) fn verify_p07() -> Result<Vec<Certificate>, ProblemError> {
    let grid = p07_grid();
    Ok(Candidate::CATALOG
        .iter()
        .map(|&c| {
            let class = p07_probe(c, &grid);
            let violated = matches!(class, Classification::Violation { .. });
            let witness = match class {
                Classification::ConsistentWithConstant => {
                    format!("no violation on {} pairs", grid.len())
                }
                Classification::Violation {
                    x1,
                    x2,
                    increment,
                    bound,
                } => {
                    format!("F({x1}) − F({x2}) = {increment:.6} > {bound:.6}")
                }
            };
            Certificate::numeric(
                format!(
                    "{} is {}",
                    c.name(),
                    if c.is_constant() {
                        "consistent"
                    } else {
                        "rejected"
                    }
                ),
                witness,
                violated != c.is_constant(),
            )
        })
        .collect())
}

// ---------------------------------------------------------------- p71

/// Strictly increasing continuous functions on a closed domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonotoneFunction {
    /// `x` on `[−10, 10]`
    Identity,
    /// `x³` on `[−2, 2]`
    Cube,
    /// `eˣ` on `[−5, 5]`
    Exp,
}

impl MonotoneFunction {
    pub const CATALOG: [MonotoneFunction; 3] = [
        MonotoneFunction::Identity,
        MonotoneFunction::Cube,
        MonotoneFunction::Exp,
    ];

    pub fn eval(self, x: f64) -> f64 {
        match self {
            MonotoneFunction::Identity => x,
            MonotoneFunction::Cube => x * x * x,
            MonotoneFunction::Exp => x.exp(),
        }
    }

    pub fn domain(self) -> (f64, f64) {
        match self {
            MonotoneFunction::Identity => (-10.0, 10.0),
            MonotoneFunction::Cube => (-2.0, 2.0),
            MonotoneFunction::Exp => (-5.0, 5.0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            MonotoneFunction::Identity => "f(x) = x",
            MonotoneFunction::Cube => "f(x) = x³",
            MonotoneFunction::Exp => "f(x) = eˣ",
        }
    }

    /// The `x` with `f(x) = level`, by bisection to machine precision.
    pub fn inverse(self, level: f64) -> Option<f64> {
        let (mut lo, mut hi) = self.domain();
        if !(self.eval(lo) <= level && level <= self.eval(hi)) {
            return None;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.eval(mid) < level {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Some(0.5 * (lo + hi))
    }
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// `∫ₐᵇ f` by adaptive Simpson with absolute tolerance `tol`.
pub(crate) fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    let (fa, fm, fb) = (f(a), f(0.5 * (a + b)), f(b));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(&f, a, b, fa, fm, fb, whole, tol, 50)
}

#[derive(Debug, Clone, PartialEq)]
pub struct P71Report {
    pub function: MonotoneFunction,
    /// Where `f` attains `y1` and `y2`.
    pub x_lo: f64,
    pub x_hi: f64,
    /// `f(x*) = (y1 + y2)/2`.
    pub x_star: f64,
    pub grid_minimizer: f64,
    pub grid_points: usize,
    /// Area at the grid minimizer, from its definition.
    pub min_area: f64,
}

/// Number of grid intervals; the grid has one more point.
pub(crate) const P71_GRID_INTERVALS: usize = 10_000;

/// Area between the graph and the lines `y1`, `y2` cut at `x`, straight from
/// its definition.
fn area(f: MonotoneFunction, y1: f64, y2: f64, x_lo: f64, x_hi: f64, x: f64) -> f64 {
    integrate(|u| f.eval(u) - y1, x_lo, x, QUADRATURE_TOL)
        + integrate(|u| y2 - f.eval(u), x, x_hi, QUADRATURE_TOL)
}

/// Grid search for the cut minimizing the area.
///
/// Grid values are compared through `area(x) − area(m)` with `m` the middle
/// of `[x_lo, x_hi]`, an integral of `2f − y1 − y2` over `[m, x]`. Near a
/// flat minimizer this keeps the compared quantities small, so they are not
/// swamped by the rounding of the full area.
pub fn p71_probe(function: MonotoneFunction, y1: f64, y2: f64) -> Result<P71Report, ProblemError> {
    let not_attained = || ProblemError::LevelsNotAttained {
        function: function.name().into(),
        y1,
        y2,
    };
    if y1.partial_cmp(&y2) != Some(std::cmp::Ordering::Less) {
        return Err(not_attained());
    }
    let x_lo = function.inverse(y1).ok_or_else(not_attained)?;
    let x_hi = function.inverse(y2).ok_or_else(not_attained)?;
    let x_star = function.inverse(0.5 * (y1 + y2)).ok_or_else(not_attained)?;
    let mid = 0.5 * (x_lo + x_hi);
    let rate = |u: f64| 2.0 * function.eval(u) - y1 - y2;
    let h = (x_hi - x_lo) / P71_GRID_INTERVALS as f64;
    let mut best = (f64::INFINITY, x_lo);
    for k in 0..=P71_GRID_INTERVALS {
        let x = x_lo + h * k as f64;
        let v = integrate(rate, mid, x, QUADRATURE_TOL);
        if v < best.0 {
            best = (v, x);
        }
    }
    let grid_minimizer = best.1;
    Ok(P71Report {
        function,
        x_lo,
        x_hi,
        x_star,
        grid_minimizer,
        grid_points: P71_GRID_INTERVALS + 1,
        min_area: area(function, y1, y2, x_lo, x_hi, grid_minimizer),
    })
}

pub(crate) const P71_CASES: [(MonotoneFunction, f64, f64); 3] = [
    (MonotoneFunction::Identity, 0.0, 1.0),
    (MonotoneFunction::Cube, -1.0, 1.0),
    (MonotoneFunction::Exp, 1.0, 3.0),
];

pub(crate) fn verify_p71() -> Result<Vec<Certificate>, ProblemError> {
    let mut out = Vec::new();
    for (f, y1, y2) in P71_CASES {
        let r = p71_probe(f, y1, y2)?;
        let gap = (r.grid_minimizer - r.x_star).abs();
        out.push(Certificate::numeric(
            format!(
                "{} between y = {y1} and y = {y2}: minimizer at the mid-level crossing",
                f.name()
            ),
            format!(
                "x* = {:.10}, grid minimizer {:.10} over {} points, |gap| = {}",
                r.x_star,
                r.grid_minimizer,
                r.grid_points,
                sci(gap)
            ),
            gap <= MINIMIZER_TOL,
        ));
        // the difference form and the definition agree
        let probe = 0.3 * r.x_lo + 0.7 * r.x_hi;
        let direct =
            area(f, y1, y2, r.x_lo, r.x_hi, probe) - area(f, y1, y2, r.x_lo, r.x_hi, r.x_star);
        let via_rate = integrate(
            |u| 2.0 * f.eval(u) - y1 - y2,
            r.x_star,
            probe,
            QUADRATURE_TOL,
        );
        let err = (direct - via_rate).abs();
        out.push(Certificate::numeric(
            format!("{}: area(x) − area(x*) = ∫ (2f − y1 − y2)", f.name()),
            format!("deviation {}", sci(err)),
            err < 1e-8,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p07_examples() {
        assert_eq!(
            p07_probe(Candidate::Constant(5.0), &p07_grid()),
            Classification::ConsistentWithConstant
        );
        match p07_probe(Candidate::Linear(1.0), &[(0.5, 0.0)]) {
            Classification::Violation {
                increment, bound, ..
            } => {
                assert_eq!(increment, 0.5);
                assert_eq!(bound, 0.25);
            }
            c => panic!("{c:?}"),
        }
        match p07_probe(Candidate::Sin, &[(0.1, 0.0)]) {
            Classification::Violation {
                increment, bound, ..
            } => {
                assert!((increment - 0.099_833_416_646_828_15).abs() < 1e-15);
                assert!((bound - 0.01).abs() < 1e-15);
            }
            c => panic!("{c:?}"),
        }
        assert!(verify_p07().unwrap().iter().all(|c| c.pass));
    }

    #[test]
    fn quadrature_is_exact_on_cubics_and_accurate_on_exp() {
        assert!((integrate(|x| x * x * x, 0.0, 2.0, 1e-12) - 4.0).abs() < 1e-12);
        assert!((integrate(f64::exp, 0.0, 1.0, 1e-12) - (std::f64::consts::E - 1.0)).abs() < 1e-11);
    }

    #[test]
    fn p71_catalog_minimizers() {
        let expected = [0.5, 0.0, std::f64::consts::LN_2];
        for ((f, y1, y2), x) in P71_CASES.into_iter().zip(expected) {
            let r = p71_probe(f, y1, y2).unwrap();
            assert!((r.x_star - x).abs() < 1e-12, "{f:?}");
            assert!(
                (r.grid_minimizer - x).abs() <= MINIMIZER_TOL,
                "{f:?}: {}",
                r.grid_minimizer
            );
        }
    }

    #[test]
    fn p71_area_oracle_for_the_identity() {
        // f = x between 0 and 1 cut at c: c²/2 + (1 − c)²/2, least at 1/2
        let r = p71_probe(MonotoneFunction::Identity, 0.0, 1.0).unwrap();
        assert!((r.min_area - 0.25).abs() < 1e-8);
    }

    #[test]
    fn p71_rejects_unattained_levels() {
        assert!(matches!(
            p71_probe(MonotoneFunction::Exp, -1.0, 2.0),
            Err(ProblemError::LevelsNotAttained { .. })
        ));
        assert!(p71_probe(MonotoneFunction::Identity, 1.0, 0.0).is_err());
    }
}
