//! Quadrilaterals with prescribed sides: the cyclic one against hinged ones.

use std::f64::consts::PI;

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use rand::Rng;

use super::{rng_for, sci, Certificate, ProblemError, ProblemId, BISECTION_TOL, GEOMETRY_TOL};

#[derive(Debug, Clone, PartialEq)]
pub struct P49Report {
    pub sides: [f64; 4],
    pub circumradius: f64,
    pub cyclic_area: f64,
    pub brahmagupta: f64,
    pub trials: usize,
    pub max_sampled_area: f64,
    /// Samples whose area exceeds the cyclic area by more than the tolerance.
    pub violations: usize,
}

/// Sum of central angles `2 asin(s/2R)` over `sides`.
fn central(sides: &[f64], r: f64) -> f64 {
    sides
        .iter()
        .map(|s| 2.0 * (s / (2.0 * r)).min(1.0).asin())
        .sum()
}

/// Circumradius and area of the cyclic quadrilateral, by bisection on `R`.
///
/// With the centre inside, the central angles sum to `2π`. Otherwise the
/// longest side's angle equals the sum of the other three and its triangle
/// is subtracted.
fn cyclic(sides: [f64; 4]) -> (f64, f64) {
    let mut sorted = sides;
    sorted.sort_by(f64::total_cmp);
    let longest = sorted[3];
    let rest = &sorted[..3];
    let r_min = longest / 2.0;
    let inside = central(&sides, r_min) >= 2.0 * PI;
    // g changes sign exactly once on (r_min, ∞)
    let g = |r: f64| {
        if inside {
            central(&sides, r) - 2.0 * PI
        } else {
            central(rest, r) - central(&[longest], r)
        }
    };
    let mut lo = r_min;
    let mut hi = r_min * 2.0;
    let low_sign = g(lo) > 0.0;
    while (g(hi) > 0.0) == low_sign {
        hi *= 2.0;
    }
    while hi - lo > BISECTION_TOL * hi {
        let mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0) == low_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = 0.5 * (lo + hi);
    let tri = |s: f64| {
        let theta = 2.0 * (s / (2.0 * r)).min(1.0).asin();
        0.5 * r * r * theta.sin()
    };
    let area = if inside {
        sides.iter().map(|&s| tri(s)).sum()
    } else {
        rest.iter().map(|&s| tri(s)).sum::<f64>() - tri(longest)
    };
    (r, area)
}

fn heron(a: f64, b: f64, c: f64) -> Option<f64> {
    let s = 0.5 * (a + b + c);
    let v = s * (s - a) * (s - b) * (s - c);
    (v >= 0.0).then(|| v.sqrt())
}

/// Largest area of the hinge with angle `theta` between sides `a` and `d` at
/// `A`, the other two sides folded outward.
fn hinge_area(sides: [f64; 4], theta: f64) -> Option<f64> {
    let [a, b, c, d] = sides;
    let diag = (a * a + d * d - 2.0 * a * d * theta.cos()).max(0.0).sqrt();
    Some(0.5 * a * d * theta.sin() + heron(b, c, diag)?)
}

/// Builds the cyclic quadrilateral on `sides`, checks it against
/// Brahmagupta's formula and samples `trials` hinge configurations.
pub fn p49_compare(
    sides: [BigRational; 4],
    trials: usize,
    seed: u64,
) -> Result<P49Report, ProblemError> {
    let total: BigRational = sides.iter().sum();
    for s in &sides {
        if !s.is_positive() || s.clone() * BigRational::from_integer(2.into()) >= total {
            return Err(ProblemError::InfeasibleSides(s.to_string()));
        }
    }
    let f = sides.clone().map(|s| s.to_f64().expect("finite side"));
    let (circumradius, cyclic_area) = cyclic(f);
    let s = 0.5 * f.iter().sum::<f64>();
    let brahmagupta = f.iter().map(|x| s - x).product::<f64>().sqrt();

    let mut rng = rng_for(ProblemId::P49, seed);
    let mut sampled = 0;
    let mut max_sampled_area: f64 = 0.0;
    let mut violations = 0;
    let mut draws = 0usize;
    while sampled < trials {
        draws += 1;
        if draws > trials * 1000 {
            return Err(ProblemError::InfeasibleSides(
                "no hinge configuration closes".into(),
            ));
        }
        let theta = rng.gen_range(0.0..PI);
        let Some(area) = hinge_area(f, theta) else {
            continue;
        };
        sampled += 1;
        max_sampled_area = max_sampled_area.max(area);
        if area > cyclic_area + GEOMETRY_TOL {
            violations += 1;
        }
    }
    Ok(P49Report {
        sides: f,
        circumradius,
        cyclic_area,
        brahmagupta,
        trials,
        max_sampled_area,
        violations,
    })
}

pub(crate) const P49_TRIALS: usize = 10_000;

pub(crate) fn verify_p49(seed: u64) -> Result<Vec<Certificate>, ProblemError> {
    let int = |n: i64| BigRational::from_integer(n.into());
    let cases: [([i64; 4], Option<f64>); 4] = [
        ([1, 1, 1, 1], Some(1.0)),
        ([3, 4, 3, 4], Some(12.0)),
        ([2, 3, 4, 5], None),
        ([1, 2, 2, 4], None),
    ];
    let mut out = Vec::new();
    for (sides, expected) in cases {
        let r = p49_compare(sides.map(int), P49_TRIALS, seed)?;
        let gap = (r.cyclic_area - r.brahmagupta).abs();
        out.push(Certificate::numeric(
            format!("sides {sides:?}: cyclic area matches Brahmagupta"),
            format!(
                "R = {:.12}, area {:.12}, |gap| = {}",
                r.circumradius,
                r.cyclic_area,
                sci(gap)
            ),
            gap < GEOMETRY_TOL,
        ));
        if let Some(e) = expected {
            let gap = (r.cyclic_area - e).abs();
            out.push(Certificate::numeric(
                format!("sides {sides:?}: cyclic area is {e}"),
                format!("|area − {e}| = {}", sci(gap)),
                gap < GEOMETRY_TOL,
            ));
        }
        out.push(Certificate::numeric(
            format!("sides {sides:?}: no sampled hinge exceeds the cyclic area"),
            format!(
                "{} samples, max {:.12}, {} above cyclic + 1e-9",
                r.trials, r.max_sampled_area, r.violations
            ),
            r.violations == 0,
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn square_and_rectangle() {
        let r = p49_compare([1, 1, 1, 1].map(int), 100, 0).unwrap();
        assert!((r.cyclic_area - 1.0).abs() < 1e-9);
        assert!((r.circumradius - 0.5f64.sqrt()).abs() < 1e-9);
        // Brahmagupta: s = 7, √(4·3·4·3) = 12
        let r = p49_compare([3, 4, 3, 4].map(int), 100, 0).unwrap();
        assert!((r.cyclic_area - 12.0).abs() < 1e-9);
        assert!((r.brahmagupta - 12.0).abs() < 1e-12);
    }

    #[test]
    fn centre_outside_branch() {
        // a long side forces the centre outside
        let r = p49_compare([2, 2, 2, 5].map(int), 100, 0).unwrap();
        assert!(r.circumradius > 0.0);
        assert!((r.cyclic_area - r.brahmagupta).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn sampling_approaches_but_never_exceeds() {
        let r = p49_compare([2, 3, 4, 5].map(int), 10_000, 1).unwrap();
        assert_eq!(r.violations, 0);
        assert!(r.max_sampled_area > r.cyclic_area - 1e-3);
    }

    #[test]
    fn infeasible_sides() {
        assert!(matches!(
            p49_compare([1, 1, 1, 3].map(int), 10, 0),
            Err(ProblemError::InfeasibleSides(_))
        ));
    }
}
