//! The triangle with sides `OA`, `OB`, `OC` for a point `O` inside an
//! equilateral triangle.

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;

use super::{rng_for, Certificate, ProblemError, ProblemId, ANGLE_TOL_DEG};

fn deg(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Angles of the triangle with sides `OA`, `OB`, `OC` when `∠BOC = x` and
/// `∠AOC = y`, opposite `OB`, `OC`, `OA` in that order.
///
/// Requires `60 < x, y < 180` and `180 < x + y < 300`: `O` is strictly
/// inside, so each angle at `O` lies strictly between 60° and 180°.
pub fn p26_angles(
    x: &BigRational,
    y: &BigRational,
) -> Result<(BigRational, BigRational, BigRational), ProblemError> {
    let open = |v: &BigRational, lo: i64, hi: i64| *v > deg(lo) && *v < deg(hi);
    let sum = x + y;
    if !(open(x, 60, 180) && open(y, 60, 180) && open(&sum, 180, 300)) {
        return Err(ProblemError::Domain(format!(
            "need 60 < x, y < 180 and 180 < x + y < 300, got x = {x}, y = {y}"
        )));
    }
    Ok((y - deg(60), deg(300) - &sum, x - deg(60)))
}

type V2 = (f64, f64);

fn sub(a: V2, b: V2) -> V2 {
    (a.0 - b.0, a.1 - b.1)
}

fn norm(a: V2) -> f64 {
    a.0.hypot(a.1)
}

/// Centre of the arc through `p`, `q` from which `pq` is seen at `angle`
/// radians, on the side of `toward`.
fn arc_center(p: V2, q: V2, angle: f64, toward: V2) -> V2 {
    let m = (0.5 * (p.0 + q.0), 0.5 * (p.1 + q.1));
    let d = sub(q, p);
    let len = norm(d);
    let mut n = (-d.1 / len, d.0 / len);
    let side = (toward.0 - m.0) * n.0 + (toward.1 - m.1) * n.1;
    if side < 0.0 {
        n = (-n.0, -n.1);
    }
    let offset = 0.5 * len / angle.tan();
    (m.0 + offset * n.0, m.1 + offset * n.1)
}

/// The circle through `C` other than `C` common to two circles through `C`.
fn second_common_point(c: V2, o1: V2, o2: V2) -> V2 {
    // reflect c across the line of centres
    let d = sub(o2, o1);
    let t = ((c.0 - o1.0) * d.0 + (c.1 - o1.1) * d.1) / (d.0 * d.0 + d.1 * d.1);
    let foot = (o1.0 + t * d.0, o1.1 + t * d.1);
    (2.0 * foot.0 - c.0, 2.0 * foot.1 - c.1)
}

fn angle_at(p: V2, a: V2, b: V2) -> f64 {
    let (u, v) = (sub(a, p), sub(b, p));
    (u.0 * v.1 - u.1 * v.0)
        .atan2(u.0 * v.0 + u.1 * v.1)
        .abs()
        .to_degrees()
}

/// Numeric reconstruction: places `O`, rotates about `A` by 60° and measures
/// the triangle `C O O'`. Returns the angles opposite `OB`, `OC`, `OA` and the
/// side mismatches `| |OO'| − |OA| |`, `| |O'C| − |OB| |`.
pub(crate) fn reconstruct(x_deg: f64, y_deg: f64) -> ([f64; 3], [f64; 2]) {
    let h = 3f64.sqrt() / 2.0;
    let (a, b, c) = ((0.0, 0.0), (1.0, 0.0), (0.5, h));
    let (x, y) = (x_deg.to_radians(), y_deg.to_radians());
    let o1 = arc_center(b, c, x, a);
    let o2 = arc_center(a, c, y, b);
    let o = second_common_point(c, o1, o2);
    // rotation about A by +60° takes B to C
    let (cs, sn) = (0.5, h);
    let rot = |p: V2| (cs * p.0 - sn * p.1, sn * p.0 + cs * p.1);
    let o_rot = rot(o);
    debug_assert!(norm(sub(rot(b), c)) < 1e-12);
    let at_o = angle_at(o, o_rot, c);
    let at_o_rot = angle_at(o_rot, o, c);
    let at_c = angle_at(c, o, o_rot);
    let side_mismatch = [
        (norm(sub(o_rot, o)) - norm(o)).abs(),
        (norm(sub(c, o_rot)) - norm(sub(b, o))).abs(),
    ];
    ([at_o, at_o_rot, at_c], side_mismatch)
}

pub(crate) const P26_SAMPLES: usize = 20;

pub(crate) fn verify_p26(seed: u64) -> Result<Vec<Certificate>, ProblemError> {
    let mut out = Vec::new();
    let (a, b, c) = p26_angles(&deg(150), &deg(120))?;
    out.push(Certificate::exact(
        "(x, y) = (150, 120) gives angles (60, 30, 90)",
        format!("({a}, {b}, {c})"),
        (a, b, c) == (deg(60), deg(30), deg(90)),
    ));
    let (a, b, c) = p26_angles(&deg(120), &deg(120))?;
    out.push(Certificate::exact(
        "the centre gives an equilateral triangle",
        format!("({a}, {b}, {c})"),
        a == deg(60) && b == deg(60) && c == deg(60),
    ));

    let mut rng = rng_for(ProblemId::P26, seed);
    let mut worst: f64 = 0.0;
    let mut worst_side: f64 = 0.0;
    let mut sums_ok = true;
    let mut n = 0;
    while n < P26_SAMPLES {
        // rational angles in hundredths of a degree
        let x = BigRational::new(rng.gen_range(6_001..18_000).into(), 100.into());
        let y = BigRational::new(rng.gen_range(6_001..18_000).into(), 100.into());
        let Ok(formula) = p26_angles(&x, &y) else {
            continue;
        };
        n += 1;
        sums_ok &= &formula.0 + &formula.1 + &formula.2 == deg(180);
        let f = [&formula.0, &formula.1, &formula.2].map(|v| v.to_f64().expect("finite"));
        let (measured, sides) =
            reconstruct(x.to_f64().expect("finite"), y.to_f64().expect("finite"));
        for (m, e) in measured.iter().zip(f) {
            worst = worst.max((m - e).abs());
        }
        worst_side = worst_side.max(sides[0].max(sides[1]));
    }
    out.push(Certificate::exact(
        "formula angles sum to 180 on every sample",
        format!("{P26_SAMPLES} samples"),
        sums_ok,
    ));
    out.push(Certificate::numeric(
        format!("formula matches the reconstructed triangle on {P26_SAMPLES} random (x, y)"),
        format!("max angle deviation {worst:.3e}°, max side mismatch {worst_side:.3e}"),
        worst < ANGLE_TOL_DEG && worst_side < 1e-12,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(
            p26_angles(&deg(150), &deg(120)).unwrap(),
            (deg(60), deg(30), deg(90))
        );
        assert_eq!(
            p26_angles(&deg(120), &deg(120)).unwrap(),
            (deg(60), deg(60), deg(60))
        );
    }

    #[test]
    fn domain_is_enforced() {
        for (x, y) in [(60, 150), (150, 180), (170, 140), (100, 80)] {
            assert!(
                matches!(p26_angles(&deg(x), &deg(y)), Err(ProblemError::Domain(_))),
                "{x} {y}"
            );
        }
    }

    #[test]
    fn reconstruction_of_the_centre() {
        let (angles, sides) = reconstruct(120.0, 120.0);
        for a in angles {
            assert!((a - 60.0).abs() < 1e-9);
        }
        assert!(sides.iter().all(|s| *s < 1e-12));
    }

    #[test]
    fn reconstruction_places_o_with_the_requested_angles() {
        // independent check: recompute ∠BOC and ∠AOC from the placed point
        let h = 3f64.sqrt() / 2.0;
        let (a, b, c) = ((0.0, 0.0), (1.0, 0.0), (0.5, h));
        let (x, y) = (150.0f64, 120.0f64);
        let o = second_common_point(
            c,
            arc_center(b, c, x.to_radians(), a),
            arc_center(a, c, y.to_radians(), b),
        );
        assert!((angle_at(o, b, c) - x).abs() < 1e-9);
        assert!((angle_at(o, a, c) - y).abs() < 1e-9);
        assert!((angle_at(o, a, b) - (360.0 - x - y)).abs() < 1e-9);
    }

    #[test]
    fn verifier_passes() {
        assert!(verify_p26(0).unwrap().iter().all(|c| c.pass));
    }
}
