//! Invariants of the exact kernel, the construction language and the
//! construction verifiers, over random rational inputs.

use std::cmp::Ordering;

use coffins_core::euclid::{
    coplanarity_defect, distance_sq, foot_of_perpendicular, intersection_points, rotate60,
    tangent_line_from, Circle, Curve, Line, Point, Point3, Rotation, Selector,
};
use coffins_core::exactnum::{compare, BigRational, ExactReal, IntPolynomial};
use coffins_core::problems::{rescale, run_construction};
use coffins_core::sketch::{corpus, execute, parse, render_svg, Bindings, Outcome, Viewport};
use proptest::prelude::*;

fn q() -> impl Strategy<Value = BigRational> {
    (-40i64..=40, 1i64..=6).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn point() -> impl Strategy<Value = Point> {
    (q(), q()).prop_map(|(x, y)| Point::new(ExactReal::rational(x), ExactReal::rational(y)))
}

fn eq(a: &ExactReal, b: &ExactReal) -> bool {
    compare(a, b).unwrap() == Ordering::Equal
}

fn zero(a: &ExactReal) -> bool {
    a.is_zero().unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn line_through_contains_both_points(p in point(), r in point()) {
        prop_assume!(!eq(&distance_sq(&p, &r), &ExactReal::zero()));
        let l = Line::through(&p, &r).unwrap();
        prop_assert!(l.contains(&p).unwrap() && l.contains(&r).unwrap());
    }

    #[test]
    fn intersection_points_lie_on_both_curves(c1 in point(), r1 in 1i64..30, c2 in point(), r2 in 1i64..30, p in point(), s in point()) {
        let a = Circle::new(c1, ExactReal::from_integer(r1)).unwrap();
        let b = Circle::new(c2, ExactReal::from_integer(r2)).unwrap();
        if let Ok(points) = intersection_points(Curve::Circle(&a), Curve::Circle(&b)) {
            for x in &points {
                prop_assert!(a.contains(x).unwrap() && b.contains(x).unwrap());
            }
        }
        prop_assume!(!eq(&distance_sq(&p, &s), &ExactReal::zero()));
        let l = Line::through(&p, &s).unwrap();
        if let Ok(points) = intersection_points(Curve::Line(&l), Curve::Circle(&a)) {
            prop_assert!(points.len() <= 2);
            for x in &points {
                prop_assert!(l.contains(x).unwrap() && a.contains(x).unwrap());
            }
            if points.len() == 2 {
                prop_assert_eq!(points[0].lex_cmp(&points[1]).unwrap(), Ordering::Less);
            }
        }
    }

    #[test]
    fn rotate60_gives_an_equilateral_triangle(p in point(), c in point(), ccw in any::<bool>()) {
        let dir = if ccw { Rotation::Ccw } else { Rotation::Cw };
        let r = rotate60(&p, &c, dir);
        let d = distance_sq(&p, &c);
        prop_assert!(eq(&distance_sq(&r, &c), &d));
        prop_assert!(eq(&distance_sq(&r, &p), &d));
        // the two directions undo each other
        let back = rotate60(&r, &c, if ccw { Rotation::Cw } else { Rotation::Ccw });
        prop_assert!(zero(&distance_sq(&back, &p)));
    }

    #[test]
    fn foot_is_the_nearest_point_of_the_line(p in point(), a in point(), b in point(), t in q()) {
        prop_assume!(!zero(&distance_sq(&a, &b)));
        let l = Line::through(&a, &b).unwrap();
        let f = foot_of_perpendicular(&p, &l).unwrap();
        prop_assert!(l.contains(&f).unwrap());
        prop_assert!(eq(&distance_sq(&p, &f), &l.distance_sq(&p).unwrap()));
        let other = a.add(&b.sub(&a).scale(&ExactReal::rational(t)));
        prop_assert_ne!(compare(&distance_sq(&p, &other), &distance_sq(&p, &f)).unwrap(), Ordering::Less);
    }

    #[test]
    fn tangents_touch_exactly(p in point(), c in point(), r2 in 1i64..20, second in any::<bool>()) {
        let circle = Circle::new(c.clone(), ExactReal::from_integer(r2)).unwrap();
        prop_assume!(compare(&distance_sq(&p, &c), &circle.radius_sq).unwrap() == Ordering::Greater);
        let sel = if second { Selector::Second } else { Selector::First };
        let (line, t) = tangent_line_from(&p, &circle, sel).unwrap();
        prop_assert!(circle.contains(&t).unwrap());
        prop_assert!(line.contains(&t).unwrap() && line.contains(&p).unwrap());
        prop_assert!(eq(&line.distance_sq(&c).unwrap(), &circle.radius_sq));
    }

    #[test]
    fn sqrt_squares_back(n in 0i64..10_000, d in 1i64..100) {
        let x = ExactReal::from_ratio(n, d);
        prop_assert!(eq(&x.sqrt().unwrap().square(), &x));
    }

    #[test]
    fn deflation_by_rational_roots_is_exact(coeffs in proptest::collection::vec(-6i64..=6, 2..6), r in q()) {
        // p(x) = (d x − n) · g(x) has the root n/d
        let g = IntPolynomial::from_coeffs(&coeffs);
        prop_assume!(g.degree().is_some());
        let (n, d): (i64, i64) = (r.numer().try_into().unwrap(), r.denom().try_into().unwrap());
        let p = &IntPolynomial::from_coeffs(&[-n, d]) * &g;
        prop_assert!(p.rational_roots().contains(&r));
        prop_assert!(p.deflate(&r).is_some());
    }

    #[test]
    fn coplanarity_defect_is_similarity_invariant(
        pts in proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0, -5.0f64..5.0), 4),
        angles in (0.0f64..6.3, 0.0f64..6.3),
        shift in (-10.0f64..10.0, -10.0f64..10.0, -10.0f64..10.0),
        scale in 0.1f64..10.0,
    ) {
        let p: Vec<Point3> = pts.iter().map(|&(x, y, z)| Point3 { x, y, z }).collect();
        let (a, b) = angles;
        let move_point = |v: Point3| {
            // rotate about z, then about x, scale and shift
            let (x, y) = (a.cos() * v.x - a.sin() * v.y, a.sin() * v.x + a.cos() * v.y);
            let (y, z) = (b.cos() * y - b.sin() * v.z, b.sin() * y + b.cos() * v.z);
            Point3 { x: scale * x + shift.0, y: scale * y + shift.1, z: scale * z + shift.2 }
        };
        let before = coplanarity_defect(p[0], p[1], p[2], p[3]);
        let after = coplanarity_defect(move_point(p[0]), move_point(p[1]), move_point(p[2]), move_point(p[3]));
        prop_assert!((before - after).abs() <= 1e-9 * (1.0 + before.abs()), "{before} vs {after}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rescaled_constructions_keep_every_assertion(index in 0usize..8, n in 1i64..=40, d in 1i64..=9) {
        let entry = corpus()[index];
        let base = run_construction(entry.id, &Bindings::new(), 0).unwrap();
        let inputs: Bindings = base.trace.inputs.iter().cloned().collect();
        let k = BigRational::new(n.into(), d.into());
        let scaled = run_construction(entry.id, &rescale(&inputs, &k).unwrap(), 0).unwrap();
        prop_assert_eq!(base.trace.assertions.len(), scaled.trace.assertions.len());
        prop_assert!(scaled.trace.assertions.iter().all(|a| a.outcome == Outcome::Pass), "{} by {}", entry.id, k);
    }
}

#[test]
fn replay_is_deterministic() {
    for entry in corpus() {
        let program = parse(entry.source).unwrap();
        let a = execute(&program, &Bindings::new()).unwrap();
        let b = execute(&program, &Bindings::new()).unwrap();
        assert!(a.exactly_equals(&b).unwrap(), "{}", entry.id);
        let svg = |t| render_svg(t, &Viewport::fit(t).unwrap()).unwrap();
        assert_eq!(svg(&a), svg(&b), "{}", entry.id);
    }
}
