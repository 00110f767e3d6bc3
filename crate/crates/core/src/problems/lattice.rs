//! Integer-point problems: integer distances and lattice triangles.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Certificate, ProblemError};
use crate::exactnum::rational_sqrt;

pub(crate) const P42_POINTS: [(i64, i64); 6] =
    [(25, 0), (-25, 0), (7, 24), (7, -24), (-7, 24), (-7, -24)];

/// Certificates that the six points have integer distances and no three
/// are collinear.
pub fn p42_points() -> Result<Vec<Certificate>, ProblemError> {
    let mut out = Vec::new();
    let pts = P42_POINTS;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let (dx, dy) = (pts[i].0 - pts[j].0, pts[i].1 - pts[j].1);
            let d2 = dx * dx + dy * dy;
            let root = rational_sqrt(&BigRational::from_integer(BigInt::from(d2)));
            let witness = match &root {
                Some(r) => format!("|PQ|² = {d2} = {r}²"),
                None => format!("|PQ|² = {d2} is not a square"),
            };
            out.push(Certificate::exact(
                format!("|{:?}{:?}| is an integer", pts[i], pts[j]),
                witness,
                root.is_some_and(|r| r.is_integer()),
            ));
        }
    }
    let mut collinear = Vec::new();
    let mut triples = 0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                triples += 1;
                let (a, b, c) = (pts[i], pts[j], pts[k]);
                let cross = (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0);
                if cross == 0 {
                    collinear.push((a, b, c));
                }
            }
        }
    }
    out.push(Certificate::exact(
        "no three of the six points are collinear",
        format!(
            "{triples} triples, {} with zero cross product",
            collinear.len()
        ),
        collinear.is_empty(),
    ));
    Ok(out)
}

/// Outcome of an exhaustive apex search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApexSearch {
    pub radius: i64,
    pub pairs: u64,
    /// Apexes with integer coordinates.
    pub lattice_apexes: u64,
    /// The first lattice triangle found, if any.
    pub example: Option<[(i64, i64); 3]>,
}

/// For every ordered pair of distinct points of `[−radius, radius]²`, rotates
/// `Q − P` about `P` by the angle with `cos = (ca + cb√3)/2`,
/// `sin = (sa + sb√3)/2` and counts apexes on the lattice.
///
/// Coordinates are kept as `(a + b√3)/2` with integer `a`, `b`; a coordinate
/// is an integer iff `b = 0` and `a` is even, since √3 is irrational.
pub fn apex_search(radius: i64, cos: (i64, i64), sin: (i64, i64)) -> ApexSearch {
    let mut pairs = 0;
    let mut lattice_apexes = 0;
    let mut example = None;
    for px in -radius..=radius {
        for py in -radius..=radius {
            for qx in -radius..=radius {
                for qy in -radius..=radius {
                    if (px, py) == (qx, qy) {
                        continue;
                    }
                    pairs += 1;
                    let ((xa, xb), (ya, yb)) = apex((px, py), (qx, qy), cos, sin);
                    if xb == 0 && yb == 0 && xa % 2 == 0 && ya % 2 == 0 {
                        lattice_apexes += 1;
                        if example.is_none() {
                            example = Some([(px, py), (qx, qy), (xa / 2, ya / 2)]);
                        }
                    }
                }
            }
        }
    }
    ApexSearch {
        radius,
        pairs,
        lattice_apexes,
        example,
    }
}

/// Apex `P + R(Q − P)` as `((a, b), (a', b'))`, each coordinate `(a + b√3)/2`.
pub(crate) fn apex(
    p: (i64, i64),
    q: (i64, i64),
    cos: (i64, i64),
    sin: (i64, i64),
) -> ((i64, i64), (i64, i64)) {
    let (dx, dy) = (q.0 - p.0, q.1 - p.1);
    let ((ca, cb), (sa, sb)) = (cos, sin);
    (
        (2 * p.0 + ca * dx - sa * dy, cb * dx - sb * dy),
        (2 * p.1 + sa * dx + ca * dy, sb * dx + cb * dy),
    )
}

/// Exhaustive search for lattice equilateral triangles. Both apexes of every
/// pair are covered because the pair is taken in both orders.
pub fn p45_search(radius: i64) -> Result<ApexSearch, ProblemError> {
    if radius < 1 {
        return Err(ProblemError::Domain(format!("radius {radius} < 1")));
    }
    // cos 60° = 1/2, sin 60° = √3/2
    Ok(apex_search(radius, (1, 0), (0, 1)))
}

pub(crate) const P45_RADIUS: i64 = 20;

pub(crate) fn verify_p42() -> Result<Vec<Certificate>, ProblemError> {
    p42_points()
}

pub(crate) fn verify_p45() -> Result<Vec<Certificate>, ProblemError> {
    let mut out = Vec::new();
    let search = p45_search(P45_RADIUS)?;
    let side = 2 * P45_RADIUS + 1;
    let expected_pairs = (side * side * (side * side - 1)) as u64;
    out.push(Certificate::exact(
        format!(
            "no lattice equilateral triangle in [−{0}, {0}]²",
            P45_RADIUS
        ),
        format!(
            "{} ordered pairs, {} lattice apexes",
            search.pairs, search.lattice_apexes
        ),
        search.lattice_apexes == 0 && search.pairs == expected_pairs,
    ));
    // The same search with a quarter turn must find lattice apexes.
    let square = apex_search(1, (0, 0), (2, 0));
    out.push(Certificate::exact(
        "the search accepts right isosceles triangles",
        format!(
            "{} lattice apexes, e.g. {:?}",
            square.lattice_apexes, square.example
        ),
        square.lattice_apexes > 0 && square.example.is_some(),
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p42_distances_from_the_examples() {
        let c = p42_points().unwrap();
        assert_eq!(c.len(), 16);
        assert!(c.iter().all(|c| c.pass));
        assert!(c.iter().any(|c| c.witness == "|PQ|² = 900 = 30²"));
        assert!(c.iter().any(|c| c.witness == "|PQ|² = 2304 = 48²"));
    }

    #[test]
    fn apex_of_a_horizontal_pair_is_irrational() {
        // (0,0),(2,0): apex (1, √3) = ((2 + 0√3)/2, (0 + 2√3)/2)
        assert_eq!(apex((0, 0), (2, 0), (1, 0), (0, 1)), ((2, 0), (0, 2)));
        assert_eq!(apex((2, 0), (0, 0), (1, 0), (0, 1)), ((2, 0), (0, -2)));
        let s = p45_search(1).unwrap();
        assert_eq!(s.lattice_apexes, 0);
        assert_eq!(s.pairs, 9 * 8);
    }

    #[test]
    fn quarter_turn_finds_the_unit_right_triangle() {
        // (0,0),(1,0) turned by 90° about (0,0) gives (0,1)
        assert_eq!(apex((0, 0), (1, 0), (0, 0), (2, 0)), ((0, 0), (2, 0)));
        let s = apex_search(1, (0, 0), (2, 0));
        assert_eq!(s.lattice_apexes, s.pairs);
    }

    /// Independent oracle: brute force over triples with integer squared
    /// side lengths.
    fn brute_force_equilateral(radius: i64) -> usize {
        let pts: Vec<(i64, i64)> = (-radius..=radius)
            .flat_map(|x| (-radius..=radius).map(move |y| (x, y)))
            .collect();
        let d2 = |a: (i64, i64), b: (i64, i64)| (a.0 - b.0).pow(2) + (a.1 - b.1).pow(2);
        let mut n = 0;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let s = d2(pts[i], pts[j]);
                for k in j + 1..pts.len() {
                    if d2(pts[i], pts[k]) == s && d2(pts[j], pts[k]) == s {
                        n += 1;
                    }
                }
            }
        }
        n
    }

    #[test]
    fn search_agrees_with_brute_force() {
        for r in 1..=4 {
            assert_eq!(brute_force_equilateral(r), 0);
            assert_eq!(p45_search(r).unwrap().lattice_apexes, 0);
        }
    }
}
