//! Space quadrilaterals circumscribed about the unit sphere.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{
    rng_for, sci, Certificate, ProblemError, ProblemId, GEOMETRY_TOL, PERTURBATION_FLOOR,
    SOLVER_TOL,
};
use crate::euclid::{coplanarity_defect, Point3};

const MAX_ITERATIONS: usize = 200;
const MAX_ATTEMPTS: u32 = 16;
/// Vertices must be at least this far from coplanar for an instance to count.
const MIN_VERTEX_DEFECT: f64 = 1e-2;

#[derive(Debug, Clone, PartialEq)]
pub struct P31Report {
    pub seed: u64,
    pub attempts: u32,
    pub vertices: [Point3; 4],
    pub tangent_lengths: [f64; 4],
    pub tangency: [Point3; 4],
    /// Largest violation of `|Vᵢ|² = 1 + tᵢ²` and `|VᵢVᵢ₊₁| = tᵢ + tᵢ₊₁`.
    pub residual: f64,
    pub vertex_defect: f64,
    pub defect: f64,
    /// Distance of the mass centroid from the diagonals `T₀T₂` and `T₁T₃`.
    pub centroid_offsets: [f64; 2],
    pub perturbed_defect: f64,
}

fn p3(v: &DVector<f64>, i: usize) -> Point3 {
    Point3 {
        x: v[3 * i],
        y: v[3 * i + 1],
        z: v[3 * i + 2],
    }
}

/// Constraint residuals: four norms then four edge lengths.
fn residuals(v: &DVector<f64>, t: &[f64; 4]) -> DVector<f64> {
    let mut r = DVector::zeros(8);
    for i in 0..4 {
        let p = p3(v, i);
        r[i] = p.dot(p) - (1.0 + t[i] * t[i]);
        let q = p3(v, (i + 1) % 4);
        let d = p - q;
        r[4 + i] = d.dot(d) - (t[i] + t[(i + 1) % 4]).powi(2);
    }
    r
}

fn jacobian(v: &DVector<f64>) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(8, 12);
    for i in 0..4 {
        let k = (i + 1) % 4;
        for c in 0..3 {
            j[(i, 3 * i + c)] = 2.0 * v[3 * i + c];
            let d = v[3 * i + c] - v[3 * k + c];
            j[(4 + i, 3 * i + c)] = 2.0 * d;
            j[(4 + i, 3 * k + c)] = -2.0 * d;
        }
    }
    j
}

/// Damped Gauss-Newton with minimum-norm steps; the system is
/// underdetermined (8 equations, 12 unknowns).
fn solve(mut v: DVector<f64>, t: &[f64; 4]) -> Option<DVector<f64>> {
    let mut r = residuals(&v, t);
    for _ in 0..MAX_ITERATIONS {
        let norm = r.amax();
        if norm < SOLVER_TOL * 1e-2 {
            return Some(v);
        }
        let j = jacobian(&v);
        let jjt = &j * j.transpose();
        let y = jjt.lu().solve(&r)?;
        let step = j.transpose() * y;
        let mut lambda = 1.0;
        loop {
            let trial = &v - &step * lambda;
            let rt = residuals(&trial, t);
            if rt.amax() < norm || lambda < 1e-6 {
                v = trial;
                r = rt;
                break;
            }
            lambda *= 0.5;
        }
    }
    (r.amax() < SOLVER_TOL).then_some(v)
}

fn tangency_points(v: &[Point3; 4], t: &[f64; 4]) -> [Point3; 4] {
    std::array::from_fn(|i| {
        let k = (i + 1) % 4;
        v[i] + (v[k] - v[i]) * (t[i] / (t[i] + t[k]))
    })
}

/// Distance from `p` to the line through `a` and `b`.
fn line_distance(p: Point3, a: Point3, b: Point3) -> f64 {
    let d = b - a;
    (p - a).cross(d).norm() / d.norm()
}

/// Moves `p` on the unit sphere by `angle` toward `dir` (projected to the
/// tangent plane at `p`).
fn slide_on_sphere(p: Point3, dir: Point3, angle: f64) -> Point3 {
    let tangent = dir - p * p.dot(dir);
    let u = tangent * (1.0 / tangent.norm());
    p * angle.cos() + u * angle.sin()
}

fn attempt(rng: &mut ChaCha8Rng) -> Option<([Point3; 4], [f64; 4], f64)> {
    let t: [f64; 4] = std::array::from_fn(|_| rng.gen_range(0.5..2.0));
    // start near a skew quadrilateral around the sphere
    let mut v0 = DVector::zeros(12);
    for i in 0..4 {
        let phi = std::f64::consts::FRAC_PI_2 * i as f64 + rng.gen_range(-0.3..0.3);
        let z = if i % 2 == 0 { 0.6 } else { -0.6 } + rng.gen_range(-0.2..0.2);
        let r = (1.0 + t[i] * t[i]).sqrt();
        let dir = Point3 {
            x: phi.cos(),
            y: phi.sin(),
            z,
        };
        let p = dir * (r / dir.norm());
        v0[3 * i] = p.x;
        v0[3 * i + 1] = p.y;
        v0[3 * i + 2] = p.z;
    }
    let v = solve(v0, &t)?;
    let verts: [Point3; 4] = std::array::from_fn(|i| p3(&v, i));
    if !verts.iter().all(|p| p.is_finite()) {
        return None;
    }
    let residual = residuals(&v, &t).amax();
    Some((verts, t, residual))
}

/// Generates a non-planar tangent quadrilateral and checks the tangency
/// points and the centroid of the masses `1/tᵢ`.
pub fn p31_instance(seed: u64) -> Result<P31Report, ProblemError> {
    let mut rng = rng_for(ProblemId::P31, seed);
    for attempts in 1..=MAX_ATTEMPTS {
        let Some((vertices, t, residual)) = attempt(&mut rng) else {
            continue;
        };
        let vertex_defect = coplanarity_defect(vertices[0], vertices[1], vertices[2], vertices[3]);
        if vertex_defect < MIN_VERTEX_DEFECT {
            continue;
        }
        return Ok(analyze(seed, attempts, vertices, t, residual));
    }
    Err(ProblemError::GenerationFailed {
        seed,
        attempts: MAX_ATTEMPTS,
    })
}

fn analyze(
    seed: u64,
    attempts: u32,
    vertices: [Point3; 4],
    t: [f64; 4],
    residual: f64,
) -> P31Report {
    let vertex_defect = coplanarity_defect(vertices[0], vertices[1], vertices[2], vertices[3]);
    let tangency = tangency_points(&vertices, &t);
    let defect = coplanarity_defect(tangency[0], tangency[1], tangency[2], tangency[3]);
    let mass: f64 = t.iter().map(|ti| 1.0 / ti).sum();
    let centroid = vertices
        .iter()
        .zip(&t)
        .fold(Point3::default(), |acc, (v, ti)| acc + *v * (1.0 / ti))
        * (1.0 / mass);
    let centroid_offsets = [
        line_distance(centroid, tangency[0], tangency[2]),
        line_distance(centroid, tangency[1], tangency[3]),
    ];
    // slide T₀ out of the plane of the other three
    let normal = (tangency[2] - tangency[1]).cross(tangency[3] - tangency[1]);
    let moved = slide_on_sphere(tangency[0], normal, 1e-3);
    let perturbed_defect = coplanarity_defect(moved, tangency[1], tangency[2], tangency[3]);
    P31Report {
        seed,
        attempts,
        vertices,
        tangent_lengths: t,
        tangency,
        residual,
        vertex_defect,
        defect,
        centroid_offsets,
        perturbed_defect,
    }
}

/// The rhombus with vertices `(±a, 0, 0)`, `(0, ±b, 0)` circumscribing the
/// equator, where `b = a/√(a² − 1)` so that the inradius `ab/√(a² + b²)` is 1.
pub(crate) fn planar_rhombus(a: f64) -> P31Report {
    let b = a / (a * a - 1.0).sqrt();
    let vertices = [
        Point3 {
            x: a,
            y: 0.0,
            z: 0.0,
        },
        Point3 {
            x: 0.0,
            y: b,
            z: 0.0,
        },
        Point3 {
            x: -a,
            y: 0.0,
            z: 0.0,
        },
        Point3 {
            x: 0.0,
            y: -b,
            z: 0.0,
        },
    ];
    let (ta, tb) = ((a * a - 1.0).sqrt(), (b * b - 1.0).sqrt());
    let t = [ta, tb, ta, tb];
    let v = DVector::from_iterator(12, vertices.iter().flat_map(|p| [p.x, p.y, p.z]));
    let residual = residuals(&v, &t).amax();
    analyze(0, 1, vertices, t, residual)
}

pub(crate) const P31_SEEDS: u64 = 10;

pub(crate) fn verify_p31(seed: u64) -> Result<Vec<Certificate>, ProblemError> {
    let mut out = Vec::new();
    let mut worst_residual: f64 = 0.0;
    let mut worst_defect: f64 = 0.0;
    let mut worst_centroid: f64 = 0.0;
    let mut least_perturbed = f64::INFINITY;
    let mut least_vertex_defect = f64::INFINITY;
    for k in 0..P31_SEEDS {
        let r = p31_instance(seed.wrapping_mul(P31_SEEDS).wrapping_add(k))?;
        worst_residual = worst_residual.max(r.residual);
        worst_defect = worst_defect.max(r.defect);
        worst_centroid = worst_centroid.max(r.centroid_offsets[0].max(r.centroid_offsets[1]));
        least_perturbed = least_perturbed.min(r.perturbed_defect);
        least_vertex_defect = least_vertex_defect.min(r.vertex_defect);
    }
    out.push(Certificate::numeric(
        format!("{P31_SEEDS} generated quadrilaterals are tangent to the sphere"),
        format!("max residual {}", sci(worst_residual)),
        worst_residual < SOLVER_TOL,
    ));
    out.push(Certificate::numeric(
        "the quadrilaterals are not planar",
        format!("min vertex defect {}", sci(least_vertex_defect)),
        least_vertex_defect >= MIN_VERTEX_DEFECT,
    ));
    out.push(Certificate::numeric(
        "the four tangency points are coplanar",
        format!("max defect {}", sci(worst_defect)),
        worst_defect < GEOMETRY_TOL,
    ));
    out.push(Certificate::numeric(
        "the centroid of masses 1/tᵢ lies on both diagonals of the tangency quadrilateral",
        format!("max distance {}", sci(worst_centroid)),
        worst_centroid < GEOMETRY_TOL,
    ));
    out.push(Certificate::numeric(
        "moving one tangency point by 1e-3 along the sphere breaks coplanarity",
        format!("min perturbed defect {}", sci(least_perturbed)),
        least_perturbed > PERTURBATION_FLOOR,
    ));
    let flat = planar_rhombus(2.0);
    out.push(Certificate::numeric(
        "planar rhombus around the equator",
        format!(
            "residual {}, defect {}",
            sci(flat.residual),
            sci(flat.defect)
        ),
        flat.residual < SOLVER_TOL && flat.defect == 0.0,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rhombus_is_tangent_and_flat() {
        let r = planar_rhombus(2.0);
        assert!(r.residual < 1e-12);
        assert_eq!(r.defect, 0.0);
        for t in r.tangency {
            assert!((t.norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn seed_seven_is_coplanar() {
        let r = p31_instance(7).unwrap();
        assert!(r.residual < SOLVER_TOL);
        assert!(r.vertex_defect > MIN_VERTEX_DEFECT);
        assert!(r.defect < GEOMETRY_TOL, "{}", r.defect);
        assert!(r.perturbed_defect > PERTURBATION_FLOOR);
    }

    #[test]
    fn tangency_points_touch_the_sphere_and_edges_are_tangent() {
        let r = p31_instance(3).unwrap();
        for i in 0..4 {
            let t = r.tangency[i];
            assert!((t.norm() - 1.0).abs() < 1e-9);
            // the radius to the tangency point is orthogonal to the edge
            let edge = r.vertices[(i + 1) % 4] - r.vertices[i];
            assert!(t.dot(edge).abs() < 1e-9);
        }
    }

    #[test]
    fn determinant_oracle_agrees() {
        // independent check with nalgebra's 3×3 determinant
        let r = p31_instance(7).unwrap();
        let [a, b, c, d] = r.tangency;
        let m = nalgebra::Matrix3::new(
            b.x - a.x,
            b.y - a.y,
            b.z - a.z,
            c.x - a.x,
            c.y - a.y,
            c.z - a.z,
            d.x - a.x,
            d.y - a.y,
            d.z - a.z,
        );
        assert!(m.determinant().abs() < 1e-9);
    }

    #[test]
    fn verifier_passes() {
        assert!(verify_p31(0).unwrap().iter().all(|c| c.pass));
    }
}
