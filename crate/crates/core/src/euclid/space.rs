//! Double-precision 3-D points.

use std::ops::{Add, Mul, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Point3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Point3 { x, y, z }
    }

    pub fn dot(self, o: Point3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Point3) -> Point3 {
        Point3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }
}

impl Add for Point3 {
    type Output = Point3;
    fn add(self, o: Point3) -> Point3 {
        Point3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Point3 {
    type Output = Point3;
    fn sub(self, o: Point3) -> Point3 {
        Point3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Point3 {
    type Output = Point3;
    fn mul(self, k: f64) -> Point3 {
        Point3::new(self.x * k, self.y * k, self.z * k)
    }
}

/// Scale-free coplanarity measure of four points.
///
/// The triple product `(p2−p1)·((p3−p1)×(p4−p1))` equals the 4×4
/// homogeneous determinant. It is divided by `L³`, `L` being the geometric
/// mean of the six pairwise distances, so the result is invariant under
/// similarities. Zero iff the points are coplanar; 0 when all coincide.
pub fn coplanarity_defect(p1: Point3, p2: Point3, p3: Point3, p4: Point3) -> f64 {
    let det = (p2 - p1).dot((p3 - p1).cross(p4 - p1)).abs();
    let pts = [p1, p2, p3, p4];
    let mut log_sum = 0.0;
    for i in 0..4 {
        for j in i + 1..4 {
            let d = (pts[i] - pts[j]).norm();
            if d == 0.0 {
                return 0.0;
            }
            log_sum += d.ln();
        }
    }
    let scale = (log_sum / 6.0).exp();
    det / (scale * scale * scale)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_square_has_no_defect() {
        let d = coplanarity_defect(
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(1.0, 1.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
        );
        assert_eq!(d, 0.0);
    }

    #[test]
    fn simplex_has_positive_defect() {
        let d = coplanarity_defect(
            Point3::new(0.0, 0.0, 0.0),
            Point3::new(1.0, 0.0, 0.0),
            Point3::new(0.0, 1.0, 0.0),
            Point3::new(0.0, 0.0, 1.0),
        );
        assert!(d > 0.1);
    }

    #[test]
    fn invariant_under_scaling() {
        let p = [
            Point3::new(0.3, -1.0, 2.0),
            Point3::new(1.5, 0.2, 0.0),
            Point3::new(-0.7, 1.1, 0.4),
            Point3::new(0.0, 0.0, 1.0),
        ];
        let d1 = coplanarity_defect(p[0], p[1], p[2], p[3]);
        let d2 = coplanarity_defect(p[0] * 1e3, p[1] * 1e3, p[2] * 1e3, p[3] * 1e3);
        assert!((d1 - d2).abs() < 1e-12);
    }
}
