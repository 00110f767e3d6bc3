//! Exact plane geometry over constructible reals, plus a small numeric
//! 3-D helper for the sphere-tangent quadrilateral.

mod space;

pub use space::{coplanarity_defect, Point3};

use std::cmp::Ordering;
use std::fmt;

use crate::exactnum::{compare, ExactReal, NumError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeomError {
    #[error("objects do not intersect")]
    NoIntersection,
    #[error("selector does not match the number of intersection points ({found})")]
    TangentCountMismatch { found: usize },
    #[error("objects coincide")]
    CoincidentObjects,
    #[error("points coincide, no line through them")]
    CoincidentPoints,
    #[error("rays are collinear")]
    DegenerateAngle,
    #[error("length must be positive")]
    NonPositiveLength,
    #[error("point lies inside the circle")]
    PointInsideCircle,
    #[error("point lies on the circle")]
    PointOnCircle,
    #[error(transparent)]
    Numeric(#[from] NumError),
}

pub type GeomResult<T> = Result<T, GeomError>;

/// Which point of an intersection to keep. Two-point intersections are
/// ordered lexicographically by exact `(x, y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Selector {
    Only,
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rotation {
    Ccw,
    Cw,
}

#[derive(Clone, PartialEq, Eq)]
pub struct Point {
    pub x: ExactReal,
    pub y: ExactReal,
}

impl Point {
    pub fn new(x: ExactReal, y: ExactReal) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(x.into(), y.into())
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn scale(&self, k: &ExactReal) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }

    pub fn dot(&self, other: &Point) -> ExactReal {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn cross(&self, other: &Point) -> ExactReal {
        &self.x * &other.y - &self.y * &other.x
    }

    /// Lexicographic order on exact coordinates.
    pub fn lex_cmp(&self, other: &Point) -> Result<Ordering, NumError> {
        match compare(&self.x, &other.x)? {
            Ordering::Equal => compare(&self.y, &other.y),
            o => Ok(o),
        }
    }

    pub fn approx(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Line `a x + b y + c = 0`, defined up to a nonzero factor.
#[derive(Clone)]
pub struct Line {
    pub a: ExactReal,
    pub b: ExactReal,
    pub c: ExactReal,
}

impl Line {
    pub fn new(a: ExactReal, b: ExactReal, c: ExactReal) -> GeomResult<Self> {
        if a.is_zero()? && b.is_zero()? {
            return Err(GeomError::CoincidentPoints);
        }
        Ok(Line { a, b, c })
    }

    pub fn through(p: &Point, q: &Point) -> GeomResult<Self> {
        let a = &p.y - &q.y;
        let b = &q.x - &p.x;
        if a.is_zero()? && b.is_zero()? {
            return Err(GeomError::CoincidentPoints);
        }
        let c = &p.x * &q.y - &p.y * &q.x;
        Ok(Line { a, b, c })
    }

    /// Direction vector `(-b, a)`.
    pub fn direction(&self) -> Point {
        Point::new(-&self.b, self.a.clone())
    }

    pub fn normal(&self) -> Point {
        Point::new(self.a.clone(), self.b.clone())
    }

    /// `a x + b y + c`, zero exactly on the line.
    pub fn eval(&self, p: &Point) -> ExactReal {
        &self.a * &p.x + &self.b * &p.y + &self.c
    }

    pub fn contains(&self, p: &Point) -> Result<bool, NumError> {
        self.eval(p).is_zero()
    }

    pub fn is_parallel(&self, other: &Line) -> Result<bool, NumError> {
        (&self.a * &other.b - &self.b * &other.a).is_zero()
    }

    pub fn is_perpendicular(&self, other: &Line) -> Result<bool, NumError> {
        (&self.a * &other.a + &self.b * &other.b).is_zero()
    }

    /// Equality as point sets (proportional coefficients).
    pub fn same_as(&self, other: &Line) -> Result<bool, NumError> {
        Ok((&self.a * &other.b - &self.b * &other.a).is_zero()?
            && (&self.a * &other.c - &self.c * &other.a).is_zero()?
            && (&self.b * &other.c - &self.c * &other.b).is_zero()?)
    }

    /// A point of the line: an axis intercept when available.
    pub fn some_point(&self) -> Result<Point, NumError> {
        if !self.b.is_zero()? {
            Ok(Point::new(
                ExactReal::zero(),
                (-&self.c).checked_div(&self.b)?,
            ))
        } else {
            Ok(Point::new(
                (-&self.c).checked_div(&self.a)?,
                ExactReal::zero(),
            ))
        }
    }

    /// Parallel line through `p`.
    pub fn parallel_through(&self, p: &Point) -> Line {
        let c = -(&self.a * &p.x + &self.b * &p.y);
        Line {
            a: self.a.clone(),
            b: self.b.clone(),
            c,
        }
    }

    /// Perpendicular line through `p`.
    pub fn perpendicular_through(&self, p: &Point) -> Line {
        let a = -&self.b;
        let b = self.a.clone();
        let c = -(&a * &p.x + &b * &p.y);
        Line { a, b, c }
    }

    /// Squared distance from `p` to the line.
    pub fn distance_sq(&self, p: &Point) -> Result<ExactReal, NumError> {
        let v = self.eval(p);
        (&v * &v).checked_div(&(&self.a * &self.a + &self.b * &self.b))
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}x + {}y + {} = 0]", self.a, self.b, self.c)
    }
}

#[derive(Clone)]
pub struct Circle {
    pub center: Point,
    pub radius_sq: ExactReal,
}

impl Circle {
    pub fn new(center: Point, radius_sq: ExactReal) -> GeomResult<Self> {
        if radius_sq.signum()? == Ordering::Less {
            return Err(GeomError::NonPositiveLength);
        }
        Ok(Circle { center, radius_sq })
    }

    /// Circle centred at `center` through `through`.
    pub fn through(center: &Point, through: &Point) -> Self {
        Circle {
            center: center.clone(),
            radius_sq: distance_sq(center, through),
        }
    }

    /// Circle centred at `center` with radius `|pq|`.
    pub fn with_radius_of(center: &Point, p: &Point, q: &Point) -> Self {
        Circle {
            center: center.clone(),
            radius_sq: distance_sq(p, q),
        }
    }

    /// `(x-h)^2 + (y-k)^2 - r^2`, zero exactly on the circle.
    pub fn eval(&self, p: &Point) -> ExactReal {
        distance_sq(&self.center, p) - &self.radius_sq
    }

    pub fn contains(&self, p: &Point) -> Result<bool, NumError> {
        self.eval(p).is_zero()
    }

    pub fn same_as(&self, other: &Circle) -> Result<bool, NumError> {
        Ok(self.center == other.center
            && compare(&self.radius_sq, &other.radius_sq)? == Ordering::Equal)
    }
}

impl fmt::Debug for Circle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "circle(center {:?}, r² {})", self.center, self.radius_sq)
    }
}

/// A named object of a construction.
#[derive(Debug, Clone)]
pub enum GeomObject {
    Point(Point),
    Line(Line),
    Circle(Circle),
}

impl GeomObject {
    pub fn kind(&self) -> &'static str {
        match self {
            GeomObject::Point(_) => "point",
            GeomObject::Line(_) => "line",
            GeomObject::Circle(_) => "circle",
        }
    }

    /// Exact equality of the underlying objects.
    pub fn exactly_equals(&self, other: &GeomObject) -> Result<bool, NumError> {
        Ok(match (self, other) {
            (GeomObject::Point(p), GeomObject::Point(q)) => {
                compare(&p.x, &q.x)? == Ordering::Equal && compare(&p.y, &q.y)? == Ordering::Equal
            }
            (GeomObject::Line(l), GeomObject::Line(m)) => l.same_as(m)?,
            (GeomObject::Circle(c), GeomObject::Circle(d)) => c.same_as(d)?,
            _ => false,
        })
    }
}

/// Something a point can be intersected with.
#[derive(Debug, Clone, Copy)]
pub enum Curve<'a> {
    Line(&'a Line),
    Circle(&'a Circle),
}

pub fn distance_sq(p: &Point, q: &Point) -> ExactReal {
    let dx = &p.x - &q.x;
    let dy = &p.y - &q.y;
    &dx * &dx + &dy * &dy
}

/// All intersection points, sorted lexicographically.
pub fn intersection_points(o1: Curve<'_>, o2: Curve<'_>) -> GeomResult<Vec<Point>> {
    match (o1, o2) {
        (Curve::Line(l), Curve::Line(m)) => line_line(l, m).map(|p| vec![p]),
        (Curve::Line(l), Curve::Circle(c)) | (Curve::Circle(c), Curve::Line(l)) => {
            line_circle(l, c)
        }
        (Curve::Circle(c), Curve::Circle(d)) => circle_circle(c, d),
    }
}

/// Intersection point picked by `selector`.
pub fn intersect(o1: Curve<'_>, o2: Curve<'_>, selector: Selector) -> GeomResult<Point> {
    let mut points = intersection_points(o1, o2)?;
    let found = points.len();
    match (selector, found) {
        (Selector::Only, 1) | (Selector::First, 1) => Ok(points.remove(0)),
        (Selector::First, 2) => Ok(points.remove(0)),
        (Selector::Second, 2) => Ok(points.remove(1)),
        _ => Err(GeomError::TangentCountMismatch { found }),
    }
}

fn line_line(l: &Line, m: &Line) -> GeomResult<Point> {
    let det = &l.a * &m.b - &m.a * &l.b;
    if det.is_zero()? {
        return Err(if l.same_as(m)? {
            GeomError::CoincidentObjects
        } else {
            GeomError::NoIntersection
        });
    }
    let x = (&l.b * &m.c - &m.b * &l.c).checked_div(&det)?;
    let y = (&l.c * &m.a - &m.c * &l.a).checked_div(&det)?;
    Ok(Point::new(x, y))
}

fn sorted_pair(p: Point, q: Point) -> GeomResult<Vec<Point>> {
    Ok(match p.lex_cmp(&q)? {
        Ordering::Greater => vec![q, p],
        _ => vec![p, q],
    })
}

fn line_circle(l: &Line, c: &Circle) -> GeomResult<Vec<Point>> {
    let n2 = &l.a * &l.a + &l.b * &l.b;
    let s = l.eval(&c.center);
    let t = s.checked_div(&n2)?;
    let foot = Point::new(&c.center.x - &l.a * &t, &c.center.y - &l.b * &t);
    // r^2 - s^2/n^2, scaled by 1/n^2 to get the squared step along (-b, a)
    let disc = (&c.radius_sq - &s * &t).checked_div(&n2)?;
    match disc.signum()? {
        Ordering::Less => Err(GeomError::NoIntersection),
        Ordering::Equal => Ok(vec![foot]),
        Ordering::Greater => {
            let k = disc.sqrt()?;
            let step = Point::new(-&l.b * &k, &l.a * &k);
            sorted_pair(foot.add(&step), foot.sub(&step))
        }
    }
}

fn circle_circle(c: &Circle, d: &Circle) -> GeomResult<Vec<Point>> {
    let dx = &d.center.x - &c.center.x;
    let dy = &d.center.y - &c.center.y;
    if dx.is_zero()? && dy.is_zero()? {
        return Err(if compare(&c.radius_sq, &d.radius_sq)? == Ordering::Equal {
            GeomError::CoincidentObjects
        } else {
            GeomError::NoIntersection
        });
    }
    // radical axis: difference of the two circle equations
    let two = ExactReal::from_integer(2);
    let norm_c = c.center.dot(&c.center) - &c.radius_sq;
    let norm_d = d.center.dot(&d.center) - &d.radius_sq;
    let axis = Line {
        a: &two * &dx,
        b: &two * &dy,
        c: norm_c - norm_d,
    };
    line_circle(&axis, c)
}

/// Image of `p` under a ±60° rotation about `center`.
pub fn rotate60(p: &Point, center: &Point, direction: Rotation) -> Point {
    let half = ExactReal::from_ratio(1, 2);
    let s = ExactReal::from_integer(3).sqrt().expect("3 > 0") * &half;
    let s = match direction {
        Rotation::Ccw => s,
        Rotation::Cw => -s,
    };
    let d = p.sub(center);
    let x = &d.x * &half - &d.y * &s;
    let y = &d.x * &s + &d.y * &half;
    center.add(&Point::new(x, y))
}

/// Orthogonal projection of `p` onto `l`.
pub fn foot_of_perpendicular(p: &Point, l: &Line) -> GeomResult<Point> {
    let n2 = &l.a * &l.a + &l.b * &l.b;
    let t = l.eval(p).checked_div(&n2)?;
    Ok(Point::new(&p.x - &l.a * &t, &p.y - &l.b * &t))
}

/// Circle inscribed in the angle at `vertex` (rays along `ray1_dir` and
/// `ray2_dir`) touching the rays at distance `tangent_len` from the vertex.
/// Returns the circle and the tangency points on ray 1 and ray 2.
pub fn incircle_tangent_points(
    vertex: &Point,
    ray1_dir: &Point,
    ray2_dir: &Point,
    tangent_len: &ExactReal,
) -> GeomResult<(Circle, Point, Point)> {
    if ray1_dir.cross(ray2_dir).is_zero()? {
        return Err(GeomError::DegenerateAngle);
    }
    if tangent_len.signum()? != Ordering::Greater {
        return Err(GeomError::NonPositiveLength);
    }
    let unit = |d: &Point| -> GeomResult<Point> {
        let len = d.dot(d).sqrt()?;
        Ok(Point::new(d.x.checked_div(&len)?, d.y.checked_div(&len)?))
    };
    let a = vertex.add(&unit(ray1_dir)?.scale(tangent_len));
    let b = vertex.add(&unit(ray2_dir)?.scale(tangent_len));
    let ray1 = Line::through(vertex, &a)?;
    let ray2 = Line::through(vertex, &b)?;
    let center = line_line(
        &ray1.perpendicular_through(&a),
        &ray2.perpendicular_through(&b),
    )?;
    let circle = Circle::through(&center, &a);
    Ok((circle, a, b))
}

/// Tangent from `p` to `c`: the tangent line and its tangency point.
/// Tangency points are ordered lexicographically for the selector.
pub fn tangent_line_from(p: &Point, c: &Circle, selector: Selector) -> GeomResult<(Line, Point)> {
    let d2 = distance_sq(p, &c.center);
    match compare(&d2, &c.radius_sq)? {
        Ordering::Less => return Err(GeomError::PointInsideCircle),
        Ordering::Equal => return Err(GeomError::PointOnCircle),
        Ordering::Greater => {}
    }
    // polar of p: (p - o)·(X - o) = r^2
    let v = p.sub(&c.center);
    let polar = Line {
        a: v.x.clone(),
        b: v.y.clone(),
        c: -(v.dot(&c.center) + &c.radius_sq),
    };
    let selector = match selector {
        Selector::Only => return Err(GeomError::TangentCountMismatch { found: 2 }),
        s => s,
    };
    let t = intersect(Curve::Line(&polar), Curve::Circle(c), selector)?;
    Ok((Line::through(p, &t)?, t))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn line(a: i64, b: i64, c: i64) -> Line {
        Line::new(a.into(), b.into(), c.into()).unwrap()
    }

    #[test]
    fn axes_meet_at_origin() {
        let p = intersect(
            Curve::Line(&line(0, 1, 0)),
            Curve::Line(&line(1, 0, 0)),
            Selector::Only,
        )
        .unwrap();
        assert_eq!(p, pt(0, 0));
    }

    #[test]
    fn unit_circle_and_x_axis() {
        let c = Circle::new(pt(0, 0), 1.into()).unwrap();
        let l = line(0, 1, 0);
        assert_eq!(
            intersect(Curve::Circle(&c), Curve::Line(&l), Selector::First).unwrap(),
            pt(-1, 0)
        );
        assert_eq!(
            intersect(Curve::Circle(&c), Curve::Line(&l), Selector::Second).unwrap(),
            pt(1, 0)
        );
        assert!(matches!(
            intersect(Curve::Circle(&c), Curve::Line(&l), Selector::Only),
            Err(GeomError::TangentCountMismatch { found: 2 })
        ));
    }

    #[test]
    fn touching_circles() {
        let c = Circle::new(pt(0, 0), 25.into()).unwrap();
        let d = Circle::new(pt(50, 0), 25.into()).unwrap();
        // radii 5 and 5 with centres 50 apart do not meet
        assert_eq!(
            intersect(Curve::Circle(&c), Curve::Circle(&d), Selector::Only).unwrap_err(),
            GeomError::NoIntersection
        );
        // the same centres with radius 25 touch at (25, 0)
        let c625 = Circle::new(pt(0, 0), 625.into()).unwrap();
        let d625 = Circle::new(pt(50, 0), 625.into()).unwrap();
        assert_eq!(
            intersect(Curve::Circle(&c625), Curve::Circle(&d625), Selector::Only).unwrap(),
            pt(25, 0)
        );
        let d = Circle::new(pt(10, 0), 25.into()).unwrap();
        assert_eq!(
            intersect(Curve::Circle(&c), Curve::Circle(&d), Selector::Only).unwrap(),
            pt(5, 0)
        );
        assert!(matches!(
            intersect(Curve::Circle(&c), Curve::Circle(&d), Selector::Second),
            Err(GeomError::TangentCountMismatch { found: 1 })
        ));
    }

    #[test]
    fn coincident_and_parallel_lines() {
        assert_eq!(
            intersect(
                Curve::Line(&line(1, 1, 1)),
                Curve::Line(&line(2, 2, 2)),
                Selector::Only
            )
            .unwrap_err(),
            GeomError::CoincidentObjects
        );
        assert_eq!(
            intersect(
                Curve::Line(&line(1, 1, 1)),
                Curve::Line(&line(1, 1, 2)),
                Selector::Only
            )
            .unwrap_err(),
            GeomError::NoIntersection
        );
    }

    #[test]
    fn distances() {
        assert_eq!(
            distance_sq(&pt(25, 0), &pt(7, 24)),
            ExactReal::from_integer(900)
        );
        assert_eq!(distance_sq(&pt(3, 4), &pt(3, 4)), ExactReal::zero());
        assert_eq!(
            distance_sq(&pt(0, 0), &pt(3, 4)),
            ExactReal::from_integer(25)
        );
    }

    #[test]
    fn rotation_by_sixty_degrees() {
        let r = rotate60(&pt(1, 0), &pt(0, 0), Rotation::Ccw);
        let s3 = ExactReal::from_integer(3).sqrt().unwrap();
        assert_eq!(
            r,
            Point::new(
                ExactReal::from_ratio(1, 2),
                s3 * ExactReal::from_ratio(1, 2)
            )
        );
        let c = pt(2, 5);
        assert_eq!(rotate60(&c, &c, Rotation::Ccw), c);
        let start = Point::new(ExactReal::from_ratio(17, 3), (-2).into());
        let centre = Point::new(ExactReal::from_ratio(1, 2), 7.into());
        let mut p = start.clone();
        for _ in 0..6 {
            p = rotate60(&p, &centre, Rotation::Ccw);
        }
        assert_eq!(p, start);
    }

    #[test]
    fn feet_of_perpendiculars() {
        assert_eq!(
            foot_of_perpendicular(&pt(3, 4), &line(0, 1, 0)).unwrap(),
            pt(3, 0)
        );
        assert_eq!(
            foot_of_perpendicular(&pt(3, 0), &line(0, 1, 0)).unwrap(),
            pt(3, 0)
        );
        assert_eq!(
            foot_of_perpendicular(&pt(1, 1), &line(1, 1, 0)).unwrap(),
            pt(0, 0)
        );
    }

    #[test]
    fn inscribed_circle_in_right_angle() {
        let (c, a, b) =
            incircle_tangent_points(&pt(0, 0), &pt(1, 0), &pt(0, 1), &1.into()).unwrap();
        assert_eq!(c.center, pt(1, 1));
        assert_eq!(c.radius_sq, ExactReal::one());
        assert_eq!((a, b), (pt(1, 0), pt(0, 1)));
        let (c, _, _) =
            incircle_tangent_points(&pt(0, 0), &pt(1, 0), &pt(0, 1), &2.into()).unwrap();
        assert_eq!(c.center, pt(2, 2));
        assert_eq!(
            incircle_tangent_points(&pt(0, 0), &pt(1, 0), &pt(2, 0), &1.into()).unwrap_err(),
            GeomError::DegenerateAngle
        );
    }

    #[test]
    fn inscribed_circle_in_sixty_degree_angle() {
        let s3 = ExactReal::from_integer(3).sqrt().unwrap();
        let dir2 = Point::new(
            ExactReal::from_ratio(1, 2),
            &s3 * &ExactReal::from_ratio(1, 2),
        );
        let (c, a, _) = incircle_tangent_points(&pt(0, 0), &pt(1, 0), &dir2, &1.into()).unwrap();
        assert_eq!(c.radius_sq, ExactReal::from_ratio(1, 3));
        let ray = Line::through(&pt(0, 0), &a).unwrap();
        assert_eq!(ray.distance_sq(&c.center).unwrap(), c.radius_sq);
    }

    #[test]
    fn tangents_from_external_point() {
        let unit = Circle::new(pt(0, 0), 1.into()).unwrap();
        let (l, t) = tangent_line_from(&pt(2, 0), &unit, Selector::First).unwrap();
        let s3 = ExactReal::from_integer(3).sqrt().unwrap();
        assert_eq!(
            t,
            Point::new(
                ExactReal::from_ratio(1, 2),
                -(s3 * ExactReal::from_ratio(1, 2))
            )
        );
        assert_eq!(l.distance_sq(&unit.center).unwrap(), unit.radius_sq);

        let (_, t1) = tangent_line_from(&pt(0, 2), &unit, Selector::First).unwrap();
        let (_, t2) = tangent_line_from(&pt(0, 2), &unit, Selector::Second).unwrap();
        assert_eq!(t1.x, -t2.x.clone());
        assert_eq!(t1.y, t2.y);

        assert_eq!(
            tangent_line_from(&pt(1, 0), &unit, Selector::First).unwrap_err(),
            GeomError::PointOnCircle
        );
        assert_eq!(
            tangent_line_from(&pt(0, 0), &unit, Selector::First).unwrap_err(),
            GeomError::PointInsideCircle
        );
    }
}
