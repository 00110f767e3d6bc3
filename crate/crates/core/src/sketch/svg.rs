//! SVG 1.1 rendering of traces.
//!
//! Coordinates are approximated from refined enclosures, mapped to an
//! 800-pixel-wide canvas with the y axis pointing up, and printed with 12
//! significant digits, so output bytes depend only on the trace.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::exec::{Trace, Value};
use crate::euclid::{Circle, GeomObject, Line, Point};
use crate::exactnum::{format_significant, ExactReal, NumError};

const CANVAS_WIDTH: i64 = 800;
const DIGITS: u32 = 12;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RenderError {
    #[error("nothing to draw")]
    EmptyTrace,
    #[error("viewport has zero area")]
    DegenerateViewport,
    #[error(transparent)]
    Numeric(#[from] NumError),
}

/// Axis-aligned drawing window in model coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct Viewport {
    pub min_x: BigRational,
    pub min_y: BigRational,
    pub max_x: BigRational,
    pub max_y: BigRational,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn approx(x: &ExactReal) -> Result<BigRational, NumError> {
    x.approximate(&BigRational::new(BigInt::one(), BigInt::one() << 80usize))
}

/// Rounds to a multiple of `2^-20` so viewports have short decimal forms.
fn snap(q: &BigRational, up: bool) -> BigRational {
    let scale = BigInt::one() << 20usize;
    let scaled = q * BigRational::from_integer(scale.clone());
    let n = if up { scaled.ceil() } else { scaled.floor() };
    n / BigRational::from_integer(scale)
}

impl Viewport {
    pub fn new(
        min_x: BigRational,
        min_y: BigRational,
        max_x: BigRational,
        max_y: BigRational,
    ) -> Result<Self, RenderError> {
        if max_x <= min_x || max_y <= min_y {
            return Err(RenderError::DegenerateViewport);
        }
        Ok(Viewport {
            min_x,
            min_y,
            max_x,
            max_y,
        })
    }

    /// Bounding box of every drawn point and circle centre, with a margin
    /// of a sixth of the larger side.
    pub fn fit(trace: &Trace) -> Result<Self, RenderError> {
        let mut pts: Vec<(BigRational, BigRational)> = Vec::new();
        let mut add = |p: &Point| -> Result<(), NumError> {
            pts.push((approx(&p.x)?, approx(&p.y)?));
            Ok(())
        };
        for obj in drawn_objects(trace) {
            match obj {
                GeomObject::Point(p) => add(p)?,
                GeomObject::Circle(c) => add(&c.center)?,
                GeomObject::Line(_) => {}
            }
        }
        for e in &trace.entries {
            if let Some((p, q)) = &e.segment {
                add(p)?;
                add(q)?;
            }
        }
        if pts.is_empty() {
            if trace.entries.is_empty() && trace.inputs.is_empty() {
                return Err(RenderError::EmptyTrace);
            }
            return Viewport::new(ratio(-10, 1), ratio(-10, 1), ratio(10, 1), ratio(10, 1));
        }
        let min_x = pts.iter().map(|p| &p.0).min().expect("nonempty").clone();
        let max_x = pts.iter().map(|p| &p.0).max().expect("nonempty").clone();
        let min_y = pts.iter().map(|p| &p.1).min().expect("nonempty").clone();
        let max_y = pts.iter().map(|p| &p.1).max().expect("nonempty").clone();
        let w = &max_x - &min_x;
        let h = &max_y - &min_y;
        let side = if w > h { w } else { h };
        let margin = if side.is_zero() {
            BigRational::one()
        } else {
            side / BigRational::from_integer(6.into())
        };
        Viewport::new(
            snap(&(min_x - &margin), false),
            snap(&(min_y - &margin), false),
            snap(&(max_x + &margin), true),
            snap(&(max_y + &margin), true),
        )
    }

    fn scale(&self) -> BigRational {
        BigRational::from_integer(CANVAS_WIDTH.into()) / (&self.max_x - &self.min_x)
    }

    fn height(&self) -> BigRational {
        (&self.max_y - &self.min_y) * self.scale()
    }

    fn to_screen(&self, x: &BigRational, y: &BigRational) -> (String, String) {
        let s = self.scale();
        (
            format_significant(&((x - &self.min_x) * &s), DIGITS),
            format_significant(&((&self.max_y - y) * &s), DIGITS),
        )
    }

    /// Liang–Barsky clip of `p0 + t·d` to the window.
    fn clip(
        &self,
        p0: &(BigRational, BigRational),
        d: &(BigRational, BigRational),
    ) -> Option<[(BigRational, BigRational); 2]> {
        let mut t0: Option<BigRational> = None;
        let mut t1: Option<BigRational> = None;
        let checks = [
            (-&d.0, &p0.0 - &self.min_x),
            (d.0.clone(), &self.max_x - &p0.0),
            (-&d.1, &p0.1 - &self.min_y),
            (d.1.clone(), &self.max_y - &p0.1),
        ];
        for (p, q) in checks {
            if p.is_zero() {
                if q.is_negative() {
                    return None;
                }
                continue;
            }
            let r = q / &p;
            if p.is_negative() {
                if t0.as_ref().is_none_or(|t| &r > t) {
                    t0 = Some(r);
                }
            } else if t1.as_ref().is_none_or(|t| &r < t) {
                t1 = Some(r);
            }
        }
        let (t0, t1) = (t0?, t1?);
        if t0 >= t1 {
            return None;
        }
        let at = |t: &BigRational| (&p0.0 + &d.0 * t, &p0.1 + &d.1 * t);
        Some([at(&t0), at(&t1)])
    }
}

fn drawn_objects(trace: &Trace) -> impl Iterator<Item = &GeomObject> {
    trace
        .inputs
        .iter()
        .filter_map(|(_, v)| match v {
            Value::Object(o) => Some(o),
            _ => None,
        })
        .chain(trace.entries.iter().map(|e| &e.object))
}

struct Canvas<'a> {
    view: &'a Viewport,
    body: String,
}

impl Canvas<'_> {
    fn line(&mut self, l: &Line, class: &str) -> Result<(), NumError> {
        let (a, b, c) = (approx(&l.a)?, approx(&l.b)?, approx(&l.c)?);
        let p0 = if b.abs() >= a.abs() {
            (BigRational::zero(), -&c / &b)
        } else {
            (-&c / &a, BigRational::zero())
        };
        let d = (-b, a);
        if let Some([p, q]) = self.view.clip(&p0, &d) {
            self.segment_between(&p, &q, class);
        }
        Ok(())
    }

    fn segment_between(
        &mut self,
        p: &(BigRational, BigRational),
        q: &(BigRational, BigRational),
        class: &str,
    ) {
        let (x1, y1) = self.view.to_screen(&p.0, &p.1);
        let (x2, y2) = self.view.to_screen(&q.0, &q.1);
        let _ = writeln!(
            self.body,
            r#"  <line class="{class}" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#
        );
    }

    fn segment(&mut self, p: &Point, q: &Point, class: &str) -> Result<(), NumError> {
        let p = (approx(&p.x)?, approx(&p.y)?);
        let q = (approx(&q.x)?, approx(&q.y)?);
        self.segment_between(&p, &q, class);
        Ok(())
    }

    fn circle(&mut self, c: &Circle, class: &str) -> Result<(), NumError> {
        let (cx, cy) = self
            .view
            .to_screen(&approx(&c.center.x)?, &approx(&c.center.y)?);
        let r = approx(&c.radius_sq.sqrt()?)? * self.view.scale();
        let r = format_significant(&r, DIGITS);
        let _ = writeln!(
            self.body,
            r#"  <circle class="{class}" cx="{cx}" cy="{cy}" r="{r}"/>"#
        );
        Ok(())
    }

    fn point(&mut self, p: &Point, label: Option<&str>, class: &str) -> Result<(), NumError> {
        let (x, y) = (approx(&p.x)?, approx(&p.y)?);
        let (sx, sy) = self.view.to_screen(&x, &y);
        let radius = if class == "dot" { 3 } else { 2 };
        let _ = writeln!(
            self.body,
            r#"  <circle class="{class}" cx="{sx}" cy="{sy}" r="{radius}"/>"#
        );
        if let Some(label) = label {
            let s = self.view.scale();
            let lx = format_significant(&((&x - &self.view.min_x) * &s + ratio(6, 1)), DIGITS);
            let ly = format_significant(&((&self.view.max_y - &y) * &s - ratio(6, 1)), DIGITS);
            let _ = writeln!(
                self.body,
                r#"  <text class="label" x="{lx}" y="{ly}">{}</text>"#,
                escape(label)
            );
        }
        Ok(())
    }

    fn object(&mut self, obj: &GeomObject, label: Option<&str>, aux: bool) -> Result<(), NumError> {
        match obj {
            GeomObject::Point(p) => self.point(p, label, if aux { "aux-dot" } else { "dot" }),
            GeomObject::Line(l) => self.line(l, if aux { "aux" } else { "line" }),
            GeomObject::Circle(c) => self.circle(c, if aux { "aux" } else { "circle" }),
        }
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Input name, object and segment endpoints, if any.
type Named<'a> = (&'a str, &'a GeomObject, Option<&'a (Point, Point)>);

/// Renders `trace` into a standalone SVG 1.1 document.
///
/// Auxiliary steps are drawn first, then circles, lines and segments,
/// then labelled points on top.
pub fn render_svg(trace: &Trace, viewport: &Viewport) -> Result<String, RenderError> {
    if trace.entries.is_empty() && trace.inputs.is_empty() {
        return Err(RenderError::EmptyTrace);
    }
    if viewport.max_x <= viewport.min_x || viewport.max_y <= viewport.min_y {
        return Err(RenderError::DegenerateViewport);
    }
    let mut canvas = Canvas {
        view: viewport,
        body: String::new(),
    };
    for e in &trace.entries {
        for a in &e.auxiliary {
            canvas.object(a, None, true)?;
        }
    }
    let named: Vec<Named<'_>> = trace
        .inputs
        .iter()
        .filter_map(|(n, v)| match v {
            Value::Object(o) => Some((n.as_str(), o, None)),
            _ => None,
        })
        .chain(
            trace
                .entries
                .iter()
                .map(|e| (e.name.as_str(), &e.object, e.segment.as_ref())),
        )
        .collect();
    for (_, obj, segment) in &named {
        match (obj, segment) {
            (GeomObject::Point(_), _) => {}
            (_, Some((p, q))) => canvas.segment(p, q, "segment")?,
            (o, None) => canvas.object(o, None, false)?,
        }
    }
    for (name, obj, _) in &named {
        if let GeomObject::Point(p) = obj {
            canvas.point(p, Some(name), "dot")?;
        }
    }

    let width = CANVAS_WIDTH.to_string();
    let height = format_significant(&viewport.height(), DIGITS);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    out.push_str("  <style>\n");
    out.push_str("    .line, .segment { stroke: #1f3b73; stroke-width: 1.5; }\n");
    out.push_str("    .segment { stroke-width: 2; }\n");
    out.push_str("    .circle { stroke: #7a2e8c; stroke-width: 1.2; fill: none; }\n");
    out.push_str(
        "    .aux { stroke: #9a9a9a; stroke-width: 0.8; stroke-dasharray: 4 3; fill: none; }\n",
    );
    out.push_str("    .dot { fill: #111111; }\n");
    out.push_str("    .aux-dot { fill: #9a9a9a; }\n");
    out.push_str("    .label { font-family: sans-serif; font-size: 14px; fill: #111111; }\n");
    out.push_str("  </style>\n");
    let _ = writeln!(
        out,
        r#"  <rect width="{width}" height="{height}" fill="white"/>"#
    );
    out.push_str(&canvas.body);
    out.push_str("</svg>\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sketch::{execute, parse, Bindings};

    fn trace(src: &str) -> Trace {
        execute(&parse(src).unwrap(), &Bindings::new()).unwrap()
    }

    #[test]
    fn single_point_gives_one_dot() {
        let t = trace("param O: point = (0, 0)");
        let svg = render_svg(&t, &Viewport::fit(&t).unwrap()).unwrap();
        assert_eq!(svg.matches(r#"class="dot""#).count(), 1);
        assert!(svg.contains(r#"version="1.1""#));
        assert!(svg.contains(">O</text>"));
    }

    #[test]
    fn degenerate_viewport_is_rejected() {
        let t = trace("param O: point = (0, 0)");
        let z = BigRational::zero();
        assert_eq!(
            Viewport::new(z.clone(), z.clone(), z.clone(), ratio(1, 1)).unwrap_err(),
            RenderError::DegenerateViewport
        );
        let flat = Viewport {
            min_x: z.clone(),
            min_y: z.clone(),
            max_x: ratio(1, 1),
            max_y: z,
        };
        assert_eq!(
            render_svg(&t, &flat).unwrap_err(),
            RenderError::DegenerateViewport
        );
    }

    #[test]
    fn empty_trace_is_rejected() {
        let t = trace("");
        assert_eq!(Viewport::fit(&t).unwrap_err(), RenderError::EmptyTrace);
        let v = Viewport::new(ratio(0, 1), ratio(0, 1), ratio(1, 1), ratio(1, 1)).unwrap();
        assert_eq!(render_svg(&t, &v).unwrap_err(), RenderError::EmptyTrace);
    }

    #[test]
    fn lines_are_clipped_to_the_window() {
        let t = trace("param A: point = (0, 0)\nparam B: point = (1, 1)\nbind l = line(A, B)");
        let v = Viewport::new(ratio(-1, 1), ratio(-1, 1), ratio(1, 1), ratio(1, 1)).unwrap();
        let svg = render_svg(&t, &v).unwrap();
        assert!(
            svg.contains(r#"<line class="line" x1="800" y1="0" x2="0" y2="800"/>"#),
            "{svg}"
        );
    }

    #[test]
    fn rendering_is_deterministic() {
        let src = "param A: point = (0, 0)\nparam B: point = (3, 1)\nbind c = circle(A, B)\nbind R = rotate60(B, A, ccw)";
        let t1 = trace(src);
        let t2 = trace(src);
        let a = render_svg(&t1, &Viewport::fit(&t1).unwrap()).unwrap();
        let b = render_svg(&t2, &Viewport::fit(&t2).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
