//! Instance files: JSON objects mapping parameter names to values.
//!
//! ```json
//! {
//!   "A": {"point": ["0", "0"]},
//!   "t": {"number": "1/2"},
//!   "w": {"circle": {"center": ["0", "0"], "radius_sq": "25"}},
//!   "d": {"line": ["0", "1", "0"]},
//!   "side": {"selector": "second"}
//! }
//! ```
//!
//! Numbers are exact rationals written as strings (`"3"`, `"-7/2"`,
//! `"0.25"`); JSON integers are accepted too.

use coffins_core::euclid::{Circle, GeomObject, Line, Point, Selector};
use coffins_core::exactnum::{parse_rational, BigRational, ExactReal};
use coffins_core::sketch::{Bindings, Value};
use serde_json::Value as Json;

#[derive(Debug, thiserror::Error)]
pub enum InstanceError {
    #[error("instance is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("instance must be a JSON object of parameters")]
    NotAnObject,
    #[error("parameter '{name}': {message}")]
    Bad { name: String, message: String },
}

fn bad(name: &str, message: impl Into<String>) -> InstanceError {
    InstanceError::Bad {
        name: name.to_string(),
        message: message.into(),
    }
}

fn number(name: &str, v: &Json) -> Result<BigRational, InstanceError> {
    let text = match v {
        Json::String(s) => s.clone(),
        Json::Number(n) if n.is_i64() => n.to_string(),
        _ => return Err(bad(name, format!("expected a rational string, got {v}"))),
    };
    parse_rational(&text).map_err(|e| bad(name, e.to_string()))
}

fn real(name: &str, v: &Json) -> Result<ExactReal, InstanceError> {
    Ok(ExactReal::rational(number(name, v)?))
}

fn tuple<'a>(name: &str, v: &'a Json, len: usize) -> Result<&'a [Json], InstanceError> {
    match v {
        Json::Array(items) if items.len() == len => Ok(items),
        _ => Err(bad(name, format!("expected an array of {len} numbers"))),
    }
}

fn point(name: &str, v: &Json) -> Result<Point, InstanceError> {
    let xy = tuple(name, v, 2)?;
    Ok(Point::new(real(name, &xy[0])?, real(name, &xy[1])?))
}

fn value(name: &str, v: &Json) -> Result<Value, InstanceError> {
    let Json::Object(map) = v else {
        return Err(bad(
            name,
            "expected an object with one of point, line, circle, number, selector",
        ));
    };
    if map.len() != 1 {
        return Err(bad(name, "expected exactly one kind key"));
    }
    let (kind, body) = map.iter().next().expect("one entry");
    let geom = |e: coffins_core::euclid::GeomError| bad(name, e.to_string());
    Ok(match kind.as_str() {
        "point" => Value::point(point(name, body)?),
        "number" => Value::Number(number(name, body)?),
        "line" => {
            let abc = tuple(name, body, 3)?;
            let l = Line::new(
                real(name, &abc[0])?,
                real(name, &abc[1])?,
                real(name, &abc[2])?,
            )
            .map_err(geom)?;
            Value::Object(GeomObject::Line(l))
        }
        "circle" => {
            let center = body
                .get("center")
                .ok_or_else(|| bad(name, "circle needs a center"))?;
            let r2 = body
                .get("radius_sq")
                .ok_or_else(|| bad(name, "circle needs radius_sq"))?;
            let c = Circle::new(point(name, center)?, real(name, r2)?).map_err(geom)?;
            Value::Object(GeomObject::Circle(c))
        }
        "selector" => Value::Selector(match body.as_str() {
            Some("only") => Selector::Only,
            Some("first") => Selector::First,
            Some("second") => Selector::Second,
            _ => return Err(bad(name, "selector must be only, first or second")),
        }),
        other => return Err(bad(name, format!("unknown kind '{other}'"))),
    })
}

pub fn parse_instance(text: &str) -> Result<Bindings, InstanceError> {
    let Json::Object(map) = serde_json::from_str::<Json>(text)? else {
        return Err(InstanceError::NotAnObject);
    };
    map.iter()
        .map(|(name, v)| Ok((name.clone(), value(name, v)?)))
        .collect()
}
