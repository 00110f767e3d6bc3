//! Interpreter: replays a checked program over exact geometry.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_rational::BigRational;

use super::{Arg, Kind, Literal, Predicate, Primitive, Program, StatementKind, Tools};
use crate::euclid::{
    distance_sq, foot_of_perpendicular, intersect, rotate60, Circle, Curve, GeomError, GeomObject,
    Line, Point, Rotation, Selector,
};
use crate::exactnum::{compare, ExactReal, NumError};

/// Value of a parameter or binding.
#[derive(Debug, Clone)]
pub enum Value {
    Object(GeomObject),
    Number(BigRational),
    Selector(Selector),
}

impl Value {
    pub fn kind(&self) -> Kind {
        match self {
            Value::Object(GeomObject::Point(_)) => Kind::Point,
            Value::Object(GeomObject::Line(_)) => Kind::Line,
            Value::Object(GeomObject::Circle(_)) => Kind::Circle,
            Value::Number(_) => Kind::Number,
            Value::Selector(_) => Kind::Selector,
        }
    }

    pub fn point(p: Point) -> Self {
        Value::Object(GeomObject::Point(p))
    }

    fn from_literal(kind: Kind, lit: &Literal) -> Result<Value, GeomError> {
        fn num(l: &Literal) -> ExactReal {
            match l {
                Literal::Number(q) => ExactReal::rational(q.clone()),
                _ => unreachable!("shape checked by the parser"),
            }
        }
        fn items(l: &Literal) -> &[Literal] {
            match l {
                Literal::Tuple(v) => v,
                _ => unreachable!("shape checked by the parser"),
            }
        }
        fn point(l: &Literal) -> Point {
            let v = items(l);
            Point::new(num(&v[0]), num(&v[1]))
        }
        Ok(match kind {
            Kind::Number => match lit {
                Literal::Number(q) => Value::Number(q.clone()),
                _ => unreachable!("shape checked by the parser"),
            },
            Kind::Selector => match lit {
                Literal::Selector(s) => Value::Selector(*s),
                _ => unreachable!("shape checked by the parser"),
            },
            Kind::Point => Value::point(point(lit)),
            Kind::Line => {
                let v = items(lit);
                Value::Object(GeomObject::Line(Line::new(
                    num(&v[0]),
                    num(&v[1]),
                    num(&v[2]),
                )?))
            }
            Kind::Circle => {
                let v = items(lit);
                Value::Object(GeomObject::Circle(Circle::new(point(&v[0]), num(&v[1]))?))
            }
            Kind::Curve => unreachable!("not a parameter kind"),
        })
    }
}

/// Parameter values by name. Missing parameters fall back to defaults.
pub type Bindings = BTreeMap<String, Value>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

/// Result of one `assert`, with the exact quantities it compared.
#[derive(Debug, Clone)]
pub struct AssertionReport {
    pub statement: usize,
    pub text: String,
    pub outcome: Outcome,
    pub witness: Vec<String>,
}

/// One `bind`. `auxiliary` holds the classical steps a compass sugar
/// primitive stands for; they are drawn but not named.
#[derive(Debug, Clone)]
pub struct TraceEntry {
    pub name: String,
    pub object: GeomObject,
    pub statement: usize,
    pub primitive: Primitive,
    pub auxiliary: Vec<GeomObject>,
    pub segment: Option<(Point, Point)>,
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub tools: Tools,
    /// Parameter values, in declaration order.
    pub inputs: Vec<(String, Value)>,
    pub entries: Vec<TraceEntry>,
    pub assertions: Vec<AssertionReport>,
}

impl Trace {
    pub fn all_pass(&self) -> bool {
        self.assertions.iter().all(|a| a.outcome == Outcome::Pass)
    }

    pub fn get(&self, name: &str) -> Option<&GeomObject> {
        self.entries
            .iter()
            .find(|e| e.name == name)
            .map(|e| &e.object)
            .or_else(|| {
                self.inputs.iter().find_map(|(n, v)| match v {
                    Value::Object(o) if n == name => Some(o),
                    _ => None,
                })
            })
    }

    pub fn point(&self, name: &str) -> Option<&Point> {
        match self.get(name)? {
            GeomObject::Point(p) => Some(p),
            _ => None,
        }
    }

    /// Whether any circle was constructed, auxiliary steps included.
    pub fn has_circle(&self) -> bool {
        self.entries.iter().any(|e| {
            matches!(e.object, GeomObject::Circle(_))
                || e.auxiliary
                    .iter()
                    .any(|o| matches!(o, GeomObject::Circle(_)))
        })
    }

    /// Exact equality of every constructed object and assertion outcome.
    pub fn exactly_equals(&self, other: &Trace) -> Result<bool, NumError> {
        if self.entries.len() != other.entries.len()
            || self.assertions.len() != other.assertions.len()
        {
            return Ok(false);
        }
        for (a, b) in self.entries.iter().zip(&other.entries) {
            if a.name != b.name
                || a.statement != b.statement
                || !a.object.exactly_equals(&b.object)?
            {
                return Ok(false);
            }
        }
        Ok(self
            .assertions
            .iter()
            .zip(&other.assertions)
            .all(|(a, b)| a.outcome == b.outcome && a.text == b.text && a.witness == b.witness))
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ExecError {
    #[error("missing parameter '{0}'")]
    MissingParam(String),
    #[error("parameter '{name}' should be a {expected}, found a {found}")]
    ParamKind {
        name: String,
        expected: Kind,
        found: Kind,
    },
    #[error("statement {statement} (line {line}): {source}")]
    Geometry {
        statement: usize,
        line: usize,
        #[source]
        source: GeomError,
    },
}

struct Env {
    values: BTreeMap<String, Value>,
}

impl Env {
    fn value(&self, arg: &Arg) -> &Value {
        match arg {
            Arg::Name(n) => self
                .values
                .get(n)
                .expect("bound names checked by the parser"),
            _ => unreachable!("slot kinds checked by the parser"),
        }
    }

    fn point(&self, arg: &Arg) -> &Point {
        match self.value(arg) {
            Value::Object(GeomObject::Point(p)) => p,
            _ => unreachable!("slot kinds checked by the parser"),
        }
    }

    fn line(&self, arg: &Arg) -> &Line {
        match self.value(arg) {
            Value::Object(GeomObject::Line(l)) => l,
            _ => unreachable!("slot kinds checked by the parser"),
        }
    }

    fn circle(&self, arg: &Arg) -> &Circle {
        match self.value(arg) {
            Value::Object(GeomObject::Circle(c)) => c,
            _ => unreachable!("slot kinds checked by the parser"),
        }
    }

    fn curve(&self, arg: &Arg) -> Curve<'_> {
        match self.value(arg) {
            Value::Object(GeomObject::Line(l)) => Curve::Line(l),
            Value::Object(GeomObject::Circle(c)) => Curve::Circle(c),
            _ => unreachable!("slot kinds checked by the parser"),
        }
    }

    fn selector(&self, arg: &Arg) -> Selector {
        match arg {
            Arg::Selector(s) => *s,
            Arg::Name(_) => match self.value(arg) {
                Value::Selector(s) => *s,
                _ => unreachable!("slot kinds checked by the parser"),
            },
            _ => unreachable!("slot kinds checked by the parser"),
        }
    }

    fn number(&self, arg: &Arg) -> BigRational {
        match arg {
            Arg::Number(q) => q.clone(),
            Arg::Name(_) => match self.value(arg) {
                Value::Number(q) => q.clone(),
                _ => unreachable!("slot kinds checked by the parser"),
            },
            _ => unreachable!("slot kinds checked by the parser"),
        }
    }
}

fn rotation(arg: &Arg) -> Rotation {
    match arg {
        Arg::Rotation(r) => *r,
        _ => unreachable!("slot kinds checked by the parser"),
    }
}

/// Two points of `l` symmetric about `foot`, and the two circles through
/// them whose common chord is the perpendicular to `l` at `foot`.
fn perpendicular_steps(l: &Line, foot: &Point) -> Vec<GeomObject> {
    let d = l.direction();
    let x1 = foot.sub(&d);
    let x2 = foot.add(&d);
    vec![
        GeomObject::Circle(Circle::through(&x1, &x2)),
        GeomObject::Circle(Circle::through(&x2, &x1)),
        GeomObject::Point(x1),
        GeomObject::Point(x2),
    ]
}

type Built = (GeomObject, Vec<GeomObject>, Option<(Point, Point)>);

fn build(env: &Env, primitive: Primitive, args: &[Arg]) -> Result<Built, GeomError> {
    Ok(match primitive {
        Primitive::Line => {
            let (p, q) = (env.point(&args[0]), env.point(&args[1]));
            (GeomObject::Line(Line::through(p, q)?), vec![], None)
        }
        Primitive::Segment => {
            let (p, q) = (env.point(&args[0]), env.point(&args[1]));
            (
                GeomObject::Line(Line::through(p, q)?),
                vec![],
                Some((p.clone(), q.clone())),
            )
        }
        Primitive::Circle => {
            let c = env.point(&args[0]);
            let circle = if args.len() == 2 {
                Circle::through(c, env.point(&args[1]))
            } else {
                Circle::with_radius_of(c, env.point(&args[1]), env.point(&args[2]))
            };
            if circle.radius_sq.is_zero()? {
                return Err(GeomError::NonPositiveLength);
            }
            (GeomObject::Circle(circle), vec![], None)
        }
        Primitive::Intersect => {
            let p = intersect(
                env.curve(&args[0]),
                env.curve(&args[1]),
                env.selector(&args[2]),
            )?;
            (GeomObject::Point(p), vec![], None)
        }
        Primitive::PerpendicularThrough => {
            let (l, p) = (env.line(&args[0]), env.point(&args[1]));
            let foot = foot_of_perpendicular(p, l)?;
            let aux = perpendicular_steps(l, &foot);
            (GeomObject::Line(l.perpendicular_through(p)), aux, None)
        }
        Primitive::ParallelThrough => {
            let (l, p) = (env.line(&args[0]), env.point(&args[1]));
            let m = l.perpendicular_through(p);
            let mut aux = perpendicular_steps(l, &foot_of_perpendicular(p, l)?);
            aux.extend(perpendicular_steps(&m, p));
            aux.push(GeomObject::Line(m));
            (GeomObject::Line(l.parallel_through(p)), aux, None)
        }
        Primitive::Rotate60 => {
            let (p, c) = (env.point(&args[0]), env.point(&args[1]));
            let aux = vec![
                GeomObject::Circle(Circle::through(c, p)),
                GeomObject::Circle(Circle::through(p, c)),
            ];
            (
                GeomObject::Point(rotate60(p, c, rotation(&args[2]))),
                aux,
                None,
            )
        }
        Primitive::PickOn => {
            let (p, q) = (env.point(&args[0]), env.point(&args[1]));
            let t = ExactReal::rational(env.number(&args[2]));
            (GeomObject::Point(p.add(&q.sub(p).scale(&t))), vec![], None)
        }
    })
}

/// A quantity decided to be zero prints as `0`, not as its approximation.
fn is_zero_witness(label: &str, v: &ExactReal) -> Result<(bool, Vec<String>), NumError> {
    let zero = v.is_zero()?;
    Ok((zero, vec![shown(label, v, zero)]))
}

fn shown(label: &str, v: &ExactReal, zero: bool) -> String {
    if zero {
        format!("{label} = 0")
    } else {
        format!("{label} = {v}")
    }
}

fn check(env: &Env, predicate: Predicate, args: &[Arg]) -> Result<(bool, Vec<String>), NumError> {
    let names: Vec<String> = args.iter().map(Arg::to_string).collect();
    match predicate {
        Predicate::EqualLength => {
            let d1 = distance_sq(env.point(&args[0]), env.point(&args[1]));
            let d2 = distance_sq(env.point(&args[2]), env.point(&args[3]));
            let equal = compare(&d1, &d2)? == Ordering::Equal;
            Ok((
                equal,
                vec![
                    format!("|{}{}|² = {d1}", names[0], names[1]),
                    format!("|{}{}|² = {d2}", names[2], names[3]),
                ],
            ))
        }
        Predicate::OnLine => is_zero_witness(
            "line residual",
            &env.line(&args[1]).eval(env.point(&args[0])),
        ),
        Predicate::OnCircle => is_zero_witness(
            "circle residual",
            &env.circle(&args[1]).eval(env.point(&args[0])),
        ),
        Predicate::Parallel => {
            let (l, m) = (env.line(&args[0]), env.line(&args[1]));
            is_zero_witness("normal cross product", &l.normal().cross(&m.normal()))
        }
        Predicate::Perpendicular => {
            let (l, m) = (env.line(&args[0]), env.line(&args[1]));
            is_zero_witness("normal dot product", &l.normal().dot(&m.normal()))
        }
        Predicate::Collinear => {
            let (p, q, r) = (
                env.point(&args[0]),
                env.point(&args[1]),
                env.point(&args[2]),
            );
            is_zero_witness("cross product", &q.sub(p).cross(&r.sub(p)))
        }
        Predicate::Between => {
            let (p, q, r) = (
                env.point(&args[0]),
                env.point(&args[1]),
                env.point(&args[2]),
            );
            let cross = q.sub(p).cross(&r.sub(p));
            let dot = q.sub(p).dot(&r.sub(q));
            let on_line = cross.is_zero()?;
            let ok = on_line && dot.signum()? != Ordering::Less;
            Ok((
                ok,
                vec![
                    shown("cross product", &cross, on_line),
                    format!("(Q−P)·(R−Q) = {dot}"),
                ],
            ))
        }
        Predicate::EqualPoint => is_zero_witness(
            "squared distance",
            &distance_sq(env.point(&args[0]), env.point(&args[1])),
        ),
    }
}

/// Runs `program` with the given parameter values.
///
/// Produces one entry per `bind` and one report per `assert`. Assertions
/// are decided exactly; there is no tolerance.
pub fn execute(program: &Program, bindings: &Bindings) -> Result<Trace, ExecError> {
    let mut env = Env {
        values: BTreeMap::new(),
    };
    let mut inputs = Vec::new();
    for param in &program.params {
        let value = match (bindings.get(&param.name), &param.default) {
            (Some(v), _) => v.clone(),
            (None, Some(lit)) => {
                Value::from_literal(param.kind, lit).map_err(|source| ExecError::Geometry {
                    statement: 0,
                    line: 0,
                    source,
                })?
            }
            (None, None) => return Err(ExecError::MissingParam(param.name.clone())),
        };
        if value.kind() != param.kind {
            return Err(ExecError::ParamKind {
                name: param.name.clone(),
                expected: param.kind,
                found: value.kind(),
            });
        }
        env.values.insert(param.name.clone(), value.clone());
        inputs.push((param.name.clone(), value));
    }

    let mut entries = Vec::new();
    let mut assertions = Vec::new();
    for (index, statement) in program.statements.iter().enumerate() {
        let fail = |source: GeomError| ExecError::Geometry {
            statement: index,
            line: statement.line,
            source,
        };
        match &statement.kind {
            StatementKind::Bind {
                name,
                primitive,
                args,
            } => {
                let (object, auxiliary, segment) = build(&env, *primitive, args).map_err(fail)?;
                env.values
                    .insert(name.clone(), Value::Object(object.clone()));
                entries.push(TraceEntry {
                    name: name.clone(),
                    object,
                    statement: index,
                    primitive: *primitive,
                    auxiliary,
                    segment,
                });
            }
            StatementKind::Assert { predicate, args } => {
                let (ok, witness) = check(&env, *predicate, args).map_err(|e| fail(e.into()))?;
                assertions.push(AssertionReport {
                    statement: index,
                    text: statement
                        .to_string()
                        .trim_start_matches("assert ")
                        .to_string(),
                    outcome: if ok { Outcome::Pass } else { Outcome::Fail },
                    witness,
                });
            }
        }
    }

    Ok(Trace {
        tools: program.tools,
        inputs,
        entries,
        assertions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sketch::parse;

    fn pt(x: i64, y: i64) -> Value {
        Value::point(Point::from_ints(x, y))
    }

    #[test]
    fn empty_program_gives_empty_trace() {
        let t = execute(&parse("").unwrap(), &Bindings::new()).unwrap();
        assert!(t.entries.is_empty() && t.assertions.is_empty());
    }

    #[test]
    fn bindings_override_defaults() {
        let prog =
            parse("param A: point = (0, 0)\nparam B: point = (2, 0)\nbind M = pick_on(A, B, 1/2)")
                .unwrap();
        let t = execute(&prog, &Bindings::new()).unwrap();
        assert_eq!(t.point("M").unwrap(), &Point::from_ints(1, 0));
        let mut b = Bindings::new();
        b.insert("B".into(), pt(4, 2));
        let t = execute(&prog, &b).unwrap();
        assert_eq!(t.point("M").unwrap(), &Point::from_ints(2, 1));
    }

    #[test]
    fn missing_and_mistyped_params() {
        let prog = parse("param A: point\nparam l: line").unwrap();
        assert_eq!(
            execute(&prog, &Bindings::new()).unwrap_err(),
            ExecError::MissingParam("A".into())
        );
        let mut b = Bindings::new();
        b.insert("A".into(), pt(0, 0));
        b.insert("l".into(), pt(0, 0));
        assert!(matches!(
            execute(&prog, &b).unwrap_err(),
            ExecError::ParamKind { .. }
        ));
    }

    #[test]
    fn geometry_errors_name_the_statement() {
        let prog = parse(
            "param A: point = (0, 0)\nparam B: point = (1, 0)\nparam C: point = (0, 1)\nbind l = line(A, B)\nbind m = parallel_through(l, C)\nbind X = intersect(l, m, only)",
        )
        .unwrap();
        match execute(&prog, &Bindings::new()).unwrap_err() {
            ExecError::Geometry {
                statement,
                line,
                source,
            } => {
                assert_eq!((statement, line), (2, 6));
                assert_eq!(source, GeomError::NoIntersection);
            }
            e => panic!("{e:?}"),
        }
    }

    #[test]
    fn assertions_are_exact() {
        let prog = parse(
            "param A: point = (0, 0)\nparam B: point = (3, 4)\nparam C: point = (5, 0)\n\
             assert equal_length(A, B, A, C)\nassert equal_length(A, B, B, C)\n\
             bind D = pick_on(A, C, 1/3)\nassert between(A, D, C)\nassert between(D, A, C)",
        )
        .unwrap();
        let t = execute(&prog, &Bindings::new()).unwrap();
        let outcomes: Vec<_> = t.assertions.iter().map(|a| a.outcome).collect();
        assert_eq!(
            outcomes,
            vec![Outcome::Pass, Outcome::Fail, Outcome::Pass, Outcome::Fail]
        );
        assert_eq!(t.assertions[0].witness, vec!["|AB|² = 25", "|AC|² = 25"]);
        assert_eq!(t.assertions[0].text, "equal_length(A, B, A, C)");
    }

    #[test]
    fn sugar_records_classical_steps() {
        let prog = parse(
            "param A: point = (0, 0)\nparam B: point = (4, 0)\nparam P: point = (1, 3)\nbind l = line(A, B)\n\
             bind m = perpendicular_through(l, P)\nbind R = rotate60(B, A, ccw)\nassert equal_length(A, R, A, B)\n\
             assert equal_length(A, R, B, R)",
        )
        .unwrap();
        let t = execute(&prog, &Bindings::new()).unwrap();
        assert!(t.all_pass());
        assert_eq!(t.entries[1].auxiliary.len(), 4);
        assert_eq!(t.entries[2].auxiliary.len(), 2);
        assert!(t.has_circle());
    }
}
