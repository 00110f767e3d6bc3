//! A small construction language over the exact kernel.
//!
//! A script declares its tool set and parameters, then binds named objects
//! with construction primitives and states exact assertions:
//!
//! ```text
//! tools compass_and_straightedge
//! param A: point = (0, 0)
//! param B: point = (4, 0)
//! bind c = circle(A, B)
//! bind X = intersect(c, ab, second)
//! assert on_circle(X, c)
//! ```
//!
//! Statements end at a newline or `;`, and `#` starts a comment.

mod corpus;
mod exec;
mod parse;
mod svg;

pub use corpus::{corpus, script, CorpusEntry};
pub use exec::{execute, AssertionReport, Bindings, ExecError, Outcome, Trace, TraceEntry, Value};
pub use parse::parse;
pub use svg::{render_svg, RenderError, Viewport};

use std::fmt;

use num_rational::BigRational;

use crate::euclid::{Rotation, Selector};
use parse::Slot;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tools {
    CompassAndStraightedge,
    StraightedgeOnly,
}

impl fmt::Display for Tools {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tools::CompassAndStraightedge => "compass_and_straightedge",
            Tools::StraightedgeOnly => "straightedge_only",
        })
    }
}

/// Static kind of a named value. `Curve` is a slot kind only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Point,
    Line,
    Circle,
    Number,
    Selector,
    Curve,
}

impl Kind {
    fn accepts(self, have: Kind) -> bool {
        self == have || (self == Kind::Curve && matches!(have, Kind::Line | Kind::Circle))
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Point => "point",
            Kind::Line => "line",
            Kind::Circle => "circle",
            Kind::Number => "number",
            Kind::Selector => "selector",
            Kind::Curve => "line or circle",
        })
    }
}

/// Default value of a parameter: a rational or a nested tuple of them.
/// Points are `(x, y)`, lines `(a, b, c)`, circles `((x, y), r²)`;
/// selectors are `only`, `first` or `second`.
#[derive(Debug, Clone, PartialEq)]
pub enum Literal {
    Number(BigRational),
    Tuple(Vec<Literal>),
    Selector(Selector),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Param {
    pub name: String,
    pub kind: Kind,
    pub default: Option<Literal>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Primitive {
    /// `line(P, Q)`
    Line,
    /// `segment(P, Q)`: a line drawn only between its ends.
    Segment,
    /// `circle(C, P)` through `P`, or `circle(C, P, Q)` with radius `|PQ|`.
    Circle,
    /// `intersect(o1, o2, only|first|second)`
    Intersect,
    /// `parallel_through(l, P)`
    ParallelThrough,
    /// `perpendicular_through(l, P)`
    PerpendicularThrough,
    /// `rotate60(P, C, ccw|cw)`
    Rotate60,
    /// `pick_on(P, Q, t)` is the free point `P + t·(Q − P)`.
    PickOn,
}

impl Primitive {
    const ALL: [Primitive; 8] = [
        Primitive::Line,
        Primitive::Segment,
        Primitive::Circle,
        Primitive::Intersect,
        Primitive::ParallelThrough,
        Primitive::PerpendicularThrough,
        Primitive::Rotate60,
        Primitive::PickOn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Primitive::Line => "line",
            Primitive::Segment => "segment",
            Primitive::Circle => "circle",
            Primitive::Intersect => "intersect",
            Primitive::ParallelThrough => "parallel_through",
            Primitive::PerpendicularThrough => "perpendicular_through",
            Primitive::Rotate60 => "rotate60",
            Primitive::PickOn => "pick_on",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    pub fn needs_compass(self) -> bool {
        matches!(
            self,
            Primitive::Circle
                | Primitive::ParallelThrough
                | Primitive::PerpendicularThrough
                | Primitive::Rotate60
        )
    }

    pub fn result_kind(self) -> Kind {
        match self {
            Primitive::Line
            | Primitive::Segment
            | Primitive::ParallelThrough
            | Primitive::PerpendicularThrough => Kind::Line,
            Primitive::Circle => Kind::Circle,
            Primitive::Intersect | Primitive::Rotate60 | Primitive::PickOn => Kind::Point,
        }
    }

    fn signatures(self) -> Vec<Vec<Slot>> {
        use Kind::*;
        use Slot::Obj;
        match self {
            Primitive::Line | Primitive::Segment => vec![vec![Obj(Point), Obj(Point)]],
            Primitive::Circle => vec![
                vec![Obj(Point), Obj(Point)],
                vec![Obj(Point), Obj(Point), Obj(Point)],
            ],
            Primitive::Intersect => vec![vec![Obj(Curve), Obj(Curve), Slot::Selector]],
            Primitive::ParallelThrough | Primitive::PerpendicularThrough => {
                vec![vec![Obj(Line), Obj(Point)]]
            }
            Primitive::Rotate60 => vec![vec![Obj(Point), Obj(Point), Slot::Rotation]],
            Primitive::PickOn => vec![vec![Obj(Point), Obj(Point), Obj(Number)]],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Predicate {
    /// `|PQ| = |RS|`
    EqualLength,
    OnLine,
    OnCircle,
    Parallel,
    Perpendicular,
    Collinear,
    /// `between(P, Q, R)`: `Q` on the closed segment `PR`.
    Between,
    EqualPoint,
}

impl Predicate {
    const ALL: [Predicate; 8] = [
        Predicate::EqualLength,
        Predicate::OnLine,
        Predicate::OnCircle,
        Predicate::Parallel,
        Predicate::Perpendicular,
        Predicate::Collinear,
        Predicate::Between,
        Predicate::EqualPoint,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::EqualLength => "equal_length",
            Predicate::OnLine => "on_line",
            Predicate::OnCircle => "on_circle",
            Predicate::Parallel => "parallel",
            Predicate::Perpendicular => "perpendicular",
            Predicate::Collinear => "collinear",
            Predicate::Between => "between",
            Predicate::EqualPoint => "equal_point",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name() == name)
    }

    fn signature(self) -> &'static [Slot] {
        use Kind::*;
        use Slot::Obj;
        match self {
            Predicate::EqualLength => &[Obj(Point), Obj(Point), Obj(Point), Obj(Point)],
            Predicate::OnLine => &[Obj(Point), Obj(Line)],
            Predicate::OnCircle => &[Obj(Point), Obj(Circle)],
            Predicate::Parallel | Predicate::Perpendicular => &[Obj(Line), Obj(Line)],
            Predicate::Collinear | Predicate::Between => &[Obj(Point), Obj(Point), Obj(Point)],
            Predicate::EqualPoint => &[Obj(Point), Obj(Point)],
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Arg {
    Name(String),
    Number(BigRational),
    Selector(Selector),
    Rotation(Rotation),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Name(n) => f.write_str(n),
            Arg::Number(q) => write!(f, "{q}"),
            Arg::Selector(Selector::Only) => f.write_str("only"),
            Arg::Selector(Selector::First) => f.write_str("first"),
            Arg::Selector(Selector::Second) => f.write_str("second"),
            Arg::Rotation(Rotation::Ccw) => f.write_str("ccw"),
            Arg::Rotation(Rotation::Cw) => f.write_str("cw"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum StatementKind {
    Bind {
        name: String,
        primitive: Primitive,
        args: Vec<Arg>,
    },
    Assert {
        predicate: Predicate,
        args: Vec<Arg>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    /// Source line, 1-based.
    pub line: usize,
    pub kind: StatementKind,
}

fn join_args(args: &[Arg]) -> String {
    args.iter()
        .map(Arg::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            StatementKind::Bind {
                name,
                primitive,
                args,
            } => {
                write!(f, "bind {name} = {}({})", primitive.name(), join_args(args))
            }
            StatementKind::Assert { predicate, args } => {
                write!(f, "assert {}({})", predicate.name(), join_args(args))
            }
        }
    }
}

/// A checked script: every name is bound once before use, every call has a
/// valid arity and argument kinds, and every primitive is allowed by `tools`.
#[derive(Debug, Clone, PartialEq)]
pub struct Program {
    pub tools: Tools,
    pub params: Vec<Param>,
    pub statements: Vec<Statement>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseError {
    #[error("syntax error at {line}:{col}: {message}")]
    Syntax {
        line: usize,
        col: usize,
        message: String,
    },
    #[error("line {line}: unknown identifier '{name}'")]
    UnknownIdentifier { line: usize, name: String },
    #[error("line {line}: unknown primitive '{name}'")]
    UnknownPrimitive { line: usize, name: String },
    #[error("line {line}: unknown predicate '{name}'")]
    UnknownPredicate { line: usize, name: String },
    #[error("line {line}: {callee} takes {expected} arguments, found {found}")]
    ArityMismatch {
        line: usize,
        callee: String,
        expected: String,
        found: usize,
    },
    #[error("line {line}: '{primitive}' needs a compass but the script is straightedge_only")]
    ToolViolation { line: usize, primitive: String },
    #[error("line {line}: expected {expected}, found {found}")]
    TypeMismatch {
        line: usize,
        expected: String,
        found: String,
    },
    #[error("line {line}: '{name}' is already bound")]
    Rebinding { line: usize, name: String },
}
