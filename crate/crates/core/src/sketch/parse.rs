//! Lexer and parser with static checks: binding before use, arity, argument
//! kinds and tool legality.

use std::collections::BTreeMap;

use num_rational::BigRational;

use super::{
    Arg, Kind, Literal, Param, ParseError, Predicate, Primitive, Program, Statement, StatementKind,
    Tools,
};
use crate::euclid::{Rotation, Selector};
use crate::exactnum::parse_rational;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Number(String),
    Punct(char),
    Sep,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    for (li, raw) in text.lines().enumerate() {
        let line = li + 1;
        let chars: Vec<char> = raw.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            if c == '#' {
                break;
            }
            if c.is_whitespace() {
                i += 1;
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
                {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Ident(chars[start..i].iter().collect()),
                    line,
                    col,
                });
            } else if c.is_ascii_digit()
                || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
            {
                let start = i;
                i += 1;
                while i < chars.len()
                    && (chars[i].is_ascii_digit() || chars[i] == '.' || chars[i] == '/')
                {
                    i += 1;
                }
                out.push(Token {
                    tok: Tok::Number(chars[start..i].iter().collect()),
                    line,
                    col,
                });
            } else if c == ';' {
                out.push(Token {
                    tok: Tok::Sep,
                    line,
                    col,
                });
                i += 1;
            } else if "(),=:".contains(c) {
                out.push(Token {
                    tok: Tok::Punct(c),
                    line,
                    col,
                });
                i += 1;
            } else {
                return Err(ParseError::Syntax {
                    line,
                    col,
                    message: format!("unexpected character '{c}'"),
                });
            }
        }
        out.push(Token {
            tok: Tok::Sep,
            line,
            col: chars.len() + 1,
        });
    }
    Ok(out)
}

struct Cursor<'a> {
    toks: &'a [Token],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> &'a Token {
        &self.toks[self.pos]
    }

    fn next(&mut self) -> &'a Token {
        let t = &self.toks[self.pos];
        self.pos += 1;
        t
    }

    fn syntax(t: &Token, message: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            line: t.line,
            col: t.col,
            message: message.into(),
        }
    }

    fn ident(&mut self, what: &str) -> Result<(&'a str, &'a Token), ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Ident(s) => Ok((s, t)),
            _ => Err(Self::syntax(t, format!("expected {what}"))),
        }
    }

    fn punct(&mut self, c: char) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::Punct(c) {
            Ok(())
        } else {
            Err(Self::syntax(t, format!("expected '{c}'")))
        }
    }

    fn end_of_statement(&mut self) -> Result<(), ParseError> {
        let t = self.next();
        if t.tok == Tok::Sep {
            Ok(())
        } else {
            Err(Self::syntax(t, "expected end of statement"))
        }
    }

    fn literal(&mut self) -> Result<Literal, ParseError> {
        let t = self.next();
        match &t.tok {
            Tok::Number(s) => parse_rational(s)
                .map(Literal::Number)
                .map_err(|e| Self::syntax(t, e.to_string())),
            Tok::Punct('(') => {
                let mut items = vec![self.literal()?];
                loop {
                    let t = self.next();
                    match t.tok {
                        Tok::Punct(',') => items.push(self.literal()?),
                        Tok::Punct(')') => break,
                        _ => return Err(Self::syntax(t, "expected ',' or ')'")),
                    }
                }
                Ok(Literal::Tuple(items))
            }
            _ => Err(Self::syntax(t, "expected a literal")),
        }
    }
}

/// Shape check of a default value against the declared kind.
fn literal_fits(kind: Kind, lit: &Literal) -> bool {
    fn number(l: &Literal) -> bool {
        matches!(l, Literal::Number(_))
    }
    fn pair(l: &Literal) -> bool {
        matches!(l, Literal::Tuple(v) if v.len() == 2 && v.iter().all(number))
    }
    match kind {
        Kind::Number => number(lit),
        Kind::Selector => matches!(lit, Literal::Selector(_)),
        Kind::Point => pair(lit),
        Kind::Line => matches!(lit, Literal::Tuple(v) if v.len() == 3 && v.iter().all(number)),
        Kind::Circle => {
            matches!(lit, Literal::Tuple(v) if v.len() == 2 && pair(&v[0]) && number(&v[1]))
        }
        Kind::Curve => false,
    }
}

/// Parses and statically checks a construction script.
pub fn parse(text: &str) -> Result<Program, ParseError> {
    let toks = lex(text)?;
    let mut cur = Cursor {
        toks: &toks,
        pos: 0,
    };
    let mut tools: Option<Tools> = None;
    let mut params: Vec<Param> = Vec::new();
    let mut statements: Vec<Statement> = Vec::new();
    let mut scope: BTreeMap<String, Kind> = BTreeMap::new();

    while cur.pos < toks.len() {
        let head = cur.peek();
        if head.tok == Tok::Sep {
            cur.next();
            continue;
        }
        let (word, head) = cur.ident("a statement keyword")?;
        let line = head.line;
        match word {
            "tools" => {
                if tools.is_some() || !params.is_empty() || !statements.is_empty() {
                    return Err(Cursor::syntax(head, "tools must be declared once, first"));
                }
                let (which, t) = cur.ident("a tool set")?;
                tools = Some(match which {
                    "compass_and_straightedge" => Tools::CompassAndStraightedge,
                    "straightedge_only" => Tools::StraightedgeOnly,
                    _ => return Err(Cursor::syntax(t, format!("unknown tool set '{which}'"))),
                });
            }
            "param" => {
                let (name, _) = cur.ident("a parameter name")?;
                cur.punct(':')?;
                let (kind_word, t) = cur.ident("a parameter kind")?;
                let kind = match kind_word {
                    "point" => Kind::Point,
                    "line" => Kind::Line,
                    "circle" => Kind::Circle,
                    "number" => Kind::Number,
                    "selector" => Kind::Selector,
                    _ => return Err(Cursor::syntax(t, format!("unknown kind '{kind_word}'"))),
                };
                let default = if cur.peek().tok == Tok::Punct('=') {
                    cur.next();
                    let t = cur.peek();
                    let lit =
                        if kind == Kind::Selector {
                            let (w, t) = cur.ident("only, first or second")?;
                            Literal::Selector(keyword_selector(w).ok_or_else(|| {
                                Cursor::syntax(t, "expected only, first or second")
                            })?)
                        } else {
                            cur.literal()?
                        };
                    if !literal_fits(kind, &lit) {
                        return Err(Cursor::syntax(
                            t,
                            format!("default does not describe a {kind}"),
                        ));
                    }
                    Some(lit)
                } else {
                    None
                };
                if scope.contains_key(name) {
                    return Err(ParseError::Rebinding {
                        line,
                        name: name.to_string(),
                    });
                }
                scope.insert(name.to_string(), kind);
                params.push(Param {
                    name: name.to_string(),
                    kind,
                    default,
                });
            }
            "bind" => {
                let (name, _) = cur.ident("a name")?;
                cur.punct('=')?;
                let (prim_word, t) = cur.ident("a primitive")?;
                let prim = Primitive::from_name(prim_word).ok_or_else(|| {
                    ParseError::UnknownPrimitive {
                        line: t.line,
                        name: prim_word.to_string(),
                    }
                })?;
                let raw = parse_call_args(&mut cur)?;
                let tools_now = tools.unwrap_or(Tools::CompassAndStraightedge);
                if prim.needs_compass() && tools_now == Tools::StraightedgeOnly {
                    return Err(ParseError::ToolViolation {
                        line,
                        primitive: prim.name().to_string(),
                    });
                }
                let sigs = prim.signatures();
                let sig = sigs.iter().find(|s| s.len() == raw.len()).ok_or_else(|| {
                    ParseError::ArityMismatch {
                        line,
                        callee: prim.name().to_string(),
                        expected: sigs
                            .iter()
                            .map(|s| s.len().to_string())
                            .collect::<Vec<_>>()
                            .join(" or "),
                        found: raw.len(),
                    }
                })?;
                let args = check_args(line, &raw, sig, &scope)?;
                if scope.contains_key(name) {
                    return Err(ParseError::Rebinding {
                        line,
                        name: name.to_string(),
                    });
                }
                scope.insert(name.to_string(), prim.result_kind());
                statements.push(Statement {
                    line,
                    kind: StatementKind::Bind {
                        name: name.to_string(),
                        primitive: prim,
                        args,
                    },
                });
            }
            "assert" => {
                let (pred_word, t) = cur.ident("a predicate")?;
                let pred = Predicate::from_name(pred_word).ok_or_else(|| {
                    ParseError::UnknownPredicate {
                        line: t.line,
                        name: pred_word.to_string(),
                    }
                })?;
                let raw = parse_call_args(&mut cur)?;
                let sig = pred.signature();
                if sig.len() != raw.len() {
                    return Err(ParseError::ArityMismatch {
                        line,
                        callee: pred.name().to_string(),
                        expected: sig.len().to_string(),
                        found: raw.len(),
                    });
                }
                let args = check_args(line, &raw, sig, &scope)?;
                statements.push(Statement {
                    line,
                    kind: StatementKind::Assert {
                        predicate: pred,
                        args,
                    },
                });
            }
            _ => return Err(Cursor::syntax(head, format!("unknown statement '{word}'"))),
        }
        cur.end_of_statement()?;
    }

    Ok(Program {
        tools: tools.unwrap_or(Tools::CompassAndStraightedge),
        params,
        statements,
    })
}

enum RawArg<'a> {
    Word(&'a str),
    Number(BigRational),
}

fn parse_call_args<'a>(cur: &mut Cursor<'a>) -> Result<Vec<RawArg<'a>>, ParseError> {
    cur.punct('(')?;
    let mut out = Vec::new();
    if cur.peek().tok == Tok::Punct(')') {
        cur.next();
        return Ok(out);
    }
    loop {
        let t = cur.next();
        match &t.tok {
            Tok::Ident(s) => out.push(RawArg::Word(s)),
            Tok::Number(s) => out.push(RawArg::Number(
                parse_rational(s).map_err(|e| Cursor::syntax(t, e.to_string()))?,
            )),
            _ => return Err(Cursor::syntax(t, "expected an argument")),
        }
        let t = cur.next();
        match t.tok {
            Tok::Punct(',') => {}
            Tok::Punct(')') => return Ok(out),
            _ => return Err(Cursor::syntax(t, "expected ',' or ')'")),
        }
    }
}

fn keyword_selector(word: &str) -> Option<Selector> {
    match word {
        "only" => Some(Selector::Only),
        "first" => Some(Selector::First),
        "second" => Some(Selector::Second),
        _ => None,
    }
}

/// Kinds a call slot accepts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Slot {
    Obj(Kind),
    Selector,
    Rotation,
}

fn check_args(
    line: usize,
    raw: &[RawArg<'_>],
    sig: &[Slot],
    scope: &BTreeMap<String, Kind>,
) -> Result<Vec<Arg>, ParseError> {
    let mismatch = |expected: String, found: String| ParseError::TypeMismatch {
        line,
        expected,
        found,
    };
    raw.iter()
        .zip(sig)
        .map(|(a, slot)| match (slot, a) {
            (Slot::Selector, RawArg::Word(w)) => match (keyword_selector(w), scope.get(*w)) {
                (Some(s), _) => Ok(Arg::Selector(s)),
                (None, Some(Kind::Selector)) => Ok(Arg::Name(w.to_string())),
                _ => Err(mismatch(
                    "only, first, second or a selector parameter".into(),
                    w.to_string(),
                )),
            },
            (Slot::Rotation, RawArg::Word(w)) => match *w {
                "ccw" => Ok(Arg::Rotation(Rotation::Ccw)),
                "cw" => Ok(Arg::Rotation(Rotation::Cw)),
                _ => Err(mismatch("ccw or cw".into(), w.to_string())),
            },
            (Slot::Obj(Kind::Number), RawArg::Number(q)) => Ok(Arg::Number(q.clone())),
            (Slot::Obj(want), RawArg::Word(w)) => {
                let have = *scope.get(*w).ok_or_else(|| ParseError::UnknownIdentifier {
                    line,
                    name: w.to_string(),
                })?;
                if want.accepts(have) {
                    Ok(Arg::Name(w.to_string()))
                } else {
                    Err(mismatch(want.to_string(), format!("{w} ({have})")))
                }
            }
            (slot, RawArg::Number(q)) => Err(mismatch(format!("{slot:?}"), q.to_string())),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_straightedge_program() {
        let p =
            parse("tools straightedge_only; param A: point; param B: point; bind l = line(A,B)")
                .unwrap();
        assert_eq!(p.tools, Tools::StraightedgeOnly);
        assert_eq!(p.params.len(), 2);
        assert_eq!(p.statements.len(), 1);
    }

    #[test]
    fn arity_is_checked() {
        let err = parse("param A: point\nbind l = line(A)").unwrap_err();
        assert!(
            matches!(
                err,
                ParseError::ArityMismatch {
                    line: 2,
                    found: 1,
                    ..
                }
            ),
            "{err:?}"
        );
    }

    #[test]
    fn circle_is_forbidden_without_compass() {
        let err =
            parse("tools straightedge_only\nparam A: point\nparam B: point\nbind c = circle(A, B)")
                .unwrap_err();
        assert!(matches!(err, ParseError::ToolViolation { line: 4, .. }));
        let err = parse("tools straightedge_only\nparam l: line\nparam P: point\nbind m = parallel_through(l, P)")
            .unwrap_err();
        assert!(matches!(err, ParseError::ToolViolation { .. }));
    }

    #[test]
    fn names_must_be_bound_once() {
        assert!(matches!(
            parse("param A: point\nbind l = line(A, B)").unwrap_err(),
            ParseError::UnknownIdentifier { line: 2, .. }
        ));
        assert!(matches!(
            parse("param A: point\nparam B: point\nbind A = line(A, B)").unwrap_err(),
            ParseError::Rebinding { line: 3, .. }
        ));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse("param A: point\nbind l = line(A,, A)").unwrap_err() {
            ParseError::Syntax { line, col, .. } => assert_eq!((line, col), (2, 17)),
            e => panic!("{e:?}"),
        }
        assert!(matches!(
            parse("param A point").unwrap_err(),
            ParseError::Syntax {
                line: 1,
                col: 9,
                ..
            }
        ));
    }

    #[test]
    fn argument_kinds_are_checked() {
        let err = parse("param A: point\nparam c: circle\nbind l = line(A, c)").unwrap_err();
        assert!(matches!(err, ParseError::TypeMismatch { line: 3, .. }));
        let err =
            parse("param l: line\nparam m: line\nbind X = intersect(l, m, third)").unwrap_err();
        assert!(matches!(err, ParseError::TypeMismatch { .. }));
    }

    #[test]
    fn defaults_and_comments() {
        let p = parse(
            "# header\nparam A: point = (0, -1/2)  # origin-ish\nparam t: number = 0.25\nparam w: circle = ((0, 0), 25)\nparam d: line = (0, 1, 0)",
        )
        .unwrap();
        assert_eq!(p.params.len(), 4);
        assert!(p.params.iter().all(|q| q.default.is_some()));
        assert!(parse("param A: point = (1, 2, 3)").is_err());
        let p = parse("param l: line\nparam m: line\nparam side: selector = second\nbind X = intersect(l, m, side)").unwrap();
        assert_eq!(
            p.params[2].default,
            Some(Literal::Selector(Selector::Second))
        );
        assert!(parse("param side: selector = third").is_err());
    }

    #[test]
    fn empty_program() {
        let p = parse("").unwrap();
        assert!(p.statements.is_empty() && p.params.is_empty());
    }
}
