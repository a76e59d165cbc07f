//! Graph-knot expressions: unknots and torus knots closed under mirroring,
//! connected sum and cabling.
//!
//! Text form:
//!
//! ```text
//! expr := term ("#" term)*
//! term := "U" | "T(" int "," int ")" | "C(" int "," int ";" expr ")"
//!       | "mirror(" expr ")" | "(" expr ")"
//! int  := ["-"] digits
//! ```
//!
//! Whitespace is ignored between tokens and `#` associates to the left.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum KnotExpr {
    Unknot,
    /// Torus knot; `q >= 2` and the sign of `p` carries handedness.
    Torus(i64, i64),
    Mirror(Box<KnotExpr>),
    Sum(Box<KnotExpr>, Box<KnotExpr>),
    /// `(p, q)`-cable of the companion, wrapping `q` times longitudinally.
    Cable(i64, i64, Box<KnotExpr>),
}

impl KnotExpr {
    pub fn torus(p: i64, q: i64) -> Self {
        KnotExpr::Torus(p, q)
    }

    pub fn mirror(k: KnotExpr) -> Self {
        KnotExpr::Mirror(Box::new(k))
    }

    pub fn sum(a: KnotExpr, b: KnotExpr) -> Self {
        KnotExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn cable(p: i64, q: i64, companion: KnotExpr) -> Self {
        KnotExpr::Cable(p, q, Box::new(companion))
    }

    pub fn depth(&self) -> usize {
        match self {
            KnotExpr::Unknot | KnotExpr::Torus(..) => 1,
            KnotExpr::Mirror(k) | KnotExpr::Cable(_, _, k) => 1 + k.depth(),
            KnotExpr::Sum(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Unknot, possibly under any number of mirrors.
    pub fn is_trivial(&self) -> bool {
        match self {
            KnotExpr::Unknot => true,
            KnotExpr::Mirror(k) => k.is_trivial(),
            _ => false,
        }
    }

    pub fn has_cable(&self) -> bool {
        match self {
            KnotExpr::Unknot | KnotExpr::Torus(..) => false,
            KnotExpr::Cable(..) => true,
            KnotExpr::Mirror(k) => k.has_cable(),
            KnotExpr::Sum(a, b) => a.has_cable() || b.has_cable(),
        }
    }

    pub fn render(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => write!(f, "U"),
            KnotExpr::Torus(p, q) => write!(f, "T({p},{q})"),
            KnotExpr::Mirror(k) => write!(f, "mirror({k})"),
            KnotExpr::Cable(p, q, k) => write!(f, "C({p},{q}; {k})"),
            KnotExpr::Sum(a, b) => {
                // `#` is left-associative, so only a right-hand sum needs parentheses.
                if matches!(**b, KnotExpr::Sum(..)) {
                    write!(f, "{a} # ({b})")
                } else {
                    write!(f, "{a} # {b}")
                }
            }
        }
    }
}

impl std::str::FromStr for KnotExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        parse(s)
    }
}

impl Serialize for KnotExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.render())
    }
}

impl<'de> Deserialize<'de> for KnotExpr {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).map_err(serde::de::Error::custom)
    }
}

const MAX_NESTING: usize = 200;

pub fn parse(text: &str) -> Result<KnotExpr, Error> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        nesting: 0,
    };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.syntax(format!("unexpected {:?}", p.src[p.pos] as char)));
    }
    Ok(e)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    nesting: usize,
}

impl Parser<'_> {
    fn syntax(&self, msg: impl Into<String>) -> Error {
        Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), Error> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = match self.peek() {
                Some(x) => format!("{:?}", x as char),
                None => "end of input".to_string(),
            };
            Err(self.syntax(format!("expected {:?}, found {found}", c as char)))
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<KnotExpr, Error> {
        self.nesting += 1;
        if self.nesting > MAX_NESTING {
            return Err(self.syntax("expression nested too deeply"));
        }
        let mut acc = self.term()?;
        while self.eat(b'#') {
            let rhs = self.term()?;
            acc = KnotExpr::sum(acc, rhs);
        }
        self.nesting -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<KnotExpr, Error> {
        let start = self.pos;
        match self.peek() {
            Some(b'U') => {
                self.pos += 1;
                Ok(KnotExpr::Unknot)
            }
            Some(b'T') => {
                self.pos += 1;
                self.expect(b'(')?;
                let p = self.int()?;
                self.arg_sep(b',', "T", 2, start)?;
                let q = self.int()?;
                self.close_args(b')', "T", 2, start)?;
                Ok(KnotExpr::Torus(p, q))
            }
            Some(b'C') => {
                self.pos += 1;
                self.expect(b'(')?;
                let p = self.int()?;
                self.arg_sep(b',', "C", 3, start)?;
                let q = self.int()?;
                if self.peek() == Some(b',') || self.peek() == Some(b')') {
                    return Err(Error::Arity {
                        pos: start,
                        constructor: "C",
                        expected: 3,
                    });
                }
                self.expect(b';')?;
                let k = self.expr()?;
                self.expect(b')')?;
                Ok(KnotExpr::cable(p, q, k))
            }
            Some(b'm') => {
                if !self.keyword("mirror") {
                    return Err(self.syntax("unknown constructor"));
                }
                self.expect(b'(')?;
                let k = self.expr()?;
                if self.peek() == Some(b',') {
                    return Err(Error::Arity {
                        pos: start,
                        constructor: "mirror",
                        expected: 1,
                    });
                }
                self.expect(b')')?;
                Ok(KnotExpr::mirror(k))
            }
            Some(b'(') => {
                self.pos += 1;
                let k = self.expr()?;
                self.expect(b')')?;
                Ok(k)
            }
            Some(c) => Err(self.syntax(format!("unexpected {:?}, expected a term", c as char))),
            None => Err(self.syntax("unexpected end of input, expected a term")),
        }
    }

    fn arg_sep(
        &mut self,
        sep: u8,
        constructor: &'static str,
        expected: usize,
        start: usize,
    ) -> Result<(), Error> {
        if self.eat(sep) {
            Ok(())
        } else if self.peek() == Some(b')') {
            Err(Error::Arity {
                pos: start,
                constructor,
                expected,
            })
        } else {
            self.expect(sep)
        }
    }

    fn close_args(
        &mut self,
        close: u8,
        constructor: &'static str,
        expected: usize,
        start: usize,
    ) -> Result<(), Error> {
        if self.peek() == Some(b',') || self.peek() == Some(b';') {
            return Err(Error::Arity {
                pos: start,
                constructor,
                expected,
            });
        }
        self.expect(close)
    }

    fn int(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.syntax("expected an integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .parse()
            .map_err(|_| Error::IntegerOverflow { pos: start })
    }
}

/// Limits on parameter size and tree depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub max_abs_p: i64,
    pub max_q: i64,
    pub max_depth: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            max_abs_p: 1_000_000,
            max_q: 10_000,
            max_depth: 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationKind {
    TorusP { p: i64 },
    TorusQ { q: i64 },
    NotCoprime { p: i64, q: i64, gcd: i64 },
    CableQ { q: i64 },
    CableOverUnknot,
    SumWithUnknot,
    ParamTooLarge { value: i64, bound: i64 },
    TooDeep { depth: usize, max: usize },
}

/// A broken invariant, located by a path of child indices from the root.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub path: String,
    #[serde(flatten)]
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use ViolationKind::*;
        match &self.kind {
            TorusP { p } => write!(f, "torus knot needs |p| >= 2, got p = {p}"),
            TorusQ { q } => write!(f, "torus knot needs q >= 2, got q = {q}"),
            NotCoprime { p, q, gcd } => write!(f, "gcd({p},{q}) = {gcd}, must be 1"),
            CableQ { q } => write!(f, "q > 1 required for a cable, got q = {q}"),
            CableOverUnknot => write!(f, "cable companion must be a nontrivial knot"),
            SumWithUnknot => write!(f, "connected summand must be a nontrivial knot"),
            ParamTooLarge { value, bound } => {
                write!(f, "parameter {value} exceeds the bound {bound}")
            }
            TooDeep { depth, max } => write!(f, "depth {depth} exceeds the bound {max}"),
        }?;
        write!(f, " (at {})", self.path)
    }
}

pub fn validate(k: &KnotExpr) -> Vec<Violation> {
    validate_with(k, &Bounds::default())
}

pub fn validate_with(k: &KnotExpr, bounds: &Bounds) -> Vec<Violation> {
    let mut out = Vec::new();
    let depth = k.depth();
    if depth > bounds.max_depth {
        out.push(Violation {
            path: "root".into(),
            kind: ViolationKind::TooDeep {
                depth,
                max: bounds.max_depth,
            },
        });
    }
    walk(k, "root".to_string(), bounds, &mut out);
    out
}

fn walk(k: &KnotExpr, path: String, bounds: &Bounds, out: &mut Vec<Violation>) {
    let mut found = Vec::new();
    match k {
        KnotExpr::Unknot => {}
        KnotExpr::Torus(p, q) => {
            if p.unsigned_abs() < 2 {
                found.push(ViolationKind::TorusP { p: *p });
            }
            if *q < 2 {
                found.push(ViolationKind::TorusQ { q: *q });
            }
            check_params(*p, *q, bounds, &mut found);
        }
        KnotExpr::Cable(p, q, c) => {
            if *q <= 1 {
                found.push(ViolationKind::CableQ { q: *q });
            }
            check_params(*p, *q, bounds, &mut found);
            if c.is_trivial() {
                found.push(ViolationKind::CableOverUnknot);
            }
        }
        KnotExpr::Mirror(_) => {}
        KnotExpr::Sum(a, b) => {
            if a.is_trivial() || b.is_trivial() {
                found.push(ViolationKind::SumWithUnknot);
            }
        }
    }
    out.extend(found.into_iter().map(|kind| Violation {
        path: path.clone(),
        kind,
    }));
    match k {
        KnotExpr::Cable(_, _, c) => walk(c, format!("{path}.cable"), bounds, out),
        KnotExpr::Mirror(c) => walk(c, format!("{path}.mirror"), bounds, out),
        KnotExpr::Sum(a, b) => {
            walk(a, format!("{path}.left"), bounds, out);
            walk(b, format!("{path}.right"), bounds, out);
        }
        _ => {}
    }
}

fn check_params(p: i64, q: i64, bounds: &Bounds, found: &mut Vec<ViolationKind>) {
    let g = p.gcd(&q);
    if g != 1 {
        found.push(ViolationKind::NotCoprime { p, q, gcd: g });
    }
    if p.unsigned_abs() > bounds.max_abs_p.unsigned_abs() {
        found.push(ViolationKind::ParamTooLarge {
            value: p,
            bound: bounds.max_abs_p,
        });
    }
    if q > bounds.max_q {
        found.push(ViolationKind::ParamTooLarge {
            value: q,
            bound: bounds.max_q,
        });
    }
}

/// Pushes every mirror down to the torus leaves, where it flips the sign of
/// `p`. The result contains no `Mirror` nodes.
pub fn normalize_mirrors(k: &KnotExpr) -> KnotExpr {
    normalize(k, false)
}

fn normalize(k: &KnotExpr, flip: bool) -> KnotExpr {
    let s = if flip { -1 } else { 1 };
    match k {
        KnotExpr::Unknot => KnotExpr::Unknot,
        KnotExpr::Torus(p, q) => KnotExpr::Torus(s * p, *q),
        KnotExpr::Mirror(c) => normalize(c, !flip),
        KnotExpr::Sum(a, b) => KnotExpr::sum(normalize(a, flip), normalize(b, flip)),
        KnotExpr::Cable(p, q, c) => KnotExpr::cable(s * p, *q, normalize(c, flip)),
    }
}

/// Parses, validates and mirror-normalizes in one step.
pub fn prepare(text: &str, bounds: &Bounds) -> Result<KnotExpr, Error> {
    let k = parse(text)?;
    let v = validate_with(&k, bounds);
    if !v.is_empty() {
        return Err(Error::Invalid(v));
    }
    Ok(normalize_mirrors(&k))
}
