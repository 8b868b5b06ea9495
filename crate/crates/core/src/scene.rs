//! Scene records: one JSON object per line, tagged by "type". Unknown fields
//! are rejected; emission uses a fixed key order so files diff cleanly and
//! parse∘emit is the identity on canonical records.

use serde::Deserialize;

use crate::crooked::CrookedHalfspace;
use crate::error::{GeomError, Result};
use crate::lines::Line;
use crate::tol::Tol;
use crate::vec::{Point, Vec3};

fn default_chart() -> String {
    "std".to_string()
}

fn fmt3(v: [f64; 3]) -> String {
    format!("[{},{},{}]", v[0], v[1], v[2])
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct HalfspaceRecord {
    pub vertex: [f64; 3],
    pub director: [f64; 3],
    #[serde(default = "default_chart")]
    pub chart: String,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LineRecord {
    pub base: [f64; 3],
    pub dir: [f64; 3],
    #[serde(default = "default_chart")]
    pub chart: String,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PlaneRecord {
    pub origin: [f64; 3],
    pub u: [f64; 3],
    pub v: [f64; 3],
    #[serde(default = "default_chart")]
    pub chart: String,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CoeffExprs {
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct FoliationRecord {
    pub director_family: String,
    pub t_range: [f64; 2],
    pub coeffs: CoeffExprs,
    pub p0: [f64; 3],
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SceneRecord {
    Halfspace(HalfspaceRecord),
    Line(LineRecord),
    Plane(PlaneRecord),
    Foliation(FoliationRecord),
}

impl SceneRecord {
    /// Parse one record line. Dispatch on "type" by hand so unknown fields
    /// can still be rejected per variant.
    pub fn parse(line: &str) -> Result<SceneRecord> {
        let value: serde_json::Value = serde_json::from_str(line)
            .map_err(|e| GeomError::InvalidInput(format!("bad record JSON: {e}")))?;
        let ty = value
            .get("type")
            .and_then(|t| t.as_str())
            .ok_or_else(|| GeomError::InvalidInput("record needs a \"type\" field".into()))?
            .to_string();
        let mut obj = value
            .as_object()
            .ok_or_else(|| GeomError::InvalidInput("record must be a JSON object".into()))?
            .clone();
        obj.remove("type");
        let rest = serde_json::Value::Object(obj);
        let invalid = |e: serde_json::Error| GeomError::InvalidInput(format!("bad {ty} record: {e}"));
        let rec = match ty.as_str() {
            "halfspace" => SceneRecord::Halfspace(serde_json::from_value(rest).map_err(invalid)?),
            "line" => SceneRecord::Line(serde_json::from_value(rest).map_err(invalid)?),
            "plane" => SceneRecord::Plane(serde_json::from_value(rest).map_err(invalid)?),
            "foliation" => SceneRecord::Foliation(serde_json::from_value(rest).map_err(invalid)?),
            other => {
                return Err(GeomError::InvalidInput(format!("unknown record type '{other}'")))
            }
        };
        rec.validate()?;
        Ok(rec)
    }

    fn validate(&self) -> Result<()> {
        let finite = |v: &[f64; 3]| v.iter().all(|x| x.is_finite());
        let chart_ok = |c: &str| c == "std";
        let ok = match self {
            SceneRecord::Halfspace(r) => finite(&r.vertex) && finite(&r.director) && chart_ok(&r.chart),
            SceneRecord::Line(r) => finite(&r.base) && finite(&r.dir) && chart_ok(&r.chart),
            SceneRecord::Plane(r) => {
                finite(&r.origin) && finite(&r.u) && finite(&r.v) && chart_ok(&r.chart)
            }
            SceneRecord::Foliation(r) => {
                r.t_range.iter().all(|x| x.is_finite())
                    && finite(&r.p0)
                    && r.steps >= 2
                    && r.director_family == "orthogonal"
            }
        };
        if ok {
            Ok(())
        } else {
            Err(GeomError::InvalidInput("record fails validation".into()))
        }
    }

    /// Canonical single-line form with stable key order.
    pub fn emit(&self) -> String {
        match self {
            SceneRecord::Halfspace(r) => format!(
                "{{\"type\":\"halfspace\",\"vertex\":{},\"director\":{},\"chart\":\"{}\"}}",
                fmt3(r.vertex),
                fmt3(r.director),
                r.chart
            ),
            SceneRecord::Line(r) => format!(
                "{{\"type\":\"line\",\"base\":{},\"dir\":{},\"chart\":\"{}\"}}",
                fmt3(r.base),
                fmt3(r.dir),
                r.chart
            ),
            SceneRecord::Plane(r) => format!(
                "{{\"type\":\"plane\",\"origin\":{},\"u\":{},\"v\":{},\"chart\":\"{}\"}}",
                fmt3(r.origin),
                fmt3(r.u),
                fmt3(r.v),
                r.chart
            ),
            SceneRecord::Foliation(r) => format!(
                "{{\"type\":\"foliation\",\"director_family\":\"{}\",\"t_range\":[{},{}],\"coeffs\":{{\"a\":\"{}\",\"b\":\"{}\"}},\"p0\":{},\"steps\":{}}}",
                r.director_family, r.t_range[0], r.t_range[1], r.coeffs.a, r.coeffs.b,
                fmt3(r.p0), r.steps
            ),
        }
    }
}

impl HalfspaceRecord {
    pub fn to_halfspace(&self, tol: Tol) -> Result<CrookedHalfspace> {
        CrookedHalfspace::new(
            Point::std(self.vertex[0], self.vertex[1], self.vertex[2]),
            &Vec3::std(self.director[0], self.director[1], self.director[2]),
            tol,
        )
    }
}

impl LineRecord {
    pub fn to_line(&self) -> Result<Line> {
        Line::new(
            Point::std(self.base[0], self.base[1], self.base[2]),
            Vec3::std(self.dir[0], self.dir[1], self.dir[2]),
        )
    }
}

/// Coefficient expressions over t: constants, `t`, `exp`, `cosh`, `sinh`,
/// `+`, `*`, parentheses and unary minus. Parsed once into a small AST.
#[derive(Debug, Clone, PartialEq)]
pub enum CoeffExpr {
    Const(f64),
    T,
    Neg(Box<CoeffExpr>),
    Add(Box<CoeffExpr>, Box<CoeffExpr>),
    Mul(Box<CoeffExpr>, Box<CoeffExpr>),
    Exp(Box<CoeffExpr>),
    Cosh(Box<CoeffExpr>),
    Sinh(Box<CoeffExpr>),
}

impl CoeffExpr {
    pub fn parse(src: &str) -> Result<CoeffExpr> {
        let mut p = ExprParser { src: src.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(GeomError::InvalidInput(format!(
                "trailing input in expression '{src}' at byte {}",
                p.pos
            )));
        }
        Ok(e)
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self {
            CoeffExpr::Const(c) => *c,
            CoeffExpr::T => t,
            CoeffExpr::Neg(e) => -e.eval(t),
            CoeffExpr::Add(a, b) => a.eval(t) + b.eval(t),
            CoeffExpr::Mul(a, b) => a.eval(t) * b.eval(t),
            CoeffExpr::Exp(e) => e.eval(t).exp(),
            CoeffExpr::Cosh(e) => e.eval(t).cosh(),
            CoeffExpr::Sinh(e) => e.eval(t).sinh(),
        }
    }
}

struct ExprParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> ExprParser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<CoeffExpr> {
        let mut lhs = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = CoeffExpr::Add(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<CoeffExpr> {
        let mut lhs = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            let rhs = self.factor()?;
            lhs = CoeffExpr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<CoeffExpr> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(CoeffExpr::Neg(Box::new(self.factor()?)))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(GeomError::InvalidInput("expected ')'".into()));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => self.ident(),
            _ => Err(GeomError::InvalidInput("unexpected end of expression".into())),
        }
    }

    fn number(&mut self) -> Result<CoeffExpr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_digit()
                || self.src[self.pos] == b'.'
                || self.src[self.pos] == b'e'
                || self.src[self.pos] == b'E'
                || ((self.src[self.pos] == b'+' || self.src[self.pos] == b'-')
                    && self.pos > start
                    && matches!(self.src[self.pos - 1], b'e' | b'E')))
        {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse::<f64>()
            .map(CoeffExpr::Const)
            .map_err(|_| GeomError::InvalidInput(format!("bad number '{text}'")))
    }

    fn ident(&mut self) -> Result<CoeffExpr> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        match name.as_str() {
            "t" => Ok(CoeffExpr::T),
            "exp" | "cosh" | "sinh" => {
                if self.peek() != Some(b'(') {
                    return Err(GeomError::InvalidInput(format!("{name} needs parentheses")));
                }
                self.pos += 1;
                let arg = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(GeomError::InvalidInput("expected ')'".into()));
                }
                self.pos += 1;
                let b = Box::new(arg);
                Ok(match name.as_str() {
                    "exp" => CoeffExpr::Exp(b),
                    "cosh" => CoeffExpr::Cosh(b),
                    _ => CoeffExpr::Sinh(b),
                })
            }
            other => Err(GeomError::InvalidInput(format!("unknown identifier '{other}'"))),
        }
    }
}
