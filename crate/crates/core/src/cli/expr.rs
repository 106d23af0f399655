//! Point expressions.
//!
//! Accepted forms: a rational pair `(x, y)`, a coefficient vector
//! `[c0, c1, …]` in the power basis of `ζ_m`, arithmetic over `phi`, `i`,
//! `z` (= `ζ_m`), `lambda`, `sqrt3`, `sqrt(2+phi)` and `sqrt(3)`, and the
//! named constants `P0, P1, …, Q, R, R', S` (4/5) and `C, H.v1 … H.v6`
//! (11/12). Every printed form of a [`CycloNum`] parses back to itself.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::casestudy::{GoldenContext, HexagonContext};
use crate::cyclo::{CycloNum, Field};
use crate::error::{Error, Result};

/// Source text of a point, resolved against a field on demand.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointExpr {
    pub source: String,
}

impl PointExpr {
    pub fn new(source: impl Into<String>) -> PointExpr {
        PointExpr { source: source.into() }
    }

    pub fn eval(&self, field: &Field) -> Result<CycloNum> {
        parse_point(field, &self.source)
    }
}

pub fn parse_point(field: &Field, text: &str) -> Result<CycloNum> {
    let mut p = Parser { src: text, pos: 0, field };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos < text.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    field: &'a Field,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{c}'")))
        }
    }

    fn expr(&mut self) -> Result<CycloNum> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<CycloNum> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let at = self.pos;
                let d = self.unary()?;
                acc = acc.div(&d).map_err(|_| Error::Parse { pos: at, msg: "division by zero".into() })?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<CycloNum> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let neg = self.eat('-');
            let at = self.pos;
            let n = self.integer()?.to_u32().ok_or_else(|| Error::Parse { pos: at, msg: "exponent too large".into() })?;
            let v = base.pow(n);
            return if neg { v.inverse().map_err(|_| Error::Parse { pos: at, msg: "zero to a negative power".into() }) } else { Ok(v) };
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().map_err(|_| Error::Parse { pos: start, msg: "expected an integer".into() })
    }

    fn number(&mut self) -> Result<BigRational> {
        let start = self.pos;
        let ip = self.integer()?;
        if self.peek() == Some('.') {
            self.pos += 1;
            let fs = self.pos;
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let frac = &self.src[fs..self.pos];
            if frac.is_empty() {
                return Err(Error::Parse { pos: start, msg: "bad decimal".into() });
            }
            let scale = num_traits::pow(BigInt::from(10), frac.len());
            let f: BigInt = frac.parse().expect("digits");
            return Ok(BigRational::new(ip * &scale + f, scale));
        }
        Ok(BigRational::from_integer(ip))
    }

    fn ident(&mut self) -> String {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '\'') {
            self.pos += 1;
        }
        self.src[start..self.pos].to_string()
    }

    fn atom(&mut self) -> Result<CycloNum> {
        self.skip_ws();
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => Ok(self.field.from_rational(&self.number()?)),
            Some('(') => {
                self.pos += 1;
                let x = self.expr()?;
                if self.eat(',') {
                    let y = self.expr()?;
                    self.expect(')')?;
                    return Ok(&x + &(&self.field.i_unit() * &y));
                }
                self.expect(')')?;
                Ok(x)
            }
            Some('[') => {
                self.pos += 1;
                let mut acc = self.field.zero();
                let mut j = 0i64;
                if !self.eat(']') {
                    loop {
                        let c = self.expr()?;
                        acc = &acc + &(&c * &self.field.zeta_pow(j));
                        j += 1;
                        if self.eat(']') {
                            break;
                        }
                        self.expect(',')?;
                    }
                }
                if j as usize != self.field.degree() {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("expected {} coefficients, got {j}", self.field.degree()),
                    });
                }
                Ok(acc)
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                self.resolve(&name, start)
            }
            _ => Err(self.err("expected a number, name, '(' or '['")),
        }
    }

    fn resolve(&mut self, name: &str, start: usize) -> Result<CycloNum> {
        let f = self.field;
        let ctx_err = |e: Error| Error::Parse { pos: start, msg: format!("'{name}': {e}") };
        match name {
            "i" => Ok(f.i_unit()),
            "z" => Ok(f.zeta_pow(1)),
            "lambda" => Ok(f.lambda()),
            "phi" => f.golden().map_err(ctx_err),
            "sqrt3" => f.sqrt3().map_err(ctx_err),
            "sqrt" => {
                self.expect('(')?;
                let arg = self.expr()?;
                self.expect(')')?;
                if f.q() == 5 && arg == &f.from_integer(2) + &f.golden().map_err(ctx_err)? {
                    return f.sqrt_two_plus_phi().map_err(ctx_err);
                }
                if arg == f.from_integer(3) {
                    return f.sqrt3().map_err(ctx_err);
                }
                Err(Error::Parse { pos: start, msg: "sqrt supports only sqrt(2+phi) and sqrt(3)".into() })
            }
            _ => {
                let golden = matches!(name, "Q" | "R" | "R'" | "S") || is_indexed(name, "P");
                let hexagon = name == "C" || is_indexed(name, "H.v");
                if golden {
                    if (f.p(), f.q()) != (4, 5) {
                        return Err(Error::Parse { pos: start, msg: format!("'{name}' is defined for alpha 4/5 only") });
                    }
                    GoldenContext::new().map_err(ctx_err)?.named(name)
                        .ok_or_else(|| Error::Parse { pos: start, msg: format!("unknown constant '{name}'") })
                } else if hexagon {
                    if (f.p(), f.q()) != (11, 12) {
                        return Err(Error::Parse { pos: start, msg: format!("'{name}' is defined for alpha 11/12 only") });
                    }
                    HexagonContext::new().map_err(ctx_err)?.named(name)
                        .ok_or_else(|| Error::Parse { pos: start, msg: format!("unknown constant '{name}'") })
                } else {
                    Err(Error::Parse { pos: start, msg: format!("unknown name '{name}'") })
                }
            }
        }
    }
}

fn is_indexed(name: &str, prefix: &str) -> bool {
    name.strip_prefix(prefix).is_some_and(|r| !r.is_empty() && r.chars().all(|c| c.is_ascii_digit()))
}

/// `p/q` as used by `--alpha`.
pub fn parse_alpha(text: &str) -> Result<(u32, u32)> {
    let err = || Error::Parse { pos: 0, msg: format!("alpha must be p/q, got '{text}'") };
    let (p, q) = text.trim().split_once('/').ok_or_else(err)?;
    Ok((p.trim().parse().map_err(|_| err())?, q.trim().parse().map_err(|_| err())?))
}

/// `x0,y0,x1,y1` with rational entries.
pub fn parse_box(text: &str) -> Result<crate::geometry::RationalBox> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(Error::Parse { pos: 0, msg: "box must be x0,y0,x1,y1".into() });
    }
    let mut v = Vec::new();
    let mut pos = 0;
    for s in parts {
        v.push(crate::cyclo::parse_rational_str(s).map_err(|_| Error::Parse { pos, msg: format!("bad number '{s}'") })?);
        pos += s.len() + 1;
    }
    let [x0, y0, x1, y1]: [BigRational; 4] = v.try_into().expect("four parts");
    crate::geometry::RationalBox::new(x0, y0, x1, y1)
}

/// A positive rational grid step.
pub fn parse_step(text: &str) -> Result<BigRational> {
    let r = crate::cyclo::parse_rational_str(text)?;
    if r <= BigRational::zero() {
        return Err(Error::Parameter("grid step must be positive".into()));
    }
    Ok(r)
}
