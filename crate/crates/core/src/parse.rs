//! Expression language for polynomials and vector fields.
//!
//! Precedence, tightest first: `^`, unary `-`, `*`, binary `+`/`-`.
//! Literals are integers, fractions `p/q`, and imaginary literals such as
//! `3i` or `1/2i`. A bare `i` is the imaginary unit unless it is declared as
//! a variable.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::TimeDepVectorField;
use crate::poly::{Poly, Vars};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(Scalar),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Pow(..) => 4,
            // Gaussian literals print in parentheses; a negative real prints
            // with a leading minus and binds like unary minus.
            Expr::Num(s) if s.is_real() && s.signed_parts().0 => 3,
            Expr::Num(_) | Expr::Var(_) => 5,
        }
    }

    pub fn to_poly(&self, vars: &Arc<Vars>) -> Result<Poly> {
        Ok(match self {
            Expr::Num(c) => Poly::constant(vars, c.clone()),
            Expr::Var(name) => Poly::var_named(vars, name)?,
            Expr::Neg(e) => -e.to_poly(vars)?,
            Expr::Add(a, b) => a.to_poly(vars)? + b.to_poly(vars)?,
            Expr::Sub(a, b) => a.to_poly(vars)? - b.to_poly(vars)?,
            Expr::Mul(a, b) => a.to_poly(vars)? * b.to_poly(vars)?,
            Expr::Pow(a, e) => a.to_poly(vars)?.pow(*e),
        })
    }
}

fn wrap(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
    if e.prec() < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(c) => write!(f, "{c}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(e) => {
                write!(f, "-")?;
                wrap(f, e, 3)
            }
            Expr::Add(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " + ")?;
                wrap(f, b, 2)
            }
            Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                write!(f, " - ")?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) => {
                wrap(f, a, 2)?;
                write!(f, "*")?;
                wrap(f, b, 3)
            }
            Expr::Pow(a, e) => {
                wrap(f, a, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Scalar),
    Ident(String),
    Op(char),
}

fn lex(text: &str, vars: &Vars) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            let end = digits(i);
            let num = &text[start..end];
            let mut value = Scalar::real(num.parse().map_err(|_| Error::Parse { pos: start, msg: "bad integer".into() })?);
            i = end;
            if i + 1 < bytes.len() && bytes[i] == b'/' && bytes[i + 1].is_ascii_digit() {
                let dend = digits(i + 1);
                let den: Scalar = Scalar::real(text[i + 1..dend].parse().map_err(|_| Error::Parse { pos: i + 1, msg: "bad integer".into() })?);
                let inv = den.inv().ok_or(Error::Parse { pos: i + 1, msg: "zero denominator".into() })?;
                value = &value * &inv;
                i = dend;
            }
            let ident_follows = i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_');
            if i < bytes.len() && bytes[i] == b'i' && !ident_follows {
                value = &value * &Scalar::i();
                i += 1;
            }
            out.push((start, Tok::Num(value)));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = &text[start..i];
            if name == "i" && vars.index_of("i").is_none() {
                out.push((start, Tok::Num(Scalar::i())));
            } else {
                out.push((start, Tok::Ident(name.to_string())));
            }
        } else if "+-*^(),".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Parse { pos: i, msg: format!("unexpected character `{c}`") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a Vars,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.into() })
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut lhs = self.product()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.product()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.product()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(n)) if n.is_real() && n.re.is_integer() => {
                    let e = n.re.to_integer().try_into().or_else(|_| self.err("exponent out of range"))?;
                    self.pos += 1;
                    if self.peek() == Some(&Tok::Op('^')) {
                        return self.err("chained exponents need parentheses");
                    }
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(name)) => {
                if self.vars.index_of(&name).is_none() {
                    return Err(Error::UnknownVariable(name));
                }
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {t:?}")),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parser<'a>(text: &str, vars: &'a Vars) -> Result<Parser<'a>> {
    Ok(Parser { toks: lex(text, vars)?, pos: 0, end: text.len(), vars })
}

pub fn parse_expression(text: &str, vars: &Vars) -> Result<Expr> {
    let mut p = parser(text, vars)?;
    let e = p.sum()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

pub fn parse_poly(text: &str, vars: &Arc<Vars>) -> Result<Poly> {
    parse_expression(text, vars)?.to_poly(vars)
}

/// A field written as `(p1, ..., pd)`; the outer parentheses are optional.
pub fn parse_field(text: &str, vars: &Arc<Vars>) -> Result<TimeDepVectorField> {
    let mut p = parser(text, vars)?;
    let parenthesised = p.peek() == Some(&Tok::Op('('));
    let mut comps = Vec::new();
    let start = p.pos;
    // Outer parentheses are ambiguous with a parenthesised first component,
    // so try the tuple reading first and fall back to a bare list.
    if parenthesised {
        p.pos += 1;
        let mut ok = true;
        loop {
            match p.sum() {
                Ok(e) => comps.push(e),
                Err(_) => {
                    ok = false;
                    break;
                }
            }
            if p.eat(',') {
                continue;
            }
            ok &= p.eat(')') && p.pos == p.toks.len();
            break;
        }
        if !ok {
            comps.clear();
            p.pos = start;
        }
    }
    if comps.is_empty() {
        loop {
            comps.push(p.sum()?);
            if !p.eat(',') {
                break;
            }
        }
        if p.pos != p.toks.len() {
            return p.err("trailing input");
        }
    }
    let polys = comps.iter().map(|e| e.to_poly(vars)).collect::<Result<Vec<_>>>()?;
    TimeDepVectorField::new(vars, polys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn vars() -> Arc<Vars> {
        Vars::chart_named(["x", "y"]).unwrap()
    }

    #[test]
    fn simple_expression() {
        let v = vars();
        let p = parse_poly("x^2 - 3/2*y", &v).unwrap();
        assert_eq!(p.to_string(), "x^2 - 3/2*y");
    }

    #[test]
    fn gaussian_coefficient() {
        let v = vars();
        let p = parse_poly("(1+1i)*t", &v).unwrap();
        assert_eq!(p.to_string(), "(1+1i)*t");
        assert_eq!(parse_poly("i*x", &v).unwrap(), parse_poly("1i*x", &v).unwrap());
    }

    #[test]
    fn expansion_is_canonical() {
        let v = vars();
        assert_eq!(parse_poly("x*(x+y)^2", &v).unwrap().to_string(), "x^3 + 2*x^2*y + x*y^2");
    }

    #[test]
    fn precedence() {
        let v = vars();
        assert_eq!(parse_poly("-x^2", &v).unwrap(), -(Poly::var(&v, 0).pow(2)));
        assert_eq!(parse_poly("2*-x", &v).unwrap(), Poly::var(&v, 0).scale(&Scalar::from_int(-2)));
        assert_eq!(parse_poly("1 - x + y", &v).unwrap().to_string(), "-x + y + 1");
    }

    #[test]
    fn errors_carry_position() {
        let v = vars();
        assert_eq!(parse_poly("x + z", &v), Err(Error::UnknownVariable("z".into())));
        match parse_poly("x + * y", &v) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_poly("(x", &v), Err(Error::Parse { pos: 2, .. })));
        assert!(matches!(parse_poly("x $", &v), Err(Error::Parse { pos: 2, .. })));
    }

    #[test]
    fn declared_i_is_a_variable() {
        let v = Vars::chart_named(["i", "j"]).unwrap();
        let p = parse_poly("i*j", &v).unwrap();
        assert_eq!(p.to_string(), "i*j");
    }

    #[test]
    fn fields() {
        let v = vars();
        let f = parse_field("(x + y, -t*x)", &v).unwrap();
        assert_eq!(f.to_string(), "(x + y, -x*t)");
        assert_eq!(parse_field("x + y, -t*x", &v).unwrap(), f);
        let g = parse_field("(x+1)*y, x", &v).unwrap();
        assert_eq!(g.component(0).to_string(), "x*y + y");
    }

    #[test]
    fn expr_display_respects_precedence() {
        let v = vars();
        for s in ["-(x + y)^2", "(x - y)*(1/2 + x)", "x - (y - 1)", "(-x)^3"] {
            let e = parse_expression(s, &v).unwrap();
            let again = parse_expression(&e.to_string(), &v).unwrap();
            assert_eq!(e.to_poly(&v).unwrap(), again.to_poly(&v).unwrap(), "{s} -> {e}");
        }
    }

    proptest! {
        #[test]
        fn canonical_round_trip(seed in any::<u64>()) {
            let v = vars();
            let mut rng = crate::gen::stream(seed, "parse");
            let p = crate::gen::poly(&mut rng, &v, &[0, 1, 2], 4, 5);
            let q = parse_poly(&p.to_string(), &v).unwrap();
            prop_assert_eq!(&q, &p);
            prop_assert_eq!(q.to_string(), p.to_string());
        }
    }
}
