//! Tiny evaluator for the closed-form matrix-element strings used by
//! [`crate::tables`].
//!
//! Grammar: `expr := term (('+'|'-') term)*`, `term := unary ('*' unary)*`,
//! `unary := ('+'|'-')* power`, `power := atom ('^' uint)?`,
//! `atom := number | ident | '(' expr ')'`.
//!
//! Identifiers: `i`, `m`, `w` (ω), `W` (ω + m), `p1..p3`, two-index
//! products `pab`, `p1122` (p1² + p2²), `z` (p1 + i p2), `zc` (p1 − i p2),
//! `sqrt2`, `sqrt3`.

use crate::linalg::C64;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ExprError {
    #[error("unexpected character {0:?} at {1}")]
    BadChar(char, usize),
    #[error("unknown identifier {0:?}")]
    UnknownIdent(String),
    #[error("unexpected end of expression")]
    Eof,
    #[error("trailing input at {0}")]
    Trailing(usize),
    #[error("expected {0}")]
    Expected(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, ExprError> {
    let b: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let ch = b[i];
        if ch.is_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || ch == '.' {
            let st = i;
            while i < b.len() && (b[i].is_ascii_digit() || b[i] == '.') {
                i += 1;
            }
            let t: String = b[st..i].iter().collect();
            out.push(Tok::Num(t.parse().map_err(|_| ExprError::BadChar(ch, st))?));
        } else if ch.is_ascii_alphabetic() {
            let st = i;
            while i < b.len() && b[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(b[st..i].iter().collect()));
        } else if "+-*^()".contains(ch) {
            out.push(Tok::Op(ch));
            i += 1;
        } else {
            return Err(ExprError::BadChar(ch, i));
        }
    }
    Ok(out)
}

/// Values bound to the identifiers.
#[derive(Debug, Clone, Copy)]
pub struct Env {
    pub p: [f64; 3],
    pub m: f64,
}

impl Env {
    pub fn new(p: [f64; 3], m: f64) -> Self {
        Env { p, m }
    }

    fn lookup(&self, id: &str) -> Result<C64, ExprError> {
        let p = self.p;
        let w = (p.iter().map(|x| x * x).sum::<f64>() + self.m * self.m).sqrt();
        let v = match id {
            "i" => C64::new(0.0, 1.0),
            "m" => C64::new(self.m, 0.0),
            "w" => C64::new(w, 0.0),
            "W" => C64::new(w + self.m, 0.0),
            "z" => C64::new(p[0], p[1]),
            "zc" => C64::new(p[0], -p[1]),
            "sqrt2" => C64::new(2f64.sqrt(), 0.0),
            "sqrt3" => C64::new(3f64.sqrt(), 0.0),
            "p1122" => C64::new(p[0] * p[0] + p[1] * p[1], 0.0),
            _ => {
                let d: Vec<usize> = id
                    .strip_prefix('p')
                    .filter(|r| !r.is_empty() && r.len() <= 2)
                    .map(|r| r.chars().filter_map(|ch| ch.to_digit(10)).map(|x| x as usize).collect())
                    .unwrap_or_default();
                if d.is_empty() || d.len() != id.len() - 1 || d.iter().any(|&x| !(1..=3).contains(&x)) {
                    return Err(ExprError::UnknownIdent(id.to_string()));
                }
                C64::new(d.iter().map(|&x| p[x - 1]).product(), 0.0)
            }
        };
        Ok(v)
    }
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    env: &'a Env,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<C64, ExprError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc += self.term()?;
            } else if self.eat('-') {
                acc -= self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<C64, ExprError> {
        let mut acc = self.unary()?;
        while self.eat('*') {
            acc *= self.unary()?;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<C64, ExprError> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<C64, ExprError> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) if n.fract() == 0.0 && n >= 0.0 => {
                    self.pos += 1;
                    return Ok(base.powi(n as i32));
                }
                _ => return Err(ExprError::Expected("non-negative integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<C64, ExprError> {
        let t = self.toks.get(self.pos).cloned().ok_or(ExprError::Eof)?;
        self.pos += 1;
        match t {
            Tok::Num(x) => Ok(C64::new(x, 0.0)),
            Tok::Ident(id) => self.env.lookup(&id),
            Tok::Op('(') => {
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(ExprError::Expected("')'"));
                }
                Ok(v)
            }
            Tok::Op(_) => Err(ExprError::Expected("operand")),
        }
    }
}

pub fn eval(src: &str, env: &Env) -> Result<C64, ExprError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, env };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(ExprError::Trailing(p.pos));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str, p: [f64; 3], m: f64) -> C64 {
        eval(s, &Env::new(p, m)).unwrap()
    }

    #[test]
    fn arithmetic_and_precedence() {
        let e = [0.0; 3];
        assert_eq!(ev("1+2*3", e, 1.0), C64::new(7.0, 0.0));
        assert_eq!(ev("-2^2", e, 1.0), C64::new(-4.0, 0.0));
        assert_eq!(ev("(1+i)^2", e, 1.0), C64::new(0.0, 2.0));
        assert_eq!(ev("--i", e, 1.0), C64::new(0.0, 1.0));
    }

    #[test]
    fn momentum_symbols() {
        let p = [0.3, -0.7, 1.1];
        let m = 0.9;
        let w = (0.09f64 + 0.49 + 1.21 + 0.81).sqrt();
        assert!((ev("W", p, m).re - (w + m)).abs() < 1e-15);
        assert!((ev("z*zc", p, m) - ev("p1122", p, m)).norm() < 1e-15);
        assert!((ev("p13", p, m).re - 0.33).abs() < 1e-15);
        assert!((ev("zc^2", p, m) - C64::new(0.3, 0.7).powi(2)).norm() < 1e-15);
        assert!((ev("w*w-m^2-p11-p22-p33", p, m)).norm() < 1e-14);
    }

    #[test]
    fn rejects_garbage() {
        let env = Env::new([0.0; 3], 1.0);
        assert!(matches!(eval("p4", &env), Err(ExprError::UnknownIdent(_))));
        assert!(matches!(eval("q", &env), Err(ExprError::UnknownIdent(_))));
        assert!(eval("(1+2", &env).is_err());
        assert!(eval("1 2", &env).is_err());
        assert!(eval("1$", &env).is_err());
        assert!(eval("", &env).is_err());
    }
}
