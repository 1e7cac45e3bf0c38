//! The expression language shared by algebra elements and central
//! polynomials.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nat)?
//! base   := scalar | ident | '(' expr ')'
//! scalar := integer | integer '/' integer | 'zeta' '(' integer ',' ['-'] integer ')' | 'i'
//! ```
//!
//! `i` is shorthand for `zeta(4,1)`, so it cannot name a generator.
//!
//! Juxtaposition is not multiplication: `xy` is a single identifier.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub enum ScalarLit {
    Rational(Rational),
    Zeta { order: u32, exponent: i64 },
}

impl ScalarLit {
    pub fn to_scalar<S: Scalar>(&self, pos: usize) -> Result<S> {
        match self {
            ScalarLit::Rational(r) => Ok(S::from_rational(r)),
            ScalarLit::Zeta { order, exponent } => S::root_of_unity(*order, *exponent).ok_or_else(|| Error::Syntax {
                pos,
                msg: format!("zeta({order},{exponent}) is not in the coefficient field"),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Scalar(ScalarLit, usize),
    Ident(String, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

/// Target ring for [`Expr::eval`].
pub trait EvalRing {
    type Value: Clone;
    fn scalar(&self, lit: &ScalarLit, pos: usize) -> Result<Self::Value>;
    fn ident(&self, name: &str, pos: usize) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn one(&self) -> Self::Value;

    fn pow(&self, a: &Self::Value, mut e: u32) -> Self::Value {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

impl Expr {
    pub fn eval<R: EvalRing>(&self, ring: &R) -> Result<R::Value> {
        Ok(match self {
            Expr::Scalar(lit, pos) => ring.scalar(lit, *pos)?,
            Expr::Ident(name, pos) => ring.ident(name, *pos)?,
            Expr::Neg(a) => ring.neg(&a.eval(ring)?),
            Expr::Add(a, b) => ring.add(&a.eval(ring)?, &b.eval(ring)?),
            Expr::Sub(a, b) => ring.sub(&a.eval(ring)?, &b.eval(ring)?),
            Expr::Mul(a, b) => ring.mul(&a.eval(ring)?, &b.eval(ring)?),
            Expr::Pow(a, e) => ring.pow(&a.eval(ring)?, *e),
        })
    }

    /// Identifiers appearing in the expression, in order of first use.
    pub fn identifiers(&self) -> Vec<String> {
        fn walk(e: &Expr, out: &mut Vec<String>) {
            match e {
                Expr::Scalar(..) => {}
                Expr::Ident(n, _) => {
                    if !out.contains(n) {
                        out.push(n.clone());
                    }
                }
                Expr::Neg(a) | Expr::Pow(a, _) => walk(a, out),
                Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Comma,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            ',' => Tok::Comma,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            d if d.is_ascii_digit() => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((Tok::Int(text[start..i].parse().unwrap()), start));
                continue;
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
                continue;
            }
            other => return Err(Error::Syntax { pos: i, msg: format!("unexpected character `{other}`") }),
        };
        out.push((tok, start));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, p)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let pos = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => Err(Error::Syntax { pos, msg: format!("expected {what}") }),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let lead = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Some(true)
            }
            Some(Tok::Plus) => {
                self.bump();
                Some(false)
            }
            _ => None,
        };
        let mut acc = self.term()?;
        if lead == Some(true) {
            acc = Expr::Neg(Box::new(acc));
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            acc = Expr::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expr> {
        let base = self.base()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => {
                let e: u32 = n.try_into().map_err(|_| Error::Syntax { pos, msg: "exponent too large".into() })?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            Some(Tok::Minus) => Err(Error::NegativeExponent(pos)),
            _ => Err(Error::Syntax { pos, msg: "expected a natural-number exponent".into() }),
        }
    }

    fn signed_int(&mut self) -> Result<BigInt> {
        let neg = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(if neg { -n } else { n }),
            _ => Err(Error::Syntax { pos, msg: "expected an integer".into() }),
        }
    }

    fn base(&mut self) -> Result<Expr> {
        let pos = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let dpos = self.here();
                    let Some(Tok::Int(d)) = self.bump() else {
                        return Err(Error::Syntax { pos: dpos, msg: "expected a denominator".into() });
                    };
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    return Ok(Expr::Scalar(ScalarLit::Rational(Rational::new(n, d)), pos));
                }
                Ok(Expr::Scalar(ScalarLit::Rational(Rational::from_integer(n)), pos))
            }
            Some(Tok::Ident(name)) if name == "zeta" && self.peek() == Some(&Tok::LParen) => {
                self.bump();
                let mpos = self.here();
                let m = self.signed_int()?;
                if !m.is_positive() {
                    return Err(Error::Syntax { pos: mpos, msg: "root-of-unity order must be positive".into() });
                }
                self.expect(Tok::Comma, "`,`")?;
                let kpos = self.here();
                let k = self.signed_int()?;
                self.expect(Tok::RParen, "`)`")?;
                let order: u32 = m.try_into().map_err(|_| Error::Syntax { pos: mpos, msg: "order too large".into() })?;
                let exponent: i64 = k.try_into().map_err(|_| Error::Syntax { pos: kpos, msg: "exponent too large".into() })?;
                Ok(Expr::Scalar(ScalarLit::Zeta { order, exponent }, pos))
            }
            Some(Tok::Ident(name)) if name == "i" => Ok(Expr::Scalar(ScalarLit::Zeta { order: 4, exponent: 1 }, pos)),
            Some(Tok::Ident(name)) => Ok(Expr::Ident(name, pos)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(e)
            }
            Some(_) => Err(Error::Syntax { pos, msg: "expected a scalar, identifier or `(`".into() }),
            None => Err(Error::Syntax { pos, msg: "unexpected end of input".into() }),
        }
    }
}

pub fn parse(text: &str) -> Result<Expr> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len() };
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(Error::Syntax { pos: p.here(), msg: "unexpected trailing input".into() });
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence_and_leading_sign() {
        let e = parse("-x + 2*y^3").unwrap();
        assert_eq!(
            e,
            Expr::Add(
                Box::new(Expr::Neg(Box::new(Expr::Ident("x".into(), 1)))),
                Box::new(Expr::Mul(
                    Box::new(Expr::Scalar(ScalarLit::Rational(Rational::from_integer(2.into())), 5)),
                    Box::new(Expr::Pow(Box::new(Expr::Ident("y".into(), 7)), 3)),
                )),
            )
        );
    }

    #[test]
    fn scalar_literals() {
        assert!(matches!(parse("3/4").unwrap(), Expr::Scalar(ScalarLit::Rational(_), 0)));
        assert_eq!(parse("zeta(6,-1)").unwrap(), Expr::Scalar(ScalarLit::Zeta { order: 6, exponent: -1 }, 0));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("x^-2"), Err(Error::NegativeExponent(2)));
        assert!(matches!(parse("x + "), Err(Error::Syntax { pos: 4, .. })));
        assert!(matches!(parse("x $ y"), Err(Error::Syntax { pos: 2, .. })));
        assert!(matches!(parse("(x"), Err(Error::Syntax { .. })));
        assert_eq!(parse("1/0"), Err(Error::DivisionByZero));
    }

    #[test]
    fn juxtaposition_is_one_identifier() {
        assert_eq!(parse("xy").unwrap(), Expr::Ident("xy".into(), 0));
    }
}
