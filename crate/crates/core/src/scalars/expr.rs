//! Shared parser for the textual forms of scalars and divided-power elements.
//!
//! Grammar: sums of products of factors; a factor is an integer, an identifier or a
//! parenthesized expression, optionally raised to `^n`, `^-n` or (divided power) `^(n)`.

use super::scalar::{ParameterRing, Scalar};
use super::ScalarError;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Expr {
    Int(i64),
    Ident(String),
    Neg(Box<Expr>),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, i64),
    DividedPow(String, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Int(i64),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ScalarError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1
            }
            '-' => {
                out.push(Token::Minus);
                i += 1
            }
            '*' => {
                out.push(Token::Star);
                i += 1
            }
            '^' => {
                out.push(Token::Caret);
                i += 1
            }
            '(' => {
                out.push(Token::Open);
                i += 1
            }
            ')' => {
                out.push(Token::Close);
                i += 1
            }
            d if d.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let n = s
                    .parse()
                    .map_err(|_| ScalarError::Parse(format!("integer out of range: {s}")))?;
                out.push(Token::Int(n));
            }
            a if a.is_ascii_alphabetic() || a == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(Token::Ident(chars[start..i].iter().collect()));
            }
            other => {
                return Err(ScalarError::Parse(format!(
                    "unexpected character {other:?}"
                )))
            }
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expect(&mut self, t: Token) -> Result<(), ScalarError> {
        match self.next() {
            Some(ref got) if *got == t => Ok(()),
            got => Err(ScalarError::Parse(format!("expected {t:?}, found {got:?}"))),
        }
    }

    fn sum(&mut self) -> Result<Expr, ScalarError> {
        let mut terms = Vec::new();
        let mut negate = false;
        if self.peek() == Some(&Token::Minus) {
            self.next();
            negate = true;
        } else if self.peek() == Some(&Token::Plus) {
            self.next();
        }
        loop {
            let t = self.product()?;
            terms.push(if negate { Expr::Neg(Box::new(t)) } else { t });
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    negate = false;
                }
                Some(Token::Minus) => {
                    self.next();
                    negate = true;
                }
                _ => break,
            }
        }
        Ok(if terms.len() == 1 {
            terms.pop().unwrap()
        } else {
            Expr::Sum(terms)
        })
    }

    fn product(&mut self) -> Result<Expr, ScalarError> {
        let mut factors = vec![self.factor()?];
        while self.peek() == Some(&Token::Star) {
            self.next();
            factors.push(self.factor()?);
        }
        Ok(if factors.len() == 1 {
            factors.pop().unwrap()
        } else {
            Expr::Product(factors)
        })
    }

    fn factor(&mut self) -> Result<Expr, ScalarError> {
        let atom = match self.next() {
            Some(Token::Int(n)) => Expr::Int(n),
            Some(Token::Ident(s)) => Expr::Ident(s),
            Some(Token::Open) => {
                let e = self.sum()?;
                self.expect(Token::Close)?;
                e
            }
            Some(Token::Minus) => return Ok(Expr::Neg(Box::new(self.factor()?))),
            got => return Err(ScalarError::Parse(format!("unexpected token {got:?}"))),
        };
        if self.peek() != Some(&Token::Caret) {
            return Ok(atom);
        }
        self.next();
        match self.next() {
            Some(Token::Int(n)) => Ok(Expr::Pow(Box::new(atom), n)),
            Some(Token::Minus) => match self.next() {
                Some(Token::Int(n)) => Ok(Expr::Pow(Box::new(atom), -n)),
                got => Err(ScalarError::Parse(format!("bad exponent {got:?}"))),
            },
            Some(Token::Open) => {
                let n = match self.next() {
                    Some(Token::Int(n)) => n,
                    got => return Err(ScalarError::Parse(format!("bad divided power {got:?}"))),
                };
                self.expect(Token::Close)?;
                match atom {
                    Expr::Ident(name) => Ok(Expr::DividedPow(name, n as u32)),
                    _ => Err(ScalarError::Parse(
                        "divided powers apply to indeterminates only".into(),
                    )),
                }
            }
            got => Err(ScalarError::Parse(format!("bad exponent {got:?}"))),
        }
    }
}

pub(crate) fn parse(text: &str) -> Result<Expr, ScalarError> {
    let tokens = tokenize(text)?;
    if tokens.is_empty() {
        return Err(ScalarError::Parse("empty expression".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let e = p.sum()?;
    if p.pos != p.tokens.len() {
        return Err(ScalarError::Parse(format!(
            "trailing input at token {}",
            p.pos
        )));
    }
    Ok(e)
}

/// Target algebra for expression evaluation.
pub(crate) trait ExprContext {
    type Value: Clone;
    fn int(&self, n: i64) -> Self::Value;
    fn ident(&self, name: &str) -> Result<Self::Value, ScalarError>;
    fn divided_power(&self, name: &str, k: u32) -> Result<Self::Value, ScalarError>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn invert(&self, a: &Self::Value) -> Result<Self::Value, ScalarError>;
}

impl Expr {
    pub(crate) fn eval<C: ExprContext>(&self, ctx: &C) -> Result<C::Value, ScalarError> {
        Ok(match self {
            Expr::Int(n) => ctx.int(*n),
            Expr::Ident(name) => ctx.ident(name)?,
            Expr::Neg(e) => ctx.neg(&e.eval(ctx)?),
            Expr::Sum(terms) => {
                let mut acc = terms[0].eval(ctx)?;
                for t in &terms[1..] {
                    acc = ctx.add(&acc, &t.eval(ctx)?);
                }
                acc
            }
            Expr::Product(factors) => {
                let mut acc = factors[0].eval(ctx)?;
                for f in &factors[1..] {
                    acc = ctx.mul(&acc, &f.eval(ctx)?);
                }
                acc
            }
            Expr::Pow(base, n) => {
                let b = base.eval(ctx)?;
                let b = if *n < 0 { ctx.invert(&b)? } else { b };
                let mut acc = ctx.int(1);
                for _ in 0..n.unsigned_abs() {
                    acc = ctx.mul(&acc, &b);
                }
                acc
            }
            Expr::DividedPow(name, k) => ctx.divided_power(name, *k)?,
        })
    }
}

pub(crate) struct ScalarContext<'a> {
    pub ring: &'a ParameterRing,
}

impl ExprContext for ScalarContext<'_> {
    type Value = Scalar;

    fn int(&self, n: i64) -> Scalar {
        self.ring.int(n)
    }

    fn ident(&self, name: &str) -> Result<Scalar, ScalarError> {
        if name == "z" {
            let z = self
                .ring
                .field()
                .generator()
                .ok_or_else(|| ScalarError::UnknownGenerator("z (prime field)".into()))?;
            return Ok(Scalar::constant(z));
        }
        self.ring.var(name)
    }

    fn divided_power(&self, name: &str, _k: u32) -> Result<Scalar, ScalarError> {
        Err(ScalarError::Parse(format!(
            "divided power of parameter {name}"
        )))
    }

    fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a + b
    }

    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }

    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }

    fn invert(&self, a: &Scalar) -> Result<Scalar, ScalarError> {
        a.invert()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested() {
        let e = parse("2*(1+eps)^2 - u1^(2)*th1").unwrap();
        match e {
            Expr::Sum(t) => assert_eq!(t.len(), 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse("2 + ").is_err());
        assert!(parse("eps^").is_err());
        assert!(parse("(1+eps)^(2)").is_err());
        assert!(parse("a $ b").is_err());
        assert!(parse("").is_err());
    }
}
