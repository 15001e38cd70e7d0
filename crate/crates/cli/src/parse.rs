//! Polynomial expressions: literals (`3`, `5/2`), variables, `+ - * ^`,
//! parentheses. Multiplication must be written out.

use std::fmt;

use amoh_core::jacobian::BiPoly;
use amoh_core::{Poly, Rational};
use thiserror::Error;

/// Bound on the product of nested exponents along any path of the expression.
pub const MAX_EXPONENT_PRODUCT: u64 = 10_000;

/// Bound on nesting of parentheses and unary minus.
pub const MAX_DEPTH: usize = 256;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub expected: Vec<String>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "parse error at position {}: expected {}", self.position, self.expected.join(" or "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Literal(Rational),
    Var(String),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
    vars: &'a [&'a str],
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError { position: self.pos, expected: expected.iter().map(|s| s.to_string()).collect() }
    }

    fn descend(&mut self) -> Result<(), ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.error(&["shallower nesting"]));
        }
        Ok(())
    }

    fn operand_expected(&self) -> Vec<String> {
        let mut v = vec!["number".to_string(), "'('".to_string(), "'-'".to_string()];
        v.extend(self.vars.iter().map(|x| format!("'{x}'")));
        v
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(b'-') => {
                    self.pos += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            self.descend()?;
            let inner = self.unary()?;
            self.depth -= 1;
            return Ok(Expr::Neg(Box::new(inner)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return Err(self.error(&["nonnegative integer exponent"]));
        }
        let exp: u32 = match digits.parse() {
            Ok(e) if u64::from(e) <= MAX_EXPONENT_PRODUCT => e,
            _ => {
                return Err(ParseError {
                    position: start,
                    expected: vec![format!("exponent at most {MAX_EXPONENT_PRODUCT}")],
                })
            }
        };
        Ok(Expr::Pow(Box::new(base), exp))
    }

    fn digits(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                self.descend()?;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error(&["')'", "operator"]));
                }
                self.pos += 1;
                self.depth -= 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.digits();
                if self.peek() != Some(b'/') {
                    return Ok(Expr::Literal(num.parse().unwrap()));
                }
                self.pos += 1;
                self.skip_ws();
                let start = self.pos;
                let den = self.digits();
                if den.is_empty() {
                    return Err(self.error(&["denominator"]));
                }
                if den.bytes().all(|b| b == b'0') {
                    return Err(ParseError { position: start, expected: vec!["nonzero denominator".into()] });
                }
                Ok(Expr::Literal(format!("{num}/{den}").parse().unwrap()))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if self.vars.contains(&name) {
                    Ok(Expr::Var(name.to_string()))
                } else {
                    Err(ParseError { position: start, expected: self.operand_expected() })
                }
            }
            _ => Err(ParseError { position: self.pos, expected: self.operand_expected() }),
        }
    }
}

/// Parses `text` over the given variable names.
pub fn parse_expr(text: &str, vars: &[&str]) -> Result<Expr, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, depth: 0, vars };
    let e = p.expr()?;
    if p.peek().is_some() {
        let mut expected = vec!["operator".to_string()];
        if p.src[p.pos].is_ascii_alphanumeric() || p.src[p.pos] == b'(' {
            expected[0] = "'*' (implicit multiplication is not allowed)".to_string();
        }
        expected.push("end of input".to_string());
        return Err(ParseError { position: p.pos, expected });
    }
    check_exponents(&e, 1, text.len())?;
    Ok(e)
}

fn check_exponents(e: &Expr, acc: u64, len: usize) -> Result<(), ParseError> {
    match e {
        Expr::Literal(_) | Expr::Var(_) => Ok(()),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            check_exponents(a, acc, len)?;
            check_exponents(b, acc, len)
        }
        Expr::Neg(a) => check_exponents(a, acc, len),
        Expr::Pow(a, k) => {
            let next = acc.saturating_mul(u64::from(*k).max(1));
            if next > MAX_EXPONENT_PRODUCT {
                return Err(ParseError {
                    position: len,
                    expected: vec![format!("nested exponents with product at most {MAX_EXPONENT_PRODUCT}")],
                });
            }
            check_exponents(a, next, len)
        }
    }
}

/// Operations needed to evaluate an [`Expr`].
pub trait ExprRing: Sized {
    fn literal(c: Rational) -> Self;
    fn var(name: &str) -> Self;
    fn add(a: Self, b: Self) -> Self;
    fn sub(a: Self, b: Self) -> Self;
    fn mul(a: Self, b: Self) -> Self;
    fn neg(a: Self) -> Self;
    fn pow(a: Self, k: u32) -> Self;
}

impl ExprRing for Poly<Rational> {
    fn literal(c: Rational) -> Self {
        Poly::constant(c)
    }
    fn var(_: &str) -> Self {
        Poly::identity()
    }
    fn add(a: Self, b: Self) -> Self {
        a + b
    }
    fn sub(a: Self, b: Self) -> Self {
        a - b
    }
    fn mul(a: Self, b: Self) -> Self {
        &a * &b
    }
    fn neg(a: Self) -> Self {
        -a
    }
    fn pow(a: Self, k: u32) -> Self {
        a.pow(k)
    }
}

impl ExprRing for BiPoly {
    fn literal(c: Rational) -> Self {
        BiPoly::constant(c)
    }
    fn var(name: &str) -> Self {
        if name == "x" {
            BiPoly::x()
        } else {
            BiPoly::y()
        }
    }
    fn add(a: Self, b: Self) -> Self {
        &a + &b
    }
    fn sub(a: Self, b: Self) -> Self {
        &a - &b
    }
    fn mul(a: Self, b: Self) -> Self {
        &a * &b
    }
    fn neg(a: Self) -> Self {
        -&a
    }
    fn pow(a: Self, k: u32) -> Self {
        a.pow(k)
    }
}

pub fn eval<R: ExprRing>(e: &Expr) -> R {
    match e {
        Expr::Literal(c) => R::literal(c.clone()),
        Expr::Var(v) => R::var(v),
        Expr::Add(a, b) => R::add(eval(a), eval(b)),
        Expr::Sub(a, b) => R::sub(eval(a), eval(b)),
        Expr::Mul(a, b) => R::mul(eval(a), eval(b)),
        Expr::Neg(a) => R::neg(eval(a)),
        Expr::Pow(a, k) => R::pow(eval(a), *k),
    }
}

/// Univariate polynomial in `var`.
pub fn parse_poly(text: &str, var: &str) -> Result<Poly<Rational>, ParseError> {
    Ok(eval(&parse_expr(text, &[var])?))
}

/// Polynomial in `x` and `y`.
pub fn parse_bipoly(text: &str) -> Result<BiPoly, ParseError> {
    Ok(eval(&parse_expr(text, &["x", "y"])?))
}

/// Exact rational literal such as `-5/2`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let p = parse_poly(text, "_")?;
    match p.deg() {
        None | Some(0) => Ok(p.constant_term()),
        Some(_) => Err(ParseError { position: 0, expected: vec!["rational constant".into()] }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::from_ints(c)
    }

    #[test]
    fn examples() {
        assert_eq!(parse_poly("z^6 + z^2", "z").unwrap(), p(&[0, 0, 1, 0, 0, 0, 1]));
        assert_eq!(parse_poly("0", "z").unwrap(), Poly::zero());
        let q = parse_poly("1/2*z - 3", "z").unwrap();
        assert_eq!(q.coeffs(), &[Rational::from(-3), Rational::new(1, 2)]);
    }

    #[test]
    fn precedence_and_unary_minus() {
        assert_eq!(parse_poly("-z^2", "z").unwrap(), p(&[0, 0, -1]));
        assert_eq!(parse_poly("(z+1)^2 - 2*z", "z").unwrap(), p(&[1, 0, 1]));
        assert_eq!(parse_poly("2 - -z", "z").unwrap(), p(&[2, 1]));
        assert_eq!(parse_poly("-5/2", "z").unwrap(), Poly::constant(Rational::new(-5, 2)));
        assert_eq!(parse_poly(" w ^ 3 ", "w").unwrap(), p(&[0, 0, 0, 1]));
    }

    #[test]
    fn errors_have_positions() {
        let e = parse_poly("2z^2", "z").unwrap_err();
        assert_eq!(e.position, 1);
        assert!(e.expected[0].contains("implicit"));
        assert_eq!(parse_poly("z^", "z").unwrap_err().position, 2);
        assert_eq!(parse_poly("z + x", "z").unwrap_err().position, 4);
        assert_eq!(parse_poly("(z", "z").unwrap_err().position, 2);
        assert_eq!(parse_poly("1/0", "z").unwrap_err().position, 2);
        assert!(parse_poly("", "z").is_err());
        assert!(parse_poly("z^-1", "z").is_err());
        assert!(parse_poly("((z^100)^100)^100", "z").is_err());
    }

    #[test]
    fn bivariate() {
        let f = parse_bipoly("y + x^2").unwrap();
        assert_eq!(f.render(), "x^2 + y");
        assert!(parse_bipoly("z").is_err());
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-5/2").unwrap(), Rational::new(-5, 2));
        assert!(parse_rational("z").is_err());
    }
}
