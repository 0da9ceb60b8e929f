//! Expression grammar shared by polynomials, rational functions, series
//! literals and exponential polynomials.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' '-'? INT)?
//! atom   := INT | IDENT | IDENT '(' expr ')' | '(' expr ')'
//! IDENT  := [a-z][a-z0-9]*
//! ```
//! Whitespace is ignored. Function calls (`exp`, `log`) are only meaningful
//! to the series evaluator.

use num_bigint::BigInt;

use super::ratfunc::RatFunc;
use super::rational::Rational;
use super::var::Var;
use crate::error::{Error, ParseError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(Rational),
    Ident {
        name: String,
        column: usize,
    },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
    Call {
        name: String,
        arg: Box<Expr>,
        column: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> std::result::Result<Vec<(Tok, usize)>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            out.push((Tok::Int(s.parse().expect("digits")), col));
        } else if c.is_ascii_lowercase() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_lowercase() || chars[i].is_ascii_digit()) {
                i += 1;
            }
            out.push((Tok::Ident(chars[start..i].iter().collect()), col));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Sym(c), col));
            i += 1;
        } else {
            return Err(ParseError {
                column: col,
                message: format!("unexpected character `{c}`"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_col)
    }

    fn err<T>(&self, message: impl Into<String>) -> std::result::Result<T, ParseError> {
        Err(ParseError {
            column: self.col(),
            message: message.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> std::result::Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> std::result::Result<Expr, ParseError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> std::result::Result<Expr, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let e: i64 = match i64::try_from(n) {
                    Ok(e) if e <= 1024 => e,
                    _ => return self.err("exponent too large"),
                };
                Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
            }
            _ => self.err("expected an integer exponent"),
        }
    }

    fn atom(&mut self) -> std::result::Result<Expr, ParseError> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Expr::Num(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat('(') {
                    let arg = self.expr()?;
                    if !self.eat(')') {
                        return self.err("expected `)`");
                    }
                    Ok(Expr::Call {
                        name,
                        arg: Box::new(arg),
                        column: col,
                    })
                } else {
                    Ok(Expr::Ident { name, column: col })
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected `)`");
                }
                Ok(e)
            }
            Some(t) => self.err(format!("unexpected token {}", describe(&t))),
            None => self.err("unexpected end of expression"),
        }
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Int(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
    }
}

pub fn parse_expr(src: &str) -> std::result::Result<Expr, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end_col: src.chars().count() + 1,
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Evaluates an expression to a rational function, resolving identifiers
/// with `lookup`.
pub fn eval_ratfunc(e: &Expr, lookup: &impl Fn(&str) -> Option<Var>) -> Result<RatFunc> {
    Ok(match e {
        Expr::Num(r) => RatFunc::constant(r.clone()),
        Expr::Ident { name, column } => match lookup(name) {
            Some(v) => RatFunc::var(v),
            None => {
                return Err(ParseError {
                    column: *column,
                    message: format!("undeclared variable `{name}`"),
                }
                .into())
            }
        },
        Expr::Neg(a) => eval_ratfunc(a, lookup)?.neg(),
        Expr::Add(a, b) => eval_ratfunc(a, lookup)?.add(&eval_ratfunc(b, lookup)?),
        Expr::Sub(a, b) => eval_ratfunc(a, lookup)?.sub(&eval_ratfunc(b, lookup)?),
        Expr::Mul(a, b) => eval_ratfunc(a, lookup)?.mul(&eval_ratfunc(b, lookup)?),
        Expr::Div(a, b) => {
            let d = eval_ratfunc(b, lookup)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            eval_ratfunc(a, lookup)?.div(&d)?
        }
        Expr::Pow(a, k) => eval_ratfunc(a, lookup)?.pow(*k)?,
        Expr::Call { name, column, .. } => {
            return Err(ParseError {
                column: *column,
                message: format!("function `{name}` is not allowed in a rational function"),
            }
            .into())
        }
    })
}

/// Parses a rational function over the given variables.
pub fn parse_ratfunc(src: &str, vars: &[Var]) -> Result<RatFunc> {
    let e = parse_expr(src)?;
    eval_ratfunc(&e, &|name: &str| {
        vars.iter().find(|v| v.name() == name).cloned()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::MultiPoly;
    use crate::arith::rational::rat;

    fn vars() -> Vec<Var> {
        vec![Var::power("p"), Var::generic("q")]
    }

    #[test]
    fn polynomial_literal() {
        let r = parse_ratfunc("3/2*p^2*q - 1", &vars()).unwrap();
        let p = MultiPoly::var(Var::power("p"));
        let q = MultiPoly::var(Var::generic("q"));
        let expected = &(&p.pow(2) * &q).scale(&rat(3, 2)) - &MultiPoly::one();
        assert_eq!(r, RatFunc::poly(expected));
    }

    #[test]
    fn division_by_parenthesized() {
        let r = parse_ratfunc("(p^2 - 1)/(p - 1)", &vars()).unwrap();
        assert_eq!(r, parse_ratfunc("p+1", &vars()).unwrap());
        let r = parse_ratfunc(" p ^ -1 ", &vars()).unwrap();
        assert_eq!(r.to_string(), "1/(p)");
    }

    #[test]
    fn diagnostics_carry_columns() {
        match parse_ratfunc("p + r", &vars()) {
            Err(Error::Parse(e)) => assert_eq!(e.column, 5),
            other => panic!("{other:?}"),
        }
        match parse_expr("p + * q") {
            Err(e) => assert_eq!(e.column, 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("p + $").is_err());
        assert!(parse_ratfunc("1/(p - p)", &vars()).is_err());
    }

    #[test]
    fn display_reparses() {
        for s in [
            "(p + q)/(p*q)",
            "-3/2*p^2*q + 1",
            "1/3/(p + 1)",
            "-q/(p^2 - 2)",
            "0",
        ] {
            let r = parse_ratfunc(s, &vars()).unwrap();
            let again = parse_ratfunc(&r.to_string(), &vars()).unwrap();
            assert_eq!(r, again, "{s}");
        }
    }
}
