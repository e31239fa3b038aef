//! Recursive-descent parser for field elements.
//!
//! ```text
//! expr     := term (('+'|'-') term)*
//! term     := factor (('*'|'/') factor)*
//! factor   := base ('^' posint)?
//! base     := rational | var | '(' expr ')' | '-' base
//! rational := int ('/' posint)?
//! ```
//!
//! A leading minus is accepted so that printed canonical forms re-parse.

use num_bigint::BigInt;

use super::ratfunc::RatFunc;
use super::Rat;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].1.is_ascii_digit() {
                j += 1;
            }
            let end = chars.get(j).map(|p| p.0).unwrap_or(src.len());
            out.push((pos, Tok::Int(src[pos..end].parse().unwrap())));
            i = j;
        } else if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].1.is_alphanumeric() || chars[j].1 == '_') {
                j += 1;
            }
            let end = chars.get(j).map(|p| p.0).unwrap_or(src.len());
            out.push((pos, Tok::Ident(src[pos..end].to_string())));
            i = j;
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            i += 1;
        } else {
            return Err(Error::Syntax { pos, msg: format!("unexpected character '{c}'") });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    i: usize,
    vars: &'a [String],
    len: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.0).unwrap_or(self.len)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax { pos: self.pos(), msg: msg.to_string() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RatFunc> {
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

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(&Tok::Op('/')) {
                let pos = self.pos();
                self.i += 1;
                let d = self.factor()?;
                if d.is_zero() {
                    return Err(Error::Syntax { pos, msg: "division by zero".into() });
                }
                acc = &acc / &d;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RatFunc> {
        let b = self.base()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Int(n)) => {
                    self.i += 1;
                    let k: u32 = n.try_into().or_else(|_| self.err("exponent too large"))?;
                    Ok(b.pow(k))
                }
                _ => self.err("exponent must be a nonnegative integer"),
            }
        } else {
            Ok(b)
        }
    }

    fn base(&mut self) -> Result<RatFunc> {
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.i += 1;
                // rational := int ('/' posint)? binds tighter than division.
                if self.peek() == Some(&Tok::Op('/')) {
                    if let Some((_, Tok::Int(d))) = self.toks.get(self.i + 1).cloned() {
                        let next_is_pow = matches!(self.toks.get(self.i + 2), Some((_, Tok::Op('^'))));
                        if !next_is_pow && d != BigInt::from(0) {
                            self.i += 2;
                            return Ok(RatFunc::from_rat(Rat::new(n, d)));
                        }
                    }
                }
                Ok(RatFunc::from_rat(Rat::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(k) => Ok(RatFunc::var(k)),
                    None => Err(Error::UnknownVariable(name)),
                }
            }
            Some(Tok::Op('(')) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Some(Tok::Op('-')) => {
                self.i += 1;
                Ok(-self.base()?)
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parses `src` over the declared variable names.
pub fn parse_element(src: &str, vars: &[String]) -> Result<RatFunc> {
    let toks = lex(src)?;
    let mut p = Parser { toks, i: 0, vars, len: src.len() };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vec<String> {
        vec!["x".into(), "y".into()]
    }

    #[test]
    fn parses_polynomial() {
        let f = parse_element("2*x^2*y - 1/3", &vars()).unwrap();
        assert_eq!(f.display_with(&vars()), "2*x^2*y - 1/3");
    }

    #[test]
    fn parses_quotient() {
        let f = parse_element("(1+x)/(1-y)", &vars()).unwrap();
        let g = &(&RatFunc::one() + &RatFunc::var(0)) / &(&RatFunc::one() - &RatFunc::var(1));
        assert_eq!(f, g);
    }

    #[test]
    fn negative_exponent_is_rejected() {
        assert!(matches!(parse_element("x^-1", &vars()), Err(Error::Syntax { pos: 2, .. })));
    }

    #[test]
    fn unknown_variable() {
        assert_eq!(parse_element("z+1", &vars()), Err(Error::UnknownVariable("z".into())));
    }

    #[test]
    fn rational_literal_before_power() {
        // 2/3^2 reads as 2/(3^2), since the literal 3 carries the exponent.
        let f = parse_element("2/3^2", &vars()).unwrap();
        assert_eq!(f, RatFunc::from_rat(Rat::new(2.into(), 9.into())));
    }
}
