use super::RatFunc;
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Parses `+ - * / ^`, parentheses, integers, and generators `s0, s1, ...`
/// (a bare `s` means `s0`).
pub fn parse_ratfunc(text: &str) -> Result<RatFunc> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0 };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn err(&self, msg: &str) -> Error {
        Error::parse(self.pos, msg)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn expr(&mut self) -> Result<RatFunc> {
        let mut acc = self.term()?;
        while let Some(c @ ('+' | '-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == '+' { acc.add(&rhs) } else { acc.sub(&rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RatFunc> {
        let mut acc = self.unary()?;
        while let Some(c @ ('*' | '/')) = self.peek() {
            self.pos += 1;
            let at = self.pos;
            let rhs = self.unary()?;
            acc = if c == '*' {
                acc.mul(&rhs)
            } else {
                acc.div(&rhs).map_err(|_| Error::parse(at, "division by zero"))?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RatFunc> {
        if self.peek() == Some('-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let neg = if self.peek() == Some('-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let at = self.pos;
        let e: i64 =
            self.digits().and_then(|d| d.parse().ok()).ok_or_else(|| self.err("expected an integer exponent"))?;
        base.pow(if neg { -e } else { e }).map_err(|_| Error::parse(at, "zero to a negative power"))
    }

    fn atom(&mut self) -> Result<RatFunc> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let f = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some('s') => {
                self.pos += 1;
                let i = match self.digits() {
                    Some(d) => d.parse().map_err(|_| self.err("generator index too large"))?,
                    None => 0,
                };
                Ok(RatFunc::generator(i))
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits().expect("digit present");
                let n: num_bigint::BigInt = d.parse().expect("decimal digits");
                Ok(RatFunc::constant(Rational::from_integer(n)))
            }
            _ => Err(self.err("expected a number, generator or '('")),
        }
    }
}
