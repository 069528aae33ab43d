//! Text syntax for series:
//!
//! ```text
//! series := sign? term (('+'|'-') term)*
//! term   := coeff ('*'? 't' '^' '(' exp ')')? | 't' '^' '(' exp ')' | 'O' '(' 't' '^' '(' exp ')' ')'
//! coeff  := rational | 'q(' rational ',' rational ')'
//! exp    := rational | '[' rational (',' rational)* ']' | '(' integer ',' integer ')'
//! ```
//!
//! `q(a,b)` is `a + b*sqrt(d)` for the field's `d`; `O(t^(p))` sets the precision.
//!
//! [`eval_series_expr`] additionally accepts `*`, `/`, integer powers `^k` and
//! parentheses over such terms.

use num_bigint::BigInt;

use super::coeff::Coefficient;
use super::field::Field;
use super::series::{Bound, TruncatedSeries};
use crate::error::{Error, Result};
use crate::oag::GroupElement;
use crate::rational::Rational;

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    field: &'a Field,
    precision: Option<GroupElement>,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.pos, msg)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.chars.get(self.pos), Some('-') | Some('+')) {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            self.pos = start;
            return Err(self.err("expected an integer"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| Error::parse(start, "bad integer"))
    }

    fn rational(&mut self) -> Result<Rational> {
        let n = self.integer()?;
        // `1/(..)` is a quotient, not a fraction
        let fraction = self.peek() == Some('/')
            && self.chars[self.pos + 1..]
                .iter()
                .find(|c| !c.is_whitespace())
                .is_some_and(|c| c.is_ascii_digit() || *c == '-');
        if fraction && self.eat('/') {
            let at = self.pos;
            let d = self.integer()?;
            if d == BigInt::from(0) {
                return Err(Error::parse(at, "zero denominator"));
            }
            Ok(Rational::new(n, d))
        } else {
            Ok(Rational::from_integer(n))
        }
    }

    fn exponent(&mut self) -> Result<GroupElement> {
        let group = self.field.group();
        let at = self.pos;
        let wrap = |e: Error| match e {
            Error::Parse { .. } => e,
            other => Error::parse(at, other.to_string()),
        };
        if self.eat('[') {
            let mut coords = Vec::new();
            if !self.eat(']') {
                loop {
                    coords.push(self.rational()?);
                    if self.eat(']') {
                        break;
                    }
                    self.expect(',')?;
                }
            }
            return group.lex_element(coords).map_err(wrap);
        }
        if self.eat('(') {
            let a = self.integer()?;
            self.expect(',')?;
            let b = self.integer()?;
            self.expect(')')?;
            return group.real_element(a, b).map_err(wrap);
        }
        let q = self.rational()?;
        match group.lines() {
            Some(l) if l.len() == 1 => group.lex_element(vec![q]).map_err(wrap),
            _ if group.surd_d().is_some() && q.is_integer() => {
                group.real_element(q.to_integer(), BigInt::from(0)).map_err(wrap)
            }
            _ => Err(Error::parse(at, format!("exponent arity mismatch for {group}"))),
        }
    }

    /// `t^(exp)` after the `t` has been consumed.
    fn power(&mut self) -> Result<GroupElement> {
        self.expect('^')?;
        self.expect('(')?;
        let e = self.exponent()?;
        self.expect(')')?;
        Ok(e)
    }

    fn coefficient(&mut self) -> Result<Coefficient> {
        if self.peek() == Some('q') {
            self.pos += 1;
            let at = self.pos;
            self.expect('(')?;
            let a = self.rational()?;
            self.expect(',')?;
            let b = self.rational()?;
            self.expect(')')?;
            let d = self
                .field
                .coefficients()
                .surd()
                .ok_or_else(|| Error::parse(at, format!("q(..) needs a quadratic field, not {}", self.field)))?;
            return Ok(Coefficient::quadratic(a, b, d));
        }
        Ok(Coefficient::Rational(self.rational()?))
    }

    /// One term; `Err` on syntax, `Ok(None)` for an `O(..)` precision marker.
    fn term(&mut self) -> Result<Option<(GroupElement, Coefficient)>> {
        match self.peek() {
            Some('O') => {
                self.pos += 1;
                self.expect('(')?;
                self.expect('t')?;
                let e = self.power()?;
                self.expect(')')?;
                if self.precision.replace(e).is_some() {
                    return Err(self.err("more than one O(..) term"));
                }
                Ok(None)
            }
            Some('t') => {
                self.pos += 1;
                Ok(Some((self.power()?, Coefficient::one())))
            }
            Some(c) if c.is_ascii_digit() || c == 'q' => {
                let coeff = self.coefficient()?;
                // `c*t^(..)` is one term; any other `*` is left to the caller
                let save = self.pos;
                if self.eat('*') && self.peek() != Some('t') {
                    self.pos = save;
                }
                if self.peek() == Some('t') {
                    self.pos += 1;
                    Ok(Some((self.power()?, coeff)))
                } else {
                    Ok(Some((self.field.group().zero(), coeff)))
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

pub fn parse_series(field: &Field, text: &str) -> Result<TruncatedSeries> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, field, precision: None };
    let mut terms = Vec::new();
    let mut negate = false;
    if p.eat('-') {
        negate = true;
    } else {
        p.eat('+');
    }
    loop {
        let at = p.pos;
        if let Some((e, c)) = p.term()? {
            terms.push((e, if negate { c.neg() } else { c }));
        } else if negate {
            return Err(Error::parse(at, "O(..) cannot be negated"));
        }
        if p.eat('+') {
            negate = false;
        } else if p.eat('-') {
            negate = true;
        } else {
            break;
        }
    }
    if p.peek().is_some() {
        return Err(p.err("unexpected trailing input"));
    }
    let precision = match p.precision {
        Some(e) => Bound::Finite(e),
        None => Bound::Infinite,
    };
    TruncatedSeries::from_terms(field, terms, precision)
}

/// Evaluates an arithmetic expression over series. Quotients use the inverse
/// at `relative` precision (relative to the divisor's valuation) when given,
/// and at the default precision otherwise.
pub fn eval_series_expr(field: &Field, text: &str, relative: Option<&Bound>) -> Result<TruncatedSeries> {
    let mut p = Parser { chars: text.chars().collect(), pos: 0, field, precision: None };
    let mut e = Eval { p: &mut p, relative };
    let x = e.sum()?;
    if e.p.peek().is_some() {
        return Err(e.p.err("unexpected trailing input"));
    }
    Ok(x)
}

struct Eval<'p, 'a> {
    p: &'p mut Parser<'a>,
    relative: Option<&'p Bound>,
}

impl Eval<'_, '_> {
    fn sum(&mut self) -> Result<TruncatedSeries> {
        let mut acc = if self.p.eat('-') {
            self.product()?.neg()
        } else {
            self.p.eat('+');
            self.product()?
        };
        loop {
            if self.p.eat('+') {
                acc = acc.add(&self.product()?)?;
            } else if self.p.eat('-') {
                acc = acc.sub(&self.product()?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<TruncatedSeries> {
        let mut acc = self.power()?;
        loop {
            if self.p.eat('*') {
                acc = acc.mul(&self.power()?)?;
            } else if self.p.eat('/') {
                let d = self.power()?;
                acc = acc.mul(&self.inverse(&d)?)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn inverse(&self, d: &TruncatedSeries) -> Result<TruncatedSeries> {
        match self.relative {
            Some(rel) => d.inverse(Some(&rel.shift(&-d.valuation()?))),
            None => d.inverse(None),
        }
    }

    fn power(&mut self) -> Result<TruncatedSeries> {
        let base = self.atom()?;
        if !self.p.eat('^') {
            return Ok(base);
        }
        let at = self.p.pos;
        let k = self.p.integer()?;
        let k: i64 = k.try_into().map_err(|_| Error::parse(at, "exponent too large"))?;
        let x = if k < 0 { self.inverse(&base)? } else { base };
        x.pow(k.unsigned_abs() as u32)
    }

    fn atom(&mut self) -> Result<TruncatedSeries> {
        if self.p.eat('(') {
            let x = self.sum()?;
            self.p.expect(')')?;
            return Ok(x);
        }
        let field = self.p.field;
        match self.p.term()? {
            Some((e, c)) => Ok(TruncatedSeries::monomial(field, c, e)),
            None => {
                let e = self.p.precision.take().expect("O(..) just parsed");
                Ok(TruncatedSeries::big_o(field, e))
            }
        }
    }
}
