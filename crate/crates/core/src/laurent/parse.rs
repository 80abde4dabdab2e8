//! Text syntax for Laurent polynomials in `t`.
//!
//! Accepts sums of terms such as `t^2 - 3*t + 1`, `3/2*t^-1`, the implicit
//! product `3t`, parenthesised factors and integer powers, e.g.
//! `(t-1)^2*(t+1)`. Negative powers are only allowed on units.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{LaurentPoly, Rational};
use crate::error::{Error, Result};

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut parser = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let p = parser.expr()?;
        parser.skip_ws();
        if parser.pos != parser.src.len() {
            return Err(parser.err("unexpected trailing input"));
        }
        Ok(p)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, message: &str) -> Error {
        Error::PolySyntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let term = self.term()?;
            acc = if negative { &acc - &term } else { &acc + &term };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<LaurentPoly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                // implicit product: `3t`, `2(t+1)`, `(t-1)(t+1)`
                Some(b't') | Some(b'(') | Some(b'0'..=b'9') => {
                    acc = &acc * &self.factor()?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<LaurentPoly> {
        let base = self.primary()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let e = self.integer()?;
        let e: u32 = e
            .try_into()
            .map_err(|_| self.err("exponent out of range"))?;
        if !negative {
            return Ok(base.pow(e));
        }
        match base.unit_inverse() {
            Some(inv) => Ok(inv.pow(e)),
            None => Err(self.err("negative power of a non-unit")),
        }
    }

    fn primary(&mut self) -> Result<LaurentPoly> {
        match self.peek() {
            Some(b't') => {
                self.pos += 1;
                Ok(LaurentPoly::t_pow(1))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(inner)
            }
            Some(b'0'..=b'9') => {
                let n = self.integer()?;
                let c = if self.eat(b'/') {
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    Rational::new(n, d)
                } else {
                    Rational::from_integer(n)
                };
                Ok(LaurentPoly::constant(c))
            }
            Some(_) => Err(self.err("expected a number, `t` or `(`")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(digits.parse().unwrap())
    }
}
