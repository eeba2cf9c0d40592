//! Recursive-descent parser for the textual form of [`ParamScalar`].
//!
//! Grammar: sums and products of integers, parameters (`d`, `qL`, `qS`, and
//! `q` as a synonym for `qL`), parentheses, and powers `x^k`, `x^(-k)`,
//! `x^(p/r)`. Fractional powers are only allowed on monomials.

use num_bigint::BigInt;
use num_rational::Rational64;

use super::{Param, ParamMonomial, ParamScalar};
use crate::error::{Error, Result};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

pub(super) fn parse_scalar(input: &str) -> Result<ParamScalar> {
    let mut p = Parser { s: input.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("trailing input"));
    }
    Ok(v)
}

impl Parser<'_> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {}", self.pos))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn expr(&mut self) -> Result<ParamScalar> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc + self.term()?;
            } else if self.eat(b'-') {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<ParamScalar> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc * self.unary()?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                acc = acc.checked_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<ParamScalar> {
        if self.eat(b'-') {
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<ParamScalar> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let e = self.exponent()?;
        if e.is_integer() {
            let k = e.to_integer();
            if k < 0 && base.is_zero() {
                return Err(Error::DivisionByZero);
            }
            return Ok(base.pow(k));
        }
        match base.as_term() {
            Some((c, m)) if c == num_rational::BigRational::from_integer(1.into()) => {
                let mut out = ParamMonomial::one();
                for p in Param::ALL {
                    out = out.mul(&ParamMonomial::new(p, m.exponent(p) * e)?);
                }
                Ok(ParamScalar::monomial(out))
            }
            _ => Err(self.err("fractional power of a non-monomial")),
        }
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("digits parse"))
    }

    fn small_integer(&mut self) -> Result<i64> {
        let n = self.integer()?;
        i64::try_from(n).map_err(|_| self.err("exponent too large"))
    }

    fn exponent(&mut self) -> Result<Rational64> {
        if self.eat(b'(') {
            let neg = self.eat(b'-');
            let n = self.small_integer()?;
            let d = if self.eat(b'/') { self.small_integer()? } else { 1 };
            self.expect(b')')?;
            if d == 0 {
                return Err(Error::DivisionByZero);
            }
            let r = Rational64::new(n, d);
            Ok(if neg { -r } else { r })
        } else {
            let neg = self.eat(b'-');
            let n = self.small_integer()?;
            Ok(Rational64::from_integer(if neg { -n } else { n }))
        }
    }

    fn atom(&mut self) -> Result<ParamScalar> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => Ok(ParamScalar::from_bigint(self.integer()?)),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.s[start..self.pos]).expect("ascii");
                let p = match name {
                    "d" => Param::Delta,
                    "q" | "qL" => Param::QLong,
                    "qS" => Param::QShort,
                    _ => {
                        self.pos = start;
                        return Err(self.err(&format!("unknown parameter '{name}'")));
                    }
                };
                Ok(ParamScalar::param(p))
            }
            _ => Err(self.err("expected a value")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_nested_expressions() {
        let a = parse_scalar("(1 - q)*(1 + q) / (1 - q^2)").unwrap();
        assert!(a.is_one());
        let b = parse_scalar("-d^(-3/2) * 2").unwrap();
        assert_eq!(b, ParamScalar::term(-2, ParamMonomial::power(Param::Delta, -3, 2)));
    }

    #[test]
    fn rejects_garbage() {
        assert!(matches!(parse_scalar("1 +"), Err(Error::Parse(_))));
        assert!(matches!(parse_scalar("x"), Err(Error::Parse(_))));
        assert!(matches!(parse_scalar("(1 + d)^(1/2)"), Err(Error::Parse(_))));
        assert_eq!(parse_scalar("1/(d - d)"), Err(Error::DivisionByZero));
    }
}
