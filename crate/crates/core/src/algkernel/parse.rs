//! Text format for polynomials: `3/2*a^2*x - b*y + 1`.
//!
//! Whitespace is ignored. Besides flat sums of terms the parser also accepts
//! parentheses and integer powers of parenthesised groups, which keeps test
//! fixtures readable; the printer only ever emits the flat form.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use super::poly::MultiPoly;
use super::ring::PolyRing;
use super::{AlgError, Rational};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a Arc<PolyRing>,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> AlgError {
        AlgError::Parse { pos: self.pos, msg: msg.to_string() }
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

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<BigInt, AlgError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().expect("digits"))
    }

    fn expr(&mut self) -> Result<MultiPoly, AlgError> {
        let mut acc = MultiPoly::zero(self.ring);
        let mut first = true;
        loop {
            let neg = if self.eat(b'-') {
                true
            } else if self.eat(b'+') || first {
                false
            } else {
                break;
            };
            first = false;
            let t = self.term()?;
            acc = if neg { acc - t } else { acc + t };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, AlgError> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = acc * f;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, AlgError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.integer()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            Ok(base.pow(e))
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, AlgError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let den = if self.eat(b'/') { self.integer()? } else { BigInt::from(1) };
                if den.is_zero() {
                    return Err(self.err("zero denominator"));
                }
                Ok(MultiPoly::constant(self.ring, Rational::new(num, den)))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                MultiPoly::var(self.ring, name)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

impl MultiPoly {
    pub fn parse(ring: &Arc<PolyRing>, text: &str) -> Result<MultiPoly, AlgError> {
        let mut p = Parser { src: text.as_bytes(), pos: 0, ring };
        if p.peek().is_none() {
            return Err(p.err("empty polynomial"));
        }
        let e = p.expr()?;
        if p.peek().is_some() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algkernel::MonomialOrder;

    fn ring() -> Arc<PolyRing> {
        PolyRing::new(&["a", "b", "x", "y"], MonomialOrder::Grevlex).unwrap()
    }

    #[test]
    fn parses_and_prints_canonically() {
        let r = ring();
        let p = MultiPoly::parse(&r, "3/2*a^2*x - b*y + 1").unwrap();
        assert_eq!(p.to_string(), "3/2*a^2*x - b*y + 1");
        let q = MultiPoly::parse(&r, " 1+  3/2 * x*a^2 -y*b").unwrap();
        assert_eq!(p, q);
        assert_eq!(MultiPoly::parse(&r, "-x + x").unwrap().to_string(), "0");
        assert_eq!(MultiPoly::parse(&r, "-(a+b)^2").unwrap().to_string(), "-a^2 - 2*a*b - b^2");
        assert_eq!(MultiPoly::parse(&r, "4/6*a").unwrap().to_string(), "2/3*a");
    }

    #[test]
    fn parse_errors() {
        let r = ring();
        assert!(matches!(MultiPoly::parse(&r, "a + z"), Err(AlgError::UnknownVariable(_))));
        assert!(matches!(MultiPoly::parse(&r, "a +"), Err(AlgError::Parse { .. })));
        assert!(matches!(MultiPoly::parse(&r, "1/0"), Err(AlgError::Parse { .. })));
        assert!(matches!(MultiPoly::parse(&r, ""), Err(AlgError::Parse { .. })));
        assert!(matches!(MultiPoly::parse(&r, "a b"), Err(AlgError::Parse { .. })));
    }
}
