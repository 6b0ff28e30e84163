//! Text grammar for polynomials:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('-' | '+') unary | power
//! power  := atom ('^' INT)?
//! atom   := INT ('/' INT)? | 'X' INT | 'adj' '(' expr ')' | '(' expr ')'
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use super::NCPoly;
use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Parses with no bound on generator indices (only `X0` is rejected).
pub fn parse(text: &str) -> Result<NCPoly> {
    Parser::new(text, None).run()
}

/// Parses, rejecting generators outside `X1..X{generators}`.
pub fn parse_with_generators(text: &str, generators: usize) -> Result<NCPoly> {
    Parser::new(text, Some(generators)).run()
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    generators: Option<usize>,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, generators: Option<usize>) -> Self {
        Self {
            src: text.as_bytes(),
            pos: 0,
            generators,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
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

    fn run(mut self) -> Result<NCPoly> {
        if self.peek().is_none() {
            return self.err("empty input");
        }
        let p = self.expr()?;
        if let Some(c) = self.peek() {
            return self.err(format!("unexpected '{}'", c as char));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<NCPoly> {
        let mut acc = self.unary()?;
        while self.eat(b'*') {
            acc = acc.mul(&self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<NCPoly> {
        if self.eat(b'-') {
            return Ok(self.unary()?.scale(&-Rational::from_integer(1.into())));
        }
        if self.eat(b'+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<NCPoly> {
        let base = self.atom()?;
        if self.eat(b'^') {
            self.skip_ws();
            let at = self.pos;
            let k = self.integer()?;
            let k: u32 = match k.try_into() {
                Ok(k) if k <= 64 => k,
                _ => {
                    self.pos = at;
                    return self.err("exponent must be an integer in 0..=64");
                }
            };
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected an integer");
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("non-empty digit string"))
    }

    fn atom(&mut self) -> Result<NCPoly> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let p = self.integer()?;
                let mut value = Rational::from_integer(p);
                if self.eat(b'/') {
                    self.skip_ws();
                    let at = self.pos;
                    let q = self.integer()?;
                    if q.is_zero() {
                        self.pos = at;
                        return self.err("zero denominator");
                    }
                    value /= Rational::from_integer(q);
                }
                Ok(NCPoly::constant(value))
            }
            Some(b'X') => {
                let at = self.pos;
                self.pos += 1;
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return self.err("expected a generator index after 'X'");
                }
                let idx = self.integer()?;
                let max = self.generators.unwrap_or(usize::MAX);
                let index: usize = idx.try_into().unwrap_or(usize::MAX);
                if index == 0 || index > max {
                    self.pos = at;
                    return Err(Error::UnknownGenerator {
                        index,
                        max: self.generators.unwrap_or(0),
                    });
                }
                Ok(NCPoly::generator(index))
            }
            Some(b'a') => {
                if !self.src[self.pos..].starts_with(b"adj") {
                    return self.err("unknown identifier");
                }
                self.pos += 3;
                if !self.eat(b'(') {
                    return self.err("expected '(' after adj");
                }
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(inner.adjoint())
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(c) => self.err(format!("unexpected '{}'", c as char)),
            None => self.err("unexpected end of input"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfock::Word;
    use crate::scalar::{int, ratio};

    #[test]
    fn grammar_examples() {
        assert_eq!(parse("X1").unwrap(), NCPoly::generator(1));
        let p = parse("2*X1*X2 - X1^2").unwrap();
        assert_eq!(p.coeff(&Word(vec![1, 2])), int(2));
        assert_eq!(p.coeff(&Word(vec![1, 1])), int(-1));
        assert_eq!(p.len(), 2);
        assert_eq!(parse("adj(X1*X2)").unwrap(), NCPoly::monomial(&[2, 1]));
    }

    #[test]
    fn rationals_parentheses_and_powers() {
        let p = parse("3/4 * (X1 + X2)^2 - -1").unwrap();
        assert_eq!(p.coeff(&Word(vec![2, 1])), ratio(3, 4));
        assert_eq!(p.coeff(&Word::vacuum()), int(1));
        assert_eq!(parse("X1^0").unwrap(), NCPoly::one());
        assert_eq!(parse(" X12 ").unwrap(), NCPoly::generator(12));
    }

    #[test]
    fn errors_carry_positions() {
        match parse("X1 + * X2") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("(X1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse(""), Err(Error::Syntax { .. })));
        assert!(matches!(parse("1/0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("X1 X2"), Err(Error::Syntax { pos: 3, .. })));
        assert!(matches!(parse("Y1"), Err(Error::Syntax { .. })));
        assert!(matches!(parse("X"), Err(Error::Syntax { .. })));
        assert!(matches!(
            parse("X0"),
            Err(Error::UnknownGenerator { index: 0, .. })
        ));
        assert!(matches!(
            parse_with_generators("X1 + X3", 2),
            Err(Error::UnknownGenerator { index: 3, max: 2 })
        ));
    }
}
