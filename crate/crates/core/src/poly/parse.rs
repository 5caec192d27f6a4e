//! Recursive-descent reader for polynomials in `z` and `w`.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := factor (('*' | '/')? factor)*   implicit product only before a variable or '('
//! factor := ('+' | '-') factor | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! A divisor must be a non-zero constant, so `z/2`, `(1/2)*w` and `3/2^2` (= 3/4) are all
//! accepted while `1/z` is rejected.

use num_bigint::BigInt;

use super::{BiPoly, UniPoly};
use crate::arith::Rational;
use crate::ParseError;

const MAX_EXPONENT: u32 = 1 << 12;

struct Parser {
    chars: Vec<char>,
    pos: usize,
    vars: [Option<char>; 2],
}

impl Parser {
    fn new(src: &str, vars: [Option<char>; 2]) -> Self {
        Parser { chars: src.chars().collect(), pos: 0, vars }
    }

    fn location(&self, pos: usize) -> (usize, usize) {
        let mut line = 1;
        let mut col = 1;
        for &c in &self.chars[..pos.min(self.chars.len())] {
            if c == '\n' {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
        }
        (line, col)
    }

    fn error_at(&self, pos: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = self.location(pos);
        ParseError { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(d) if d == c => {
                self.pos += 1;
                Ok(())
            }
            Some(d) => Err(self.error_at(self.pos, format!("expected '{}', found '{}'", c, d))),
            None => Err(self.error_at(self.pos, format!("expected '{}', found end of input", c))),
        }
    }

    fn parse_all(&mut self) -> Result<BiPoly, ParseError> {
        if self.peek().is_none() {
            return Err(self.error_at(self.pos, "empty input"));
        }
        let p = self.expr()?;
        if let Some(c) = self.peek() {
            return Err(self.error_at(self.pos, format!("unexpected '{}'", c)));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    acc = &acc + &self.term()?;
                }
                Some('-') => {
                    self.pos += 1;
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some('/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.factor()?;
                    let c = match d.terms().next() {
                        Some((&(0, 0), c)) if d.num_terms() == 1 => c.clone(),
                        None => return Err(self.error_at(at, "division by zero")),
                        _ => return Err(self.error_at(at, "division by a non-constant")),
                    };
                    acc = acc.scale(&c.recip());
                }
                Some('(') => acc = &acc * &self.factor()?,
                Some(c) if c.is_alphabetic() => acc = &acc * &self.factor()?,
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<BiPoly, ParseError> {
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                Ok(-&self.factor()?)
            }
            Some('+') => {
                self.pos += 1;
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BiPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let n = self.integer()?;
            let e: u32 = n
                .try_into()
                .ok()
                .filter(|e| *e <= MAX_EXPONENT)
                .ok_or_else(|| self.error_at(start, format!("exponent must be at most {}", MAX_EXPONENT)))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            let msg = match self.chars.get(self.pos) {
                Some(c) => format!("expected a non-negative integer, found '{}'", c),
                None => "expected a non-negative integer, found end of input".to_string(),
            };
            return Err(self.error_at(start, msg));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits"))
    }

    fn atom(&mut self) -> Result<BiPoly, ParseError> {
        let start = self.pos;
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                Ok(BiPoly::constant(Rational::from_integer(num)))
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(')')?;
                Ok(inner)
            }
            Some(c) if c.is_alphabetic() => {
                let vstart = self.pos;
                self.pos += 1;
                if self.vars[0] == Some(c) {
                    Ok(BiPoly::z())
                } else if self.vars[1] == Some(c) {
                    Ok(BiPoly::w())
                } else {
                    let allowed: Vec<String> =
                        self.vars.iter().flatten().map(|v| format!("'{}'", v)).collect();
                    Err(self.error_at(
                        vstart,
                        format!("unknown variable '{}' (expected {})", c, allowed.join(" or ")),
                    ))
                }
            }
            Some(c) => Err(self.error_at(self.pos, format!("unexpected '{}'", c))),
            None => Err(self.error_at(start.max(self.pos), "unexpected end of input")),
        }
    }
}

/// Reads a polynomial in `z` and `w`.
pub fn parse_bipoly(text: &str) -> Result<BiPoly, ParseError> {
    Parser::new(text, [Some('z'), Some('w')]).parse_all()
}

/// Reads a univariate polynomial in the single variable `var`.
pub fn parse_unipoly(text: &str, var: char) -> Result<UniPoly, ParseError> {
    let p = Parser::new(text, [None, Some(var)]).parse_all()?;
    Ok(p.at_z0())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn spec_examples() {
        let p = parse_bipoly("w^2 - z - 1").unwrap();
        assert_eq!(p, BiPoly::from_int_terms(&[(0, 2, 1), (1, 0, -1), (0, 0, -1)]));
        let p = parse_bipoly("z*w^2 - w + 1").unwrap();
        assert_eq!(p, BiPoly::from_int_terms(&[(1, 2, 1), (0, 1, -1), (0, 0, 1)]));
        let p = parse_bipoly("(1/2)*w - 3").unwrap();
        assert_eq!(p, BiPoly::from_terms([((0, 1), q(1, 2)), ((0, 0), q(-3, 1))]));
    }

    #[test]
    fn implicit_products_and_powers() {
        let a = parse_bipoly("2zw^2 + (z+1)(w-1)").unwrap();
        let b = parse_bipoly("2*z*w^2 + z*w - z + w - 1").unwrap();
        assert_eq!(a, b);
        assert_eq!(parse_bipoly("-w^2").unwrap(), BiPoly::from_int_terms(&[(0, 2, -1)]));
        assert_eq!(parse_bipoly("(w - z)^2").unwrap().to_string(), "w^2 - 2*z*w + z^2");
        assert_eq!(parse_bipoly("2^3").unwrap(), BiPoly::from_int_terms(&[(0, 0, 8)]));
        assert_eq!(parse_bipoly("3/2^2").unwrap(), BiPoly::constant(q(3, 4)));
        assert_eq!(parse_bipoly("w/2 - 1/3").unwrap(), parse_bipoly("(1/2)*w - (1/3)").unwrap());
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_bipoly("w^^2").unwrap_err();
        assert_eq!((e.line, e.column), (1, 3));
        let e = parse_bipoly("w + x").unwrap_err();
        assert_eq!((e.line, e.column), (1, 5));
        assert!(e.message.contains("unknown variable"));
        let e = parse_bipoly("w +\n  (z").unwrap_err();
        assert_eq!(e.line, 2);
        assert!(parse_bipoly("1/0").is_err());
        assert!(parse_bipoly("w/z").unwrap_err().message.contains("non-constant"));
        assert!(parse_bipoly("").is_err());
        assert!(parse_bipoly("w 2").is_err());
    }

    #[test]
    fn univariate() {
        let g = parse_unipoly("x^2 - 2", 'x').unwrap();
        assert_eq!(g, UniPoly::from_ints(&[-2, 0, 1]));
        assert!(parse_unipoly("x^2 - z", 'x').is_err());
    }
}
