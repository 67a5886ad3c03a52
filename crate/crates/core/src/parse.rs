//! Parser for bivariate integer polynomials in `x` and `y`.
//!
//! Grammar, whitespace-insensitive:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | 'x' | 'y' | '(' expr ')'
//! ```

use std::fmt;

use num_bigint::BigInt;

use crate::bipoly::BiPoly;

/// Exponents above this are rejected to keep expansion bounded.
const MAX_EXPONENT: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, at: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            position: at,
            message: msg.into(),
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

    fn expr(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<BiPoly, ParseError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let rhs = self.unary()?;
                    acc = &acc * &rhs;
                }
                Some(b'x' | b'y' | b'(' | b'0'..=b'9') => {
                    return self.err(self.pos, "implicit multiplication is not allowed; use '*'");
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<BiPoly, ParseError> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<BiPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let at = self.pos;
        let digits = self.digits();
        if digits.is_empty() {
            return self.err(at, "expected a nonnegative integer exponent");
        }
        let e: usize = match digits.parse() {
            Ok(e) if e <= MAX_EXPONENT => e,
            _ => return self.err(at, format!("exponent larger than {}", MAX_EXPONENT)),
        };
        let mut acc = BiPoly::from_terms(&[(1, 0, 0)]);
        for _ in 0..e {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> Result<BiPoly, ParseError> {
        let at = {
            self.skip_ws();
            self.pos
        };
        match self.peek() {
            Some(b'0'..=b'9') => {
                let digits = self.digits();
                if let Some(b'.' | b'/' | b'e' | b'E') = self.src.get(self.pos) {
                    return self.err(self.pos, "non-integer coefficient");
                }
                let c: BigInt = digits.parse().expect("ascii digits");
                Ok(BiPoly::monomial(c, 0, 0))
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(BiPoly::from_terms(&[(1, 1, 0)]))
            }
            Some(b'y') => {
                self.pos += 1;
                Ok(BiPoly::from_terms(&[(1, 0, 1)]))
            }
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return self.err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'.') => self.err(at, "non-integer coefficient"),
            Some(c) => self.err(at, format!("unexpected character '{}'", c as char)),
            None => self.err(at, "unexpected end of input"),
        }
    }
}

/// Parses a polynomial such as `y^2 - x^2*(x + 1)`.
pub fn parse_poly(text: &str) -> Result<BiPoly, ParseError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
    };
    if p.peek().is_none() {
        return p.err(0, "empty input");
    }
    let out = p.expr()?;
    if let Some(c) = p.peek() {
        let at = p.pos;
        return if c == b'/' || c == b'.' {
            p.err(at, "non-integer coefficient")
        } else {
            p.err(at, format!("unexpected character '{}'", c as char))
        };
    }
    Ok(out)
}
