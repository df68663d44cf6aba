//! Polynomial text parser. Accepts `^` for powers, optional `*`, parentheses,
//! integer coefficients and division by nonzero integer constants.

use std::sync::Arc;

use num_bigint::BigInt;

use super::{Poly, PolyRing};
use crate::error::{Error, Result};

/// Parse a polynomial. Errors carry a 1-based column on line 1.
pub fn parse_poly(ring: &Arc<PolyRing>, text: &str) -> Result<Poly> {
    parse_poly_offset(ring, text).map_err(|(off, msg)| {
        let (line, col) = line_col(text, off);
        Error::Parse { line, col, msg }
    })
}

/// Parse a polynomial, reporting errors as a byte offset into `text`.
pub fn parse_poly_offset(
    ring: &Arc<PolyRing>,
    text: &str,
) -> std::result::Result<Poly, (usize, String)> {
    let mut p = Parser { ring, src: text.as_bytes(), pos: 0 };
    p.skip_ws();
    if p.at_end() {
        return Err((p.pos, "empty polynomial".into()));
    }
    let v = p.expr()?;
    p.skip_ws();
    if !p.at_end() {
        return Err((p.pos, format!("unexpected character {:?}", p.peek().unwrap() as char)));
    }
    Ok(v)
}

pub fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let mut line = 1;
    let mut col = 1;
    for (i, ch) in text.char_indices() {
        if i >= offset {
            break;
        }
        if ch == '\n' {
            line += 1;
            col = 1;
        } else {
            col += 1;
        }
    }
    (line, col)
}

struct Parser<'a> {
    ring: &'a Arc<PolyRing>,
    src: &'a [u8],
    pos: usize,
}

type PResult<T> = std::result::Result<T, (usize, String)>;

impl<'a> Parser<'a> {
    fn at_end(&self) -> bool {
        self.pos >= self.src.len()
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expr(&mut self) -> PResult<Poly> {
        self.skip_ws();
        let mut acc = if self.peek() == Some(b'-') || self.peek() == Some(b'+') {
            Poly::zero(self.ring)
        } else {
            self.term()?
        };
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(b'-') => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> PResult<Poly> {
        let mut acc = self.power()?;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    self.skip_ws();
                    let at = self.pos;
                    let d = self.power()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err((at, "division only by nonzero constants".into()));
                    }
                    let c = d.terms()[0].1.inv();
                    acc = acc.scale(&c);
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'_' || c == b'(' => {
                    let f = self.power()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> PResult<Poly> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let at = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err((at, "expected exponent".into()));
            }
            let e: u32 = digits.parse().map_err(|_| (at, "exponent too large".to_string()))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn atom(&mut self) -> PResult<Poly> {
        self.skip_ws();
        let at = self.pos;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.skip_ws();
                if self.peek() != Some(b')') {
                    return Err((self.pos, "expected ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(b'-') => {
                self.pos += 1;
                let v = self.power()?;
                Ok(-&v)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().map_err(|_| (at, "bad number".to_string()))?;
                Ok(Poly::constant(self.ring, self.ring.field.from_bigint(&n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match self.ring.var_index(name) {
                    Some(i) => Ok(Poly::var(self.ring, i)),
                    None => Err((start, format!("unknown variable {name}"))),
                }
            }
            Some(c) => Err((at, format!("unexpected character {:?}", c as char))),
            None => Err((at, "unexpected end of input".into())),
        }
    }
}
