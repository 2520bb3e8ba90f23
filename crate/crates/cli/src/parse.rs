//! Command-line value syntax: rationals, `"x,y"` points and monic cubics.

use kummer_core::curves::CurvePoint;
use kummer_core::{Rational, UniPoly};
use num_traits::{One, Zero};

use crate::json::parse_rational_str;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("{0}")]
pub struct ParseError(pub String);

pub fn rational(s: &str) -> Result<Rational, ParseError> {
    parse_rational_str(s).ok_or_else(|| ParseError(format!("not an exact rational: {s:?}")))
}

pub fn point(s: &str) -> Result<CurvePoint, ParseError> {
    if s.trim() == "inf" {
        return Ok(CurvePoint::Infinity);
    }
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| ParseError(format!("expected \"x,y\", got {s:?}")))?;
    Ok(CurvePoint::affine(rational(x)?, rational(y)?))
}

/// A polynomial either as a highest-first coefficient list `"1,-p,q,-r"` or
/// as text in `X` such as `"X^3 - 2X/3 + 1/2"`.
pub fn polynomial(s: &str) -> Result<UniPoly, ParseError> {
    if s.contains('X') || s.contains('x') {
        return expression(s);
    }
    let mut coeffs = s.split(',').map(rational).collect::<Result<Vec<_>, _>>()?;
    coeffs.reverse();
    Ok(UniPoly::new(coeffs))
}

struct Lexer<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Lexer<'_> {
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

    fn integer(&mut self) -> Option<u64> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .ok()?
            .parse()
            .ok()
    }

    fn number(&mut self) -> Result<Option<Rational>, ParseError> {
        let start = self.pos;
        let Some(n) = self.digits() else {
            return Ok(None);
        };
        let mut r = n;
        if self.eat(b'/') {
            let d = self
                .digits()
                .ok_or_else(|| ParseError(format!("denominator expected at byte {}", self.pos)))?;
            if d.is_zero() {
                return Err(ParseError(format!("zero denominator at byte {start}")));
            }
            r /= d;
        }
        Ok(Some(r))
    }

    fn digits(&mut self) -> Option<Rational> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.s[start..self.pos]).ok()?;
        if text.is_empty() {
            return None;
        }
        text.parse().ok()
    }
}

fn expression(s: &str) -> Result<UniPoly, ParseError> {
    let mut lx = Lexer {
        s: s.as_bytes(),
        pos: 0,
    };
    let mut acc = UniPoly::zero();
    let mut first = true;
    loop {
        let neg = if lx.eat(b'-') {
            true
        } else if lx.eat(b'+') || first {
            false
        } else if lx.peek().is_none() {
            break;
        } else {
            return Err(ParseError(format!(
                "unexpected input at byte {} of {s:?}",
                lx.pos
            )));
        };
        first = false;
        let mut coeff = lx.number()?;
        lx.eat(b'*');
        let mut degree = 0;
        if matches!(lx.peek(), Some(b'X' | b'x')) {
            lx.pos += 1;
            degree = 1;
            if lx.eat(b'^') {
                degree = lx
                    .integer()
                    .ok_or_else(|| ParseError(format!("exponent expected at byte {}", lx.pos)))?;
            }
            if lx.eat(b'/') {
                let d = lx.number()?.ok_or_else(|| {
                    ParseError(format!("denominator expected at byte {}", lx.pos))
                })?;
                if d.is_zero() {
                    return Err(ParseError("zero denominator".into()));
                }
                coeff = Some(coeff.unwrap_or_else(Rational::one) / d);
            }
        } else if coeff.is_none() {
            return Err(ParseError(format!(
                "term expected at byte {} of {s:?}",
                lx.pos
            )));
        }
        let mut c = coeff.unwrap_or_else(Rational::one);
        if neg {
            c = -c;
        }
        let degree = usize::try_from(degree)
            .ok()
            .filter(|&d| d <= 64)
            .ok_or_else(|| ParseError("exponent too large".into()))?;
        let mut term = vec![Rational::zero(); degree + 1];
        term[degree] = c;
        acc = &acc + &UniPoly::new(term);
    }
    Ok(acc)
}
