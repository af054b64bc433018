//! Exact polynomial input: coefficient lists and expression strings.
//!
//! Expressions support `+ - * ^`, parentheses, the variable `x`, and
//! integer, rational (`p/q`), and decimal literals. Decimals are read as
//! exact fractions, so parsing never rounds.

use gramdim_core::Polynomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input where the error was detected.
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { pos, msg: msg.into() })
}

/// Parses a comma/space-separated ascending coefficient list.
pub fn parse_coeff_list(text: &str) -> Result<Polynomial, ParseError> {
    let mut coeffs = Vec::new();
    let bytes = text.as_bytes();
    let sep = |b: u8| b == b',' || b.is_ascii_whitespace();
    let mut i = 0;
    while i < bytes.len() {
        if sep(bytes[i]) {
            i += 1;
            continue;
        }
        let start = i;
        while i < bytes.len() && !sep(bytes[i]) {
            i += 1;
        }
        let piece = std::str::from_utf8(&bytes[start..i])
            .map_err(|_| ParseError { pos: start, msg: "non-ascii input".into() })?;
        coeffs.push(parse_number(piece, start)?);
    }
    if coeffs.is_empty() {
        return err(0, "empty coefficient list");
    }
    Ok(Polynomial::normalize(coeffs))
}

/// Parses either a coefficient list or an expression in `x`.
pub fn parse_polynomial(text: &str) -> Result<Polynomial, ParseError> {
    if text.trim().is_empty() {
        return err(0, "empty input");
    }
    if text.contains(['x', '(', ')', '^', '*']) {
        Parser::new(text).parse_all()
    } else {
        parse_coeff_list(text)
    }
}

fn parse_number(piece: &str, pos: usize) -> Result<BigRational, ParseError> {
    if let Some((num, den)) = piece.split_once('/') {
        let n = parse_decimal(num, pos)?;
        let d = parse_decimal(den, pos + num.len() + 1)?;
        if d.is_zero() {
            return err(pos, "zero denominator");
        }
        return Ok(n / d);
    }
    parse_decimal(piece, pos)
}

fn parse_decimal(piece: &str, pos: usize) -> Result<BigRational, ParseError> {
    let (sign, body) = match piece.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, piece),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return err(pos, format!("expected a number, found {piece:?}"));
    }
    for (i, c) in int_part.chars().chain(frac_part.chars()).enumerate() {
        if !c.is_ascii_digit() {
            return err(pos + i, format!("invalid digit {c:?} in number"));
        }
    }
    let digits: String = format!("{int_part}{frac_part}");
    let value: BigInt = if digits.is_empty() {
        BigInt::zero()
    } else {
        digits.parse().expect("digits verified")
    };
    let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(BigRational::new(BigInt::from(sign) * value, scale))
}

struct Parser<'a> {
    text: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { text: text.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.text.get(self.pos).copied()
    }

    fn parse_all(mut self) -> Result<Polynomial, ParseError> {
        let p = self.expr()?;
        match self.peek() {
            None => Ok(p),
            Some(c) => err(self.pos, format!("unexpected {:?}", c as char)),
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                // Implicit multiplication: `2x^2`, `3(x+1)`.
                Some(b'x' | b'(') => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.text.len() && self.text[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return err(start, "expected a nonnegative integer exponent");
        }
        let exp: usize = std::str::from_utf8(&self.text[start..self.pos])
            .expect("ascii digits")
            .parse()
            .map_err(|_| ParseError { pos: start, msg: "exponent too large".into() })?;
        Ok(base.pow(exp))
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return err(self.pos, "expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'x') => {
                self.pos += 1;
                Ok(Polynomial::monomial(1))
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.atom()?.neg())
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                let mut seen_slash = false;
                while self.pos < self.text.len() {
                    let b = self.text[self.pos];
                    let numeric = b.is_ascii_digit() || b == b'.';
                    // A slash continues the literal only once, as `p/q`.
                    if numeric || (b == b'/' && !seen_slash) {
                        seen_slash |= b == b'/';
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let piece = std::str::from_utf8(&self.text[start..self.pos]).expect("ascii");
                Ok(Polynomial::constant(parse_number(piece, start)?))
            }
            Some(c @ (b'/' | b'%' | b'!' | b'&' | b'|')) => {
                err(self.pos, format!("unsupported operator {:?}", c as char))
            }
            Some(c) => err(self.pos, format!("unexpected {:?}", c as char)),
            None => err(self.text.len(), "unexpected end of input"),
        }
    }
}

/// Renders a polynomial as a canonical expression that `parse_polynomial`
/// reads back exactly.
pub fn render(f: &Polynomial) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (m, c) in f.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c < &BigRational::zero();
        let abs = if negative { -c.clone() } else { c.clone() };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let coeff_txt = if abs.is_integer() {
            abs.numer().to_string()
        } else {
            format!("{}/{}", abs.numer(), abs.denom())
        };
        match m {
            0 => out.push_str(&coeff_txt),
            _ => {
                if !abs.is_one() {
                    out.push_str(&coeff_txt);
                    out.push('*');
                }
                out.push('x');
                if m > 1 {
                    out.push_str(&format!("^{m}"));
                }
            }
        }
    }
    out
}
