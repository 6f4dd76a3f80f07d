//! The LC literal grammar.
//!
//! ```text
//! number   := term (('+'|'-') term)*
//! term     := coeff | coeff? 'd' ('^' exponent)?
//! coeff    := decimal or fraction, e.g. 2, -3.5, 7/2
//! exponent := integer | decimal | '(' integer '/' integer ')'
//! ```
//!
//! Printing produces text in the same grammar; coefficients use the
//! shortest decimal that round-trips to the same binary64 value.

use std::fmt;

use num_rational::Rational64;

use crate::error::SyntaxError;
use crate::exponent::{decimal_to_rational, ExpQ, ExtQ};
use crate::number::{LcNumber, DEFAULT_HORIZON};

/// Parses a literal with the default horizon `d^32`.
pub fn parse_lc(text: &str) -> Result<LcNumber, SyntaxError> {
    parse_lc_with_horizon(text, ExpQ::integer(DEFAULT_HORIZON))
}

pub fn parse_lc_with_horizon(text: &str, horizon: impl Into<ExtQ>) -> Result<LcNumber, SyntaxError> {
    let mut p = Cursor::new(text);
    let mut raw = Vec::new();
    p.skip_ws();
    let mut sign = match p.peek() {
        Some('-') => {
            p.bump();
            -1.0
        }
        Some('+') => {
            p.bump();
            1.0
        }
        _ => 1.0,
    };
    loop {
        let (q, c) = p.term()?;
        raw.push((q, sign * c));
        p.skip_ws();
        match p.peek() {
            Some('+') => sign = 1.0,
            Some('-') => sign = -1.0,
            None => break,
            Some(c) => return Err(SyntaxError::new(p.pos, &["'+'", "'-'"], Some(c))),
        }
        p.bump();
    }
    Ok(LcNumber::normalize(raw, horizon))
}

pub(crate) struct Cursor<'a> {
    pub(crate) src: &'a str,
    pub(crate) pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    pub(crate) fn error(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError::new(self.pos, expected, self.peek())
    }

    pub(crate) fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    /// `digits ['.' digits] [('e'|'E') ['+'|'-'] digits]`, unsigned.
    pub(crate) fn number_token(&mut self) -> Option<&'a str> {
        let start = self.pos;
        let s = self.src.as_bytes();
        let mut i = self.pos;
        while i < s.len() && s[i].is_ascii_digit() {
            i += 1;
        }
        if i < s.len() && s[i] == b'.' {
            i += 1;
            while i < s.len() && s[i].is_ascii_digit() {
                i += 1;
            }
        }
        if i == start || (i == start + 1 && s[start] == b'.') {
            return None;
        }
        if i < s.len() && (s[i] == b'e' || s[i] == b'E') {
            let mut j = i + 1;
            if j < s.len() && (s[j] == b'+' || s[j] == b'-') {
                j += 1;
            }
            let digits = j;
            while j < s.len() && s[j].is_ascii_digit() {
                j += 1;
            }
            if j > digits {
                i = j;
            }
        }
        self.pos = i;
        Some(&self.src[start..i])
    }

    fn integer(&mut self) -> Result<i64, SyntaxError> {
        self.skip_ws();
        let start = self.pos;
        let neg = self.peek() == Some('-');
        if neg {
            self.bump();
        }
        let digits_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if self.pos == digits_start {
            return Err(self.error(&["integer"]));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| SyntaxError::new(start, &["integer in range"], self.src[start..].chars().next()))
    }

    fn coefficient(&mut self) -> Result<Option<f64>, SyntaxError> {
        let start = self.pos;
        let Some(tok) = self.number_token() else {
            return Ok(None);
        };
        let value: f64 = tok
            .parse()
            .map_err(|_| SyntaxError::new(start, &["number"], tok.chars().next()))?;
        // Fraction `n/m`: only when a number follows the slash.
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.bump();
            self.skip_ws();
            let den_start = self.pos;
            match self.number_token() {
                Some(den) => {
                    let den: f64 = den
                        .parse()
                        .map_err(|_| SyntaxError::new(den_start, &["number"], None))?;
                    if den == 0.0 {
                        return Err(SyntaxError::new(den_start, &["nonzero denominator"], Some('0')));
                    }
                    return Ok(Some(value / den));
                }
                None => return Err(self.error(&["number"])),
            }
        }
        self.pos = save;
        Ok(Some(value))
    }

    fn exponent(&mut self) -> Result<ExpQ, SyntaxError> {
        self.skip_ws();
        if self.eat('(') {
            let num = self.integer()?;
            self.skip_ws();
            if !self.eat('/') {
                if self.eat(')') {
                    return Ok(ExpQ::integer(num));
                }
                return Err(self.error(&["'/'", "')'"]));
            }
            let den_pos = self.pos;
            let den = self.integer()?;
            if den <= 0 {
                return Err(SyntaxError::new(den_pos, &["positive denominator"], self.src[den_pos..].chars().next()));
            }
            if !self.eat(')') {
                return Err(self.error(&["')'"]));
            }
            return Ok(ExpQ::new(num, den));
        }
        let start = self.pos;
        let neg = self.peek() == Some('-');
        if neg {
            self.bump();
        }
        let Some(tok) = self.number_token() else {
            return Err(self.error(&["exponent"]));
        };
        let r: Rational64 = decimal_to_rational(tok)
            .ok_or_else(|| SyntaxError::new(start, &["exact exponent"], tok.chars().next()))?;
        Ok(ExpQ::from(if neg { -r } else { r }))
    }

    fn term(&mut self) -> Result<(ExpQ, f64), SyntaxError> {
        self.skip_ws();
        let coeff = self.coefficient()?;
        self.skip_ws();
        if self.peek() == Some('d') {
            self.bump();
            self.skip_ws();
            let q = if self.peek() == Some('^') {
                self.bump();
                self.exponent()?
            } else {
                ExpQ::ONE
            };
            Ok((q, coeff.unwrap_or(1.0)))
        } else {
            match coeff {
                Some(c) => Ok((ExpQ::ZERO, c)),
                None => Err(self.error(&["number", "'d'"])),
            }
        }
    }
}

fn write_exponent(f: &mut fmt::Formatter<'_>, q: ExpQ) -> fmt::Result {
    if q.is_integer() {
        write!(f, "{}", q.numer())
    } else {
        write!(f, "({}/{})", q.numer(), q.denom())
    }
}

/// Prints in the literal grammar. The horizon is not part of the literal;
/// `{:?}` shows it.
impl fmt::Display for LcNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, &(q, c)) in self.terms().iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c < 0.0 {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c < 0.0 { " - " } else { " + " })?;
            }
            if q.is_zero() {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != 1.0 {
                write!(f, "{mag}")?;
            }
            f.write_str("d")?;
            if q != ExpQ::ONE {
                f.write_str("^")?;
                write_exponent(f, q)?;
            }
        }
        Ok(())
    }
}
