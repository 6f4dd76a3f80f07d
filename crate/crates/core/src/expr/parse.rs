use num_rational::Rational64;
use num_traits::{CheckedMul, Pow};

use super::{Expr, Func};
use crate::error::SyntaxError;
use crate::exponent::decimal_to_rational;
use crate::literal::Cursor;

pub fn parse_expr(text: &str) -> Result<Expr, SyntaxError> {
    let mut p = Cursor::new(text);
    let e = expr(&mut p)?;
    p.skip_ws();
    match p.peek() {
        None => Ok(e),
        Some(_) => Err(p.error(&["operator", "end of input"])),
    }
}

fn expr(p: &mut Cursor) -> Result<Expr, SyntaxError> {
    let mut lhs = term(p)?;
    loop {
        p.skip_ws();
        match p.peek() {
            Some('+') => {
                p.bump();
                lhs = lhs + term(p)?;
            }
            Some('-') => {
                p.bump();
                lhs = lhs - term(p)?;
            }
            _ => return Ok(lhs),
        }
    }
}

fn term(p: &mut Cursor) -> Result<Expr, SyntaxError> {
    let mut lhs = unary(p)?;
    loop {
        p.skip_ws();
        match p.peek() {
            Some('*') => {
                p.bump();
                lhs = lhs * unary(p)?;
            }
            Some('/') => {
                p.bump();
                lhs = lhs / unary(p)?;
            }
            _ => return Ok(lhs),
        }
    }
}

fn unary(p: &mut Cursor) -> Result<Expr, SyntaxError> {
    p.skip_ws();
    if p.peek() != Some('-') {
        return power(p);
    }
    p.bump();
    p.skip_ws();
    // A literal directly after the sign folds into a negative constant
    // unless it is the base of a power.
    if p.peek().is_some_and(|c| c.is_ascii_digit() || c == '.') {
        let save = p.pos;
        let c = number(p)?;
        p.skip_ws();
        if p.peek() != Some('^') {
            return Ok(Expr::Const(-c));
        }
        p.pos = save;
    }
    Ok(-unary(p)?)
}

fn power(p: &mut Cursor) -> Result<Expr, SyntaxError> {
    let base = atom(p)?;
    p.skip_ws();
    if p.peek() == Some('^') {
        p.bump();
        let n = int_exponent(p)?;
        return Ok(base.pow(n));
    }
    Ok(base)
}

/// Signed integer, optionally parenthesized; `a^b^c` folds right to left.
fn int_exponent(p: &mut Cursor) -> Result<i64, SyntaxError> {
    p.skip_ws();
    let start = p.pos;
    let n = if p.eat('(') {
        let n = signed_int(p)?;
        if !p.eat(')') {
            return Err(p.error(&["')'"]));
        }
        n
    } else {
        signed_int(p)?
    };
    p.skip_ws();
    if p.peek() == Some('^') {
        p.bump();
        let m = int_exponent(p)?;
        let v = u32::try_from(m)
            .ok()
            .and_then(|m| n.checked_pow(m))
            .ok_or_else(|| SyntaxError::new(start, &["integer exponent in range"], None))?;
        return Ok(v);
    }
    Ok(n)
}

fn signed_int(p: &mut Cursor) -> Result<i64, SyntaxError> {
    p.skip_ws();
    let start = p.pos;
    if p.peek() == Some('-') {
        p.bump();
    }
    while p.peek().is_some_and(|c| c.is_ascii_digit()) {
        p.bump();
    }
    let tok = &p.src[start..p.pos];
    tok.parse().map_err(|_| {
        p.pos = start;
        p.error(&["integer"])
    })
}

fn atom(p: &mut Cursor) -> Result<Expr, SyntaxError> {
    p.skip_ws();
    match p.peek() {
        Some('(') => {
            if let Some(c) = rational_literal(p) {
                return Ok(Expr::Const(c));
            }
            p.bump();
            let e = expr(p)?;
            if !p.eat(')') {
                return Err(p.error(&["')'", "operator"]));
            }
            Ok(e)
        }
        Some(c) if c.is_ascii_digit() || c == '.' => Ok(Expr::Const(number(p)?)),
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {
            let start = p.pos;
            while p.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                p.bump();
            }
            let name = &p.src[start..p.pos];
            match Func::from_name(name) {
                Some(f) => {
                    if !p.eat('(') {
                        return Err(p.error(&["'('"]));
                    }
                    let arg = expr(p)?;
                    if !p.eat(')') {
                        return Err(p.error(&["')'", "operator"]));
                    }
                    Ok(Expr::apply(f, arg))
                }
                None => Ok(Expr::Var(name.to_string())),
            }
        }
        _ => Err(p.error(&["number", "identifier", "'('", "'-'"])),
    }
}

/// `(p/q)` with integer `p` and positive integer `q`; restores the cursor
/// when the text does not have that exact shape.
fn rational_literal(p: &mut Cursor) -> Option<Rational64> {
    let save = p.pos;
    let r = (|| {
        p.bump();
        let n = signed_int(p).ok()?;
        if !p.eat('/') {
            return None;
        }
        p.skip_ws();
        if !p.peek().is_some_and(|c| c.is_ascii_digit()) {
            return None;
        }
        let m = signed_int(p).ok()?;
        if m <= 0 || !p.eat(')') {
            return None;
        }
        Some(Rational64::new(n, m))
    })();
    if r.is_none() {
        p.pos = save;
    }
    r
}

/// Unsigned decimal with optional exponent, read exactly.
fn number(p: &mut Cursor) -> Result<Rational64, SyntaxError> {
    let start = p.pos;
    let tok = p.number_token().ok_or_else(|| p.error(&["number"]))?;
    let out_of_range = || SyntaxError::new(start, &["number in exact range"], tok.chars().next());
    let (mant, exp) = match tok.find(['e', 'E']) {
        Some(i) => (&tok[..i], tok[i + 1..].parse::<i32>().map_err(|_| out_of_range())?),
        None => (tok, 0),
    };
    let m = decimal_to_rational(mant).ok_or_else(out_of_range)?;
    let ten = Rational64::from_integer(10);
    if exp.unsigned_abs() > 18 {
        return Err(out_of_range());
    }
    let scale: Rational64 = Pow::pow(ten, exp);
    m.checked_mul(&scale).ok_or_else(out_of_range)
}
