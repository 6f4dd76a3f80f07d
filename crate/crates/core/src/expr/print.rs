use std::fmt;

use num_rational::Rational64;

use super::Expr;

const SUM: u8 = 1;
const PRODUCT: u8 = 2;
const UNARY: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

/// Exact decimal for rationals whose denominator has no prime factor other
/// than 2 and 5.
fn terminating_decimal(c: Rational64) -> Option<String> {
    let (n, mut m) = (*c.numer() as i128, *c.denom() as i128);
    let (mut twos, mut fives) = (0u32, 0u32);
    while m % 2 == 0 {
        m /= 2;
        twos += 1;
    }
    while m % 5 == 0 {
        m /= 5;
        fives += 1;
    }
    if m != 1 {
        return None;
    }
    let digits = twos.max(fives);
    let scaled = n.checked_mul(2i128.checked_pow(digits - twos)?)?.checked_mul(5i128.checked_pow(digits - fives)?)?;
    if digits == 0 {
        return Some(scaled.to_string());
    }
    let base = 10i128.checked_pow(digits)?;
    let sign = if scaled < 0 { "-" } else { "" };
    let a = scaled.unsigned_abs();
    let b = base as u128;
    Some(format!("{sign}{}.{:0width$}", a / b, a % b, width = digits as usize))
}

fn const_text(c: Rational64) -> String {
    terminating_decimal(c).unwrap_or_else(|| format!("({}/{})", c.numer(), c.denom()))
}

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Const(c) if *c.numer() < 0 && *c.denom() == 1 => UNARY,
        Expr::Const(c) if *c.numer() < 0 && terminating_decimal(*c).is_some() => UNARY,
        Expr::Const(_) | Expr::Var(_) | Expr::Apply(..) => ATOM,
        Expr::Neg(_) => UNARY,
        Expr::Add(..) | Expr::Sub(..) => SUM,
        Expr::Mul(..) | Expr::Div(..) => PRODUCT,
        Expr::IntPow(..) => POWER,
    }
}

/// Parenthesized form. A quotient of two integer constants would read back
/// as a rational literal, so its numerator gets its own parentheses.
fn wrapped(e: &Expr) -> String {
    if let Expr::Div(a, b) = e {
        if let (Expr::Const(n), Expr::Const(m)) = (a.as_ref(), b.as_ref()) {
            if n.is_integer() && m.is_integer() && *m.numer() > 0 {
                return format!("(({})/{})", n.numer(), m.numer());
            }
        }
    }
    format!("({e})")
}

fn operand(e: &Expr, min: u8, leftmost: bool) -> String {
    let s = e.to_string();
    if prec(e) < min || (!leftmost && s.starts_with('-')) {
        wrapped(e)
    } else {
        s
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Const(c) => f.write_str(&const_text(*c)),
            Expr::Var(v) => f.write_str(v),
            Expr::Neg(a) => {
                let inner = match a.as_ref() {
                    Expr::Const(_) => wrapped(a),
                    _ => operand(a, UNARY, false),
                };
                write!(f, "-{inner}")
            }
            Expr::Add(a, b) => write!(f, "{} + {}", operand(a, SUM, true), operand(b, PRODUCT, false)),
            Expr::Sub(a, b) => write!(f, "{} - {}", operand(a, SUM, true), operand(b, PRODUCT, false)),
            Expr::Mul(a, b) => write!(f, "{}*{}", operand(a, PRODUCT, true), operand(b, UNARY, false)),
            Expr::Div(a, b) => write!(f, "{}/{}", operand(a, PRODUCT, true), operand(b, UNARY, false)),
            Expr::IntPow(a, n) => write!(f, "{}^{n}", operand(a, ATOM, false)),
            Expr::Apply(func, a) => write!(f, "{}({a})", func.name()),
        }
    }
}
