use num_rational::Rational64;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Zero};

use super::{Expr, Func};
use crate::error::{Error, Result};

/// Symbolic derivative with respect to `var`, folding constant
/// subexpressions as it goes.
pub fn diff_symbolic(e: &Expr, var: &str) -> Result<Expr> {
    Ok(match e {
        Expr::Const(_) => zero(),
        Expr::Var(v) => Expr::int((v == var) as i64),
        Expr::Neg(a) => neg(diff_symbolic(a, var)?),
        Expr::Add(a, b) => add(diff_symbolic(a, var)?, diff_symbolic(b, var)?),
        Expr::Sub(a, b) => sub(diff_symbolic(a, var)?, diff_symbolic(b, var)?),
        Expr::Mul(a, b) => add(
            mul(diff_symbolic(a, var)?, (**b).clone()),
            mul((**a).clone(), diff_symbolic(b, var)?),
        ),
        Expr::Div(a, b) => {
            let num = sub(
                mul(diff_symbolic(a, var)?, (**b).clone()),
                mul((**a).clone(), diff_symbolic(b, var)?),
            );
            div(num, pow((**b).clone(), 2))
        }
        Expr::IntPow(a, n) => {
            if *n == 0 {
                zero()
            } else {
                mul(mul(Expr::int(*n), pow((**a).clone(), n - 1)), diff_symbolic(a, var)?)
            }
        }
        Expr::Apply(f, a) => {
            let inner = diff_symbolic(a, var)?;
            let u = (**a).clone();
            let outer = match f {
                Func::Exp => Expr::apply(Func::Exp, u),
                Func::Ln => return Ok(div(inner, u)),
                Func::Sin => Expr::apply(Func::Cos, u),
                Func::Cos => neg(Expr::apply(Func::Sin, u)),
                Func::Sqrt => return Ok(div(inner, mul(Expr::int(2), Expr::apply(Func::Sqrt, u)))),
                Func::Abs => return Err(Error::NotDifferentiable("abs".into())),
            };
            mul(outer, inner)
        }
    })
}

fn zero() -> Expr {
    Expr::int(0)
}

fn konst(e: &Expr) -> Option<Rational64> {
    match e {
        Expr::Const(c) => Some(*c),
        _ => None,
    }
}

fn is(e: &Expr, v: i64) -> bool {
    konst(e) == Some(Rational64::from_integer(v))
}

fn neg(a: Expr) -> Expr {
    match a {
        Expr::Const(c) => Expr::Const(-c),
        Expr::Neg(inner) => *inner,
        a => -a,
    }
}

fn add(a: Expr, b: Expr) -> Expr {
    if let (Some(x), Some(y)) = (konst(&a), konst(&b)) {
        if let Some(s) = x.checked_add(&y) {
            return Expr::Const(s);
        }
    }
    if is(&a, 0) {
        return b;
    }
    if is(&b, 0) {
        return a;
    }
    a + b
}

fn sub(a: Expr, b: Expr) -> Expr {
    if let (Some(x), Some(y)) = (konst(&a), konst(&b)) {
        if let Some(s) = x.checked_sub(&y) {
            return Expr::Const(s);
        }
    }
    if is(&b, 0) {
        return a;
    }
    if is(&a, 0) {
        return neg(b);
    }
    a - b
}

fn mul(a: Expr, b: Expr) -> Expr {
    if let (Some(x), Some(y)) = (konst(&a), konst(&b)) {
        if let Some(p) = x.checked_mul(&y) {
            return Expr::Const(p);
        }
    }
    if is(&a, 0) || is(&b, 0) {
        return zero();
    }
    if is(&a, 1) {
        return b;
    }
    if is(&b, 1) {
        return a;
    }
    a * b
}

fn div(a: Expr, b: Expr) -> Expr {
    if let (Some(x), Some(y)) = (konst(&a), konst(&b)) {
        if !y.is_zero() {
            if let Some(q) = x.checked_mul(&y.recip()) {
                return Expr::Const(q);
            }
        }
    }
    if is(&a, 0) {
        return zero();
    }
    if konst(&b).is_some_and(|y| y.is_one()) {
        return a;
    }
    a / b
}

fn pow(a: Expr, n: i64) -> Expr {
    match n {
        0 => Expr::int(1),
        1 => a,
        _ => a.pow(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;

    fn d(s: &str) -> String {
        diff_symbolic(&parse_expr(s).unwrap(), "x").unwrap().to_string()
    }

    #[test]
    fn examples() {
        assert_eq!(d("x^2"), "2*x");
        assert_eq!(d("sin(x)"), "cos(x)");
        assert_eq!(d("exp(x^2)"), "exp(x^2)*(2*x)");
        assert_eq!(d("3*y + 2"), "0");
        assert_eq!(d("cos(x)"), "-sin(x)");
        assert_eq!(d("ln(x)"), "1/x");
    }

    #[test]
    fn abs_is_rejected() {
        let e = parse_expr("x + abs(x)").unwrap();
        assert!(matches!(diff_symbolic(&e, "x"), Err(Error::NotDifferentiable(_))));
    }
}
