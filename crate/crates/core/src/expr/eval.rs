use super::{Env, Expr, Func};
use crate::error::{Error, Result};
use crate::exponent::ExtQ;
use crate::number::LcNumber;
use crate::series::{apply_elementary, nth_root, Elementary};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Mode {
    Value,
    /// Reject nodes that are not smooth at the real part of their argument.
    Jet,
}

/// Evaluates `e` with every variable taken from `env`.
pub fn eval_lc(e: &Expr, env: &Env) -> Result<LcNumber> {
    eval(e, env, Mode::Value)
}

/// Like [`eval_lc`], but `abs` and `sqrt` of an argument whose real part
/// vanishes are reported as [`Error::NonJetResult`].
pub(crate) fn eval_jet(e: &Expr, env: &Env) -> Result<LcNumber> {
    eval(e, env, Mode::Jet)
}

fn eval(e: &Expr, env: &Env, mode: Mode) -> Result<LcNumber> {
    Ok(match e {
        Expr::Const(c) => LcNumber::constant(*c.numer() as f64 / *c.denom() as f64),
        Expr::Var(v) => env
            .get(v)
            .cloned()
            .ok_or_else(|| Error::UnboundVariable(v.clone()))?,
        Expr::Neg(a) => -eval(a, env, mode)?,
        Expr::Add(a, b) => eval(a, env, mode)? + eval(b, env, mode)?,
        Expr::Sub(a, b) => eval(a, env, mode)? - eval(b, env, mode)?,
        Expr::Mul(a, b) => eval(a, env, mode)? * eval(b, env, mode)?,
        Expr::Div(a, b) => eval(a, env, mode)?.checked_div(&eval(b, env, mode)?)?,
        Expr::IntPow(a, n) => eval(a, env, mode)?.powi(*n)?,
        Expr::Apply(f, a) => {
            let x = eval(a, env, mode)?;
            match f {
                Func::Exp => apply_elementary(Elementary::Exp, &x)?,
                Func::Ln => apply_elementary(Elementary::Ln, &x)?,
                Func::Sin => apply_elementary(Elementary::Sin, &x)?,
                Func::Cos => apply_elementary(Elementary::Cos, &x)?,
                Func::Sqrt => {
                    if mode == Mode::Jet && x.lambda() > ExtQ::from(0) {
                        return Err(Error::NonJetResult("sqrt at a zero of its argument".into()));
                    }
                    if x.is_exact_zero() {
                        LcNumber::zero()
                    } else {
                        nth_root(&x, 2)?
                    }
                }
                Func::Abs => {
                    if mode == Mode::Jet && x.lambda() > ExtQ::from(0) {
                        return Err(Error::NonJetResult("abs at a zero of its argument".into()));
                    }
                    x.abs()
                }
            }
        }
    })
}
