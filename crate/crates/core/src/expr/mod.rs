//! Real expressions over named variables.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' int)?          int := ['-'] digits ('^' int)?
//! atom  := number | '(' int '/' int ')' | '(' expr ')'
//!        | func '(' expr ')' | ident
//! func  := exp | ln | sin | cos | sqrt | abs
//! ```

mod diff;
mod eval;
mod parse;
mod print;

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;

pub use diff::diff_symbolic;
pub use eval::eval_lc;
pub(crate) use eval::eval_jet;
pub use parse::parse_expr;

use crate::number::LcNumber;

/// Variable bindings for [`eval_lc`].
pub type Env = BTreeMap<String, LcNumber>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Func {
    Exp,
    Ln,
    Sin,
    Cos,
    Sqrt,
    Abs,
}

impl Func {
    pub const ALL: [Func; 6] = [Func::Exp, Func::Ln, Func::Sin, Func::Cos, Func::Sqrt, Func::Abs];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(Rational64),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    IntPow(Box<Expr>, i64),
    Apply(Func, Box<Expr>),
}

impl Expr {
    pub fn int(n: i64) -> Expr {
        Expr::Const(Rational64::from_integer(n))
    }

    pub fn var(name: &str) -> Expr {
        Expr::Var(name.to_string())
    }

    pub fn apply(f: Func, arg: Expr) -> Expr {
        Expr::Apply(f, Box::new(arg))
    }

    pub fn pow(self, n: i64) -> Expr {
        Expr::IntPow(Box::new(self), n)
    }

    /// Variables occurring in the expression.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Const(_) => {}
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Neg(a) | Expr::IntPow(a, _) | Expr::Apply(_, a) => a.collect_vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    pub fn contains_var(&self, name: &str) -> bool {
        match self {
            Expr::Const(_) => false,
            Expr::Var(v) => v == name,
            Expr::Neg(a) | Expr::IntPow(a, _) | Expr::Apply(_, a) => a.contains_var(name),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.contains_var(name) || b.contains_var(name)
            }
        }
    }

    /// Plain binary64 evaluation. Unbound variables evaluate to NaN.
    pub fn eval_f64(&self, env: &BTreeMap<String, f64>) -> f64 {
        match self {
            Expr::Const(c) => *c.numer() as f64 / *c.denom() as f64,
            Expr::Var(v) => env.get(v).copied().unwrap_or(f64::NAN),
            Expr::Neg(a) => -a.eval_f64(env),
            Expr::Add(a, b) => a.eval_f64(env) + b.eval_f64(env),
            Expr::Sub(a, b) => a.eval_f64(env) - b.eval_f64(env),
            Expr::Mul(a, b) => a.eval_f64(env) * b.eval_f64(env),
            Expr::Div(a, b) => a.eval_f64(env) / b.eval_f64(env),
            Expr::IntPow(a, n) => a.eval_f64(env).powi(*n as i32),
            Expr::Apply(f, a) => {
                let x = a.eval_f64(env);
                match f {
                    Func::Exp => x.exp(),
                    Func::Ln => x.ln(),
                    Func::Sin => x.sin(),
                    Func::Cos => x.cos(),
                    Func::Sqrt => x.sqrt(),
                    Func::Abs => x.abs(),
                }
            }
        }
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl std::ops::$trait for Expr {
            type Output = Expr;
            fn $method(self, rhs: Expr) -> Expr {
                Expr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::Neg(Box::new(self))
    }
}

impl std::str::FromStr for Expr {
    type Err = crate::error::SyntaxError;
    fn from_str(s: &str) -> Result<Expr, Self::Err> {
        parse_expr(s)
    }
}
