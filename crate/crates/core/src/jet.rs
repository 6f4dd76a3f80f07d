//! Truncated multivariate Taylor polynomials with LC coefficients.
//!
//! A [`Jet`] holds `Σ_{|α| ≤ k} c_α u^α` in `n` perturbation variables.
//! Arithmetic drops every monomial of total degree above `k`. Used to
//! expand expressions around centers that are not real, where the
//! `x₀ + d` trick would mix the scales of the center and the increment.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::expr::{Expr, Func};
use crate::number::{Comparison, LcNumber};
use crate::series::{apply_elementary, nth_root, Elementary};

#[derive(Debug)]
pub(crate) struct Layout {
    pub(crate) n: usize,
    pub(crate) k: usize,
    /// Multi-indices in order of increasing total degree.
    pub(crate) alphas: Vec<Vec<u32>>,
    lookup: HashMap<Vec<u32>, usize>,
    /// `(i, j, out)` with `alphas[i] + alphas[j] = alphas[out]`.
    products: Vec<(usize, usize, usize)>,
}

fn multi_indices(n: usize, deg: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if prefix.len() + 1 == n {
        prefix.push(deg);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for first in (0..=deg).rev() {
        prefix.push(first);
        multi_indices(n, deg - first, prefix, out);
        prefix.pop();
    }
}

impl Layout {
    pub(crate) fn new(n: usize, k: usize) -> Arc<Layout> {
        assert!(n >= 1);
        let mut alphas = Vec::new();
        let mut degree = Vec::new();
        for deg in 0..=k as u32 {
            let before = alphas.len();
            multi_indices(n, deg, &mut Vec::new(), &mut alphas);
            degree.extend(std::iter::repeat_n(deg as usize, alphas.len() - before));
        }
        let lookup: HashMap<Vec<u32>, usize> =
            alphas.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        let mut products = Vec::new();
        for i in 0..alphas.len() {
            for j in 0..alphas.len() {
                if degree[i] + degree[j] > k {
                    break;
                }
                let sum: Vec<u32> = alphas[i].iter().zip(&alphas[j]).map(|(a, b)| a + b).collect();
                products.push((i, j, lookup[&sum]));
            }
        }
        Arc::new(Layout {
            n,
            k,
            alphas,
            lookup,
            products,
        })
    }

    pub(crate) fn len(&self) -> usize {
        self.alphas.len()
    }

    pub(crate) fn index_of(&self, alpha: &[u32]) -> Option<usize> {
        self.lookup.get(alpha).copied()
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Jet {
    layout: Arc<Layout>,
    pub(crate) c: Vec<LcNumber>,
}

impl Jet {
    pub(crate) fn constant(layout: &Arc<Layout>, v: LcNumber) -> Jet {
        let mut c = vec![LcNumber::zero(); layout.len()];
        c[0] = v;
        Jet {
            layout: layout.clone(),
            c,
        }
    }

    /// `center + u_i`.
    pub(crate) fn variable(layout: &Arc<Layout>, i: usize, center: LcNumber) -> Jet {
        let mut j = Jet::constant(layout, center);
        let mut alpha = vec![0; layout.n];
        alpha[i] = 1;
        if let Some(idx) = layout.index_of(&alpha) {
            j.c[idx] = LcNumber::one();
        }
        j
    }

    fn zip(&self, other: &Jet, f: impl Fn(&LcNumber, &LcNumber) -> LcNumber) -> Jet {
        Jet {
            layout: self.layout.clone(),
            c: self.c.iter().zip(&other.c).map(|(a, b)| f(a, b)).collect(),
        }
    }

    fn map(&self, f: impl Fn(&LcNumber) -> LcNumber) -> Jet {
        Jet {
            layout: self.layout.clone(),
            c: self.c.iter().map(f).collect(),
        }
    }

    pub(crate) fn mul(&self, other: &Jet) -> Jet {
        let mut c = vec![LcNumber::zero(); self.layout.len()];
        for &(i, j, out) in &self.layout.products {
            if self.c[i].is_exact_zero() || other.c[j].is_exact_zero() {
                continue;
            }
            c[out] = &c[out] + &(&self.c[i] * &other.c[j]);
        }
        Jet {
            layout: self.layout.clone(),
            c,
        }
    }

    /// `Σ_j t_j (self − self₀)^j` for the Taylor coefficients `t_j` of an
    /// outer function at `self₀`.
    fn compose(&self, t: &[LcNumber]) -> Jet {
        let mut tilde = self.clone();
        tilde.c[0] = LcNumber::zero();
        let mut out = Jet::constant(&self.layout, t[0].clone());
        let mut pow = tilde.clone();
        for (j, tj) in t.iter().enumerate().skip(1) {
            if j > 1 {
                pow = pow.mul(&tilde);
            }
            if !tj.is_exact_zero() {
                out = out.zip(&pow, |a, b| a + &(b * tj));
            }
        }
        out
    }

    fn inv(&self) -> Result<Jet> {
        let u0 = &self.c[0];
        let r = u0.inv()?;
        let mut t = Vec::with_capacity(self.layout.k + 1);
        let mut p = r.clone();
        for _ in 0..=self.layout.k {
            t.push(p.clone());
            p = -(&p * &r);
        }
        Ok(self.compose(&t))
    }

    fn powi(&self, n: i64) -> Result<Jet> {
        if n < 0 {
            return self.inv()?.powi(-n);
        }
        let mut result = Jet::constant(&self.layout, LcNumber::one());
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        Ok(result)
    }

    fn apply(&self, f: Func) -> Result<Jet> {
        let k = self.layout.k;
        let u0 = &self.c[0];
        let fact = |j: usize| (1..=j).fold(1.0, |a, i| a * i as f64);
        let t: Vec<LcNumber> = match f {
            Func::Exp => {
                let e = apply_elementary(Elementary::Exp, u0)?;
                (0..=k).map(|j| e.div_scalar(fact(j))).collect::<Result<_>>()?
            }
            Func::Sin | Func::Cos => {
                let s = apply_elementary(Elementary::Sin, u0)?;
                let c = apply_elementary(Elementary::Cos, u0)?;
                let cycle = match f {
                    Func::Sin => [s.clone(), c.clone(), -&s, -&c],
                    _ => [c.clone(), -&s, -&c, s.clone()],
                };
                (0..=k).map(|j| cycle[j % 4].div_scalar(fact(j))).collect::<Result<_>>()?
            }
            Func::Ln => {
                let l = apply_elementary(Elementary::Ln, u0)?;
                let r = u0.inv()?;
                let mut t = vec![l];
                let mut p = LcNumber::one();
                for j in 1..=k {
                    p = &p * &r;
                    let sign = if j % 2 == 1 { 1.0 } else { -1.0 };
                    t.push(p.scale(sign).div_scalar(j as f64)?);
                }
                t
            }
            Func::Sqrt => {
                if u0.is_zero() {
                    return Err(Error::NonJetResult("sqrt at a zero of its argument".into()));
                }
                let s = nth_root(u0, 2)?;
                let r = u0.inv()?;
                let mut t = vec![s.clone()];
                let mut p = s;
                let mut binom = 1.0;
                for j in 1..=k {
                    binom *= (0.5 - (j - 1) as f64) / j as f64;
                    p = &p * &r;
                    t.push(p.scale(binom));
                }
                t
            }
            Func::Abs => {
                let sign = match u0.signum() {
                    Comparison::Greater => 1.0,
                    Comparison::Less => -1.0,
                    Comparison::EqualAtHorizon => {
                        return Err(Error::NonJetResult("abs at a zero of its argument".into()))
                    }
                };
                return Ok(self.map(|c| c.scale(sign)));
            }
        };
        Ok(self.compose(&t))
    }

    /// Evaluates `e` with each variable bound to a jet.
    pub(crate) fn eval(e: &Expr, layout: &Arc<Layout>, env: &HashMap<&str, Jet>) -> Result<Jet> {
        Ok(match e {
            Expr::Const(c) => Jet::constant(layout, LcNumber::constant(*c.numer() as f64 / *c.denom() as f64)),
            Expr::Var(v) => env
                .get(v.as_str())
                .cloned()
                .ok_or_else(|| Error::UnboundVariable(v.clone()))?,
            Expr::Neg(a) => Jet::eval(a, layout, env)?.map(|c| -c),
            Expr::Add(a, b) => Jet::eval(a, layout, env)?.zip(&Jet::eval(b, layout, env)?, |x, y| x + y),
            Expr::Sub(a, b) => Jet::eval(a, layout, env)?.zip(&Jet::eval(b, layout, env)?, |x, y| x - y),
            Expr::Mul(a, b) => Jet::eval(a, layout, env)?.mul(&Jet::eval(b, layout, env)?),
            Expr::Div(a, b) => Jet::eval(a, layout, env)?.mul(&Jet::eval(b, layout, env)?.inv()?),
            Expr::IntPow(a, n) => Jet::eval(a, layout, env)?.powi(*n)?,
            Expr::Apply(f, a) => Jet::eval(a, layout, env)?.apply(*f)?,
        })
    }

    /// Coefficients paired with their multi-indices.
    pub(crate) fn entries(&self) -> impl Iterator<Item = (&[u32], &LcNumber)> {
        self.layout.alphas.iter().map(Vec::as_slice).zip(&self.c)
    }
}
