//! Power series `Σ a_j (x − c)^j` with LC coefficients, and the elementary
//! functions built on them.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exponent::{ExpQ, ExtQ};
use crate::number::{relative_depth, working_horizon, Comparison, LcNumber};

/// Consecutive invisible terms after which [`PowerSeries::sum_at`] stops.
const INVISIBLE_RUN: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries {
    center: LcNumber,
    coeffs: Vec<LcNumber>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Converges,
    Diverges,
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConvergenceVerdict {
    pub verdict: Verdict,
    pub lambda0_estimate: ExtQ,
    /// `λ(x − center) − λ₀`.
    pub gap: ExtQ,
    pub jmax: usize,
    pub window: usize,
}

impl ConvergenceVerdict {
    pub fn converges(&self) -> bool {
        self.verdict == Verdict::Converges
    }
}

/// `n(n−1)…(n−k+1)` as a float; exact while it fits in 53 bits.
fn falling(n: usize, k: usize) -> f64 {
    (n - k + 1..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Binomial coefficient `C(n, k)`.
fn binomial(n: usize, k: usize) -> f64 {
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64).round()
}

impl PowerSeries {
    pub fn new(center: LcNumber, coeffs: Vec<LcNumber>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        Ok(PowerSeries { center, coeffs })
    }

    /// Series with real coefficients.
    pub fn from_reals(center: LcNumber, coeffs: &[f64]) -> Result<Self> {
        Self::new(center, coeffs.iter().map(|&c| LcNumber::constant(c)).collect())
    }

    pub fn center(&self) -> &LcNumber {
        &self.center
    }

    pub fn coeffs(&self) -> &[LcNumber] {
        &self.coeffs
    }

    pub fn jmax(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The last half of the available indices, rounded up.
    pub fn default_window(&self) -> usize {
        self.jmax().div_ceil(2).max(1)
    }

    /// `max −λ(a_j)/j` over the last `window` indices; zero coefficients
    /// contribute `−∞`.
    pub fn lambda0_estimate(&self, window: usize) -> Result<ExtQ> {
        let jmax = self.jmax();
        if jmax < 1 {
            return Err(Error::EmptySeries);
        }
        if window == 0 || window > jmax {
            return Err(Error::InvalidWindow { window, jmax });
        }
        Ok((jmax + 1 - window..=jmax)
            .map(|j| match self.coeffs[j].lambda() {
                ExtQ::Finite(q) => ExtQ::Finite(-q / j as i64),
                _ => ExtQ::NegInf,
            })
            .max()
            .unwrap_or(ExtQ::NegInf))
    }

    pub fn converges_at(&self, x: &LcNumber, window: usize) -> Result<ConvergenceVerdict> {
        let lambda0 = self.lambda0_estimate(window)?;
        let lx = (x - &self.center).lambda();
        let gap = match (lx, lambda0) {
            (ExtQ::PosInf, _) | (_, ExtQ::NegInf) => ExtQ::PosInf,
            _ => lx - lambda0,
        };
        let verdict = match gap.cmp(&ExtQ::from(0)) {
            std::cmp::Ordering::Greater => Verdict::Converges,
            std::cmp::Ordering::Equal => Verdict::Boundary,
            std::cmp::Ordering::Less => Verdict::Diverges,
        };
        Ok(ConvergenceVerdict {
            verdict,
            lambda0_estimate: lambda0,
            gap,
            jmax: self.jmax(),
            window,
        })
    }

    /// `Σ_{j ≤ jmax} a_j (x − center)^j`.
    ///
    /// The result horizon is capped at `(jmax + 1)·gap`, where the first
    /// omitted term would sit.
    pub fn sum_at(&self, x: &LcNumber) -> Result<LcNumber> {
        let h = x - &self.center;
        if h.is_exact_zero() {
            return Ok(self.coeffs[0].clone());
        }
        let gap = if self.jmax() == 0 {
            ExtQ::PosInf
        } else {
            let v = self.converges_at(x, self.default_window())?;
            if !v.converges() {
                return Err(Error::NotConvergent { gap: v.gap });
            }
            v.gap
        };
        let mut sum = self.coeffs[0].clone();
        let mut pow = LcNumber::one();
        let mut invisible = 0;
        for a in &self.coeffs[1..] {
            pow = &pow * &h;
            let term = a * &pow;
            if term.lambda() >= sum.horizon() {
                invisible += 1;
                if invisible == INVISIBLE_RUN {
                    break;
                }
            } else {
                invisible = 0;
            }
            sum = &sum + &term;
        }
        Ok(sum.truncate(gap.times(self.jmax() as i64 + 1)))
    }

    /// Coefficients of the `j`-th derivative: `b_{l−j} = l!/(l−j)!·a_l`.
    pub fn differentiate_termwise(&self, j: usize) -> Result<PowerSeries> {
        if j > self.jmax() {
            return Err(Error::OrderTooHigh {
                requested: j,
                available: self.jmax(),
            });
        }
        let coeffs = (j..=self.jmax())
            .map(|l| self.coeffs[l].scale(falling(l, j)))
            .collect();
        Ok(PowerSeries {
            center: self.center.clone(),
            coeffs,
        })
    }

    /// Re-expands around `new_center` by interchanging the double sum.
    pub fn recenter(&self, new_center: &LcNumber, window: usize) -> Result<PowerSeries> {
        let delta = new_center - &self.center;
        let jmax = self.jmax();
        let lambda0 = if jmax == 0 {
            ExtQ::NegInf
        } else {
            self.lambda0_estimate(window)?
        };
        let ld = delta.lambda();
        if !(ld > lambda0) && !delta.is_exact_zero() {
            return Err(Error::NotInRadius {
                lambda: ld,
                lambda0,
            });
        }
        let mut powers = Vec::with_capacity(jmax + 1);
        powers.push(LcNumber::one());
        for l in 1..=jmax {
            let next = &powers[l - 1] * &delta;
            powers.push(next);
        }
        let coeffs = (0..=jmax)
            .map(|j| {
                let mut c = LcNumber::zero();
                for l in j..=jmax {
                    let t = (&self.coeffs[l] * &powers[l - j]).scale(binomial(l, j));
                    c = &c + &t;
                }
                match (lambda0, ld) {
                    (ExtQ::Finite(l0), ExtQ::Finite(ld)) => {
                        let cap = (ld - l0) * (jmax as i64 + 1) - ld * j as i64;
                        c.truncate(cap)
                    }
                    _ => c,
                }
            })
            .collect();
        Ok(PowerSeries {
            center: new_center.clone(),
            coeffs,
        })
    }
}

/// `a_0 + a_1*(x-c) + a_2*(x-c)^2 + …`, zero coefficients omitted.
impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = if self.center.is_zero() {
            "x".to_string()
        } else if self.center.terms().len() == 1 && self.center.signum() == Comparison::Greater {
            format!("(x-{})", self.center)
        } else {
            format!("(x-({}))", self.center)
        };
        let mut first = true;
        for (j, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let simple = a.terms().len() == 1 && a.signum() == Comparison::Greater;
            match (j, simple) {
                (0, _) => write!(f, "{a}")?,
                (_, true) => write!(f, "{a}*{base}")?,
                (_, false) => write!(f, "({a})*{base}")?,
            }
            if j >= 2 {
                write!(f, "^{j}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Elementary {
    Exp,
    Ln,
    Sin,
    Cos,
}

impl Elementary {
    pub fn name(self) -> &'static str {
        match self {
            Elementary::Exp => "exp",
            Elementary::Ln => "ln",
            Elementary::Sin => "sin",
            Elementary::Cos => "cos",
        }
    }
}

/// `i^j/j!` for `j = 0, 1, …` while visible below `horizon`.
fn scaled_powers(i: &LcNumber, horizon: ExpQ) -> Vec<LcNumber> {
    let mut out = vec![LcNumber::one().truncate(horizon)];
    if i.is_zero() {
        return out;
    }
    let mut j = 1.0;
    loop {
        let next = (out.last().unwrap() * i).truncate(horizon);
        if next.is_zero() {
            break;
        }
        out.push(next.scale(1.0 / j));
        j += 1.0;
    }
    out
}

fn finite_or_domain(v: f64, what: &str) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Domain(format!("{what} is not finite")))
    }
}

/// `exp`, `ln`, `sin` or `cos` of an LC number, summed to its horizon.
pub fn apply_elementary(name: Elementary, x: &LcNumber) -> Result<LcNumber> {
    let horizon = working_horizon(x.horizon());
    match name {
        Elementary::Exp | Elementary::Sin | Elementary::Cos => {
            if x.lambda() < ExtQ::from(0) {
                return Err(Error::Domain(format!(
                    "{} of an infinitely large number",
                    name.name()
                )));
            }
            let (r, i) = x.split_real();
            if i.is_zero() {
                let v = match name {
                    Elementary::Exp => r.exp(),
                    Elementary::Sin => r.sin(),
                    _ => r.cos(),
                };
                let v = finite_or_domain(v, name.name())?;
                return Ok(LcNumber::constant(v).truncate(x.horizon()));
            }
            let pw = scaled_powers(&i, horizon);
            let out = match name {
                Elementary::Exp => {
                    let er = finite_or_domain(r.exp(), "exp of the real part")?;
                    pw.iter().fold(LcNumber::zero(), |s, t| s + t).scale(er)
                }
                _ => {
                    let (mut c, mut s) = (LcNumber::zero(), LcNumber::zero());
                    for (j, t) in pw.iter().enumerate() {
                        let sign = if (j / 2) % 2 == 0 { 1.0 } else { -1.0 };
                        if j % 2 == 0 {
                            c = &c + &t.scale(sign);
                        } else {
                            s = &s + &t.scale(sign);
                        }
                    }
                    let (sr, cr) = r.sin_cos();
                    if name == Elementary::Sin {
                        c.scale(sr) + s.scale(cr)
                    } else {
                        c.scale(cr) - s.scale(sr)
                    }
                }
            };
            Ok(out.truncate(horizon))
        }
        Elementary::Ln => {
            if x.lambda() != ExtQ::from(0) {
                return Err(Error::Domain(
                    "ln needs a number with a finite, non-infinitesimal real part".into(),
                ));
            }
            let a0 = x.real_part();
            if a0 <= 0.0 {
                return Err(Error::Domain("ln of a non-positive number".into()));
            }
            let la = finite_or_domain(a0.ln(), "ln of the real part")?;
            if x.is_real() {
                return Ok(LcNumber::constant(la).truncate(x.horizon()));
            }
            let u = x.div_scalar(a0)? - LcNumber::one();
            let mut sum = LcNumber::constant(la);
            let mut pow = LcNumber::one();
            let mut j = 1.0;
            loop {
                pow = (&pow * &u).truncate(horizon);
                if pow.is_zero() {
                    break;
                }
                let sign = if j as i64 % 2 == 1 { 1.0 } else { -1.0 };
                sum = &sum + &pow.scale(sign / j);
                j += 1.0;
            }
            Ok(sum.truncate(horizon))
        }
    }
}

/// The positive `n`-th root of a positive number.
///
/// Result horizon is `q/n + (h − q)` for leading exponent `q`.
pub fn nth_root(x: &LcNumber, n: u32) -> Result<LcNumber> {
    if n == 0 {
        return Err(Error::Invalid("0-th root".into()));
    }
    if x.signum() != Comparison::Greater {
        return Err(Error::NotPositive);
    }
    let (q, a) = x.leading().expect("positive number has a leading term");
    let root = LcNumber::monomial(a.powf(1.0 / n as f64), q / n as i64);
    if n == 1 {
        return Ok(x.clone());
    }
    let rel = relative_depth(x.horizon(), q);
    let u = x.shift(-q).div_scalar(a)? - LcNumber::one();
    if u.is_exact_zero() {
        return Ok(root);
    }
    // Σ C(1/n, j) u^j
    let alpha = 1.0 / n as f64;
    let mut sum = LcNumber::one();
    let mut pow = LcNumber::one();
    let mut binom = 1.0;
    let mut j = 0.0;
    loop {
        pow = (&pow * &u).truncate(rel);
        if pow.is_zero() {
            break;
        }
        binom *= (alpha - j) / (j + 1.0);
        j += 1.0;
        sum = &sum + &pow.scale(binom);
    }
    Ok((&root * &sum.truncate(rel)).truncate(ExtQ::Finite(q / n as i64 + rel)))
}
