//! Truncated Levi-Civita numbers.
//!
//! An [`LcNumber`] is a finite Hahn series `Σ a_q d^q` over ℚ together with a
//! *horizon*: every term with exponent at or above the horizon is unknown.
//! Exact numbers (constants, `d` itself, exact zero) carry an infinite
//! horizon.
//!
//! Invariants:
//! - exponents strictly increasing
//! - every stored coefficient is nonzero
//! - every stored exponent is below the horizon

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exponent::{ExpQ, ExtQ};

/// Horizon given to numbers read from literals, and the relative depth used
/// when a series has to be truncated but its input is exact.
pub const DEFAULT_HORIZON: i64 = 32;

#[derive(Clone, PartialEq)]
pub struct LcNumber {
    terms: Vec<(ExpQ, f64)>,
    horizon: ExtQ,
}

/// Outcome of comparing two numbers whose difference may be invisible at
/// the available horizon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    Less,
    EqualAtHorizon,
    Greater,
}

impl Comparison {
    pub fn reverse(self) -> Self {
        match self {
            Comparison::Less => Comparison::Greater,
            Comparison::Greater => Comparison::Less,
            Comparison::EqualAtHorizon => Comparison::EqualAtHorizon,
        }
    }
}

impl LcNumber {
    /// Sorts, merges equal exponents, drops exact zeros and clips at the
    /// horizon.
    pub fn normalize<I>(raw: I, horizon: impl Into<ExtQ>) -> Self
    where
        I: IntoIterator<Item = (ExpQ, f64)>,
    {
        let horizon = horizon.into();
        let mut acc: BTreeMap<ExpQ, f64> = BTreeMap::new();
        for (q, c) in raw {
            if horizon > q {
                *acc.entry(q).or_insert(0.0) += c;
            }
        }
        Self::from_map(acc, horizon)
    }

    fn from_map(acc: BTreeMap<ExpQ, f64>, horizon: ExtQ) -> Self {
        let terms = acc
            .into_iter()
            .filter(|&(q, c)| c != 0.0 && horizon > q)
            .collect();
        LcNumber { terms, horizon }
    }

    /// Builds from terms already strictly increasing and nonzero.
    fn from_sorted(terms: Vec<(ExpQ, f64)>, horizon: ExtQ) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        let mut terms = terms;
        terms.retain(|&(q, c)| c != 0.0 && horizon > q);
        LcNumber { terms, horizon }
    }

    /// The exact zero.
    pub fn zero() -> Self {
        LcNumber {
            terms: Vec::new(),
            horizon: ExtQ::PosInf,
        }
    }

    pub fn one() -> Self {
        Self::constant(1.0)
    }

    /// The exact real `c`.
    pub fn constant(c: f64) -> Self {
        Self::monomial(c, ExpQ::ZERO)
    }

    /// The exact monomial `c·d^q`.
    pub fn monomial(c: f64, q: ExpQ) -> Self {
        Self::from_sorted(vec![(q, c)], ExtQ::PosInf)
    }

    /// The positive infinitesimal `d`, exact.
    pub fn d() -> Self {
        Self::monomial(1.0, ExpQ::ONE)
    }

    pub fn terms(&self) -> &[(ExpQ, f64)] {
        &self.terms
    }

    pub fn horizon(&self) -> ExtQ {
        self.horizon
    }

    /// True when no term survives below the horizon.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact zero: no terms and infinite horizon.
    pub fn is_exact_zero(&self) -> bool {
        self.terms.is_empty() && self.horizon.is_pos_inf()
    }

    /// λ(x): the smallest exponent of the support, `+∞` for zero.
    pub fn lambda(&self) -> ExtQ {
        self.terms
            .first()
            .map_or(ExtQ::PosInf, |&(q, _)| ExtQ::Finite(q))
    }

    pub fn leading(&self) -> Option<(ExpQ, f64)> {
        self.terms.first().copied()
    }

    /// Coefficient of `d^q`, zero when absent.
    pub fn coeff(&self, q: ExpQ) -> f64 {
        self.terms
            .binary_search_by(|(e, _)| e.cmp(&q))
            .map_or(0.0, |i| self.terms[i].1)
    }

    /// Coefficient of `d^0`.
    pub fn real_part(&self) -> f64 {
        self.coeff(ExpQ::ZERO)
    }

    /// True when every term sits at exponent 0.
    pub fn is_real(&self) -> bool {
        self.terms.iter().all(|(q, _)| q.is_zero())
    }

    /// Lowers the horizon to `min(h, horizon)`.
    pub fn truncate(&self, h: impl Into<ExtQ>) -> Self {
        let h = self.horizon.min(h.into());
        Self::from_sorted(self.terms.clone(), h)
    }

    /// Multiplies by `d^q`.
    pub fn shift(&self, q: ExpQ) -> Self {
        LcNumber {
            terms: self.terms.iter().map(|&(e, c)| (e + q, c)).collect(),
            horizon: self.horizon + q,
        }
    }

    /// Multiplies every coefficient by the exact real `c`.
    pub fn scale(&self, c: f64) -> Self {
        if c == 0.0 {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|&(e, a)| (e, a * c)).collect();
        Self::from_sorted(terms, self.horizon)
    }

    pub fn div_scalar(&self, c: f64) -> Result<Self> {
        if c == 0.0 {
            return Err(Error::ZeroDivision);
        }
        let terms = self.terms.iter().map(|&(e, a)| (e, a / c)).collect();
        Ok(Self::from_sorted(terms, self.horizon))
    }

    fn add_impl(&self, other: &LcNumber, sign: f64) -> LcNumber {
        let horizon = self.horizon.min(other.horizon);
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let next = match (a.get(i), b.get(j)) {
                (Some(&(p, x)), Some(&(q, y))) if p == q => {
                    i += 1;
                    j += 1;
                    (p, x + sign * y)
                }
                (Some(&(p, x)), Some(&(q, _))) if p < q => {
                    i += 1;
                    (p, x)
                }
                (Some(&(p, x)), None) => {
                    i += 1;
                    (p, x)
                }
                (_, Some(&(q, y))) => {
                    j += 1;
                    (q, sign * y)
                }
                (None, None) => unreachable!(),
            };
            if !(horizon > next.0) {
                break;
            }
            if next.1 != 0.0 {
                out.push(next);
            }
        }
        LcNumber {
            terms: out,
            horizon,
        }
    }

    fn mul_impl(&self, other: &LcNumber) -> LcNumber {
        let (lx, ly) = (self.lambda(), other.lambda());
        let (hx, hy) = (self.horizon, other.horizon);
        // The third candidate only matters when an operand is a zero known to
        // a finite horizon.
        let horizon = (hx + ly).min(hy + lx).min(hx + hy);
        if let Some(out) = self.mul_dense(other, horizon) {
            return out;
        }
        let mut acc: BTreeMap<ExpQ, f64> = BTreeMap::new();
        for &(p, x) in &self.terms {
            for &(q, y) in &other.terms {
                let e = p + q;
                if !(horizon > e) {
                    break;
                }
                *acc.entry(e).or_insert(0.0) += x * y;
            }
        }
        Self::from_map(acc, horizon)
    }

    /// Convolution on a dense grid of exponents `e/L` for the common
    /// denominator `L`. Accumulates in the same order as the sparse path.
    fn mul_dense(&self, other: &LcNumber, horizon: ExtQ) -> Option<LcNumber> {
        const MAX_SLOTS: i64 = 1 << 16;
        let (&(p0, _), &(q0, _)) = (self.terms.first()?, other.terms.first()?);
        let (&(p1, _), &(q1, _)) = (self.terms.last()?, other.terms.last()?);
        let mut l: i64 = 1;
        for &(e, _) in self.terms.iter().chain(&other.terms) {
            l = num_integer::lcm(l, e.denom());
            if l > MAX_SLOTS {
                return None;
            }
        }
        let scaled = |e: ExpQ| -> Option<i64> { e.numer().checked_mul(l / e.denom()) };
        let lo = scaled(p0)?.checked_add(scaled(q0)?)?;
        let hi = scaled(p1)?.checked_add(scaled(q1)?)?;
        if hi - lo >= MAX_SLOTS {
            return None;
        }
        let mut acc = vec![0.0f64; (hi - lo + 1) as usize];
        let mut used = vec![false; acc.len()];
        let ys: Vec<(i64, ExpQ, f64)> = other
            .terms
            .iter()
            .map(|&(q, y)| Some((scaled(q)?, q, y)))
            .collect::<Option<_>>()?;
        for &(p, x) in &self.terms {
            let sp = scaled(p)?;
            for &(sq, q, y) in &ys {
                if !(horizon > p + q) {
                    break;
                }
                let i = (sp + sq - lo) as usize;
                acc[i] += x * y;
                used[i] = true;
            }
        }
        let terms = acc
            .into_iter()
            .zip(used)
            .enumerate()
            .filter(|&(_, (c, u))| u && c != 0.0)
            .map(|(i, (c, _))| (ExpQ::new(i as i64 + lo, l), c))
            .collect();
        Some(Self::from_sorted(terms, horizon))
    }

    /// Multiplicative inverse by sparse long division.
    ///
    /// Result horizon is `h(x) − 2λ(x)`; an exact multi-term input is
    /// inverted to relative depth [`DEFAULT_HORIZON`].
    pub fn inv(&self) -> Result<LcNumber> {
        let (q, a) = self.leading().ok_or(Error::ZeroDivision)?;
        if self.terms.len() == 1 && self.horizon.is_pos_inf() {
            return Ok(Self::monomial(1.0 / a, -q));
        }
        let rel = relative_depth(self.horizon, q);
        // Remainder of 1 − x·y, kept in units relative to d^q.
        let mut rem: BTreeMap<ExpQ, f64> = BTreeMap::new();
        rem.insert(ExpQ::ZERO, 1.0);
        let tail: Vec<(ExpQ, f64)> = self.terms[1..].iter().map(|&(e, c)| (e - q, c)).collect();
        let mut quotient = Vec::new();
        while let Some((e, r)) = rem.pop_first() {
            if e >= rel {
                break;
            }
            if r == 0.0 {
                continue;
            }
            let c = r / a;
            quotient.push((e - q, c));
            for &(t, b) in &tail {
                let f = e + t;
                if f >= rel {
                    break;
                }
                *rem.entry(f).or_insert(0.0) -= c * b;
            }
        }
        Ok(Self::from_sorted(quotient, ExtQ::Finite(rel - q)))
    }

    pub fn checked_div(&self, other: &LcNumber) -> Result<LcNumber> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents go through [`LcNumber::inv`].
    pub fn powi(&self, n: i64) -> Result<LcNumber> {
        if n < 0 {
            return self.inv()?.powi(-n);
        }
        let mut result = LcNumber::one();
        let mut base = self.clone();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        Ok(result)
    }

    /// Sign of `self − other`, decided by the leading coefficient of the
    /// difference.
    pub fn compare(&self, other: &LcNumber) -> Comparison {
        let diff = self - other;
        match diff.leading() {
            Some((_, c)) if c > 0.0 => Comparison::Greater,
            Some(_) => Comparison::Less,
            None => Comparison::EqualAtHorizon,
        }
    }

    pub fn signum(&self) -> Comparison {
        match self.leading() {
            Some((_, c)) if c > 0.0 => Comparison::Greater,
            Some(_) => Comparison::Less,
            None => Comparison::EqualAtHorizon,
        }
    }

    /// `|x| = max{x, −x}`.
    pub fn abs(&self) -> LcNumber {
        if self.signum() == Comparison::Less {
            -self
        } else {
            self.clone()
        }
    }

    /// `|self| ≪ |other|`, i.e. `n|self| < |other|` for every natural `n`.
    pub fn much_less(&self, other: &LcNumber) -> Result<bool> {
        if self.is_zero() || other.is_zero() {
            return Err(Error::ZeroOperand);
        }
        Ok(self.lambda() > other.lambda())
    }

    /// `Λ(x, y) = exp(−λ(x − y))`, with `exp(−∞) = 0`.
    pub fn ultrametric(&self, other: &LcNumber) -> f64 {
        match (self - other).lambda() {
            ExtQ::Finite(q) => (-q.to_f64()).exp(),
            _ => 0.0,
        }
    }

    /// Splits `x = r + i` with `r` real and `λ(i) > 0`. Requires `λ(x) ≥ 0`.
    pub(crate) fn split_real(&self) -> (f64, LcNumber) {
        debug_assert!(self.lambda() >= ExtQ::from(0));
        let r = self.real_part();
        let terms = self
            .terms
            .iter()
            .copied()
            .filter(|(q, _)| !q.is_zero())
            .collect();
        (r, Self::from_sorted(terms, self.horizon))
    }

    /// True when both agree term by term below their common horizon.
    pub fn agrees_with(&self, other: &LcNumber) -> bool {
        let h = self.horizon.min(other.horizon);
        let below = |x: &LcNumber| -> Vec<(ExpQ, f64)> {
            x.terms.iter().copied().take_while(|&(q, _)| h > q).collect()
        };
        below(self) == below(other)
    }

    /// Coefficientwise agreement below the common horizon, relative to the
    /// larger coefficient and floored at `rel` times the largest coefficient
    /// of either number.
    pub fn approx_agrees(&self, other: &LcNumber, rel: f64) -> bool {
        self.first_disagreement(other, rel).is_pos_inf()
    }

    /// Smallest exponent below the common horizon at which the coefficients
    /// differ by more than the [`approx_agrees`](Self::approx_agrees)
    /// tolerance; `+∞` when there is none.
    pub fn first_disagreement(&self, other: &LcNumber, rel: f64) -> ExtQ {
        self.sub_above_roundoff(other, rel).lambda()
    }

    /// `self − other`, dropping every coefficient whose difference is within
    /// `rel` of the larger operand coefficient at that exponent or of the
    /// largest coefficient of either operand.
    pub fn sub_above_roundoff(&self, other: &LcNumber, rel: f64) -> LcNumber {
        let h = self.horizon.min(other.horizon);
        let scale = self
            .terms
            .iter()
            .chain(&other.terms)
            .filter(|&&(q, _)| h > q)
            .fold(0.0f64, |m, &(_, c)| m.max(c.abs()));
        let diff = self - other;
        let terms = diff
            .terms
            .iter()
            .copied()
            .filter(|&(q, c)| {
                let big = self.coeff(q).abs().max(other.coeff(q).abs());
                !(c.abs() <= rel * big || c.abs() <= rel * scale)
            })
            .collect();
        Self::from_sorted(terms, diff.horizon)
    }
}

/// Serialized in the literal grammar.
impl serde::Serialize for LcNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `h − q`, falling back to [`DEFAULT_HORIZON`] below an exact input.
pub(crate) fn relative_depth(horizon: ExtQ, lambda: ExpQ) -> ExpQ {
    match horizon {
        ExtQ::Finite(h) => h - lambda,
        _ => ExpQ::integer(DEFAULT_HORIZON),
    }
}

/// An absolute horizon usable for truncating a series, with the same
/// fallback.
pub(crate) fn working_horizon(horizon: ExtQ) -> ExpQ {
    horizon
        .finite()
        .unwrap_or_else(|| ExpQ::integer(DEFAULT_HORIZON))
}

impl Default for LcNumber {
    fn default() -> Self {
        LcNumber::zero()
    }
}

impl From<f64> for LcNumber {
    fn from(c: f64) -> Self {
        LcNumber::constant(c)
    }
}

impl Neg for &LcNumber {
    type Output = LcNumber;
    fn neg(self) -> LcNumber {
        LcNumber {
            terms: self.terms.iter().map(|&(q, c)| (q, -c)).collect(),
            horizon: self.horizon,
        }
    }
}

impl Neg for LcNumber {
    type Output = LcNumber;
    fn neg(self) -> LcNumber {
        -&self
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&LcNumber> for &LcNumber {
            type Output = LcNumber;
            fn $method(self, rhs: &LcNumber) -> LcNumber {
                let f: fn(&LcNumber, &LcNumber) -> LcNumber = $body;
                f(self, rhs)
            }
        }
        impl $trait<LcNumber> for LcNumber {
            type Output = LcNumber;
            fn $method(self, rhs: LcNumber) -> LcNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LcNumber> for LcNumber {
            type Output = LcNumber;
            fn $method(self, rhs: &LcNumber) -> LcNumber {
                (&self).$method(rhs)
            }
        }
        impl $trait<LcNumber> for &LcNumber {
            type Output = LcNumber;
            fn $method(self, rhs: LcNumber) -> LcNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, 1.0));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, -1.0));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl fmt::Debug for LcNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.horizon {
            ExtQ::PosInf => write!(f, "{self}"),
            h => write!(f, "{self} + O(d^{h})"),
        }
    }
}
