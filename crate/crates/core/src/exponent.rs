//! Exact rational exponents and their extension by ±∞.
//!
//! `ExpQ` is an element of the value group ℚ. `ExtQ` adds the two
//! infinities: `+∞` is the valuation of zero and the horizon of exact
//! numbers, `−∞` is the limsup estimate of a series whose trailing
//! coefficients all vanish.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

/// An exact rational exponent, always in lowest terms with a positive
/// denominator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ExpQ(Rational64);

impl ExpQ {
    pub const ZERO: ExpQ = ExpQ(Rational64::new_raw(0, 1));
    pub const ONE: ExpQ = ExpQ(Rational64::new_raw(1, 1));

    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        ExpQ(Rational64::new(num, den))
    }

    pub fn integer(n: i64) -> Self {
        ExpQ(Rational64::from_integer(n))
    }

    pub fn numer(&self) -> i64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> i64 {
        *self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }

    pub fn floor(&self) -> i64 {
        Integer::div_floor(&self.numer(), &self.denom())
    }

    /// The integer value, if this exponent is one.
    pub fn to_integer(&self) -> Option<i64> {
        self.is_integer().then(|| self.numer())
    }

    pub fn to_f64(&self) -> f64 {
        self.numer() as f64 / self.denom() as f64
    }

    pub fn abs(&self) -> Self {
        if self.numer() < 0 {
            -*self
        } else {
            *self
        }
    }
}

impl From<i64> for ExpQ {
    fn from(n: i64) -> Self {
        ExpQ::integer(n)
    }
}

impl From<Rational64> for ExpQ {
    fn from(r: Rational64) -> Self {
        ExpQ(r)
    }
}

impl From<ExpQ> for Rational64 {
    fn from(q: ExpQ) -> Self {
        q.0
    }
}

impl Add for ExpQ {
    type Output = ExpQ;
    fn add(self, rhs: ExpQ) -> ExpQ {
        ExpQ(self.0 + rhs.0)
    }
}

impl Sub for ExpQ {
    type Output = ExpQ;
    fn sub(self, rhs: ExpQ) -> ExpQ {
        ExpQ(self.0 - rhs.0)
    }
}

impl Neg for ExpQ {
    type Output = ExpQ;
    fn neg(self) -> ExpQ {
        ExpQ(-self.0)
    }
}

impl Mul for ExpQ {
    type Output = ExpQ;
    fn mul(self, rhs: ExpQ) -> ExpQ {
        ExpQ(self.0 * rhs.0)
    }
}

impl Mul<i64> for ExpQ {
    type Output = ExpQ;
    fn mul(self, rhs: i64) -> ExpQ {
        ExpQ(self.0 * rhs)
    }
}

impl Div<i64> for ExpQ {
    type Output = ExpQ;
    fn div(self, rhs: i64) -> ExpQ {
        ExpQ(self.0 / rhs)
    }
}

impl fmt::Display for ExpQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl fmt::Debug for ExpQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExpQ {
    type Err = String;

    /// Accepts `n`, `n/m` and terminating decimals such as `0.25`.
    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let bad = || format!("invalid rational `{s}`");
        if let Some((n, m)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            let m: i64 = m.trim().parse().map_err(|_| bad())?;
            if m == 0 {
                return Err(bad());
            }
            return Ok(ExpQ::new(n, m));
        }
        decimal_to_rational(s).map(ExpQ).ok_or_else(bad)
    }
}

/// Parses `[-]digits[.digits]` exactly. Returns `None` on overflow.
pub(crate) fn decimal_to_rational(s: &str) -> Option<Rational64> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return None;
    }
    let mut num: i64 = 0;
    for b in int_part.bytes().chain(frac_part.bytes()) {
        num = num.checked_mul(10)?.checked_add((b - b'0') as i64)?;
    }
    let mut den: i64 = 1;
    for _ in 0..frac_part.len() {
        den = den.checked_mul(10)?;
    }
    Some(Rational64::new(if neg { -num } else { num }, den))
}

/// ℚ extended by −∞ and +∞.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtQ {
    NegInf,
    Finite(ExpQ),
    PosInf,
}

/// λ(x): the smallest exponent in the support, `+∞` for zero.
pub type ValuationValue = ExtQ;

impl ExtQ {
    pub fn finite(&self) -> Option<ExpQ> {
        match self {
            ExtQ::Finite(q) => Some(*q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtQ::Finite(_))
    }

    pub fn is_pos_inf(&self) -> bool {
        matches!(self, ExtQ::PosInf)
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtQ::NegInf => f64::NEG_INFINITY,
            ExtQ::Finite(q) => q.to_f64(),
            ExtQ::PosInf => f64::INFINITY,
        }
    }

    /// Multiplication by a nonnegative integer; `0 · ±∞` is taken as 0.
    pub fn times(self, n: i64) -> ExtQ {
        debug_assert!(n >= 0);
        match self {
            _ if n == 0 => ExtQ::Finite(ExpQ::ZERO),
            ExtQ::Finite(q) => ExtQ::Finite(q * n),
            inf => inf,
        }
    }

    pub fn min(self, other: ExtQ) -> ExtQ {
        std::cmp::min(self, other)
    }

    pub fn max(self, other: ExtQ) -> ExtQ {
        std::cmp::max(self, other)
    }
}

impl From<ExpQ> for ExtQ {
    fn from(q: ExpQ) -> Self {
        ExtQ::Finite(q)
    }
}

impl From<i64> for ExtQ {
    fn from(n: i64) -> Self {
        ExtQ::Finite(ExpQ::integer(n))
    }
}

impl PartialEq<ExpQ> for ExtQ {
    fn eq(&self, other: &ExpQ) -> bool {
        *self == ExtQ::Finite(*other)
    }
}

impl PartialOrd<ExpQ> for ExtQ {
    fn partial_cmp(&self, other: &ExpQ) -> Option<Ordering> {
        Some(self.cmp(&ExtQ::Finite(*other)))
    }
}

/// Panics on `+∞ + −∞`.
impl Add for ExtQ {
    type Output = ExtQ;
    fn add(self, rhs: ExtQ) -> ExtQ {
        match (self, rhs) {
            (ExtQ::Finite(a), ExtQ::Finite(b)) => ExtQ::Finite(a + b),
            (ExtQ::PosInf, ExtQ::NegInf) | (ExtQ::NegInf, ExtQ::PosInf) => {
                panic!("indeterminate sum of infinities")
            }
            (ExtQ::PosInf, _) | (_, ExtQ::PosInf) => ExtQ::PosInf,
            _ => ExtQ::NegInf,
        }
    }
}

impl Add<ExpQ> for ExtQ {
    type Output = ExtQ;
    fn add(self, rhs: ExpQ) -> ExtQ {
        self + ExtQ::Finite(rhs)
    }
}

impl Sub<ExpQ> for ExtQ {
    type Output = ExtQ;
    fn sub(self, rhs: ExpQ) -> ExtQ {
        self + ExtQ::Finite(-rhs)
    }
}

impl Neg for ExtQ {
    type Output = ExtQ;
    fn neg(self) -> ExtQ {
        match self {
            ExtQ::NegInf => ExtQ::PosInf,
            ExtQ::Finite(q) => ExtQ::Finite(-q),
            ExtQ::PosInf => ExtQ::NegInf,
        }
    }
}

impl Sub for ExtQ {
    type Output = ExtQ;
    fn sub(self, rhs: ExtQ) -> ExtQ {
        self + (-rhs)
    }
}

impl fmt::Display for ExtQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtQ::NegInf => f.write_str("-inf"),
            ExtQ::Finite(q) => write!(f, "{q}"),
            ExtQ::PosInf => f.write_str("inf"),
        }
    }
}

impl fmt::Debug for ExtQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ExpQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(2))?;
        map.serialize_entry("num", &self.numer())?;
        map.serialize_entry("den", &self.denom())?;
        map.end()
    }
}

/// `{"num": n, "den": m}` for finite values, `"inf"` / `"-inf"` otherwise.
impl Serialize for ExtQ {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtQ::NegInf => serializer.serialize_str("-inf"),
            ExtQ::Finite(q) => q.serialize(serializer),
            ExtQ::PosInf => serializer.serialize_str("inf"),
        }
    }
}
