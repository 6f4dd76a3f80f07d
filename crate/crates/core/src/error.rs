use std::fmt;

use crate::exponent::{ExpQ, ExtQ};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("division by a number with no terms below its horizon")]
    ZeroDivision,
    #[error("operand has no terms below its horizon")]
    ZeroOperand,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("argument is not positive")]
    NotPositive,

    #[error("series needs at least two coefficients")]
    EmptySeries,
    #[error("window {window} is not in 1..={jmax}")]
    InvalidWindow { window: usize, jmax: usize },
    #[error("series does not converge at this point (gap {gap})")]
    NotConvergent { gap: ExtQ },
    #[error("order {requested} exceeds available order {available}")]
    OrderTooHigh { requested: usize, available: usize },
    #[error("new center is not inside the convergence region (λ = {lambda}, λ₀ = {lambda0})")]
    NotInRadius { lambda: ExtQ, lambda0: ExtQ },

    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("not differentiable: {0}")]
    NotDifferentiable(String),

    #[error("evaluation is not a jet: {0}")]
    NonJetResult(String),
    #[error("center horizon {horizon} is too low for order {order}")]
    HorizonTooLow { horizon: ExtQ, order: usize },
    #[error("f(a) and g(a) are not both zero at the horizon")]
    NotIndeterminate,
    #[error("g(a + d) has no terms below its horizon")]
    ZeroDenominator,
    #[error("the limit is infinite (λ of the quotient is {0})")]
    InfiniteLimit(ExpQ),

    #[error("{0}")]
    Invalid(String),
}


/// A parse failure at a byte offset into the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub offset: usize,
    pub expected: Vec<String>,
    pub found: Option<char>,
}

impl SyntaxError {
    pub(crate) fn new(offset: usize, expected: &[&str], found: Option<char>) -> Self {
        SyntaxError {
            offset,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found,
        }
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: expected ", self.offset)?;
        match self.expected.as_slice() {
            [] => f.write_str("nothing")?,
            [one] => f.write_str(one)?,
            many => write!(f, "one of {}", many.join(", "))?,
        }
        match self.found {
            Some(c) => write!(f, ", found `{c}`"),
            None => f.write_str(", found end of input"),
        }
    }
}

impl std::error::Error for SyntaxError {}
