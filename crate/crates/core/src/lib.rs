//! Truncated Levi-Civita field arithmetic and what it buys: exact-exponent
//! infinitesimal numbers, derivatives of real expressions read off from
//! evaluations at `x₀ + d`, power series over the field, and finite-scale
//! checkers for weak local uniform differentiability (WLUD) and analyticity.

pub mod calculus;
pub mod error;
pub mod exponent;
pub mod expr;
mod jet;
pub mod literal;
pub mod number;
pub mod series;
pub mod wlud;

pub use error::{Error, Result, SyntaxError};
pub use exponent::{ExpQ, ExtQ, ValuationValue};
pub use literal::{parse_lc, parse_lc_with_horizon};
pub use number::{Comparison, LcNumber, DEFAULT_HORIZON};
pub use series::{apply_elementary, nth_root, ConvergenceVerdict, Elementary, PowerSeries, Verdict};
pub use expr::{diff_symbolic, eval_lc, parse_expr, Env, Expr, Func};
pub use calculus::{
    derivative_at, directional_power, directional_term, lhopital_limit, partial_jet, taylor_jet,
    taylor_polynomial_eval, taylor_polynomial_eval_nd, PartialJet, TaylorJet,
};
pub use wlud::{
    analyticity_certificate_1d, analyticity_certificate_nd, default_ladder, delta_ladder_search,
    delta_ladder_search_nd, wlud_check_1d, wlud_check_nd, AnalyticityCertificate, CertificateVerdict,
    IdentityCheck, LadderEntry, SamplingPlan, WitnessPair, WludReport, WludResult,
};
