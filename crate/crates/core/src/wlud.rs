//! Finite-scale checks of weak local uniform differentiability and
//! certificates for analyticity built on them.
//!
//! The quantifier "for all x, y near x₀" is discharged by sampling: a fixed
//! grid `x₀ ± c·d^m` plus seeded pseudo-random multi-term offsets. Every
//! verdict is evidence at the sampled scale, not a proof.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::calculus::{partial_jet, taylor_jet, taylor_polynomial_eval, taylor_polynomial_eval_nd, PartialJet};
use crate::error::{Error, Result};
use crate::exponent::{ExpQ, ExtQ};
use crate::expr::{eval_lc, Env, Expr};
use crate::number::{Comparison, LcNumber};

pub const DEFAULT_SEED: u64 = 0xC0FFEE;

const GRID_COEFFS: [f64; 3] = [1.0, 0.5, 2.0];
/// Grid exponents run over `λ(δ) + 1 ..= λ(δ) + GRID_SPAN` in half steps.
const GRID_SPAN: i64 = 4;
/// Rotation between coordinates when building vector samples.
const STRIDE: usize = 7;
const CHUNK: usize = 64;
/// Number of sample points, besides `x₀`, used as expansion centers in the
/// identity checks.
const IDENTITY_CENTERS: usize = 8;
/// Relative roundoff floor under which remainder and residual coefficients
/// count as zero.
const ROUNDOFF: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SamplingPlan {
    pub seed: u64,
    pub random_points: usize,
    /// Trailing window for the certificate growth estimate; `None` takes
    /// half the jet.
    pub window: Option<usize>,
}

impl Default for SamplingPlan {
    fn default() -> Self {
        SamplingPlan {
            seed: DEFAULT_SEED,
            random_points: 6,
            window: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WludResult {
    Pass,
    Fail,
    /// No violation, but some pair could not be decided at the horizon.
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessPair {
    pub x: Vec<LcNumber>,
    pub y: Vec<LcNumber>,
    pub lhs: LcNumber,
    pub rhs: LcNumber,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WludReport {
    pub point: Vec<LcNumber>,
    pub k: usize,
    pub epsilon: LcNumber,
    pub delta: LcNumber,
    /// Pairs evaluated.
    pub samples: usize,
    pub result: WludResult,
    /// The first violating pair on failure, otherwise the pair of largest
    /// margin (first one on ties).
    pub worst_pair: Option<WitnessPair>,
    /// `λ(rhs) − λ(lhs)` of `worst_pair`.
    pub margin: ExtQ,
    pub inconclusive_samples: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LadderEntry {
    pub k: usize,
    pub delta: LcNumber,
    pub lambda: ExtQ,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub x: Vec<LcNumber>,
    pub y: Vec<LcNumber>,
    /// λ of `f(y) − Σ_j f⁽ʲ⁾(x)/j!·(y − x)ʲ`; `inf` when no coefficient
    /// below `horizon` is visible.
    pub residual_lambda: ExtQ,
    pub horizon: ExtQ,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertificateVerdict {
    CertifiedAtScale,
    Refuted,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyticityCertificate {
    pub x0: Vec<LcNumber>,
    pub jmax: usize,
    pub kmax: usize,
    /// Estimate over the trailing window of the jet.
    pub lambda0: ExtQ,
    /// Same maximum over every order `1..=jmax`.
    pub lambda0_head: ExtQ,
    pub window: usize,
    pub delta_ladder: Vec<LadderEntry>,
    pub t: Option<ExpQ>,
    pub required_radius_lambda: Option<ExpQ>,
    pub delta: Option<LcNumber>,
    pub identity_checks: Vec<IdentityCheck>,
    pub verdict: CertificateVerdict,
}

/// `d^(m/2)` for `m = 0..=8`.
pub fn default_ladder() -> Vec<LcNumber> {
    (0..=8).map(|m| LcNumber::monomial(1.0, ExpQ::new(m, 2))).collect()
}

fn positive(x: &LcNumber, what: &str) -> Result<()> {
    match x.signum() {
        Comparison::Greater => Ok(()),
        _ => Err(Error::Invalid(format!("{what} must be positive"))),
    }
}

/// `x` with its terms taken as exact and cut at `h` instead.
fn with_horizon(x: &LcNumber, h: ExpQ) -> LcNumber {
    LcNumber::normalize(x.terms().iter().copied(), h)
}

/// Horizon for samples around `x0` at scale `delta` that leaves room for
/// remainders of order `k + 1`.
fn check_horizon(x0: &[LcNumber], delta: &LcNumber, k: usize) -> ExpQ {
    let ld = delta.lambda().finite().unwrap_or(ExpQ::ZERO);
    let m_max = (ld + ExpQ::integer(GRID_SPAN)).max(ExpQ::ONE);
    let need = m_max * (k as i64 + 2) + ExpQ::ONE;
    x0.iter().filter_map(|x| x.horizon().finite()).fold(need, ExpQ::max)
}

/// Offsets of absolute value below `delta`: the grid first, then the
/// random ones.
fn offsets(delta: &LcNumber, plan: &SamplingPlan, h: ExpQ) -> Vec<LcNumber> {
    let (ld, lead) = delta.leading().expect("delta is positive");
    let mut out = Vec::new();
    for s in 0..=2 * (GRID_SPAN - 1) {
        let m = ld + ExpQ::new(2 + s, 2);
        for c in GRID_COEFFS {
            for sign in [1.0, -1.0] {
                out.push(LcNumber::normalize([(m, sign * c)], h));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(plan.seed);
    for _ in 0..plan.random_points {
        let e = ExpQ::new(rng.random_range(0..=2 * GRID_SPAN), 2);
        let a = if e.is_zero() {
            lead * rng.random_range(1..=7) as f64 / 8.0
        } else {
            rng.random_range(1..=16) as f64 / 8.0
        };
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let mut terms = vec![(ld + e, sign * a)];
        for _ in 0..rng.random_range(0..=2) {
            let q = ld + e + ExpQ::new(rng.random_range(1..=4), 2);
            terms.push((q, rng.random_range(-8..=8) as f64 / 4.0));
        }
        out.push(LcNumber::normalize(terms, h));
    }
    out
}

/// Sample points in the sup-norm ball: coordinate `i` of point `s` uses
/// offset `(s + i·STRIDE) mod L`.
fn sample_points(x0: &[LcNumber], delta: &LcNumber, plan: &SamplingPlan, h: ExpQ) -> Vec<Vec<LcNumber>> {
    let off = offsets(delta, plan, h);
    let base: Vec<LcNumber> = x0.iter().map(|x| with_horizon(x, h)).collect();
    (0..off.len())
        .map(|s| {
            base.iter()
                .enumerate()
                .map(|(i, b)| b + &off[(s + i * STRIDE) % off.len()])
                .collect()
        })
        .collect()
}

fn sup_norm(v: &[LcNumber]) -> LcNumber {
    v.iter()
        .map(LcNumber::abs)
        .reduce(|a, b| if b.compare(&a) == Comparison::Greater { b } else { a })
        .unwrap_or_default()
}

fn env_of(vars: &[&str], p: &[LcNumber]) -> Env {
    vars.iter().map(|v| v.to_string()).zip(p.iter().cloned()).collect()
}

/// Runs `f` over `items` in parallel and returns results in input order,
/// with the first error in that order.
fn par_ordered<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> Result<U> + Sync + Send) -> Result<Vec<U>> {
    items.par_iter().map(f).collect::<Vec<_>>().into_iter().collect()
}

struct Outcome {
    lhs: LcNumber,
    rhs: LcNumber,
}

/// Evaluates every ordered pair of distinct points in a fixed order and
/// stops after the chunk holding the first violation.
fn run_pairs(
    points: &[Vec<LcNumber>],
    eval: impl Fn(usize, usize) -> Result<Outcome> + Sync + Send,
) -> Result<(WludResult, usize, Option<WitnessPair>, ExtQ, usize)> {
    let pairs: Vec<(usize, usize)> = (0..points.len())
        .flat_map(|i| (0..points.len()).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut samples = 0;
    let mut inconclusive = 0;
    let mut worst: Option<((usize, usize), Outcome)> = None;
    let mut worst_margin = ExtQ::NegInf;
    for chunk in pairs.chunks(CHUNK) {
        let outcomes = par_ordered(chunk, |&(i, j)| eval(i, j))?;
        for (&pair, o) in chunk.iter().zip(outcomes) {
            samples += 1;
            let margin = o.rhs.lambda() - o.lhs.lambda();
            match o.lhs.compare(&o.rhs) {
                Comparison::Greater => {
                    let w = witness(points, pair, &o);
                    return Ok((WludResult::Fail, samples, Some(w), margin, inconclusive));
                }
                Comparison::EqualAtHorizon => inconclusive += 1,
                Comparison::Less => {}
            }
            if worst.is_none() || margin > worst_margin {
                worst_margin = margin;
                worst = Some((pair, o));
            }
        }
    }
    let result = if inconclusive > 0 {
        WludResult::Inconclusive
    } else {
        WludResult::Pass
    };
    let w = worst.map(|(pair, o)| witness(points, pair, &o));
    Ok((result, samples, w, worst_margin, inconclusive))
}

fn witness(points: &[Vec<LcNumber>], (i, j): (usize, usize), o: &Outcome) -> WitnessPair {
    WitnessPair {
        x: points[i].clone(),
        y: points[j].clone(),
        lhs: o.lhs.clone(),
        rhs: o.rhs.clone(),
    }
}

/// Samples `|f(y) − Σ_{j≤k} f⁽ʲ⁾(x)/j!·(y − x)ʲ| ≤ ε|y − x|ᵏ` for `x, y` in
/// `(x0 − δ, x0 + δ)`.
pub fn wlud_check_1d(
    f: &Expr,
    var: &str,
    x0: &LcNumber,
    k: usize,
    eps: &LcNumber,
    delta: &LcNumber,
    plan: &SamplingPlan,
) -> Result<WludReport> {
    positive(eps, "epsilon")?;
    positive(delta, "delta")?;
    let h = check_horizon(std::slice::from_ref(x0), delta, k);
    let points = sample_points(std::slice::from_ref(x0), delta, plan, h);
    let jets = par_ordered(&points, |p| taylor_jet(f, var, &p[0], k))?;
    let values = par_ordered(&points, |p| eval_lc(f, &env_of(&[var], p)))?;
    let (result, samples, worst_pair, margin, inconclusive_samples) = run_pairs(&points, |i, j| {
        let y = &points[j][0];
        let lhs = values[j].sub_above_roundoff(&taylor_polynomial_eval(&jets[i], y, k)?, ROUNDOFF).abs();
        let rhs = eps * &(y - &points[i][0]).abs().powi(k as i64)?;
        Ok(Outcome { lhs, rhs })
    })?;
    Ok(WludReport {
        point: vec![x0.clone()],
        k,
        epsilon: eps.clone(),
        delta: delta.clone(),
        samples,
        result,
        worst_pair,
        margin,
        inconclusive_samples,
    })
}

/// The several-variable check with the sup norm on the ball and on
/// `η − ξ`.
pub fn wlud_check_nd(
    f: &Expr,
    vars: &[&str],
    x0: &[LcNumber],
    k: usize,
    eps: &LcNumber,
    delta: &LcNumber,
    plan: &SamplingPlan,
) -> Result<WludReport> {
    positive(eps, "epsilon")?;
    positive(delta, "delta")?;
    if vars.len() != x0.len() || vars.is_empty() {
        return Err(Error::Invalid("point and variables differ in dimension".into()));
    }
    let h = check_horizon(x0, delta, k);
    let points = sample_points(x0, delta, plan, h);
    let jets = par_ordered(&points, |p| partial_jet(f, vars, p, k))?;
    let values = par_ordered(&points, |p| eval_lc(f, &env_of(vars, p)))?;
    let (result, samples, worst_pair, margin, inconclusive_samples) = run_pairs(&points, |i, j| {
        let eta = &points[j];
        let lhs = values[j].sub_above_roundoff(&taylor_polynomial_eval_nd(&jets[i], eta, k)?, ROUNDOFF).abs();
        let step: Vec<LcNumber> = eta.iter().zip(&points[i]).map(|(a, b)| a - b).collect();
        let rhs = eps * &sup_norm(&step).powi(k as i64)?;
        Ok(Outcome { lhs, rhs })
    })?;
    Ok(WludReport {
        point: x0.to_vec(),
        k,
        epsilon: eps.clone(),
        delta: delta.clone(),
        samples,
        result,
        worst_pair,
        margin,
        inconclusive_samples,
    })
}

fn ladder_with(
    kmax: usize,
    ladder: &[LcNumber],
    check: impl Fn(usize, &LcNumber) -> Result<WludReport>,
) -> Vec<LadderEntry> {
    (1..=kmax)
        .filter_map(|k| {
            ladder
                .iter()
                .find(|delta| check(k, delta).is_ok_and(|r| r.result == WludResult::Pass))
                .map(|delta| LadderEntry {
                    k,
                    delta: delta.clone(),
                    lambda: delta.lambda(),
                })
        })
        .collect()
}

/// For each `k ≤ kmax`, the first candidate on which the check with `ε = 1`
/// passes. Candidates whose check errors count as not passing.
pub fn delta_ladder_search(
    f: &Expr,
    var: &str,
    x0: &LcNumber,
    kmax: usize,
    ladder: &[LcNumber],
    plan: &SamplingPlan,
) -> Vec<LadderEntry> {
    let one = LcNumber::one();
    ladder_with(kmax, ladder, |k, delta| wlud_check_1d(f, var, x0, k, &one, delta, plan))
}

pub fn delta_ladder_search_nd(
    f: &Expr,
    vars: &[&str],
    x0: &[LcNumber],
    kmax: usize,
    ladder: &[LcNumber],
    plan: &SamplingPlan,
) -> Vec<LadderEntry> {
    let one = LcNumber::one();
    ladder_with(kmax, ladder, |k, delta| wlud_check_nd(f, vars, x0, k, &one, delta, plan))
}

/// `t`, the radius exponent and `δ` from a complete ladder.
fn radius(ladder: &[LadderEntry], kmax: usize, lambda0: ExtQ) -> Option<(ExpQ, ExpQ, LcNumber)> {
    if ladder.len() < kmax {
        return None;
    }
    let top = ladder.iter().filter_map(|e| e.lambda.finite()).max()?;
    let t = ExpQ::integer(top.floor() + 1);
    let r = ExtQ::from(t).max(lambda0).max(ExtQ::from(0)).finite()?;
    Some((t, r, LcNumber::monomial(1.0, r + ExpQ::ONE)))
}

fn identity_check(x: Vec<LcNumber>, y: Vec<LcNumber>, fy: &LcNumber, sum: &LcNumber, delta: &LcNumber) -> (IdentityCheck, bool) {
    let horizon = fy.horizon().min(sum.horizon());
    let residual_lambda = fy.first_disagreement(sum, ROUNDOFF);
    let floor = fy.lambda().finite().unwrap_or(ExpQ::ZERO) + delta.lambda().finite().unwrap_or(ExpQ::ZERO) * 2;
    let resolved = horizon > floor;
    (
        IdentityCheck {
            x,
            y,
            residual_lambda,
            horizon,
        },
        resolved,
    )
}

fn verdict(checks: &[(IdentityCheck, bool)]) -> CertificateVerdict {
    if checks.iter().any(|(c, _)| c.residual_lambda.is_finite()) {
        CertificateVerdict::Refuted
    } else if checks.iter().all(|&(_, resolved)| resolved) && !checks.is_empty() {
        CertificateVerdict::CertifiedAtScale
    } else {
        CertificateVerdict::Inconclusive
    }
}

/// Evidence that `f(y) = Σ_j f⁽ʲ⁾(x)/j!·(y − x)ʲ` on a neighborhood of `x0`
/// whose radius comes from the jet growth `λ₀` and a WLUD ladder.
pub fn analyticity_certificate_1d(
    f: &Expr,
    var: &str,
    x0: &LcNumber,
    jmax: usize,
    kmax: usize,
    ladder: &[LcNumber],
    plan: &SamplingPlan,
) -> Result<AnalyticityCertificate> {
    let h = x0.horizon().finite().map_or(ExpQ::integer(jmax as i64 + 1), |h| {
        h.max(ExpQ::integer(jmax as i64 + 1))
    });
    let x0h = with_horizon(x0, h);
    let series = taylor_jet(f, var, &x0h, jmax)?.to_series();
    let window = plan.window.unwrap_or(series.default_window());
    let lambda0 = series.lambda0_estimate(window)?;
    let lambda0_head = series.lambda0_estimate(jmax)?;
    let delta_ladder = delta_ladder_search(f, var, x0, kmax, ladder, plan);
    let mut cert = AnalyticityCertificate {
        x0: vec![x0.clone()],
        jmax,
        kmax,
        lambda0,
        lambda0_head,
        window,
        delta_ladder,
        t: None,
        required_radius_lambda: None,
        delta: None,
        identity_checks: Vec::new(),
        verdict: CertificateVerdict::Inconclusive,
    };
    let Some((t, r, delta)) = radius(&cert.delta_ladder, kmax, lambda0) else {
        return Ok(cert);
    };
    let ys: Vec<LcNumber> = sample_points(std::slice::from_ref(x0), &delta, plan, h)
        .into_iter()
        .map(|mut p| p.remove(0))
        .collect();
    let stride = (ys.len() / IDENTITY_CENTERS).max(1);
    let xs: Vec<LcNumber> = std::iter::once(x0h.clone())
        .chain(ys.iter().step_by(stride).take(IDENTITY_CENTERS).cloned())
        .collect();
    let values = par_ordered(&ys, |y| eval_lc(f, &env_of(&[var], std::slice::from_ref(y))))?;
    let expansions = par_ordered(&xs, |x| {
        if x == &x0h {
            Ok(series.clone())
        } else {
            series.recenter(x, window)
        }
    })?;
    let (xr, yr) = (&xs, &ys);
    let pairs: Vec<(usize, usize)> = (0..xs.len())
        .flat_map(|i| (0..yr.len()).filter(move |&j| xr[i] != yr[j]).map(move |j| (i, j)))
        .collect();
    let checks = par_ordered(&pairs, |&(i, j)| {
        let sum = expansions[i].sum_at(&ys[j])?;
        Ok(identity_check(vec![xs[i].clone()], vec![ys[j].clone()], &values[j], &sum, &delta))
    })?;
    cert.t = Some(t);
    cert.required_radius_lambda = Some(r);
    cert.delta = Some(delta);
    cert.verdict = verdict(&checks);
    cert.identity_checks = checks.into_iter().map(|(c, _)| c).collect();
    Ok(cert)
}

/// `max_{|α|=j} −λ(table(α))/j` for each `j ≥ 1`.
fn degree_growth(pj: &PartialJet) -> Vec<ExtQ> {
    let mut g = vec![ExtQ::NegInf; pj.order() + 1];
    for (alpha, c) in pj.table() {
        let j = alpha.iter().sum::<u32>() as usize;
        if j == 0 {
            continue;
        }
        if let ExtQ::Finite(q) = c.lambda() {
            g[j] = g[j].max(ExtQ::Finite(-q / j as i64));
        }
    }
    g
}

/// The several-variable certificate. Identity checks expand around `x0`
/// only.
pub fn analyticity_certificate_nd(
    f: &Expr,
    vars: &[&str],
    x0: &[LcNumber],
    jmax: usize,
    kmax: usize,
    ladder: &[LcNumber],
    plan: &SamplingPlan,
) -> Result<AnalyticityCertificate> {
    if jmax == 0 {
        return Err(Error::EmptySeries);
    }
    if vars.len() != x0.len() || vars.is_empty() {
        return Err(Error::Invalid("point and variables differ in dimension".into()));
    }
    let h = x0
        .iter()
        .filter_map(|x| x.horizon().finite())
        .fold(ExpQ::integer(jmax as i64 + 1), ExpQ::max);
    let x0h: Vec<LcNumber> = x0.iter().map(|x| with_horizon(x, h)).collect();
    let pj = partial_jet(f, vars, &x0h, jmax)?;
    let growth = degree_growth(&pj);
    let window = plan.window.unwrap_or(jmax.div_ceil(2));
    if window == 0 || window > jmax {
        return Err(Error::InvalidWindow { window, jmax });
    }
    let lambda0 = growth[jmax + 1 - window..].iter().copied().max().unwrap_or(ExtQ::NegInf);
    let lambda0_head = growth[1..].iter().copied().max().unwrap_or(ExtQ::NegInf);
    let delta_ladder = delta_ladder_search_nd(f, vars, x0, kmax, ladder, plan);
    let mut cert = AnalyticityCertificate {
        x0: x0.to_vec(),
        jmax,
        kmax,
        lambda0,
        lambda0_head,
        window,
        delta_ladder,
        t: None,
        required_radius_lambda: None,
        delta: None,
        identity_checks: Vec::new(),
        verdict: CertificateVerdict::Inconclusive,
    };
    let Some((t, r, delta)) = radius(&cert.delta_ladder, kmax, lambda0) else {
        return Ok(cert);
    };
    let etas = sample_points(x0, &delta, plan, h);
    let checks = par_ordered(&etas, |eta| {
        let fy = eval_lc(f, &env_of(vars, eta))?;
        let step: Vec<LcNumber> = eta.iter().zip(&x0h).map(|(a, b)| a - b).collect();
        let gap = match lambda0 {
            ExtQ::NegInf => ExtQ::PosInf,
            l => sup_norm(&step).lambda() - l,
        };
        let sum = taylor_polynomial_eval_nd(&pj, eta, jmax)?.truncate(gap.times(jmax as i64 + 1));
        Ok(identity_check(x0h.clone(), eta.clone(), &fy, &sum, &delta))
    })?;
    cert.t = Some(t);
    cert.required_radius_lambda = Some(r);
    cert.delta = Some(delta);
    cert.verdict = verdict(&checks);
    cert.identity_checks = checks.into_iter().map(|(c, _)| c).collect();
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::literal::parse_lc;

    fn e(s: &str) -> Expr {
        parse_expr(s).unwrap()
    }

    fn lc(s: &str) -> LcNumber {
        parse_lc(s).unwrap()
    }

    fn check(f: &str, x0: &str, k: usize, delta: &str) -> WludReport {
        let plan = SamplingPlan::default();
        wlud_check_1d(&e(f), "x", &lc(x0), k, &LcNumber::one(), &lc(delta), &plan).unwrap()
    }

    #[test]
    fn samples_stay_in_the_ball() {
        for delta in ["1", "d", "0.3d^(1/2) + d"] {
            let delta = lc(delta);
            for o in offsets(&delta, &SamplingPlan::default(), ExpQ::integer(40)) {
                assert_eq!(o.abs().compare(&delta), Comparison::Less, "{o}");
                assert!(!o.is_zero());
            }
        }
    }

    #[test]
    fn polynomials_pass_exactly() {
        let r = check("x^2", "0", 2, "d");
        assert_eq!(r.result, WludResult::Pass);
        assert_eq!(r.margin, ExtQ::NegInf);
        assert_eq!(check("x^3", "0", 2, "d").result, WludResult::Pass);
        assert_eq!(check("x^3 - 2*x", "1.5", 3, "d").margin, ExtQ::NegInf);
    }

    #[test]
    fn abs_fails_across_zero() {
        let r = check("abs(x)", "0", 1, "1");
        assert_eq!(r.result, WludResult::Fail);
        let w = r.worst_pair.unwrap();
        assert_ne!(w.x[0].signum(), w.y[0].signum());
        assert_eq!(w.lhs.compare(&w.rhs), Comparison::Greater);
    }

    #[test]
    fn one_and_several_variables_agree() {
        let plan = SamplingPlan::default();
        let one = LcNumber::one();
        for (f, k) in [("exp(x)", 2), ("x^3", 2), ("sin(x)", 1)] {
            let a = wlud_check_1d(&e(f), "x", &lc("0"), k, &one, &LcNumber::d(), &plan).unwrap();
            let b = wlud_check_nd(&e(f), &["x"], &[lc("0")], k, &one, &LcNumber::d(), &plan).unwrap();
            assert_eq!(a.result, b.result);
            assert_eq!(a.samples, b.samples);
            assert_eq!(a.margin, b.margin, "{f}");
        }
    }

    #[test]
    fn several_variables() {
        let plan = SamplingPlan::default();
        let one = LcNumber::one();
        let zero = [lc("0"), lc("0")];
        for (f, k) in [("x*y", 2), ("x^2*y", 3), ("exp(x + y)", 2)] {
            let r = wlud_check_nd(&e(f), &["x", "y"], &zero, k, &one, &LcNumber::d(), &plan).unwrap();
            assert_eq!(r.result, WludResult::Pass, "{f}");
        }
    }

    #[test]
    fn ladders() {
        let plan = SamplingPlan::default();
        assert!(delta_ladder_search(&e("x^2"), "x", &lc("0"), 3, &[], &plan).is_empty());
        let l = delta_ladder_search(&e("exp(x)"), "x", &lc("0"), 3, &default_ladder(), &plan);
        assert_eq!(l.len(), 3);
        assert!(l.iter().all(|e| e.lambda <= ExtQ::from(1)));
    }

    #[test]
    fn certificates() {
        let plan = SamplingPlan::default();
        for f in ["exp(x)", "x^3", "1/(1 - x)"] {
            let c = analyticity_certificate_1d(&e(f), "x", &lc("0"), 16, 4, &default_ladder(), &plan).unwrap();
            assert_eq!(c.verdict, CertificateVerdict::CertifiedAtScale, "{f}: {c:?}");
        }
        let c = analyticity_certificate_1d(&e("x^3"), "x", &lc("0"), 16, 4, &default_ladder(), &plan).unwrap();
        assert_eq!(c.lambda0, ExtQ::NegInf);
        assert_eq!(c.lambda0_head, ExtQ::from(0));
        let c = analyticity_certificate_nd(&e("x + y + x*y"), &["x", "y"], &[lc("0"), lc("0")], 6, 3, &default_ladder(), &plan)
            .unwrap();
        assert_eq!(c.verdict, CertificateVerdict::CertifiedAtScale);
    }

    #[test]
    fn exhausted_ladder_is_inconclusive() {
        let plan = SamplingPlan::default();
        let c = analyticity_certificate_1d(&e("exp(x)"), "x", &lc("0"), 8, 2, &[], &plan).unwrap();
        assert_eq!(c.verdict, CertificateVerdict::Inconclusive);
        assert!(c.t.is_none());
    }
}
