//! Derivatives read off from evaluations at infinitely close points.
//!
//! At a real center `r`, `f(r + d) = Σ f⁽ʲ⁾(r)/j! dʲ` up to the horizon, so
//! one evaluation yields the whole jet. Several variables are perturbed by
//! distinct powers of `d` chosen so that every monomial lands on its own
//! exponent. Centers with infinitesimal parts go through a truncated
//! Taylor expansion with LC coefficients instead.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exponent::{ExpQ, ExtQ};
use crate::expr::{eval_jet, eval_lc, Env, Expr};
use crate::jet::{Jet, Layout};
use crate::number::LcNumber;
use crate::series::PowerSeries;

/// How many times the input horizon is raised when operations lose depth.
const HORIZON_ATTEMPTS: usize = 8;

/// `f⁽ʲ⁾(x₀)/j!` for `j = 0..=k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TaylorJet {
    center: LcNumber,
    coeffs: Vec<LcNumber>,
}

impl TaylorJet {
    pub fn center(&self) -> &LcNumber {
        &self.center
    }

    pub fn coeffs(&self) -> &[LcNumber] {
        &self.coeffs
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_series(&self) -> PowerSeries {
        PowerSeries::new(self.center.clone(), self.coeffs.clone()).expect("jet has a coefficient")
    }
}

/// `∂^α f(x₀)/α!` for every multi-index with `|α| ≤ k`.
#[derive(Debug, Clone, PartialEq)]
pub struct PartialJet {
    center: Vec<LcNumber>,
    vars: Vec<String>,
    order: usize,
    table: BTreeMap<Vec<u32>, LcNumber>,
}

impl PartialJet {
    pub fn center(&self) -> &[LcNumber] {
        &self.center
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &BTreeMap<Vec<u32>, LcNumber> {
        &self.table
    }

    /// Entry for `alpha`; zero when `|α|` exceeds the order.
    pub fn get(&self, alpha: &[u32]) -> LcNumber {
        self.table.get(alpha).cloned().unwrap_or_default()
    }
}

fn check_horizon(x0: &LcNumber, k: usize) -> Result<()> {
    if x0.horizon() < ExtQ::from(k as i64 + 1) {
        return Err(Error::HorizonTooLow {
            horizon: x0.horizon(),
            order: k,
        });
    }
    Ok(())
}

fn factorial(j: usize) -> f64 {
    (1..=j).fold(1.0, |a, i| a * i as f64)
}

/// Evaluates `f` with each variable `v_i = r_i + d^{e_i}`, raising the
/// input horizon until the result is known below `target`. Returns the
/// terms below `target`.
fn perturbed_eval(
    f: &Expr,
    vars: &[&str],
    reals: &[f64],
    exps: &[ExpQ],
    target: ExpQ,
) -> Result<Vec<(ExpQ, f64)>> {
    let mut h = target;
    for _ in 0..HORIZON_ATTEMPTS {
        let env: Env = vars
            .iter()
            .zip(reals.iter().zip(exps))
            .map(|(v, (&r, &e))| {
                let x = (LcNumber::constant(r) + LcNumber::monomial(1.0, e)).truncate(h);
                (v.to_string(), x)
            })
            .collect();
        let y = eval_jet(f, &env)?;
        let below: Vec<(ExpQ, f64)> = y
            .terms()
            .iter()
            .copied()
            .take_while(|&(e, _)| e < target && y.horizon() > e)
            .collect();
        if let Some(&(e, _)) = below.iter().find(|(e, _)| !e.is_integer() || *e < ExpQ::ZERO) {
            return Err(Error::NonJetResult(format!("term d^{e} in the expansion")));
        }
        match y.horizon() {
            ExtQ::Finite(hy) if hy < target => h = h + (target - hy),
            _ => return Ok(below),
        }
    }
    Err(Error::NonJetResult("could not evaluate to the requested order".into()))
}

/// Taylor coefficients of `f` in `var` around `x0`, up to order `k`.
pub fn taylor_jet(f: &Expr, var: &str, x0: &LcNumber, k: usize) -> Result<TaylorJet> {
    check_horizon(x0, k)?;
    if !x0.is_real() {
        return taylor_jet_expanded(f, var, x0, k);
    }
    let target = ExpQ::integer(k as i64 + 1);
    let terms = perturbed_eval(f, &[var], &[x0.real_part()], &[ExpQ::ONE], target)?;
    let mut coeffs = vec![LcNumber::zero().truncate(x0.horizon()); k + 1];
    for (e, c) in terms {
        coeffs[e.numer() as usize] = LcNumber::constant(c).truncate(x0.horizon());
    }
    Ok(TaylorJet {
        center: x0.clone(),
        coeffs,
    })
}

/// Jet through the truncated Taylor expansion, valid at any center.
pub(crate) fn taylor_jet_expanded(f: &Expr, var: &str, x0: &LcNumber, k: usize) -> Result<TaylorJet> {
    let layout = Layout::new(1, k);
    let env = HashMap::from([(var, Jet::variable(&layout, 0, x0.clone()))]);
    let j = Jet::eval(f, &layout, &env)?;
    Ok(TaylorJet {
        center: x0.clone(),
        coeffs: j.c,
    })
}

/// `f⁽ʲ⁾(x₀)`.
pub fn derivative_at(f: &Expr, var: &str, x0: &LcNumber, j: usize) -> Result<LcNumber> {
    let jet = taylor_jet(f, var, x0, j)?;
    Ok(jet.coeffs[j].scale(factorial(j)))
}

/// All partial derivatives up to total order `k`, scaled by `1/α!`.
///
/// At a real center variable `i` (from 1) is perturbed by `d^{M + (k+1)^{i−1}}`
/// with `M = k(k+1)^{n−1} + 1`. A monomial `u^α` then sits at exponent
/// `|α|·M + Σ α_i (k+1)^{i−1}`: the quotient by `M` is the degree and the
/// remainder spells `α` in base `k+1`.
pub fn partial_jet(f: &Expr, vars: &[&str], x0: &[LcNumber], k: usize) -> Result<PartialJet> {
    if vars.len() != x0.len() || vars.is_empty() {
        return Err(Error::Invalid(format!(
            "{} variables but {} center coordinates",
            vars.len(),
            x0.len()
        )));
    }
    for x in x0 {
        check_horizon(x, k)?;
    }
    let n = vars.len();
    let h0 = x0.iter().map(LcNumber::horizon).min().unwrap_or(ExtQ::PosInf);
    let mut table: BTreeMap<Vec<u32>, LcNumber> = BTreeMap::new();
    let layout = Layout::new(n, k);
    for alpha in &layout.alphas {
        table.insert(alpha.clone(), LcNumber::zero().truncate(h0));
    }
    if x0.iter().all(LcNumber::is_real) {
        let base = k as i64 + 1;
        let m = k as i64 * base.pow(n as u32 - 1) + 1;
        let exps: Vec<ExpQ> = (0..n).map(|i| ExpQ::integer(m + base.pow(i as u32))).collect();
        let reals: Vec<f64> = x0.iter().map(LcNumber::real_part).collect();
        let terms = perturbed_eval(f, vars, &reals, &exps, ExpQ::integer(base * m))?;
        for (e, c) in terms {
            let e = e.numer();
            let (deg, mut rem) = (e / m, e % m);
            let mut alpha = vec![0u32; n];
            for a in alpha.iter_mut() {
                *a = (rem % base) as u32;
                rem /= base;
            }
            if rem != 0 || alpha.iter().map(|&a| a as i64).sum::<i64>() != deg {
                return Err(Error::NonJetResult(format!("term d^{e} decodes to no multi-index")));
            }
            table.insert(alpha, LcNumber::constant(c).truncate(h0));
        }
    } else {
        let env: HashMap<&str, Jet> = vars
            .iter()
            .enumerate()
            .map(|(i, v)| (*v, Jet::variable(&layout, i, x0[i].clone())))
            .collect();
        let j = Jet::eval(f, &layout, &env)?;
        for (alpha, c) in j.entries() {
            table.insert(alpha.to_vec(), c.clone());
        }
    }
    Ok(PartialJet {
        center: x0.to_vec(),
        vars: vars.iter().map(|v| v.to_string()).collect(),
        order: k,
        table,
    })
}

/// `Σ_{|α|=j} table(α)·v^α`, i.e. `[(v·∇)ʲ f](x₀)/j!`.
pub fn directional_term(pj: &PartialJet, v: &[LcNumber], j: usize) -> Result<LcNumber> {
    if j > pj.order {
        return Err(Error::OrderTooHigh {
            requested: j,
            available: pj.order,
        });
    }
    if v.len() != pj.vars.len() {
        return Err(Error::Invalid("direction has the wrong dimension".into()));
    }
    let mut sum = LcNumber::zero();
    for (alpha, c) in &pj.table {
        if alpha.iter().sum::<u32>() as usize != j || c.is_zero() {
            continue;
        }
        let mut t = c.clone();
        for (vi, &a) in v.iter().zip(alpha) {
            if a > 0 {
                t = &t * &vi.powi(a as i64)?;
            }
        }
        sum = &sum + &t;
    }
    Ok(sum)
}

/// `[(v·∇)ʲ f](x₀) = j!·Σ_{|α|=j} table(α)·v^α`.
pub fn directional_power(pj: &PartialJet, v: &[LcNumber], j: usize) -> Result<LcNumber> {
    Ok(directional_term(pj, v, j)?.scale(factorial(j)))
}

/// `f(x₀) + Σ_{1≤j≤k} [(η−x₀)·∇]ʲ f(x₀)/j!`.
pub fn taylor_polynomial_eval_nd(pj: &PartialJet, eta: &[LcNumber], k: usize) -> Result<LcNumber> {
    if k > pj.order {
        return Err(Error::OrderTooHigh {
            requested: k,
            available: pj.order,
        });
    }
    if eta.len() != pj.vars.len() {
        return Err(Error::Invalid("point has the wrong dimension".into()));
    }
    let powers: Vec<Vec<LcNumber>> = eta
        .iter()
        .zip(&pj.center)
        .map(|(a, b)| {
            let v = a - b;
            let mut p = vec![LcNumber::one()];
            for _ in 0..k {
                let next = p.last().unwrap() * &v;
                p.push(next);
            }
            p
        })
        .collect();
    let mut sum = LcNumber::zero();
    for (alpha, c) in &pj.table {
        if alpha.iter().sum::<u32>() as usize > k || c.is_zero() {
            continue;
        }
        let mut t = c.clone();
        for (p, &a) in powers.iter().zip(alpha) {
            if a > 0 {
                t = &t * &p[a as usize];
            }
        }
        sum = &sum + &t;
    }
    Ok(sum)
}

/// `Σ_{j≤k} c_j (y − x₀)ʲ` by Horner's rule.
pub fn taylor_polynomial_eval(jet: &TaylorJet, y: &LcNumber, k: usize) -> Result<LcNumber> {
    if k > jet.order() {
        return Err(Error::OrderTooHigh {
            requested: k,
            available: jet.order(),
        });
    }
    let h = y - &jet.center;
    let mut acc = jet.coeffs[k].clone();
    for c in jet.coeffs[..k].iter().rev() {
        acc = &(&acc * &h) + c;
    }
    Ok(acc)
}

/// `lim_{x→a} f(x)/g(x)` when `f(a) = g(a) = 0`, read off from
/// `f(a + d)/g(a + d)`.
pub fn lhopital_limit(f: &Expr, g: &Expr, var: &str, a: &LcNumber) -> Result<LcNumber> {
    let at = |x: LcNumber| Env::from([(var.to_string(), x)]);
    let fa = eval_lc(f, &at(a.clone()))?;
    let ga = eval_lc(g, &at(a.clone()))?;
    if !fa.is_zero() || !ga.is_zero() {
        return Err(Error::NotIndeterminate);
    }
    let x = a + &LcNumber::d();
    let fx = eval_lc(f, &at(x.clone()))?;
    let gx = eval_lc(g, &at(x))?;
    if gx.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let q = fx.checked_div(&gx)?;
    match q.lambda() {
        ExtQ::Finite(l) if l < ExpQ::ZERO => Err(Error::InfiniteLimit(l)),
        ExtQ::Finite(l) if l == ExpQ::ZERO => Ok(LcNumber::constant(q.real_part())),
        _ => Ok(LcNumber::zero()),
    }
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

    fn reals(j: &TaylorJet) -> Vec<f64> {
        j.coeffs().iter().map(|c| c.real_part()).collect()
    }

    #[test]
    fn jet_examples() {
        let j = taylor_jet(&e("x^2"), "x", &lc("3"), 2).unwrap();
        assert_eq!(reals(&j), vec![9.0, 6.0, 1.0]);
        let j = taylor_jet(&e("sin(x)"), "x", &lc("0"), 5).unwrap();
        let expect = [0.0, 1.0, 0.0, -1.0 / 6.0, 0.0, 1.0 / 120.0];
        for (a, b) in reals(&j).iter().zip(expect) {
            assert!((a - b).abs() < 1e-16);
        }
        assert!(matches!(
            taylor_jet(&e("abs(x)"), "x", &lc("0"), 2),
            Err(Error::NonJetResult(_))
        ));
        assert!(matches!(
            taylor_jet(&e("sqrt(x)"), "x", &lc("0"), 2),
            Err(Error::NonJetResult(_))
        ));
        assert!(matches!(
            taylor_jet(&e("1/x"), "x", &lc("0"), 2),
            Err(Error::NonJetResult(_))
        ));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(derivative_at(&e("x^3"), "x", &lc("1"), 2).unwrap().real_part(), 6.0);
        let v = derivative_at(&e("exp(x)"), "x", &lc("0"), 7).unwrap().real_part();
        assert!((v - 1.0).abs() < 1e-13);
        let v = derivative_at(&e("x*exp(x)"), "x", &lc("0"), 4).unwrap().real_part();
        assert!((v - 4.0).abs() < 1e-12);
    }

    #[test]
    fn horizon_precondition() {
        let x0 = parse_lc("1").unwrap().truncate(ExpQ::integer(3));
        assert!(matches!(
            taylor_jet(&e("x"), "x", &x0, 3),
            Err(Error::HorizonTooLow { order: 3, .. })
        ));
        assert!(taylor_jet(&e("x"), "x", &x0, 2).is_ok());
    }

    #[test]
    fn raises_horizon_through_inverses() {
        let j = taylor_jet(&e("sin(x)/x"), "x", &lc("0"), 6).unwrap();
        let expect = [1.0, 0.0, -1.0 / 6.0, 0.0, 1.0 / 120.0, 0.0, -1.0 / 5040.0];
        for (a, b) in reals(&j).iter().zip(expect) {
            assert!((a - b).abs() < 1e-16, "{a} vs {b}");
        }
        let deep = taylor_jet(&e("exp(x)"), "x", &lc("0"), 40);
        assert!(matches!(deep, Err(Error::HorizonTooLow { .. })));
        let exact = LcNumber::zero();
        let j = taylor_jet(&e("exp(x)"), "x", &exact, 40).unwrap();
        assert_eq!(j.order(), 40);
        assert!((j.coeffs()[40].real_part() * factorial(40) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn both_paths_agree_on_real_centers() {
        for (f, x0) in [
            ("exp(x)*sin(x)", "0.5"),
            ("ln(1 + x)/(2 - x)", "0.25"),
            ("sqrt(x)*cos(x)^2", "2"),
            ("abs(x - 3)*x^3", "1"),
        ] {
            let a = taylor_jet(&e(f), "x", &lc(x0), 6).unwrap();
            let b = taylor_jet_expanded(&e(f), "x", &lc(x0), 6).unwrap();
            for (p, q) in a.coeffs().iter().zip(b.coeffs()) {
                assert!(p.approx_agrees(q, 1e-12), "{f}: {p:?} vs {q:?}");
            }
        }
    }

    #[test]
    fn expansion_at_infinitesimal_center() {
        let x0 = lc("d^2");
        let j = taylor_jet(&e("abs(x)"), "x", &x0, 2).unwrap();
        assert_eq!(j.coeffs()[1], LcNumber::one());
        let j = taylor_jet(&e("1/x"), "x", &lc("1 + d"), 3).unwrap();
        let r = lc("1 + d").inv().unwrap();
        assert!(j.coeffs()[2].approx_agrees(&r.powi(3).unwrap(), 1e-14));
    }

    #[test]
    fn partial_examples() {
        let pj = partial_jet(&e("x*y"), &["x", "y"], &[lc("0"), lc("0")], 2).unwrap();
        assert_eq!(pj.get(&[1, 1]).real_part(), 1.0);
        assert!(pj.get(&[2, 0]).is_zero());
        let pj = partial_jet(&e("x^2*y"), &["x", "y"], &[lc("1"), lc("1")], 3).unwrap();
        assert_eq!(pj.get(&[2, 1]).real_part(), 1.0);
        assert_eq!(pj.get(&[1, 1]).real_part(), 2.0);
        assert_eq!(pj.get(&[0, 0]).real_part(), 1.0);
        assert_eq!(pj.table().len(), 10);
    }

    #[test]
    fn encoding_separates_high_powers() {
        // (k+1, 0) and (0, 1) collide under a pure base-(k+1) code.
        let pj = partial_jet(&e("x^3 + 5*y"), &["x", "y"], &[lc("0"), lc("0")], 2).unwrap();
        assert_eq!(pj.get(&[0, 1]).real_part(), 5.0);
        assert!(pj.get(&[2, 0]).is_zero());
    }

    #[test]
    fn partial_paths_agree() {
        let f = e("exp(x + 2*y)*cos(x*y) + x^3*y");
        let c = [lc("0.5"), lc("-1")];
        let a = partial_jet(&f, &["x", "y"], &c, 4).unwrap();
        let layout = Layout::new(2, 4);
        let env: HashMap<&str, Jet> = [("x", 0), ("y", 1)]
            .into_iter()
            .map(|(v, i)| (v, Jet::variable(&layout, i, c[i].clone())))
            .collect();
        let b = Jet::eval(&f, &layout, &env).unwrap();
        for (alpha, c) in b.entries() {
            assert!(a.get(alpha).approx_agrees(c, 1e-12), "{alpha:?}");
        }
    }

    #[test]
    fn directional_examples() {
        let zero2 = [lc("0"), lc("0")];
        let pj = partial_jet(&e("x + y"), &["x", "y"], &zero2, 2).unwrap();
        let v = [lc("2"), lc("d")];
        assert_eq!(directional_power(&pj, &v, 1).unwrap(), lc("2 + d"));
        let pj = partial_jet(&e("x*y"), &["x", "y"], &zero2, 2).unwrap();
        assert_eq!(directional_power(&pj, &[lc("1"), lc("1")], 2).unwrap().real_part(), 2.0);
        assert!(matches!(directional_power(&pj, &v, 3), Err(Error::OrderTooHigh { .. })));

        let f = e("x^3 - 2*x*y + y^2*x + 4");
        let x0 = [lc("1"), lc("-2")];
        let pj = partial_jet(&f, &["x", "y"], &x0, 3).unwrap();
        let eta = [lc("1 + d"), lc("-2 + 3d^(1/2)")];
        let direct = eval_lc(&f, &Env::from([("x".into(), eta[0].clone()), ("y".into(), eta[1].clone())])).unwrap();
        assert!(taylor_polynomial_eval_nd(&pj, &eta, 3).unwrap().agrees_with(&direct));
    }

    #[test]
    fn taylor_polynomial_examples() {
        let jet = taylor_jet(&e("x^2"), "x", &lc("0"), 2).unwrap();
        let y = lc("1 + d");
        assert!(taylor_polynomial_eval(&jet, &y, 2).unwrap().agrees_with(&(&y * &y)));
        assert_eq!(taylor_polynomial_eval(&jet, &y, 0).unwrap(), jet.coeffs()[0]);
        let ej = taylor_jet(&e("exp(x)"), "x", &lc("0"), 3).unwrap();
        let p = taylor_polynomial_eval(&ej, &LcNumber::d(), 3).unwrap();
        assert!(p.approx_agrees(&lc("1 + d + 0.5d^2 + 1/6d^3"), 1e-15));
        assert!(matches!(taylor_polynomial_eval(&ej, &y, 4), Err(Error::OrderTooHigh { .. })));
    }

    #[test]
    fn lhopital_examples() {
        let zero = lc("0");
        assert_eq!(lhopital_limit(&e("x"), &e("x"), "x", &zero).unwrap().real_part(), 1.0);
        let l = lhopital_limit(&e("sin(x)"), &e("x"), "x", &zero).unwrap();
        assert!((l.real_part() - 1.0).abs() < 1e-12);
        let l = lhopital_limit(&e("1 - cos(x)"), &e("x^2"), "x", &zero).unwrap();
        assert!((l.real_part() - 0.5).abs() < 1e-12);
        assert!(lhopital_limit(&e("x^2"), &e("x"), "x", &zero).unwrap().is_zero());
        assert_eq!(
            lhopital_limit(&e("x"), &e("x^3"), "x", &zero),
            Err(Error::InfiniteLimit(ExpQ::integer(-2)))
        );
        assert_eq!(lhopital_limit(&e("x + 1"), &e("x"), "x", &zero), Err(Error::NotIndeterminate));
        assert_eq!(lhopital_limit(&e("x"), &e("0*x"), "x", &zero), Err(Error::ZeroDenominator));
    }
}
