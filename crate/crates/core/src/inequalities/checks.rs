//! Brunn–Minkowski, log-Brunn–Minkowski, s-concavity and Ehrhard checks.

use super::report::{pow0, propagate, InequalityReport};
use crate::context;
use crate::error::Result;
use crate::geometry::{Body, DirectionGrid, MeanKind};
use crate::measures::{gaussian_cdf_inv, EvalConfig, Measure, MeasureEstimate};
use serde_json::{Map, Value};

fn base_context(m: &Measure, a: &Body, lambda: f64) -> Map<String, Value> {
    context!(
        "lambda" => lambda,
        "n" => a.dim(),
        "class" => a.class_name(),
        "measure" => m,
    )
}

fn settle(r: Result<InequalityReport>, ctx: Map<String, Value>) -> InequalityReport {
    r.unwrap_or_else(|e| InequalityReport::inconclusive(e.to_string(), ctx))
}

/// Evaluates `μ(A)`, `μ(B)` and `μ(λA + (1-λ)B)`.
pub fn combination_measures(
    m: &Measure,
    a: &Body,
    b: &Body,
    lambda: f64,
    cfg: &EvalConfig,
) -> Result<[MeasureEstimate; 3]> {
    let c = Body::combine(a, b, lambda)?;
    Ok([m.measure(&c, cfg)?, m.measure(a, cfg)?, m.measure(b, cfg)?])
}

/// `μ(λA + (1-λ)B)^s >= λμ(A)^s + (1-λ)μ(B)^s` from precomputed measures.
pub fn s_concavity_from(
    ec: &MeasureEstimate,
    ea: &MeasureEstimate,
    eb: &MeasureEstimate,
    lambda: f64,
    s: f64,
    ctx: Map<String, Value>,
) -> InequalityReport {
    let (lhs, el) = propagate(ec, |x| pow0(x, s));
    let (pa, ea_) = propagate(ea, |x| pow0(x, s));
    let (pb, eb_) = propagate(eb, |x| pow0(x, s));
    let rhs = lambda * pa + (1.0 - lambda) * pb;
    let budget = el + lambda * ea_ + (1.0 - lambda) * eb_;
    InequalityReport::new(lhs, rhs, budget, ctx)
        .with("measure_combination", ec.value)
        .with("measure_a", ea.value)
        .with("measure_b", eb.value)
        .with("measure_error", ec.error + ea.error + eb.error)
}

/// Brunn–Minkowski: `μ(λA + (1-λ)B)^{1/n} >= λμ(A)^{1/n} + (1-λ)μ(B)^{1/n}`.
pub fn check_bm(m: &Measure, a: &Body, b: &Body, lambda: f64, cfg: &EvalConfig) -> InequalityReport {
    let ctx = base_context(m, a, lambda);
    let n = a.dim() as f64;
    settle(
        crate::error::check_lambda(lambda)
            .and_then(|_| combination_measures(m, a, b, lambda, cfg))
            .map(|[ec, ea, eb]| s_concavity_from(&ec, &ea, &eb, lambda, 1.0 / n, ctx.clone())),
        ctx,
    )
}

/// s-concavity: `μ(λA + (1-λ)B)^s >= λμ(A)^s + (1-λ)μ(B)^s`.
pub fn check_s_concavity(m: &Measure, a: &Body, b: &Body, lambda: f64, s: f64, cfg: &EvalConfig) -> InequalityReport {
    let mut ctx = base_context(m, a, lambda);
    ctx.insert("s".into(), s.into());
    if !(s > 0.0) {
        return InequalityReport::inconclusive("s must be positive", ctx);
    }
    settle(
        crate::error::check_lambda(lambda)
            .and_then(|_| combination_measures(m, a, b, lambda, cfg))
            .map(|[ec, ea, eb]| s_concavity_from(&ec, &ea, &eb, lambda, s, ctx.clone())),
        ctx,
    )
}

/// log-Brunn–Minkowski: `μ(A ⊙_λ B) >= μ(A)^λ μ(B)^{1-λ}`.
///
/// For `⊙^S` the computed mean `G` is an outer approximation and `κG` an
/// inner one, so `μ(G) - μ(κG)` is added to the budget.
pub fn check_log_bm(
    m: &Measure,
    a: &Body,
    b: &Body,
    lambda: f64,
    mean: MeanKind,
    grid: &DirectionGrid,
    cfg: &EvalConfig,
) -> InequalityReport {
    let mut ctx = base_context(m, a, lambda);
    ctx.insert("mean".into(), serde_json::json!(mean));
    if mean == MeanKind::Support {
        ctx.insert("grid".into(), grid.count().into());
    }
    let run = || -> Result<InequalityReport> {
        crate::error::check_lambda(lambda)?;
        let (g, kappa) = Body::geometric_mean(a, b, lambda, mean, grid)?;
        let eg = m.measure(&g, cfg)?;
        let mut shell = 0.0;
        let mut shell_err = 0.0;
        if kappa < 1.0 {
            let inner = m.measure(&g.scale(kappa)?, cfg)?;
            shell = (eg.value - inner.value).max(0.0);
            shell_err = inner.error;
        }
        let ea = m.measure(a, cfg)?;
        let eb = m.measure(b, cfg)?;
        let f = |x: f64, y: f64| pow0(x, lambda) * pow0(y, 1.0 - lambda);
        let rhs = f(ea.value, eb.value);
        let rhs_err = (f(ea.upper(), eb.upper()) - rhs).max(rhs - f(ea.lower(), eb.lower()));
        let budget = eg.error + shell + shell_err + rhs_err;
        Ok(InequalityReport::new(eg.value, rhs, budget, ctx.clone())
            .with("inner_scale", kappa)
            .with("grid_shell", shell)
            .with("measure_a", ea.value)
            .with("measure_b", eb.value))
    };
    settle(run(), ctx)
}

/// `Φ^{-1}` of an estimate with the error carried over `[lower, upper]`;
/// `None` when the interval touches 0 or 1.
pub fn probit(e: &MeasureEstimate) -> Option<(f64, f64)> {
    let (lo, hi) = (e.value - e.error, e.value + e.error);
    if !(lo > 0.0 && hi < 1.0) {
        return None;
    }
    let v = gaussian_cdf_inv(e.value).ok()?;
    let a = gaussian_cdf_inv(lo).ok()?;
    let b = gaussian_cdf_inv(hi).ok()?;
    Some((v, (b - v).max(v - a)))
}

/// Ehrhard's inequality `Φ^{-1}(γ(αA + βB)) >= αΦ^{-1}(γ(A)) + βΦ^{-1}(γ(B))`
/// from precomputed Gaussian measures.
pub fn ehrhard_from(
    ec: &MeasureEstimate,
    ea: &MeasureEstimate,
    eb: &MeasureEstimate,
    alpha: f64,
    beta: f64,
    mut ctx: Map<String, Value>,
) -> InequalityReport {
    ctx.insert("alpha".into(), alpha.into());
    ctx.insert("beta".into(), beta.into());
    let (Some((lc, ecr)), Some((la, ear)), Some((lb, ebr))) = (probit(ec), probit(ea), probit(eb)) else {
        return InequalityReport::inconclusive("a Gaussian measure is indistinguishable from 0 or 1", ctx);
    };
    let rhs = alpha * la + beta * lb;
    InequalityReport::new(lc, rhs, ecr + alpha * ear + beta * ebr, ctx)
        .with("measure_combination", ec.value)
        .with("measure_a", ea.value)
        .with("measure_b", eb.value)
}

/// Ehrhard's inequality for `λA + (1-λ)B` under the standard Gaussian measure.
pub fn check_ehrhard(a: &Body, b: &Body, lambda: f64, cfg: &EvalConfig) -> InequalityReport {
    check_ehrhard_general(a, b, lambda, 1.0 - lambda, cfg)
}

/// Ehrhard's inequality for `αA + βB` with `α + β >= 1` and `|α - β| <= 1`.
pub fn check_ehrhard_general(a: &Body, b: &Body, alpha: f64, beta: f64, cfg: &EvalConfig) -> InequalityReport {
    let m = Measure::standard_gaussian(a.dim());
    let ctx = base_context(&m, a, alpha / (alpha + beta));
    if !(alpha >= 0.0 && beta >= 0.0 && alpha + beta >= 1.0 && (alpha - beta).abs() <= 1.0) {
        return InequalityReport::inconclusive("need α + β >= 1 and |α - β| <= 1", ctx);
    }
    let run = || -> Result<InequalityReport> {
        let t = alpha + beta;
        let c = Body::combine(a, b, alpha / t)?.scale(t)?;
        let (ec, ea, eb) = (m.measure(&c, cfg)?, m.measure(a, cfg)?, m.measure(b, cfg)?);
        Ok(ehrhard_from(&ec, &ea, &eb, alpha, beta, ctx.clone()))
    };
    settle(run(), ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{BoxIdeal, SymmetricPolygon2};
    use crate::inequalities::Verdict;
    use crate::measures::PlanarDensity;

    #[test]
    fn equal_bodies_have_zero_slack() {
        let m = Measure::standard_gaussian(2);
        let a = Body::Ideal(BoxIdeal::from_box(vec![1.0, 2.0]).unwrap());
        let r = check_bm(&m, &a, &a, 0.3, &EvalConfig::default());
        assert!(r.slack.abs() <= r.error_budget);
        assert_eq!(r.verdict, Verdict::Holds);
        let p = Body::Polygon(SymmetricPolygon2::hull_of(&[[1.0, 0.2], [0.3, 0.9]]).unwrap());
        let r = check_bm(
            &Measure::Planar(PlanarDensity::standard_gaussian()),
            &p,
            &p,
            0.7,
            &EvalConfig::default(),
        );
        assert!(r.slack.abs() <= r.error_budget, "{r:?}");
        // a staircase combined with itself picks up the cross corners
        let s = Body::Ideal(BoxIdeal::new(2, vec![vec![1.0, 2.0], vec![2.0, 0.5]]).unwrap());
        let r = check_bm(&m, &s, &s, 0.3, &EvalConfig::default());
        assert!(r.slack > 0.0 && r.holds());
    }

    #[test]
    fn far_point_breaks_positive_concavity() {
        // B = {x} with x = (24, 0): ½A + ½B is the half-size square around (12, 0)
        let m = Measure::Planar(PlanarDensity::standard_gaussian());
        let a = Body::Polygon(SymmetricPolygon2::square(1.0).unwrap());
        let eval = EvalConfig::default();
        let ea = m.measure(&a, &eval).unwrap();
        let far = crate::geometry::region::ConvexRegion::from_vertices(vec![
            [11.5, -0.5],
            [12.5, -0.5],
            [12.5, 0.5],
            [11.5, 0.5],
        ]);
        let ec = m.measure_convex(&far, &eval.quad).unwrap();
        let eb = MeasureEstimate::exact(0.0);
        let r = s_concavity_from(&ec, &ea, &eb, 0.5, 0.5, Map::new());
        assert_eq!(r.verdict, Verdict::Violated);
    }

    #[test]
    fn ehrhard_on_squares() {
        let a = Body::Polygon(SymmetricPolygon2::square(0.5).unwrap());
        let b = Body::Polygon(SymmetricPolygon2::diamond(2.0).unwrap());
        let r = check_ehrhard(&a, &b, 0.4, &EvalConfig::default());
        assert!(r.holds(), "{r:?}");
        let g = check_ehrhard_general(&a, &b, 0.8, 0.7, &EvalConfig::default());
        assert!(g.holds(), "{g:?}");
        let bad = check_ehrhard_general(&a, &b, 0.2, 0.3, &EvalConfig::default());
        assert_eq!(bad.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn mismatched_classes_are_inconclusive() {
        let a = Body::Polygon(SymmetricPolygon2::square(1.0).unwrap());
        let b = Body::Ideal(BoxIdeal::from_box(vec![1.0, 1.0]).unwrap());
        let r = check_bm(&Measure::lebesgue(2), &a, &b, 0.5, &EvalConfig::default());
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }
}
