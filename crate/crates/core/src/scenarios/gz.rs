//! Special cases where the Gaussian Brunn–Minkowski inequality with exponent
//! `1/n` holds for convex sets containing the origin: (a) products of
//! intervals, (b) a slab `[-a₁, a₂] x R` against any symmetric polygon and
//! (c) two dilates of one symmetric body.

use super::ScenarioOutcome;
use crate::context;
use crate::geometry::{Body, SymmetricPolygon2};
use crate::inequalities::checks::{check_bm, s_concavity_from};
use crate::inequalities::InequalityReport;
use crate::measures::{Density1D, EvalConfig, Measure, MeasureEstimate, Method, PlanarDensity};
use crate::sample::{random_polygon, trial_rng};
use rand::Rng;

/// `γ_n` of the box `∏[-l_i, r_i]` from one-dimensional CDFs.
fn box_measure(l: &[f64], r: &[f64]) -> MeasureEstimate {
    let g = Density1D::standard_gaussian();
    let v: f64 = l
        .iter()
        .zip(r)
        .map(|(&l, &r)| g.cdf_interval(-l, r).expect("ordered interval"))
        .product();
    MeasureEstimate::new(v, 16.0 * l.len() as f64 * f64::EPSILON * v, Method::Sweep)
}

/// Case (a): boxes `∏[-l_i, r_i]` with independent random sides.
pub fn gz_box_case(n: usize, seed: u64, index: u64, lambda: f64) -> InequalityReport {
    let mut rng = trial_rng(seed, index);
    let mut side = || -> Vec<f64> { (0..n).map(|_| rng.random_range(0.1..3.0)).collect() };
    let (la, ra, lb, rb) = (side(), side(), side(), side());
    let mix =
        |x: &[f64], y: &[f64]| -> Vec<f64> { x.iter().zip(y).map(|(a, b)| lambda * a + (1.0 - lambda) * b).collect() };
    let ec = box_measure(&mix(&la, &lb), &mix(&ra, &rb));
    let ea = box_measure(&la, &ra);
    let eb = box_measure(&lb, &rb);
    s_concavity_from(
        &ec,
        &ea,
        &eb,
        lambda,
        1.0 / n as f64,
        context!("case" => "a", "trial" => index, "n" => n, "lambda" => lambda),
    )
}

/// Case (b): the slab `[-a₁, a₂] x R` against a random symmetric polygon `B`.
/// `λA + (1-λ)B` is again a slab, so only `γ₂(B)` needs quadrature.
pub fn gz_slab_case(seed: u64, index: u64, lambda: f64, cfg: &EvalConfig) -> InequalityReport {
    let mut rng = trial_rng(seed, index);
    let (a1, a2) = (rng.random_range(0.1..3.0), rng.random_range(0.1..3.0));
    let b = random_polygon(&mut rng);
    let ctx = context!("case" => "b", "trial" => index, "lambda" => lambda, "a1" => a1, "a2" => a2);
    let m = Measure::Planar(PlanarDensity::standard_gaussian());
    let eb = match m.measure(&Body::Polygon(b.clone()), cfg) {
        Ok(e) => e,
        Err(e) => return InequalityReport::inconclusive(e.to_string(), ctx),
    };
    let w = b.support([1.0, 0.0]);
    let ea = box_measure(&[a1], &[a2]);
    let ec = box_measure(&[lambda * a1 + (1.0 - lambda) * w], &[lambda * a2 + (1.0 - lambda) * w]);
    s_concavity_from(&ec, &ea, &eb, lambda, 0.5, ctx)
}

/// Case (c): `aK` and `bK` for the unit diamond `K`.
pub fn gz_dilate_case(seed: u64, index: u64, lambda: f64, cfg: &EvalConfig) -> InequalityReport {
    let mut rng = trial_rng(seed, index);
    let (a, b) = (rng.random_range(0.1..3.0), rng.random_range(0.1..3.0));
    let k = SymmetricPolygon2::diamond(1.0).expect("unit diamond");
    let m = Measure::Planar(PlanarDensity::standard_gaussian());
    let body = |t: f64| Body::Polygon(k.scale(t).expect("positive scale"));
    check_bm(&m, &body(a), &body(b), lambda, cfg)
        .with("case", "c")
        .with("trial", index)
        .with("a", a)
        .with("b", b)
}

/// All three cases with `trials` instances each; the headline is the report
/// with the smallest slack relative to its budget.
pub fn gz_case_checks(seed: u64, trials: u64, cfg: &EvalConfig) -> ScenarioOutcome {
    let mut supporting = Vec::new();
    for i in 0..trials {
        let lambda = trial_rng(seed ^ 0x5eed, i).random_range(0.05..0.95);
        supporting.push(("gz_box".to_string(), gz_box_case(2, seed, i, lambda)));
        supporting.push(("gz_slab".to_string(), gz_slab_case(seed, i, lambda, cfg)));
        supporting.push(("gz_dilate".to_string(), gz_dilate_case(seed, i, lambda, cfg)));
    }
    let headline = supporting
        .iter()
        .map(|(_, r)| r)
        .min_by(|x, y| (x.slack + x.error_budget).total_cmp(&(y.slack + y.error_budget)))
        .cloned()
        .unwrap_or_else(|| InequalityReport::inconclusive("no trials", context!()));
    ScenarioOutcome {
        name: "gz_cases".into(),
        headline,
        supporting,
        table: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_cases_hold() {
        let out = gz_case_checks(42, 20, &EvalConfig::default());
        for (k, r) in &out.supporting {
            assert!(r.holds(), "{k}: {r:?}");
        }
        assert!(out.headline.holds());
    }

    #[test]
    fn boxes_in_many_dimensions_hold() {
        for i in 0..100 {
            assert!(gz_box_case(3, 7, i, 0.3).holds());
        }
    }
}
