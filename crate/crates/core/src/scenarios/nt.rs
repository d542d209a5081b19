//! Non-symmetric cones violating the Gaussian Brunn–Minkowski inequality.
//!
//! `A = {y >= |x| tan α}` and `B = {y >= |x| tan α - ε}` both contain the
//! origin; `λA + (1-λ)B` is the cone shifted down by `(1-λ)ε`. For `α` close
//! to `π/2` and small `ε` the inequality with exponent `1/2` fails. The cones
//! are truncated to a box and evaluated by planar quadrature under `γ₂`.

use super::{ScenarioOutcome, Table};
use crate::context;
use crate::geometry::ConvexRegion;
use crate::inequalities::checks::s_concavity_from;
use crate::inequalities::{InequalityReport, Verdict};
use crate::measures::{Measure, PlanarDensity, QuadConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Search grid: angles in degrees, shifts, `λ` and the truncation half-width.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NtGrid {
    pub alphas_deg: Vec<f64>,
    pub epsilons: Vec<f64>,
    #[serde(default = "half")]
    pub lambda: f64,
    #[serde(default = "eight")]
    pub truncation: f64,
}

fn half() -> f64 {
    0.5
}

fn eight() -> f64 {
    8.0
}

impl Default for NtGrid {
    /// `α = 80°, 81°, …, 89°` and `ε = 10^{-3 + k/4}`, `k = 0..=8`.
    fn default() -> Self {
        Self {
            alphas_deg: (80..=89).map(f64::from).collect(),
            epsilons: (0..=8).map(|k| 10f64.powf(-3.0 + 0.25 * k as f64)).collect(),
            lambda: 0.5,
            truncation: 8.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NtCell {
    pub alpha_deg: f64,
    pub epsilon: f64,
    pub report: InequalityReport,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NtSearch {
    pub grid: NtGrid,
    /// Row-major over `(alpha, epsilon)`.
    pub cells: Vec<NtCell>,
    /// Cell with the most negative slack; ties go to the lower index.
    pub best: Option<usize>,
    /// The best cell re-evaluated with halved quadrature tolerances.
    pub confirmation: Option<InequalityReport>,
}

/// The cone `{y >= |x| tan α - s}` truncated to `[-bound, bound]^2`.
pub fn cone(alpha: f64, s: f64, bound: f64) -> ConvexRegion {
    let (sa, ca) = alpha.sin_cos();
    ConvexRegion::from_halfplanes(&[([sa, -ca], s * ca), ([-sa, -ca], s * ca)], bound)
}

/// Slack of `γ(λA + (1-λ)B)^{1/2} >= λγ(A)^{1/2} + (1-λ)γ(B)^{1/2}` for one
/// grid cell.
pub fn nt_cell(alpha_deg: f64, epsilon: f64, lambda: f64, truncation: f64, quad: &QuadConfig) -> InequalityReport {
    let ctx = context!("alpha_deg" => alpha_deg, "epsilon" => epsilon, "lambda" => lambda, "truncation" => truncation);
    if !(alpha_deg > 0.0 && alpha_deg < 90.0 && epsilon > 0.0 && lambda > 0.0 && lambda < 1.0) {
        return InequalityReport::inconclusive("need 0 < α < 90°, ε > 0, 0 < λ < 1", ctx);
    }
    let m = Measure::Planar(PlanarDensity::standard_gaussian());
    let alpha = alpha_deg.to_radians();
    let eval = |s: f64| m.measure_truncated(&cone(alpha, s, truncation), truncation, quad);
    match (eval((1.0 - lambda) * epsilon), eval(0.0), eval(epsilon)) {
        (Ok(ec), Ok(ea), Ok(eb)) => s_concavity_from(&ec, &ea, &eb, lambda, 0.5, ctx),
        (Err(e), _, _) | (_, Err(e), _) | (_, _, Err(e)) => InequalityReport::inconclusive(e.to_string(), ctx),
    }
}

/// Evaluates every grid cell in parallel and confirms the most negative one
/// at doubled precision. The result does not depend on the thread count.
pub fn nt_counterexample_search(grid: &NtGrid, quad: &QuadConfig) -> NtSearch {
    let pairs: Vec<(f64, f64)> = grid
        .alphas_deg
        .iter()
        .flat_map(|&a| grid.epsilons.iter().map(move |&e| (a, e)))
        .collect();
    let cells: Vec<NtCell> = pairs
        .par_iter()
        .map(|&(alpha_deg, epsilon)| NtCell {
            alpha_deg,
            epsilon,
            report: nt_cell(alpha_deg, epsilon, grid.lambda, grid.truncation, quad),
        })
        .collect();
    let mut best: Option<usize> = None;
    for (i, c) in cells.iter().enumerate() {
        if c.report.slack.is_finite() && best.is_none_or(|b| c.report.slack < cells[b].report.slack) {
            best = Some(i);
        }
    }
    let confirmation = best.map(|b| {
        let c = &cells[b];
        nt_cell(c.alpha_deg, c.epsilon, grid.lambda, grid.truncation, &quad.halved())
    });
    NtSearch {
        grid: grid.clone(),
        cells,
        best,
        confirmation,
    }
}

impl NtSearch {
    pub fn best_cell(&self) -> Option<&NtCell> {
        self.best.map(|i| &self.cells[i])
    }

    /// The best cell keeps its verdict and its slack moves by less than the
    /// combined budgets when the precision is doubled.
    pub fn is_stable(&self) -> bool {
        match (self.best_cell(), &self.confirmation) {
            (Some(c), Some(r)) => {
                r.verdict == c.report.verdict
                    && (r.slack - c.report.slack).abs() <= r.error_budget + c.report.error_budget
            }
            _ => false,
        }
    }

    pub fn table(&self) -> Table {
        let mut t = Table::new(
            "nt_search.csv",
            &["alpha_deg", "epsilon", "lhs", "rhs", "slack", "error", "verdict"],
        );
        for c in &self.cells {
            let r = &c.report;
            let verdict = match r.verdict {
                Verdict::Holds => "holds",
                Verdict::Violated => "violated",
                Verdict::Inconclusive => "inconclusive",
            };
            t.rows.push(vec![
                format!("{}", c.alpha_deg),
                format!("{:e}", c.epsilon),
                format!("{}", r.lhs),
                format!("{}", r.rhs),
                format!("{:e}", r.slack),
                format!("{:e}", r.error_budget),
                verdict.to_string(),
            ]);
        }
        t
    }

    pub fn outcome(&self) -> ScenarioOutcome {
        let headline = match self.best_cell() {
            Some(c) => c.report.clone(),
            None => InequalityReport::inconclusive("no cell could be evaluated", context!()),
        };
        let mut supporting = Vec::new();
        if let (Some(c), Some(r)) = (self.best_cell(), &self.confirmation) {
            let stab = InequalityReport::equality(
                r.slack,
                c.report.slack,
                r.error_budget + c.report.error_budget,
                r.context.clone(),
            );
            supporting.push(("precision_stability".to_string(), stab));
        }
        ScenarioOutcome {
            name: "nt_search".into(),
            headline,
            supporting,
            table: Some(self.table()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{gaussian_cdf, gaussian_pdf};

    // γ₂(cone_s) = 2∫_0^∞ φ(x) Φ(s - x tan α) dx by composite Simpson
    fn oracle(alpha: f64, s: f64) -> f64 {
        let k = 20000;
        let hi = 9.0;
        let h = hi / k as f64;
        let f = |x: f64| gaussian_pdf(x) * gaussian_cdf(s - x * alpha.tan());
        let mut acc = f(0.0) + f(hi);
        for i in 1..k {
            acc += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
        }
        2.0 * acc * h / 3.0
    }

    #[test]
    fn cone_measure_matches_oracle() {
        let m = Measure::Planar(PlanarDensity::standard_gaussian());
        for &(deg, s) in &[(45.0, 0.0), (80.0, 0.05), (89.0, 1e-3), (60.0, 1.0)] {
            let a = f64::to_radians(deg);
            let e = m
                .measure_truncated(&cone(a, s, 8.0), 8.0, &QuadConfig::default())
                .unwrap();
            let o = oracle(a, s);
            assert!(
                (e.value - o).abs() <= e.error.max(1e-10) + 1e-10,
                "{deg} {s}: {} vs {o}",
                e.value
            );
        }
        assert!((oracle(f64::to_radians(80.0), 0.0) - 10.0 / 180.0).abs() < 1e-10);
    }

    #[test]
    fn far_from_critical_regime_holds() {
        assert!(nt_cell(45.0, 1.0, 0.5, 8.0, &QuadConfig::default()).holds());
    }

    #[test]
    fn small_search_is_deterministic() {
        let grid = NtGrid {
            alphas_deg: vec![80.0, 85.0],
            epsilons: vec![0.01, 0.1],
            ..NtGrid::default()
        };
        let q = QuadConfig::default();
        let a = nt_counterexample_search(&grid, &q);
        let b = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| nt_counterexample_search(&grid, &q));
        assert_eq!(a, b);
        let best = a.best_cell().unwrap();
        assert!(best.report.violated(), "{:?}", best.report);
        assert!(a.is_stable());
    }
}
