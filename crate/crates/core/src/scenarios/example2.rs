//! A rotated product measure for which `√μ(aR)` is strictly convex.
//!
//! The one-dimensional density is `φ(x) = p + (1-p)1_{|x| <= τ}` with
//! `τ = 1/√2`, taken in coordinates rotated by `π/4`. In the original
//! coordinates the density is `p²` plus `p(1-p)` on each of the strips
//! `|x + y| <= 1` and `|x - y| <= 1`, plus `(1-p)²` on their intersection.
//! The rectangle `R = [-1, 1] x [-λ, λ]` stays axis-aligned.

use super::{clipped_box_area, linspace, ScenarioOutcome, Table};
use crate::context;
use crate::error::{Error, Result};
use crate::functionals::ConcavityProfile;
use crate::geometry::{convex, Point2};
use crate::inequalities::checks::s_concavity_from;
use crate::inequalities::InequalityReport;
use crate::measures::{quadrature, MeasureEstimate, Method, QuadConfig};

pub const GRID_POINTS: usize = 21;

const U: [(Point2, f64); 2] = [([1.0, 1.0], 1.0), ([-1.0, -1.0], 1.0)];
const V: [(Point2, f64); 2] = [([1.0, -1.0], 1.0), ([-1.0, 1.0], 1.0)];

fn check_params(p: f64, lambda: f64) -> Result<()> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::OutOfRange { name: "p", value: p });
    }
    if !(lambda > 0.0 && lambda < 0.5) {
        return Err(Error::OutOfRange {
            name: "lambda",
            value: lambda,
        });
    }
    Ok(())
}

/// `(d₀, d₁, d₂)` with `μ(aR) = d₀ + d₁a + d₂a²` for `a >= 1/λ`.
pub fn example2_coefficients(p: f64, lambda: f64) -> Result<[f64; 3]> {
    check_params(p, lambda)?;
    let q = 1.0 - p;
    Ok([2.0 * q * q, 8.0 * p * q * lambda, 4.0 * p * p * lambda])
}

pub fn example2_closed_form(a: f64, p: f64, lambda: f64) -> Result<f64> {
    let [d0, d1, d2] = example2_coefficients(p, lambda)?;
    if !(a >= 1.0 / lambda) {
        return Err(Error::OutOfRange { name: "a", value: a });
    }
    Ok(d0 + d1 * a + d2 * a * a)
}

/// `4d₂d₀ - d₁²`, which equals `2ωω'' - (ω')²` for the quadratic `ω`.
pub fn example2_discriminant(p: f64, lambda: f64) -> Result<f64> {
    let [d0, d1, d2] = example2_coefficients(p, lambda)?;
    Ok(4.0 * d2 * d0 - d1 * d1)
}

fn density(x: Point2, p: f64) -> f64 {
    let q = 1.0 - p;
    let on = |s: f64| if s.abs() <= 1.0 { q } else { 0.0 };
    (p + on(x[0] + x[1])) * (p + on(x[0] - x[1]))
}

/// `μ(aR)` from the areas of `aR`, its intersections with each strip and
/// with both.
pub fn example2_measure(a: f64, p: f64, lambda: f64) -> Result<MeasureEstimate> {
    check_params(p, lambda)?;
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::OutOfRange { name: "a", value: a });
    }
    let (w, h) = (a, a * lambda);
    let full = clipped_box_area(w, h, &[]);
    let su = clipped_box_area(w, h, &U);
    let sv = clipped_box_area(w, h, &V);
    let both = clipped_box_area(w, h, &[U[0], U[1], V[0], V[1]]);
    let q = 1.0 - p;
    let v = p * p * full + p * q * (su + sv) + q * q * both;
    Ok(MeasureEstimate::new(v, 64.0 * f64::EPSILON * v.max(1.0), Method::Sweep).with_param("geometry", "clipped"))
}

/// Quadrature of the density over the cells of `aR` cut by the four strip
/// boundaries; the density is constant on every cell.
pub fn example2_quadrature(a: f64, p: f64, lambda: f64, cfg: &QuadConfig) -> Result<MeasureEstimate> {
    check_params(p, lambda)?;
    let (w, h) = (a, a * lambda);
    let rect = vec![[-w, -h], [w, -h], [w, h], [-w, h]];
    let sides = |n: Point2| {
        let m = [-n[0], -n[1]];
        // below -1, between, above 1
        [vec![(n, -1.0)], vec![(n, 1.0), (m, 1.0)], vec![(m, -1.0)]]
    };
    let mut tris = Vec::new();
    for su in sides([1.0, 1.0]) {
        for sv in sides([1.0, -1.0]) {
            let mut cell = rect.clone();
            for &(n, c) in su.iter().chain(&sv) {
                cell = convex::clip(&cell, n, c);
            }
            let cell = convex::cleanup(&cell);
            if cell.len() >= 3 {
                let c = convex::vertex_centroid(&cell);
                let k = cell.len();
                tris.extend((0..k).map(|i| [c, cell[i], cell[(i + 1) % k]]));
            }
        }
    }
    let r = quadrature::integrate(&tris, &|x| density(x, p), cfg);
    Ok(MeasureEstimate::new(r.value, r.error, Method::Quadrature).with_param("triangles", r.triangles))
}

/// Numeric `μ(aR)` on 21 points of `[1/λ, 2/λ]` against the closed form and
/// a quadrature cross-check, the discriminant identity, convexity of
/// `√μ(aR)` and the Brunn–Minkowski failure between the grid end points.
pub fn example2_verify(p: f64, lambda: f64) -> Result<ScenarioOutcome> {
    let grid = linspace(1.0 / lambda, 2.0 / lambda, GRID_POINTS);
    let est: Vec<MeasureEstimate> = grid
        .iter()
        .map(|&a| example2_measure(a, p, lambda))
        .collect::<Result<_>>()?;
    let closed: Vec<f64> = grid
        .iter()
        .map(|&a| example2_closed_form(a, p, lambda))
        .collect::<Result<_>>()?;
    let base = context!("p" => p, "lambda" => lambda);

    let mut supporting = Vec::new();
    let quad = QuadConfig::default();
    for ((&a, e), &c) in grid.iter().zip(&est).zip(&closed) {
        let r = InequalityReport::equality(e.value, c, e.error, base.clone()).with("a", a);
        supporting.push(("closed_form".to_string(), r));
        let qe = example2_quadrature(a, p, lambda, &quad)?;
        let r = InequalityReport::equality(qe.value, e.value, qe.error + e.error, base.clone()).with("a", a);
        supporting.push(("quadrature_cross_check".to_string(), r));
    }

    let disc = example2_discriminant(p, lambda)?;
    let q = 1.0 - p;
    let factored = 32.0 * lambda * p * p * q * q * (1.0 - 2.0 * lambda);
    supporting.push((
        "discriminant".to_string(),
        InequalityReport::equality(disc, factored, 0.0, base.clone()),
    ));
    supporting.push((
        "discriminant_positive".to_string(),
        InequalityReport::new(disc, 0.0, 0.0, base.clone()).with("strict", true),
    ));

    let profile = ConcavityProfile::new(grid.clone(), &est, 0.5)?;
    let (i, _) = profile
        .second_diffs
        .iter()
        .zip(&profile.budgets)
        .map(|(d, b)| d - b)
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("grid has interior points");
    supporting.push((
        "strict_convexity".to_string(),
        InequalityReport::new(profile.second_diffs[i], profile.budgets[i], 0.0, base.clone()).with("a", grid[i + 1]),
    ));

    let (a0, a1) = (grid[0], grid[GRID_POINTS - 1]);
    let (e0, e1, em) = (
        example2_measure(a0, p, lambda)?,
        example2_measure(a1, p, lambda)?,
        example2_measure(0.5 * (a0 + a1), p, lambda)?,
    );
    let headline = s_concavity_from(&em, &e0, &e1, 0.5, 0.5, base)
        .with("a", a0)
        .with("b", a1);

    Ok(ScenarioOutcome {
        name: "example2".into(),
        headline,
        supporting,
        table: Some(Table::from_profile("example2.csv", &profile, ("closed_form", &closed))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // exact integral over y of the piecewise linear x-lengths, by Simpson's
    // rule on the breakpoints
    fn oracle(a: f64, p: f64, lambda: f64) -> f64 {
        let h = a * lambda;
        let len = |lo: f64, hi: f64| (hi.min(a) - lo.max(-a)).max(0.0);
        let row = |y: f64| {
            let u = len(-1.0 - y, 1.0 - y);
            let v = len(-1.0 + y, 1.0 + y);
            let both = len((-1.0 - y).max(-1.0 + y), (1.0 - y).min(1.0 + y));
            let q = 1.0 - p;
            p * p * 2.0 * a + p * q * (u + v) + q * q * both
        };
        let mut knots = vec![-h, h, -1.0, 1.0, 0.0, a - 1.0, 1.0 - a, a + 1.0, -a - 1.0];
        knots.retain(|&k| k >= -h && k <= h);
        knots.sort_by(f64::total_cmp);
        knots
            .windows(2)
            .map(|w| (w[1] - w[0]) / 6.0 * (row(w[0]) + 4.0 * row(0.5 * (w[0] + w[1])) + row(w[1])))
            .sum()
    }

    #[test]
    fn printed_values() {
        assert_eq!(example2_coefficients(0.5, 0.25).unwrap(), [0.5, 0.5, 0.25]);
        assert_eq!(example2_closed_form(4.0, 0.5, 0.25).unwrap(), 6.5);
        assert!((example2_discriminant(0.5, 0.25).unwrap() - 0.25).abs() < 1e-15);
        assert!(example2_discriminant(0.5, 0.4999).unwrap() < 1e-3);
    }

    #[test]
    fn measure_matches_row_oracle() {
        for &(a, p, l) in &[
            (4.0, 0.5, 0.25),
            (6.3, 0.5, 0.25),
            (1.0, 0.3, 0.2),
            (2.5, 0.8, 0.4),
            (12.0, 0.1, 0.1),
        ] {
            let v = example2_measure(a, p, l).unwrap().value;
            assert!(
                (v - oracle(a, p, l)).abs() < 1e-9,
                "a={a} p={p} l={l}: {v} vs {}",
                oracle(a, p, l)
            );
        }
    }

    #[test]
    fn verify_reports_violation() {
        let out = example2_verify(0.5, 0.25).unwrap();
        for (k, r) in &out.supporting {
            assert!(r.holds(), "{k}: {r:?}");
        }
        assert!(out.headline.violated());
        assert_eq!(out.table.unwrap().rows.len(), GRID_POINTS);
    }
}
