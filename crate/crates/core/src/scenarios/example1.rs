//! A non-product unconditional density on the plane for which the measure
//! of dilates of a square is not 1/2-concave.
//!
//! The density is `1` on `C = [-1, 1]^2` and `1/2` on `2C \ C`, so
//! `μ(aC) = 2a² + 2` for `a ∈ [1, 2]` and `√μ(aC)` is strictly convex there.

use super::{clipped_box_area, linspace, ScenarioOutcome, Table};
use crate::context;
use crate::error::{Error, Result};
use crate::functionals::ConcavityProfile;
use crate::inequalities::checks::s_concavity_from;
use crate::inequalities::InequalityReport;
use crate::measures::{MeasureEstimate, Method};

pub const GRID_POINTS: usize = 21;

pub fn example1_closed_form(a: f64) -> Result<f64> {
    if !(1.0..=2.0).contains(&a) {
        return Err(Error::OutOfRange { name: "a", value: a });
    }
    Ok(2.0 * a * a + 2.0)
}

/// `μ(aC)` as `½ area(aC ∩ 2C) + ½ area(aC ∩ C)`, from clipped polygons.
pub fn example1_measure(a: f64) -> Result<MeasureEstimate> {
    if !(a >= 0.0 && a.is_finite()) {
        return Err(Error::OutOfRange { name: "a", value: a });
    }
    let cap = |k: f64| {
        clipped_box_area(
            a,
            a,
            &[([1.0, 0.0], k), ([-1.0, 0.0], k), ([0.0, 1.0], k), ([0.0, -1.0], k)],
        )
    };
    let v = 0.5 * cap(2.0) + 0.5 * cap(1.0);
    Ok(MeasureEstimate::new(v, 64.0 * f64::EPSILON * v.max(1.0), Method::Sweep).with_param("geometry", "clipped"))
}

/// Numeric `μ(aC)` on 21 points of `[1, 2]` against the closed form, the
/// convexity of `√μ(aC)` and the resulting Brunn–Minkowski failure between
/// `C` and `2C`.
pub fn example1_verify() -> Result<ScenarioOutcome> {
    let grid = linspace(1.0, 2.0, GRID_POINTS);
    let est: Vec<MeasureEstimate> = grid.iter().map(|&a| example1_measure(a)).collect::<Result<_>>()?;
    let closed: Vec<f64> = grid.iter().map(|&a| example1_closed_form(a)).collect::<Result<_>>()?;

    let mut supporting = Vec::new();
    for ((&a, e), &c) in grid.iter().zip(&est).zip(&closed) {
        let r = InequalityReport::equality(e.value, c, e.error, context!("a" => a));
        supporting.push(("closed_form".to_string(), r));
    }
    let profile = ConcavityProfile::new(grid.clone(), &est, 0.5)?;
    // strict convexity: every second difference above ten budgets
    let (i, margin) = profile
        .second_diffs
        .iter()
        .zip(&profile.budgets)
        .map(|(d, b)| d - 10.0 * b)
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .expect("grid has interior points");
    supporting.push((
        "strict_convexity".to_string(),
        InequalityReport::new(
            profile.second_diffs[i],
            10.0 * profile.budgets[i],
            0.0,
            context!("a" => grid[i + 1]),
        )
        .with("margin", margin),
    ));

    let (e1, e2, e15) = (example1_measure(1.0)?, example1_measure(2.0)?, example1_measure(1.5)?);
    let headline = s_concavity_from(
        &e15,
        &e1,
        &e2,
        0.5,
        0.5,
        context!("a" => 1.0, "b" => 2.0, "lambda" => 0.5),
    );

    Ok(ScenarioOutcome {
        name: "example1".into(),
        headline,
        supporting,
        table: Some(Table::from_profile("example1.csv", &profile, ("closed_form", &closed))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    // product of side lengths of the box intersected with each level set
    fn oracle(a: f64) -> f64 {
        let side = |k: f64| 2.0 * a.min(k);
        0.5 * side(2.0).powi(2) + 0.5 * side(1.0).powi(2)
    }

    #[test]
    fn measure_matches_side_length_oracle() {
        for a in [0.0, 0.3, 1.0, 1.37, 2.0, 3.5] {
            assert!(
                (example1_measure(a).unwrap().value - oracle(a)).abs() < 1e-12,
                "a = {a}"
            );
        }
        assert_eq!(example1_closed_form(1.0).unwrap(), 4.0);
        assert_eq!(example1_closed_form(2.0).unwrap(), 10.0);
    }

    #[test]
    fn verify_reports_violation() {
        let out = example1_verify().unwrap();
        assert!(out.supporting_hold());
        assert!(out.headline.violated());
        assert!((out.headline.lhs - 6.5f64.sqrt()).abs() < 1e-12);
        assert_eq!(out.table.unwrap().rows.len(), GRID_POINTS);
    }
}
