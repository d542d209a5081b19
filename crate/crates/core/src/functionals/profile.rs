//! Concavity profiles `t ↦ F(t)^s` on a parameter grid.

use crate::context;
use crate::error::{Error, Result};
use crate::geometry::{Body, BoxIdeal};
use crate::inequalities::{InequalityReport, Verdict};
use crate::measures::{EvalConfig, Measure, MeasureEstimate, ProductMeasure};
use serde::Serialize;
use std::io::Write;

use super::measure_sum;

/// Values of a one-parameter family and the second differences of their
/// `exponent`-th power.
///
/// For non-uniform grids the second difference is the divided difference
/// multiplied by the squared mean spacing, so it is on the same scale as the
/// plain `f(t-h) - 2f(t) + f(t+h)` of a uniform grid.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcavityProfile {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
    pub errors: Vec<f64>,
    pub exponent: f64,
    pub power_values: Vec<f64>,
    pub second_diffs: Vec<f64>,
    /// Error budget of each second difference.
    pub budgets: Vec<f64>,
    /// `false` when the input is outside the class where concavity is
    /// asserted; the verdict is then inconclusive.
    pub certified: bool,
}

impl ConcavityProfile {
    pub fn new(grid: Vec<f64>, estimates: &[MeasureEstimate], exponent: f64) -> Result<Self> {
        if grid.len() != estimates.len() {
            return Err(Error::DimensionMismatch {
                expected: grid.len(),
                found: estimates.len(),
            });
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::OutOfRange {
                name: "t_grid",
                value: f64::NAN,
            });
        }
        let pw = |x: f64| if x <= 0.0 { 0.0 } else { x.powf(exponent) };
        let values: Vec<f64> = estimates.iter().map(|e| e.value).collect();
        let errors: Vec<f64> = estimates.iter().map(|e| e.error).collect();
        let power_values: Vec<f64> = values.iter().map(|&v| pw(v)).collect();
        let power_errors: Vec<f64> = estimates
            .iter()
            .zip(&power_values)
            .map(|(e, &p)| (pw(e.upper()) - p).max(p - pw(e.lower())))
            .collect();
        let k = grid.len();
        let mut second_diffs = Vec::with_capacity(k.saturating_sub(2));
        let mut budgets = Vec::with_capacity(k.saturating_sub(2));
        if k >= 3 {
            let mean = (grid[k - 1] - grid[0]) / (k - 1) as f64;
            for i in 1..k - 1 {
                let h0 = grid[i] - grid[i - 1];
                let h1 = grid[i + 1] - grid[i];
                let a = 2.0 * mean * mean / (h0 * (h0 + h1));
                let c = 2.0 * mean * mean / (h1 * (h0 + h1));
                let b = -(a + c);
                let f = &power_values;
                second_diffs.push(a * f[i - 1] + b * f[i] + c * f[i + 1]);
                let e = &power_errors;
                let fp = 8.0
                    * f64::EPSILON
                    * (a * f[i - 1].abs() + a.abs() * f[i].abs() + c * f[i + 1].abs() + c.abs() * f[i].abs());
                budgets.push(a * e[i - 1] + b.abs() * e[i] + c * e[i + 1] + fp);
            }
        }
        Ok(Self {
            grid,
            values,
            errors,
            exponent,
            power_values,
            second_diffs,
            budgets,
            certified: true,
        })
    }

    /// Concavity verdict: every second difference at most its budget.
    /// Summarised at the worst point as `0 >= second_diff`.
    pub fn report(&self) -> InequalityReport {
        let ctx = context!("exponent" => self.exponent, "points" => self.grid.len());
        if !self.certified {
            return InequalityReport::inconclusive("body outside the certified class", ctx);
        }
        let worst = (0..self.second_diffs.len()).max_by(|&i, &j| {
            (self.second_diffs[i] - self.budgets[i]).total_cmp(&(self.second_diffs[j] - self.budgets[j]))
        });
        match worst {
            None => InequalityReport::new(0.0, 0.0, 0.0, ctx),
            Some(i) => {
                InequalityReport::new(0.0, self.second_diffs[i], self.budgets[i], ctx).with("t", self.grid[i + 1])
            }
        }
    }

    pub fn verdict(&self) -> Verdict {
        self.report().verdict
    }

    /// CSV with columns `t,value,error,power_value,second_diff`; the end
    /// points have an empty second difference.
    pub fn write_csv(&self, w: impl Write) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Io(e.to_string());
        out.write_record(["t", "value", "error", "power_value", "second_diff"])
            .map_err(io)?;
        for i in 0..self.grid.len() {
            let sd = if i >= 1 && i + 1 < self.grid.len() {
                format!("{:e}", self.second_diffs[i - 1])
            } else {
                String::new()
            };
            out.write_record([
                format!("{}", self.grid[i]),
                format!("{}", self.values[i]),
                format!("{:e}", self.errors[i]),
                format!("{}", self.power_values[i]),
                sd,
            ])
            .map_err(io)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// `t ↦ μ(A + tB)` with exponent `1/n`.
pub fn parallel_volume_profile(
    m: &Measure,
    a: &Body,
    b: &Body,
    t_grid: &[f64],
    cfg: &EvalConfig,
) -> Result<ConcavityProfile> {
    if t_grid.iter().any(|&t| !(t >= 0.0)) {
        return Err(Error::OutOfRange {
            name: "t",
            value: t_grid.iter().copied().fold(f64::NAN, f64::min),
        });
    }
    let est: Vec<MeasureEstimate> = t_grid
        .iter()
        .map(|&t| measure_sum(m, a, t, b, cfg))
        .collect::<Result<_>>()?;
    ConcavityProfile::new(t_grid.to_vec(), &est, 1.0 / a.dim() as f64)
}

/// Upper concave majorant of the staircase of a planar ideal: the slice
/// half-length of the convex hull at first coordinate `t`. The second value is
/// `true` when every generator is a vertex of the hull (within 1e-9).
fn hull_profile(a: &BoxIdeal) -> (Vec<[f64; 2]>, bool) {
    let mut pts: Vec<[f64; 2]> = a.generators().iter().map(|g| [g[0], g[1]]).collect();
    let top = pts.iter().map(|p| p[1]).fold(0.0, f64::max);
    pts.push([0.0, top]);
    pts.sort_by(|p, q| p[0].total_cmp(&q[0]).then(q[1].total_cmp(&p[1])));
    let mut hull: Vec<[f64; 2]> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (o, q) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cr = (q[0] - o[0]) * (p[1] - o[1]) - (q[1] - o[1]) * (p[0] - o[0]);
            if cr >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    // a generator strictly below the majorant breaks convexity
    let on_hull = a.generators().iter().all(|g| {
        let u = eval_hull(&hull, g[0]);
        u - g[1] <= 1e-9 * u.max(1.0)
    });
    (hull, on_hull)
}

fn eval_hull(hull: &[[f64; 2]], t: f64) -> f64 {
    if t > hull[hull.len() - 1][0] {
        return 0.0;
    }
    let k = hull.partition_point(|p| p[0] < t);
    if k == 0 {
        return hull[0][1];
    }
    let (p, q) = (hull[k - 1], hull[k]);
    p[1] + (q[1] - p[1]) * (t - p[0]) / (q[0] - p[0])
}

/// How a section `A ∩ {x_1 = t}` is measured.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SliceWeight {
    /// Integrate the full density `φ(t, x_2, …, x_n)` over the section.
    #[default]
    Density,
    /// Integrate the density of `μ_2 ⊗ … ⊗ μ_n` only, dropping the factor
    /// `φ_1(t)`.
    Marginal,
}

/// `t ↦ μ_{n-1}(A ∩ {x_1 = t})` with exponent `1/(n-1)`.
///
/// With [`SliceWeight::Density`] the profile carries the factor `φ_1(t)`, and
/// concavity can fail for wide bodies (for the Gaussian, `φ_1` itself is
/// convex beyond `|t| = 1`); [`SliceWeight::Marginal`] is concave for every
/// convex ideal.
///
/// A single box is evaluated as is. A planar staircase whose generators all
/// lie on the boundary of its convex hull is replaced by that hull, which is
/// the convex ideal the staircase describes. Any other input gives an
/// uncertified profile. Grid points with an empty slice are dropped.
pub fn brunn_section_profile(
    m: &ProductMeasure,
    a: &BoxIdeal,
    t_grid: &[f64],
    weight: SliceWeight,
) -> Result<ConcavityProfile> {
    let n = a.dim();
    if n < 2 {
        return Err(Error::OutOfRange {
            name: "dim",
            value: n as f64,
        });
    }
    if m.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: n,
        });
    }
    let rest = ProductMeasure::new(m.components[1..].to_vec())?;
    let single = a.generators().len() == 1;
    let (hull, hull_ok) = if n == 2 && !single && !a.is_empty() {
        hull_profile(a)
    } else {
        (Vec::new(), false)
    };
    let certified = single || hull_ok;
    let mut grid = Vec::new();
    let mut est = Vec::new();
    for &t in t_grid {
        let slice_measure = if n == 2 && hull_ok {
            let u = eval_hull(&hull, t.abs());
            if u <= 0.0 {
                continue;
            }
            m.components[1].shell(0.0, u)
        } else {
            let s = crate::geometry::slice_ideal(a, t.abs())?;
            if s.is_empty() || s.is_null() {
                continue;
            }
            rest.measure_ideal(&s, &Default::default())?.value
        };
        let v = match weight {
            SliceWeight::Density => m.components[0].density(t) * slice_measure,
            SliceWeight::Marginal => slice_measure,
        };
        if v <= 0.0 {
            continue;
        }
        grid.push(t);
        est.push(MeasureEstimate::new(
            v,
            4.0 * n as f64 * f64::EPSILON * v,
            crate::measures::Method::Sweep,
        ));
    }
    let mut p = ConcavityProfile::new(grid, &est, 1.0 / (n - 1) as f64)?;
    p.certified = certified;
    Ok(p)
}
