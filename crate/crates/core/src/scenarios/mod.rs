//! Worked examples, counterexamples and special cases with closed-form
//! oracles.

pub mod example1;
pub mod example2;
pub mod gz;
pub mod nt;

pub use example1::{example1_closed_form, example1_measure, example1_verify};
pub use example2::{
    example2_closed_form, example2_coefficients, example2_discriminant, example2_measure, example2_verify,
};
pub use gz::gz_case_checks;
pub use nt::{nt_cell, nt_counterexample_search, NtGrid, NtSearch};

use crate::error::{Error, Result};
use crate::functionals::ConcavityProfile;
use crate::geometry::{ConvexRegion, Point2};
use crate::inequalities::InequalityReport;
use std::io::Write;

/// A CSV table produced by a scenario.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub file_name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(file_name: &str, header: &[&str]) -> Self {
        Self {
            file_name: file_name.to_string(),
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    /// A profile table (`t,value,error,power_value,second_diff`) with one
    /// extra trailing column.
    pub fn from_profile(file_name: &str, p: &ConcavityProfile, extra: (&str, &[f64])) -> Self {
        let mut t = Self::new(
            file_name,
            &["t", "value", "error", "power_value", "second_diff", extra.0],
        );
        for i in 0..p.grid.len() {
            let sd = if i >= 1 && i + 1 < p.grid.len() {
                format!("{:e}", p.second_diffs[i - 1])
            } else {
                String::new()
            };
            t.rows.push(vec![
                format!("{}", p.grid[i]),
                format!("{}", p.values[i]),
                format!("{:e}", p.errors[i]),
                format!("{}", p.power_values[i]),
                sd,
                format!("{}", extra.1[i]),
            ]);
        }
        t
    }

    pub fn write_csv(&self, w: impl Write) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::Io(e.to_string());
        out.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            out.write_record(r).map_err(io)?;
        }
        out.flush()?;
        Ok(())
    }
}

/// Result of a scenario: its headline claim, the supporting oracle checks
/// and an optional table.
#[derive(Clone, Debug)]
pub struct ScenarioOutcome {
    pub name: String,
    /// The inequality the scenario is about (a violation for the
    /// counterexamples).
    pub headline: InequalityReport,
    /// Checks of numeric values against closed forms; all should hold.
    pub supporting: Vec<(String, InequalityReport)>,
    pub table: Option<Table>,
}

impl ScenarioOutcome {
    pub fn supporting_hold(&self) -> bool {
        self.supporting.iter().all(|(_, r)| r.holds())
    }
}

/// Area of the intersection of an axis-parallel box `[-a, a] x [-b, b]` with
/// further half-planes.
pub(crate) fn clipped_box_area(a: f64, b: f64, extra: &[(Point2, f64)]) -> f64 {
    let mut hp = vec![([1.0, 0.0], a), ([-1.0, 0.0], a), ([0.0, 1.0], b), ([0.0, -1.0], b)];
    hp.extend_from_slice(extra);
    let bound = 2.0 * a.max(b) + 1.0;
    let r = ConvexRegion::from_halfplanes(&hp, bound);
    if r.is_empty() {
        0.0
    } else {
        r.area()
    }
}

/// Uniform grid of `k` points on `[lo, hi]`.
pub(crate) fn linspace(lo: f64, hi: f64, k: usize) -> Vec<f64> {
    let mut g: Vec<f64> = (0..k).map(|i| lo + (hi - lo) * i as f64 / (k - 1) as f64).collect();
    g[k - 1] = hi;
    g
}
