use super::{unit, Point2};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Smallest grid accepted by the support-function mean.
pub const MIN_GRID: usize = 16;
/// Default resolution of the support-function mean.
pub const DEFAULT_GRID: usize = 720;

/// Evenly spaced unit directions on the upper semicircle, extended by
/// central symmetry to `2 * count` directions covering the full circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionGrid {
    count: usize,
}

impl Default for DirectionGrid {
    fn default() -> Self {
        Self { count: DEFAULT_GRID }
    }
}

impl DirectionGrid {
    pub fn new(count: usize) -> Result<Self> {
        if count < MIN_GRID {
            return Err(Error::OutOfRange {
                name: "grid.count",
                value: count as f64,
            });
        }
        Ok(Self { count })
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Angular spacing between neighbouring directions.
    pub fn spacing(&self) -> f64 {
        std::f64::consts::PI / self.count as f64
    }

    /// All `2 * count` directions ordered by angle in `[0, 2π)`.
    pub fn directions(&self) -> Vec<Point2> {
        let half: Vec<Point2> = (0..self.count).map(|k| unit(self.spacing() * k as f64)).collect();
        let mut all = half.clone();
        all.extend(half.iter().map(|u| [-u[0], -u[1]]));
        all
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_coarse_grids() {
        assert!(DirectionGrid::new(15).is_err());
        assert!(DirectionGrid::new(16).is_ok());
    }

    #[test]
    fn directions_are_unit_and_uniform() {
        let g = DirectionGrid::new(90).unwrap();
        let d = g.directions();
        assert_eq!(d.len(), 180);
        for (i, u) in d.iter().enumerate() {
            assert!((u[0].hypot(u[1]) - 1.0).abs() < 1e-12);
            let v = d[(i + 1) % d.len()];
            let gap = (u[0] * v[1] - u[1] * v[0]).atan2(u[0] * v[0] + u[1] * v[1]);
            assert!((gap - g.spacing()).abs() < 1e-12);
        }
    }
}
