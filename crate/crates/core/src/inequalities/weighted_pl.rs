//! Weighted Prékopa–Leindler inequality for unconditional step functions.

use super::lemma::pl_factor;
use super::report::{pow0, InequalityReport};
use crate::context;
use crate::error::{check_lambda, Error, Result};
use crate::geometry::BoxIdeal;
use crate::measures::ProductMeasure;

/// An unconditional, coordinatewise non-increasing step function on `R^n`
/// (`n <= 2`), given on `[0, R]^n` and extended by symmetry and by zero.
///
/// Along axis `k` the cells are `[0, e_1], (e_1, e_2], …`; `values` is
/// row-major over the cells.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    edges: Vec<Vec<f64>>,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(edges: Vec<Vec<f64>>, values: Vec<f64>) -> Result<Self> {
        let n = edges.len();
        if !(1..=2).contains(&n) {
            return Err(Error::InvalidGridFunction("dimension must be 1 or 2".into()));
        }
        for e in &edges {
            if e.len() < 2 || e[0] != 0.0 || e.windows(2).any(|w| !(w[1] > w[0])) || !e[e.len() - 1].is_finite() {
                return Err(Error::InvalidGridFunction(
                    "edges must start at 0 and increase strictly".into(),
                ));
            }
        }
        let shape: Vec<usize> = edges.iter().map(|e| e.len() - 1).collect();
        if values.len() != shape.iter().product::<usize>() {
            return Err(Error::InvalidGridFunction("one value per cell".into()));
        }
        if values.iter().any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return Err(Error::InvalidGridFunction("values must be finite and >= 0".into()));
        }
        let f = Self { edges, values };
        let non_increasing = match shape.as_slice() {
            [_] => f.values.windows(2).all(|w| w[1] <= w[0]),
            [r, c] => (0..*r).all(|i| {
                (0..*c).all(|j| {
                    let v = f.values[i * c + j];
                    (i + 1 == *r || f.values[(i + 1) * c + j] <= v) && (j + 1 == *c || f.values[i * c + j + 1] <= v)
                })
            }),
            _ => unreachable!(),
        };
        if !non_increasing {
            return Err(Error::InvalidGridFunction("values must be non-increasing".into()));
        }
        Ok(f)
    }

    /// The indicator of an ideal on the given edges, which must contain every
    /// generator coordinate.
    pub fn indicator(a: &BoxIdeal, edges: Vec<Vec<f64>>) -> Result<Self> {
        if a.dim() != edges.len() {
            return Err(Error::DimensionMismatch {
                expected: edges.len(),
                found: a.dim(),
            });
        }
        let corners = cell_corners(&edges);
        let values = corners.iter().map(|c| f64::from(u8::from(a.contains(c)))).collect();
        Self::new(edges, values)
    }

    /// Sorted union of the generator coordinates of several ideals, per axis.
    pub fn common_edges(ideals: &[&BoxIdeal]) -> Vec<Vec<f64>> {
        let n = ideals[0].dim();
        (0..n)
            .map(|k| {
                let mut e: Vec<f64> = std::iter::once(0.0)
                    .chain(ideals.iter().flat_map(|a| a.generators().iter().map(move |g| g[k])))
                    .collect();
                e.sort_by(f64::total_cmp);
                e.dedup();
                e
            })
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Vec<f64>] {
        &self.edges
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    fn shape(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.len() - 1).collect()
    }

    /// Value at `x`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut idx = 0;
        for (k, e) in self.edges.iter().enumerate() {
            let t = x[k].abs();
            if t > e[e.len() - 1] {
                return 0.0;
            }
            // first edge index with e >= t, cells are left-open
            let cell = e.partition_point(|&s| s < t).max(1) - 1;
            idx = idx * (e.len() - 1) + cell;
        }
        self.values[idx]
    }

    /// `∫ f dμ`.
    pub fn integrate(&self, m: &ProductMeasure) -> Result<f64> {
        if m.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: m.dim(),
            });
        }
        let shells: Vec<Vec<f64>> = self
            .edges
            .iter()
            .zip(&m.components)
            .map(|(e, d)| e.windows(2).map(|w| d.shell(w[0], w[1])).collect())
            .collect();
        let shape = self.shape();
        let mut total = 0.0;
        for (i, v) in self.values.iter().enumerate() {
            if *v == 0.0 {
                continue;
            }
            let w = match shape.as_slice() {
                [_] => shells[0][i],
                [_, c] => shells[0][i / c] * shells[1][i % c],
                _ => unreachable!(),
            };
            total += v * w;
        }
        Ok(total)
    }
}

/// Upper corner of every cell, row-major.
fn cell_corners(edges: &[Vec<f64>]) -> Vec<Vec<f64>> {
    match edges {
        [e] => e[1..].iter().map(|&x| vec![x]).collect(),
        [e0, e1] => e0[1..]
            .iter()
            .flat_map(|&x| e1[1..].iter().map(move |&y| vec![x, y]))
            .collect(),
        _ => Vec::new(),
    }
}

/// Checks `m(λx + (1-λ)y) >= f(x)^p g(y)^{1-p}` for all `x, y`.
///
/// By unconditionality and monotonicity it suffices to take `x, y` in the
/// positive orthant. For `x` in cell `I` and `y` in cell `J`, the combined
/// point lies coordinatewise below `λ hi_I + (1-λ) hi_J`, where `m` attains
/// its minimum over the possible combinations. Returns the number of failing
/// cell pairs and the worst deficit.
pub fn check_hypothesis(f: &GridFunction, g: &GridFunction, m: &GridFunction, lambda: f64, p: f64) -> (usize, f64) {
    let cf = cell_corners(&f.edges);
    let cg = cell_corners(&g.edges);
    let mut failures = 0;
    let mut worst: f64 = 0.0;
    for (i, x) in cf.iter().enumerate() {
        let fx = f.values[i];
        if fx == 0.0 {
            continue;
        }
        for (j, y) in cg.iter().enumerate() {
            let gy = g.values[j];
            if gy == 0.0 && p < 1.0 {
                continue;
            }
            let z: Vec<f64> = x.iter().zip(y).map(|(a, b)| lambda * a + (1.0 - lambda) * b).collect();
            let need = pow0(fx, p) * pow0(gy, 1.0 - p);
            let have = m.eval(&z);
            // rounding allowance for the power products
            if have < need * (1.0 - 4.0 * f64::EPSILON) {
                failures += 1;
                worst = worst.max(need - have);
            }
        }
    }
    (failures, worst)
}

/// `∫ m dμ >= pl_factor(λ, p, n) (∫ f dμ)^p (∫ g dμ)^{1-p}`, provided the
/// pointwise hypothesis holds on the grid; otherwise the report is
/// inconclusive.
pub fn check_weighted_pl(
    f: &GridFunction,
    g: &GridFunction,
    m: &GridFunction,
    mu: &ProductMeasure,
    lambda: f64,
    p: f64,
) -> Result<InequalityReport> {
    check_lambda(lambda)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::OutOfRange { name: "p", value: p });
    }
    let n = f.dim();
    if g.dim() != n || m.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: if g.dim() != n { g.dim() } else { m.dim() },
        });
    }
    let ctx = context!("lambda" => lambda, "p" => p, "n" => n);
    let (failures, worst) = check_hypothesis(f, g, m, lambda, p);
    if failures > 0 {
        return Ok(
            InequalityReport::inconclusive("pointwise hypothesis fails on the grid", ctx)
                .with("failing_pairs", failures)
                .with("worst_deficit", worst),
        );
    }
    let (im, if_, ig) = (m.integrate(mu)?, f.integrate(mu)?, g.integrate(mu)?);
    let rhs = pl_factor(lambda, p, n) * pow0(if_, p) * pow0(ig, 1.0 - p);
    let cells = (f.values.len() + g.values.len() + m.values.len()) as f64;
    let budget = 4.0 * cells * f64::EPSILON * (im + rhs);
    Ok(InequalityReport::new(im, rhs, budget, ctx)
        .with("integral_f", if_)
        .with("integral_g", ig)
        .with("integral_m", im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inequalities::Verdict;

    #[test]
    fn construction_rules() {
        assert!(GridFunction::new(vec![vec![0.0, 1.0, 2.0]], vec![1.0, 0.5]).is_ok());
        assert!(GridFunction::new(vec![vec![0.0, 1.0, 2.0]], vec![0.5, 1.0]).is_err());
        assert!(GridFunction::new(vec![vec![0.5, 1.0]], vec![1.0]).is_err());
        assert!(GridFunction::new(vec![vec![0.0, 1.0], vec![0.0, 1.0, 2.0]], vec![1.0, 2.0]).is_err());
    }

    #[test]
    fn eval_convention() {
        let f = GridFunction::new(vec![vec![0.0, 1.0, 2.0]], vec![1.0, 0.5]).unwrap();
        assert_eq!(f.eval(&[1.0]), 1.0);
        assert_eq!(f.eval(&[-1.5]), 0.5);
        assert_eq!(f.eval(&[2.0]), 0.5);
        assert_eq!(f.eval(&[2.01]), 0.0);
    }

    #[test]
    fn failing_hypothesis_is_inconclusive() {
        let one = GridFunction::new(vec![vec![0.0, 1.0]], vec![1.0]).unwrap();
        let small = GridFunction::new(vec![vec![0.0, 0.5]], vec![1.0]).unwrap();
        let r = check_weighted_pl(&one, &one, &small, &ProductMeasure::lebesgue(1), 0.5, 0.5).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }
}
