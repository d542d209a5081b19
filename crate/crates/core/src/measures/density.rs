//! Even, non-increasing one-dimensional densities and their product measures.

use super::estimate::{MeasureEstimate, Method};
use super::monte_carlo::{integrate_box, McConfig};
use super::normal::gaussian_pdf;
use crate::error::{Error, Result};
use crate::geometry::ideal::union_measure;
use crate::geometry::BoxIdeal;
use serde::{Deserialize, Serialize};
use std::f64::consts::FRAC_1_SQRT_2;

/// An even density on the line, non-increasing on `[0, ∞)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Density1DRepr", into = "Density1DRepr")]
pub enum Density1D {
    /// Centered normal density with standard deviation `sigma`.
    Gaussian { sigma: f64 },
    /// `1/(2h)` on `[-h, h]`.
    Uniform { half_width: f64 },
    /// `p + (1-p)·1_{[-τ, τ]}`; infinite mass when `p > 0`, Lebesgue when `p = 1`.
    TwoLevel { p: f64, threshold: f64 },
    /// Piecewise-linear through `(knots[i], values[i])` with `knots[0] = 0`,
    /// zero beyond the last knot.
    TableSpline { knots: Vec<f64>, values: Vec<f64> },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case", deny_unknown_fields)]
enum Density1DRepr {
    Gaussian { sigma: f64 },
    Uniform { half_width: f64 },
    TwoLevel { p: f64, threshold: f64 },
    TableSpline { knots: Vec<f64>, values: Vec<f64> },
}

impl TryFrom<Density1DRepr> for Density1D {
    type Error = Error;
    fn try_from(r: Density1DRepr) -> Result<Self> {
        let d = match r {
            Density1DRepr::Gaussian { sigma } => Density1D::Gaussian { sigma },
            Density1DRepr::Uniform { half_width } => Density1D::Uniform { half_width },
            Density1DRepr::TwoLevel { p, threshold } => Density1D::TwoLevel { p, threshold },
            Density1DRepr::TableSpline { knots, values } => Density1D::TableSpline { knots, values },
        };
        d.validate()?;
        Ok(d)
    }
}

impl From<Density1D> for Density1DRepr {
    fn from(d: Density1D) -> Self {
        match d {
            Density1D::Gaussian { sigma } => Density1DRepr::Gaussian { sigma },
            Density1D::Uniform { half_width } => Density1DRepr::Uniform { half_width },
            Density1D::TwoLevel { p, threshold } => Density1DRepr::TwoLevel { p, threshold },
            Density1D::TableSpline { knots, values } => Density1DRepr::TableSpline { knots, values },
        }
    }
}

fn positive(name: &'static str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::OutOfRange { name, value: v })
    }
}

impl Density1D {
    pub fn standard_gaussian() -> Self {
        Density1D::Gaussian { sigma: 1.0 }
    }

    pub fn lebesgue() -> Self {
        Density1D::TwoLevel { p: 1.0, threshold: 1.0 }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Density1D::Gaussian { sigma } => positive("sigma", *sigma),
            Density1D::Uniform { half_width } => positive("half_width", *half_width),
            Density1D::TwoLevel { p, threshold } => {
                if !(0.0..=1.0).contains(p) {
                    return Err(Error::OutOfRange { name: "p", value: *p });
                }
                positive("threshold", *threshold)
            }
            Density1D::TableSpline { knots, values } => {
                if knots.len() < 2 || knots.len() != values.len() {
                    return Err(Error::InvalidDensity(
                        "table needs at least two knots and one value per knot".into(),
                    ));
                }
                if knots[0] != 0.0 || knots.windows(2).any(|w| !(w[1] > w[0])) {
                    return Err(Error::InvalidDensity(
                        "knots must start at 0 and increase strictly".into(),
                    ));
                }
                if knots.iter().chain(values).any(|v| !v.is_finite()) || values.iter().any(|&v| v < 0.0) {
                    return Err(Error::InvalidDensity("values must be finite and >= 0".into()));
                }
                if values.windows(2).any(|w| w[1] > w[0]) {
                    return Err(Error::InvalidDensity("values must be non-increasing".into()));
                }
                Ok(())
            }
        }
    }

    /// Density value at `x`.
    pub fn density(&self, x: f64) -> f64 {
        let t = x.abs();
        match self {
            Density1D::Gaussian { sigma } => gaussian_pdf(t / sigma) / sigma,
            Density1D::Uniform { half_width } => {
                if t <= *half_width {
                    0.5 / half_width
                } else {
                    0.0
                }
            }
            Density1D::TwoLevel { p, threshold } => {
                if t <= *threshold {
                    1.0
                } else {
                    *p
                }
            }
            Density1D::TableSpline { knots, values } => {
                let k = knots.partition_point(|&s| s <= t);
                if k >= knots.len() {
                    if t == knots[knots.len() - 1] {
                        values[values.len() - 1]
                    } else {
                        0.0
                    }
                } else {
                    let (a, b) = (knots[k - 1], knots[k]);
                    values[k - 1] + (values[k] - values[k - 1]) * (t - a) / (b - a)
                }
            }
        }
    }

    /// `∫_0^t` of the density; odd in `t`, `t = ±∞` allowed.
    pub fn cdf0(&self, t: f64) -> f64 {
        if t < 0.0 {
            return -self.cdf0(-t);
        }
        match self {
            Density1D::Gaussian { sigma } => 0.5 * libm::erf(t / sigma * FRAC_1_SQRT_2),
            Density1D::Uniform { half_width } => 0.5 * t.min(*half_width) / half_width,
            Density1D::TwoLevel { p, threshold } => {
                let base = (1.0 - p) * t.min(*threshold);
                if *p == 0.0 {
                    base
                } else {
                    base + p * t
                }
            }
            Density1D::TableSpline { knots, values } => {
                let mut s = 0.0;
                for i in 1..knots.len() {
                    let (a, b) = (knots[i - 1], knots[i]);
                    if t <= a {
                        break;
                    }
                    let e = t.min(b);
                    let fe = values[i - 1] + (values[i] - values[i - 1]) * (e - a) / (b - a);
                    s += 0.5 * (values[i - 1] + fe) * (e - a);
                }
                s
            }
        }
    }

    /// `∫_a^b` of the density.
    pub fn cdf_interval(&self, a: f64, b: f64) -> Result<f64> {
        if !(a <= b) {
            return Err(Error::OutOfRange { name: "a", value: a });
        }
        if a == b {
            return Ok(0.0);
        }
        if let Density1D::Gaussian { sigma } = self {
            let s = sigma / FRAC_1_SQRT_2;
            // difference of upper tails when both ends share a sign
            return Ok(if a >= 0.0 {
                0.5 * (libm::erfc(a / s) - libm::erfc(b / s))
            } else if b <= 0.0 {
                0.5 * (libm::erfc(-b / s) - libm::erfc(-a / s))
            } else {
                self.cdf0(b) - self.cdf0(a)
            });
        }
        Ok(self.cdf0(b) - self.cdf0(a))
    }

    /// Measure of `{lo < |x| <= hi}` for `0 <= lo <= hi`.
    pub fn shell(&self, lo: f64, hi: f64) -> f64 {
        2.0 * self.cdf_interval(lo, hi).unwrap_or(0.0)
    }

    pub fn total_mass(&self) -> f64 {
        2.0 * self.cdf0(f64::INFINITY)
    }

    pub fn max_density(&self) -> f64 {
        self.density(0.0)
    }

    pub fn is_log_concave(&self) -> bool {
        match self {
            Density1D::Gaussian { .. } | Density1D::Uniform { .. } => true,
            Density1D::TwoLevel { p, .. } => *p == 0.0 || *p == 1.0,
            Density1D::TableSpline { values, .. } => {
                values.iter().all(|&v| v > 0.0) && values.windows(3).all(|w| w[1] * w[1] >= w[0] * w[2] * (1.0 - 1e-12))
            }
        }
    }

    /// Points of `[0, ∞)` where `x ↦ density(|x|)` is not smooth. The
    /// table spline has a kink at the origin unless its first slope is 0.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            Density1D::Gaussian { .. } => Vec::new(),
            Density1D::Uniform { half_width } => vec![*half_width],
            Density1D::TwoLevel { p, threshold } => {
                if *p == 1.0 {
                    Vec::new()
                } else {
                    vec![*threshold]
                }
            }
            Density1D::TableSpline { knots, values } => {
                let start = if values[1] == values[0] { 1 } else { 0 };
                knots[start..].to_vec()
            }
        }
    }

    /// `ψ'(x)` for `ψ = -log density`, where it is smooth everywhere.
    pub fn potential_derivative(&self, x: f64) -> Option<f64> {
        match self {
            Density1D::Gaussian { sigma } => Some(x / (sigma * sigma)),
            Density1D::TwoLevel { p, .. } if *p == 1.0 => Some(0.0),
            _ => None,
        }
    }

    /// `∫_a^b x ψ'(x) e^{-ψ(x)} dx` with `ψ = -log density`; only defined for
    /// the Gaussian family and Lebesgue measure.
    pub fn moment_interval(&self, a: f64, b: f64) -> Result<f64> {
        if let Density1D::TwoLevel { p, .. } = self {
            if *p == 1.0 {
                return Ok(0.0);
            }
        }
        let Density1D::Gaussian { sigma } = self else {
            return Err(Error::Unsupported(
                "potential gradient is only available for the Gaussian family".into(),
            ));
        };
        // ∫_0^t z² φ(z) dz = (Φ(t) - 1/2) - t φ(t), even in t after the odd cdf part
        let m0 = |t: f64| {
            let z = t / sigma;
            let sgn = z.signum();
            let z = z.abs();
            sgn * (0.5 * libm::erf(z * FRAC_1_SQRT_2) - if z.is_finite() { z * gaussian_pdf(z) } else { 0.0 })
        };
        Ok(m0(b) - m0(a))
    }
}

/// An unconditional product measure `μ_1 ⊗ … ⊗ μ_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductMeasure {
    pub components: Vec<Density1D>,
}

/// Above this many generators in `n >= 4` the sweep falls back to Monte Carlo.
pub const SWEEP_LIMIT_HIGH_DIM: usize = 64;

impl ProductMeasure {
    pub fn new(components: Vec<Density1D>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidDensity("product needs at least one component".into()));
        }
        for c in &components {
            c.validate()?;
        }
        Ok(Self { components })
    }

    pub fn standard_gaussian(n: usize) -> Self {
        Self {
            components: vec![Density1D::standard_gaussian(); n],
        }
    }

    pub fn lebesgue(n: usize) -> Self {
        Self {
            components: vec![Density1D::lebesgue(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    fn check_dim(&self, n: usize) -> Result<()> {
        if n != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: n,
            });
        }
        Ok(())
    }

    pub fn density(&self, x: &[f64]) -> f64 {
        self.components.iter().zip(x).map(|(d, &t)| d.density(t)).product()
    }

    pub fn max_density(&self) -> f64 {
        self.components.iter().map(Density1D::max_density).product()
    }

    pub fn is_log_concave(&self) -> bool {
        self.components.iter().all(Density1D::is_log_concave)
    }

    /// Measure of the symmetric box `∏[-g_i, g_i]`.
    pub fn measure_box(&self, g: &[f64]) -> Result<f64> {
        self.check_dim(g.len())?;
        if g.iter().any(|&c| !(c >= 0.0)) {
            return Err(Error::InvalidGenerator(format!("{g:?}")));
        }
        if g.contains(&0.0) {
            return Ok(0.0);
        }
        Ok(self.components.iter().zip(g).map(|(d, &c)| d.shell(0.0, c)).product())
    }

    /// Measure of `∏[lo_i, hi_i]`.
    pub fn measure_rect(&self, lo: &[f64], hi: &[f64]) -> Result<f64> {
        self.check_dim(lo.len())?;
        self.check_dim(hi.len())?;
        let mut p = 1.0;
        for ((d, &a), &b) in self.components.iter().zip(lo).zip(hi) {
            let m = d.cdf_interval(a, b)?;
            if m == 0.0 {
                return Ok(0.0);
            }
            p *= m;
        }
        Ok(p)
    }

    /// Measure of an ideal: exact sweep, or Monte Carlo above the sweep limit
    /// in four or more dimensions.
    pub fn measure_ideal(&self, a: &BoxIdeal, mc: &McConfig) -> Result<MeasureEstimate> {
        self.check_dim(a.dim())?;
        let pruned = if a.pruned_volume() > 0.0 {
            a.pruned_volume() * self.max_density()
        } else {
            0.0
        };
        if a.dim() >= 4 && a.generators().len() > SWEEP_LIMIT_HIGH_DIM {
            let ext = a.extent();
            let lo: Vec<f64> = ext.iter().map(|e| -e).collect();
            let f = |x: &[f64]| if a.contains(x) { self.density(x) } else { 0.0 };
            let mut e = integrate_box(&lo, &ext, &f, mc)?;
            e.error += pruned;
            return Ok(e);
        }
        let value = union_measure(a.generators(), &|axis, lo, hi| self.components[axis].shell(lo, hi));
        let cells = a.generators().len().max(1) as f64;
        // rounding in the per-cell products and the running sum
        let fp = 4.0 * (a.dim() as f64 + cells) * f64::EPSILON * value;
        Ok(MeasureEstimate::new(value, fp + pruned, Method::Sweep).with_param("generators", a.generators().len()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cdf_examples() {
        let g = Density1D::standard_gaussian();
        assert_eq!(g.cdf_interval(f64::NEG_INFINITY, 0.0).unwrap(), 0.5);
        let t = Density1D::TwoLevel {
            p: 0.5,
            threshold: FRAC_1_SQRT_2,
        };
        assert!((t.cdf_interval(-FRAC_1_SQRT_2, FRAC_1_SQRT_2).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let u = Density1D::Uniform { half_width: 2.5 };
        assert!((u.cdf_interval(-2.5, 2.5).unwrap() - 1.0).abs() < 1e-15);
        assert!(g.cdf_interval(1.0, 0.0).is_err());
    }

    #[test]
    fn gaussian_tails_keep_relative_accuracy() {
        let g = Density1D::standard_gaussian();
        let tail = g.cdf_interval(10.0, f64::INFINITY).unwrap();
        assert!((tail / 7.619853024160527e-24 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn two_level_mass() {
        let t = Density1D::TwoLevel { p: 0.3, threshold: 1.0 };
        assert_eq!(t.total_mass(), f64::INFINITY);
        let z = Density1D::TwoLevel { p: 0.0, threshold: 1.5 };
        assert_eq!(z.total_mass(), 3.0);
    }

    #[test]
    fn table_spline() {
        let d = Density1D::TableSpline {
            knots: vec![0.0, 1.0, 2.0],
            values: vec![1.0, 0.5, 0.0],
        };
        d.validate().unwrap();
        assert_eq!(d.density(0.5), 0.75);
        assert_eq!(d.density(-1.5), 0.25);
        assert_eq!(d.density(3.0), 0.0);
        assert!((d.cdf0(2.0) - 1.0).abs() < 1e-15);
        assert!((d.cdf0(1.5) - (0.75 + 0.5 * 0.75 * 0.5)).abs() < 1e-15);
        let bad = Density1D::TableSpline {
            knots: vec![0.0, 1.0],
            values: vec![0.5, 1.0],
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn json_forms() {
        let d: Density1D = serde_json::from_str(r#"{"family":"gaussian","sigma":2.0}"#).unwrap();
        assert_eq!(d, Density1D::Gaussian { sigma: 2.0 });
        let s = serde_json::to_string(&Density1D::TwoLevel { p: 0.5, threshold: 1.0 }).unwrap();
        assert_eq!(s, r#"{"family":"two_level","p":0.5,"threshold":1.0}"#);
        assert!(serde_json::from_str::<Density1D>(r#"{"family":"gaussian","sigma":-1}"#).is_err());
    }

    #[test]
    fn box_examples() {
        let g = ProductMeasure::standard_gaussian(2);
        let one = 2.0 * super::super::normal::gaussian_cdf(1.0) - 1.0;
        assert!((g.measure_box(&[1.0, 1.0]).unwrap() - one * one).abs() < 1e-15);
        assert_eq!(g.measure_box(&[0.0, 1.0]).unwrap(), 0.0);
        let u = ProductMeasure::new(vec![Density1D::Uniform { half_width: 1.0 }; 3]).unwrap();
        assert!((u.measure_box(&[1.0, 1.0, 1.0]).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ideal_union_example() {
        let u = ProductMeasure::new(vec![Density1D::Uniform { half_width: 4.0 }; 2]).unwrap();
        let a = BoxIdeal::new(2, vec![vec![1.0, 4.0], vec![4.0, 1.0]]).unwrap();
        let e = u.measure_ideal(&a, &McConfig::default()).unwrap();
        assert!((e.value - 0.4375).abs() < 1e-15);
        assert_eq!(e.method, Method::Sweep);
    }

    #[test]
    fn gaussian_moment() {
        let g = Density1D::Gaussian { sigma: 1.5 };
        // ∫_{-∞}^{∞} x·(x/σ²)·φ_σ = 1
        assert!((g.moment_interval(f64::NEG_INFINITY, f64::INFINITY).unwrap() - 1.0).abs() < 1e-15);
        let n = 20000;
        let (a, b) = (0.3, 2.2);
        let h = (b - a) / n as f64;
        let f = |x: f64| x * x / (1.5 * 1.5) * g.density(x);
        let simpson: f64 = (0..n)
            .map(|i| {
                let x0 = a + i as f64 * h;
                h / 6.0 * (f(x0) + 4.0 * f(x0 + h / 2.0) + f(x0 + h))
            })
            .sum();
        assert!((g.moment_interval(a, b).unwrap() - simpson).abs() < 1e-12);
    }
}
