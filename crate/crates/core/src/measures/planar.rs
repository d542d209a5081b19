//! Even log-concave densities `e^{-ψ}` on the plane.

use crate::error::{Error, Result};
use crate::geometry::Point2;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::f64::consts::PI;

type Mat2 = [[f64; 2]; 2];

const IDENTITY: Mat2 = [[1.0, 0.0], [0.0, 1.0]];

/// Density ratio to the peak defining the effective support radius.
pub const SUPPORT_RATIO: f64 = 1e-16;

/// A planar density given by its potential.
///
/// JSON: `{"potential":"gaussian","params":{"covariance":[[1,0],[0,1]]}}`,
/// `{"potential":"power","params":{"c":1,"alpha":1.5,"shape":[[1,0],[0,1]]}}`
/// or `{"potential":"lebesgue"}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "PlanarRepr", into = "PlanarRepr")]
pub enum PlanarDensity {
    /// Centered normal density with the given covariance.
    Gaussian { covariance: Mat2 },
    /// `ψ(x) = c (xᵀ Q x)^{α/2} + log Z` with `α >= 1`, normalised to mass 1.
    Power { c: f64, alpha: f64, shape: Mat2 },
    /// `ψ ≡ 0`.
    Lebesgue,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlanarRepr {
    potential: PotentialKind,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    params: Value,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum PotentialKind {
    Gaussian,
    Power,
    Lebesgue,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct Empty {}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GaussianParams {
    #[serde(default = "identity")]
    covariance: Mat2,
}

impl Default for GaussianParams {
    fn default() -> Self {
        Self { covariance: IDENTITY }
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PowerParams {
    #[serde(default = "one")]
    c: f64,
    alpha: f64,
    #[serde(default = "identity")]
    shape: Mat2,
}

fn identity() -> Mat2 {
    IDENTITY
}

fn one() -> f64 {
    1.0
}

fn params<T: serde::de::DeserializeOwned + Default>(v: Value) -> Result<T> {
    if v.is_null() {
        return Ok(T::default());
    }
    serde_json::from_value(v).map_err(|e| Error::InvalidDensity(e.to_string()))
}

impl TryFrom<PlanarRepr> for PlanarDensity {
    type Error = Error;
    fn try_from(r: PlanarRepr) -> Result<Self> {
        match r.potential {
            PotentialKind::Gaussian => PlanarDensity::gaussian(params::<GaussianParams>(r.params)?.covariance),
            PotentialKind::Power => {
                let v = r.params;
                if v.is_null() {
                    return Err(Error::InvalidDensity("power potential needs params.alpha".into()));
                }
                let p: PowerParams = serde_json::from_value(v).map_err(|e| Error::InvalidDensity(e.to_string()))?;
                PlanarDensity::power(p.c, p.alpha, p.shape)
            }
            PotentialKind::Lebesgue => {
                params::<Empty>(r.params)?;
                Ok(PlanarDensity::Lebesgue)
            }
        }
    }
}

impl From<PlanarDensity> for PlanarRepr {
    fn from(d: PlanarDensity) -> Self {
        let (potential, params) = match d {
            PlanarDensity::Gaussian { covariance } => (
                PotentialKind::Gaussian,
                serde_json::to_value(GaussianParams { covariance }),
            ),
            PlanarDensity::Power { c, alpha, shape } => (
                PotentialKind::Power,
                serde_json::to_value(PowerParams { c, alpha, shape }),
            ),
            PlanarDensity::Lebesgue => (PotentialKind::Lebesgue, Ok(Value::Null)),
        };
        PlanarRepr {
            potential,
            params: params.unwrap_or(Value::Null),
        }
    }
}

fn det(m: &Mat2) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn inverse(m: &Mat2) -> Mat2 {
    let d = det(m);
    [[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]]
}

fn apply(m: &Mat2, x: Point2) -> Point2 {
    [m[0][0] * x[0] + m[0][1] * x[1], m[1][0] * x[0] + m[1][1] * x[1]]
}

fn quad_form(m: &Mat2, x: Point2) -> f64 {
    let y = apply(m, x);
    (x[0] * y[0] + x[1] * y[1]).max(0.0)
}

/// Eigenvalues (min, max) of a symmetric 2×2 matrix.
fn eigen(m: &Mat2) -> (f64, f64) {
    let tr = m[0][0] + m[1][1];
    let disc = ((m[0][0] - m[1][1]).powi(2) + 4.0 * m[0][1] * m[1][0]).max(0.0).sqrt();
    (0.5 * (tr - disc), 0.5 * (tr + disc))
}

fn check_spd(name: &'static str, m: &Mat2) -> Result<()> {
    let finite = m.iter().flatten().all(|v| v.is_finite());
    if !finite || (m[0][1] - m[1][0]).abs() > 1e-12 * (m[0][1].abs() + 1.0) {
        return Err(Error::InvalidDensity(format!(
            "{name} must be a finite symmetric matrix"
        )));
    }
    if !(m[0][0] > 0.0 && det(m) > 0.0) {
        return Err(Error::InvalidDensity(format!("{name} must be positive definite")));
    }
    Ok(())
}

/// Result of a gradient evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Gradient {
    pub value: Point2,
    /// `ψ` is not differentiable at the point; `value` is the midpoint of
    /// the subdifferential.
    pub kink: bool,
}

impl PlanarDensity {
    pub fn standard_gaussian() -> Self {
        PlanarDensity::Gaussian { covariance: IDENTITY }
    }

    pub fn gaussian(covariance: Mat2) -> Result<Self> {
        check_spd("covariance", &covariance)?;
        Ok(PlanarDensity::Gaussian { covariance })
    }

    pub fn power(c: f64, alpha: f64, shape: Mat2) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::OutOfRange { name: "c", value: c });
        }
        if !(alpha >= 1.0 && alpha.is_finite()) {
            return Err(Error::OutOfRange {
                name: "alpha",
                value: alpha,
            });
        }
        check_spd("shape", &shape)?;
        Ok(PlanarDensity::Power { c, alpha, shape })
    }

    /// Normalising constant `log Z` folded into `ψ`.
    fn log_normaliser(&self) -> f64 {
        match self {
            PlanarDensity::Gaussian { covariance } => (2.0 * PI).ln() + 0.5 * det(covariance).ln(),
            PlanarDensity::Power { c, alpha, shape } => {
                // ∫ e^{-c |y|^α} dy = 2π Γ(2/α) / (α c^{2/α}), then undo y = Q^{1/2} x
                (2.0 * PI * libm::tgamma(2.0 / alpha) / (alpha * c.powf(2.0 / alpha))).ln() - 0.5 * det(shape).ln()
            }
            PlanarDensity::Lebesgue => 0.0,
        }
    }

    /// `ψ(x)`.
    pub fn potential(&self, x: Point2) -> f64 {
        self.shape_potential(x) + self.log_normaliser()
    }

    /// `ψ(x) - ψ(0)`.
    fn shape_potential(&self, x: Point2) -> f64 {
        match self {
            PlanarDensity::Gaussian { covariance } => 0.5 * quad_form(&inverse(covariance), x),
            PlanarDensity::Power { c, alpha, shape } => c * quad_form(shape, x).powf(0.5 * alpha),
            PlanarDensity::Lebesgue => 0.0,
        }
    }

    pub fn density(&self, x: Point2) -> f64 {
        (-self.potential(x)).exp()
    }

    /// Returns a closure evaluating the density with the normaliser hoisted.
    pub fn density_fn(&self) -> impl Fn(Point2) -> f64 + Sync + '_ {
        let peak = (-self.log_normaliser()).exp();
        move |x| peak * (-self.shape_potential(x)).exp()
    }

    pub fn max_density(&self) -> f64 {
        (-self.log_normaliser()).exp()
    }

    /// `∇ψ(x)`.
    pub fn grad_potential(&self, x: Point2) -> Gradient {
        match self {
            PlanarDensity::Gaussian { covariance } => Gradient {
                value: apply(&inverse(covariance), x),
                kink: false,
            },
            PlanarDensity::Power { c, alpha, shape } => {
                let s = quad_form(shape, x);
                if s == 0.0 {
                    return Gradient {
                        value: [0.0, 0.0],
                        kink: *alpha == 1.0,
                    };
                }
                let q = apply(shape, x);
                let k = c * alpha * s.powf(0.5 * alpha - 1.0);
                Gradient {
                    value: [k * q[0], k * q[1]],
                    kink: false,
                }
            }
            PlanarDensity::Lebesgue => Gradient {
                value: [0.0, 0.0],
                kink: false,
            },
        }
    }

    pub fn is_log_concave(&self) -> bool {
        true
    }

    pub fn is_probability(&self) -> bool {
        !matches!(self, PlanarDensity::Lebesgue)
    }

    /// Radius beyond which the density is below [`SUPPORT_RATIO`] of its peak.
    pub fn effective_radius(&self) -> f64 {
        let l = -SUPPORT_RATIO.ln();
        match self {
            PlanarDensity::Gaussian { covariance } => (2.0 * l * eigen(covariance).1).sqrt(),
            PlanarDensity::Power { c, alpha, shape } => (l / c).powf(1.0 / alpha) / eigen(shape).0.sqrt(),
            PlanarDensity::Lebesgue => f64::INFINITY,
        }
    }

    /// Upper bound on the mass outside the centered disc of radius `r`.
    pub fn tail_mass(&self, r: f64) -> f64 {
        match self {
            PlanarDensity::Gaussian { covariance } => {
                // |x|² <= λ_max |Σ^{-1/2}x|², and |Σ^{-1/2}X|² is χ²_2
                (-0.5 * r * r / eigen(covariance).1).exp()
            }
            PlanarDensity::Power { c, alpha, shape } => {
                // in y = Q^{1/2}x the disc contains |y| <= r √λ_min(Q); the
                // radial tail ∫_ρ^∞ 2π t e^{-c t^α} dt over the total mass
                let rho = r * eigen(shape).0.sqrt();
                let z = 2.0 * PI * libm::tgamma(2.0 / alpha) / (alpha * c.powf(2.0 / alpha));
                radial_tail(|t| 2.0 * PI * t * (-c * t.powf(*alpha)).exp(), rho) / z
            }
            PlanarDensity::Lebesgue => f64::INFINITY,
        }
    }
}

/// `∫_ρ^∞ f` for a positive, eventually decreasing integrand, by composite
/// Simpson on doubling panels until the panel contribution is negligible.
fn radial_tail(f: impl Fn(f64) -> f64, rho: f64) -> f64 {
    let mut total = 0.0;
    let mut a = rho;
    let mut w = rho.max(1.0);
    for _ in 0..64 {
        let b = a + w;
        let n = 256;
        let h = (b - a) / n as f64;
        let mut s = f(a) + f(b);
        for i in 1..n {
            s += f(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
        }
        let part = s * h / 3.0;
        total += part;
        if part <= 1e-18 * total || part == 0.0 {
            break;
        }
        a = b;
        w *= 2.0;
    }
    // Simpson can undershoot on steep tails; a 1% margin keeps this an upper bound
    1.01 * total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_forms() {
        let g: PlanarDensity = serde_json::from_str(r#"{"potential":"gaussian","params":{}}"#).unwrap();
        assert_eq!(g, PlanarDensity::standard_gaussian());
        let g: PlanarDensity = serde_json::from_str(r#"{"potential":"gaussian"}"#).unwrap();
        assert_eq!(g, PlanarDensity::standard_gaussian());
        let p: PlanarDensity = serde_json::from_str(r#"{"potential":"power","params":{"alpha":1.0,"c":2.0}}"#).unwrap();
        assert_eq!(p, PlanarDensity::power(2.0, 1.0, IDENTITY).unwrap());
        let back: PlanarDensity = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<PlanarDensity>(r#"{"potential":"power","params":{"alpha":0.5}}"#).is_err());
        assert!(serde_json::from_str::<PlanarDensity>(
            r#"{"potential":"gaussian","params":{"covariance":[[1,2],[2,1]]}}"#
        )
        .is_err());
    }

    #[test]
    fn gaussian_gradient() {
        let g = PlanarDensity::standard_gaussian();
        assert_eq!(g.grad_potential([1.0, 2.0]).value, [1.0, 2.0]);
        assert!((g.density([0.0, 0.0]) - 1.0 / (2.0 * PI)).abs() < 1e-16);
    }

    #[test]
    fn power_gradient_matches_finite_differences() {
        let d = PlanarDensity::power(0.7, 1.5, [[2.0, 0.3], [0.3, 1.0]]).unwrap();
        for x in [[0.3, -1.2], [2.0, 0.5], [-0.7, -0.1]] {
            let g = d.grad_potential(x).value;
            let h = 1e-6;
            for k in 0..2 {
                let mut xp = x;
                let mut xm = x;
                xp[k] += h;
                xm[k] -= h;
                let fd = (d.potential(xp) - d.potential(xm)) / (2.0 * h);
                assert!((fd - g[k]).abs() <= 1e-6 * g[k].abs().max(1.0));
            }
        }
        let kinked = PlanarDensity::power(1.0, 1.0, IDENTITY).unwrap();
        assert!(kinked.grad_potential([0.0, 0.0]).kink);
    }

    #[test]
    fn tail_masses() {
        let g = PlanarDensity::standard_gaussian();
        assert!((g.tail_mass(2.0) - (-2.0f64).exp()).abs() < 1e-16);
        let p = PlanarDensity::power(1.0, 2.0, [[0.5, 0.0], [0.0, 0.5]]).unwrap();
        // c|y|² with y = x/√2 is the standard Gaussian in disguise
        let t = p.tail_mass(3.0);
        let exact = (-4.5f64).exp();
        assert!(t >= exact && t <= 1.02 * exact);
        assert!(g.effective_radius() > 8.0);
    }
}
