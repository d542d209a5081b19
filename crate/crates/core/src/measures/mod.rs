//! Density families, distribution functions and measure evaluation.
//!
//! Product measures are evaluated on ideals by an exact sweep. Planar
//! regions are integrated by adaptive triangle quadrature; for product
//! measures the triangles are first cut along the coordinate lines where a
//! component density has a kink or jump, so every piece sees a smooth
//! integrand.

pub mod density;
pub mod estimate;
pub mod monte_carlo;
pub mod normal;
pub mod planar;
pub mod quadrature;

pub use density::{Density1D, ProductMeasure};
pub use estimate::{MeasureEstimate, Method};
pub use monte_carlo::McConfig;
pub use normal::{gaussian_cdf, gaussian_cdf_inv, gaussian_pdf};
pub use planar::{Gradient, PlanarDensity};
pub use quadrature::QuadConfig;

use crate::error::{Error, Result};
use crate::geometry::{convex, decompose_disjoint, Body, BoxIdeal, ConvexRegion, Point2, StarRegion};
use serde::{Deserialize, Serialize};

/// A measure description.
///
/// JSON: `{"type":"product","components":[…]}` or
/// `{"type":"planar","potential":…,"params":{…}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Measure {
    Product(ProductMeasure),
    Planar(PlanarDensity),
}

/// Numerical settings for measure evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct EvalConfig {
    #[serde(default)]
    pub quad: QuadConfig,
    #[serde(default)]
    pub mc: McConfig,
}

type Tri = [Point2; 3];

impl Measure {
    pub fn standard_gaussian(n: usize) -> Self {
        Measure::Product(ProductMeasure::standard_gaussian(n))
    }

    pub fn lebesgue(n: usize) -> Self {
        Measure::Product(ProductMeasure::lebesgue(n))
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        match self {
            Measure::Product(p) => p.dim(),
            Measure::Planar(_) => 2,
        }
    }

    pub fn density(&self, x: &[f64]) -> f64 {
        match self {
            Measure::Product(p) => p.density(x),
            Measure::Planar(d) => d.density([x[0], x[1]]),
        }
    }

    pub fn max_density(&self) -> f64 {
        match self {
            Measure::Product(p) => p.max_density(),
            Measure::Planar(d) => d.max_density(),
        }
    }

    pub fn is_log_concave(&self) -> bool {
        match self {
            Measure::Product(p) => p.is_log_concave(),
            Measure::Planar(d) => d.is_log_concave(),
        }
    }

    /// Whether this is the standard Gaussian measure in its dimension.
    pub fn is_standard_gaussian(&self) -> bool {
        match self {
            Measure::Product(p) => p.components.iter().all(|c| *c == Density1D::standard_gaussian()),
            Measure::Planar(d) => *d == PlanarDensity::standard_gaussian(),
        }
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

    /// `μ(A)`.
    pub fn measure(&self, body: &Body, cfg: &EvalConfig) -> Result<MeasureEstimate> {
        self.check_dim(body.dim())?;
        if body.is_origin() {
            return Ok(MeasureEstimate::exact(0.0).with_param("origin_only", true));
        }
        match (self, body) {
            (Measure::Product(p), Body::Ideal(a)) => p.measure_ideal(a, &cfg.mc),
            (_, Body::Ideal(a)) => self.measure_triangles(&ideal_triangles(a), &cfg.quad),
            (_, Body::Polygon(p)) => {
                let v = p.vertices();
                let tris: Vec<Tri> = (0..v.len()).map(|i| [[0.0, 0.0], v[i], v[(i + 1) % v.len()]]).collect();
                self.measure_triangles(&tris, &cfg.quad)
            }
        }
    }

    /// Measure of a planar star-shaped region.
    pub fn measure_star(&self, r: &StarRegion, cfg: &QuadConfig) -> Result<MeasureEstimate> {
        self.check_dim(2)?;
        self.measure_triangles(&r.fan_triangles(), cfg)
    }

    /// Measure of a planar convex region.
    pub fn measure_convex(&self, r: &ConvexRegion, cfg: &QuadConfig) -> Result<MeasureEstimate> {
        self.check_dim(2)?;
        self.measure_triangles(&r.fan_triangles(), cfg)
    }

    /// Measure of an unbounded convex set given by its truncation to the box
    /// `[-bound, bound]^2`; the discarded mass is bounded by the tail outside
    /// the disc of radius `bound` and added to the error.
    pub fn measure_truncated(&self, r: &ConvexRegion, bound: f64, cfg: &QuadConfig) -> Result<MeasureEstimate> {
        let tail = match self {
            Measure::Planar(d) => d.tail_mass(bound),
            Measure::Product(p) => {
                // outside the box means outside the slab on some axis
                let total: f64 = p.components.iter().map(Density1D::total_mass).product();
                p.components
                    .iter()
                    .map(|c| (c.total_mass() - c.shell(0.0, bound)) * total / c.total_mass())
                    .sum()
            }
        };
        if !tail.is_finite() {
            return Err(Error::Unsupported("truncation of an infinite-mass measure".into()));
        }
        let mut e = self.measure_convex(r, cfg)?;
        e.error += tail;
        Ok(e.with_param("truncation", bound))
    }

    /// Quadrature over disjoint planar triangles.
    pub fn measure_triangles(&self, tris: &[Tri], cfg: &QuadConfig) -> Result<MeasureEstimate> {
        self.check_dim(2)?;
        let r = match self {
            Measure::Product(p) => {
                let xs = p.components[0].breakpoints();
                let ys = p.components[1].breakpoints();
                let pieces: Vec<Tri> = tris.iter().flat_map(|t| split_triangle(t, &xs, &ys)).collect();
                quadrature::integrate(&pieces, &|x| p.density(&x), cfg)
            }
            Measure::Planar(d) => {
                let f = d.density_fn();
                quadrature::integrate(tris, &f, cfg)
            }
        };
        let mut e =
            MeasureEstimate::new(r.value.max(0.0), r.error, Method::Quadrature).with_param("triangles", r.triangles);
        if r.exhausted {
            e = e.with_param("budget_exhausted", true);
        }
        Ok(e)
    }

    /// Monte Carlo estimate of `μ(A)` over the bounding box of `A`.
    pub fn measure_monte_carlo(&self, body: &Body, mc: &McConfig) -> Result<MeasureEstimate> {
        self.check_dim(body.dim())?;
        let hi: Vec<f64> = match body {
            Body::Ideal(a) => a.extent(),
            Body::Polygon(p) => {
                let r = |u| p.support(u);
                vec![r([1.0, 0.0]), r([0.0, 1.0])]
            }
        };
        let lo: Vec<f64> = hi.iter().map(|h| -h).collect();
        let f = |x: &[f64]| if body.contains(x) { self.density(x) } else { 0.0 };
        monte_carlo::integrate_box(&lo, &hi, &f, mc)
    }
}

/// Triangles covering a planar ideal, built from its disjoint cell
/// decomposition so that no triangle straddles a staircase corner.
pub fn ideal_triangles(a: &BoxIdeal) -> Vec<Tri> {
    let mut out = Vec::new();
    for cell in decompose_disjoint(a) {
        let (x0, x1) = cell.shells[0];
        let (y0, y1) = cell.shells[1];
        let xs: Vec<(f64, f64)> = if x0 == 0.0 {
            vec![(-x1, x1)]
        } else {
            vec![(-x1, -x0), (x0, x1)]
        };
        let ys: Vec<(f64, f64)> = if y0 == 0.0 {
            vec![(-y1, y1)]
        } else {
            vec![(-y1, -y0), (y0, y1)]
        };
        for &(a0, a1) in &xs {
            for &(b0, b1) in &ys {
                out.push([[a0, b0], [a1, b0], [a1, b1]]);
                out.push([[a0, b0], [a1, b1], [a0, b1]]);
            }
        }
    }
    out
}

/// Cuts a triangle along the lines `x = ±c` and `y = ±c` for the given
/// breakpoints; returns a triangulation of the pieces.
fn split_triangle(t: &Tri, xs: &[f64], ys: &[f64]) -> Vec<Tri> {
    let mut pieces = vec![t.to_vec()];
    for (axis, cuts) in [(0usize, xs), (1usize, ys)] {
        let mut lines: Vec<f64> = cuts.iter().flat_map(|&c| [c, -c]).collect();
        lines.sort_by(f64::total_cmp);
        lines.dedup_by(|a, b| a == b);
        for c in lines {
            let mut n = [0.0, 0.0];
            n[axis] = 1.0;
            let mut next = Vec::with_capacity(pieces.len() * 2);
            for p in pieces {
                let lo = convex::clip(&p, n, c);
                let hi = convex::clip(&p, [-n[0], -n[1]], -c);
                for q in [lo, hi] {
                    if q.len() >= 3 {
                        next.push(q);
                    }
                }
            }
            pieces = next;
        }
    }
    pieces
        .iter()
        .flat_map(|p| (1..p.len() - 1).map(move |i| [p[0], p[i], p[i + 1]]))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::SymmetricPolygon2;

    #[test]
    fn measure_json() {
        let m: Measure = serde_json::from_str(
            r#"{"type":"product","components":[{"family":"gaussian","sigma":1.0},{"family":"uniform","half_width":2.0}]}"#,
        )
        .unwrap();
        assert_eq!(m.dim(), 2);
        let p: Measure =
            serde_json::from_str(r#"{"type":"planar","potential":"power","params":{"alpha":1.5}}"#).unwrap();
        assert!(matches!(p, Measure::Planar(PlanarDensity::Power { .. })));
        let back: Measure = serde_json::from_str(&serde_json::to_string(&p).unwrap()).unwrap();
        assert_eq!(back, p);
        let g: Measure = serde_json::from_str(r#"{"type":"planar","potential":"gaussian"}"#).unwrap();
        assert!(g.is_standard_gaussian());
    }

    #[test]
    fn gaussian_square_by_quadrature() {
        let sq = Body::Polygon(SymmetricPolygon2::square(1.0).unwrap());
        let g = Measure::Planar(PlanarDensity::standard_gaussian());
        let e = g.measure(&sq, &EvalConfig::default()).unwrap();
        let one = 2.0 * gaussian_cdf(1.0) - 1.0;
        assert!((e.value - one * one).abs() <= 1e-8);
        assert!((e.value - one * one).abs() <= e.error.max(1e-14));
    }

    #[test]
    fn lebesgue_square_and_origin() {
        let sq = Body::Polygon(SymmetricPolygon2::square(1.0).unwrap());
        let l = Measure::Planar(PlanarDensity::Lebesgue);
        assert!((l.measure(&sq, &EvalConfig::default()).unwrap().value - 4.0).abs() < 1e-13);
        let o = Body::Polygon(SymmetricPolygon2::origin());
        assert_eq!(l.measure(&o, &EvalConfig::default()).unwrap().value, 0.0);
    }

    #[test]
    fn two_level_product_on_polygon_is_exact() {
        // p + (1-p)1_{|x|<=1} per axis on the square [-2,2]^2
        let t = Density1D::TwoLevel {
            p: 0.25,
            threshold: 1.0,
        };
        let m = Measure::Product(ProductMeasure::new(vec![t.clone(), t]).unwrap());
        let sq = Body::Polygon(SymmetricPolygon2::square(2.0).unwrap());
        let e = m.measure(&sq, &EvalConfig::default()).unwrap();
        let side = 2.0 * (1.0 + 0.25);
        assert!((e.value - side * side).abs() < 1e-12);
    }

    #[test]
    fn planar_measure_of_ideal_matches_product() {
        let a = Body::Ideal(BoxIdeal::new(2, vec![vec![1.0, 3.0], vec![2.5, 0.5]]).unwrap());
        let planar = Measure::Planar(PlanarDensity::standard_gaussian());
        let prod = Measure::standard_gaussian(2);
        let cfg = EvalConfig::default();
        let q = planar.measure(&a, &cfg).unwrap();
        let s = prod.measure(&a, &cfg).unwrap();
        assert!((q.value - s.value).abs() <= q.error + 1e-14);
    }

    #[test]
    fn monte_carlo_square() {
        let sq = Body::Polygon(SymmetricPolygon2::square(1.0).unwrap());
        let g = Measure::standard_gaussian(2);
        let mc = McConfig {
            samples: 1_000_000,
            seed: 7,
            workers: 4,
        };
        let e = g.measure_monte_carlo(&sq, &mc).unwrap();
        let one = 2.0 * gaussian_cdf(1.0) - 1.0;
        assert!((e.value - one * one).abs() <= e.error);
        assert!(e.error < 0.002);
        let again = g.measure_monte_carlo(&sq, &mc).unwrap();
        assert_eq!(e.value.to_bits(), again.value.to_bits());
        let l = Measure::lebesgue(2).measure_monte_carlo(&sq, &mc).unwrap();
        assert_eq!((l.value, l.error), (4.0, 0.0));
    }

    #[test]
    fn spline_kink_at_origin_is_split() {
        let d = Density1D::TableSpline {
            knots: vec![0.0, 1.0, 3.0],
            values: vec![1.0, 0.5, 0.2],
        };
        let m = Measure::Product(ProductMeasure::new(vec![d, Density1D::TwoLevel { p: 0.5, threshold: 0.7 }]).unwrap());
        let a = BoxIdeal::from_box(vec![2.0, 1.5]).unwrap();
        let sweep = m.measure(&Body::Ideal(a.clone()), &EvalConfig::default()).unwrap();
        let quad = m
            .measure_triangles(&ideal_triangles(&a), &QuadConfig::default())
            .unwrap();
        assert!(
            (sweep.value - quad.value).abs() < 1e-12,
            "{} vs {}",
            sweep.value,
            quad.value
        );
    }
}
