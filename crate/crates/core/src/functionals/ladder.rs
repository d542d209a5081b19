//! One-sided derivatives of `t ↦ μ(A + tB)` by finite-difference ladders.

use super::measure_sum;
use crate::error::{Error, Result};
use crate::geometry::{ball_polygon, ball_polygon_error, Body};
use crate::measures::{EvalConfig, Measure};
use serde::Serialize;

/// Vertex count of the polygonal unit ball used by default.
pub const DEFAULT_BALL_VERTICES: usize = 1024;

/// A derivative estimate from a step ladder `h, h/2, h/4`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FunctionalValue {
    /// Richardson-extrapolated value.
    pub value: f64,
    pub error: f64,
    /// `(step, difference quotient)` for each rung.
    pub ladder: Vec<(f64, f64)>,
    /// Measure errors divided by the step dominate the estimate.
    pub noisy: bool,
}

impl FunctionalValue {
    pub fn zero() -> Self {
        Self {
            value: 0.0,
            error: 0.0,
            ladder: Vec::new(),
            noisy: false,
        }
    }

    fn scaled(mut self, s: f64) -> Self {
        self.value *= s;
        self.error *= s;
        for r in &mut self.ladder {
            r.1 *= s;
        }
        self
    }
}

/// Inner radius used for default step sizes.
pub fn inradius(a: &Body) -> f64 {
    match a {
        Body::Polygon(p) => {
            if p.is_origin() {
                0.0
            } else {
                p.inradius()
            }
        }
        Body::Ideal(i) => i
            .generators()
            .iter()
            .map(|g| g.iter().copied().fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max),
    }
}

fn default_step(a: &Body) -> Result<f64> {
    let r = inradius(a);
    if !(r > 0.0) {
        return Err(Error::OriginNotInterior);
    }
    Ok(1e-2 * r)
}

/// `lim_{t→0+} [μ(A + tB) - μ(A)] / t` from forward differences at
/// `h, h/2, h/4`. The forward quotient is `D + ch + O(h²)`, so the
/// extrapolation `2D(h/4) - D(h/2)` removes the linear term.
pub fn forward_ladder(m: &Measure, a: &Body, b: &Body, h: f64, cfg: &EvalConfig) -> Result<FunctionalValue> {
    if !(h > 0.0) {
        return Err(Error::OutOfRange { name: "h", value: h });
    }
    let e0 = m.measure(a, cfg)?;
    let mut ladder = Vec::with_capacity(3);
    let mut derr = Vec::with_capacity(3);
    for k in 0..3 {
        let s = h / f64::from(1u32 << k);
        let e = measure_sum(m, a, s, b, cfg)?;
        ladder.push((s, (e.value - e0.value) / s));
        derr.push((e.error + e0.error) / s);
    }
    let (d2, d3) = (ladder[1].1, ladder[2].1);
    let value = 2.0 * d3 - d2;
    let noise = 2.0 * derr[2] + derr[1];
    Ok(FunctionalValue {
        value,
        error: (d3 - d2).abs() + noise,
        ladder,
        noisy: noise > 0.1 * value.abs(),
    })
}

/// `μ⁺(∂A)`, with the unit disc replaced by an inscribed regular polygon
/// with `ball_vertices` vertices; the polygon's support deficit is added to
/// the error. Planar bodies only.
pub fn surface_area(
    m: &Measure,
    a: &Body,
    ball_vertices: usize,
    h: Option<f64>,
    cfg: &EvalConfig,
) -> Result<FunctionalValue> {
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: a.dim(),
        });
    }
    let ball = Body::Polygon(ball_polygon(1.0, ball_vertices)?);
    let h = match h {
        Some(h) => h,
        None => default_step(a)?,
    };
    let mut v = forward_ladder(m, a, &ball, h, cfg)?;
    let deficit = ball_polygon_error(1.0, ball_vertices);
    v.error += v.value.abs() * deficit / (1.0 - deficit);
    Ok(v)
}

/// `V_1^μ(A, B) = (1/n) lim_{t→0+} [μ(A + tB) - μ(A)] / t`.
pub fn mixed_volume_first(
    m: &Measure,
    a: &Body,
    b: &Body,
    h: Option<f64>,
    cfg: &EvalConfig,
) -> Result<FunctionalValue> {
    if b.is_origin() {
        return Ok(FunctionalValue::zero());
    }
    let h = match h {
        Some(h) => h,
        None => default_step(a)?,
    };
    Ok(forward_ladder(m, a, b, h, cfg)?.scaled(1.0 / a.dim() as f64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::SymmetricPolygon2;

    #[test]
    fn lebesgue_square_perimeter() {
        let sq = Body::Polygon(SymmetricPolygon2::square(1.0).unwrap());
        let s = surface_area(
            &Measure::lebesgue(2),
            &sq,
            DEFAULT_BALL_VERTICES,
            None,
            &EvalConfig::default(),
        )
        .unwrap();
        assert!((s.value - 8.0).abs() < 1e-3, "{s:?}");
        assert!((s.value - 8.0).abs() <= s.error.max(1e-9));
        // richardson consistency
        let fine = s.ladder[2].1;
        assert!((s.value - fine).abs() <= (fine - s.ladder[1].1).abs() + 1e-12);
    }

    #[test]
    fn lebesgue_self_mixed_volume_is_area() {
        let k = Body::Polygon(SymmetricPolygon2::hull_of(&[[1.0, 0.3], [0.2, 0.8]]).unwrap());
        let v = mixed_volume_first(&Measure::lebesgue(2), &k, &k, None, &EvalConfig::default()).unwrap();
        let Body::Polygon(p) = &k else { unreachable!() };
        assert!((v.value - p.area()).abs() < 1e-9);
        let o = Body::Polygon(SymmetricPolygon2::origin());
        assert_eq!(
            mixed_volume_first(&Measure::lebesgue(2), &k, &o, None, &EvalConfig::default())
                .unwrap()
                .value,
            0.0
        );
    }
}
