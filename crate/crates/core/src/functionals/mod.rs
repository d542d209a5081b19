//! Parallel-volume and section profiles, surface area, first mixed volume
//! and the functional `M_μ`.

pub mod ladder;
pub mod moments;
pub mod profile;

pub use ladder::{forward_ladder, inradius, mixed_volume_first, surface_area, FunctionalValue, DEFAULT_BALL_VERTICES};
pub use moments::{
    check_infs_identity, check_isoperimetric_mix, check_minkowski_first, m_functional, m_functional_triangles,
    match_measure,
};
pub use profile::{brunn_section_profile, parallel_volume_profile, ConcavityProfile, SliceWeight};

use crate::error::{Error, Result};
use crate::geometry::region::ideal_plus_polygon;
use crate::geometry::Body;
use crate::measures::{EvalConfig, Measure, MeasureEstimate};

/// `μ(A + tB)`. Same-class sums stay in the class; a planar ideal plus a
/// polygon is measured as a star-shaped union.
pub fn measure_sum(m: &Measure, a: &Body, t: f64, b: &Body, cfg: &EvalConfig) -> Result<MeasureEstimate> {
    if !(t >= 0.0) {
        return Err(Error::OutOfRange { name: "t", value: t });
    }
    if t == 0.0 || b.is_origin() {
        return m.measure(a, cfg);
    }
    match (a, b) {
        (Body::Ideal(i), Body::Polygon(p)) => m.measure_star(&ideal_plus_polygon(i, t, p)?, &cfg.quad),
        _ => {
            let c = Body::combine(a, b, 1.0 / (1.0 + t))?.scale(1.0 + t)?;
            m.measure(&c, cfg)
        }
    }
}
