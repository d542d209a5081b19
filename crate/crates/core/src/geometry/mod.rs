//! Body representations and their Minkowski / geometric-mean arithmetic.
//!
//! Two body classes are supported: origin-symmetric convex polygons in the
//! plane ([`SymmetricPolygon2`]) and unconditional box-union ideals in any
//! dimension ([`BoxIdeal`]). Regions that fall outside both classes but are
//! still needed for evaluation (unions of convex pieces, truncated cones,
//! half-planes) live in [`region`].

pub mod body;
pub mod convex;
pub mod grid;
pub mod ideal;
pub mod polygon;
pub mod region;

pub use body::{Body, MeanKind};
pub use grid::DirectionGrid;
pub use ideal::{decompose_disjoint, geometric_mean_ideal, minkowski_combine_ideals, slice_ideal, BoxIdeal, ShellCell};
pub use polygon::{
    ball_polygon, ball_polygon_error, geometric_mean_support, minkowski_combine_polygons, SupportMean,
    SymmetricPolygon2,
};
pub use region::{ConvexRegion, StarRegion};

/// A point (or vector) in the plane.
pub type Point2 = [f64; 2];

#[inline]
pub fn dot(a: Point2, b: Point2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

#[inline]
pub fn cross(a: Point2, b: Point2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

#[inline]
pub fn sub(a: Point2, b: Point2) -> Point2 {
    [a[0] - b[0], a[1] - b[1]]
}

#[inline]
pub fn add(a: Point2, b: Point2) -> Point2 {
    [a[0] + b[0], a[1] + b[1]]
}

#[inline]
pub fn scale(a: Point2, t: f64) -> Point2 {
    [a[0] * t, a[1] * t]
}

#[inline]
pub fn norm(a: Point2) -> f64 {
    a[0].hypot(a[1])
}

/// Unit vector at angle `theta`.
#[inline]
pub fn unit(theta: f64) -> Point2 {
    let (s, c) = theta.sin_cos();
    [c, s]
}

/// Angle of `a` normalised to `[0, 2π)`.
#[inline]
pub fn angle(a: Point2) -> f64 {
    let t = a[1].atan2(a[0]);
    if t < 0.0 {
        t + std::f64::consts::TAU
    } else {
        t
    }
}
