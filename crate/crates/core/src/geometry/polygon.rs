//! Origin-symmetric convex polygons.

use super::convex::{self, MERGE_TOL};
use super::{angle, dot, norm, scale, sub, unit, DirectionGrid, Point2};
use crate::error::{check_lambda, Error, Result};
use serde::Serialize;

/// Membership tolerance for [`SymmetricPolygon2::contains`].
pub const CONTAINS_TOL: f64 = 1e-12;
/// Largest accepted mismatch `|v_i + v_{i+k}|` relative to the polygon scale.
const SYMMETRY_TOL: f64 = 1e-9;

/// An origin-symmetric convex polygon, vertices counter-clockwise.
///
/// The empty vertex list is the degenerate "origin-only" body produced by
/// dilating with zero; it has zero measure under every density.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SymmetricPolygon2 {
    vertices: Vec<Point2>,
}

impl SymmetricPolygon2 {
    /// Validates a full vertex list: symmetric, strictly convex, origin interior.
    ///
    /// Clockwise input is reversed; duplicate and collinear vertices are removed.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        if vertices.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
            return Err(Error::DegeneratePolygon("non-finite coordinate".into()));
        }
        let mut v = vertices;
        if convex::signed_area(&v) < 0.0 {
            v.reverse();
        }
        reject_reflex(&v)?;
        let v = convex::cleanup(&v);
        if v.len() < 4 {
            return Err(Error::DegeneratePolygon(format!(
                "{} vertices after cleanup (need at least 4)",
                v.len()
            )));
        }
        let v = symmetrize(&v)?;
        let p = Self { vertices: v };
        if p.inradius() <= 0.0 {
            return Err(Error::OriginNotInterior);
        }
        Ok(p)
    }

    /// The degenerate body `{0}`.
    pub fn origin() -> Self {
        Self { vertices: Vec::new() }
    }

    /// Builds `conv(P ∪ -P)` for an arbitrary point cloud `P`.
    pub fn hull_of(points: &[Point2]) -> Result<Self> {
        let mut all = points.to_vec();
        all.extend(points.iter().map(|p| [-p[0], -p[1]]));
        Self::new(convex::convex_hull(&all))
    }

    /// Intersection of the slabs `|<u_i, x>| <= h_i`.
    pub fn from_support_values(slabs: &[(Point2, f64)]) -> Result<Self> {
        let mut hp = Vec::with_capacity(2 * slabs.len());
        let mut bound: f64 = 0.0;
        for &(u, h) in slabs {
            if h <= 0.0 || !h.is_finite() {
                return Err(Error::OutOfRange {
                    name: "support value",
                    value: h,
                });
            }
            let len = norm(u);
            let u = scale(u, 1.0 / len);
            hp.push((u, h));
            hp.push(([-u[0], -u[1]], h));
            bound = bound.max(h);
        }
        // slabs from >= 2 distinct directions cut out a parallelogram; a large
        // box keeps the clipping bounded until then
        let v = convex::halfplane_intersection(&hp, 1e3 * bound.max(1.0));
        let p = Self::new(v)?;
        if p.circumradius() >= 0.99e3 * bound.max(1.0) {
            return Err(Error::DegeneratePolygon(
                "support values do not bound the polygon".into(),
            ));
        }
        Ok(p)
    }

    /// `[-h, h]^2`.
    pub fn square(h: f64) -> Result<Self> {
        Self::rectangle(h, h)
    }

    /// `[-a, a] x [-b, b]`.
    pub fn rectangle(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![[-a, -b], [a, -b], [a, b], [-a, b]])
    }

    /// `{|x| + |y| <= r}`.
    pub fn diamond(r: f64) -> Result<Self> {
        Self::new(vec![[r, 0.0], [0.0, r], [-r, 0.0], [0.0, -r]])
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn is_origin(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Dilation by `t >= 0`; `t = 0` gives the origin-only body.
    pub fn scale(&self, t: f64) -> Result<Self> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::OutOfRange { name: "t", value: t });
        }
        if t == 0.0 || self.is_origin() {
            return Ok(Self::origin());
        }
        Ok(Self {
            vertices: self.vertices.iter().map(|&p| scale(p, t)).collect(),
        })
    }

    /// Support function `h(u) = max <v, u>`; zero for the origin body.
    pub fn support(&self, u: Point2) -> f64 {
        if self.is_origin() {
            return 0.0;
        }
        convex::support(&self.vertices, u)
    }

    pub fn contains(&self, x: Point2) -> bool {
        if self.is_origin() {
            return norm(x) <= CONTAINS_TOL;
        }
        convex::contains(&self.vertices, x, CONTAINS_TOL)
    }

    pub fn area(&self) -> f64 {
        convex::signed_area(&self.vertices)
    }

    /// Outward unit normals of the edges, in counter-clockwise order.
    pub fn edge_normals(&self) -> Vec<Point2> {
        let n = self.vertices.len();
        (0..n)
            .map(|i| {
                let e = sub(self.vertices[(i + 1) % n], self.vertices[i]);
                let l = norm(e);
                [e[1] / l, -e[0] / l]
            })
            .collect()
    }

    /// Distance from the origin to the boundary.
    pub fn inradius(&self) -> f64 {
        if self.is_origin() {
            return 0.0;
        }
        self.edge_normals()
            .into_iter()
            .map(|u| self.support(u))
            .fold(f64::INFINITY, f64::min)
    }

    pub fn circumradius(&self) -> f64 {
        self.vertices.iter().map(|&p| norm(p)).fold(0.0, f64::max)
    }

    pub fn hausdorff_distance(&self, other: &Self) -> f64 {
        match (self.is_origin(), other.is_origin()) {
            (true, true) => 0.0,
            (true, false) => other.circumradius(),
            (false, true) => self.circumradius(),
            (false, false) => convex::hausdorff(&self.vertices, &other.vertices),
        }
    }
}

/// Rejects loops with a clockwise turn (beyond the collinearity tolerance).
fn reject_reflex(v: &[Point2]) -> Result<()> {
    let mut pts: Vec<Point2> = Vec::with_capacity(v.len());
    for &p in v {
        if pts.last().is_none_or(|&q| norm(sub(p, q)) > MERGE_TOL) {
            pts.push(p);
        }
    }
    let n = pts.len();
    if n < 3 {
        return Ok(());
    }
    for i in 0..n {
        let e1 = sub(pts[i], pts[(i + n - 1) % n]);
        let e2 = sub(pts[(i + 1) % n], pts[i]);
        if super::cross(e1, e2) < -convex::COLLINEAR_TOL * norm(e1) * norm(e2) {
            return Err(Error::NotConvex(i));
        }
    }
    Ok(())
}

/// Pairs `v_i` with `v_{i+n/2}` and replaces both by their antisymmetric mean.
fn symmetrize(v: &[Point2]) -> Result<Vec<Point2>> {
    let attempt = |v: &[Point2]| -> std::result::Result<Vec<Point2>, f64> {
        let n = v.len();
        let scale_ref = v.iter().map(|&p| norm(p)).fold(0.0, f64::max).max(1.0);
        if n % 2 == 1 {
            return Err(f64::INFINITY);
        }
        let k = n / 2;
        let mismatch = (0..k)
            .map(|i| norm([v[i][0] + v[i + k][0], v[i][1] + v[i + k][1]]))
            .fold(0.0, f64::max);
        if mismatch > SYMMETRY_TOL * scale_ref {
            return Err(mismatch);
        }
        let half: Vec<Point2> = (0..k)
            .map(|i| [0.5 * (v[i][0] - v[i + k][0]), 0.5 * (v[i][1] - v[i + k][1])])
            .collect();
        let mut out = half.clone();
        out.extend(half.iter().map(|p| [-p[0], -p[1]]));
        Ok(out)
    };
    match attempt(v) {
        Ok(out) => Ok(out),
        Err(first) => {
            // cleanup may have merged a vertex on one side only; rebuild from
            // the symmetric hull and retry once
            let mut all = v.to_vec();
            all.extend(v.iter().map(|p| [-p[0], -p[1]]));
            let hull = convex::convex_hull(&all);
            let scale_ref = v.iter().map(|&p| norm(p)).fold(0.0, f64::max).max(1.0);
            let drift = convex::hausdorff(&hull, v);
            if drift > SYMMETRY_TOL * scale_ref {
                return Err(Error::NotSymmetric(first.min(drift)));
            }
            attempt(&hull).map_err(Error::NotSymmetric)
        }
    }
}

/// Exact Minkowski combination `λA + (1-λ)B` by sorted edge merge.
pub fn minkowski_combine_polygons(
    a: &SymmetricPolygon2,
    b: &SymmetricPolygon2,
    lambda: f64,
) -> Result<SymmetricPolygon2> {
    check_lambda(lambda)?;
    let sa = a.scale(lambda)?;
    let sb = b.scale(1.0 - lambda)?;
    if sa.is_origin() {
        return Ok(sb);
    }
    if sb.is_origin() {
        return Ok(sa);
    }
    SymmetricPolygon2::new(convex::minkowski_sum(&sa.vertices, &sb.vertices))
}

/// Regular `m`-gon inscribed in the circle of radius `r` (vertex on the x-axis).
pub fn ball_polygon(r: f64, m: usize) -> Result<SymmetricPolygon2> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::OutOfRange { name: "r", value: r });
    }
    if m < 8 || m % 2 == 1 {
        return Err(Error::OutOfRange {
            name: "m",
            value: m as f64,
        });
    }
    let half: Vec<Point2> = (0..m / 2)
        .map(|k| scale(unit(std::f64::consts::TAU * k as f64 / m as f64), r))
        .collect();
    let mut v = half.clone();
    v.extend(half.iter().map(|p| [-p[0], -p[1]]));
    Ok(SymmetricPolygon2 { vertices: v })
}

/// Hausdorff distance between [`ball_polygon`]`(r, m)` and the disk of radius `r`.
pub fn ball_polygon_error(r: f64, m: usize) -> f64 {
    r * (1.0 - (std::f64::consts::PI / m as f64).cos())
}

/// Result of the support-function geometric mean.
#[derive(Clone, Debug, Serialize)]
pub struct SupportMean {
    /// Outer approximation `G ⊇ A ⊙^S B` cut out by finitely many directions.
    pub polygon: SymmetricPolygon2,
    /// `κ` such that `κ G` lies inside the exact mean, estimated by dense
    /// sampling between consecutive directions.
    pub inner_scale: f64,
    /// Grid resolution (directions on the semicircle).
    pub grid_count: usize,
    /// Number of distinct directions actually used (grid plus edge normals).
    pub directions_used: usize,
}

/// Support-function geometric mean `{x : <x,u> <= h_A(u)^λ h_B(u)^{1-λ}}`.
///
/// The constraint is imposed on the grid directions together with the edge
/// normals of both inputs. Including the edge normals makes the computed body
/// a subset of `λA + (1-λ)B` exactly; the grid controls how far it sits outside
/// the exact (non-polygonal) mean.
pub fn geometric_mean_support(
    a: &SymmetricPolygon2,
    b: &SymmetricPolygon2,
    lambda: f64,
    grid: &DirectionGrid,
) -> Result<SupportMean> {
    check_lambda(lambda)?;
    if grid.count() < super::grid::MIN_GRID {
        return Err(Error::OutOfRange {
            name: "grid.count",
            value: grid.count() as f64,
        });
    }
    if a.inradius() <= 0.0 || b.inradius() <= 0.0 {
        return Err(Error::OriginNotInterior);
    }
    let mut dirs: Vec<(f64, Point2)> = grid
        .directions()
        .into_iter()
        .chain(a.edge_normals())
        .chain(b.edge_normals())
        .map(|u| (angle(u), u))
        .collect();
    dirs.sort_by(|x, y| x.0.total_cmp(&y.0));
    dirs.dedup_by(|x, y| (x.0 - y.0).abs() < 1e-13);
    let offset = |u: Point2| a.support(u).powf(lambda) * b.support(u).powf(1.0 - lambda);
    let hp: Vec<(Point2, f64)> = dirs.iter().map(|&(_, u)| (u, offset(u))).collect();
    let cmax = hp.iter().map(|h| h.1).fold(0.0, f64::max);
    let v = convex::halfplane_intersection(&hp, 2.0 * cmax);
    assert!(!v.is_empty(), "origin is always feasible");
    let polygon = SymmetricPolygon2::new(v)?;

    // Between neighbouring directions u1, u2 the cut body reaches at most the
    // corner z of the two half-planes; κ <z,u> <= c(u) certifies κG inside.
    let mut kappa: f64 = 1.0;
    let m = hp.len();
    for i in 0..m {
        let t1 = dirs[i].0;
        let mut t2 = dirs[(i + 1) % m].0;
        if i + 1 == m {
            t2 += std::f64::consts::TAU;
        }
        let delta = t2 - t1;
        let (c1, c2) = (hp[i].1, hp[(i + 1) % m].1);
        let sd = delta.sin();
        if sd <= 0.0 {
            continue;
        }
        for s in 1..8 {
            let t = t1 + delta * s as f64 / 8.0;
            let u = unit(t);
            let reach = ((t2 - t).sin() * c1 + (t - t1).sin() * c2) / sd;
            kappa = kappa.min(offset(u) / reach);
        }
    }
    Ok(SupportMean {
        polygon,
        inner_scale: kappa.min(1.0),
        grid_count: grid.count(),
        directions_used: m,
    })
}

/// `true` when `x` satisfies `<x,u> <= h(u)` for every direction of `grid`.
pub fn contains_at_resolution(p: &SymmetricPolygon2, x: Point2, grid: &DirectionGrid) -> bool {
    grid.directions()
        .into_iter()
        .all(|u| dot(x, u) <= p.support(u) + CONTAINS_TOL * (1.0 + norm(x)))
}
