//! Planar regions used for evaluation only: star-shaped unions about the
//! origin (box-union ideals, ideal + polygon sums) and general convex
//! polygons (truncated cones and half-planes).

use super::convex::{self, MERGE_TOL};
use super::{angle, cross, dot, norm, sub, unit, BoxIdeal, Point2, SymmetricPolygon2};
use crate::error::{Error, Result};
use std::f64::consts::TAU;

/// A polygon star-shaped with respect to the origin, boundary counter-clockwise
/// and angularly monotone. The empty loop is a null set.
#[derive(Clone, Debug, PartialEq)]
pub struct StarRegion {
    vertices: Vec<Point2>,
}

impl StarRegion {
    pub fn empty() -> Self {
        Self { vertices: Vec::new() }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() < 3
    }

    pub fn from_polygon(p: &SymmetricPolygon2) -> Self {
        Self {
            vertices: p.vertices().to_vec(),
        }
    }

    /// Staircase boundary of a planar ideal. Boxes with an empty interior are
    /// null sets and are dropped.
    pub fn from_ideal(a: &BoxIdeal) -> Result<Self> {
        if a.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                found: a.dim(),
            });
        }
        let mut g: Vec<Point2> = a
            .generators()
            .iter()
            .filter(|g| g[0] > 0.0 && g[1] > 0.0)
            .map(|g| [g[0], g[1]])
            .collect();
        if g.is_empty() {
            return Ok(Self::empty());
        }
        // dropping null boxes can uncover dominated ones; re-normalise
        g.retain({
            let all = g.clone();
            move |p| !all.iter().any(|q| q != p && q[0] >= p[0] && q[1] >= p[1])
        });
        g.sort_by(|p, q| p[0].total_cmp(&q[0]));
        // positive quadrant, from the x-axis up to the y-axis
        let k = g.len();
        let mut q1 = vec![[g[k - 1][0], 0.0]];
        for i in (0..k).rev() {
            q1.push(g[i]);
            if i > 0 {
                q1.push([g[i - 1][0], g[i][1]]);
            }
        }
        q1.push([0.0, g[0][1]]);
        let mut v = q1.clone();
        v.extend(q1.iter().rev().skip(1).map(|p| [-p[0], p[1]]));
        v.extend(q1.iter().skip(1).map(|p| [-p[0], -p[1]]));
        v.extend(q1.iter().rev().skip(1).map(|p| [p[0], -p[1]]));
        v.pop();
        Ok(Self {
            vertices: clean_star(&v),
        })
    }

    /// Union of regions that each contain the origin in their interior.
    ///
    /// All pieces are star-shaped about the origin, so the union is as well;
    /// its radial function is the pointwise maximum. Between consecutive
    /// vertex angles every piece contributes one straight edge and the upper
    /// envelope switches at most at pairwise crossing angles.
    pub fn union(pieces: &[StarRegion]) -> Self {
        let pieces: Vec<Radial> = pieces
            .iter()
            .filter(|p| !p.is_empty())
            .map(|p| Radial::new(&p.vertices))
            .collect();
        match pieces.len() {
            0 => return Self::empty(),
            1 => {
                return Self {
                    vertices: pieces[0].pts.clone(),
                }
            }
            _ => {}
        }
        let mut cuts: Vec<f64> = pieces.iter().flat_map(|p| p.ang.iter().copied()).collect();
        cuts.sort_by(f64::total_cmp);
        cuts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        let m = cuts.len();
        let mut out = Vec::new();
        for i in 0..m {
            let ta = cuts[i];
            let tb = if i + 1 < m { cuts[i + 1] } else { cuts[0] + TAU };
            let mid = 0.5 * (ta + tb);
            let lines: Vec<(Point2, f64)> = pieces.iter().map(|p| p.line_at(mid)).collect();
            let mut sub_cuts = vec![ta];
            for (a, la) in lines.iter().enumerate() {
                for lb in &lines[a + 1..] {
                    // r_a > r_b  <=>  <c_a n_b - c_b n_a, u> > 0
                    let w = [la.1 * lb.0[0] - lb.1 * la.0[0], la.1 * lb.0[1] - lb.1 * la.0[1]];
                    if norm(w) == 0.0 {
                        continue;
                    }
                    let base = angle(w) + 0.5 * std::f64::consts::PI;
                    for t in [base, base + std::f64::consts::PI] {
                        let mut t = t.rem_euclid(TAU);
                        if t < ta {
                            t += TAU;
                        }
                        if t > ta && t < tb {
                            sub_cuts.push(t);
                        }
                    }
                }
            }
            sub_cuts.sort_by(f64::total_cmp);
            sub_cuts.push(tb);
            for w in sub_cuts.windows(2) {
                let (s0, s1) = (w[0], w[1]);
                if s1 - s0 <= 0.0 {
                    continue;
                }
                let u_mid = unit(0.5 * (s0 + s1));
                let best = lines
                    .iter()
                    .max_by(|x, y| (x.1 / dot(x.0, u_mid)).total_cmp(&(y.1 / dot(y.0, u_mid))))
                    .unwrap();
                let u0 = unit(s0);
                out.push(super::scale(u0, best.1 / dot(best.0, u0)));
            }
        }
        Self {
            vertices: clean_star(&out),
        }
    }

    /// Fan triangles `(0, v_i, v_{i+1})`.
    pub fn fan_triangles(&self) -> Vec<[Point2; 3]> {
        let n = self.vertices.len();
        if n < 3 {
            return Vec::new();
        }
        (0..n)
            .map(|i| [[0.0, 0.0], self.vertices[i], self.vertices[(i + 1) % n]])
            .collect()
    }

    pub fn area(&self) -> f64 {
        convex::signed_area(&self.vertices)
    }

    pub fn contains(&self, x: Point2) -> bool {
        if self.is_empty() {
            return false;
        }
        if norm(x) == 0.0 {
            return true;
        }
        let r = Radial::new(&self.vertices);
        let (n, c) = r.line_at(angle(x));
        dot(n, x) <= c + 1e-12
    }

    pub fn circumradius(&self) -> f64 {
        self.vertices.iter().map(|&p| norm(p)).fold(0.0, f64::max)
    }
}

/// Removes duplicates and points collinear with both neighbours.
fn clean_star(v: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = Vec::with_capacity(v.len());
    for &p in v {
        if pts.last().is_none_or(|&q| norm(sub(p, q)) > MERGE_TOL) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && norm(sub(pts[0], *pts.last().unwrap())) <= MERGE_TOL {
        pts.pop();
    }
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let mut keep: Vec<Point2> = Vec::with_capacity(n);
        let mut removed = false;
        for i in 0..n {
            let prev = keep.last().copied().unwrap_or(pts[(i + n - 1) % n]);
            let e1 = sub(pts[i], prev);
            let e2 = sub(pts[(i + 1) % n], pts[i]);
            let turn = cross(e1, e2);
            if turn.abs() <= convex::COLLINEAR_TOL * norm(e1) * norm(e2) && dot(e1, e2) > 0.0 {
                removed = true;
            } else {
                keep.push(pts[i]);
            }
        }
        pts = keep;
        if !removed {
            return pts;
        }
    }
}

/// Angular index of a star polygon for radial queries.
struct Radial {
    pts: Vec<Point2>,
    ang: Vec<f64>,
}

impl Radial {
    fn new(v: &[Point2]) -> Self {
        let n = v.len();
        let start = (0..n).min_by(|&i, &j| angle(v[i]).total_cmp(&angle(v[j]))).unwrap();
        let pts: Vec<Point2> = (0..n).map(|k| v[(start + k) % n]).collect();
        let ang = pts.iter().map(|&p| angle(p)).collect();
        Self { pts, ang }
    }

    /// Supporting line `<n, x> = c` (c > 0) of the edge crossed by the ray at `theta`.
    fn line_at(&self, theta: f64) -> (Point2, f64) {
        let theta = theta.rem_euclid(TAU);
        let n = self.pts.len();
        let i = match self.ang.partition_point(|&a| a <= theta) {
            0 => n - 1,
            k => k - 1,
        };
        let a = self.pts[i];
        let b = self.pts[(i + 1) % n];
        let e = sub(b, a);
        let normal = [e[1], -e[0]];
        (normal, dot(normal, a))
    }
}

/// A general convex polygon (counter-clockwise), used where symmetry is dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct ConvexRegion {
    vertices: Vec<Point2>,
}

impl ConvexRegion {
    /// Intersection of half-planes `<n, x> <= c` with the box `[-bound, bound]^2`.
    pub fn from_halfplanes(halfplanes: &[(Point2, f64)], bound: f64) -> Self {
        Self {
            vertices: convex::halfplane_intersection(halfplanes, bound),
        }
    }

    pub fn from_vertices(v: Vec<Point2>) -> Self {
        Self {
            vertices: convex::convex_hull(&v),
        }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() < 3
    }

    pub fn area(&self) -> f64 {
        convex::signed_area(&self.vertices)
    }

    pub fn contains(&self, x: Point2) -> bool {
        convex::contains(&self.vertices, x, 1e-12)
    }

    /// Fan triangles from the vertex centroid.
    pub fn fan_triangles(&self) -> Vec<[Point2; 3]> {
        if self.is_empty() {
            return Vec::new();
        }
        let c = convex::vertex_centroid(&self.vertices);
        let n = self.vertices.len();
        (0..n)
            .map(|i| [c, self.vertices[i], self.vertices[(i + 1) % n]])
            .collect()
    }
}

/// `A ⊕ tB` for a planar ideal and a symmetric polygon, as a union of the
/// convex pieces `box_g ⊕ tB`.
pub fn ideal_plus_polygon(a: &BoxIdeal, t: f64, b: &SymmetricPolygon2) -> Result<StarRegion> {
    if a.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: a.dim(),
        });
    }
    let tb = b.scale(t)?;
    if tb.is_origin() {
        return StarRegion::from_ideal(a);
    }
    let pieces: Vec<StarRegion> = a
        .generators()
        .iter()
        .map(|g| {
            let rect = convex::cleanup(&[[-g[0], -g[1]], [g[0], -g[1]], [g[0], g[1]], [-g[0], g[1]]]);
            StarRegion {
                vertices: convex::minkowski_sum(&rect, tb.vertices()),
            }
        })
        .collect();
    Ok(StarRegion::union(&pieces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ball_polygon;

    #[test]
    fn staircase_area_matches_sweep() {
        let a = BoxIdeal::new(2, vec![vec![1.0, 4.0], vec![4.0, 1.0], vec![2.5, 2.5]]).unwrap();
        let s = StarRegion::from_ideal(&a).unwrap();
        assert!((s.area() - a.lebesgue_volume()).abs() < 1e-12);
        assert!(s.contains([2.4, 2.4]));
        assert!(!s.contains([2.6, 2.4]));
        let tri: f64 = s
            .fan_triangles()
            .iter()
            .map(|t| 0.5 * cross(sub(t[1], t[0]), sub(t[2], t[0])))
            .sum();
        assert!((tri - s.area()).abs() < 1e-12);
    }

    #[test]
    fn null_boxes_are_dropped() {
        let a = BoxIdeal::new(2, vec![vec![0.0, 5.0], vec![1.0, 1.0]]).unwrap();
        let s = StarRegion::from_ideal(&a).unwrap();
        assert!((s.area() - 4.0).abs() < 1e-12);
        let z = BoxIdeal::new(2, vec![vec![0.0, 5.0]]).unwrap();
        assert!(StarRegion::from_ideal(&z).unwrap().is_empty());
    }

    #[test]
    fn union_of_two_rectangles() {
        let r1 = StarRegion::from_polygon(&SymmetricPolygon2::rectangle(1.0, 4.0).unwrap());
        let r2 = StarRegion::from_polygon(&SymmetricPolygon2::rectangle(4.0, 1.0).unwrap());
        let u = StarRegion::union(&[r1, r2]);
        assert!((u.area() - 28.0).abs() < 1e-12);
        assert_eq!(u.vertices().len(), 12);
    }

    #[test]
    fn union_of_crossing_polygons() {
        let d = StarRegion::from_polygon(&SymmetricPolygon2::diamond(1.3).unwrap());
        let s = StarRegion::from_polygon(&SymmetricPolygon2::square(1.0).unwrap());
        let u = StarRegion::union(&[d, s]);
        // square plus four small triangles with base 0.6 (x from -0.3 to 0.3) and height 0.3
        let want = 4.0 + 4.0 * 0.5 * 0.6 * 0.3;
        assert!((u.area() - want).abs() < 1e-12, "{}", u.area());
    }

    #[test]
    fn ideal_plus_ball_parallel_area() {
        // box [-1,1]^2 plus t times an m-gon: area = 4 + t * per + t^2 * area(ball)
        let a = BoxIdeal::from_box(vec![1.0, 1.0]).unwrap();
        let ball = ball_polygon(1.0, 64).unwrap();
        let t = 0.3;
        let r = ideal_plus_polygon(&a, t, &ball).unwrap();
        // the 64-gon has support 1 in the axis directions
        let per = 4.0 * 2.0;
        let want = 4.0 + t * per + t * t * ball.area();
        assert!((r.area() - want).abs() < 1e-12, "{} vs {want}", r.area());
    }

    #[test]
    fn convex_region_fan() {
        let c = ConvexRegion::from_halfplanes(&[([0.0, -1.0], 0.5), ([1.0, 1.0], 2.0)], 3.0);
        let tri: f64 = c
            .fan_triangles()
            .iter()
            .map(|t| 0.5 * cross(sub(t[1], t[0]), sub(t[2], t[0])))
            .sum();
        assert!((tri - c.area()).abs() < 1e-12);
        assert!(c.contains([0.0, 0.0]));
        assert!(!c.contains([0.0, -1.0]));
    }
}
