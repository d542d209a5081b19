//! Primitives on convex vertex loops (counter-clockwise, no closing repeat).

use super::{add, cross, dot, norm, sub, Point2};

/// Vertices closer than this (absolute) are merged after every polygon operation.
pub const MERGE_TOL: f64 = 1e-10;
/// Relative turn below which a vertex counts as collinear with its neighbours.
pub const COLLINEAR_TOL: f64 = 1e-12;

/// Signed area (positive for counter-clockwise loops).
pub fn signed_area(v: &[Point2]) -> f64 {
    let n = v.len();
    if n < 3 {
        return 0.0;
    }
    let mut s = 0.0;
    for i in 0..n {
        s += cross(v[i], v[(i + 1) % n]);
    }
    0.5 * s
}

/// Removes near-duplicate and collinear vertices from a convex loop.
pub fn cleanup(v: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = Vec::with_capacity(v.len());
    for &p in v {
        if pts.last().is_none_or(|&q| norm(sub(p, q)) > MERGE_TOL) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && norm(sub(pts[0], *pts.last().unwrap())) <= MERGE_TOL {
        pts.pop();
    }
    // Drop vertices whose turn is not strictly left; repeat until stable since
    // removing one vertex changes the turn at its neighbours.
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let mut keep = Vec::with_capacity(n);
        let mut removed = false;
        for i in 0..n {
            let prev = if keep.is_empty() {
                pts[(i + n - 1) % n]
            } else {
                *keep.last().unwrap()
            };
            let cur = pts[i];
            let next = pts[(i + 1) % n];
            let e1 = sub(cur, prev);
            let e2 = sub(next, cur);
            let turn = cross(e1, e2);
            if turn <= COLLINEAR_TOL * norm(e1) * norm(e2) {
                removed = true;
            } else {
                keep.push(cur);
            }
        }
        pts = keep;
        if !removed {
            return pts;
        }
    }
}

/// Index of the lowest vertex (minimum y, then minimum x).
fn lowest(v: &[Point2]) -> usize {
    let mut best = 0;
    for (i, p) in v.iter().enumerate() {
        let b = v[best];
        if p[1] < b[1] || (p[1] == b[1] && p[0] < b[0]) {
            best = i;
        }
    }
    best
}

/// Minkowski sum of two convex loops by merging edges in angular order.
///
/// Degenerate loops (a point or a segment) are accepted.
pub fn minkowski_sum(p: &[Point2], q: &[Point2]) -> Vec<Point2> {
    if p.is_empty() || q.is_empty() {
        return Vec::new();
    }
    let (n, m) = (p.len(), q.len());
    let (ip, iq) = (lowest(p), lowest(q));
    let p: Vec<Point2> = (0..n).map(|k| p[(ip + k) % n]).collect();
    let q: Vec<Point2> = (0..m).map(|k| q[(iq + k) % m]).collect();
    let mut out = Vec::with_capacity(n + m);
    let (mut i, mut j) = (0usize, 0usize);
    while i < n || j < m {
        out.push(add(p[i % n], q[j % m]));
        if i >= n {
            j += 1;
            continue;
        }
        if j >= m {
            i += 1;
            continue;
        }
        let ep = sub(p[(i + 1) % n], p[i]);
        let eq = sub(q[(j + 1) % m], q[j]);
        let c = cross(ep, eq);
        if c > 0.0 {
            i += 1;
        } else if c < 0.0 {
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    cleanup(&out)
}

/// Clips a convex loop by the half-plane `<normal, x> <= offset`.
pub fn clip(poly: &[Point2], normal: Point2, offset: f64) -> Vec<Point2> {
    let n = poly.len();
    let mut out = Vec::with_capacity(n + 1);
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        let da = dot(normal, a) - offset;
        let db = dot(normal, b) - offset;
        if da <= 0.0 {
            out.push(a);
        }
        if (da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0) {
            let t = da / (da - db);
            out.push([a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])]);
        }
    }
    out
}

/// Intersection of half-planes `<n_i, x> <= c_i` inside the box `[-bound, bound]^2`.
pub fn halfplane_intersection(halfplanes: &[(Point2, f64)], bound: f64) -> Vec<Point2> {
    let mut poly = vec![[-bound, -bound], [bound, -bound], [bound, bound], [-bound, bound]];
    for &(n, c) in halfplanes {
        poly = clip(&poly, n, c);
        if poly.is_empty() {
            break;
        }
    }
    cleanup(&poly)
}

/// Convex hull (counter-clockwise) by Andrew's monotone chain.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> = if pass == 0 {
            Box::new(pts.iter())
        } else {
            Box::new(pts.iter().rev())
        };
        for &p in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if cross(sub(b, a), sub(p, b)) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    cleanup(&hull)
}

/// Membership in a convex loop with absolute tolerance `tol` on edge distance.
pub fn contains(v: &[Point2], x: Point2, tol: f64) -> bool {
    let n = v.len();
    match n {
        0 => false,
        1 => norm(sub(x, v[0])) <= tol,
        2 => distance_to_segment(x, v[0], v[1]) <= tol,
        _ => (0..n).all(|i| {
            let a = v[i];
            let e = sub(v[(i + 1) % n], a);
            cross(e, sub(x, a)) >= -tol * norm(e)
        }),
    }
}

pub fn distance_to_segment(x: Point2, a: Point2, b: Point2) -> f64 {
    let e = sub(b, a);
    let len2 = dot(e, e);
    if len2 == 0.0 {
        return norm(sub(x, a));
    }
    let t = (dot(sub(x, a), e) / len2).clamp(0.0, 1.0);
    norm(sub(x, [a[0] + t * e[0], a[1] + t * e[1]]))
}

/// Euclidean distance from `x` to the convex loop (zero inside).
pub fn distance(v: &[Point2], x: Point2) -> f64 {
    if contains(v, x, 0.0) {
        return 0.0;
    }
    let n = v.len();
    (0..n)
        .map(|i| distance_to_segment(x, v[i], v[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

/// Hausdorff distance between two convex loops; attained at vertices.
pub fn hausdorff(p: &[Point2], q: &[Point2]) -> f64 {
    let a = p.iter().map(|&x| distance(q, x)).fold(0.0, f64::max);
    let b = q.iter().map(|&x| distance(p, x)).fold(0.0, f64::max);
    a.max(b)
}

/// Support function `max <v, u>` of a vertex set.
pub fn support(v: &[Point2], u: Point2) -> f64 {
    v.iter().map(|&p| dot(p, u)).fold(f64::NEG_INFINITY, f64::max)
}

/// Vertex centroid (an interior point of any non-degenerate convex loop).
pub fn vertex_centroid(v: &[Point2]) -> Point2 {
    let n = v.len() as f64;
    let s = v.iter().fold([0.0, 0.0], |acc, &p| add(acc, p));
    [s[0] / n, s[1] / n]
}
