//! Adaptive quadrature over triangles.
//!
//! The base rule is a 5×5 Gauss–Legendre product rule pulled back to the
//! triangle through the collapsed map `x = A + u(B - A) + uv(C - B)`; it is
//! exact for polynomials of total degree 8. The local error indicator is the
//! difference between the rule on a triangle and on its four midpoint
//! children. Triangles are refined largest-error first.

use crate::geometry::{cross, sub, Point2};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;

const GL_X: [f64; 5] = [
    -0.906_179_845_938_664,
    -0.538_469_310_105_683,
    0.0,
    0.538_469_310_105_683,
    0.906_179_845_938_664,
];
const GL_W: [f64; 5] = [
    0.236_926_885_056_189_1,
    0.478_628_670_499_366_5,
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
];

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Maximum number of active triangles before giving up.
    pub max_triangles: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-9,
            rel_tol: 1e-7,
            max_triangles: 200_000,
        }
    }
}

impl QuadConfig {
    pub fn halved(&self) -> Self {
        Self {
            abs_tol: self.abs_tol / 2.0,
            rel_tol: self.rel_tol / 2.0,
            max_triangles: self.max_triangles * 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub triangles: usize,
    /// The triangle budget ran out before the tolerance was met; `error` has
    /// been enlarged tenfold.
    pub exhausted: bool,
}

type Tri = [Point2; 3];

/// Base rule on one triangle.
pub fn rule(t: &Tri, f: &dyn Fn(Point2) -> f64) -> f64 {
    let [a, b, c] = *t;
    let ab = sub(b, a);
    let bc = sub(c, b);
    let jac = cross(ab, sub(c, a)).abs();
    let mut s = 0.0;
    for i in 0..5 {
        let u = 0.5 * (1.0 + GL_X[i]);
        let mut row = 0.0;
        for j in 0..5 {
            let v = 0.5 * (1.0 + GL_X[j]);
            let x = [a[0] + u * ab[0] + u * v * bc[0], a[1] + u * ab[1] + u * v * bc[1]];
            row += GL_W[j] * f(x);
        }
        s += GL_W[i] * u * row;
    }
    0.25 * jac * s
}

fn children(t: &Tri) -> [Tri; 4] {
    let [a, b, c] = *t;
    let mid = |p: Point2, q: Point2| [0.5 * (p[0] + q[0]), 0.5 * (p[1] + q[1])];
    let (ab, bc, ca) = (mid(a, b), mid(b, c), mid(c, a));
    [[a, ab, ca], [ab, b, bc], [ca, bc, c], [ab, bc, ca]]
}

struct Item {
    tri: Tri,
    value: f64,
    error: f64,
}

impl PartialEq for Item {
    fn eq(&self, o: &Self) -> bool {
        self.error.total_cmp(&o.error) == Ordering::Equal
    }
}
impl Eq for Item {}
impl PartialOrd for Item {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Item {
    fn cmp(&self, o: &Self) -> Ordering {
        self.error.total_cmp(&o.error)
    }
}

fn evaluate(tri: Tri, f: &dyn Fn(Point2) -> f64) -> Item {
    let coarse = rule(&tri, f);
    let fine: f64 = children(&tri).iter().map(|c| rule(c, f)).sum();
    Item {
        tri,
        value: fine,
        error: (coarse - fine).abs(),
    }
}

/// Integrates `f` over the union of disjoint triangles.
pub fn integrate(tris: &[Tri], f: &dyn Fn(Point2) -> f64, cfg: &QuadConfig) -> QuadResult {
    let mut heap: BinaryHeap<Item> = tris
        .iter()
        .filter(|t| cross(sub(t[1], t[0]), sub(t[2], t[0])) != 0.0)
        .map(|&t| evaluate(t, f))
        .collect();
    let totals = |heap: &BinaryHeap<Item>| heap.iter().fold((0.0, 0.0), |(v, e), it| (v + it.value, e + it.error));
    let mut exhausted = false;
    loop {
        let (value, error) = totals(&heap);
        if error <= cfg.abs_tol.max(cfg.rel_tol * value.abs()) || heap.is_empty() {
            break;
        }
        if heap.len() + 3 > cfg.max_triangles {
            exhausted = true;
            break;
        }
        // refine a batch of the worst triangles before re-summing
        let batch = (heap.len() / 8).max(1);
        for _ in 0..batch {
            let Some(worst) = heap.pop() else { break };
            for c in children(&worst.tri) {
                heap.push(evaluate(c, f));
            }
        }
    }
    let mut items = heap.into_vec();
    // order-independent summation
    items.sort_by(|a, b| a.value.total_cmp(&b.value));
    let value: f64 = items.iter().map(|i| i.value).sum();
    let error: f64 = items.iter().map(|i| i.error).sum::<f64>()
        + 8.0 * f64::EPSILON * items.iter().map(|i| i.value.abs()).sum::<f64>();
    QuadResult {
        value,
        error: if exhausted { 10.0 * error } else { error },
        triangles: items.len(),
        exhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rule_is_exact_for_degree_eight() {
        let t = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        // ∫ x^a y^b over the unit simplex = a! b! / (a + b + 2)!
        let fact = |n: u32| (1..=n).map(f64::from).product::<f64>();
        for a in 0..=8u32 {
            for b in 0..=(8 - a) {
                let q = rule(&t, &|p| p[0].powi(a as i32) * p[1].powi(b as i32));
                let exact = fact(a) * fact(b) / fact(a + b + 2);
                assert!((q - exact).abs() < 1e-15, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn adaptive_gaussian_triangle() {
        let t = [[0.0, 0.0], [3.0, 0.0], [3.0, 3.0]];
        let f = |p: Point2| (-0.5 * (p[0] * p[0] + p[1] * p[1])).exp();
        let r = integrate(&[t], &f, &QuadConfig::default());
        // the triangle is an eighth of the square [-3,3]^2 by symmetry
        let s = libm::erf(3.0 / std::f64::consts::SQRT_2);
        let exact = 2.0 * std::f64::consts::PI * s * s / 8.0;
        assert!((r.value - exact).abs() <= r.error.max(1e-12));
        assert!(!r.exhausted);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let t = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        let cfg = QuadConfig {
            abs_tol: 0.0,
            rel_tol: 0.0,
            max_triangles: 20,
        };
        let r = integrate(&[t], &|p| if p[0] < 0.3 { 1.0 } else { 0.0 }, &cfg);
        assert!(r.exhausted);
    }
}
