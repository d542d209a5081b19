//! Detection of dilate pairs `B = sA`.

use crate::geometry::{Body, DirectionGrid};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Dilation {
    pub is_dilation: bool,
    /// Estimated `s` with `B ≈ sA`.
    pub scale: f64,
    /// Largest relative deviation from the estimated scale.
    pub spread: f64,
}

/// Whether `B` is a dilate of `A` within relative tolerance `tol`. Polygons
/// compare support-function ratios over the grid; ideals compare generators.
pub fn detect_dilation(a: &Body, b: &Body, tol: f64, grid: &DirectionGrid) -> Dilation {
    let none = Dilation {
        is_dilation: false,
        scale: f64::NAN,
        spread: f64::INFINITY,
    };
    let ratios: Vec<f64> = match (a, b) {
        (Body::Polygon(p), Body::Polygon(q)) => {
            if p.is_origin() || q.is_origin() {
                return none;
            }
            grid.directions()
                .into_iter()
                .chain(p.edge_normals())
                .chain(q.edge_normals())
                .map(|u| q.support(u) / p.support(u))
                .collect()
        }
        (Body::Ideal(p), Body::Ideal(q)) => {
            if p.dim() != q.dim() || p.generators().len() != q.generators().len() || p.generators().is_empty() {
                return none;
            }
            let mut r = Vec::new();
            // scaling by s > 0 preserves the lexicographic order of generators
            for (g, h) in p.generators().iter().zip(q.generators()) {
                for (x, y) in g.iter().zip(h) {
                    match (*x == 0.0, *y == 0.0) {
                        (true, true) => {}
                        (false, false) => r.push(y / x),
                        _ => return none,
                    }
                }
            }
            r
        }
        _ => return none,
    };
    if ratios.is_empty() {
        return none;
    }
    let (lo, hi) = ratios
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(l, h), &r| (l.min(r), h.max(r)));
    let scale = 0.5 * (lo + hi);
    let spread = (hi - lo) / scale;
    Dilation {
        is_dilation: spread <= tol,
        scale,
        spread,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{BoxIdeal, SymmetricPolygon2};

    #[test]
    fn examples() {
        let g = DirectionGrid::default();
        let a = SymmetricPolygon2::hull_of(&[[1.0, 0.2], [0.3, 0.9], [-0.4, 0.6]]).unwrap();
        let d = detect_dilation(
            &Body::Polygon(a.clone()),
            &Body::Polygon(a.scale(2.5).unwrap()),
            1e-9,
            &g,
        );
        assert!(d.is_dilation);
        assert!((d.scale - 2.5).abs() < 1e-12);
        let sq = Body::Polygon(SymmetricPolygon2::square(1.0).unwrap());
        let di = Body::Polygon(SymmetricPolygon2::diamond(1.0).unwrap());
        assert!(!detect_dilation(&sq, &di, 1e-6, &g).is_dilation);
        let i = BoxIdeal::new(2, vec![vec![1.0, 4.0], vec![4.0, 1.0]]).unwrap();
        let d = detect_dilation(&Body::Ideal(i.clone()), &Body::Ideal(i.scale(0.5).unwrap()), 1e-12, &g);
        assert!(d.is_dilation && d.scale == 0.5);
        let j = BoxIdeal::new(2, vec![vec![1.0, 4.0], vec![4.0, 2.0]]).unwrap();
        assert!(!detect_dilation(&Body::Ideal(i), &Body::Ideal(j), 1e-6, &g).is_dilation);
    }
}
