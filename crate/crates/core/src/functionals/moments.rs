//! The functional `M_μ(A) = ∫_A ⟨x, ∇ψ(x)⟩ dμ(x)` and the identities and
//! inequalities built from it.

use super::ladder::{mixed_volume_first, surface_area, DEFAULT_BALL_VERTICES};
use crate::context;
use crate::error::{Error, Result};
use crate::geometry::{ball_polygon, decompose_disjoint, Body, Point2, SymmetricPolygon2};
use crate::inequalities::report::{pow0, propagate};
use crate::inequalities::InequalityReport;
use crate::measures::{
    ideal_triangles, quadrature, EvalConfig, Measure, MeasureEstimate, Method, PlanarDensity, QuadConfig,
};

/// `M_μ(A)`. Product measures need every component to have a smooth
/// potential (Gaussian or Lebesgue); on ideals the value is exact.
pub fn m_functional(m: &Measure, a: &Body, cfg: &EvalConfig) -> Result<MeasureEstimate> {
    if a.dim() != m.dim() {
        return Err(Error::DimensionMismatch {
            expected: m.dim(),
            found: a.dim(),
        });
    }
    if a.is_origin() {
        return Ok(MeasureEstimate::exact(0.0));
    }
    match (m, a) {
        (Measure::Product(p), Body::Ideal(i)) => {
            let mut total = 0.0;
            for cell in decompose_disjoint(i) {
                let shells: Vec<f64> = cell
                    .shells
                    .iter()
                    .zip(&p.components)
                    .map(|(&(lo, hi), d)| d.shell(lo, hi))
                    .collect();
                for (k, &(lo, hi)) in cell.shells.iter().enumerate() {
                    let moment = 2.0 * p.components[k].moment_interval(lo, hi)?;
                    let others: f64 = shells
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != k)
                        .map(|(_, s)| s)
                        .product();
                    total += moment * others;
                }
            }
            let fp = 8.0 * (i.generators().len() * i.dim()) as f64 * f64::EPSILON * total.abs();
            Ok(MeasureEstimate::new(total, fp, Method::Sweep))
        }
        (_, Body::Ideal(i)) => m_functional_triangles(m, &ideal_triangles(i), &cfg.quad),
        (_, Body::Polygon(p)) => {
            let v = p.vertices();
            let tris: Vec<[Point2; 3]> = (0..v.len()).map(|k| [[0.0, 0.0], v[k], v[(k + 1) % v.len()]]).collect();
            m_functional_triangles(m, &tris, &cfg.quad)
        }
    }
}

/// `M_μ` over disjoint planar triangles by quadrature.
pub fn m_functional_triangles(m: &Measure, tris: &[[Point2; 3]], cfg: &QuadConfig) -> Result<MeasureEstimate> {
    let r = match m {
        Measure::Planar(d) => {
            let dens = d.density_fn();
            let f = |x: Point2| {
                let g = d.grad_potential(x).value;
                (x[0] * g[0] + x[1] * g[1]) * dens(x)
            };
            quadrature::integrate(tris, &f, cfg)
        }
        Measure::Product(p) => {
            if p.dim() != 2 {
                return Err(Error::DimensionMismatch {
                    expected: 2,
                    found: p.dim(),
                });
            }
            if p.components.iter().any(|c| c.potential_derivative(0.0).is_none()) {
                return Err(Error::Unsupported("M functional needs smooth potentials".into()));
            }
            let f = |x: Point2| {
                let s: f64 = (0..2)
                    .map(|k| x[k] * p.components[k].potential_derivative(x[k]).unwrap_or(0.0))
                    .sum();
                s * p.density(&x)
            };
            quadrature::integrate(tris, &f, cfg)
        }
    };
    let mut e = MeasureEstimate::new(r.value, r.error, Method::Quadrature);
    if r.exhausted {
        e = e.with_param("budget_exhausted", true);
    }
    Ok(e)
}

/// `d/dt μ(tA)|_{t=1} = nμ(A) - M_μ(A)`, the left side by centered
/// differences at `h` and `h/2` with Richardson extrapolation.
pub fn check_infs_identity(m: &Measure, a: &Body, h: f64, cfg: &EvalConfig) -> InequalityReport {
    let n = a.dim();
    let ctx = context!("n" => n, "h" => h, "class" => a.class_name(), "measure" => m);
    let run = || -> Result<InequalityReport> {
        if !(h > 0.0 && h < 1.0) {
            return Err(Error::OutOfRange { name: "h", value: h });
        }
        let centered = |s: f64| -> Result<(f64, f64)> {
            let up = m.measure(&a.scale(1.0 + s)?, cfg)?;
            let dn = m.measure(&a.scale(1.0 - s)?, cfg)?;
            Ok(((up.value - dn.value) / (2.0 * s), (up.error + dn.error) / (2.0 * s)))
        };
        let (d1, e1) = centered(h)?;
        let (d2, e2) = centered(0.5 * h)?;
        let lhs = (4.0 * d2 - d1) / 3.0;
        let lhs_err = (lhs - d2).abs() + (4.0 * e2 + e1) / 3.0;
        let ea = m.measure(a, cfg)?;
        let em = m_functional(m, a, cfg)?;
        let rhs = n as f64 * ea.value - em.value;
        let budget = lhs_err + n as f64 * ea.error + em.error;
        Ok(InequalityReport::equality(lhs, rhs, budget, ctx.clone())
            .with("measure", ea.value)
            .with("m_functional", em.value))
    };
    run().unwrap_or_else(|e| InequalityReport::inconclusive(e.to_string(), ctx))
}

/// Minkowski's first inequality for measures:
/// `V_1^μ(A, B) + M_μ(A)/n >= μ(B)^{1/n} μ(A)^{1-1/n}`.
pub fn check_minkowski_first(m: &Measure, a: &Body, b: &Body, cfg: &EvalConfig) -> InequalityReport {
    let n = a.dim();
    let ctx = context!("n" => n, "class" => a.class_name(), "measure" => m);
    let run = || -> Result<InequalityReport> {
        let v1 = mixed_volume_first(m, a, b, None, cfg)?;
        let em = m_functional(m, a, cfg)?;
        let ea = m.measure(a, cfg)?;
        let eb = m.measure(b, cfg)?;
        let s = 1.0 / n as f64;
        let (pa, epa) = propagate(&ea, |x| pow0(x, 1.0 - s));
        let (pb, epb) = propagate(&eb, |x| pow0(x, s));
        let rhs = pa * pb;
        let rhs_err = epa * (pb + epb) + pa * epb;
        let lhs = v1.value + em.value * s;
        Ok(
            InequalityReport::new(lhs, rhs, v1.error + em.error * s + rhs_err, ctx.clone())
                .with("mixed_volume", v1.value)
                .with("m_functional", em.value)
                .with("noisy", v1.noisy),
        )
    };
    run().unwrap_or_else(|e| InequalityReport::inconclusive(e.to_string(), ctx))
}

/// Smallest `s` with `γ(sA)` within `tol` of `target`, by bisection.
pub fn match_measure(
    m: &Measure,
    a: &SymmetricPolygon2,
    target: f64,
    tol: f64,
    cfg: &EvalConfig,
) -> Result<(f64, MeasureEstimate)> {
    let eval = |s: f64| m.measure(&Body::Polygon(a.scale(s)?), cfg);
    let mut lo = 0.0;
    let mut hi = 1.0;
    let mut e_hi = eval(hi)?;
    let mut guard = 0;
    while e_hi.value < target {
        lo = hi;
        hi *= 2.0;
        e_hi = eval(hi)?;
        guard += 1;
        if guard > 60 {
            return Err(Error::OutOfRange {
                name: "target",
                value: target,
            });
        }
    }
    let mut best = (hi, e_hi);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let e = eval(mid)?;
        if (e.value - target).abs() < (best.1.value - target).abs() {
            best = (mid, e.clone());
        }
        if (e.value - target).abs() <= tol || hi - lo <= 1e-15 * hi {
            break;
        }
        if e.value < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(best)
}

/// `r γ⁺(∂A) + M_γ(A) >= r γ⁺(∂(rB)) + M_γ(rB)` after dilating `A` to the
/// Gaussian measure of the disc `rB` (both discs are 1024-gons).
pub fn check_isoperimetric_mix(a: &SymmetricPolygon2, r: f64, cfg: &EvalConfig) -> InequalityReport {
    let ctx = context!("r" => r);
    let run = || -> Result<InequalityReport> {
        let m = Measure::Planar(PlanarDensity::standard_gaussian());
        let ball = Body::Polygon(ball_polygon(r, DEFAULT_BALL_VERTICES)?);
        let target = m.measure(&ball, cfg)?;
        let (s, matched) = match_measure(&m, a, target.value, 1e-9, cfg)?;
        let body = Body::Polygon(a.scale(s)?);
        let side = |b: &Body| -> Result<(f64, f64)> {
            let sa = surface_area(&m, b, DEFAULT_BALL_VERTICES, None, cfg)?;
            let mf = m_functional(&m, b, cfg)?;
            Ok((r * sa.value + mf.value, r * sa.error + mf.error))
        };
        let (lhs, el) = side(&body)?;
        let (rhs, er) = side(&ball)?;
        Ok(InequalityReport::new(lhs, rhs, el + er, ctx.clone())
            .with("dilation", s)
            .with("measure", target.value)
            .with("measure_mismatch", (matched.value - target.value).abs()))
    };
    run().unwrap_or_else(|e| InequalityReport::inconclusive(e.to_string(), ctx))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{BoxIdeal, ConvexRegion};
    use crate::inequalities::Verdict;

    #[test]
    fn gaussian_second_moment_of_plane() {
        let g = Measure::Planar(PlanarDensity::standard_gaussian());
        let r = 12.0;
        let plane = ConvexRegion::from_vertices(vec![[-r, -r], [r, -r], [r, r], [-r, r]]);
        let m = m_functional_triangles(&g, &plane.fan_triangles(), &QuadConfig::default()).unwrap();
        assert!((m.value - 2.0).abs() < 1e-6, "{m:?}");
    }

    #[test]
    fn ideal_sweep_matches_quadrature() {
        let a = Body::Ideal(BoxIdeal::new(2, vec![vec![0.5, 2.0], vec![1.5, 1.0]]).unwrap());
        let cfg = EvalConfig::default();
        let exact = m_functional(&Measure::standard_gaussian(2), &a, &cfg).unwrap();
        let quad = m_functional(&Measure::Planar(PlanarDensity::standard_gaussian()), &a, &cfg).unwrap();
        assert!((exact.value - quad.value).abs() <= quad.error + 1e-12);
        assert_eq!(m_functional(&Measure::lebesgue(2), &a, &cfg).unwrap().value, 0.0);
    }

    #[test]
    fn infs_identity_lebesgue_and_gaussian() {
        let sq = Body::Polygon(SymmetricPolygon2::square(1.0).unwrap());
        let cfg = EvalConfig::default();
        let r = check_infs_identity(&Measure::Planar(PlanarDensity::Lebesgue), &sq, 1e-2, &cfg);
        assert!((r.lhs - 8.0).abs() < 1e-9 && r.holds(), "{r:?}");
        let g = check_infs_identity(&Measure::Planar(PlanarDensity::standard_gaussian()), &sq, 1e-2, &cfg);
        assert!(g.slack.abs() < 1e-5 && g.holds(), "{g:?}");
    }

    #[test]
    fn minkowski_first_equality_for_equal_bodies() {
        let k = Body::Polygon(SymmetricPolygon2::hull_of(&[[1.0, 0.3], [0.2, 0.8]]).unwrap());
        let r = check_minkowski_first(
            &Measure::Planar(PlanarDensity::Lebesgue),
            &k,
            &k,
            &EvalConfig::default(),
        );
        assert!(r.slack.abs() < 1e-6 && r.holds(), "{r:?}");
    }

    #[test]
    fn isoperimetric_mix_square() {
        let sq = SymmetricPolygon2::square(1.0).unwrap();
        let r = check_isoperimetric_mix(&sq, 1.0, &EvalConfig::default());
        assert_eq!(r.verdict, Verdict::Holds, "{r:?}");
        assert!(r.slack > 0.0);
    }
}
