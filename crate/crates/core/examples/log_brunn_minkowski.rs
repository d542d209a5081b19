//! Log-Brunn–Minkowski with the ideal and support geometric means, and the
//! weighted Prékopa–Leindler inequality behind the ideal case.

use bmlab::geometry::{Body, BoxIdeal, DirectionGrid, MeanKind, SymmetricPolygon2};
use bmlab::inequalities::{check_log_bm, check_weighted_pl, GridFunction};
use bmlab::measures::{EvalConfig, Measure, PlanarDensity, ProductMeasure};

fn main() -> bmlab::Result<()> {
    let cfg = EvalConfig::default();
    let grid = DirectionGrid::default();

    let a = BoxIdeal::new(2, vec![vec![3.0, 0.5], vec![1.0, 1.5]])?;
    let b = BoxIdeal::new(2, vec![vec![0.4, 3.0], vec![2.0, 1.0]])?;
    let r = check_log_bm(
        &Measure::standard_gaussian(2),
        &Body::Ideal(a.clone()),
        &Body::Ideal(b.clone()),
        0.3,
        MeanKind::Ideal,
        &grid,
        &cfg,
    );
    println!("ideal mean:   lhs {:.10} rhs {:.10} {:?}", r.lhs, r.rhs, r.verdict);

    let p = Body::Polygon(SymmetricPolygon2::rectangle(2.0, 0.5)?);
    let q = Body::Polygon(SymmetricPolygon2::diamond(1.5)?);
    let planar = Measure::Planar(PlanarDensity::standard_gaussian());
    let r = check_log_bm(&planar, &p, &q, 0.5, MeanKind::Support, &grid, &cfg);
    println!("support mean: lhs {:.10} rhs {:.10} {:?}", r.lhs, r.rhs, r.verdict);

    // indicators of A, B and of their combination on a common cell grid
    let c = match Body::combine(&Body::Ideal(a.clone()), &Body::Ideal(b.clone()), 0.3)? {
        Body::Ideal(c) => c,
        Body::Polygon(_) => unreachable!("ideals combine to an ideal"),
    };
    let edges = GridFunction::common_edges(&[&a, &b, &c]);
    let f = GridFunction::indicator(&a, edges.clone())?;
    let g = GridFunction::indicator(&b, edges.clone())?;
    let m = GridFunction::indicator(&c, edges)?;
    let r = check_weighted_pl(&f, &g, &m, &ProductMeasure::standard_gaussian(2), 0.3, 0.4)?;
    println!(
        "weighted Prékopa–Leindler at p = 0.4: lhs {:.10} rhs {:.10} {:?}",
        r.lhs, r.rhs, r.verdict
    );
    Ok(())
}
