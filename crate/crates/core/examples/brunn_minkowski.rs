//! Brunn–Minkowski, s-concavity and Ehrhard checks on explicit pairs.

use bmlab::geometry::{Body, BoxIdeal, SymmetricPolygon2};
use bmlab::inequalities::{check_bm, check_ehrhard, check_s_concavity, lemma_supremum, InequalityReport};
use bmlab::measures::{EvalConfig, Measure, PlanarDensity};

fn show(name: &str, r: &InequalityReport) {
    println!(
        "{name:<28} lhs {:.10}  rhs {:.10}  slack {:+.3e}  budget {:.1e}  {:?}",
        r.lhs, r.rhs, r.slack, r.error_budget, r.verdict
    );
}

fn main() -> bmlab::Result<()> {
    let cfg = EvalConfig::default();

    let a = Body::Ideal(BoxIdeal::new(3, vec![vec![3.0, 0.4, 1.0], vec![0.5, 2.0, 2.0]])?);
    let b = Body::Ideal(BoxIdeal::from_box(vec![0.3, 1.0, 3.5])?);
    let gauss3 = Measure::standard_gaussian(3);
    let r = check_bm(&gauss3, &a, &b, 0.4, &cfg);
    show("BM, ideals under γ₃", &r);
    let ma = gauss3.measure(&a, &cfg)?.value;
    let mb = gauss3.measure(&b, &cfg)?.value;
    let (p, bound) = lemma_supremum(0.4, ma, mb, 3);
    println!(
        "  lemma supremum {bound:.10} at p = {p:.4} (cube of the BM right-hand side: {:.10})",
        r.rhs.powi(3)
    );

    let p1 = Body::Polygon(SymmetricPolygon2::rectangle(3.0, 0.3)?);
    let p2 = Body::Polygon(SymmetricPolygon2::diamond(1.2)?);
    let planar = Measure::Planar(PlanarDensity::power(1.0, 2.5, [[1.0, 0.0], [0.0, 1.0]])?);
    show("BM, polygons, power density", &check_bm(&planar, &p1, &p2, 0.5, &cfg));
    let (small, large) = (
        Body::Polygon(SymmetricPolygon2::square(1.0)?),
        Body::Polygon(SymmetricPolygon2::square(2.0)?),
    );
    show(
        "s = 1 fails for Lebesgue",
        &check_s_concavity(&Measure::lebesgue(2), &small, &large, 0.5, 1.0, &cfg),
    );
    show("Ehrhard, polygons", &check_ehrhard(&p1, &p2, 0.5, &cfg));
    Ok(())
}
