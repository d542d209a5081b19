//! Surface measure, the moment functional, first mixed volumes and
//! concavity profiles.

use bmlab::functionals::{
    check_infs_identity, check_isoperimetric_mix, check_minkowski_first, m_functional, parallel_volume_profile,
    surface_area, DEFAULT_BALL_VERTICES,
};
use bmlab::geometry::{ball_polygon, Body, SymmetricPolygon2};
use bmlab::measures::{EvalConfig, Measure, PlanarDensity};

fn main() -> bmlab::Result<()> {
    let cfg = EvalConfig::default();
    let g = Measure::Planar(PlanarDensity::standard_gaussian());
    let r: f64 = 1.0;
    let disc = Body::Polygon(ball_polygon(r, 1024)?);

    let s = surface_area(&g, &disc, DEFAULT_BALL_VERTICES, None, &cfg)?;
    let circle = r * (-r * r / 2.0).exp();
    println!("γ⁺(∂(rB)) = {:.6} ± {:.1e}; circle {circle:.6}", s.value, s.error);
    let m = m_functional(&g, &disc, &cfg)?;
    // M(rB) = ∫_{rB} |x|² dγ₂ = 2 - (r² + 2) e^{-r²/2}
    println!(
        "M(rB) = {:.8}; disc {:.8}",
        m.value,
        2.0 - (r * r + 2.0) * (-r * r / 2.0).exp()
    );

    let infs = check_infs_identity(&g, &disc, 1e-3, &cfg);
    println!("infs identity: {:.8} vs {:.8}, {:?}", infs.lhs, infs.rhs, infs.verdict);

    let square = Body::Polygon(SymmetricPolygon2::square(0.8)?);
    let mf = check_minkowski_first(&g, &square, &disc, &cfg);
    println!(
        "Minkowski first, square vs disc: slack {:+.3e}, {:?}",
        mf.slack, mf.verdict
    );
    let iso = check_isoperimetric_mix(&SymmetricPolygon2::rectangle(1.5, 0.6)?, 0.5, &cfg);
    println!("isoperimetric mix: slack {:+.3e}, {:?}", iso.slack, iso.verdict);

    let ts: Vec<f64> = (0..11).map(|i| 0.1 * i as f64).collect();
    let profile = parallel_volume_profile(&g, &square, &disc, &ts, &cfg)?;
    println!("t ↦ γ(A + tB)^{{1/2}} concave: {:?}", profile.verdict());
    profile.write_csv(std::io::stdout())?;
    Ok(())
}
