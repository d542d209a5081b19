//! Exact, quadrature and Monte Carlo evaluation of measures of bodies.

use bmlab::geometry::{ball_polygon, Body, BoxIdeal};
use bmlab::measures::{Density1D, EvalConfig, McConfig, Measure, PlanarDensity, ProductMeasure};

fn main() -> bmlab::Result<()> {
    let cfg = EvalConfig::default();

    let staircase = Body::Ideal(BoxIdeal::new(3, vec![vec![2.0, 1.0, 0.5], vec![0.5, 2.0, 1.5]])?);
    let gauss = Measure::standard_gaussian(3);
    let exact = gauss.measure(&staircase, &cfg)?;
    let mc = gauss.measure_monte_carlo(
        &staircase,
        &McConfig {
            samples: 400_000,
            ..McConfig::default()
        },
    )?;
    println!(
        "γ₃(staircase): sweep {:.10} ± {:.1e}, Monte Carlo {:.5} ± {:.1e}",
        exact.value, exact.error, mc.value, mc.error
    );

    let mixed = Measure::Product(ProductMeasure::new(vec![
        Density1D::TwoLevel { p: 0.3, threshold: 1.0 },
        Density1D::Uniform { half_width: 2.5 },
        Density1D::Gaussian { sigma: 0.7 },
    ])?);
    let e = mixed.measure(&staircase, &cfg)?;
    println!("mixed product measure: {:.10} ± {:.1e}", e.value, e.error);

    let disc = Body::Polygon(ball_polygon(1.5, 1024)?);
    let planar = Measure::Planar(PlanarDensity::standard_gaussian());
    let e = planar.measure(&disc, &cfg)?;
    println!(
        "γ₂(1024-gon of radius 1.5) = {:.10} ± {:.1e}; disc: {:.10}",
        e.value,
        e.error,
        1.0 - (-1.125f64).exp()
    );

    let skewed = Measure::Planar(PlanarDensity::power(1.0, 1.5, [[2.0, 0.5], [0.5, 1.0]])?);
    let e = skewed.measure(&disc, &cfg)?;
    println!("power-law potential: {:.10} ± {:.1e}", e.value, e.error);
    Ok(())
}
