//! Seeded random instances for the randomized suites.
//!
//! Every trial draws from its own ChaCha stream keyed by the trial index, so
//! an instance does not depend on how trials are split across workers.

use crate::geometry::{unit, Body, BoxIdeal, SymmetricPolygon2};
use crate::measures::{Density1D, Measure, PlanarDensity, ProductMeasure};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Generator for trial `index` of a suite seeded with `seed`.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// An antichain of 1 to `max_generators` generators with coordinates in
/// `[0.1, 4]`.
pub fn random_ideal(rng: &mut impl Rng, n: usize, max_generators: usize) -> BoxIdeal {
    let k = rng.random_range(1..=max_generators.max(1));
    let gens = (0..k)
        .map(|_| (0..n).map(|_| rng.random_range(0.1..4.0)).collect())
        .collect();
    BoxIdeal::new(n, gens).expect("coordinates are positive")
}

/// A symmetric polygon cut out by 8 to 24 slabs with support values in
/// `[0.5, 2]`, in jittered but well-spread directions.
pub fn random_polygon(rng: &mut impl Rng) -> SymmetricPolygon2 {
    loop {
        let k = rng.random_range(8..=24);
        let slabs: Vec<_> = (0..k)
            .map(|i| {
                let theta = PI * (i as f64 + 0.8 * rng.random::<f64>()) / k as f64;
                (unit(theta), rng.random_range(0.5..2.0))
            })
            .collect();
        if let Ok(p) = SymmetricPolygon2::from_support_values(&slabs) {
            return p;
        }
    }
}

/// A random even, non-increasing one-dimensional density.
pub fn random_density(rng: &mut impl Rng) -> Density1D {
    match rng.random_range(0..4) {
        0 => Density1D::Gaussian {
            sigma: rng.random_range(0.5..2.0),
        },
        1 => Density1D::Uniform {
            half_width: rng.random_range(1.0..5.0),
        },
        2 => Density1D::TwoLevel {
            p: rng.random_range(0.0..1.0),
            threshold: rng.random_range(0.5..3.0),
        },
        _ => {
            let k = rng.random_range(2..6);
            let mut knots = vec![0.0];
            let mut values = vec![1.0];
            for _ in 1..k {
                knots.push(knots[knots.len() - 1] + rng.random_range(0.3..1.5));
                values.push(values[values.len() - 1] * rng.random_range(0.2..1.0));
            }
            Density1D::TableSpline { knots, values }
        }
    }
}

pub fn random_product(rng: &mut impl Rng, n: usize) -> ProductMeasure {
    ProductMeasure::new((0..n).map(|_| random_density(rng)).collect()).expect("valid components")
}

fn random_spd(rng: &mut impl Rng) -> [[f64; 2]; 2] {
    let theta = rng.random_range(0.0..PI);
    let (s, c) = theta.sin_cos();
    let (l1, l2) = (rng.random_range(0.4..2.0), rng.random_range(0.4..2.0));
    [
        [l1 * c * c + l2 * s * s, (l1 - l2) * c * s],
        [(l1 - l2) * c * s, l1 * s * s + l2 * c * c],
    ]
}

/// A random even log-concave planar density: Gaussian or power potential.
pub fn random_planar(rng: &mut impl Rng) -> PlanarDensity {
    if rng.random_bool(0.5) {
        PlanarDensity::gaussian(random_spd(rng)).expect("positive definite")
    } else {
        let alpha = rng.random_range(1.0..3.0);
        let c = rng.random_range(0.5..2.0);
        PlanarDensity::power(c, alpha, random_spd(rng)).expect("valid parameters")
    }
}

/// A random body of the named class (`"ideal"` or `"polygon"`).
pub fn random_body(rng: &mut impl Rng, class: BodyClass, n: usize) -> Body {
    match class {
        BodyClass::Ideal => Body::Ideal(random_ideal(rng, n, 12)),
        BodyClass::Polygon => Body::Polygon(random_polygon(rng)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyClass {
    Ideal,
    Polygon,
}

/// Measure families for random suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureFamily {
    /// Standard Gaussian product.
    GaussianProduct,
    /// Random product of even non-increasing densities.
    RandomProduct,
    /// Standard planar Gaussian.
    PlanarGaussian,
    /// Random even log-concave planar density.
    RandomPlanar,
    Lebesgue,
}

pub fn random_measure(rng: &mut impl Rng, family: MeasureFamily, n: usize) -> Measure {
    match family {
        MeasureFamily::GaussianProduct => Measure::standard_gaussian(n),
        MeasureFamily::RandomProduct => Measure::Product(random_product(rng, n)),
        MeasureFamily::PlanarGaussian => Measure::Planar(PlanarDensity::standard_gaussian()),
        MeasureFamily::RandomPlanar => Measure::Planar(random_planar(rng)),
        MeasureFamily::Lebesgue => Measure::lebesgue(n),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible() {
        let a = random_ideal(&mut trial_rng(42, 7), 3, 12);
        let b = random_ideal(&mut trial_rng(42, 7), 3, 12);
        assert_eq!(a, b);
        let c = random_ideal(&mut trial_rng(42, 8), 3, 12);
        assert_ne!(a, c);
    }

    #[test]
    fn samplers_produce_valid_objects() {
        let mut rng = trial_rng(1, 0);
        for _ in 0..50 {
            let p = random_polygon(&mut rng);
            assert!(p.inradius() >= 0.5 - 1e-9);
            random_product(&mut rng, 3)
                .components
                .iter()
                .for_each(|d| d.validate().unwrap());
            random_planar(&mut rng);
        }
    }
}
