//! Standard normal distribution function and its inverse.

use crate::error::{Error, Result};
use std::f64::consts::{FRAC_1_SQRT_2, PI};

/// `Φ(t) = γ_1((-∞, t])`. Accepts `±∞`.
pub fn gaussian_cdf(t: f64) -> f64 {
    0.5 * libm::erfc(-t * FRAC_1_SQRT_2)
}

/// Standard normal density.
pub fn gaussian_pdf(t: f64) -> f64 {
    (-0.5 * t * t).exp() / (2.0 * PI).sqrt()
}

/// `Φ^{-1}(q)` for `q ∈ (0, 1)`: Acklam's rational approximation followed by
/// one Halley step.
pub fn gaussian_cdf_inv(q: f64) -> Result<f64> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::OutOfRange { name: "q", value: q });
    }
    const A: [f64; 6] = [
        -3.969683028665376e1,
        2.209460984245205e2,
        -2.759285104469687e2,
        1.383577518672690e2,
        -3.066479806614716e1,
        2.506628277459239,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e1,
        1.615858368580409e2,
        -1.556989798598866e2,
        6.680131188771972e1,
        -1.328068155288572e1,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-3,
        -3.223964580411365e-1,
        -2.400758277161838,
        -2.549732539343734,
        4.374664141464968,
        2.938163982698783,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-3,
        3.224671290700398e-1,
        2.445134137142996,
        3.754408661907416,
    ];
    const LOW: f64 = 0.02425;

    let tail = |r: f64| {
        let s = (-2.0 * r.ln()).sqrt();
        (((((C[0] * s + C[1]) * s + C[2]) * s + C[3]) * s + C[4]) * s + C[5])
            / ((((D[0] * s + D[1]) * s + D[2]) * s + D[3]) * s + 1.0)
    };
    let mut x = if q < LOW {
        tail(q)
    } else if q > 1.0 - LOW {
        -tail(1.0 - q)
    } else {
        let u = q - 0.5;
        let r = u * u;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * u
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    };
    // residual in the smaller tail keeps relative accuracy for q near 1
    let e = if x > 0.0 {
        (1.0 - q) - 0.5 * libm::erfc(x * FRAC_1_SQRT_2)
    } else {
        gaussian_cdf(x) - q
    };
    let u = e * (2.0 * PI).sqrt() * (0.5 * x * x).exp();
    x -= u / (1.0 + 0.5 * x * u);
    Ok(x)
}

/// `d/dq Φ^{-1}(q) = 1 / φ(Φ^{-1}(q))`.
pub fn gaussian_cdf_inv_derivative(q: f64) -> Result<f64> {
    Ok(1.0 / gaussian_pdf(gaussian_cdf_inv(q)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_values() {
        assert_eq!(gaussian_cdf(0.0), 0.5);
        assert!((gaussian_cdf(1.0) - 0.8413447460685429).abs() < 1e-15);
        assert_eq!(gaussian_cdf(f64::NEG_INFINITY), 0.0);
        assert_eq!(gaussian_cdf(f64::INFINITY), 1.0);
        assert!(gaussian_cdf_inv(0.5).unwrap().abs() < 1e-15);
    }

    #[test]
    fn inverse_round_trip() {
        for k in 1..2000 {
            let q = k as f64 / 2000.0;
            let x = gaussian_cdf_inv(q).unwrap();
            assert!((gaussian_cdf(x) - q).abs() <= 1e-12, "q={q}");
        }
        for q in [1e-300, 1e-100, 1e-20, 1e-8, 1.0 - 1e-8, 1.0 - 1e-15] {
            let x = gaussian_cdf_inv(q).unwrap();
            assert!((gaussian_cdf(x) - q).abs() <= 1e-12 * q.max(1e-3), "q={q}");
        }
    }

    #[test]
    fn inverse_rejects_endpoints() {
        assert!(gaussian_cdf_inv(0.0).is_err());
        assert!(gaussian_cdf_inv(1.0).is_err());
        assert!(gaussian_cdf_inv(f64::NAN).is_err());
    }
}
