//! The product-measure lemma behind the ideal case and its optimal exponent.

use super::report::{pow0, InequalityReport};
use crate::context;
use crate::error::{check_lambda, Error, Result};
use crate::geometry::Body;
use crate::measures::{EvalConfig, Measure};

/// `[(λ/p)^p ((1-λ)/(1-p))^{1-p}]^n`, at most 1 by concavity of the logarithm.
pub fn pl_factor(lambda: f64, p: f64, n: usize) -> f64 {
    let l = p * (lambda / p).ln() + (1.0 - p) * ((1.0 - lambda) / (1.0 - p)).ln();
    (n as f64 * l).exp()
}

/// The exponent that turns the lemma into the Brunn–Minkowski inequality:
/// `p = λa / (λa + (1-λ)b)` with `a = μ(A)^{1/n}`, `b = μ(B)^{1/n}`.
pub fn optimal_p(lambda: f64, ma: f64, mb: f64, n: usize) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 1.0) {
        return Err(Error::OutOfRange {
            name: "lambda",
            value: lambda,
        });
    }
    for (name, v) in [("mu_a", ma), ("mu_b", mb)] {
        if !(v > 0.0 && v.is_finite()) {
            return Err(Error::OutOfRange { name, value: v });
        }
    }
    let s = 1.0 / n as f64;
    let a = lambda * ma.powf(s);
    let b = (1.0 - lambda) * mb.powf(s);
    Ok(a / (a + b))
}

/// The lemma's lower bound `pl_factor · μ(A)^p μ(B)^{1-p}`.
pub fn lemma_bound(lambda: f64, p: f64, ma: f64, mb: f64, n: usize) -> f64 {
    pl_factor(lambda, p, n) * pow0(ma, p) * pow0(mb, 1.0 - p)
}

/// `{0.01, …, 0.99}`.
pub fn p_grid() -> Vec<f64> {
    (1..100).map(|k| k as f64 / 100.0).collect()
}

/// Supremum of [`lemma_bound`] over the p-grid together with [`optimal_p`];
/// returns `(argmax, max)`.
pub fn lemma_supremum(lambda: f64, ma: f64, mb: f64, n: usize) -> (f64, f64) {
    let mut ps = p_grid();
    if let Ok(p) = optimal_p(lambda, ma, mb, n) {
        ps.push(p);
    }
    ps.into_iter()
        .map(|p| (p, lemma_bound(lambda, p, ma, mb, n)))
        .fold(
            (f64::NAN, f64::NEG_INFINITY),
            |best, c| if c.1 > best.1 { c } else { best },
        )
}

/// `μ(λA + (1-λ)B) >= pl_factor(λ,p,n) μ(A)^p μ(B)^{1-p}` for ideals under a
/// product measure.
pub fn check_lemma_main(m: &Measure, a: &Body, b: &Body, lambda: f64, p: f64, cfg: &EvalConfig) -> InequalityReport {
    let n = a.dim();
    let ctx = context!("lambda" => lambda, "p" => p, "n" => n, "class" => a.class_name(), "measure" => m);
    let run = || -> Result<InequalityReport> {
        check_lambda(lambda)?;
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::OutOfRange { name: "p", value: p });
        }
        if !matches!((m, a, b), (Measure::Product(_), Body::Ideal(_), Body::Ideal(_))) {
            return Err(Error::ClassMismatch(
                "the lemma is stated for ideals under a product measure".into(),
            ));
        }
        let c = Body::combine(a, b, lambda)?;
        let (ec, ea, eb) = (m.measure(&c, cfg)?, m.measure(a, cfg)?, m.measure(b, cfg)?);
        let rhs = lemma_bound(lambda, p, ea.value, eb.value, n);
        let rhs_err = (lemma_bound(lambda, p, ea.upper(), eb.upper(), n) - rhs)
            .max(rhs - lemma_bound(lambda, p, ea.lower(), eb.lower(), n));
        Ok(InequalityReport::new(ec.value, rhs, ec.error + rhs_err, ctx.clone())
            .with("pl_factor", pl_factor(lambda, p, n))
            .with("measure_a", ea.value)
            .with("measure_b", eb.value))
    };
    run().unwrap_or_else(|e| InequalityReport::inconclusive(e.to_string(), ctx))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(optimal_p(0.5, 3.0, 3.0, 2).unwrap(), 0.5);
        // 16^{1/4} = 2, so p = 2 / (2 + 1)
        assert!((optimal_p(0.5, 16.0, 1.0, 4).unwrap() - 2.0 / 3.0).abs() < 1e-15);
        assert!((pl_factor(0.3, 0.3, 3) - 1.0).abs() < 1e-15);
        let direct = 2f64.powf(0.25) * (2.0f64 / 3.0).powf(0.75);
        assert!((pl_factor(0.5, 0.25, 1) - direct).abs() < 1e-15);
        assert!(optimal_p(0.5, 0.0, 1.0, 2).is_err());
    }

    #[test]
    fn optimal_p_recovers_bm() {
        for (l, a, b, n) in [(0.3, 2.0, 0.7, 3), (0.8, 0.01, 5.0, 2), (0.5, 1.0, 1.0, 1)] {
            let p = optimal_p(l, a, b, n).unwrap();
            let s = 1.0 / n as f64;
            let bm = (l * f64::powf(a, s) + (1.0 - l) * f64::powf(b, s)).powi(n as i32);
            assert!((lemma_bound(l, p, a, b, n) / bm - 1.0).abs() < 1e-12);
        }
    }
}
