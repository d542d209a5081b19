//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use bmlab::cli::{run_config, Config};
use bmlab::functionals::{check_infs_identity, check_minkowski_first};
use bmlab::geometry::{ball_polygon, Body, BoxIdeal, ConvexRegion, DirectionGrid, MeanKind};
use bmlab::inequalities::checks::ehrhard_from;
use bmlab::inequalities::{check_bm, check_ehrhard, check_log_bm, lemma_supremum, InequalityReport, Verdict};
use bmlab::measures::{gaussian_cdf, Density1D, EvalConfig, Measure, PlanarDensity, ProductMeasure, QuadConfig};
use bmlab::sample::{random_ideal, random_polygon, random_product, trial_rng};
use bmlab::scenarios::{example1_verify, example2_verify, nt_counterexample_search, NtGrid};
use rand::Rng;
use serde_json::Value;
use std::time::Instant;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn ctx_f64(r: &InequalityReport, key: &str) -> f64 {
    r.context.get(key).and_then(Value::as_f64).unwrap_or(f64::NAN)
}

fn load(name: &str) -> Config {
    let path = format!("{}/examples/configs/{name}", env!("CARGO_MANIFEST_DIR"));
    Config::parse(&std::fs::read_to_string(&path).expect("config readable")).expect("config parses")
}

fn example1() -> Outcome {
    let t = Instant::now();
    let o = example1_verify().expect("example 1 evaluates");
    let secs = t.elapsed().as_secs_f64();
    let closed: Vec<_> = o
        .supporting
        .iter()
        .filter(|(k, _)| k.starts_with("closed_form"))
        .collect();
    let worst = closed.iter().map(|(_, r)| r.slack.abs()).fold(0.0, f64::max);
    let convex = o
        .supporting
        .iter()
        .find(|(k, _)| k == "strict_convexity")
        .map(|(_, r)| r.clone());
    let convex_ok = convex.as_ref().is_some_and(|r| r.holds());
    let pass = closed.len() == 21 && worst <= 1e-8 && convex_ok && o.headline.violated() && secs < 1.0;
    outcome(
        pass,
        format!(
            "example 1: {} points, max |Δ| = {worst:.2e} (≤ 1e-8), convexity certified = {convex_ok}, headline {:?}, {secs:.3}s (< 1s)",
            closed.len(),
            o.headline.verdict
        ),
    )
}

fn example2() -> Outcome {
    let t = Instant::now();
    let o = example2_verify(0.5, 0.25).expect("example 2 evaluates");
    let secs = t.elapsed().as_secs_f64();
    let closed: Vec<_> = o
        .supporting
        .iter()
        .filter(|(k, _)| k.starts_with("closed_form"))
        .collect();
    let worst = closed.iter().map(|(_, r)| r.slack.abs()).fold(0.0, f64::max);
    let lo = closed
        .iter()
        .map(|(_, r)| ctx_f64(r, "a"))
        .fold(f64::INFINITY, f64::min);
    let hi = closed
        .iter()
        .map(|(_, r)| ctx_f64(r, "a"))
        .fold(f64::NEG_INFINITY, f64::max);
    let disc = bmlab::scenarios::example2_discriminant(0.5, 0.25).expect("discriminant");
    let convex_ok = o.supporting.iter().any(|(k, r)| k == "strict_convexity" && r.holds());
    let pass = closed.len() == 21
        && worst <= 1e-6
        && lo == 4.0
        && hi == 8.0
        && (disc - 0.25).abs() <= 1e-12
        && convex_ok
        && o.headline.violated()
        && secs < 5.0;
    outcome(
        pass,
        format!(
            "example 2 (p=0.5, λ=0.25): a in [{lo}, {hi}], max |Δ| = {worst:.2e} (≤ 1e-6), discriminant = {disc} (0.25 ± 1e-12), convexity certified = {convex_ok}, {secs:.3}s (< 5s)"
        ),
    )
}

fn suite(config: &str, trials: usize, limit: f64, label: &str) -> Outcome {
    let c = load(config);
    let t = Instant::now();
    let out = run_config(&c).expect("suite runs");
    let secs = t.elapsed().as_secs_f64();
    let violated = out.count(Verdict::Violated);
    let inconclusive = out.count(Verdict::Inconclusive);
    let mut slacks: Vec<f64> = out.lines.iter().filter_map(|l| l.slack).collect();
    slacks.sort_by(f64::total_cmp);
    let median = slacks.get(slacks.len() / 2).copied().unwrap_or(f64::NAN);
    let pass = out.lines.len() == trials && violated == 0 && inconclusive == 0 && median > 0.0 && secs < limit;
    outcome(
        pass,
        format!(
            "{label}: {} instances, {violated} violated, {inconclusive} inconclusive, median slack {median:.3e} (> 0), {secs:.2}s (< {limit}s)",
            out.lines.len()
        ),
    )
}

// log-concave unconditional product: Gaussian or uniform components
fn log_concave_product(rng: &mut impl Rng, n: usize) -> Measure {
    let comps = (0..n)
        .map(|_| {
            if rng.random_bool(0.5) {
                Density1D::Gaussian {
                    sigma: rng.random_range(0.3..3.0),
                }
            } else {
                Density1D::Uniform {
                    half_width: rng.random_range(1.0..6.0),
                }
            }
        })
        .collect();
    Measure::Product(ProductMeasure::new(comps).expect("valid components"))
}

fn log_bm_and_reduction() -> Outcome {
    let cfg = EvalConfig::default();
    let grid = DirectionGrid::default();
    let mut violated = 0;
    let mut inconclusive = 0;
    for k in 0..500u64 {
        let mut rng = trial_rng(5, k);
        let n = rng.random_range(1..=4);
        let m = log_concave_product(&mut rng, n);
        let a = Body::Ideal(random_ideal(&mut rng, n, 12));
        let b = Body::Ideal(random_ideal(&mut rng, n, 12));
        let lambda = rng.random_range(0.05..0.95);
        match check_log_bm(&m, &a, &b, lambda, MeanKind::Ideal, &grid, &cfg).verdict {
            Verdict::Violated => violated += 1,
            Verdict::Inconclusive => inconclusive += 1,
            Verdict::Holds => {}
        }
    }
    let mut worst = 0.0f64;
    for k in 0..100u64 {
        let mut rng = trial_rng(55, k);
        let n = rng.random_range(1..=3);
        let m = Measure::Product(random_product(&mut rng, n));
        let a = Body::Ideal(random_ideal(&mut rng, n, 12));
        let b = Body::Ideal(random_ideal(&mut rng, n, 12));
        let lambda = rng.random_range(0.05..0.95);
        let r = check_bm(&m, &a, &b, lambda, &cfg);
        let (_, sup) = lemma_supremum(lambda, ctx_f64(&r, "measure_a"), ctx_f64(&r, "measure_b"), n);
        worst = worst.max((r.rhs.powi(n as i32) - sup).abs());
    }
    let pass = violated == 0 && inconclusive == 0 && worst <= 1e-9;
    outcome(
        pass,
        format!(
            "log-BM with the ideal mean: 500 instances, {violated} violated, {inconclusive} inconclusive; BM rhs^n vs lemma supremum on 100 instances: max gap {worst:.2e} (≤ 1e-9)"
        ),
    )
}

fn dominated(x: &BoxIdeal, y: &BoxIdeal, tol: f64) -> bool {
    x.generators().iter().all(|g| {
        y.generators()
            .iter()
            .any(|h| g.iter().zip(h).all(|(a, b)| *a <= b + tol * (1.0 + b.abs())))
    })
}

fn mean_laws() -> Outcome {
    let grid = DirectionGrid::default();
    let mut homogeneity_fail = 0;
    let mut inclusion_fail = 0;
    let mut hits = 0usize;
    for k in 0..400u64 {
        let mut rng = trial_rng(6, k);
        let (s, t) = (rng.random_range(0.2..5.0), rng.random_range(0.2..5.0));
        let lambda = rng.random_range(0.05..0.95);
        let (a, b, kind) = if k % 2 == 0 {
            let n = rng.random_range(1..=4);
            (
                Body::Ideal(random_ideal(&mut rng, n, 12)),
                Body::Ideal(random_ideal(&mut rng, n, 12)),
                MeanKind::Ideal,
            )
        } else {
            (
                Body::Polygon(random_polygon(&mut rng)),
                Body::Polygon(random_polygon(&mut rng)),
                MeanKind::Support,
            )
        };
        let (scaled, _) =
            Body::geometric_mean(&a.scale(s).unwrap(), &b.scale(t).unwrap(), lambda, kind, &grid).unwrap();
        let (m, _) = Body::geometric_mean(&a, &b, lambda, kind, &grid).unwrap();
        let expect = m.scale(s.powf(lambda) * t.powf(1.0 - lambda)).unwrap();
        let homogeneous = match (&scaled, &expect) {
            (Body::Ideal(x), Body::Ideal(y)) => dominated(x, y, 1e-10) && dominated(y, x, 1e-10),
            (Body::Polygon(x), Body::Polygon(y)) => x.hausdorff_distance(y) <= 1e-10 * y.circumradius(),
            _ => false,
        };
        if !homogeneous {
            homogeneity_fail += 1;
        }
        let c = Body::combine(&a, &b, lambda).unwrap();
        let r = match &m {
            Body::Ideal(i) => i.extent().into_iter().fold(0.0, f64::max),
            Body::Polygon(p) => p.circumradius(),
        };
        for _ in 0..1000 {
            let x: Vec<f64> = (0..a.dim()).map(|_| rng.random_range(-r..=r)).collect();
            if m.contains(&x) {
                hits += 1;
                let y: Vec<f64> = x.iter().map(|v| v * (1.0 - 1e-12)).collect();
                if !c.contains(&y) {
                    inclusion_fail += 1;
                }
            }
        }
    }
    let pass = homogeneity_fail == 0 && inclusion_fail == 0 && hits > 0;
    outcome(
        pass,
        format!(
            "geometric means: 200 ideal and 200 polygon instances, {homogeneity_fail} homogeneity failures (tol 1e-10), {inclusion_fail} inclusion failures in {hits} sampled mean points"
        ),
    )
}

fn infs_identity() -> Outcome {
    let cfg = EvalConfig::default();
    let h = 1e-3;
    let g2 = Measure::Planar(PlanarDensity::standard_gaussian());
    let mut worst = 0.0f64;
    let mut disc_worst = 0.0f64;
    let mut count = 0;
    let mut judge = |m: &Measure, a: &Body| -> f64 {
        let r = check_infs_identity(m, a, h, &cfg);
        let nmu = a.dim() as f64 * ctx_f64(&r, "measure");
        let rel = (r.lhs - r.rhs).abs() / nmu;
        worst = worst.max(if rel.is_finite() { rel } else { f64::INFINITY });
        count += 1;
        r.lhs
    };
    for r in [0.5, 1.0, 1.5, 2.0, 2.5] {
        let disc = Body::Polygon(ball_polygon(r, 1024).unwrap());
        let fd = judge(&g2, &disc);
        // d/ds (1 - e^{-s²r²/2}) at s = 1
        let oracle = r * r * (-r * r / 2.0).exp();
        disc_worst = disc_worst.max((fd - oracle).abs() / (2.0 * (1.0 - (-r * r / 2.0).exp())));
    }
    for k in 0..25u64 {
        let mut rng = trial_rng(7, k);
        judge(&g2, &Body::Polygon(random_polygon(&mut rng)));
    }
    for k in 0..20u64 {
        let mut rng = trial_rng(77, k);
        let n = rng.random_range(1..=4);
        judge(
            &Measure::standard_gaussian(n),
            &Body::Ideal(random_ideal(&mut rng, n, 12)),
        );
    }
    let pass = count == 50 && worst <= 1e-4 && disc_worst <= 1e-4;
    outcome(
        pass,
        format!(
            "derivative identity: {count} Gaussian instances, max |FD - (nμ - M)|/(nμ) = {worst:.2e}, disc vs closed form {disc_worst:.2e} (≤ 1e-4)"
        ),
    )
}

fn minkowski_first() -> Outcome {
    let cfg = EvalConfig::default();
    let g2 = Measure::Planar(PlanarDensity::standard_gaussian());
    let mut disc_worst = 0.0f64;
    for r in [0.5, 1.0, 1.5] {
        let disc = Body::Polygon(ball_polygon(r, 1024).unwrap());
        let rep = check_minkowski_first(&g2, &disc, &disc, &cfg);
        disc_worst = disc_worst.max(if rep.slack.is_finite() {
            rep.slack.abs()
        } else {
            f64::INFINITY
        });
    }
    let leb = Measure::Planar(PlanarDensity::Lebesgue);
    let mut leb_worst = 0.0f64;
    for k in 0..20u64 {
        let mut rng = trial_rng(8, k);
        let a = Body::Polygon(random_polygon(&mut rng));
        let rep = check_minkowski_first(&leb, &a, &a, &cfg);
        leb_worst = leb_worst.max(if rep.slack.is_finite() {
            rep.slack.abs()
        } else {
            f64::INFINITY
        });
    }
    let pass = disc_worst <= 1e-3 && leb_worst <= 1e-6;
    outcome(
        pass,
        format!(
            "mixed-volume inequality equality cases: Gaussian discs r in {{0.5, 1, 1.5}} max |slack| {disc_worst:.2e} (≤ 1e-3), Lebesgue A = B max |slack| {leb_worst:.2e} (≤ 1e-6)"
        ),
    )
}

fn ehrhard() -> Outcome {
    let cfg = EvalConfig::default();
    let mut violated = 0;
    let mut inconclusive = 0;
    for k in 0..200u64 {
        let mut rng = trial_rng(9, k);
        let a = Body::Polygon(random_polygon(&mut rng));
        let b = Body::Polygon(random_polygon(&mut rng));
        let lambda = rng.random_range(0.05..0.95);
        match check_ehrhard(&a, &b, lambda, &cfg).verdict {
            Verdict::Violated => violated += 1,
            Verdict::Inconclusive => inconclusive += 1,
            Verdict::Holds => {}
        }
    }
    // parallel half-planes {<x,u> <= c}: the combination is the half-plane at
    // the combined offset, and the measures are Φ(c)
    let g2 = Measure::Planar(PlanarDensity::standard_gaussian());
    let bound = 12.0;
    let mut worst = 0.0f64;
    let mut oracle_gap = 0.0f64;
    for k in 0..20u64 {
        let mut rng = trial_rng(99, k);
        let theta: f64 = rng.random_range(0.0..std::f64::consts::TAU);
        let u = [theta.cos(), theta.sin()];
        let (ca, cb) = (rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
        let lambda = rng.random_range(0.05..0.95);
        let cc = lambda * ca + (1.0 - lambda) * cb;
        let quad = QuadConfig::default();
        let eval = |c: f64| {
            g2.measure_truncated(&ConvexRegion::from_halfplanes(&[(u, c)], bound), bound, &quad)
                .unwrap()
        };
        let (ec, ea, eb) = (eval(cc), eval(ca), eval(cb));
        oracle_gap = oracle_gap.max((ec.value - gaussian_cdf(cc)).abs());
        let r = ehrhard_from(&ec, &ea, &eb, lambda, 1.0 - lambda, Default::default());
        worst = worst.max(if r.slack.is_finite() {
            r.slack.abs()
        } else {
            f64::INFINITY
        });
    }
    let pass = violated == 0 && inconclusive == 0 && worst <= 1e-6;
    outcome(
        pass,
        format!(
            "Ehrhard: 200 polygon pairs, {violated} violated, {inconclusive} inconclusive; parallel half-planes max |slack| {worst:.2e} (≤ 1e-6), max |γ - Φ| {oracle_gap:.1e}"
        ),
    )
}

fn nt() -> Outcome {
    let t = Instant::now();
    let s = nt_counterexample_search(&NtGrid::default(), &QuadConfig::default());
    let secs = t.elapsed().as_secs_f64();
    let Some(best) = s.best_cell() else {
        return outcome(false, "planar cone search: no finite cell".into());
    };
    let r = &best.report;
    let margin = -r.slack / r.error_budget;
    let confirmed = s
        .confirmation
        .as_ref()
        .is_some_and(|c| c.violated() && -c.slack > 5.0 * c.error_budget);
    let pass = r.violated() && margin > 5.0 && confirmed && s.is_stable() && secs < 600.0;
    outcome(
        pass,
        format!(
            "planar cone search: best α = {}°, ε = {:.4}, slack {:.3e}, budget {:.2e} (|slack|/budget = {margin:.0} > 5), confirmed at doubled precision = {confirmed}, {secs:.2}s (< 600s)",
            best.alpha_deg, best.epsilon, r.slack, r.error_budget
        ),
    )
}

fn determinism() -> Outcome {
    let text = r#"{
      "seed": 11,
      "jobs": [
        {"kind": "check_bm", "random": {"trials": 60, "n": 3, "class": "ideal", "measure_family": "random_product"}},
        {"kind": "check_bm", "random": {"trials": 40, "class": "polygon", "measure_family": "random_planar"}},
        {"kind": "check_log_bm", "random": {"trials": 30, "n": 2, "class": "ideal", "measure_family": "gaussian_product"}},
        {"kind": "scenario", "scenario": "gz_cases", "random": {"trials": 20}},
        {"kind": "scenario", "scenario": "nt_search"}
      ]
    }"#;
    let mut reports = Vec::new();
    for workers in [1, 2, 3, 8] {
        let mut c = Config::parse(text).expect("config parses");
        c.workers = Some(workers);
        reports.push(run_config(&c).expect("runs").report_jsonl());
    }
    let identical = reports.windows(2).all(|w| w[0] == w[1]);
    let lines = reports[0].lines().count();
    outcome(
        identical && lines > 0,
        format!("determinism: {lines} report lines byte-identical across 1, 2, 3 and 8 workers = {identical}"),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("example-1", example1),
        ("example-2", example2),
        ("product-ideal-bm", || {
            suite("product_ideals.json", 1000, 60.0, "BM for product measures on ideals")
        }),
        ("planar-polygon-bm", || {
            suite(
                "planar_polygons.json",
                500,
                120.0,
                "BM for planar log-concave measures on polygons",
            )
        }),
        ("log-bm-ideal", log_bm_and_reduction),
        ("mean-laws", mean_laws),
        ("derivative-identity", infs_identity),
        ("minkowski-first", minkowski_first),
        ("ehrhard", ehrhard),
        ("cone-counterexample", nt),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        if !o.pass {
            failed += 1;
        }
        println!(
            "{} [{:>2}] {name}: {}",
            if o.pass { "PASS" } else { "FAIL" },
            k + 1,
            o.detail
        );
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
