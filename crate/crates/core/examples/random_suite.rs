//! A randomized suite driven through the configuration interface, as the
//! `bmlab run` subcommand does.

use bmlab::cli::{run_config, Config};
use bmlab::inequalities::Verdict;

fn main() -> bmlab::Result<()> {
    let config = Config::parse(
        r#"{
            "seed": 42,
            "workers": 2,
            "jobs": [
                {"kind": "check_bm", "random": {"trials": 100, "n": 3, "class": "ideal"}, "expect": "holds"},
                {"kind": "check_bm", "random": {"trials": 100, "class": "polygon"}, "expect": "holds"},
                {"kind": "check_log_bm", "random": {"trials": 50, "n": 2, "class": "ideal"}, "expect": "holds"},
                {"kind": "check_log_bm", "random": {"trials": 50, "n": 2, "class": "ideal", "measure_family": "random_product"}, "expect": "any"}
            ]
        }"#,
    )?;
    let out = run_config(&config)?;
    for (job, status) in out.statuses.iter().enumerate() {
        let lines: Vec<_> = out.lines.iter().filter(|l| l.job == job).collect();
        let holds = lines.iter().filter(|l| l.verdict == Verdict::Holds).count();
        println!("job {job}: {holds}/{} hold, {status:?}", lines.len());
    }
    // log-BM needs log-concavity; step densities in the last job break it
    let product = out
        .lines
        .iter()
        .filter(|l| l.job == 3 && l.verdict == Verdict::Violated);
    for l in product.take(3) {
        let families: Vec<_> = l.context["measure"]["components"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|c| c["family"].as_str().unwrap_or("?"))
            .collect();
        println!("  violated under {families:?}");
    }
    println!("exit code {}", out.exit_code());
    Ok(())
}
