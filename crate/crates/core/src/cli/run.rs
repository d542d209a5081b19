//! Job execution and report output.

use super::config::{Config, Expect, JobKind, JobSpec, ScenarioKind};
use crate::error::{Error, Result};
use crate::functionals::{check_infs_identity, check_minkowski_first};
use crate::geometry::{Body, DirectionGrid, MeanKind};
use crate::inequalities::{
    check_bm, check_ehrhard, check_lemma_main, check_log_bm, check_s_concavity, optimal_p, InequalityReport, Verdict,
};
use crate::measures::{EvalConfig, Measure};
use crate::sample::{random_body, random_measure, trial_rng};
use crate::scenarios::{
    example1_verify, example2_verify, gz_case_checks, nt_counterexample_search, ScenarioOutcome, Table,
};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use std::fs;
use std::io::Write;
use std::path::Path;

pub const DEFAULT_INFS_STEP: f64 = 1e-3;

/// One line of `report.jsonl`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportLine {
    pub job: usize,
    pub kind: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub slack: Option<f64>,
    pub error: Option<f64>,
    pub verdict: Verdict,
    pub context: Map<String, Value>,
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

impl ReportLine {
    pub fn new(job: usize, kind: &str, r: InequalityReport) -> Self {
        Self {
            job,
            kind: kind.to_string(),
            lhs: finite(r.lhs),
            rhs: finite(r.rhs),
            slack: finite(r.slack),
            error: finite(r.error_budget),
            verdict: r.verdict,
            context: r.context,
        }
    }
}

/// How a job compared with its expectation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum JobStatus {
    Met,
    Failed,
    /// Expected to hold but some check was inconclusive.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct JobResult {
    pub lines: Vec<ReportLine>,
    pub tables: Vec<Table>,
    pub status: JobStatus,
}

#[derive(Clone, Debug)]
pub struct RunOutput {
    pub lines: Vec<ReportLine>,
    pub tables: Vec<Table>,
    pub statuses: Vec<JobStatus>,
}

impl RunOutput {
    /// 0 when every expectation is met, 1 when one fails, 3 when a check
    /// expected to hold was inconclusive.
    pub fn exit_code(&self) -> i32 {
        if self.statuses.contains(&JobStatus::Failed) {
            1
        } else if self.statuses.contains(&JobStatus::Inconclusive) {
            3
        } else {
            0
        }
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.lines.iter().filter(|l| l.verdict == v).count()
    }

    /// The report as JSON lines, in job and instance order.
    pub fn report_jsonl(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            s.push_str(&serde_json::to_string(l).expect("report lines serialize"));
            s.push('\n');
        }
        s
    }

    /// Projection of the report onto `job,kind,lhs,rhs,slack,error,verdict`.
    pub fn report_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(["job", "kind", "lhs", "rhs", "slack", "error", "verdict"])
            .map_err(io)?;
        let num = |x: Option<f64>| x.map(|v| format!("{v}")).unwrap_or_default();
        let sci = |x: Option<f64>| x.map(|v| format!("{v:e}")).unwrap_or_default();
        for l in &self.lines {
            let verdict = serde_json::to_value(l.verdict).expect("verdict serializes");
            w.write_record([
                l.job.to_string(),
                l.kind.clone(),
                num(l.lhs),
                num(l.rhs),
                sci(l.slack),
                sci(l.error),
                verdict.as_str().unwrap_or_default().to_string(),
            ])
            .map_err(io)?;
        }
        w.into_inner().map_err(|e| Error::Io(e.to_string()))
    }

    /// Writes `report.jsonl`, `report.csv`, scenario tables and a
    /// `metadata.json` sidecar.
    pub fn write(&self, dir: &Path, metadata: &Value) -> Result<()> {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("report.jsonl"), self.report_jsonl())?;
        fs::write(dir.join("report.csv"), self.report_csv()?)?;
        for t in &self.tables {
            let mut f = fs::File::create(dir.join(&t.file_name))?;
            t.write_csv(&mut f)?;
            f.flush()?;
        }
        let meta = serde_json::to_string_pretty(metadata).expect("metadata serializes");
        fs::write(dir.join("metadata.json"), meta + "\n")?;
        Ok(())
    }
}

fn status(expect: Expect, reports: &[&InequalityReport]) -> JobStatus {
    match expect {
        Expect::Any => JobStatus::Met,
        Expect::Holds => {
            if reports.iter().any(|r| r.violated()) {
                JobStatus::Failed
            } else if reports.iter().any(|r| r.verdict == Verdict::Inconclusive) {
                JobStatus::Inconclusive
            } else {
                JobStatus::Met
            }
        }
        Expect::Violated => {
            if reports.iter().all(|r| r.violated()) {
                JobStatus::Met
            } else {
                JobStatus::Failed
            }
        }
    }
}

/// Runs one check on explicit bodies.
pub fn run_check(job: &JobSpec, m: &Measure, bodies: &[Body], lambda: f64, cfg: &EvalConfig) -> InequalityReport {
    let a = &bodies[0];
    match job.kind {
        JobKind::CheckBm => check_bm(m, a, &bodies[1], lambda, cfg),
        JobKind::CheckSConcavity => check_s_concavity(m, a, &bodies[1], lambda, job.s.unwrap_or(f64::NAN), cfg),
        JobKind::CheckLogBm => {
            let kind = job.mean.unwrap_or(match a {
                Body::Ideal(_) => MeanKind::Ideal,
                Body::Polygon(_) => MeanKind::Support,
            });
            check_log_bm(m, a, &bodies[1], lambda, kind, &DirectionGrid::default(), cfg)
        }
        JobKind::CheckEhrhard => check_ehrhard(a, &bodies[1], lambda, cfg),
        JobKind::CheckLemmaMain => {
            let p = job.p.map(Ok).unwrap_or_else(|| {
                let ma = m.measure(a, cfg)?.value;
                let mb = m.measure(&bodies[1], cfg)?.value;
                optimal_p(lambda, ma, mb, a.dim())
            });
            match p {
                Ok(p) => check_lemma_main(m, a, &bodies[1], lambda, p, cfg),
                Err(e) => InequalityReport::inconclusive(e.to_string(), crate::context!("lambda" => lambda)),
            }
        }
        JobKind::CheckMinkowskiFirst => check_minkowski_first(m, a, &bodies[1], cfg),
        JobKind::CheckInfsIdentity => check_infs_identity(m, a, job.h.unwrap_or(DEFAULT_INFS_STEP), cfg),
        JobKind::Scenario => unreachable!("scenario jobs are dispatched separately"),
    }
}

fn run_scenario(job: &JobSpec, seed: u64, cfg: &EvalConfig) -> Result<ScenarioOutcome> {
    match job.scenario.expect("validated") {
        ScenarioKind::Example1 => example1_verify(),
        ScenarioKind::Example2 => example2_verify(job.p.unwrap_or(0.5), job.lambda.unwrap_or(0.25)),
        ScenarioKind::NtSearch => {
            let grid = job.grid.clone().unwrap_or_default();
            Ok(nt_counterexample_search(&grid, &cfg.quad).outcome())
        }
        ScenarioKind::GzCases => {
            let trials = job.random.as_ref().map_or(100, |r| r.trials);
            Ok(gz_case_checks(seed, trials, cfg))
        }
    }
}

/// Trial `t` of job `j` draws from stream `(j << 32) | t`, so instances do
/// not depend on the worker count.
pub fn run_job(index: usize, job: &JobSpec, seed: u64, cfg: &EvalConfig) -> JobResult {
    let kind = job.kind.name();
    if job.kind == JobKind::Scenario {
        let name = match job.scenario.expect("validated") {
            ScenarioKind::Example1 => "example1",
            ScenarioKind::Example2 => "example2",
            ScenarioKind::NtSearch => "nt_search",
            ScenarioKind::GzCases => "gz_cases",
        };
        return match run_scenario(job, seed, cfg) {
            Err(e) => {
                let r = InequalityReport::inconclusive(e.to_string(), crate::context!("scenario" => name));
                let status = status(job.expect, &[&r]);
                JobResult {
                    lines: vec![ReportLine::new(index, name, r)],
                    tables: vec![],
                    status,
                }
            }
            Ok(out) => {
                let mut status = status(job.expect, &[&out.headline]);
                let supporting: Vec<&InequalityReport> = out.supporting.iter().map(|(_, r)| r).collect();
                if job.expect != Expect::Any && status == JobStatus::Met {
                    status = self::status(Expect::Holds, &supporting);
                }
                let mut lines = vec![ReportLine::new(index, name, out.headline)];
                lines.extend(
                    out.supporting
                        .into_iter()
                        .map(|(k, r)| ReportLine::new(index, &format!("{name}/{k}"), r)),
                );
                JobResult {
                    lines,
                    tables: out.table.into_iter().collect(),
                    status,
                }
            }
        };
    }
    let reports: Vec<InequalityReport> = match (&job.bodies, &job.random) {
        (Some(bodies), _) => {
            let m = job
                .measure
                .clone()
                .unwrap_or_else(|| Measure::standard_gaussian(bodies[0].dim()));
            vec![run_check(job, &m, bodies, job.lambda.unwrap_or(0.5), cfg)]
        }
        (None, Some(spec)) => (0..spec.trials)
            .into_par_iter()
            .map(|t| {
                let mut rng = trial_rng(seed, ((index as u64) << 32) | t);
                let n = job.random_n();
                let m = match &job.measure {
                    Some(m) => m.clone(),
                    None => random_measure(&mut rng, job.random_family(), n),
                };
                let class = job.random_class();
                let bodies: Vec<Body> = (0..job.kind.arity()).map(|_| random_body(&mut rng, class, n)).collect();
                let lambda = job.lambda.unwrap_or_else(|| rng.random_range(0.05..0.95));
                run_check(job, &m, &bodies, lambda, cfg).with("trial", t)
            })
            .collect(),
        (None, None) => unreachable!("validated"),
    };
    let status = status(job.expect, &reports.iter().collect::<Vec<_>>());
    JobResult {
        lines: reports.into_iter().map(|r| ReportLine::new(index, kind, r)).collect(),
        tables: vec![],
        status,
    }
}

/// Executes every job on a pool of `workers` threads.
pub fn run_config(config: &Config) -> Result<RunOutput> {
    let workers = config.workers.unwrap_or(1);
    let seed = config.seed.unwrap_or(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let results: Vec<JobResult> = pool.install(|| {
        config
            .jobs
            .iter()
            .enumerate()
            .map(|(i, j)| run_job(i, j, seed, &config.eval))
            .collect()
    });
    let mut out = RunOutput {
        lines: Vec::new(),
        tables: Vec::new(),
        statuses: Vec::new(),
    };
    for r in results {
        out.lines.extend(r.lines);
        out.tables.extend(r.tables);
        out.statuses.push(r.status);
    }
    Ok(out)
}
