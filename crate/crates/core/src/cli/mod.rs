//! Command-line front end: `run`, `check`, `suite` and `scenario`.
//!
//! Exit codes: 0 when every expectation is met, 1 when one fails, 2 for an
//! invalid configuration and 3 when a check expected to hold was
//! inconclusive.

pub mod config;
pub mod run;

pub use config::{Config, Expect, JobKind, JobSpec, RandomSpec, ScenarioKind};
pub use run::{run_config, run_job, ReportLine, RunOutput};

use crate::error::{Error, Result};
use crate::geometry::Body;
use crate::inequalities::Verdict;
use crate::measures::Measure;
use crate::sample::{BodyClass, MeasureFamily};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

pub const EXIT_CONFIG: i32 = 2;

/// Output directory of `run`, `suite` and `scenario` when neither the
/// config nor a flag sets one.
pub const DEFAULT_OUTPUT_DIR: &str = "bmlab-out";

#[derive(Parser, Debug)]
#[command(
    name = "bmlab",
    version,
    about = "Check Brunn-Minkowski type inequalities for measures"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone, Default)]
pub struct Common {
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Run the jobs of a JSON configuration.
    Run {
        config: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Run one check on explicit bodies given as JSON.
    Check {
        #[arg(long, value_enum)]
        kind: CheckArg,
        /// Measure as JSON; the standard Gaussian when omitted.
        #[arg(long)]
        measure: Option<String>,
        /// Body as JSON; repeat for the second body.
        #[arg(long = "body", required = true)]
        bodies: Vec<String>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, value_enum, default_value = "any")]
        expect: ExpectArg,
        #[command(flatten)]
        common: Common,
    },
    /// Run a check over seeded random instances.
    Suite {
        #[arg(long, value_enum, default_value = "bm")]
        check: CheckArg,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: u64,
        #[arg(long, value_enum, default_value = "ideal")]
        class: ClassArg,
        #[arg(long, value_enum)]
        measure_family: Option<FamilyArg>,
        #[arg(long)]
        lambda: Option<f64>,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long, value_enum, default_value = "holds")]
        expect: ExpectArg,
        #[command(flatten)]
        common: Common,
    },
    /// Reproduce a worked example or counterexample.
    Scenario {
        #[arg(value_enum)]
        name: ScenarioArg,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        lambda: Option<f64>,
        /// Instances per case for gz-cases.
        #[arg(long)]
        trials: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum CheckArg {
    Bm,
    SConcavity,
    LogBm,
    Ehrhard,
    LemmaMain,
    MinkowskiFirst,
    InfsIdentity,
}

impl From<CheckArg> for JobKind {
    fn from(c: CheckArg) -> Self {
        match c {
            CheckArg::Bm => JobKind::CheckBm,
            CheckArg::SConcavity => JobKind::CheckSConcavity,
            CheckArg::LogBm => JobKind::CheckLogBm,
            CheckArg::Ehrhard => JobKind::CheckEhrhard,
            CheckArg::LemmaMain => JobKind::CheckLemmaMain,
            CheckArg::MinkowskiFirst => JobKind::CheckMinkowskiFirst,
            CheckArg::InfsIdentity => JobKind::CheckInfsIdentity,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ExpectArg {
    Holds,
    Violated,
    Any,
}

impl From<ExpectArg> for Expect {
    fn from(e: ExpectArg) -> Self {
        match e {
            ExpectArg::Holds => Expect::Holds,
            ExpectArg::Violated => Expect::Violated,
            ExpectArg::Any => Expect::Any,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ClassArg {
    Ideal,
    Polygon,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FamilyArg {
    GaussianProduct,
    RandomProduct,
    PlanarGaussian,
    RandomPlanar,
    Lebesgue,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum ScenarioArg {
    Example1,
    Example2,
    NtSearch,
    GzCases,
}

fn job(kind: JobKind) -> JobSpec {
    JobSpec {
        kind,
        measure: None,
        bodies: None,
        random: None,
        lambda: None,
        s: None,
        mean: None,
        p: None,
        h: None,
        scenario: None,
        grid: None,
        expect: Expect::Any,
    }
}

/// Fills unset config keys from flags; the config wins on conflicts.
pub fn merge_flags(config: &mut Config, flags: &Common) {
    fn pick<T: PartialEq + Clone + std::fmt::Debug>(key: &str, cfg: &mut Option<T>, flag: &Option<T>) {
        match (cfg.as_ref(), flag) {
            (Some(c), Some(f)) if c != f => {
                eprintln!("warning: --{key} {f:?} ignored, the config sets {c:?}");
            }
            (None, Some(f)) => *cfg = Some(f.clone()),
            _ => {}
        }
    }
    pick("seed", &mut config.seed, &flags.seed);
    pick("workers", &mut config.workers, &flags.workers);
    pick("output-dir", &mut config.output_dir, &flags.output_dir);
}

fn parse_json<T: serde::de::DeserializeOwned>(what: &str, s: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| Error::Config(format!("{what}: {}", config::json_error(&e))))
}

/// Builds the configuration a subcommand stands for.
pub fn to_config(command: Command) -> Result<Config> {
    let empty = |common: Common, jobs| {
        Config {
            seed: None,
            workers: None,
            output_dir: None,
            eval: Default::default(),
            jobs,
        }
        .with_flags(&common)
    };
    let config = match command {
        Command::Run { config, common } => {
            let text =
                std::fs::read_to_string(&config).map_err(|e| Error::Config(format!("{}: {e}", config.display())))?;
            let mut c = Config::parse(&text)?;
            merge_flags(&mut c, &common);
            c
        }
        Command::Check {
            kind,
            measure,
            bodies,
            lambda,
            s,
            p,
            expect,
            common,
        } => {
            let mut j = job(kind.into());
            let bodies: Vec<Body> = bodies
                .iter()
                .enumerate()
                .map(|(i, b)| parse_json(&format!("body {i}"), b))
                .collect::<Result<_>>()?;
            j.measure = Some(match measure {
                Some(m) => parse_json::<Measure>("measure", &m)?,
                None => Measure::standard_gaussian(bodies.first().map_or(2, Body::dim)),
            });
            j.bodies = Some(bodies);
            j.lambda = lambda.or(Some(0.5));
            j.s = s;
            j.p = p;
            j.expect = expect.into();
            empty(common, vec![j])
        }
        Command::Suite {
            check,
            n,
            trials,
            class,
            measure_family,
            lambda,
            s,
            expect,
            common,
        } => {
            let mut j = job(check.into());
            j.random = Some(RandomSpec {
                trials,
                n: Some(n),
                class: Some(match class {
                    ClassArg::Ideal => BodyClass::Ideal,
                    ClassArg::Polygon => BodyClass::Polygon,
                }),
                measure_family: measure_family.map(|f| match f {
                    FamilyArg::GaussianProduct => MeasureFamily::GaussianProduct,
                    FamilyArg::RandomProduct => MeasureFamily::RandomProduct,
                    FamilyArg::PlanarGaussian => MeasureFamily::PlanarGaussian,
                    FamilyArg::RandomPlanar => MeasureFamily::RandomPlanar,
                    FamilyArg::Lebesgue => MeasureFamily::Lebesgue,
                }),
            });
            j.lambda = lambda;
            j.s = s;
            j.expect = expect.into();
            empty(common, vec![j])
        }
        Command::Scenario {
            name,
            p,
            lambda,
            trials,
            common,
        } => {
            let mut j = job(JobKind::Scenario);
            let kind = match name {
                ScenarioArg::Example1 => ScenarioKind::Example1,
                ScenarioArg::Example2 => ScenarioKind::Example2,
                ScenarioArg::NtSearch => ScenarioKind::NtSearch,
                ScenarioArg::GzCases => ScenarioKind::GzCases,
            };
            j.scenario = Some(kind);
            j.p = p;
            j.lambda = lambda;
            j.random = trials.map(|trials| RandomSpec {
                trials,
                n: None,
                class: None,
                measure_family: None,
            });
            j.expect = if kind.is_counterexample() {
                Expect::Violated
            } else {
                Expect::Holds
            };
            empty(common, vec![j])
        }
    };
    config.validate()?;
    Ok(config)
}

impl Config {
    fn with_flags(mut self, flags: &Common) -> Self {
        merge_flags(&mut self, flags);
        self
    }
}

fn unix_time() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_secs())
}

/// Runs a configuration and writes its outputs when it names a directory.
pub fn execute(config: &Config) -> Result<RunOutput> {
    let started = unix_time();
    let out = run_config(config)?;
    if let Some(dir) = &config.output_dir {
        let meta = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "started_unix": started,
            "finished_unix": unix_time(),
            "workers": config.workers.unwrap_or(1),
            "exit_code": out.exit_code(),
        });
        out.write(Path::new(dir), &meta)?;
    }
    Ok(out)
}

/// Entry point of the `bmlab` binary; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { 0 };
        }
    };
    let print_lines = matches!(cli.command, Command::Check { .. });
    let mut config = match to_config(cli.command) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_CONFIG;
        }
    };
    if !print_lines && config.output_dir.is_none() {
        config.output_dir = Some(PathBuf::from(DEFAULT_OUTPUT_DIR));
    }
    match execute(&config) {
        Ok(out) => {
            if print_lines {
                print!("{}", out.report_jsonl());
            }
            eprintln!(
                "{} checks: {} holds, {} violated, {} inconclusive",
                out.lines.len(),
                out.count(Verdict::Holds),
                out.count(Verdict::Violated),
                out.count(Verdict::Inconclusive)
            );
            out.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Config(_) => EXIT_CONFIG,
                _ => 1,
            }
        }
    }
}
