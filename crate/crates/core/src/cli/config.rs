//! Run configuration: a seed, a worker count, an output directory and a list
//! of jobs.

use crate::error::{Error, Result};
use crate::geometry::{Body, MeanKind};
use crate::measures::{EvalConfig, Measure};
use crate::sample::{BodyClass, MeasureFamily};
use crate::scenarios::NtGrid;
use serde::{Deserialize, Serialize};
use std::path::PathBuf;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub workers: Option<usize>,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub eval: EvalConfig,
    pub jobs: Vec<JobSpec>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum JobKind {
    CheckBm,
    CheckSConcavity,
    CheckLogBm,
    CheckEhrhard,
    CheckLemmaMain,
    CheckMinkowskiFirst,
    CheckInfsIdentity,
    Scenario,
}

impl JobKind {
    pub fn name(self) -> &'static str {
        match self {
            JobKind::CheckBm => "check_bm",
            JobKind::CheckSConcavity => "check_s_concavity",
            JobKind::CheckLogBm => "check_log_bm",
            JobKind::CheckEhrhard => "check_ehrhard",
            JobKind::CheckLemmaMain => "check_lemma_main",
            JobKind::CheckMinkowskiFirst => "check_minkowski_first",
            JobKind::CheckInfsIdentity => "check_infs_identity",
            JobKind::Scenario => "scenario",
        }
    }

    /// Number of bodies the check takes.
    pub fn arity(self) -> usize {
        match self {
            JobKind::CheckInfsIdentity => 1,
            JobKind::Scenario => 0,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScenarioKind {
    Example1,
    Example2,
    #[serde(alias = "nt-search")]
    NtSearch,
    #[serde(alias = "gz-cases")]
    GzCases,
}

impl ScenarioKind {
    /// Whether the scenario demonstrates a violation.
    pub fn is_counterexample(self) -> bool {
        !matches!(self, ScenarioKind::GzCases)
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expect {
    Holds,
    Violated,
    #[default]
    Any,
}

/// Randomly generated instances; unset fields fall back to the job or to
/// defaults by body class.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomSpec {
    pub trials: u64,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub class: Option<BodyClass>,
    #[serde(default)]
    pub measure_family: Option<MeasureFamily>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub kind: JobKind,
    #[serde(default)]
    pub measure: Option<Measure>,
    #[serde(default)]
    pub bodies: Option<Vec<Body>>,
    #[serde(default)]
    pub random: Option<RandomSpec>,
    #[serde(default)]
    pub lambda: Option<f64>,
    /// Exponent for `check_s_concavity`.
    #[serde(default)]
    pub s: Option<f64>,
    /// Geometric mean for `check_log_bm`.
    #[serde(default)]
    pub mean: Option<MeanKind>,
    /// Lemma exponent; the optimal one when unset.
    #[serde(default)]
    pub p: Option<f64>,
    /// Step for `check_infs_identity`.
    #[serde(default)]
    pub h: Option<f64>,
    #[serde(default)]
    pub scenario: Option<ScenarioKind>,
    #[serde(default)]
    pub grid: Option<NtGrid>,
    #[serde(default)]
    pub expect: Expect,
}

impl JobSpec {
    pub fn random_class(&self) -> BodyClass {
        self.random.as_ref().and_then(|r| r.class).unwrap_or(BodyClass::Ideal)
    }

    pub fn random_n(&self) -> usize {
        self.random.as_ref().and_then(|r| r.n).unwrap_or(2)
    }

    pub fn random_family(&self) -> MeasureFamily {
        self.random
            .as_ref()
            .and_then(|r| r.measure_family)
            .unwrap_or(match self.random_class() {
                BodyClass::Ideal => MeasureFamily::GaussianProduct,
                BodyClass::Polygon => MeasureFamily::PlanarGaussian,
            })
    }

    fn validate(&self, i: usize) -> Result<()> {
        let err = |msg: String| Err(Error::Config(format!("job {i} ({}): {msg}", self.kind.name())));
        if let Some(l) = self.lambda {
            if !(l > 0.0 && l < 1.0) {
                return err(format!("lambda must lie in (0, 1), got {l}"));
            }
        }
        if self.kind == JobKind::Scenario {
            if self.scenario.is_none() {
                return err("missing \"scenario\"".into());
            }
            return Ok(());
        }
        if self.scenario.is_some() || self.grid.is_some() {
            return err("\"scenario\" and \"grid\" apply only to scenario jobs".into());
        }
        if self.kind == JobKind::CheckSConcavity && self.s.is_none() {
            return err("missing exponent \"s\"".into());
        }
        match (&self.bodies, &self.random) {
            (Some(_), Some(_)) => err("give either \"bodies\" or \"random\", not both".into()),
            (None, None) => err("missing \"bodies\" or \"random\"".into()),
            (Some(b), None) => {
                if b.len() != self.kind.arity() {
                    return err(format!("expected {} bodies, found {}", self.kind.arity(), b.len()));
                }
                if b.iter().any(|x| x.dim() != b[0].dim()) {
                    return err("bodies differ in dimension".into());
                }
                if self.lambda.is_none() && self.kind.arity() == 2 {
                    return err("missing \"lambda\"".into());
                }
                if self.measure.is_none() && self.kind != JobKind::CheckEhrhard {
                    return err("missing \"measure\"".into());
                }
                Ok(())
            }
            (None, Some(r)) => {
                if r.trials == 0 {
                    return err("trials must be positive".into());
                }
                let n = self.random_n();
                match self.random_class() {
                    BodyClass::Ideal if !(1..=4).contains(&n) => {
                        err(format!("random ideals need 1 <= n <= 4, got {n}"))
                    }
                    BodyClass::Polygon if n != 2 => err(format!("random polygons need n = 2, got {n}")),
                    _ => Ok(()),
                }
            }
        }
    }
}

/// `line L, column C: message` for a JSON error.
pub fn json_error(e: &serde_json::Error) -> String {
    let msg = e.to_string();
    let suffix = format!(" at line {} column {}", e.line(), e.column());
    let msg = msg.strip_suffix(&suffix).unwrap_or(&msg);
    format!("line {}, column {}: {msg}", e.line(), e.column())
}

impl Config {
    /// Parses and validates a configuration; syntax and schema errors carry
    /// the line and column.
    pub fn parse(text: &str) -> Result<Self> {
        let c: Config = serde_json::from_str(text).map_err(|e| Error::Config(json_error(&e)))?;
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers == Some(0) {
            return Err(Error::Config("workers must be positive".into()));
        }
        for (i, j) in self.jobs.iter().enumerate() {
            j.validate(i)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_minimal_config() {
        let c = Config::parse(
            r#"{"seed": 1, "jobs": [
                {"kind": "check_bm", "random": {"trials": 3, "n": 2}, "expect": "holds"},
                {"kind": "scenario", "scenario": "nt-search", "expect": "violated"}
            ]}"#,
        )
        .unwrap();
        assert_eq!(c.jobs.len(), 2);
        assert_eq!(c.jobs[1].scenario, Some(ScenarioKind::NtSearch));
    }

    #[test]
    fn schema_errors_carry_position() {
        let e = Config::parse("{\n  \"jobs\": [\n    {\"kind\": \"check_bn\"}\n  ]\n}").unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
        let e = Config::parse(r#"{"jobs": [], "seeds": 3}"#).unwrap_err();
        assert!(e.to_string().contains("seeds"), "{e}");
        let e =
            Config::parse(r#"{"jobs": [{"kind": "check_bm", "random": {"trials": 1, "class": "polygon", "n": 3}}]}"#)
                .unwrap_err();
        assert!(e.to_string().contains("job 0"), "{e}");
    }
}
