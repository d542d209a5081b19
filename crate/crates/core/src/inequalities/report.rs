use crate::measures::MeasureEstimate;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    Inconclusive,
}

impl Verdict {
    /// Holds iff `slack >= -budget`; non-finite inputs are inconclusive.
    pub fn from_slack(slack: f64, budget: f64) -> Verdict {
        if !slack.is_finite() || !budget.is_finite() || budget < 0.0 {
            Verdict::Inconclusive
        } else if slack >= -budget {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }
}

/// Outcome of one inequality check `lhs >= rhs`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub error_budget: f64,
    pub verdict: Verdict,
    pub context: Map<String, Value>,
}

/// Floating-point allowance for comparing two computed sides.
pub fn rounding_allowance(lhs: f64, rhs: f64) -> f64 {
    16.0 * f64::EPSILON * (lhs.abs() + rhs.abs())
}

impl InequalityReport {
    /// Builds a report; the rounding allowance is added to `budget`.
    pub fn new(lhs: f64, rhs: f64, budget: f64, context: Map<String, Value>) -> Self {
        let slack = lhs - rhs;
        let error_budget = budget + rounding_allowance(lhs, rhs);
        Self {
            lhs,
            rhs,
            slack,
            error_budget,
            verdict: Verdict::from_slack(slack, error_budget),
            context,
        }
    }

    /// A report for an identity `lhs = rhs`: holds iff `|slack| <= budget`.
    pub fn equality(lhs: f64, rhs: f64, budget: f64, mut context: Map<String, Value>) -> Self {
        context.insert("equality".into(), Value::Bool(true));
        let mut r = Self::new(lhs, rhs, budget, context);
        if r.verdict == Verdict::Holds && r.slack > r.error_budget {
            r.verdict = Verdict::Violated;
        }
        r
    }

    /// A report for a check that could not be evaluated.
    pub fn inconclusive(reason: impl Into<String>, mut context: Map<String, Value>) -> Self {
        context.insert("reason".into(), Value::String(reason.into()));
        Self {
            lhs: f64::NAN,
            rhs: f64::NAN,
            slack: f64::NAN,
            error_budget: f64::NAN,
            verdict: Verdict::Inconclusive,
            context,
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn violated(&self) -> bool {
        self.verdict == Verdict::Violated
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.context.insert(key.to_string(), value.into());
        self
    }
}

/// Image of an estimate under an increasing map, with the error propagated
/// over the interval `[lower, upper]`.
pub fn propagate(e: &MeasureEstimate, f: impl Fn(f64) -> f64) -> (f64, f64) {
    let v = f(e.value);
    let hi = f(e.upper());
    let lo = f(e.lower());
    (v, (hi - v).max(v - lo).max(0.0))
}

/// `x^s` for `x >= 0` with `0^s = 0`.
pub fn pow0(x: f64, s: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        x.powf(s)
    }
}

/// Builds a context map from key/value pairs.
#[macro_export]
macro_rules! context {
    ($($k:expr => $v:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut m = serde_json::Map::new();
        $( m.insert($k.to_string(), serde_json::json!($v)); )*
        m
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verdict_rules() {
        assert_eq!(Verdict::from_slack(0.0, 0.0), Verdict::Holds);
        assert_eq!(Verdict::from_slack(-1e-3, 1e-3), Verdict::Holds);
        assert_eq!(Verdict::from_slack(-2e-3, 1e-3), Verdict::Violated);
        assert_eq!(Verdict::from_slack(f64::NAN, 1.0), Verdict::Inconclusive);
        assert_eq!(Verdict::from_slack(1.0, f64::INFINITY), Verdict::Inconclusive);
    }

    #[test]
    fn report_serializes() {
        let r = InequalityReport::new(2.0, 1.0, 0.1, context!("lambda" => 0.5));
        let s = serde_json::to_value(&r).unwrap();
        assert_eq!(s["verdict"], "holds");
        assert_eq!(s["context"]["lambda"], 0.5);
    }
}
