use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

/// How a [`MeasureEstimate`] was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Closed-form product formulas over a disjoint box decomposition.
    Sweep,
    /// Adaptive triangle quadrature.
    Quadrature,
    /// Monte Carlo; the error is a 3-sigma half-width.
    Mc,
}

/// A measure value with an error bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureEstimate {
    pub value: f64,
    pub error: f64,
    pub method: Method,
    #[serde(default)]
    pub params: Map<String, Value>,
}

impl MeasureEstimate {
    pub fn new(value: f64, error: f64, method: Method) -> Self {
        Self {
            value,
            error: error.max(0.0),
            method,
            params: Map::new(),
        }
    }

    pub fn exact(value: f64) -> Self {
        Self::new(value, 0.0, Method::Sweep)
    }

    pub fn with_param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    /// `value - error`, clamped at 0.
    pub fn lower(&self) -> f64 {
        (self.value - self.error).max(0.0)
    }

    pub fn upper(&self) -> f64 {
        self.value + self.error
    }

    /// Whether a flag parameter is set (e.g. `"budget_exhausted"`).
    pub fn flagged(&self, key: &str) -> bool {
        self.params.get(key).and_then(Value::as_bool).unwrap_or(false)
    }
}
