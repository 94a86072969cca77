use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// One verification outcome. `parameters.bound` says whether `metric` must
/// stay at or below (`"upper"`) or at or above (`"lower"`) `tolerance`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub parameters: Value,
    /// `NaN` when the check could not run; serialized as `null`.
    #[serde(deserialize_with = "null_as_nan")]
    pub metric: f64,
    pub tolerance: f64,
    pub pass: bool,
}

fn null_as_nan<'de, D: serde::Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
}

fn with_bound(mut parameters: Value, bound: &str) -> Value {
    if let Value::Object(map) = &mut parameters {
        map.insert("bound".into(), json!(bound));
        parameters
    } else {
        json!({ "bound": bound, "value": parameters })
    }
}

impl Report {
    pub fn at_most(check: &str, parameters: Value, metric: f64, tolerance: f64) -> Self {
        Self {
            check: check.to_owned(),
            parameters: with_bound(parameters, "upper"),
            metric,
            tolerance,
            pass: metric <= tolerance,
        }
    }

    pub fn at_least(check: &str, parameters: Value, metric: f64, tolerance: f64) -> Self {
        Self {
            check: check.to_owned(),
            parameters: with_bound(parameters, "lower"),
            metric,
            tolerance,
            pass: metric >= tolerance,
        }
    }

    /// A check that could not run because an operation failed.
    pub fn errored(check: &str, parameters: Value, message: String) -> Self {
        let mut parameters = with_bound(parameters, "upper");
        parameters["error"] = json!(message);
        Self {
            check: check.to_owned(),
            parameters,
            metric: f64::NAN,
            tolerance: 0.0,
            pass: false,
        }
    }
}

/// Largest element, `NaN` if any element is `NaN`.
pub(crate) fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(f64::NEG_INFINITY, |m, x| if x.is_nan() || m.is_nan() { f64::NAN } else { m.max(x) })
}

pub(crate) fn min_of(values: impl IntoIterator<Item = f64>) -> f64 {
    -max_of(values.into_iter().map(|x| -x))
}
