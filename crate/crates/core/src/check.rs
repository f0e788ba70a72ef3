//! Named expected-vs-computed comparisons collected into reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
}

impl Check {
    /// Passes iff `expected == computed`.
    pub fn equal<T: Serialize + PartialEq>(name: impl Into<String>, expected: T, computed: T) -> Self {
        let pass = expected == computed;
        Check {
            name: name.into(),
            expected: to_value(&expected),
            computed: to_value(&computed),
            pass,
        }
    }

    /// A predicate, with its statement as the expected value.
    pub fn holds<T: Serialize>(name: impl Into<String>, statement: &str, computed: T, pass: bool) -> Self {
        Check {
            name: name.into(),
            expected: Value::String(statement.to_string()),
            computed: to_value(&computed),
            pass,
        }
    }

    /// An error where a value was expected.
    pub fn failed(name: impl Into<String>, expected: &str, err: impl std::fmt::Display) -> Self {
        Check {
            name: name.into(),
            expected: Value::String(expected.to_string()),
            computed: Value::String(format!("error: {err}")),
            pass: false,
        }
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or_else(|e| Value::String(format!("unserializable: {e}")))
}
