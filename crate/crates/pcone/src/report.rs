//! The JSON report envelope emitted by every CLI command: command echo,
//! configuration, results payload, verdict, wall clock, library version.
//! Reports are byte-identical across runs for a fixed configuration once the
//! wall-clock field is excluded.

use serde::Serialize;
use serde_json::{json, Value};

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config: Value,
    pub results: Value,
    pub verdict: String,
    pub wall_clock_seconds: f64,
    pub version: String,
}

impl Report {
    pub fn new(
        command: impl Into<String>,
        config: Value,
        results: Value,
        verdict: impl Into<String>,
        wall_clock_seconds: f64,
    ) -> Self {
        Report {
            command: command.into(),
            config,
            results,
            verdict: verdict.into(),
            wall_clock_seconds,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// The report with every timing field zeroed (the top-level wall clock
    /// and any nested `seconds` entries, as in verify-all payloads), for
    /// determinism checks.
    pub fn deterministic_view(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serialization cannot fail");
        zero_timing_fields(&mut v);
        v
    }
}

fn zero_timing_fields(v: &mut Value) {
    match v {
        Value::Object(map) => {
            for (key, val) in map.iter_mut() {
                if key == "wall_clock_seconds" || key == "seconds" {
                    *val = json!(0.0);
                } else {
                    zero_timing_fields(val);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                zero_timing_fields(item);
            }
        }
        _ => {}
    }
}
