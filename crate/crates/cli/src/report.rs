//! The run report emitted by every command.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub total_s: f64,
}

/// One command run. `results` is reproducible from `invocation` and `seed`;
/// `timings` is not.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    /// Full argument vector, program name included.
    pub invocation: Vec<String>,
    pub parameters: Value,
    pub seed: Option<u64>,
    pub version: String,
    pub results: Value,
    pub timings: Timings,
}

impl RunReport {
    /// Aligned `key  value` lines with dotted paths into nested results.
    pub fn table(&self) -> String {
        let mut rows = vec![
            ("command".to_string(), self.command.clone()),
            ("version".to_string(), self.version.clone()),
            (
                "seed".to_string(),
                self.seed.map_or("-".into(), |s| s.to_string()),
            ),
        ];
        flatten("parameters", &self.parameters, &mut rows);
        flatten("results", &self.results, &mut rows);
        rows.push((
            "timings.total_s".into(),
            format!("{:.3}", self.timings.total_s),
        ));
        let width = rows
            .iter()
            .map(|(k, _)| k.chars().count())
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            if v.contains('\n') {
                out += &format!("{k}:\n{v}\n");
            } else {
                out += &format!("{k:<width$}  {v}\n");
            }
        }
        out
    }
}

/// Arrays of scalars stay on one line; everything else is expanded.
fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                flatten(&format!("{prefix}.{k}"), x, rows);
            }
        }
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in xs.iter().enumerate() {
                flatten(&format!("{prefix}[{i}]"), x, rows);
            }
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        other => rows.push((prefix.to_string(), other.to_string())),
    }
}
