use std::fs;
use std::io::Write;
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Tsv,
    Text,
}

/// Leaves of a JSON value as `(dotted.path, rendered value)` pairs, in
/// document order.
fn flatten(prefix: &str, value: &Value, out: &mut Vec<(String, String)>) {
    let join = |key: &str| if prefix.is_empty() { key.to_string() } else { format!("{prefix}.{key}") };
    match value {
        Value::Object(map) if !map.is_empty() => map.iter().for_each(|(k, v)| flatten(&join(k), v, out)),
        Value::Array(items) if items.iter().any(|v| v.is_object() || v.is_array()) => {
            items.iter().enumerate().for_each(|(i, v)| flatten(&join(&i.to_string()), v, out))
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

pub fn render(format: Format, config: &Value, report: &Value) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({ "config": config, "report": report })).expect("json");
            s.push('\n');
            s
        }
        Format::Tsv | Format::Text => {
            let sep = if format == Format::Tsv { "\t" } else { " = " };
            let mut s = format!("# config {config}\n");
            let mut rows = Vec::new();
            flatten("", report, &mut rows);
            for (k, v) in rows {
                s.push_str(&format!("{k}{sep}{v}\n"));
            }
            s
        }
    }
}

pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flattening() {
        let report = json!({"a": 1, "b": {"c": [1, 2], "d": [{"e": "x"}]}});
        let text = render(Format::Tsv, &json!({"seed": 0}), &report);
        assert_eq!(text, "# config {\"seed\":0}\na\t1\nb.c\t[1,2]\nb.d.0.e\tx\n");
        assert!(render(Format::Json, &json!({}), &report).starts_with("{\n  \"config\""));
    }
}
