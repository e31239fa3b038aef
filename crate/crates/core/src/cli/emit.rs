use std::fmt::Write;

use serde_json::Value;

use super::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Text,
}

/// Renders a report. JSON keys are sorted, so equal reports give equal
/// bytes; text is an indented listing with condition tallies as tables.
pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            text(&report.to_json(), 0, &mut out);
            out
        }
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| !x.is_array() && !x.is_object()) => {
            Some(format!("[{}]", a.iter().filter_map(scalar).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn is_tally_list(a: &[Value]) -> bool {
    !a.is_empty() && a.iter().all(|t| t.get("name").is_some() && t.get("tried").is_some() && t.get("violations").is_some())
}

fn tally_table(a: &[Value], depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let width = a.iter().filter_map(|t| t["name"].as_str()).map(|s| s.chars().count()).max().unwrap_or(4).max(9);
    writeln!(out, "{pad}{:<width$}  {:>6}  {:>7}  {:>10}", "condition", "tried", "vacuous", "violations").unwrap();
    for t in a {
        let v = t["violations"].as_array().map_or(0, |v| v.len());
        writeln!(out, "{pad}{:<width$}  {:>6}  {:>7}  {:>10}", t["name"].as_str().unwrap_or("?"), t["tried"], t["vacuous"], v).unwrap();
        for w in t["violations"].as_array().into_iter().flatten() {
            writeln!(out, "{pad}  witness: {}", w.as_str().unwrap_or_default()).unwrap();
        }
    }
}

fn text(v: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match (scalar(x), x) {
                    (Some(s), _) => writeln!(out, "{pad}{k}: {s}").unwrap(),
                    (None, Value::Array(a)) if is_tally_list(a) => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        tally_table(a, depth + 1, out);
                    }
                    (None, _) => {
                        writeln!(out, "{pad}{k}:").unwrap();
                        text(x, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                match scalar(x) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}[{i}]").unwrap();
                        text(x, depth + 1, out);
                    }
                }
            }
        }
        _ => writeln!(out, "{pad}{}", scalar(v).unwrap_or_default()).unwrap(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::{load, Report};

    #[test]
    fn empty_report_renders() {
        let sc = load(r#"{"vars":[],"algebra":{"kind":"MATRIX","eKind":"BASE","form":["1"]},"ordering":"ALL"}"#, "empty").unwrap();
        let r = Report::from_run(&sc);
        let j: Value = serde_json::from_str(&emit(&r, Format::Json)).unwrap();
        assert_eq!(j["runs"][0]["analyses"], serde_json::json!({}));
        assert_eq!(j["ok"], Value::Bool(true));
        assert!(emit(&r, Format::Text).contains("ok: true"));
    }

    #[test]
    fn json_is_deterministic_and_sorted() {
        let text = r#"{"vars":["x"],"algebra":{"kind":"MATRIX","eKind":"BASE","form":["1","x"]},"ordering":[1],"analyses":["gauge"],"seed":9,"sampleCount":4}"#;
        let a = emit(&Report::from_run(&load(text, "d").unwrap()), Format::Json);
        let b = emit(&Report::from_run(&load(text, "d").unwrap()), Format::Json);
        assert_eq!(a, b);
        let keys: Vec<String> = serde_json::from_str::<Value>(&a).unwrap().as_object().unwrap().keys().cloned().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        let t = emit(&Report::from_run(&load(text, "d").unwrap()), Format::Text);
        assert!(t.contains("condition") && t.contains("ring_oracle"));
    }
}
