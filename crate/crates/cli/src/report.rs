use serde_json::{Map, Value};
use std::fmt::Write;

/// Ordered key-value report; keys print in insertion order.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub body: Map<String, Value>,
    pub passed: bool,
}

impl Report {
    pub fn new(command: &str) -> Self {
        let mut body = Map::new();
        body.insert("command".into(), Value::from(command));
        Report { body, passed: true }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.body.insert(key.into(), value.into());
    }

    /// Records a named check and folds it into the overall status.
    pub fn check(&mut self, key: &str, ok: bool) {
        self.passed &= ok;
        self.set(key, if ok { "pass" } else { "fail" });
    }

    pub fn finish(mut self) -> Self {
        let status = if self.passed { "pass" } else { "fail" };
        self.set("status", status);
        self
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.body).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        render_map(&self.body, 0, &mut out);
        out
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let parts: Vec<String> = items.iter().filter_map(scalar).collect();
            Some(format!("[{}]", parts.join(", ")))
        }
        _ => None,
    }
}

fn render_map(map: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    for (k, v) in map {
        match scalar(v) {
            Some(s) => writeln!(out, "{pad}{k}: {s}").unwrap(),
            None => {
                writeln!(out, "{pad}{k}:").unwrap();
                render_value(v, indent + 2, out);
            }
        }
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(m) => render_map(m, indent, out),
        Value::Array(items) => {
            for item in items {
                match scalar(item) {
                    Some(s) => writeln!(out, "{pad}- {s}").unwrap(),
                    None => {
                        writeln!(out, "{pad}-").unwrap();
                        render_value(item, indent + 2, out);
                    }
                }
            }
        }
        other => writeln!(out, "{pad}{}", scalar(other).unwrap_or_default()).unwrap(),
    }
}
