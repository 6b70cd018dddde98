use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Json,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

impl Check {
    pub fn new(name: impl Into<String>, expected: impl Serialize, actual: impl Serialize) -> Self {
        let expected = serde_json::to_value(expected).unwrap_or(Value::Null);
        let actual = serde_json::to_value(actual).unwrap_or(Value::Null);
        let pass = expected == actual;
        Check {
            name: name.into(),
            expected,
            actual,
            pass,
        }
    }

    /// A check whose pass flag is decided by the caller.
    pub fn with_pass(name: impl Into<String>, expected: impl Serialize, actual: impl Serialize, pass: bool) -> Self {
        Check {
            pass,
            ..Check::new(name, expected, actual)
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub fields: Map<String, Value>,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            params: Map::new(),
            fields: Map::new(),
            checks: Vec::new(),
            elapsed_ms: 0,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.params
            .insert(key.into(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn field(&mut self, key: &str, value: impl Serialize) -> &mut Self {
        self.fields
            .insert(key.into(), serde_json::to_value(value).unwrap_or(Value::Null));
        self
    }

    pub fn check(&mut self, c: Check) -> &mut Self {
        self.checks.push(c);
        self
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// `{command, params, <result fields>, checks, pass, elapsed_ms}`.
    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), Value::String(self.command.clone()));
        out.insert("params".into(), Value::Object(self.params.clone()));
        for (k, v) in &self.fields {
            if !matches!(k.as_str(), "command" | "params" | "checks" | "pass" | "elapsed_ms") {
                out.insert(k.clone(), v.clone());
            }
        }
        out.insert(
            "checks".into(),
            serde_json::to_value(&self.checks).unwrap_or(Value::Array(Vec::new())),
        );
        out.insert("pass".into(), Value::Bool(self.pass()));
        out.insert("elapsed_ms".into(), Value::from(self.elapsed_ms as u64));
        Value::Object(out)
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).unwrap_or_default();
                s.push('\n');
                s
            }
            Format::Table => self.table(),
        }
    }

    fn table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "command: {}", self.command);
        if !self.params.is_empty() {
            let params: Vec<String> = self.params.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
            let _ = writeln!(s, "params:  {}", params.join(" "));
        }
        for (k, v) in &self.fields {
            let text = match v {
                Value::Array(items) if items.iter().all(Value::is_string) && !items.is_empty() => {
                    items.iter().map(plain).collect::<Vec<_>>().join("\n") + "\n"
                }
                _ => plain(v),
            };
            if text.contains('\n') {
                let _ = writeln!(s, "{k}:");
                for line in text.lines() {
                    let _ = writeln!(s, "  {line}");
                }
            } else {
                let _ = writeln!(s, "{k}: {text}");
            }
        }
        if !self.checks.is_empty() {
            let width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
            let _ = writeln!(s, "checks:");
            for c in &self.checks {
                let status = if c.pass { "PASS" } else { "FAIL" };
                let _ = writeln!(
                    s,
                    "  {status}  {:width$}  expected {}  actual {}",
                    c.name,
                    plain(&c.expected),
                    plain(&c.actual)
                );
            }
        }
        let _ = writeln!(s, "result: {} ({} ms)", if self.pass() { "PASS" } else { "FAIL" }, self.elapsed_ms);
        s
    }
}

/// Strings without quotes, arrays of scalars on one line, anything else as
/// compact JSON.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) if items.iter().all(|i| !i.is_array() && !i.is_object()) => {
            let parts: Vec<String> = items.iter().map(plain).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pass_flag_follows_checks() {
        let mut r = Report::new("x");
        r.check(Check::new("a", 1, 1));
        assert!(r.pass());
        r.check(Check::new("b", 1, 2));
        assert!(!r.pass());
        assert_eq!(r.to_json()["pass"], Value::Bool(false));
        assert!(r.emit(Format::Table).contains("FAIL"));
    }

    #[test]
    fn json_field_order_is_stable() {
        let mut r = Report::new("group order");
        r.param("n", 3).field("order", 24);
        let text = r.emit(Format::Json);
        let keys: Vec<String> = serde_json::from_str::<Map<String, Value>>(&text).unwrap().keys().cloned().collect();
        assert_eq!(keys, ["command", "params", "order", "checks", "pass", "elapsed_ms"]);
    }
}
