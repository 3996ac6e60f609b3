//! Plain-text rendering for `--pretty`.

use std::fmt::Write;

use cliquebound::VerifyReport;
use serde_json::Value;

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_owned()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => {
            for (k, child) in map {
                flatten(&join(k), child, out);
            }
        }
        Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
            for (i, child) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), child, out);
            }
        }
        other => out.push((prefix.to_owned(), scalar(other))),
    }
}

/// One `key  value` line per leaf, keys dotted by path.
pub fn value(v: &Value) -> String {
    let mut rows = Vec::new();
    flatten("", v, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:width$}  {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

pub fn report(r: &VerifyReport) -> String {
    let mut s = String::new();
    let opt = |v: Option<i64>| v.map_or("-".to_owned(), |x| x.to_string());
    let space = match &r.space {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", scalar(v)))
            .collect::<Vec<_>>()
            .join(" "),
        other => scalar(other),
    };
    let _ = writeln!(s, "target       {}", r.target);
    let _ = writeln!(s, "space        {space}");
    let _ = writeln!(s, "examined     {}", r.examined);
    let _ = writeln!(s, "extremal     {}", opt(r.extremal_value));
    let _ = writeln!(s, "conjectured  {}", opt(r.conjectured_value));
    for (k, v) in &r.details {
        let _ = writeln!(s, "{k:12} {}", scalar(v));
    }
    let _ = writeln!(s, "millis       {}", r.millis);
    let _ = writeln!(s, "witnesses    {}", r.witnesses.len());
    for w in &r.witnesses {
        let fields = [
            w.label.clone(),
            w.graph6.clone(),
            w.value.map(|v| format!("value {v}")),
            w.key.as_ref().map(|k| format!("key {k}")),
        ];
        let line: Vec<String> = fields.into_iter().flatten().collect();
        let _ = writeln!(s, "  {}", line.join("  "));
    }
    let _ = writeln!(s, "violations   {}", r.violations.len());
    for v in &r.violations {
        let _ = writeln!(s, "  {v}");
    }
    let _ = write!(
        s,
        "status       {}",
        if r.passed() { "PASS" } else { "FAIL" }
    );
    s
}
