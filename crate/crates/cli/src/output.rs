//! Rendering of result documents.

use serde_json::Value;

/// Compact JSON, one document per line.
pub fn json(v: &Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

/// Aligned `key  value` lines; arrays of objects become indented tables.
pub fn table(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(map) => {
            let width = map.keys().map(|k| k.chars().count()).max().unwrap_or(0);
            for (k, val) in map {
                match val {
                    Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                        out.push_str(&format!("{k}:\n"));
                        out.push_str(&rows(items));
                    }
                    _ => out.push_str(&format!("{k:<width$}  {}\n", scalar(val))),
                }
            }
        }
        other => {
            out.push_str(&scalar(other));
            out.push('\n');
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}

fn rows(items: &[Value]) -> String {
    let mut columns: Vec<String> = Vec::new();
    for item in items {
        for k in item.as_object().expect("objects").keys() {
            if !columns.contains(k) {
                columns.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = items
        .iter()
        .map(|item| columns.iter().map(|c| item.get(c).map_or_else(String::new, scalar)).collect())
        .collect();
    let widths: Vec<usize> = columns
        .iter()
        .enumerate()
        .map(|(i, c)| cells.iter().map(|r| r[i].chars().count()).chain([c.chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |fields: &[String]| {
        let parts: Vec<String> = fields.iter().zip(&widths).map(|(f, &w)| format!("{f:<w$}")).collect();
        format!("  {}\n", parts.join("  ").trim_end())
    };
    let mut out = line(&columns);
    for r in &cells {
        out.push_str(&line(r));
    }
    out
}
