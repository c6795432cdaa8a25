//! Rendering of run documents.

use serde_json::Value;
use sha2::{Digest, Sha256};

/// Pretty JSON with object keys in sorted order.
pub fn canonical_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(&sorted(v)).expect("JSON values serialize");
    s.push('\n');
    s
}

fn sorted(v: &Value) -> Value {
    match v {
        Value::Object(o) => {
            let mut keys: Vec<&String> = o.keys().collect();
            keys.sort();
            Value::Object(
                keys.into_iter()
                    .map(|k| (k.clone(), sorted(&o[k])))
                    .collect(),
            )
        }
        Value::Array(a) => Value::Array(a.iter().map(sorted).collect()),
        other => other.clone(),
    }
}

pub fn digest(v: &Value) -> String {
    let compact = serde_json::to_string(&sorted(v)).expect("JSON values serialize");
    hex::encode(Sha256::digest(compact.as_bytes()))
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.replace(['\t', '\n'], " "),
        other => other.to_string(),
    }
}

/// One line per dimension and per check:
/// `task<TAB>dim<TAB>name<TAB>value` and `task<TAB>check<TAB>name<TAB>status<TAB>witness`.
pub fn tsv(doc: &Value) -> String {
    let mut out = String::from("task\tkind\tname\tvalue\twitness\n");
    let tasks = doc["tasks"].as_array().cloned().unwrap_or_default();
    for t in &tasks {
        let name = cell(&t["task"]);
        if let Some(dims) = t["dimensions"].as_object() {
            for (k, v) in dims {
                out.push_str(&format!(
                    "{name}\tdim\t{}\t{}\t\n",
                    cell(&Value::String(k.clone())),
                    cell(v)
                ));
            }
        }
        for c in t["checks"].as_array().into_iter().flatten() {
            let w = c.get("witness").map(cell).unwrap_or_default();
            out.push_str(&format!(
                "{name}\tcheck\t{}\t{}\t{w}\n",
                cell(&c["name"]),
                cell(&c["status"])
            ));
        }
    }
    out.push_str(&format!(
        "run\tdigest\tinputs\t{}\t\n",
        cell(&doc["inputs_digest"])
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn key_order_does_not_change_digest() {
        let a: Value = serde_json::from_str(r#"{"b": 1, "a": {"y": 2, "x": 3}}"#).unwrap();
        let b = json!({"a": {"x": 3, "y": 2}, "b": 1});
        assert_eq!(digest(&a), digest(&b));
        assert_eq!(canonical_json(&a), canonical_json(&b));
        assert_eq!(digest(&a).len(), 64);
    }
}
