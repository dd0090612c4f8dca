//! Report envelope and rendering. JSON output is canonical: serde_json
//! maps are ordered, groups are in invariant-factor form, and identical
//! requests produce byte-identical documents.

use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use ramforge_core::exactalg::FinAbGroup;
use ramforge_core::thh::GroupTable;

pub struct Report {
    pub value: Value,
}

impl Report {
    pub fn envelope(
        command: &str,
        request: Value,
        results: Value,
        warnings: Vec<String>,
        precision: Option<u32>,
    ) -> Report {
        let mut doc = Map::new();
        doc.insert("schema".into(), json!("ramforge/1"));
        doc.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        doc.insert("command".into(), json!(command));
        doc.insert("request".into(), request);
        doc.insert("results".into(), results);
        doc.insert("warnings".into(), json!(warnings));
        if let Some(n) = precision {
            doc.insert("precision".into(), json!(n));
        }
        Report {
            value: Value::Object(doc),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.value).expect("serializable report")
    }

    pub fn to_table_string(&self) -> String {
        let mut out = String::new();
        render(&self.value, 0, &mut out);
        out.trim_end().to_string()
    }
}

fn render(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                match val {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render(val, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", plain(val))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", plain(item))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", plain(v))),
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn bigint_json(n: &BigInt) -> Value {
    if let Ok(small) = i64::try_from(n.clone()) {
        json!(small)
    } else {
        json!(n.to_string())
    }
}

pub fn group_json(g: &FinAbGroup) -> Value {
    json!({
        "free_rank": g.free_rank(),
        "invariant_factors": g.invariants().iter().map(bigint_json).collect::<Vec<_>>(),
        "pretty": g.to_string(),
    })
}

pub fn table_json(t: &GroupTable) -> Value {
    let rows: Vec<Value> = t
        .entries
        .iter()
        .map(|(degree, (g, prov))| {
            json!({
                "degree": degree,
                "free_rank": g.free_rank(),
                "invariant_factors": g.invariants().iter().map(bigint_json).collect::<Vec<_>>(),
                "pretty": g.to_string(),
                "provenance": prov.as_str(),
            })
        })
        .collect();
    json!(rows)
}
