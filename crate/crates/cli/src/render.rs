//! Canonical JSON values and plain-text rendering.

use std::fmt::Write;

use k3_lattice::mukai::MukaiVector;
use k3_lattice::IntMatrix;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{Map, Value};

/// Integers that fit in an `i64` become JSON numbers, larger ones strings.
pub fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(n.to_string()),
    }
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| ints(r)).collect())
}

pub fn mukai(v: &MukaiVector) -> Value {
    let mut m = Map::new();
    m.insert("r".into(), int(&v.r));
    m.insert("d".into(), ints(&v.d));
    m.insert("s".into(), int(&v.s));
    Value::Object(m)
}

/// Sorted keys and two-space indentation; identical inputs give identical bytes.
pub fn to_json(command: &str, result: &Value) -> String {
    let mut m = Map::new();
    m.insert("command".into(), Value::String(command.into()));
    m.insert("result".into(), result.clone());
    serde_json::to_string_pretty(&Value::Object(m)).expect("values are serialisable")
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            format!("({})", parts.join(", "))
        }
        Value::Object(m) => {
            let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}={}", scalar(v))).collect();
            format!("{{{}}}", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn as_matrix(v: &Value) -> Option<Vec<Vec<String>>> {
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    rows.iter()
        .map(|r| {
            let r = r.as_array()?;
            r.iter().map(|x| (x.is_number() || x.is_string()).then(|| scalar(x))).collect()
        })
        .collect()
}

fn table(out: &mut String, indent: &str, rows: &[Vec<String>], labels: Option<&[String]>) {
    let row_labels: Vec<String> = match labels {
        Some(l) if l.len() == rows.len() => l.to_vec(),
        _ => vec![String::new(); rows.len()],
    };
    let lw = row_labels.iter().map(|s| s.chars().count()).max().unwrap_or(0);
    let ncols = rows[0].len();
    let mut widths: Vec<usize> = (0..ncols).map(|j| rows.iter().map(|r| r[j].chars().count()).max().unwrap_or(0)).collect();
    let header = labels.filter(|l| l.len() == ncols);
    if let Some(h) = header {
        for (w, l) in widths.iter_mut().zip(h) {
            *w = (*w).max(l.chars().count());
        }
        let cells: Vec<String> = h.iter().zip(&widths).map(|(l, w)| format!("{l:>w$}")).collect();
        let _ = writeln!(out, "{indent}{:lw$} | {}", "", cells.join("  "));
    }
    for (label, row) in row_labels.iter().zip(rows) {
        let cells: Vec<String> = row.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect();
        if lw > 0 {
            let _ = writeln!(out, "{indent}{label:lw$} | {}", cells.join("  "));
        } else {
            let _ = writeln!(out, "{indent}[{}]", cells.join("  "));
        }
    }
}

fn object(out: &mut String, indent: &str, m: &Map<String, Value>) {
    let labels: Option<Vec<String>> =
        m.get("labels").and_then(Value::as_array).map(|l| l.iter().map(scalar).collect());
    for (k, v) in m {
        if let Some(rows) = as_matrix(v).filter(|r| r.len() > 1 || k == "gram") {
            let _ = writeln!(out, "{indent}{k}:");
            let labels = if k == "gram" { labels.as_deref() } else { None };
            table(out, &format!("{indent}  "), &rows, labels);
        } else if let Value::Object(inner) = v {
            let _ = writeln!(out, "{indent}{k}:");
            object(out, &format!("{indent}  "), inner);
        } else {
            let _ = writeln!(out, "{indent}{k}: {}", scalar(v));
        }
    }
}

/// Plain text: one `key: value` line per field, matrices as aligned tables,
/// Gram matrices headed by their basis labels.
pub fn to_text(result: &Value) -> String {
    let mut out = String::new();
    match result {
        Value::Object(m) => object(&mut out, "", m),
        other => out.push_str(&scalar(other)),
    }
    out
}
