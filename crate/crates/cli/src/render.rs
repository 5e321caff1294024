use serde::Serialize;
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    BudgetExceeded,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::BudgetExceeded => 3,
        }
    }

    /// Fail beats budget, budget beats pass.
    pub fn and(self, other: Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fail, _) | (_, Fail) => Fail,
            (BudgetExceeded, _) | (_, BudgetExceeded) => BudgetExceeded,
            _ => Pass,
        }
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// What a command produced, before the envelope is added.
pub struct Outcome {
    pub verdict: Verdict,
    pub result: Value,
}

pub fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

pub fn json(report: &Value) -> String {
    serde_json::to_string_pretty(report).expect("values serialize")
}

/// Indented `key: value` lines. Arrays of scalars go on one line.
pub fn text(report: &Value) -> String {
    let mut out = String::new();
    match report {
        Value::Object(m) => object(&mut out, m, 0),
        other => {
            out.push_str(&scalar(other));
            out.push('\n');
        }
    }
    out
}

fn object(out: &mut String, m: &Map<String, Value>, depth: usize) {
    for (k, v) in m {
        entry(out, k, v, depth);
    }
}

fn entry(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(m) if m.is_empty() => out.push_str(&format!("{pad}{key}: {{}}\n")),
        Value::Object(m) => {
            out.push_str(&format!("{pad}{key}:\n"));
            object(out, m, depth + 1);
        }
        Value::Array(a) if a.iter().all(is_flat) => {
            let items: Vec<String> = a.iter().map(inline).collect();
            out.push_str(&format!("{pad}{key}: [{}]\n", items.join(", ")));
        }
        Value::Array(a) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for item in a {
                match item {
                    Value::Object(m) => {
                        let mut inner = String::new();
                        object(&mut inner, m, depth + 2);
                        let first = format!("{pad}  - {}", inner.trim_start());
                        out.push_str(&first);
                    }
                    other if is_flat(other) => out.push_str(&format!("{pad}  - {}\n", inline(other))),
                    other => entry(out, "-", other, depth + 1),
                }
            }
        }
        other => out.push_str(&format!("{pad}{key}: {}\n", scalar(other))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_array() && !x.is_object()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(a) => format!("{{{}}}", a.iter().map(scalar).collect::<Vec<_>>().join(",")),
        other => scalar(other),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}
