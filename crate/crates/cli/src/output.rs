//! Number formatting and JSON envelopes shared by all commands.

use serde::Serialize;
use serde_json::{Map, Number, Value};

pub const SCHEMA_VERSION: &str = "1";

/// Rounds to 12 significant digits; negative zero becomes zero.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    let r: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

/// Shortest text for a rounded number, as it appears in JSON.
pub fn number(x: f64) -> String {
    match Number::from_f64(round12(x)) {
        Some(n) => n.to_string(),
        None => x.to_string(),
    }
}

fn round_all(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("float");
            Number::from_f64(round12(x)).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_all).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_all(v))).collect())
        }
        other => other,
    }
}

/// `record` as a JSON object with `schema_version` first and every float
/// rounded.
pub fn envelope(record: &impl Serialize) -> Value {
    let mut out = Map::new();
    out.insert(
        "schema_version".into(),
        Value::String(SCHEMA_VERSION.into()),
    );
    match round_all(serde_json::to_value(record).expect("records serialise")) {
        Value::Object(fields) => out.extend(fields),
        other => {
            out.insert("value".into(), other);
        }
    }
    Value::Object(out)
}

pub fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialise")
}
