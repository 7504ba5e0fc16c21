//! Record rendering. Every number is rounded to 12 significant digits.

use serde_json::{json, Map, Value};

const SIGNIFICANT: usize = 12;

pub struct Record {
    pub value: Value,
    /// Render as a single `key=value` line in text mode.
    compact: bool,
}

impl Record {
    pub fn new(value: Value) -> Self {
        Self { value, compact: false }
    }

    pub fn line(value: Value) -> Self {
        Self { value, compact: true }
    }

    pub fn classification(
        class: String,
        canonical: Vec<f64>,
        rotation: [f64; 9],
        translation: [f64; 3],
        scale: f64,
        residual: f64,
    ) -> Self {
        Self::new(json!({
            "class": class,
            "canonical": canonical,
            "rotation": rotation,
            "translation": translation,
            "scale": scale,
            "residual": residual,
        }))
    }
}

pub fn round(x: f64) -> f64 {
    let r: f64 = format!("{:.*e}", SIGNIFICANT - 1, x).parse().unwrap_or(x);
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn rounded(v: &Value) -> Value {
    match v {
        Value::Number(n) => match n.as_f64() {
            Some(x) if !n.is_i64() && !n.is_u64() => json!(round(x)),
            _ => v.clone(),
        },
        Value::Array(a) => Value::Array(a.iter().map(rounded).collect()),
        Value::Object(o) => Value::Object(o.iter().map(|(k, x)| (k.clone(), rounded(x))).collect::<Map<_, _>>()),
        other => other.clone(),
    }
}

fn number(x: f64) -> String {
    if x != 0.0 && !(1e-4..1e12).contains(&x.abs()) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

fn text(v: &Value) -> String {
    match v {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        Value::Number(n) => n.as_f64().map_or_else(|| n.to_string(), number),
        Value::Array(a) if a.iter().all(|x| x.is_array()) => a.iter().map(text).collect::<Vec<_>>().join("; "),
        Value::Array(a) if a.iter().all(|x| !x.is_object()) => a.iter().map(text).collect::<Vec<_>>().join(" "),
        Value::Object(o) => o.iter().map(|(k, x)| format!("{k}={}", text(x))).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

pub fn emit(rec: &Record, json: bool) {
    let v = rounded(&rec.value);
    if json {
        println!("{v}");
        return;
    }
    match &v {
        Value::Object(o) if rec.compact => println!("{}", text(&Value::Object(o.clone()))),
        Value::Object(o) => {
            for (k, x) in o {
                println!("{k}: {}", text(x));
            }
        }
        other => println!("{}", text(other)),
    }
}
