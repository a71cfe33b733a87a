//! Byte-stable JSON: object keys sorted, floats in `{:.16e}` (17 significant
//! digits), integers verbatim, non-finite numbers as `null`.

use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

pub fn to_value<S: Serialize>(s: &S) -> Value {
    serde_json::to_value(s).unwrap_or(Value::Null)
}

pub fn to_string(v: &Value) -> String {
    let mut out = String::new();
    write_value(v, 0, &mut out);
    out.push('\n');
    out
}

fn indent(level: usize, out: &mut String) {
    for _ in 0..level {
        out.push_str("  ");
    }
}

fn write_value(v: &Value, level: usize, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                out.push_str(&i.to_string());
            } else if let Some(u) = n.as_u64() {
                out.push_str(&u.to_string());
            } else {
                match n.as_f64() {
                    Some(x) if x.is_finite() => out.push_str(&format!("{x:.16e}")),
                    _ => out.push_str("null"),
                }
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string")),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            // numeric rows stay on one line
            if items.iter().all(|x| !x.is_object() && !x.is_array()) {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_value(x, level, out);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                indent(level + 1, out);
                write_value(x, level + 1, out);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            indent(level, out);
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                indent(level + 1, out);
                out.push_str(&serde_json::to_string(k).expect("string"));
                out.push_str(": ");
                write_value(&map[*k], level + 1, out);
                if i + 1 < keys.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            indent(level, out);
            out.push('}');
        }
    }
}

/// Writes to a temporary file next to `path`, then renames it into place.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_sorted_and_floats_fixed() {
        let v = json!({"b": 1.5, "a": [1, 2.0], "c": {"z": true, "y": null}});
        let s = to_string(&v);
        assert_eq!(
            s,
            "{\n  \"a\": [1, 2.0000000000000000e0],\n  \"b\": 1.5000000000000000e0,\n  \"c\": {\n    \"y\": null,\n    \"z\": true\n  }\n}\n"
        );
    }

    #[test]
    fn non_finite_is_null() {
        #[derive(Serialize)]
        struct S {
            x: f64,
        }
        assert_eq!(to_string(&to_value(&S { x: f64::NAN })), "{\n  \"x\": null\n}\n");
    }
}
