//! Helpers shared by the CLI test binaries: running the `sbs` executable
//! and validating its JSON output against the shipped schemas.

use serde_json::Value;
use std::path::Path;
use std::process::Output;

/// Run the compiled `sbs` binary with colour disabled and capture the
/// result.
pub fn sbs(args: &[&str]) -> Output {
    sbs_with_env(args, &[("SBS_COLOR", "0")])
}

pub fn sbs_with_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = std::process::Command::new(env!("CARGO_BIN_EXE_sbs"));
    cmd.args(args);
    for (key, value) in env {
        cmd.env(key, value);
    }
    cmd.output().expect("the sbs binary runs")
}

pub fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("stdout is UTF-8")
}

pub fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("stderr is UTF-8")
}

pub fn exit_code(output: &Output) -> i32 {
    output.status.code().expect("the sbs binary exits normally")
}

/// Load one of the schemas shipped with the crate.
pub fn schema(name: &str) -> Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    serde_json::from_str(&text).unwrap_or_else(|e| panic!("{} is valid JSON: {e}", path.display()))
}

/// Check `value` against the subset of JSON Schema the shipped schemas
/// use: `type` (single or list), `enum`, `properties` + `required` +
/// boolean `additionalProperties`, `items`, `minItems`/`maxItems`, and
/// `minimum`. Returns the first violation found.
pub fn validate(schema: &Value, value: &Value) -> Result<(), String> {
    validate_at(schema, value, "$")
}

fn validate_at(schema: &Value, value: &Value, path: &str) -> Result<(), String> {
    let obj = schema.as_object().ok_or_else(|| format!("{path}: schema is not an object"))?;

    if let Some(allowed) = obj.get("enum") {
        let list = allowed.as_array().expect("enum lists its values");
        if !list.contains(value) {
            return Err(format!("{path}: {value} is not one of {allowed}"));
        }
    }

    if let Some(ty) = obj.get("type") {
        let names: Vec<&str> = match ty {
            Value::String(s) => vec![s.as_str()],
            Value::Array(list) => list.iter().filter_map(Value::as_str).collect(),
            _ => return Err(format!("{path}: malformed type keyword")),
        };
        if !names.iter().any(|n| matches_type(n, value)) {
            return Err(format!("{path}: expected type {names:?}, got {value}"));
        }
    }

    if let Some(min) = obj.get("minimum").and_then(Value::as_i64) {
        if let Some(n) = value.as_i64() {
            if n < min {
                return Err(format!("{path}: {n} is below the minimum {min}"));
            }
        }
    }

    if let Some(map) = value.as_object() {
        if let Some(required) = obj.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !map.contains_key(key) {
                    return Err(format!("{path}: missing required property {key:?}"));
                }
            }
        }
        let props = obj.get("properties").and_then(Value::as_object);
        if obj.get("additionalProperties").and_then(Value::as_bool) == Some(false) {
            for key in map.keys() {
                if props.map_or(true, |p| !p.contains_key(key)) {
                    return Err(format!("{path}: unexpected property {key:?}"));
                }
            }
        }
        if let Some(props) = props {
            for (key, sub) in props {
                if let Some(held) = map.get(key) {
                    validate_at(sub, held, &format!("{path}.{key}"))?;
                }
            }
        }
    }

    if let Some(list) = value.as_array() {
        if let Some(min) = obj.get("minItems").and_then(Value::as_u64) {
            if (list.len() as u64) < min {
                return Err(format!("{path}: fewer than {min} items"));
            }
        }
        if let Some(max) = obj.get("maxItems").and_then(Value::as_u64) {
            if (list.len() as u64) > max {
                return Err(format!("{path}: more than {max} items"));
            }
        }
        if let Some(item_schema) = obj.get("items") {
            for (k, item) in list.iter().enumerate() {
                validate_at(item_schema, item, &format!("{path}[{k}]"))?;
            }
        }
    }

    Ok(())
}

fn matches_type(name: &str, value: &Value) -> bool {
    match name {
        "object" => value.is_object(),
        "array" => value.is_array(),
        "string" => value.is_string(),
        "integer" => value.is_i64() || value.is_u64(),
        "number" => value.is_number(),
        "boolean" => value.is_boolean(),
        "null" => value.is_null(),
        _ => false,
    }
}

/// A light well-formedness check on DOT output: a named digraph whose
/// braces and brackets balance and whose body lines end in semicolons.
pub fn assert_parses_as_dot(text: &str) {
    assert!(text.starts_with("digraph "), "DOT output opens a digraph: {text:?}");
    let mut depth = 0i32;
    for ch in text.chars() {
        match ch {
            '{' => depth += 1,
            '}' => depth -= 1,
            _ => {}
        }
        assert!(depth >= 0, "unbalanced braces in DOT output");
    }
    assert_eq!(depth, 0, "unbalanced braces in DOT output");
    for line in text.lines().skip(1) {
        let line = line.trim();
        if line.is_empty() || line == "}" {
            continue;
        }
        assert!(
            line.ends_with(';') || line.ends_with('{'),
            "DOT line is not terminated: {line:?}"
        );
    }
}
