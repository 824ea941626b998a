//! Validates every golden JSON document against the shipped schema
//! (`schema/output.schema.json`) with a small structural validator covering
//! the subset of JSON Schema the file uses: type, required, properties,
//! additionalProperties, items, enum, $ref into #/definitions, and the
//! rational-string pattern.

use serde_json::Value;

fn schema() -> Value {
    let raw = std::fs::read_to_string(format!(
        "{}/schema/output.schema.json",
        env!("CARGO_MANIFEST_DIR")
    ))
    .expect("schema ships with the crate");
    serde_json::from_str(&raw).expect("schema is valid JSON")
}

fn resolve<'a>(root: &'a Value, node: &'a Value) -> &'a Value {
    if let Some(reference) = node.get("$ref").and_then(Value::as_str) {
        let path = reference
            .strip_prefix("#/")
            .expect("only intra-document refs");
        let mut cur = root;
        for part in path.split('/') {
            cur = &cur[part];
        }
        return cur;
    }
    node
}

fn rational_pattern_matches(s: &str) -> bool {
    // ^-?[0-9]+(/[0-9]+)?$
    let body = s.strip_prefix('-').unwrap_or(s);
    let (numer, denom) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|b| b.is_ascii_digit());
    digits(numer) && denom.is_none_or(digits)
}

fn validate(root: &Value, node: &Value, instance: &Value, path: &str, errors: &mut Vec<String>) {
    let node = resolve(root, node);
    if let Some(expected) = node.get("type").and_then(Value::as_str) {
        let ok = match expected {
            "object" => instance.is_object(),
            "array" => instance.is_array(),
            "string" => instance.is_string(),
            "number" => instance.is_number(),
            "integer" => instance.is_i64() || instance.is_u64(),
            "boolean" => instance.is_boolean(),
            other => panic!("unhandled type keyword {other}"),
        };
        if !ok {
            errors.push(format!("{path}: expected {expected}"));
            return;
        }
    }
    if let Some(allowed) = node.get("enum").and_then(Value::as_array) {
        if !allowed.contains(instance) {
            errors.push(format!("{path}: {instance} not in enum"));
        }
    }
    if let Some(pattern) = node.get("pattern").and_then(Value::as_str) {
        assert_eq!(
            pattern, "^-?[0-9]+(/[0-9]+)?$",
            "validator only knows the rational pattern"
        );
        if let Some(s) = instance.as_str() {
            if !rational_pattern_matches(s) {
                errors.push(format!("{path}: {s:?} does not match {pattern}"));
            }
        }
    }
    if let Some(obj) = instance.as_object() {
        let props = node.get("properties").and_then(Value::as_object);
        if let Some(required) = node.get("required").and_then(Value::as_array) {
            for key in required.iter().filter_map(Value::as_str) {
                if !obj.contains_key(key) {
                    errors.push(format!("{path}: missing required {key}"));
                }
            }
        }
        for (key, value) in obj {
            let sub = props.and_then(|p| p.get(key));
            match sub {
                Some(sub) => validate(root, sub, value, &format!("{path}/{key}"), errors),
                None => match node.get("additionalProperties") {
                    Some(Value::Bool(false)) => {
                        errors.push(format!("{path}: unexpected property {key}"))
                    }
                    Some(extra @ Value::Object(_)) => {
                        validate(root, extra, value, &format!("{path}/{key}"), errors)
                    }
                    _ => {}
                },
            }
        }
    }
    if let (Some(items), Some(array)) = (node.get("items"), instance.as_array()) {
        for (i, element) in array.iter().enumerate() {
            validate(root, items, element, &format!("{path}[{i}]"), errors);
        }
    }
}

fn validate_document(instance: &Value) -> Vec<String> {
    let schema = schema();
    let mut errors = Vec::new();
    validate(&schema, &schema, instance, "$", &mut errors);
    errors
}

#[test]
fn golden_documents_validate() {
    let dir = format!("{}/tests/golden", env!("CARGO_MANIFEST_DIR"));
    let mut seen = 0;
    for entry in std::fs::read_dir(dir).expect("golden directory exists") {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("json") {
            continue;
        }
        seen += 1;
        let doc: Value =
            serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
        let errors = validate_document(&doc);
        assert!(errors.is_empty(), "{}: {errors:?}", path.display());
    }
    assert!(seen >= 16, "expected the full golden set, found {seen}");
}

#[test]
fn live_output_validates() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_regsum"))
        .args([
            "remainder", "-m", "3", "--k-max", "12", "-x", "9/10", "--format", "json",
        ])
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(validate_document(&doc).is_empty());
}

#[test]
fn validator_rejects_malformed_records() {
    let bad: Value = serde_json::json!({
        "command": "teleport",
        "inputs": {},
        "results": [{ "name": "x", "method": "psychic" }],
        "extra": 1,
    });
    let errors = validate_document(&bad);
    assert!(errors.iter().any(|e| e.contains("not in enum")));
    assert!(errors.iter().any(|e| e.contains("unexpected property")));

    let bad_exact: Value = serde_json::json!({
        "command": "endpoint",
        "inputs": {},
        "results": [{ "name": "v", "exact": "0.5" }],
    });
    let errors = validate_document(&bad_exact);
    assert!(errors.iter().any(|e| e.contains("does not match")));
}
