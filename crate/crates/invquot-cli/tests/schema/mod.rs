//! Minimal JSON Schema checker covering exactly the keywords used by
//! `docs/output-schema.json`. Unknown keywords are an error so the schema
//! cannot silently drift outside the checked subset.

use serde_json::Value;

const IGNORED: &[&str] = &["$schema", "title", "description", "definitions"];
const HANDLED: &[&str] = &[
    "$ref",
    "oneOf",
    "type",
    "const",
    "enum",
    "required",
    "properties",
    "additionalProperties",
    "items",
];

fn type_name(v: &Value) -> &'static str {
    match v {
        Value::Null => "null",
        Value::Bool(_) => "boolean",
        Value::Number(n) => {
            if n.is_i64() || n.is_u64() {
                "integer"
            } else {
                "number"
            }
        }
        Value::String(_) => "string",
        Value::Array(_) => "array",
        Value::Object(_) => "object",
    }
}

fn type_matches(want: &str, v: &Value) -> bool {
    match want {
        "number" => matches!(v, Value::Number(_)),
        "integer" => matches!(v, Value::Number(n) if n.is_i64() || n.is_u64()),
        other => type_name(v) == other,
    }
}

fn resolve<'a>(root: &'a Value, reference: &str) -> Result<&'a Value, String> {
    let path = reference
        .strip_prefix("#/")
        .ok_or_else(|| format!("unsupported $ref {reference:?}"))?;
    let mut node = root;
    for part in path.split('/') {
        node = node
            .get(part)
            .ok_or_else(|| format!("dangling $ref {reference:?}"))?;
    }
    Ok(node)
}

pub fn validate(root: &Value, schema: &Value, instance: &Value, at: &str) -> Result<(), String> {
    let obj = schema
        .as_object()
        .ok_or_else(|| format!("{at}: schema is not an object"))?;

    for key in obj.keys() {
        if !IGNORED.contains(&key.as_str()) && !HANDLED.contains(&key.as_str()) {
            return Err(format!("{at}: unsupported schema keyword {key:?}"));
        }
    }

    if let Some(reference) = obj.get("$ref") {
        let reference = reference
            .as_str()
            .ok_or_else(|| format!("{at}: non-string $ref"))?;
        return validate(root, resolve(root, reference)?, instance, at);
    }

    if let Some(branches) = obj.get("oneOf") {
        let branches = branches
            .as_array()
            .ok_or_else(|| format!("{at}: oneOf not an array"))?;
        let mut hits = 0;
        for branch in branches {
            if validate(root, branch, instance, at).is_ok() {
                hits += 1;
            }
        }
        if hits != 1 {
            return Err(format!(
                "{at}: {hits} of {} oneOf branches matched",
                branches.len()
            ));
        }
    }

    if let Some(ty) = obj.get("type") {
        let ok = match ty {
            Value::String(s) => type_matches(s, instance),
            Value::Array(options) => options.iter().any(|o| {
                o.as_str()
                    .map(|s| type_matches(s, instance))
                    .unwrap_or(false)
            }),
            _ => return Err(format!("{at}: malformed type")),
        };
        if !ok {
            return Err(format!("{at}: got {}, wanted {ty}", type_name(instance)));
        }
    }

    if let Some(expected) = obj.get("const") {
        if instance != expected {
            return Err(format!("{at}: expected const {expected}"));
        }
    }

    if let Some(options) = obj.get("enum") {
        let options = options
            .as_array()
            .ok_or_else(|| format!("{at}: malformed enum"))?;
        if !options.contains(instance) {
            return Err(format!("{at}: value not in enum"));
        }
    }

    if let Some(required) = obj.get("required") {
        let map = instance
            .as_object()
            .ok_or_else(|| format!("{at}: required on a non-object instance"))?;
        for field in required
            .as_array()
            .ok_or_else(|| format!("{at}: malformed required"))?
        {
            let field = field
                .as_str()
                .ok_or_else(|| format!("{at}: malformed required"))?;
            if !map.contains_key(field) {
                return Err(format!("{at}: missing required field {field:?}"));
            }
        }
    }

    if let Some(props) = obj.get("properties") {
        let props = props
            .as_object()
            .ok_or_else(|| format!("{at}: malformed properties"))?;
        if let Some(map) = instance.as_object() {
            for (name, sub) in props {
                if let Some(v) = map.get(name) {
                    validate(root, sub, v, &format!("{at}/{name}"))?;
                }
            }
            if obj.get("additionalProperties") == Some(&Value::Bool(false)) {
                for key in map.keys() {
                    if !props.contains_key(key) {
                        return Err(format!("{at}: unexpected field {key:?}"));
                    }
                }
            }
        }
    }

    if let Some(items) = obj.get("items") {
        if let Some(arr) = instance.as_array() {
            for (i, v) in arr.iter().enumerate() {
                validate(root, items, v, &format!("{at}[{i}]"))?;
            }
        }
    }

    Ok(())
}
