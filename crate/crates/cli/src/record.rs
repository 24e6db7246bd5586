//! The JSON verification record and its schema.

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

/// Generator used for every seeded choice in the library.
pub const RNG_DESCRIPTION: &str = "ChaCha8 (rand_chacha 0.3) via seed_from_u64; trial i uses seed + i";

pub const CLAIMS: [&str; 6] = ["lemma21", "thm22", "thm12", "prop13", "remark14", "suspension-claims"];

/// One verification run. Replaying `claim`, `n`, `seed` and `parameters`
/// reproduces everything except `timestamp`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub claim: String,
    pub n: usize,
    pub seed: u64,
    pub parameters: Value,
    pub pass: bool,
    pub summary: String,
    pub evidence: Value,
    pub witnesses: Value,
    pub rng: String,
    /// Seconds since the Unix epoch; not part of the reproducible content.
    pub timestamp: u64,
}

/// Rebuilds every object with its keys in sorted order.
pub fn canonical(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            let mut out = Map::new();
            for (k, v) in entries {
                out.insert(k, canonical(v));
            }
            Value::Object(out)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonical).collect()),
        other => other,
    }
}

impl VerificationRecord {
    pub fn to_json(&self) -> String {
        let value = canonical(serde_json::to_value(self).expect("record serialises"));
        let mut s = serde_json::to_string_pretty(&value).expect("value serialises");
        s.push('\n');
        s
    }
}

/// JSON Schema (draft 7) for [`VerificationRecord`].
pub fn report_schema() -> Value {
    json!({
        "$schema": "http://json-schema.org/draft-07/schema#",
        "title": "ilink verification record",
        "type": "object",
        "additionalProperties": false,
        "required": ["claim", "n", "seed", "parameters", "pass", "summary", "evidence", "witnesses", "rng", "timestamp"],
        "properties": {
            "claim": { "enum": CLAIMS },
            "n": { "type": "integer", "minimum": 1, "maximum": 3 },
            "seed": { "type": "integer", "minimum": 0 },
            "parameters": { "type": "object" },
            "pass": { "type": "boolean" },
            "summary": { "type": "string" },
            "evidence": { "type": "object", "required": ["pass"] },
            "witnesses": {
                "description": "coordinates as num/den strings keyed by vertex label, or certificates",
                "type": ["object", "array", "null"]
            },
            "rng": { "type": "string" },
            "timestamp": { "type": "integer", "minimum": 0 }
        }
    })
}

/// Validation errors of `instance` against [`report_schema`], empty when valid.
pub fn validate_record(instance: &Value) -> Vec<String> {
    let schema = report_schema();
    let compiled = jsonschema::JSONSchema::compile(&schema).expect("schema is well formed");
    let result = compiled.validate(instance);
    match result {
        Ok(()) => Vec::new(),
        Err(errors) => errors.map(|e| format!("{}: {}", e.instance_path, e)).collect(),
    }
}
