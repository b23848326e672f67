use serde_json::{json, Value};

fn dyadic() -> Value {
    json!({
        "type": "object",
        "description": "mantissa · 2^exponent, mantissa odd or zero",
        "properties": { "m": { "type": "string", "pattern": "^-?[0-9]+$" }, "e": { "type": "integer" } },
        "required": ["m", "e"],
        "additionalProperties": false
    })
}

fn interval() -> Value {
    json!({
        "type": "object",
        "properties": { "lo": { "$ref": "#/$defs/dyadic" }, "hi": { "$ref": "#/$defs/dyadic" } },
        "required": ["lo", "hi"]
    })
}

pub fn trace() -> Value {
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "Trace",
        "type": "object",
        "$defs": { "dyadic": dyadic(), "interval": interval() },
        "properties": {
            "iterates": { "type": "array", "items": { "type": "array", "items": { "$ref": "#/$defs/dyadic" } } },
            "values": {
                "type": "array",
                "items": { "oneOf": [ { "$ref": "#/$defs/dyadic" }, { "$ref": "#/$defs/interval" } ] }
            },
            "inner_steps": {
                "type": "array",
                "items": {
                    "type": "object",
                    "properties": {
                        "sweep": { "type": "integer", "minimum": 1 },
                        "block": { "type": "array", "items": { "type": "integer" } },
                        "point": { "type": "array", "items": { "$ref": "#/$defs/dyadic" } }
                    },
                    "required": ["sweep", "block", "point"]
                }
            },
            "stop_reason": { "enum": ["FixedPoint", "MaxIter", "TargetMet", "NoCertifiedSign"] },
            "sweeps": { "type": "integer", "minimum": 0 },
            "converged_at": { "type": ["integer", "null"] },
            "heuristic": { "type": "boolean" },
            "obstruction": { "type": "string" }
        },
        "required": ["iterates", "values", "inner_steps", "stop_reason", "sweeps", "converged_at"]
    })
}

pub fn report() -> Value {
    json!({
        "$schema": "https://json-schema.org/draft/2020-12/schema",
        "title": "ExperimentReport",
        "type": "object",
        "properties": {
            "name": { "enum": effopt::experiments::NAMES },
            "parameters": { "type": "object" },
            "records": {
                "type": "array",
                "items": {
                    "type": "object",
                    "additionalProperties": { "type": ["string", "number", "boolean", "null", "array"] }
                }
            },
            "summary": { "type": "object" },
            "verdict": { "enum": ["pass", "fail"] },
            "failures": { "type": "array", "items": { "type": "string" } },
            "artifacts": { "type": "array", "items": { "type": "string" } }
        },
        "required": ["name", "parameters", "records", "summary", "verdict", "failures"]
    })
}

pub fn all() -> Value {
    json!({ "trace": trace(), "report": report() })
}
