//! JSON schemas for the command outputs, embedded from `schema/`.

use serde_json::Value;

pub const SERIES: &str = include_str!("../../../schema/series.schema.json");
pub const VERIFY: &str = include_str!("../../../schema/verify.schema.json");
pub const DECOMPOSE: &str = include_str!("../../../schema/decompose.schema.json");
pub const COSETS: &str = include_str!("../../../schema/cosets.schema.json");
pub const E8: &str = include_str!("../../../schema/e8.schema.json");

/// Schema text for a subcommand name.
pub fn for_command(name: &str) -> Option<&'static str> {
    match name {
        "series" => Some(SERIES),
        "verify" => Some(VERIFY),
        "decompose" => Some(DECOMPOSE),
        "cosets" => Some(COSETS),
        "e8" => Some(E8),
        _ => None,
    }
}

/// Validation error messages, empty on success.
pub fn validate(schema: &Value, doc: &Value) -> Result<(), Vec<String>> {
    let validator = jsonschema::validator_for(schema).map_err(|e| vec![format!("bad schema: {e}")])?;
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{} at {}", e, e.instance_path)).collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors)
    }
}
