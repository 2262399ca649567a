use std::path::Path;

use depthlab::scenes::{self, SCENE_NAMES};
use depthlab::MixtureMeasure;

use crate::report::CliError;

/// Reads a scene file, or falls back to a built-in name.
pub fn load(spec: &str) -> Result<MixtureMeasure, CliError> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)?;
        return parse(&text).map_err(|e| CliError::Usage(format!("{spec}: {e}")));
    }
    scenes::builtin(spec).map_err(|e| match e {
        depthlab::Error::UnknownScene(_) => CliError::Usage(format!(
            "`{spec}` is neither a scene file nor a built-in scene ({}, triangle-gap-2.11(x) with 0 < x < 1/4)",
            SCENE_NAMES.join(", ")
        )),
        e => CliError::Usage(format!("{spec}: {e}")),
    })
}

pub fn parse(text: &str) -> Result<MixtureMeasure, serde_json::Error> {
    serde_json::from_str(text)
}

#[cfg(test)]
pub fn to_json(m: &MixtureMeasure) -> String {
    serde_json::to_string_pretty(m).expect("scenes serialize")
}
