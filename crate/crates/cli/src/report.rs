use std::fmt;
use std::path::Path;

use serde_json::Value;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or input files; exit code 2.
    Usage(String),
    /// A verification check failed; exit code 1.
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) | CliError::Failed(s) => f.write_str(s),
        }
    }
}

impl From<depthlab::Error> for CliError {
    fn from(e: depthlab::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

/// Rounds every float to 12 significant digits.
pub fn round_numbers(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            if let Ok(r) = format!("{x:.11e}").parse::<f64>() {
                if let Some(num) = serde_json::Number::from_f64(r) {
                    *n = num;
                }
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_numbers),
        Value::Object(o) => o.values_mut().for_each(round_numbers),
        _ => {}
    }
}

pub fn render(report: &Value) -> String {
    let mut v = report.clone();
    round_numbers(&mut v);
    serde_json::to_string_pretty(&v).expect("json values serialize")
}

/// Writes to stdout; a closed pipe (`| head`) is not an error.
pub fn stdout(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

/// Writes the report to `path`, or to stdout.
pub fn emit_json(report: &Value, path: Option<&Path>) -> Result<(), CliError> {
    let text = render(report);
    match path {
        Some(p) => std::fs::write(p, text + "\n")?,
        None => stdout(&(text + "\n"))?,
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn twelve_digits() {
        let mut v = json!({"a": [std::f64::consts::PI, 1.0], "b": 2});
        round_numbers(&mut v);
        assert_eq!(v["a"][0].to_string(), "3.14159265359");
        assert_eq!(v["a"][1].as_f64().unwrap(), 1.0);
        assert_eq!(v["b"], 2);
    }
}
