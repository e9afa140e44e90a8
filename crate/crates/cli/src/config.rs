//! `--config FILE`: a JSON object `{"command": "...", "args": {...}}` that is
//! turned into ordinary command-line arguments.

use std::path::Path;

use anyhow::{bail, Context};
use serde_json::Value;

/// Arguments equivalent to the config file, without the program name.
///
/// `{"command": "qe", "args": {"M": 2, "alpha": 0.5, "complex": true}}`
/// becomes `qe --M 2 --alpha 0.5 --complex`. Arrays repeat the flag, `false`
/// and `null` drop it. Flags come out in sorted key order.
pub fn config_to_argv(text: &str) -> anyhow::Result<Vec<String>> {
    let doc: Value = serde_json::from_str(text).context("config is not valid JSON")?;
    let Value::Object(map) = doc else { bail!("config must be a JSON object") };
    for key in map.keys() {
        if key != "command" && key != "args" {
            bail!("unknown config key {key:?}; expected \"command\" and \"args\"");
        }
    }
    let Some(Value::String(command)) = map.get("command") else {
        bail!("config needs a string \"command\"");
    };
    let mut argv = vec![command.clone()];
    match map.get("args") {
        None | Some(Value::Null) => {}
        Some(Value::Object(args)) => {
            for (key, value) in args {
                push_flag(&mut argv, key, value)?;
            }
        }
        Some(_) => bail!("config \"args\" must be an object"),
    }
    Ok(argv)
}

fn push_flag(argv: &mut Vec<String>, key: &str, value: &Value) -> anyhow::Result<()> {
    let flag = format!("--{key}");
    match value {
        Value::Null | Value::Bool(false) => {}
        Value::Bool(true) => argv.push(flag),
        Value::Number(n) => argv.extend([flag, n.to_string()]),
        Value::String(s) => argv.extend([flag, s.clone()]),
        Value::Array(items) => {
            for item in items {
                if item.is_array() || item.is_object() {
                    bail!("config value for {key:?} is nested too deeply");
                }
                push_flag(argv, key, item)?;
            }
        }
        Value::Object(_) => bail!("config value for {key:?} must not be an object"),
    }
    Ok(())
}

pub fn read_config(path: &Path) -> anyhow::Result<Vec<String>> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
    config_to_argv(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_from_json() {
        let argv = config_to_argv(r#"{"command": "qe", "args": {"M": 2, "N": 1, "alpha": 0.5, "complex": true, "exact": false}}"#).unwrap();
        assert_eq!(argv, ["qe", "--M", "2", "--N", "1", "--alpha", "0.5", "--complex"]);
    }

    #[test]
    fn arrays_repeat() {
        let argv = config_to_argv(r#"{"command": "spectrum", "args": {"shoot": [0.9, 3.1]}}"#).unwrap();
        assert_eq!(argv, ["spectrum", "--shoot", "0.9", "--shoot", "3.1"]);
    }

    #[test]
    fn malformed_configs() {
        assert!(config_to_argv("[]").is_err());
        assert!(config_to_argv(r#"{"args": {}}"#).is_err());
        assert!(config_to_argv(r#"{"command": "qe", "extra": 1}"#).is_err());
        assert!(config_to_argv(r#"{"command": "qe", "args": {"x": {"y": 1}}}"#).is_err());
        assert_eq!(config_to_argv(r#"{"command": "figures"}"#).unwrap(), ["figures"]);
    }
}
