//! Minimal `key = value` configuration files supplying default truncation
//! parameters. Unknown keys are rejected so typos cannot silently change a
//! run.

use std::path::Path;

#[derive(Debug, Default, Clone)]
pub struct FileConfig {
    pub order: Option<i64>,
    pub emin: Option<i64>,
    pub seed: Option<u64>,
}

pub fn load(path: &Path) -> Result<FileConfig, String> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
    let mut cfg = FileConfig::default();
    for (lineno, line) in raw.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| format!("config line {}: expected key = value", lineno + 1))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "order" => cfg.order = Some(parse(key, value)?),
            "emin" => cfg.emin = Some(parse(key, value)?),
            "seed" => cfg.seed = Some(parse(key, value)?),
            _ => return Err(format!("config line {}: unknown key {key:?}", lineno + 1)),
        }
    }
    Ok(cfg)
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> Result<T, String> {
    value
        .parse()
        .map_err(|_| format!("config key {key}: cannot parse {value:?}"))
}
