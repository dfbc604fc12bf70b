//! Plain-text experiment configuration: one `key = value` per line, `#`
//! starts a comment.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("missing required key `{0}`")]
    MissingKey(String),
    #[error("key `{key}`: invalid value `{value}`: {reason}")]
    InvalidValue { key: String, value: String, reason: String },
    #[error("cannot read config: {0}")]
    Io(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(format!("unknown format `{other}`, expected json or csv")),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Json => "json",
            Self::Csv => "csv",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub command: String,
    pub seed: u64,
    pub format: OutputFormat,
    pub output: Option<String>,
    /// Command parameters, kept as written so the file round-trips exactly.
    pub params: BTreeMap<String, String>,
}

const RESERVED: [&str; 4] = ["command", "seed", "format", "output"];

impl ExperimentConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut entries: BTreeMap<String, String> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Parse {
                line: line_no,
                message: format!("expected `key = value`, found `{line}`"),
            })?;
            let (key, value) = (key.trim(), value.trim());
            if key.is_empty() || key.contains(char::is_whitespace) {
                return Err(ConfigError::Parse {
                    line: line_no,
                    message: format!("invalid key `{key}`"),
                });
            }
            if entries.insert(key.to_string(), value.to_string()).is_some() {
                return Err(ConfigError::Parse {
                    line: line_no,
                    message: format!("duplicate key `{key}`"),
                });
            }
        }
        let mut take = |k: &str| entries.remove(k);
        let command = take("command").ok_or_else(|| ConfigError::MissingKey("command".into()))?;
        let seed_text = take("seed").ok_or_else(|| ConfigError::MissingKey("seed".into()))?;
        let format_text = take("format").ok_or_else(|| ConfigError::MissingKey("format".into()))?;
        let output = take("output");
        let seed = seed_text.parse().map_err(|e: std::num::ParseIntError| ConfigError::InvalidValue {
            key: "seed".into(),
            value: seed_text.clone(),
            reason: e.to_string(),
        })?;
        let format = format_text.parse().map_err(|reason| ConfigError::InvalidValue {
            key: "format".into(),
            value: format_text.clone(),
            reason,
        })?;
        Ok(Self {
            command,
            seed,
            format,
            output,
            params: entries,
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Serialises to the file format. Values must not contain `#` or line
    /// breaks.
    pub fn to_text(&self) -> Result<String, ConfigError> {
        let mut out = format!("command = {}\nseed = {}\nformat = {}\n", self.command, self.seed, self.format);
        if let Some(o) = &self.output {
            check_value("output", o)?;
            out.push_str(&format!("output = {o}\n"));
        }
        for (k, v) in &self.params {
            if RESERVED.contains(&k.as_str()) || k.is_empty() || k.contains(|c: char| c.is_whitespace() || c == '=' || c == '#') {
                return Err(ConfigError::InvalidValue {
                    key: k.clone(),
                    value: v.clone(),
                    reason: "key cannot be written".into(),
                });
            }
            check_value(k, v)?;
            out.push_str(&format!("{k} = {v}\n"));
        }
        Ok(out)
    }
}

fn check_value(key: &str, value: &str) -> Result<(), ConfigError> {
    if value.contains(['#', '\n', '\r']) || value.trim() != value {
        return Err(ConfigError::InvalidValue {
            key: key.into(),
            value: value.into(),
            reason: "values cannot contain `#`, line breaks or surrounding whitespace".into(),
        });
    }
    Ok(())
}

/// Reads and parses a config file.
pub fn config_roundtrip(path: &Path) -> Result<ExperimentConfig, ConfigError> {
    ExperimentConfig::load(path)
}
