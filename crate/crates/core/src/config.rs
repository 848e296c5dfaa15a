//! Optional TOML configuration. Keys mirror the long CLI flags (with
//! dashes); a flag given on the command line always wins.

use std::path::Path;

use serde::Deserialize;
use thiserror::Error;

use crate::report::Format;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: String,
        source: std::io::Error,
    },
    #[error("invalid config {path}: {message}")]
    Parse { path: String, message: String },
}

#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(rename_all = "kebab-case", deny_unknown_fields)]
pub struct Config {
    pub ring: Option<String>,
    pub format: Option<Format>,
    pub threads: Option<usize>,
    pub cap: Option<u64>,
    pub full_axioms: Option<bool>,
    pub max_order: Option<u32>,
    pub inner_cap: Option<usize>,
    pub budget: Option<u64>,
}

impl Config {
    pub fn parse(text: &str, origin: &str) -> Result<Config, ConfigError> {
        toml::from_str(text).map_err(|e| ConfigError::Parse {
            path: origin.to_string(),
            message: e.message().to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<Config, ConfigError> {
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
            path: shown.clone(),
            source,
        })?;
        Config::parse(&text, &shown)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_match_flags() {
        let c = Config::parse(
            "ring = \"zn:6\"\nformat = \"structured\"\nthreads = 2\ncap = 1000\nfull-axioms = true\n",
            "inline",
        )
        .unwrap();
        assert_eq!(c.ring.as_deref(), Some("zn:6"));
        assert_eq!(c.format, Some(Format::Structured));
        assert_eq!(c.threads, Some(2));
        assert_eq!(c.cap, Some(1000));
        assert_eq!(c.full_axioms, Some(true));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let err = Config::parse("rings = \"zn:6\"", "inline").unwrap_err();
        assert!(err.to_string().contains("rings"), "{err}");
    }
}
