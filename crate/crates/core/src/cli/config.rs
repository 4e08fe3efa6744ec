//! `key = value` run configuration, merged under command-line flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::error::{usage, Result};
use crate::pointcount::Cover;

pub const CACHE_ENV: &str = "SPORADIC_CACHE_DIR";
pub const DEFAULT_CACHE_DIR: &str = ".sporadic-cache";

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Records,
    Csv,
}

impl std::str::FromStr for Format {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "records" => Ok(Format::Records),
            "csv" => Ok(Format::Csv),
            _ => Err(usage(format!(
                "unknown format {s:?}; expected text, records or csv"
            ))),
        }
    }
}

/// Settings shared by all commands. `None` means "use the command default".
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RunConfig {
    pub terms: Option<i64>,
    pub max_prime: Option<u64>,
    pub m_max: Option<u64>,
    pub r_max: Option<u32>,
    pub cover: Option<Cover>,
    pub cache_dir: Option<PathBuf>,
    pub format: Option<Format>,
    pub workers: Option<usize>,
}

const KEYS: [&str; 8] = [
    "terms",
    "max-prime",
    "m-max",
    "r-max",
    "cover",
    "cache-dir",
    "format",
    "workers",
];

fn number<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| usage(format!("config key {key}: cannot parse {value:?}")))
}

impl RunConfig {
    /// Parses `key = value` lines; `#` starts a comment, blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut seen = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| usage(format!("config line {}: expected key = value", i + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            if !KEYS.contains(&key) {
                return Err(usage(format!("config line {}: unknown key {key:?}", i + 1)));
            }
            if seen.insert(key.to_string(), value.to_string()).is_some() {
                return Err(usage(format!(
                    "config line {}: duplicate key {key:?}",
                    i + 1
                )));
            }
        }
        let mut cfg = RunConfig::default();
        for (key, value) in &seen {
            match key.as_str() {
                "terms" => cfg.terms = Some(number(key, value)?),
                "max-prime" => cfg.max_prime = Some(number(key, value)?),
                "m-max" => cfg.m_max = Some(number(key, value)?),
                "r-max" => cfg.r_max = Some(number(key, value)?),
                "cover" => cfg.cover = Some(Cover::from_exponent(number(key, value)?)?),
                "cache-dir" => cfg.cache_dir = Some(PathBuf::from(value)),
                "format" => cfg.format = Some(value.parse()?),
                "workers" => cfg.workers = Some(number(key, value)?),
                _ => unreachable!("key list checked above"),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Fields set in `self` win over `base`.
    pub fn over(self, base: RunConfig) -> RunConfig {
        RunConfig {
            terms: self.terms.or(base.terms),
            max_prime: self.max_prime.or(base.max_prime),
            m_max: self.m_max.or(base.m_max),
            r_max: self.r_max.or(base.r_max),
            cover: self.cover.or(base.cover),
            cache_dir: self.cache_dir.or(base.cache_dir),
            format: self.format.or(base.format),
            workers: self.workers.or(base.workers),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.workers == Some(0) {
            return Err(usage("workers must be at least 1"));
        }
        if matches!(self.terms, Some(n) if n < 1) {
            return Err(usage("terms must be at least 1"));
        }
        Ok(())
    }

    /// Flag, then config file, then the environment, then `.sporadic-cache`.
    pub fn resolved_cache_dir(&self) -> PathBuf {
        self.cache_dir
            .clone()
            .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    /// `terms`, defaulting to `default`; an explicit value below `needed` is an error.
    pub fn terms_at_least(&self, default: i64, needed: i64) -> Result<i64> {
        let n = self.terms.unwrap_or(default.max(needed));
        if n < needed {
            return Err(crate::Error::SeriesTooShort { needed, have: n });
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_merges() {
        let file =
            RunConfig::parse("# run\nterms = 300\nformat=csv  # inline\n\ncover = 3\n").unwrap();
        assert_eq!(file.terms, Some(300));
        assert_eq!(file.cover, Some(Cover::Three));
        let flags = RunConfig {
            terms: Some(50),
            ..Default::default()
        };
        let merged = flags.over(file);
        assert_eq!(merged.terms, Some(50));
        assert_eq!(merged.format(), Format::Csv);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(RunConfig::parse("colour = red").is_err());
        assert!(RunConfig::parse("terms").is_err());
        assert!(RunConfig::parse("workers = 0").is_err());
        assert!(RunConfig::parse("cover = 4").is_err());
        assert!(RunConfig::parse("terms = 1\nterms = 2").is_err());
    }

    #[test]
    fn explicit_short_terms_report_the_minimum() {
        let cfg = RunConfig {
            terms: Some(100),
            ..Default::default()
        };
        match cfg.terms_at_least(200, 200) {
            Err(crate::Error::SeriesTooShort { needed, .. }) => assert_eq!(needed, 200),
            other => panic!("{other:?}"),
        }
        assert_eq!(RunConfig::default().terms_at_least(10, 200).unwrap(), 200);
    }
}
