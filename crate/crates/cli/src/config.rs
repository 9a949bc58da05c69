//! Layered run configuration: command-line flags override a `key=value`
//! file given with `--config`, which overrides `STABLETREE_*` environment
//! variables.

use crate::error::{CliError, CliResult};
use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

pub const ENV_PREFIX: &str = "STABLETREE_";

pub const KNOWN_KEYS: [&str; 9] = [
    "gamma",
    "seed",
    "stream",
    "profile",
    "out",
    "n",
    "table_dir",
    "tol",
    "threads",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Env(String),
    File(PathBuf, usize),
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Env(var) => write!(f, "environment variable {var}"),
            Source::File(p, line) => write!(f, "{}:{line}", p.display()),
        }
    }
}

/// Values from the environment and the config file, already merged.
/// Flags are applied at lookup time through [`RunConfig::pick`].
#[derive(Debug, Clone, Default)]
pub struct RunConfig {
    values: BTreeMap<String, (String, Source)>,
}

fn normalize(key: &str) -> String {
    key.trim().to_ascii_lowercase().replace('-', "_")
}

fn check_key(key: &str, source: &Source) -> CliResult<()> {
    if KNOWN_KEYS.contains(&key) {
        Ok(())
    } else {
        Err(CliError::usage(format!(
            "unknown configuration key '{key}' ({source}); known keys: {}",
            KNOWN_KEYS.join(", ")
        )))
    }
}

impl RunConfig {
    /// Reads `STABLETREE_*` variables from `env`, then the file at `path`.
    pub fn load<I>(env: I, path: Option<&Path>) -> CliResult<Self>
    where
        I: IntoIterator<Item = (String, String)>,
    {
        let mut cfg = Self::default();
        for (var, value) in env {
            let Some(rest) = var.strip_prefix(ENV_PREFIX) else {
                continue;
            };
            let key = normalize(rest);
            let source = Source::Env(var.clone());
            check_key(&key, &source)?;
            cfg.values.insert(key, (value, source));
        }
        if let Some(path) = path {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::usage(format!("cannot read config file {}: {e}", path.display())))?;
            cfg.merge_text(&text, path)?;
        }
        Ok(cfg)
    }

    /// Parses `key = value` lines; `#` starts a comment line.
    pub fn merge_text(&mut self, text: &str, origin: &Path) -> CliResult<()> {
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let source = Source::File(origin.to_path_buf(), i + 1);
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::usage(format!("expected key=value at {source}")))?;
            let key = normalize(k);
            check_key(&key, &source)?;
            self.values.insert(key, (v.trim().to_string(), source));
        }
        Ok(())
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(|(v, _)| v.as_str())
    }

    /// The configured value of `key`, parsed.
    pub fn get<T: FromStr>(&self, key: &str) -> CliResult<Option<T>>
    where
        T::Err: fmt::Display,
    {
        debug_assert!(KNOWN_KEYS.contains(&key), "lookup of unregistered key {key}");
        match self.values.get(key) {
            None => Ok(None),
            Some((v, source)) => v
                .parse::<T>()
                .map(Some)
                .map_err(|e| CliError::usage(format!("invalid value '{v}' for {key} ({source}): {e}"))),
        }
    }

    /// `flag` if given, else the configured value.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<Option<T>>
    where
        T::Err: fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }

    /// Like [`RunConfig::pick`] but the value must be present.
    pub fn require<T: FromStr>(&self, flag: Option<T>, key: &str) -> CliResult<T>
    where
        T::Err: fmt::Display,
    {
        self.pick(flag, key)?.ok_or_else(|| {
            CliError::usage(format!(
                "missing --{} (or `{key}` in the config file, or {ENV_PREFIX}{})",
                key.replace('_', "-"),
                key.to_ascii_uppercase()
            ))
        })
    }
}
