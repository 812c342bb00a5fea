//! Resource limits, read from a TOML file.
//!
//! Lookup order: `--config PATH`, then `$MODKERNEL_CONFIG`, then `./modkernel.toml` if
//! present, then built-in defaults. Keys not set in the file keep their defaults; every
//! value is clamped against a hard cap that no file can raise.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

pub const CONFIG_ENV: &str = "MODKERNEL_CONFIG";
pub const DEFAULT_FILE: &str = "modkernel.toml";

/// Hard caps. A config file asking for more is rejected.
pub const HARD_MAX_TERMS: u64 = 200_000;
pub const HARD_MAX_PRIME: u64 = 1_000_000;
pub const HARD_MAX_PRECISION: u32 = 64;
pub const HARD_MAX_WEIGHT: u32 = 512;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Limits {
    /// Largest series truncation, sweep bound or `n` accepted by any command.
    pub max_terms: u64,
    /// Largest prime accepted as `--p` or `--pmax`.
    pub max_prime: u64,
    /// Largest `p`-adic precision `N`.
    pub max_precision: u32,
    /// Largest Eisenstein weight.
    pub max_weight: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_terms: 20_000, max_prime: 10_000, max_precision: 20, max_weight: 64 }
    }
}

impl Limits {
    pub fn from_toml(text: &str) -> Result<Self, String> {
        let limits: Limits = toml::from_str(text).map_err(|e| e.to_string())?;
        limits.validate()?;
        Ok(limits)
    }

    fn validate(&self) -> Result<(), String> {
        let over = |name: &str, v: u64, cap: u64| {
            (v > cap).then(|| format!("{name} = {v} exceeds the hard cap {cap}"))
        };
        let problems: Vec<String> = [
            over("max_terms", self.max_terms, HARD_MAX_TERMS),
            over("max_prime", self.max_prime, HARD_MAX_PRIME),
            over("max_precision", u64::from(self.max_precision), u64::from(HARD_MAX_PRECISION)),
            over("max_weight", u64::from(self.max_weight), u64::from(HARD_MAX_WEIGHT)),
        ]
        .into_iter()
        .flatten()
        .collect();
        if problems.is_empty() {
            Ok(())
        } else {
            Err(problems.join("; "))
        }
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        Self::from_toml(&text).map_err(|e| format!("invalid config {}: {e}", path.display()))
    }

    /// Resolve the config according to the lookup order above.
    pub fn resolve(explicit: Option<&Path>, env: Option<PathBuf>) -> Result<Self, String> {
        if let Some(path) = explicit {
            return Self::load(path);
        }
        if let Some(path) = env {
            return Self::load(&path);
        }
        let local = Path::new(DEFAULT_FILE);
        if local.is_file() {
            return Self::load(local);
        }
        Ok(Limits::default())
    }
}
