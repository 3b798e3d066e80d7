//! Run configuration and the pinned-constant file.
//!
//! The chain's certified constants are computed once, stored here with
//! their provenance, and reused; they are never silently recomputed
//! mid-run.

use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};

use mahler_core::chain::PinnedConstants;
use mahler_core::numerics::Interval;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RunConfig {
    /// Working precision in bits of mantissa.
    pub precision_bits: u32,
    /// Sieve limit for prime statistics.
    pub sieve_limit: u64,
    /// Default series truncation for expansions and auxiliary builds.
    pub series_trunc: i64,
    /// Path of the pinned-constant ledger file.
    pub constants_path: String,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            precision_bits: 128,
            sieve_limit: 1_000_000,
            series_trunc: 96,
            constants_path: "config/constants.toml".into(),
        }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<RunConfig> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        let cfg: RunConfig = toml::from_str(&text).context("parsing config")?;
        if cfg.precision_bits < 32 || cfg.sieve_limit < 100 || cfg.series_trunc < 4 {
            anyhow::bail!("config fields out of range");
        }
        Ok(cfg)
    }

    #[cfg(test)]
    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config serializes")
    }
}

/// The pinned constants with provenance, as stored on disk.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ConstantsFile {
    /// Certified upper bound for the Hecke constant C1 (decimal).
    pub c1: String,
    pub c1_grid_depth: u32,
    pub c1_precision_bits: u32,
    /// Configured isogeny-height constant C2 (decimal).
    pub c2: String,
    /// Certified Chebyshev constant C14 (decimal upper bound) and the
    /// scan limit it was certified over.
    pub c14: String,
    pub c14_limit: u64,
}

impl ConstantsFile {
    pub fn load(path: &Path) -> Result<ConstantsFile> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading constants {}", path.display()))?;
        toml::from_str(&text).context("parsing constants")
    }

    pub fn pins(&self, prec: u32) -> Result<PinnedConstants> {
        let c1 = Interval::from_decimal_str(&self.c1, prec)
            .map_err(|e| anyhow::anyhow!("c1: {}", e))?;
        let c2 = Interval::from_decimal_str(&self.c2, prec)
            .map_err(|e| anyhow::anyhow!("c2: {}", e))?;
        let c14 = Interval::from_decimal_str(&self.c14, prec)
            .map_err(|e| anyhow::anyhow!("c14: {}", e))?;
        Ok(PinnedConstants {
            c1,
            c1_provenance: format!(
                "certified fundamental-domain grid, depth {}, {} bits",
                self.c1_grid_depth, self.c1_precision_bits
            ),
            c2,
            c14,
            c14_provenance: format!("certified sieve scan to {}", self.c14_limit),
        })
    }
}

/// Resolves the config path: explicit flag, then the MAHLER_CONFIG
/// environment variable, then the default location.
pub fn resolve_config_path(explicit: Option<&str>) -> PathBuf {
    if let Some(p) = explicit {
        return PathBuf::from(p);
    }
    if let Ok(p) = std::env::var("MAHLER_CONFIG") {
        return PathBuf::from(p);
    }
    PathBuf::from("config/default.toml")
}

/// Loads config + constants, resolving the constants path relative to the
/// config file's directory when it is not absolute.
pub fn load_all(explicit: Option<&str>) -> Result<(RunConfig, ConstantsFile)> {
    let path = resolve_config_path(explicit);
    let cfg = RunConfig::load(&path)?;
    let cpath = PathBuf::from(&cfg.constants_path);
    let cpath = if cpath.is_absolute() {
        cpath
    } else {
        path.parent()
            .map(|d| d.join(cpath.strip_prefix("config").unwrap_or(&cpath)))
            .unwrap_or(cpath)
    };
    let constants = ConstantsFile::load(&cpath)?;
    Ok((cfg, constants))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_roundtrip_lossless() {
        let cfg = RunConfig::default();
        let text = cfg.to_toml();
        let back: RunConfig = toml::from_str(&text).unwrap();
        assert_eq!(cfg, back);
        let text2 = back.to_toml();
        assert_eq!(text, text2);
    }
}
