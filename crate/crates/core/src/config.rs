//! TOML pipeline configuration.
//!
//! ```toml
//! promotion_threshold = 0.75
//! attachment_margin = 0.05
//! embeddings = "vectors.txt"   # relative to this file
//! graph = "corpus.graph"
//!
//! [source_weights]
//! supreme_court = 3
//! appellate = 2
//! unspecified = 1
//!
//! [opinion_weights]
//! majority = 3
//! concurring = 2
//! dissenting = 1
//!
//! [deontic."should"]
//! possible = "yes"
//! necessary = "yes"
//! ```
//!
//! A weight table given in the file replaces the default table entirely.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use thiserror::Error;

use crate::ingest::{AuthorityConfig, OpinionKind};
use crate::kgraph::DEFAULT_PROMOTION_THRESHOLD;
use crate::svo::{DeonticRule, DeonticTable};

pub const CONFIG_ENV: &str = "LEXGRAPH_CONFIG";
pub const DEFAULT_ATTACHMENT_MARGIN: f64 = 0.05;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid config {path}: {source}")]
    Parse { path: PathBuf, source: Box<toml::de::Error> },
    #[error("invalid config: {0}")]
    Invalid(String),
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    promotion_threshold: Option<f64>,
    attachment_margin: Option<f64>,
    embeddings: Option<PathBuf>,
    graph: Option<PathBuf>,
    source_weights: Option<BTreeMap<String, u32>>,
    opinion_weights: Option<BTreeMap<OpinionKind, u32>>,
    #[serde(default)]
    deontic: BTreeMap<String, DeonticRule>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub authority: AuthorityConfig,
    pub promotion_threshold: f64,
    pub attachment_margin: f64,
    pub deontic: DeonticTable,
    pub embeddings: Option<PathBuf>,
    pub graph: Option<PathBuf>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            authority: AuthorityConfig::default(),
            promotion_threshold: DEFAULT_PROMOTION_THRESHOLD,
            attachment_margin: DEFAULT_ATTACHMENT_MARGIN,
            deontic: DeonticTable::default(),
            embeddings: None,
            graph: None,
        }
    }
}

impl PipelineConfig {
    /// Parses TOML text. Relative paths are resolved against `base`.
    pub fn from_toml(text: &str, base: &Path) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text)
            .map_err(|e| ConfigError::Parse { path: base.to_path_buf(), source: Box::new(e) })?;
        let mut cfg = Self::default();
        if let Some(t) = raw.promotion_threshold {
            if !(0.0..=1.0).contains(&t) {
                return Err(ConfigError::Invalid(format!("promotion_threshold {t} outside [0, 1]")));
            }
            cfg.promotion_threshold = t;
        }
        if let Some(m) = raw.attachment_margin {
            if !m.is_finite() || m < 0.0 {
                return Err(ConfigError::Invalid(format!("attachment_margin {m} must be >= 0")));
            }
            cfg.attachment_margin = m;
        }
        if let Some(w) = raw.source_weights {
            cfg.authority.source_weights = w;
        }
        if let Some(w) = raw.opinion_weights {
            cfg.authority.opinion_weights = w;
        }
        cfg.authority.validate().map_err(ConfigError::Invalid)?;
        cfg.deontic.apply_overrides(&raw.deontic).map_err(ConfigError::Invalid)?;
        cfg.embeddings = raw.embeddings.map(|p| base.join(p));
        cfg.graph = raw.graph.map(|p| base.join(p));
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Read { path: path.to_path_buf(), source })?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::from_toml(&text, base).map_err(|e| match e {
            ConfigError::Parse { source, .. } => ConfigError::Parse { path: path.to_path_buf(), source },
            other => other,
        })
    }

    /// Loads `path`, else the file named by `LEXGRAPH_CONFIG`, else defaults.
    pub fn load(path: Option<&Path>) -> Result<Self, ConfigError> {
        match path {
            Some(p) => Self::from_file(p),
            None => match std::env::var_os(CONFIG_ENV) {
                Some(p) if !p.is_empty() => Self::from_file(Path::new(&p)),
                _ => Ok(Self::default()),
            },
        }
    }
}
