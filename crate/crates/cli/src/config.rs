use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::Deserialize;
use superdegen::pipeline::{AlgebraConfig, OrderConfig, RealizationConfig};

use crate::UsageError;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub algebra: AlgebraConfig,
    pub realization: RealizationConfig,
    #[serde(default)]
    pub order: OrderConfig,
    #[serde(default)]
    pub bounds: Bounds,
    pub polytope: Option<PolytopeSection>,
    pub toric: Option<ToricSection>,
    #[serde(default)]
    pub output: OutputSection,
    /// Directory of the config file; relative input paths resolve against it.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Bounds {
    /// Highest level for essential sets and the favourability check.
    pub favourable_k: u32,
    /// Highest degree of relations.
    pub degree_bound: u32,
    /// Largest number of summands in semigroup searches.
    pub semigroup_bound: Option<usize>,
    pub samples: Vec<String>,
}

impl Default for Bounds {
    fn default() -> Self {
        Self {
            favourable_k: 2,
            degree_bound: 3,
            semigroup_bound: None,
            samples: ["0", "1", "2", "5"].map(String::from).to_vec(),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeSection {
    pub file: PathBuf,
    #[serde(default = "one")]
    pub dilate: u32,
    #[serde(default)]
    pub compare: bool,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToricSection {
    pub exponents: PathBuf,
    pub bound: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    pub dir: PathBuf,
}

impl Default for OutputSection {
    fn default() -> Self {
        Self { dir: PathBuf::from("out") }
    }
}

/// Command-line values that take precedence over the file.
#[derive(Debug, Default)]
pub struct Overrides {
    pub out: Option<PathBuf>,
    pub degree_bound: Option<u32>,
    pub favourable_k: Option<u32>,
    pub samples: Option<Vec<String>>,
    pub order: Option<String>,
    pub basis_perm: Option<Vec<usize>>,
}

impl JobConfig {
    pub fn load(path: &Path, overrides: &Overrides) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("cannot read config {}", path.display()))?;
        let mut cfg: JobConfig = toml::from_str(&text)
            .map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
        cfg.base_dir = path.parent().map(Path::to_path_buf).unwrap_or_default();
        if let Some(out) = &overrides.out {
            cfg.output.dir = out.clone();
        }
        if let Some(d) = overrides.degree_bound {
            cfg.bounds.degree_bound = d;
        }
        if let Some(k) = overrides.favourable_k {
            cfg.bounds.favourable_k = k;
        }
        if let Some(s) = &overrides.samples {
            cfg.bounds.samples = s.clone();
        }
        if let Some(o) = &overrides.order {
            cfg.order.kind = o.clone();
        }
        if let Some(p) = &overrides.basis_perm {
            cfg.algebra.basis_perm = Some(p.clone());
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let b = &self.bounds;
        if b.favourable_k == 0 || b.degree_bound == 0 || b.semigroup_bound == Some(0) {
            return Err(UsageError("all bounds must be at least 1".into()).into());
        }
        if self.polytope.as_ref().is_some_and(|p| p.dilate == 0) {
            return Err(UsageError("polytope dilation must be at least 1".into()).into());
        }
        Ok(())
    }

    pub fn resolve(&self, p: &Path) -> PathBuf {
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }
}
