use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use cl13::fields::FieldFamily;
use cl13::subspaces::HermitianIdempotent;

/// Environment variable naming the directory for reports whose path is
/// relative or not given.
pub const OUT_DIR_ENV: &str = "CL13_OUT_DIR";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid config {path}: {source}")]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Algebra,
    Subspaces,
    Idempotents,
    Reduction,
    Symmetries,
    Convergence,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Algebra, Suite::Subspaces, Suite::Idempotents, Suite::Reduction, Suite::Symmetries, Suite::Convergence];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::Subspaces => "subspaces",
            Suite::Idempotents => "idempotents",
            Suite::Reduction => "reduction",
            Suite::Symmetries => "symmetries",
            Suite::Convergence => "convergence",
            Suite::All => "all",
        }
    }

    /// The concrete suites this one stands for.
    pub fn expand(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::ALL.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| ConfigError::Invalid(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Pure-gauge family used by the reduction and convergence suites:
/// `"random"` draws seeded families, an object gives one explicitly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FamilyChoice {
    Named(String),
    Explicit(FieldFamily),
}

impl Default for FamilyChoice {
    fn default() -> Self {
        FamilyChoice::Named("random".into())
    }
}

fn default_m() -> Vec<f64> {
    vec![0.5, 1.0, 2.0]
}

fn default_steps() -> Vec<f64> {
    vec![1e-2, 5e-3, 2.5e-3]
}

fn default_samples() -> usize {
    20
}

fn default_families() -> usize {
    3
}

fn default_idempotent() -> String {
    "t3".into()
}

/// Effective scenario. Loaded from JSON, then overridden by flags.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub suite: Suite,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_m")]
    pub m_values: Vec<f64>,
    #[serde(default = "default_steps")]
    pub grid_steps: Vec<f64>,
    /// Replaces every check's own tolerance when set.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default)]
    pub family: FamilyChoice,
    #[serde(default = "default_families")]
    pub families: usize,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_idempotent")]
    pub idempotent: String,
    /// Presentation only; not echoed in reports.
    #[serde(default, skip_serializing)]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing)]
    pub format: Format,
    /// Adds per-check wall time to reports, which then stop being reproducible.
    #[serde(default, skip_serializing)]
    pub timings: bool,
}

pub const MAX_SAMPLES: usize = 10_000;
pub const MAX_FAMILIES: usize = 100;

impl ScenarioConfig {
    pub fn new(suite: Suite) -> Self {
        ScenarioConfig {
            suite,
            seed: 0,
            m_values: default_m(),
            grid_steps: default_steps(),
            tol: None,
            family: FamilyChoice::default(),
            families: default_families(),
            samples: default_samples(),
            idempotent: default_idempotent(),
            out: None,
            format: Format::default(),
            timings: false,
        }
    }

    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read { path: path.into(), source })?;
        serde_json::from_str(&text).map_err(|source| ConfigError::Parse { path: path.into(), source })
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let bad = |msg: String| Err(ConfigError::Invalid(msg));
        if self.m_values.is_empty() || self.m_values.iter().any(|m| !m.is_finite()) {
            return bad(format!("m values must be finite and nonempty, got {:?}", self.m_values));
        }
        if self.grid_steps.len() < 2 || self.grid_steps.iter().any(|s| !(s.is_finite() && *s > 0.0)) {
            return bad(format!("need at least two positive grid steps, got {:?}", self.grid_steps));
        }
        if let Some(t) = self.tol {
            if !(t.is_finite() && t > 0.0) {
                return bad(format!("tolerance must be positive, got {t}"));
            }
        }
        if self.samples == 0 || self.samples > MAX_SAMPLES {
            return bad(format!("samples must be in 1..={MAX_SAMPLES}, got {}", self.samples));
        }
        if self.families == 0 || self.families > MAX_FAMILIES {
            return bad(format!("families must be in 1..={MAX_FAMILIES}, got {}", self.families));
        }
        match &self.family {
            FamilyChoice::Named(n) if n != "random" => return bad(format!("family must be \"random\" or an object, got {n:?}")),
            FamilyChoice::Explicit(f) if f.sp_defect() > 1e-9 => {
                return bad("explicit family has generators outside sp(cl(1,3))".into())
            }
            _ => {}
        }
        HermitianIdempotent::from_label(&self.idempotent).map_err(|e| ConfigError::Invalid(e.to_string()))?;
        Ok(())
    }

    /// Output path after applying [`OUT_DIR_ENV`]: relative paths are placed
    /// in that directory, and with no path a file named after the scenario is.
    pub fn resolved_out(&self, out_dir: Option<&Path>) -> Option<PathBuf> {
        let ext = match self.format {
            Format::Json => "json",
            Format::Text => "txt",
        };
        match (&self.out, out_dir) {
            (Some(p), Some(dir)) if p.is_relative() => Some(dir.join(p)),
            (Some(p), _) => Some(p.clone()),
            (None, Some(dir)) => Some(dir.join(format!("{}-seed{}.{ext}", self.suite, self.seed))),
            (None, None) => None,
        }
    }
}

/// Parses `"a,b,c"` into reals.
pub fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect()
}
