use std::path::{Path, PathBuf};

use serde::Deserialize;

use semiweyl::{AxisSpec, Truncation};

use crate::CliError;

/// One experiment, read from a single JSON document.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub name: String,
    pub group: String,
    #[serde(default)]
    pub truncation: TruncationConfig,
    #[serde(default)]
    pub omit: Vec<LabelValue>,
    #[serde(default = "default_weights")]
    pub weights: String,
    #[serde(default = "default_testset")]
    pub testset: String,
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
    #[serde(default)]
    pub iwasawa: Option<IwasawaConfig>,
    /// Directory that relative paths resolve against.
    #[serde(skip)]
    pub base_dir: PathBuf,
}

fn default_weights() -> String {
    "unit".into()
}

fn default_testset() -> String {
    "random:count=8".into()
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    /// Threshold for prime-Parseval membership verdicts.
    #[serde(default)]
    pub membership: Option<f64>,
}

/// `"full"`, a bare number (max `|lambda|`), `{"max_magnitude": x}` or
/// `{"max_count": n}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum TruncationConfig {
    Magnitude(f64),
    Named(String),
    Bound { max_magnitude: f64 },
    Count { max_count: usize },
}

impl Default for TruncationConfig {
    fn default() -> Self {
        Self::Named("full".into())
    }
}

impl TruncationConfig {
    pub fn resolve(&self) -> Result<Truncation, CliError> {
        match self {
            Self::Named(s) if s == "full" => Ok(Truncation::Full),
            Self::Named(s) => Err(CliError::Config(format!("unknown truncation `{s}`"))),
            Self::Magnitude(x) | Self::Bound { max_magnitude: x } => Ok(Truncation::MaxMagnitude(*x)),
            Self::Count { max_count } => Ok(Truncation::MaxCount(*max_count)),
        }
    }
}

/// Labels may be written as JSON numbers (`3`, `-2`) or strings (`"1/2"`).
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum LabelValue {
    Int(i64),
    Text(String),
}

impl LabelValue {
    pub fn as_label(&self) -> String {
        match self {
            Self::Int(k) => k.to_string(),
            Self::Text(s) => s.clone(),
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IwasawaConfig {
    /// Defaults to the experiment group.
    #[serde(rename = "K", default)]
    pub k: Option<String>,
    #[serde(rename = "A")]
    pub a: AxisSpec,
    #[serde(rename = "N")]
    pub n: AxisSpec,
    #[serde(default = "default_profile")]
    pub profile: String,
    /// Also write the lifted family over the product grid.
    #[serde(default)]
    pub export_lifted: bool,
}

fn default_profile() -> String {
    "uniform".into()
}

impl ExperimentConfig {
    pub fn from_json(text: &str, base_dir: &Path) -> Result<Self, CliError> {
        let mut cfg: Self = serde_json::from_str(text).map_err(|e| CliError::Config(format!("config: {e}")))?;
        cfg.base_dir = base_dir.to_path_buf();
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config `{}`: {e}", path.display())))?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Self::from_json(&text, &base)
    }

    pub fn resolve(&self, p: &str) -> PathBuf {
        self.base_dir.join(p)
    }

    fn validate(&self) -> Result<(), CliError> {
        if self.name.is_empty() || self.name.contains(['/', '\\']) {
            return Err(CliError::Config(format!("experiment name `{}` is not a plain file stem", self.name)));
        }
        if let Some(e) = self.epsilon {
            if e.is_nan() || e <= 0.0 {
                return Err(CliError::Config(format!("epsilon must be positive, got {e}")));
            }
        }
        if let Some(t) = self.tolerances.membership {
            check_tol(t)?;
        }
        self.truncation.resolve()?;
        let mut paths = Vec::new();
        if let Some(p) = self.weights.strip_prefix("table:") {
            paths.push(p);
        }
        if let Some(p) = self.iwasawa.as_ref().and_then(|i| i.profile.strip_prefix("table:")) {
            paths.push(p);
        }
        paths.extend(self.testset.split(';').filter_map(|s| s.trim().strip_prefix("samples:")));
        for p in paths {
            if !self.resolve(p).is_file() {
                return Err(CliError::Config(format!("referenced file `{p}` does not exist")));
            }
        }
        Ok(())
    }
}

pub fn check_tol(t: f64) -> Result<(), CliError> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(CliError::Config(format!("tolerance must be positive and finite, got {t}")))
    }
}
