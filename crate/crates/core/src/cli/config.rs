//! TOML run configuration.
//!
//! Relative paths are resolved against the directory holding the config
//! file. Command-line flags override the file.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::clustering::{DateCoarsening, PipelineConfig, RunMode};
use crate::entity::TargetEntity;
use crate::topic::LdaParams;
use crate::vectorizer::VectorizerOptions;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSource {
    pub name: String,
    /// A TimeML file, a `.jsonl` file, or a directory of either.
    pub path: String,
    /// Treat every non-stopword argument token as a noun (TimeML only).
    #[serde(default)]
    pub noun_fallback: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrainingConfig {
    /// Plain text, one document per line, or a directory with one document
    /// per file.
    pub corpus: String,
    pub topics: usize,
    /// Defaults to 50 / topics.
    pub alpha: Option<f64>,
    #[serde(default = "default_beta")]
    pub beta: f64,
    #[serde(default = "default_iterations")]
    pub iterations: usize,
    #[serde(default = "default_min_count")]
    pub min_count: usize,
}

fn default_beta() -> f64 {
    0.01
}

fn default_iterations() -> usize {
    1000
}

fn default_min_count() -> usize {
    1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClusteringConfig {
    #[serde(default = "default_k")]
    pub k: usize,
    #[serde(default = "default_min_split")]
    pub min_split_size: usize,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
    #[serde(default)]
    pub coarsening: DateCoarsening,
}

fn default_k() -> usize {
    2
}

fn default_min_split() -> usize {
    3
}

fn default_max_iter() -> usize {
    100
}

impl Default for ClusteringConfig {
    fn default() -> Self {
        Self {
            k: default_k(),
            min_split_size: default_min_split(),
            max_iter: default_max_iter(),
            coarsening: DateCoarsening::Exact,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// Required; there is deliberately no implicit default.
    pub seed: Option<u64>,
    #[serde(default)]
    pub mode: RunMode,
    /// Model file read by `build` and written by `train`.
    pub model: Option<String>,
    pub output_dir: Option<String>,
    pub gold_dir: Option<String>,
    #[serde(default, rename = "corpus")]
    pub corpora: Vec<CorpusSource>,
    #[serde(default, rename = "target")]
    pub targets: Vec<TargetEntity>,
    pub training: Option<TrainingConfig>,
    #[serde(default)]
    pub clustering: ClusteringConfig,
    #[serde(default)]
    pub vectorizer: VectorizerOptions,
    #[serde(skip)]
    pub base_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: None,
            mode: RunMode::Run1,
            model: None,
            output_dir: None,
            gold_dir: None,
            corpora: Vec::new(),
            targets: Vec::new(),
            training: None,
            clustering: ClusteringConfig::default(),
            vectorizer: VectorizerOptions::default(),
            base_dir: PathBuf::from("."),
        }
    }
}

impl RunConfig {
    pub fn parse(text: &str, base_dir: &Path) -> Result<Self, CliError> {
        let mut config: RunConfig = toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        config.base_dir = base_dir.to_path_buf();
        Ok(config)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read config {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        Self::parse(&text, base).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn resolve(&self, path: &str) -> PathBuf {
        let p = Path::new(path);
        if p.is_absolute() {
            p.to_path_buf()
        } else {
            self.base_dir.join(p)
        }
    }

    pub fn seed(&self) -> Result<u64, CliError> {
        self.seed.ok_or_else(|| CliError::Config("`seed` is required".into()))
    }

    pub fn lda_params(&self) -> Result<(LdaParams, &TrainingConfig), CliError> {
        let training = self
            .training
            .as_ref()
            .ok_or_else(|| CliError::Config("missing [training] section".into()))?;
        let mut params = LdaParams::with_topics(training.topics, self.seed()?);
        if let Some(alpha) = training.alpha {
            params.alpha = alpha;
        }
        params.beta = training.beta;
        params.iterations = training.iterations;
        Ok((params, training))
    }

    /// Checks the keys `build` needs.
    pub fn check_build(&self) -> Result<(), CliError> {
        self.seed()?;
        if self.corpora.is_empty() {
            return Err(CliError::Config("no [[corpus]] entries".into()));
        }
        if self.targets.is_empty() {
            return Err(CliError::Config("no [[target]] entries".into()));
        }
        if let Some(t) = self.targets.iter().find(|t| t.name.trim().is_empty() || t.name.contains('\n')) {
            return Err(CliError::Config(format!("invalid target name {:?}", t.name)));
        }
        let mut names: Vec<&str> = self.corpora.iter().map(|c| c.name.as_str()).collect();
        names.sort_unstable();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(CliError::Config(format!("corpus name `{}` used twice", w[0])));
        }
        if let Some(c) = self.corpora.iter().find(|c| !is_plain_name(&c.name)) {
            return Err(CliError::Config(format!("corpus name `{}` is not a plain file name", c.name)));
        }
        if self.output_dir.is_none() {
            return Err(CliError::Config("`output_dir` is required".into()));
        }
        if self.mode == RunMode::Run2 && self.model.is_none() && self.training.is_none() {
            return Err(CliError::Config("mode run2 needs `model` or a [training] section".into()));
        }
        if self.clustering.k == 0 || self.clustering.max_iter == 0 {
            return Err(CliError::Config("clustering k and max_iter must be at least 1".into()));
        }
        Ok(())
    }

    pub fn pipeline(&self) -> Result<PipelineConfig, CliError> {
        let mut config = PipelineConfig::new(self.mode, self.seed()?);
        config.k = self.clustering.k;
        config.min_split_size = self.clustering.min_split_size;
        config.max_iter = self.clustering.max_iter;
        config.coarsening = self.clustering.coarsening;
        config.vectorizer = self.vectorizer;
        Ok(config)
    }
}

fn is_plain_name(name: &str) -> bool {
    !name.is_empty() && name != "." && name != ".." && !name.contains(['/', '\\'])
}
