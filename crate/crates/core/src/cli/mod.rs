//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 invalid input,
//! 3 internal invariant violation.

mod config;
mod io;

use std::collections::{BTreeMap, BTreeSet};
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

pub use config::{ClusteringConfig, CorpusSource, RunConfig, TrainingConfig};
pub use io::{load_corpus, load_reference, write_atomic};

use crate::clustering::{run_pipeline, ClusterError, DateCoarsening, PreparedCorpus, RunMode};
use crate::corpus::{AnnotatedDocument, ParseOptions};
use crate::scorer::{report_table, report_tsv, MatchMode, ScoreReport};
use crate::temporal::{build_graph, close, GraphStatus};
use crate::text::stopword_set;
use crate::timeline::{assemble, read_timeline, target_slug, write_timeline, Timeline};
use crate::topic::{build_vocabulary, load_model, save_model, train_lda, checksum_hex, TopicError, TopicModel};
use crate::vectorizer::{matrix_tsv, vectorize_with};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Input(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 1,
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }
}

fn model_error(path: &Path, e: TopicError) -> CliError {
    match e {
        TopicError::Config(m) => CliError::Config(m),
        TopicError::TopicOutOfRange { .. } => CliError::Internal(e.to_string()),
        other => CliError::Input(format!("{}: {other}", path.display())),
    }
}

fn cluster_error(e: ClusterError) -> CliError {
    match e {
        ClusterError::MissingModel => CliError::Config(e.to_string()),
        ClusterError::InvalidInput(_) => CliError::Internal(e.to_string()),
    }
}

#[derive(Debug, Parser)]
#[command(name = "timeline-coref", version, about = "Build and score entity timelines from TimeML news")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Train an LDA topic model on the reference corpus.
    Train(TrainArgs),
    /// Write one timeline per target and corpus.
    Build(BuildArgs),
    /// Score predicted timelines against gold timelines.
    Score(ScoreArgs),
    /// Parse and check annotated documents.
    Validate(InputArgs),
    /// Print the event-topic matrix.
    DumpMatrix(DumpMatrixArgs),
    /// Print the closed temporal graph of each document.
    DumpGraph(InputArgs),
}

#[derive(Debug, Args)]
struct TrainArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    topics: Option<usize>,
    #[arg(long)]
    iterations: Option<usize>,
    /// Model output path; defaults to `model` from the config.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Run1,
    Run2,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CoarseningArg {
    Exact,
    Day,
    Month,
}

#[derive(Debug, Args)]
struct BuildArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long)]
    model: Option<PathBuf>,
    #[arg(long)]
    min_split_size: Option<usize>,
    #[arg(long, value_enum)]
    coarsening: Option<CoarseningArg>,
}

#[derive(Debug, Args)]
struct ScoreArgs {
    /// Supplies `output_dir` and `gold_dir` when the flags are absent.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    pred: Option<PathBuf>,
    #[arg(long)]
    gold: Option<PathBuf>,
    /// Also write a TSV report here.
    #[arg(long)]
    tsv: Option<PathBuf>,
    /// Match mentions and their relative order instead of dates.
    #[arg(long)]
    order_only: bool,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Checks every corpus of this config when no paths are given.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    noun_fallback: bool,
    paths: Vec<PathBuf>,
}

#[derive(Debug, Args)]
struct DumpMatrixArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    model: Option<PathBuf>,
}

fn absolute(path: &Path) -> String {
    std::path::absolute(path).unwrap_or_else(|_| path.to_path_buf()).display().to_string()
}

fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    RunConfig::load(path)
}

/// Summary printed by `train`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainSummary {
    pub documents: usize,
    pub vocabulary: usize,
    pub topics: usize,
    pub iterations: usize,
    pub checksum: String,
}

pub fn train_model(config: &RunConfig) -> Result<TopicModel, CliError> {
    let (params, training) = config.lda_params()?;
    let path = config.resolve(&training.corpus);
    let corpus = load_reference(&path)?;
    let vocab = build_vocabulary(&corpus, training.min_count, &stopword_set()).map_err(|e| model_error(&path, e))?;
    log::info!(
        "training {} topics on {} documents ({} words), {} iterations",
        params.topics,
        corpus.len(),
        vocab.len(),
        params.iterations
    );
    train_lda(&corpus, &vocab, &params).map_err(|e| match e {
        TopicError::EmptyCorpus => CliError::Input(format!("{}: {e}", path.display())),
        other => model_error(&path, other),
    })
}

/// Trains and writes the model; returns what was written.
pub fn cmd_train(config: &RunConfig, out: &Path) -> Result<TrainSummary, CliError> {
    let (_, training) = config.lda_params()?;
    let documents = load_reference(&config.resolve(&training.corpus))?.len();
    let model = train_model(config)?;
    let bytes = save_model(&model);
    write_atomic(out, &bytes)?;
    Ok(TrainSummary {
        documents,
        vocabulary: model.vocab().len(),
        topics: model.topics(),
        iterations: model.params().iterations,
        checksum: checksum_hex(&bytes),
    })
}

fn load_model_file(path: &Path) -> Result<TopicModel, CliError> {
    load_model(&io::read_bytes(path)?).map_err(|e| model_error(path, e))
}

/// The model `build` uses: the configured file, else one trained from the
/// `[training]` section. Run 1 needs none.
fn build_model(config: &RunConfig) -> Result<Option<TopicModel>, CliError> {
    if config.mode == RunMode::Run1 {
        return Ok(None);
    }
    match &config.model {
        Some(path) => load_model_file(&config.resolve(path)).map(Some),
        None => train_model(config).map(Some),
    }
}

#[derive(Debug, Serialize)]
struct FileDigest {
    path: String,
    sha256: String,
}

#[derive(Debug, Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    config: &'a RunConfig,
    inputs: Vec<FileDigest>,
    outputs: Vec<FileDigest>,
}

/// Path as written in the manifest: relative to `base` when below it.
fn manifest_path(path: &Path, base: &Path) -> String {
    path.strip_prefix(base).unwrap_or(path).display().to_string()
}

/// Files written by `build`, relative to the output directory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BuildSummary {
    pub timelines: Vec<PathBuf>,
    pub manifest: PathBuf,
}

pub fn cmd_build(config: &RunConfig) -> Result<BuildSummary, CliError> {
    config.check_build()?;
    let pipeline = config.pipeline()?;
    let out_dir = config.resolve(config.output_dir.as_deref().unwrap_or("."));

    let mut slugs = BTreeSet::new();
    for target in &config.targets {
        if !slugs.insert(target_slug(&target.name)) {
            return Err(CliError::Config(format!(
                "targets share the file name {}.txt",
                target_slug(&target.name)
            )));
        }
    }

    let mut inputs = Vec::new();
    let model = build_model(config)?;
    if let (Some(_), Some(path)) = (&model, &config.model) {
        let path = config.resolve(path);
        inputs.push(FileDigest {
            path: manifest_path(&path, &config.base_dir),
            sha256: checksum_hex(&io::read_bytes(&path)?),
        });
    }

    let mut outputs: Vec<(PathBuf, String)> = Vec::new();
    for source in &config.corpora {
        let path = config.resolve(&source.path);
        for file in io::corpus_files(&path)? {
            inputs.push(FileDigest {
                path: manifest_path(&file, &config.base_dir),
                sha256: checksum_hex(&io::read_bytes(&file)?),
            });
        }
        let docs = load_corpus(&path, ParseOptions { noun_fallback: source.noun_fallback })?;
        log::info!("corpus {}: {} documents", source.name, docs.len());
        let corpus = PreparedCorpus::new(docs);
        for target in &config.targets {
            let clusters = run_pipeline(&corpus, target, model.as_ref(), &pipeline).map_err(cluster_error)?;
            let timeline = assemble(&clusters, target, &corpus);
            log::info!("{} / {}: {} timeline entries", source.name, target.name, timeline.entries.len());
            if let Some(m) = timeline.duplicate_mention() {
                return Err(CliError::Internal(format!("mention {m} placed twice for {}", target.name)));
            }
            let rel = PathBuf::from(&source.name).join(format!("{}.txt", target_slug(&target.name)));
            outputs.push((rel, write_timeline(&timeline)));
        }
    }

    for (rel, text) in &outputs {
        write_atomic(&out_dir.join(rel), text.as_bytes())?;
    }
    let manifest = Manifest {
        tool: env!("CARGO_PKG_NAME"),
        version: env!("CARGO_PKG_VERSION"),
        config,
        inputs,
        outputs: outputs
            .iter()
            .map(|(rel, text)| FileDigest {
                path: rel.display().to_string(),
                sha256: checksum_hex(text.as_bytes()),
            })
            .collect(),
    };
    let mut json = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::Internal(e.to_string()))?;
    json.push('\n');
    write_atomic(&out_dir.join("manifest.json"), json.as_bytes())?;
    Ok(BuildSummary {
        timelines: outputs.into_iter().map(|(rel, _)| rel).collect(),
        manifest: PathBuf::from("manifest.json"),
    })
}

/// Timeline files of a directory grouped by corpus: one corpus per
/// subdirectory, plus `default` for `.txt` files at the top level.
fn timeline_dirs(dir: &Path) -> Result<BTreeMap<String, BTreeMap<String, PathBuf>>, CliError> {
    if !dir.is_dir() {
        return Err(CliError::Config(format!("{} is not a directory", dir.display())));
    }
    let txt = |files: Vec<PathBuf>| -> BTreeMap<String, PathBuf> {
        files
            .into_iter()
            .filter(|p| p.extension().is_some_and(|e| e == "txt"))
            .filter_map(|p| Some((p.file_stem()?.to_str()?.to_string(), p)))
            .collect()
    };
    let mut corpora = BTreeMap::new();
    let top = txt(io::sorted_files(dir)?);
    if !top.is_empty() {
        corpora.insert("default".to_string(), top);
    }
    let mut subdirs: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::Config(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_dir())
        .collect();
    subdirs.sort();
    for sub in subdirs {
        let Some(name) = sub.file_name().and_then(|n| n.to_str()) else { continue };
        corpora.insert(name.to_string(), txt(io::sorted_files(&sub)?));
    }
    Ok(corpora)
}

fn read_timeline_file(path: &Path) -> Result<Timeline, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    read_timeline(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Scores every timeline file under `pred` against the same relative path
/// under `gold`. A missing gold file counts as an empty gold timeline and is
/// warned about; a missing predicted file counts as an empty prediction.
pub fn cmd_score(pred: &Path, gold: &Path, mode: MatchMode) -> Result<ScoreReport, CliError> {
    let pred_dirs = timeline_dirs(pred)?;
    let gold_dirs = timeline_dirs(gold)?;
    let names: BTreeSet<&String> = pred_dirs.keys().chain(gold_dirs.keys()).collect();
    let empty = BTreeMap::new();
    let mut report = ScoreReport::default();
    for name in names {
        let p = pred_dirs.get(name).unwrap_or(&empty);
        let g = gold_dirs.get(name).unwrap_or(&empty);
        let mut pred_tl = Vec::new();
        let mut gold_tl = Vec::new();
        for (stem, path) in p {
            let mut tl = read_timeline_file(path)?;
            match g.get(stem) {
                Some(gold_path) => {
                    let gold = read_timeline_file(gold_path)?;
                    // pair by file name even if the header spelling differs
                    tl.target = gold.target.clone();
                    gold_tl.push(gold);
                }
                None => log::warn!("no gold timeline for {}; scoring against an empty one", path.display()),
            }
            pred_tl.push(tl);
        }
        for (stem, path) in g {
            if !p.contains_key(stem) {
                gold_tl.push(read_timeline_file(path)?);
            }
        }
        report
            .add_corpus(name, &pred_tl, &gold_tl, mode)
            .map_err(|e| CliError::Input(format!("corpus {name}: {e}")))?;
    }
    Ok(report)
}

fn input_documents(args: &InputArgs) -> Result<Vec<(String, Vec<AnnotatedDocument>)>, CliError> {
    let options = ParseOptions { noun_fallback: args.noun_fallback };
    if !args.paths.is_empty() {
        return args
            .paths
            .iter()
            .map(|p| Ok((p.display().to_string(), load_corpus(p, options)?)))
            .collect();
    }
    let Some(path) = &args.config else {
        return Err(CliError::Config("give corpus paths or --config".into()));
    };
    let config = load_config(path)?;
    if config.corpora.is_empty() {
        return Err(CliError::Config("no [[corpus]] entries".into()));
    }
    config
        .corpora
        .iter()
        .map(|c| {
            let options = ParseOptions { noun_fallback: c.noun_fallback || args.noun_fallback };
            Ok((c.name.clone(), load_corpus(&config.resolve(&c.path), options)?))
        })
        .collect()
}

fn dump_graphs(docs: &[AnnotatedDocument]) -> String {
    let mut out = String::new();
    for doc in docs {
        let graph = close(&build_graph(doc));
        let status = match graph.status() {
            GraphStatus::Consistent => "consistent",
            GraphStatus::Inconsistent => "inconsistent",
        };
        let _ = writeln!(out, "# {} {status}", doc.doc_id);
        out.push_str(&graph.dump());
    }
    out
}

fn dump_matrix(config: &RunConfig, model_override: Option<&Path>) -> Result<String, CliError> {
    let model = match (model_override, &config.model) {
        (Some(p), _) => load_model_file(p)?,
        (None, Some(p)) => load_model_file(&config.resolve(p))?,
        (None, None) => train_model(config)?,
    };
    let mut out = String::new();
    for source in &config.corpora {
        let options = ParseOptions { noun_fallback: source.noun_fallback };
        for doc in load_corpus(&config.resolve(&source.path), options)? {
            let rows: Vec<_> = doc.events.iter().map(|e| vectorize_with(e, &model, config.vectorizer)).collect();
            let _ = writeln!(out, "# {} {}", source.name, doc.doc_id);
            out.push_str(&matrix_tsv(&rows));
        }
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Train(args) => {
            let mut config = load_config(&args.config)?;
            if let Some(seed) = args.seed {
                config.seed = Some(seed);
            }
            if let Some(training) = config.training.as_mut() {
                if let Some(k) = args.topics {
                    training.topics = k;
                    training.alpha = None;
                }
                if let Some(n) = args.iterations {
                    training.iterations = n;
                }
            }
            let out = match (&args.out, &config.model) {
                (Some(p), _) => p.clone(),
                (None, Some(p)) => config.resolve(p),
                (None, None) => return Err(CliError::Config("no --out and no `model` in the config".into())),
            };
            let s = cmd_train(&config, &out)?;
            println!(
                "trained {} topics on {} documents, vocabulary {} words, {} iterations",
                s.topics, s.documents, s.vocabulary, s.iterations
            );
            println!("wrote {} (sha256 {})", out.display(), s.checksum);
        }
        Command::Build(args) => {
            let mut config = load_config(&args.config)?;
            if let Some(mode) = args.mode {
                config.mode = match mode {
                    ModeArg::Run1 => RunMode::Run1,
                    ModeArg::Run2 => RunMode::Run2,
                };
            }
            if let Some(seed) = args.seed {
                config.seed = Some(seed);
            }
            if let Some(out) = &args.output {
                config.output_dir = Some(absolute(out));
            }
            if let Some(model) = &args.model {
                config.model = Some(absolute(model));
            }
            if let Some(n) = args.min_split_size {
                config.clustering.min_split_size = n;
            }
            if let Some(c) = args.coarsening {
                config.clustering.coarsening = match c {
                    CoarseningArg::Exact => DateCoarsening::Exact,
                    CoarseningArg::Day => DateCoarsening::Day,
                    CoarseningArg::Month => DateCoarsening::Month,
                };
            }
            let summary = cmd_build(&config)?;
            let out_dir = config.resolve(config.output_dir.as_deref().unwrap_or("."));
            for rel in &summary.timelines {
                println!("{}", out_dir.join(rel).display());
            }
        }
        Command::Score(args) => {
            let config = args.config.as_deref().map(load_config).transpose()?;
            let from_config = |key: fn(&RunConfig) -> Option<&String>| {
                config.as_ref().and_then(|c| key(c).map(|p| c.resolve(p)))
            };
            let pred = args
                .pred
                .clone()
                .or_else(|| from_config(|c| c.output_dir.as_ref()))
                .ok_or_else(|| CliError::Config("no --pred directory".into()))?;
            let gold = args
                .gold
                .clone()
                .or_else(|| from_config(|c| c.gold_dir.as_ref()))
                .ok_or_else(|| CliError::Config("no --gold directory".into()))?;
            let mode = if args.order_only { MatchMode::OrderOnly } else { MatchMode::Anchored };
            let report = cmd_score(&pred, &gold, mode)?;
            print!("{}", report_table(&report));
            if let Some(tsv) = &args.tsv {
                write_atomic(tsv, report_tsv(&report).as_bytes())?;
            }
        }
        Command::Validate(args) => {
            for (name, docs) in input_documents(&args)? {
                let events: usize = docs.iter().map(|d| d.events.len()).sum();
                println!("{name}: ok, {} documents, {events} events", docs.len());
            }
        }
        Command::DumpGraph(args) => {
            for (_, docs) in input_documents(&args)? {
                print!("{}", dump_graphs(&docs));
            }
        }
        Command::DumpMatrix(args) => {
            let config = load_config(&args.config)?;
            print!("{}", dump_matrix(&config, args.model.as_deref())?);
        }
    }
    Ok(())
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn main_with_args<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    ExitCode::from(main_with_args(std::env::args_os()))
}
