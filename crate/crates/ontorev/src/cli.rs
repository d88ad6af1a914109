//! Command-line interface.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{Args, Parser, Subcommand};
use ontorev_core::scoring::FallbackEmbedder;
use ontorev_core::{
    all_mups, mips_from_mups, serialize_ontology, unsatisfiable_concepts_in, ExplanationBudget, Metric, Ontology,
    ParseOutcome, RevisionError, RevisionProblem, ScoringError, Strategy, Truncation, VectorStore,
};

use crate::bench::{run_bench, to_csv, BenchConfig};
use crate::corpus::{read_corpus, write_corpus, CorpusParams};
use crate::files::{self, FileError};
use crate::report::{CheckReport, ExplainReport, Format, RepairReport};
use crate::run::{repair, Mode, RunSpec, SimilarityInput};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INCOHERENT: u8 = 1;
pub const EXIT_PARSE: u8 = 2;
pub const EXIT_UNRESOLVED: u8 = 3;
pub const EXIT_MISSING_VECTORS: u8 = 4;

const STRATEGY_NAMES: [&str; 8] =
    ["ex-base", "ex-score", "ex-shapley", "ex-sig", "mipsUnion", "mips", "rebuttalOnt", "reliableOnt"];

fn strategy_parser() -> impl TypedValueParser<Value = Strategy> {
    PossibleValuesParser::new(STRATEGY_NAMES).map(|s| s.parse::<Strategy>().expect("listed strategy"))
}

fn metric_parser() -> impl TypedValueParser<Value = Metric> {
    PossibleValuesParser::new(["cos", "euc"]).map(|s| s.parse::<Metric>().expect("listed metric"))
}

#[derive(Debug, Parser)]
#[command(
    name = "ontorev",
    version,
    about = "Revise an ontology against a reliable one by removing conflicting axioms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List unsatisfiable concepts of the rebuttal ontology in the union.
    Check(CheckArgs),
    /// Compute R-MUPS per unsatisfiable concept and the R-MIPS.
    Explain(ExplainArgs),
    /// Remove a diagnosis from the rebuttal ontology.
    Repair(RepairArgs),
    /// Run every strategy/mode combination over a corpus and emit CSV.
    Bench(BenchArgs),
    /// Generate a synthetic corpus of ontology pairs.
    GenCorpus(GenCorpusArgs),
    /// Write the sentence map of one or both ontologies.
    Verbalize(VerbalizeArgs),
    /// Embed a sentence map with the hashed fallback embedder.
    EmbedFallback(EmbedArgs),
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long)]
    pub rebuttal: PathBuf,
    #[arg(long)]
    pub reliable: PathBuf,
    /// Also probe concepts that occur only in the reliable ontology.
    #[arg(long)]
    pub probe_union: bool,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ExplainArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, default_value_t = 1000)]
    pub timeout_s: u64,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SimilarityArgs {
    #[arg(long, value_parser = metric_parser(), default_value = "cos")]
    pub similarity: Metric,
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,
    #[arg(long, default_value_t = 15)]
    pub euclid_k: u32,
    /// Leave an axiom out of the set it is scored against.
    #[arg(long)]
    pub exclude_self: bool,
    /// Vectors file keyed by axiom id.
    #[arg(long, conflicts_with = "pairs_file")]
    pub vectors: Option<PathBuf>,
    /// Fixture of injected pairwise similarities.
    #[arg(long)]
    pub pairs_file: Option<PathBuf>,
    /// Dimension of the fallback embedder used when no vectors are given.
    #[arg(long, default_value_t = 256)]
    pub fallback_dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1000)]
    pub timeout_s: u64,
}

#[derive(Debug, Args)]
pub struct RepairArgs {
    #[command(flatten)]
    pub pair: PairArgs,
    #[arg(long, value_parser = strategy_parser(), default_value = "reliableOnt")]
    pub strategy: Strategy,
    #[command(flatten)]
    pub sim: SimilarityArgs,
    #[arg(long, value_enum, default_value = "all-mips")]
    pub mode: Mode,
    #[arg(long, default_value_t = 10)]
    pub step_length: usize,
    /// Where to write the repaired rebuttal ontology.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the report to this file.
    #[arg(long)]
    pub report: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Directory of pair subdirectories with rebuttal.ofn and reliable.ofn.
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long, value_parser = strategy_parser(), value_delimiter = ',')]
    pub strategy: Vec<Strategy>,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub mode: Vec<Mode>,
    #[arg(long, value_delimiter = ',', default_value = "10")]
    pub step_length: Vec<usize>,
    #[command(flatten)]
    pub sim: SimilarityArgs,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GenCorpusArgs {
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub pairs: usize,
    #[arg(long, default_value_t = 30)]
    pub concepts: usize,
    #[arg(long, default_value_t = 50)]
    pub axioms: usize,
    #[arg(long, default_value_t = 10)]
    pub planted: usize,
}

#[derive(Debug, Args)]
pub struct VerbalizeArgs {
    #[arg(long, required_unless_present = "reliable")]
    pub rebuttal: Option<PathBuf>,
    #[arg(long)]
    pub reliable: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EmbedArgs {
    #[arg(long)]
    pub sentences: PathBuf,
    #[arg(long, default_value_t = 256)]
    pub fallback_dim: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// A failed command: message for stderr and the process exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

impl From<FileError> for Failure {
    fn from(e: FileError) -> Self {
        Failure::new(EXIT_PARSE, e.to_string())
    }
}

impl From<RevisionError> for Failure {
    fn from(e: RevisionError) -> Self {
        let code = match &e {
            RevisionError::Scoring(ScoringError::MissingVector(_) | ScoringError::MissingPair(..)) => {
                EXIT_MISSING_VECTORS
            }
            _ => EXIT_UNRESOLVED,
        };
        Failure::new(code, e.to_string())
    }
}

/// Command output: what to print and the exit code.
#[derive(Debug)]
pub struct Output {
    pub stdout: String,
    pub code: u8,
}

fn ok(stdout: String) -> Output {
    Output { stdout, code: EXIT_OK }
}

fn load_pair(p: &PairArgs) -> Result<(RevisionProblem, Vec<String>), Failure> {
    let k: ParseOutcome = files::read_ontology(&p.rebuttal)?;
    let k0: ParseOutcome = files::read_ontology(&p.reliable)?;
    let mut warnings: Vec<String> = k.warnings().into_iter().map(|w| format!("rebuttal: {w}")).collect();
    warnings.extend(k0.warnings().into_iter().map(|w| format!("reliable: {w}")));
    let mut problem = RevisionProblem::new(k.ontology, k0.ontology);
    if p.probe_union {
        problem = problem.probe_union_signature();
    }
    if !problem.shared.is_empty() {
        warnings.push(format!("{} axiom(s) occur in both ontologies and are kept as reliable", problem.shared.len()));
    }
    Ok((problem, warnings))
}

fn similarity_input(a: &SimilarityArgs) -> Result<(SimilarityInput, String), Failure> {
    if let Some(path) = &a.pairs_file {
        let table = files::read_pairs(path, Some(a.similarity))?;
        return Ok((SimilarityInput::Pairs(table), format!("pairs file {}", path.display())));
    }
    if let Some(path) = &a.vectors {
        if !path.is_file() {
            return Err(Failure::new(EXIT_MISSING_VECTORS, format!("{}: vectors file not found", path.display())));
        }
        let store = files::read_vectors(path)?;
        return Ok((SimilarityInput::Vectors(store), format!("vectors file {}", path.display())));
    }
    if a.fallback_dim < 8 {
        return Err(Failure::new(EXIT_PARSE, "--fallback-dim must be at least 8"));
    }
    let label = format!("fallback embedder (dimension {}, seed {})", a.fallback_dim, a.seed);
    Ok((SimilarityInput::Fallback { dimension: a.fallback_dim, seed: a.seed }, label))
}

fn emit(path: Option<&Path>, text: &str) -> Result<String, Failure> {
    match path {
        Some(p) => {
            files::write(p, text)?;
            Ok(String::new())
        }
        None => Ok(text.to_string()),
    }
}

pub fn check(a: &CheckArgs) -> Result<Output, Failure> {
    let (p, warnings) = load_pair(&a.pair)?;
    let r = unsatisfiable_concepts_in(&p.rebuttal, &p.reliable, &p.probe, None);
    let report = CheckReport::new(&r, warnings);
    Ok(Output { stdout: report.render(a.format), code: if r.is_coherent() { EXIT_OK } else { EXIT_INCOHERENT } })
}

pub fn explain(a: &ExplainArgs) -> Result<Output, Failure> {
    let (p, _) = load_pair(&a.pair)?;
    let clock = Instant::now();
    let budget = ExplanationBudget::with_timeout_secs(a.timeout_s);
    let uc = unsatisfiable_concepts_in(&p.rebuttal, &p.reliable, &p.probe, None).concepts;
    let mut per_concept = Vec::new();
    for c in uc {
        let r = all_mups(&p.rebuttal, &p.reliable, &c, &clock, &budget)
            .map_err(|e| Failure::new(EXIT_UNRESOLVED, e.to_string()))?;
        if r.truncated == Some(Truncation::Timeout) {
            return Err(Failure::new(EXIT_UNRESOLVED, format!("explanation of {c} timed out")));
        }
        per_concept.push((c, r.sets));
    }
    let mips = mips_from_mups(per_concept.iter().flat_map(|(_, m)| m.iter().cloned()));
    let report = ExplainReport::new(&per_concept, &mips, clock.elapsed().as_millis() as u64);
    Ok(ok(report.render(a.format)))
}

pub fn spec_from(strategy: Strategy, mode: Mode, step_length: usize, s: &SimilarityArgs) -> RunSpec {
    RunSpec {
        metric: s.similarity,
        step_length,
        threshold: s.threshold,
        euclid_k: s.euclid_k,
        exclude_self: s.exclude_self,
        timeout_s: s.timeout_s,
        ..RunSpec::new(strategy, mode)
    }
}

pub fn repair_cmd(a: &RepairArgs) -> Result<Output, Failure> {
    let (problem, warnings) = load_pair(&a.pair)?;
    let (sim, label) = similarity_input(&a.sim)?;
    let spec = spec_from(a.strategy, a.mode, a.step_length, &a.sim);
    if a.step_length == 0 {
        return Err(Failure::new(EXIT_PARSE, "--step-length must be at least 1"));
    }
    let outcome = repair(&problem, &spec, &sim)?;
    if let Some(out) = &a.out {
        files::write(out, &serialize_ontology(&outcome.repaired))?;
    }
    let shared: Vec<String> = problem.shared.iter().map(ToString::to_string).collect();
    let report = RepairReport::new(&spec, &label, &problem.rebuttal, &outcome, &shared, warnings);
    let text = report.render(a.format);
    if let Some(path) = &a.report {
        files::write(path, &text)?;
    }
    let code = if outcome.coherent_after() { EXIT_OK } else { EXIT_UNRESOLVED };
    Ok(Output { stdout: text, code })
}

pub fn bench(a: &BenchArgs) -> Result<Output, Failure> {
    let pairs = read_corpus(&a.corpus)?;
    let (similarity, _) = similarity_input(&a.sim)?;
    let cfg = BenchConfig {
        strategies: if a.strategy.is_empty() { Strategy::ALL.to_vec() } else { a.strategy.clone() },
        modes: if a.mode.is_empty() { vec![Mode::AllMips, Mode::Grouped] } else { a.mode.clone() },
        step_lengths: a.step_length.clone(),
        base: spec_from(Strategy::ExBase, Mode::AllMips, 10, &a.sim),
        similarity,
    };
    if cfg.step_lengths.contains(&0) {
        return Err(Failure::new(EXIT_PARSE, "step lengths must be at least 1"));
    }
    let result = run_bench(&pairs, &cfg);
    for f in &result.failures {
        eprintln!("{} {} {} n={}: {}", f.pair, f.strategy, f.mode, f.step_length, f.message);
    }
    let stdout = emit(a.out.as_deref(), &to_csv(&result.rows))?;
    Ok(Output { stdout, code: if result.failures.is_empty() { EXIT_OK } else { EXIT_UNRESOLVED } })
}

pub fn gen_corpus(a: &GenCorpusArgs) -> Result<Output, Failure> {
    let params = CorpusParams {
        seed: a.seed,
        pairs: a.pairs,
        concepts_per_ontology: a.concepts,
        axioms_per_ontology: a.axioms,
        planted_conflicts: a.planted,
    };
    let pairs = write_corpus(&a.out, &params).map_err(|e| Failure::new(EXIT_UNRESOLVED, e.to_string()))?;
    let mut out = String::new();
    for p in &pairs {
        out += &format!(
            "{}: {} rebuttal axioms, {} reliable axioms, {} unsatisfiable concepts\n",
            p.name,
            p.rebuttal.len(),
            p.reliable.len(),
            p.truth.unsat_concepts.len()
        );
    }
    Ok(ok(out))
}

pub fn verbalize_cmd(a: &VerbalizeArgs) -> Result<Output, Failure> {
    let mut all = Ontology::new();
    for path in a.rebuttal.iter().chain(&a.reliable) {
        all.extend(files::read_ontology(path)?.ontology.iter().cloned());
    }
    Ok(ok(emit(a.out.as_deref(), &files::sentences_json(&all.sentences()))?))
}

pub fn embed_fallback(a: &EmbedArgs) -> Result<Output, Failure> {
    if a.fallback_dim < 8 {
        return Err(Failure::new(EXIT_PARSE, "--fallback-dim must be at least 8"));
    }
    let sentences = files::read_sentences(&a.sentences)?;
    let store = VectorStore::build(&FallbackEmbedder { dimension: a.fallback_dim, seed: a.seed }, &sentences)
        .map_err(|e| Failure::new(EXIT_PARSE, e.to_string()))?;
    let text = serde_json::to_string_pretty(&files::VectorsFile::from_store(&store, Some(Metric::Cos)))
        .expect("vectors serialize")
        + "\n";
    Ok(ok(emit(a.out.as_deref(), &text)?))
}

pub fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Check(a) => check(a),
        Command::Explain(a) => explain(a),
        Command::Repair(a) => repair_cmd(a),
        Command::Bench(a) => bench(a),
        Command::GenCorpus(a) => gen_corpus(a),
        Command::Verbalize(a) => verbalize_cmd(a),
        Command::EmbedFallback(a) => embed_fallback(a),
    }
}

pub fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("ontorev: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
