//! One repair run: problem + configuration → diagnosis and verdicts.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use ontorev_core::scoring::{FallbackEmbedder, ScoringConfig};
use ontorev_core::{
    remaining_unsat, revise_all_mips, revise_grouped, unsatisfiable_concepts_in, Diagnosis, ExplanationBudget, Metric,
    Name, Ontology, PairTable, RevisionError, RevisionProblem, ScoringError, SimilarityParams, SimilaritySource,
    Strategy, VectorSimilarity, VectorStore,
};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, clap::ValueEnum)]
pub enum Mode {
    #[value(name = "all-mips")]
    #[serde(rename = "all-mips")]
    AllMips,
    #[value(name = "grouped")]
    #[serde(rename = "grouped")]
    Grouped,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::AllMips => "all-mips",
            Mode::Grouped => "grouped",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all-mips" => Ok(Mode::AllMips),
            "grouped" => Ok(Mode::Grouped),
            _ => Err(format!("unknown mode {s:?}")),
        }
    }
}

/// Where similarities come from.
#[derive(Debug, Clone)]
pub enum SimilarityInput {
    Pairs(PairTable),
    Vectors(VectorStore),
    /// Hashed bag-of-trigrams vectors of the verbalized axioms.
    Fallback {
        dimension: usize,
        seed: u64,
    },
}

fn display<T: fmt::Display, S: serde::Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RunSpec {
    #[serde(serialize_with = "display")]
    pub strategy: Strategy,
    #[serde(serialize_with = "display")]
    pub metric: Metric,
    pub mode: Mode,
    pub step_length: usize,
    pub threshold: f64,
    pub euclid_k: u32,
    pub exclude_self: bool,
    pub timeout_s: u64,
}

impl RunSpec {
    pub fn new(strategy: Strategy, mode: Mode) -> Self {
        RunSpec {
            strategy,
            metric: Metric::Cos,
            mode,
            step_length: RevisionProblem::DEFAULT_STEP_LENGTH,
            threshold: RevisionProblem::DEFAULT_THRESHOLD,
            euclid_k: RevisionProblem::DEFAULT_EUCLID_K,
            exclude_self: false,
            timeout_s: 1000,
        }
    }

    pub fn params(&self) -> SimilarityParams {
        SimilarityParams { threshold: self.threshold, euclid_k: self.euclid_k, exclude_self: self.exclude_self }
    }
}

#[derive(Debug, Clone)]
pub struct RepairOutcome {
    pub diagnosis: Diagnosis,
    pub unsat_before: Vec<Name>,
    pub remaining: Vec<Name>,
    pub repaired: Ontology,
}

impl RepairOutcome {
    pub fn coherent_after(&self) -> bool {
        self.remaining.is_empty()
    }
}

fn build_fallback(problem: &RevisionProblem, dimension: usize, seed: u64) -> Result<VectorStore, ScoringError> {
    if dimension < 8 {
        return Err(ScoringError::Params("fallback dimension must be at least 8"));
    }
    let mut sentences = problem.rebuttal.sentences();
    sentences.extend(problem.reliable.sentences());
    VectorStore::build(&FallbackEmbedder { dimension, seed }, &sentences)
}

pub fn repair(
    problem: &RevisionProblem,
    spec: &RunSpec,
    sim: &SimilarityInput,
) -> Result<RepairOutcome, RevisionError> {
    let problem = problem.clone().with_step_length(spec.step_length);
    let fallback;
    let vector_sim;
    let source: Option<&dyn SimilaritySource> = if spec.strategy.uses_similarity() {
        Some(match sim {
            SimilarityInput::Pairs(t) => t,
            SimilarityInput::Vectors(store) => {
                vector_sim = VectorSimilarity { store, metric: spec.metric, euclid_k: spec.euclid_k };
                &vector_sim
            }
            SimilarityInput::Fallback { dimension, seed } => {
                fallback = build_fallback(&problem, *dimension, *seed)?;
                vector_sim = VectorSimilarity { store: &fallback, metric: spec.metric, euclid_k: spec.euclid_k };
                &vector_sim
            }
        })
    } else {
        None
    };
    let cfg = ScoringConfig { strategy: spec.strategy, similarity: source, params: spec.params() };
    let clock = Instant::now();
    let budget = ExplanationBudget::with_timeout_secs(spec.timeout_s);
    let unsat_before = unsatisfiable_concepts_in(&problem.rebuttal, &problem.reliable, &problem.probe, None).concepts;
    let diagnosis = match spec.mode {
        Mode::AllMips => revise_all_mips(&problem, &cfg, &clock, &budget)?,
        Mode::Grouped => revise_grouped(&problem, &cfg, &clock, &budget)?,
    };
    let remaining = remaining_unsat(&problem, &diagnosis.removed);
    let repaired = diagnosis.apply(&problem.rebuttal);
    Ok(RepairOutcome { diagnosis, unsat_before, remaining, repaired })
}

/// Removed ids as a sorted list of strings.
pub fn removed_ids(d: &Diagnosis) -> Vec<String> {
    d.removed.iter().map(|a| a.to_string()).collect()
}
