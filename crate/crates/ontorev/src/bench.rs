//! Benchmark sweeps over a corpus, one CSV row per run.

use ontorev_core::{RevisionProblem, Strategy};
use serde::Serialize;

use crate::corpus::CorpusPair;
use crate::run::{repair, Mode, RunSpec, SimilarityInput};

/// One run. Field order is the CSV column order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchRow {
    pub pair: String,
    pub strategy: String,
    pub metric: String,
    pub mode: String,
    /// 0 for all-R-MIPS runs.
    pub step_length: usize,
    pub removed_count: usize,
    pub explained_concepts: usize,
    pub mups_count: usize,
    pub mips_count: usize,
    pub explanation_ms: u64,
    pub diagnosis_ms: u64,
    pub coherent_after: bool,
    pub redundant_removed: usize,
}

impl BenchRow {
    /// The row with timing columns zeroed, for run-to-run comparison.
    pub fn untimed(&self) -> BenchRow {
        BenchRow { explanation_ms: 0, diagnosis_ms: 0, ..self.clone() }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub strategies: Vec<Strategy>,
    pub modes: Vec<Mode>,
    pub step_lengths: Vec<usize>,
    /// Template for every run; strategy, mode and step length are overridden.
    pub base: RunSpec,
    pub similarity: SimilarityInput,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchFailure {
    pub pair: String,
    pub strategy: Strategy,
    pub mode: Mode,
    pub step_length: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct BenchResult {
    pub rows: Vec<BenchRow>,
    pub failures: Vec<BenchFailure>,
}

/// Runs every (pair × strategy × mode × step length) combination in that
/// nesting order. A failed run is recorded and the sweep continues.
pub fn run_bench(pairs: &[CorpusPair], cfg: &BenchConfig) -> BenchResult {
    let mut out = BenchResult::default();
    for pair in pairs {
        let problem = RevisionProblem::new(pair.rebuttal.clone(), pair.reliable.clone());
        for &strategy in &cfg.strategies {
            for &mode in &cfg.modes {
                let steps: &[usize] = if mode == Mode::AllMips { &[0] } else { &cfg.step_lengths };
                for &n in steps {
                    let spec = RunSpec {
                        strategy,
                        mode,
                        step_length: if mode == Mode::AllMips { problem.step_length } else { n },
                        ..cfg.base
                    };
                    match repair(&problem, &spec, &cfg.similarity) {
                        Ok(o) => {
                            let s = &o.diagnosis.stats;
                            out.rows.push(BenchRow {
                                pair: pair.name.clone(),
                                strategy: strategy.to_string(),
                                metric: if strategy.uses_similarity() {
                                    spec.metric.to_string()
                                } else {
                                    "none".into()
                                },
                                mode: mode.to_string(),
                                step_length: n,
                                removed_count: o.diagnosis.removed.len(),
                                explained_concepts: s.explained_concepts,
                                mups_count: s.mups_count,
                                mips_count: s.mips_count,
                                explanation_ms: s.explanation_ms,
                                diagnosis_ms: s.diagnosis_ms,
                                coherent_after: o.coherent_after(),
                                redundant_removed: s.redundant_removed,
                            });
                        }
                        Err(e) => out.failures.push(BenchFailure {
                            pair: pair.name.clone(),
                            strategy,
                            mode,
                            step_length: n,
                            message: e.to_string(),
                        }),
                    }
                }
            }
        }
    }
    out
}

/// CSV with a header row, even when there are no rows.
pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    w.write_record([
        "pair",
        "strategy",
        "metric",
        "mode",
        "step_length",
        "removed_count",
        "explained_concepts",
        "mups_count",
        "mips_count",
        "explanation_ms",
        "diagnosis_ms",
        "coherent_after",
        "redundant_removed",
    ])
    .expect("in-memory csv");
    for r in rows {
        w.serialize(r).expect("in-memory csv");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}
