//! Reports for `check`, `explain` and `repair` in text, CSV and JSON.

use std::fmt::Write as _;

use ontorev_core::{verbalize, ConflictSet, Name, Ontology, UnsatReport};
use serde::Serialize;

use crate::run::{RepairOutcome, RunSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Structured,
}

fn csv_line(fields: &[String]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(fields).expect("in-memory csv");
    String::from_utf8(w.into_inner().expect("in-memory csv")).expect("utf-8 csv")
}

fn pretty<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes") + "\n"
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub coherent: bool,
    pub unsatisfiable: Vec<String>,
    pub resource_notes: Vec<String>,
    pub warnings: Vec<String>,
}

impl CheckReport {
    pub fn new(r: &UnsatReport, warnings: Vec<String>) -> Self {
        CheckReport {
            coherent: r.is_coherent(),
            unsatisfiable: r.concepts.iter().map(ToString::to_string).collect(),
            resource_notes: r.notes.iter().map(|(c, n)| format!("{c}: {n:?}")).collect(),
            warnings,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Structured => pretty(self),
            Format::Csv => {
                let mut out = csv_line(&["concept".into()]);
                for c in &self.unsatisfiable {
                    out += &csv_line(std::slice::from_ref(c));
                }
                out
            }
            Format::Text => {
                let mut out = String::new();
                if self.coherent {
                    out += "coherent\n";
                } else {
                    let _ = writeln!(out, "incoherent: {} unsatisfiable concept(s)", self.unsatisfiable.len());
                    for c in &self.unsatisfiable {
                        let _ = writeln!(out, "  {c}");
                    }
                }
                for n in &self.resource_notes {
                    let _ = writeln!(out, "note: {n} (reported as satisfiable)");
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConceptExplanation {
    pub concept: String,
    pub mups: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Counts {
    pub unsat_concepts: usize,
    pub mups_total: usize,
    pub mups_per_concept_min: usize,
    pub mups_per_concept_max: usize,
    pub mups_per_concept_avg: f64,
    pub mips_count: usize,
    pub mips_sizes: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExplainReport {
    pub counts: Counts,
    pub concepts: Vec<ConceptExplanation>,
    pub mips: Vec<Vec<String>>,
    pub timing: ExplainTiming,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExplainTiming {
    pub explanation_ms: u64,
}

fn ids(s: &ConflictSet) -> Vec<String> {
    s.axioms.iter().map(ToString::to_string).collect()
}

impl ExplainReport {
    pub fn new(per_concept: &[(Name, Vec<ConflictSet>)], mips: &[ConflictSet], explanation_ms: u64) -> Self {
        let sizes: Vec<usize> = per_concept.iter().map(|(_, m)| m.len()).collect();
        let total: usize = sizes.iter().sum();
        let counts = Counts {
            unsat_concepts: per_concept.len(),
            mups_total: total,
            mups_per_concept_min: sizes.iter().copied().min().unwrap_or(0),
            mups_per_concept_max: sizes.iter().copied().max().unwrap_or(0),
            mups_per_concept_avg: if sizes.is_empty() { 0.0 } else { total as f64 / sizes.len() as f64 },
            mips_count: mips.len(),
            mips_sizes: mips.iter().map(ConflictSet::len).collect(),
        };
        ExplainReport {
            counts,
            concepts: per_concept
                .iter()
                .map(|(c, m)| ConceptExplanation { concept: c.to_string(), mups: m.iter().map(ids).collect() })
                .collect(),
            mips: mips.iter().map(ids).collect(),
            timing: ExplainTiming { explanation_ms },
        }
    }

    pub fn render(&self, format: Format) -> String {
        let c = &self.counts;
        match format {
            Format::Structured => pretty(self),
            Format::Csv => {
                let header = [
                    "unsat_concepts",
                    "mups_total",
                    "mups_min",
                    "mups_max",
                    "mups_avg",
                    "mips_count",
                    "mips_max_size",
                    "explanation_ms",
                ];
                let row = [
                    c.unsat_concepts.to_string(),
                    c.mups_total.to_string(),
                    c.mups_per_concept_min.to_string(),
                    c.mups_per_concept_max.to_string(),
                    format!("{:.3}", c.mups_per_concept_avg),
                    c.mips_count.to_string(),
                    c.mips_sizes.iter().max().copied().unwrap_or(0).to_string(),
                    self.timing.explanation_ms.to_string(),
                ];
                csv_line(&header.map(String::from)) + &csv_line(&row)
            }
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(out, "unsatisfiable concepts: {}", c.unsat_concepts);
                let _ = writeln!(
                    out,
                    "R-MUPS: {} total (per concept min {}, max {}, avg {:.2})",
                    c.mups_total, c.mups_per_concept_min, c.mups_per_concept_max, c.mups_per_concept_avg
                );
                let _ = writeln!(out, "R-MIPS: {} (sizes {:?})", c.mips_count, c.mips_sizes);
                for e in &self.concepts {
                    let _ = writeln!(out, "{}:", e.concept);
                    for m in &e.mups {
                        let _ = writeln!(out, "  {{{}}}", m.join(", "));
                    }
                }
                let _ = writeln!(out, "explanation time: {} ms", self.timing.explanation_ms);
                out
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RemovedAxiom {
    pub id: String,
    pub sentence: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupEntry {
    pub index: usize,
    pub concepts: Vec<String>,
    pub mups_count: usize,
    pub local_mips_count: usize,
    pub local_diagnosis: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RepairTiming {
    pub explanation_ms: u64,
    pub diagnosis_ms: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RepairReport {
    pub config: RunSpec,
    pub similarity_source: String,
    pub minimization_order: &'static str,
    pub unsat_before: Vec<String>,
    pub removed: Vec<RemovedAxiom>,
    pub minimal: bool,
    pub explained_concepts: usize,
    pub mups_count: usize,
    pub mips_count: usize,
    pub pre_minimization: usize,
    pub redundant_removed: usize,
    pub groups: Vec<GroupEntry>,
    pub coherent_after: bool,
    pub remaining_unsat: Vec<String>,
    pub shared_axioms_kept: Vec<String>,
    pub warnings: Vec<String>,
    pub timing: RepairTiming,
}

impl RepairReport {
    pub fn new(
        spec: &RunSpec,
        similarity_source: &str,
        rebuttal: &Ontology,
        outcome: &RepairOutcome,
        shared: &[String],
        warnings: Vec<String>,
    ) -> Self {
        let d = &outcome.diagnosis;
        let s = &d.stats;
        RepairReport {
            config: *spec,
            similarity_source: if spec.strategy.uses_similarity() { similarity_source.into() } else { "none".into() },
            minimization_order: "ascending axiom id",
            unsat_before: outcome.unsat_before.iter().map(ToString::to_string).collect(),
            removed: d
                .removed
                .iter()
                .map(|id| RemovedAxiom {
                    id: id.to_string(),
                    sentence: rebuttal.get(id.as_str()).map(verbalize).unwrap_or_default(),
                })
                .collect(),
            minimal: d.minimal,
            explained_concepts: s.explained_concepts,
            mups_count: s.mups_count,
            mips_count: s.mips_count,
            pre_minimization: s.pre_minimization,
            redundant_removed: s.redundant_removed,
            groups: d
                .trace
                .iter()
                .map(|g| GroupEntry {
                    index: g.index,
                    concepts: g.concepts.iter().map(ToString::to_string).collect(),
                    mups_count: g.mups_count,
                    local_mips_count: g.local_mips_count,
                    local_diagnosis: g.local_diagnosis.iter().map(ToString::to_string).collect(),
                })
                .collect(),
            coherent_after: outcome.coherent_after(),
            remaining_unsat: outcome.remaining.iter().map(ToString::to_string).collect(),
            shared_axioms_kept: shared.to_vec(),
            warnings,
            timing: RepairTiming { explanation_ms: s.explanation_ms, diagnosis_ms: s.diagnosis_ms },
        }
    }

    pub fn render(&self, format: Format) -> String {
        let c = &self.config;
        match format {
            Format::Structured => pretty(self),
            Format::Csv => {
                let mut out = csv_line(&["removed_id".into(), "sentence".into()]);
                for r in &self.removed {
                    out += &csv_line(&[r.id.clone(), r.sentence.clone()]);
                }
                out
            }
            Format::Text => {
                let mut out = String::new();
                let _ = writeln!(
                    out,
                    "strategy {} | similarity {} ({}) | mode {} | step length {} | t = {} | k = {}",
                    c.strategy, c.metric, self.similarity_source, c.mode, c.step_length, c.threshold, c.euclid_k
                );
                let _ = writeln!(out, "unsatisfiable before repair: {}", self.unsat_before.len());
                let _ = writeln!(
                    out,
                    "explained {} concept(s): {} R-MUPS, {} R-MIPS",
                    self.explained_concepts, self.mups_count, self.mips_count
                );
                for g in &self.groups {
                    let _ = writeln!(
                        out,
                        "group {}: {} concept(s), {} local R-MIPS, removed {}",
                        g.index,
                        g.concepts.len(),
                        g.local_mips_count,
                        g.local_diagnosis.len()
                    );
                }
                let _ = writeln!(
                    out,
                    "removed {} axiom(s) ({} redundant dropped, minimized in {}):",
                    self.removed.len(),
                    self.redundant_removed,
                    self.minimization_order
                );
                for r in &self.removed {
                    let _ = writeln!(out, "  {}    # {}", r.id, r.sentence);
                }
                let _ = writeln!(out, "coherent after repair: {}", if self.coherent_after { "yes" } else { "no" });
                for u in &self.remaining_unsat {
                    let _ = writeln!(out, "  still unsatisfiable: {u}");
                }
                for w in &self.warnings {
                    let _ = writeln!(out, "warning: {w}");
                }
                let _ = writeln!(
                    out,
                    "time: explanation {} ms, diagnosis {} ms",
                    self.timing.explanation_ms, self.timing.diagnosis_ms
                );
                out
            }
        }
    }
}
