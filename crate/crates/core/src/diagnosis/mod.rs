//! Diagnoses: subset extraction, hitting sets, minimization and the two
//! revision procedures.
//!
//! [`revise_all_mips`] explains every unsatisfiable concept up front and
//! computes one diagnosis over all R-MIPS. [`revise_grouped`] explains
//! concepts `n` at a time, removes a local diagnosis after each group and
//! minimizes the union of local diagnoses at the end.

mod hitting_set;

pub use hitting_set::{min_hitting_set, HittingSetError};

use crate::budget::{Clock, ExplanationBudget};
use crate::explanation::{all_mups, mips_from_mups, ConflictSet, ExplanationError, Truncation};
use crate::ontology::{AxiomId, Name, Ontology, RevisionProblem};
use crate::prelude::*;
use crate::reasoner::{unsatisfiable_concepts_in, Reasoner};
use crate::scoring::{score_axioms, Direction, ScoreTable, ScoringConfig, ScoringError, Strategy};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RevisionError {
    #[error("explaining {concept} timed out after {} completed groups", trace.len())]
    Timeout { concept: Name, trace: Vec<GroupTrace> },
    #[error("explanation of {concept} hit the R-MUPS cap; the diagnosis would be incomplete")]
    Incomplete { concept: Name, trace: Vec<GroupTrace> },
    #[error(transparent)]
    Explanation(#[from] ExplanationError),
    #[error(transparent)]
    Scoring(#[from] ScoringError),
    #[error(transparent)]
    HittingSet(#[from] HittingSetError),
    #[error("axiom {0} in a conflict set has no score")]
    MissingScore(AxiomId),
    #[error("step length must be at least 1")]
    StepLength,
    #[error("repair left {} concepts unsatisfiable", .0.len())]
    Unresolved(Vec<Name>),
}

/// Per-conflict-set extremal axioms.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtractedFamily {
    pub subsets: Vec<BTreeSet<AxiomId>>,
    pub source: Vec<ConflictSet>,
}

/// Keeps, for each conflict set, every axiom attaining the highest score
/// (lowest for pick-min strategies). Ties are all kept.
pub fn extract_subsets(mips: &[ConflictSet], scores: &ScoreTable) -> Result<ExtractedFamily, RevisionError> {
    let mut subsets = Vec::with_capacity(mips.len());
    for m in mips {
        let mut scored = Vec::with_capacity(m.len());
        for id in &m.axioms {
            let s = scores.get(id).ok_or_else(|| RevisionError::MissingScore(id.clone()))?;
            scored.push((id, s));
        }
        let extreme = scored.iter().map(|&(_, s)| s).reduce(|a, b| match scores.direction {
            Direction::PickMax => a.max(b),
            Direction::PickMin => a.min(b),
        });
        subsets.push(match extreme {
            Some(e) => scored.iter().filter(|&&(_, s)| s == e).map(|&(id, _)| id.clone()).collect(),
            None => BTreeSet::new(),
        });
    }
    Ok(ExtractedFamily { subsets, source: mips.to_vec() })
}

/// Axioms to delete so that every conflict set in `mips` is broken, using
/// `cfg.strategy` to decide which axioms of each set are candidates. The
/// working rebuttal ontology `k` matters for the rebuttal-ontology score.
pub fn compute_diagnosis(
    k: &Ontology,
    k0: &Ontology,
    mips: &[ConflictSet],
    cfg: &ScoringConfig<'_>,
) -> Result<BTreeSet<AxiomId>, RevisionError> {
    if mips.is_empty() {
        return Ok(BTreeSet::new());
    }
    if cfg.strategy == Strategy::ExBase {
        let raw: Vec<BTreeSet<AxiomId>> = mips.iter().map(|m| m.axioms.clone()).collect();
        return Ok(min_hitting_set(&raw)?);
    }
    let scores = score_axioms(k, k0, mips, cfg)?;
    let family = extract_subsets(mips, &scores)?;
    Ok(min_hitting_set(&family.subsets)?)
}

/// One group of the grouped procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTrace {
    pub index: usize,
    pub concepts: Vec<Name>,
    pub mups_count: usize,
    pub local_mips_count: usize,
    pub local_diagnosis: BTreeSet<AxiomId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RevisionStats {
    /// Unsatisfiable concepts before repair.
    pub unsat_concepts: usize,
    /// Concepts whose R-MUPS were computed.
    pub explained_concepts: usize,
    pub mups_count: usize,
    /// R-MIPS count, or the sum of local R-MIPS counts when grouped.
    pub mips_count: usize,
    /// Diagnosis size before minimization.
    pub pre_minimization: usize,
    pub redundant_removed: usize,
    pub explanation_ms: u64,
    pub diagnosis_ms: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Diagnosis {
    pub removed: BTreeSet<AxiomId>,
    /// Re-adding any single removed axiom makes the union incoherent.
    pub minimal: bool,
    pub trace: Vec<GroupTrace>,
    /// R-MIPS the diagnosis was computed from (all-R-MIPS mode only).
    pub mips: Vec<ConflictSet>,
    pub stats: RevisionStats,
}

impl Diagnosis {
    fn empty(minimal: bool) -> Self {
        Diagnosis {
            removed: BTreeSet::new(),
            minimal,
            trace: Vec::new(),
            mips: Vec::new(),
            stats: RevisionStats::default(),
        }
    }

    /// The repaired rebuttal ontology.
    pub fn apply(&self, k: &Ontology) -> Ontology {
        k.without(&self.removed)
    }
}

fn coherent_without(problem: &RevisionProblem, removed: &BTreeSet<AxiomId>) -> bool {
    let mut r =
        Reasoner::new(problem.rebuttal.iter().filter(|a| !removed.contains(a.id())).chain(problem.reliable.iter()));
    problem.probe.iter().all(|c| r.name_satisfiable(c, None).satisfiable)
}

/// Drops redundant axioms from `d`, in ascending id order: `α` is put back
/// when the union stays coherent with it. Checks run against the original
/// rebuttal ontology of `problem` and its probe set.
pub fn minimize_diagnosis(problem: &RevisionProblem, d: &BTreeSet<AxiomId>) -> Diagnosis {
    let mut kept = d.clone();
    for alpha in d {
        kept.remove(alpha);
        if !coherent_without(problem, &kept) {
            kept.insert(alpha.clone());
        }
    }
    let stats =
        RevisionStats { pre_minimization: d.len(), redundant_removed: d.len() - kept.len(), ..Default::default() };
    Diagnosis { removed: kept, minimal: true, trace: Vec::new(), mips: Vec::new(), stats }
}

/// `true` iff removing `removed` repairs `problem` and no single axiom of
/// it could be kept.
pub fn is_minimal_repair(problem: &RevisionProblem, removed: &BTreeSet<AxiomId>) -> bool {
    if !coherent_without(problem, removed) {
        return false;
    }
    removed.iter().all(|alpha| {
        let mut fewer = removed.clone();
        fewer.remove(alpha);
        !coherent_without(problem, &fewer)
    })
}

fn elapsed(clock: &dyn Clock, since: u64) -> u64 {
    clock.now_ms().saturating_sub(since)
}

fn explain(
    k: &Ontology,
    k0: &Ontology,
    c: &Name,
    clock: &dyn Clock,
    budget: &ExplanationBudget,
    trace: &[GroupTrace],
) -> Result<Vec<ConflictSet>, RevisionError> {
    let r = all_mups(k, k0, c, clock, budget).map_err(|e| match e {
        ExplanationError::Timeout { concept, .. } => RevisionError::Timeout { concept, trace: trace.to_vec() },
        e => e.into(),
    })?;
    match r.truncated {
        None => Ok(r.sets),
        Some(Truncation::Timeout) => Err(RevisionError::Timeout { concept: c.clone(), trace: trace.to_vec() }),
        Some(Truncation::MaxMups) => Err(RevisionError::Incomplete { concept: c.clone(), trace: trace.to_vec() }),
    }
}

/// Revision over all R-MIPS. Non-baseline strategies minimize the result;
/// the baseline's minimum hitting set over complete R-MIPS already is.
pub fn revise_all_mips(
    problem: &RevisionProblem,
    cfg: &ScoringConfig<'_>,
    clock: &dyn Clock,
    budget: &ExplanationBudget,
) -> Result<Diagnosis, RevisionError> {
    let (k, k0) = (&problem.rebuttal, &problem.reliable);
    let t0 = clock.now_ms();
    let uc = unsatisfiable_concepts_in(k, k0, &problem.probe, None).concepts;
    if uc.is_empty() {
        return Ok(Diagnosis::empty(true));
    }
    let mut mups = Vec::new();
    for c in &uc {
        mups.extend(explain(k, k0, c, clock, budget, &[])?);
    }
    let mups_count = mups.len();
    let mips = mips_from_mups(mups);
    let explanation_ms = elapsed(clock, t0);

    let t1 = clock.now_ms();
    let d = compute_diagnosis(k, k0, &mips, cfg)?;
    let mut out = if cfg.strategy == Strategy::ExBase {
        let stats = RevisionStats { pre_minimization: d.len(), ..Default::default() };
        Diagnosis { removed: d, minimal: true, trace: Vec::new(), mips: Vec::new(), stats }
    } else {
        minimize_diagnosis(problem, &d)
    };
    out.stats.diagnosis_ms = elapsed(clock, t1);
    out.stats.explanation_ms = explanation_ms;
    out.stats.unsat_concepts = uc.len();
    out.stats.explained_concepts = uc.len();
    out.stats.mups_count = mups_count;
    out.stats.mips_count = mips.len();
    out.mips = mips;
    Ok(out)
}

/// Revision group by group: at most `problem.step_length` unsatisfiable
/// concepts are explained against the current rebuttal ontology, their
/// local R-MIPS diagnosed and the diagnosis removed before the next group.
/// Concepts already repaired by earlier groups are skipped.
pub fn revise_grouped(
    problem: &RevisionProblem,
    cfg: &ScoringConfig<'_>,
    clock: &dyn Clock,
    budget: &ExplanationBudget,
) -> Result<Diagnosis, RevisionError> {
    let n = problem.step_length;
    if n == 0 {
        return Err(RevisionError::StepLength);
    }
    let k0 = &problem.reliable;
    let uc = unsatisfiable_concepts_in(&problem.rebuttal, k0, &problem.probe, None).concepts;
    if uc.is_empty() {
        return Ok(Diagnosis::empty(true));
    }

    let mut working = problem.rebuttal.clone();
    let mut removed: BTreeSet<AxiomId> = BTreeSet::new();
    let mut trace: Vec<GroupTrace> = Vec::new();
    let mut stats = RevisionStats { unsat_concepts: uc.len(), ..Default::default() };
    let mut group: Vec<Name> = Vec::new();
    let mut pool: Vec<ConflictSet> = Vec::new();

    let close_group = |working: &mut Ontology,
                       group: &mut Vec<Name>,
                       pool: &mut Vec<ConflictSet>,
                       trace: &mut Vec<GroupTrace>,
                       stats: &mut RevisionStats,
                       removed: &mut BTreeSet<AxiomId>|
     -> Result<(), RevisionError> {
        let t = clock.now_ms();
        let mups_count = pool.len();
        let local = mips_from_mups(core::mem::take(pool));
        let d = compute_diagnosis(working, k0, &local, cfg)?;
        *working = working.without(&d);
        removed.extend(d.iter().cloned());
        stats.mips_count += local.len();
        stats.diagnosis_ms += elapsed(clock, t);
        trace.push(GroupTrace {
            index: trace.len(),
            concepts: core::mem::take(group),
            mups_count,
            local_mips_count: local.len(),
            local_diagnosis: d,
        });
        Ok(())
    };

    for c in &uc {
        let t = clock.now_ms();
        let still_unsat = Reasoner::new(working.iter().chain(k0.iter())).name_satisfiable(c, None).is_unsat();
        if still_unsat {
            let sets = explain(&working, k0, c, clock, budget, &trace)?;
            stats.explained_concepts += 1;
            stats.mups_count += sets.len();
            pool.extend(sets);
            group.push(c.clone());
        }
        stats.explanation_ms += elapsed(clock, t);
        if group.len() == n {
            close_group(&mut working, &mut group, &mut pool, &mut trace, &mut stats, &mut removed)?;
        }
    }
    if !group.is_empty() {
        close_group(&mut working, &mut group, &mut pool, &mut trace, &mut stats, &mut removed)?;
    }

    let t = clock.now_ms();
    let mut out = minimize_diagnosis(problem, &removed);
    stats.diagnosis_ms += elapsed(clock, t);
    stats.pre_minimization = out.stats.pre_minimization;
    stats.redundant_removed = out.stats.redundant_removed;
    out.stats = stats;
    out.trace = trace;
    Ok(out)
}

/// Concepts of `problem` still unsatisfiable after removing `removed`.
pub fn remaining_unsat(problem: &RevisionProblem, removed: &BTreeSet<AxiomId>) -> Vec<Name> {
    let k = problem.rebuttal.without(removed);
    unsatisfiable_concepts_in(&k, &problem.reliable, &problem.probe, None).concepts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::NullClock;
    use crate::scoring::{PairTable, SimilarityParams};
    use crate::syntax::{parse_axiom, parse_ontology};

    fn onto(text: &str) -> Ontology {
        parse_ontology(text).unwrap().ontology
    }

    fn id(text: &str) -> AxiomId {
        parse_axiom(text).unwrap().id().clone()
    }

    const PHI: [&str; 7] = [
        "SubClassOf(MasterStudent Student)",
        "SubClassOf(BachlorStudent Student)",
        "SubClassOf(Judge ObjectComplementOf(Student))",
        "SubClassOf(Judge Person)",
        "SubClassOf(StudentJudge Student)",
        "SubClassOf(StudentJudge Judge)",
        "SubObjectPropertyOf(hasClassmate hasRelation)",
    ];

    fn example() -> RevisionProblem {
        let k0 = onto(&PHI[..3].join("\n"));
        let k = onto(&PHI[3..].join("\n"));
        RevisionProblem::new(k, k0)
    }

    fn example_pairs() -> PairTable {
        let mut t = PairTable::new(None);
        for (i, s) in [0.81, 0.78, 0.74].into_iter().enumerate() {
            t.insert(id(PHI[4]), id(PHI[i]), s);
        }
        for (i, s) in [0.61, 0.54, 0.56].into_iter().enumerate() {
            t.insert(id(PHI[5]), id(PHI[i]), s);
        }
        t
    }

    #[test]
    fn example_extraction_and_repair() {
        let p = example();
        let pairs = example_pairs();
        let cfg = ScoringConfig::with_similarity(Strategy::ReliableOnt, &pairs, SimilarityParams::default());
        let mips = [ConflictSet::new([id(PHI[4]), id(PHI[5])], None)];
        let scores = score_axioms(&p.rebuttal, &p.reliable, &mips, &cfg).unwrap();
        assert!((scores.get(&id(PHI[4])).unwrap() - 0.5825).abs() < 1e-12);
        assert!((scores.get(&id(PHI[5])).unwrap() - 0.4275).abs() < 1e-12);
        let fam = extract_subsets(&mips, &scores).unwrap();
        assert_eq!(fam.subsets, [BTreeSet::from([id(PHI[5])])]);

        let d = revise_all_mips(&p, &cfg, &NullClock, &ExplanationBudget::default()).unwrap();
        assert_eq!(d.removed, BTreeSet::from([id(PHI[5])]));
        assert!(d.minimal);
        assert!(remaining_unsat(&p, &d.removed).is_empty());

        let g =
            revise_grouped(&p.clone().with_step_length(1), &cfg, &NullClock, &ExplanationBudget::default()).unwrap();
        assert_eq!(g.removed, d.removed);
        assert_eq!(g.trace.len(), 1);
    }

    #[test]
    fn coherent_input_gives_empty_diagnosis() {
        let p = RevisionProblem::new(onto(PHI[3]), onto(PHI[2]));
        for s in [Strategy::ExBase, Strategy::ExScore] {
            let cfg = ScoringConfig::counting(s);
            let d = revise_all_mips(&p, &cfg, &NullClock, &ExplanationBudget::default()).unwrap();
            assert!(d.removed.is_empty());
            let d = revise_grouped(&p, &cfg, &NullClock, &ExplanationBudget::default()).unwrap();
            assert!(d.removed.is_empty());
        }
    }

    #[test]
    fn ties_are_kept() {
        let mips = [ConflictSet::new([id("SubClassOf(A B)"), id("SubClassOf(C D)")], None)];
        let scores = ScoreTable {
            entries: mips[0].axioms.iter().map(|a| (a.clone(), 0.3)).collect(),
            strategy: Strategy::Mips,
            similarity: None,
            direction: Direction::PickMax,
        };
        assert_eq!(extract_subsets(&mips, &scores).unwrap().subsets[0], mips[0].axioms);
    }

    #[test]
    fn running_example_minimization() {
        // a1 appears in both conflicts; a2 only in the first.
        let k = onto("SubClassOf(X A)\nSubClassOf(X B)\nSubClassOf(X C)\n");
        let k0 = onto("DisjointClasses(A B)\nDisjointClasses(A C)\n");
        let p = RevisionProblem::new(k, k0);
        let (a1, a2) = (id("SubClassOf(X A)"), id("SubClassOf(X B)"));
        let d = minimize_diagnosis(&p, &BTreeSet::from([a1.clone(), a2]));
        assert_eq!(d.removed, BTreeSet::from([a1]));
        assert_eq!(d.stats.redundant_removed, 1);
        assert!(is_minimal_repair(&p, &d.removed));
    }

    #[test]
    fn ex_base_hits_raw_sets() {
        let (a, b, c) = (id("SubClassOf(A Z)"), id("SubClassOf(B Z)"), id("SubClassOf(C Z)"));
        let mips = [ConflictSet::new([a, b.clone()], None), ConflictSet::new([b.clone(), c], None)];
        let d =
            compute_diagnosis(&Ontology::new(), &Ontology::new(), &mips, &ScoringConfig::counting(Strategy::ExBase));
        assert_eq!(d.unwrap(), BTreeSet::from([b]));
    }

    #[test]
    fn zero_step_length_is_rejected() {
        let p = example().with_step_length(0);
        let err =
            revise_grouped(&p, &ScoringConfig::counting(Strategy::ExScore), &NullClock, &ExplanationBudget::default());
        assert_eq!(err.unwrap_err(), RevisionError::StepLength);
    }
}
