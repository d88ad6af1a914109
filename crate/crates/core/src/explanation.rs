//! R-MUPS enumeration and R-MIPS derivation.
//!
//! A single R-MUPS is found with an expand–shrink search: rebuttal axioms
//! are added in layers of syntactic relevance until the concept becomes
//! unsatisfiable (the reliable ontology is always present), then a linear
//! pass drops every axiom whose removal keeps it unsatisfiable. All R-MUPS
//! are enumerated with a hitting-set tree over the rebuttal axioms.

use alloc::collections::VecDeque;

use crate::budget::{Clock, Deadline, ExplanationBudget};
use crate::ontology::{signature_of, Axiom, AxiomId, EntityId, Name, Ontology};
use crate::prelude::*;
use crate::reasoner::Reasoner;

/// A set of rebuttal axiom ids acting as an R-MUPS, R-MIPS or local R-MIPS.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConflictSet {
    pub axioms: BTreeSet<AxiomId>,
    /// The unsatisfiable concept this set explains, when known.
    pub witness: Option<Name>,
}

impl ConflictSet {
    pub fn new<I: IntoIterator<Item = AxiomId>>(axioms: I, witness: Option<Name>) -> Self {
        ConflictSet { axioms: axioms.into_iter().collect(), witness }
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn contains(&self, id: &AxiomId) -> bool {
        self.axioms.contains(id)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExplanationError {
    #[error("concept {0} is satisfiable; nothing to explain")]
    NotUnsatisfiable(Name),
    /// `partial` still preserves unsatisfiability but is not minimal.
    #[error("explanation of {concept} timed out ({} axioms in partial, non-minimal set)", partial.len())]
    Timeout { concept: Name, partial: BTreeSet<AxiomId> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    Timeout,
    MaxMups,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MupsResult {
    /// R-MUPS found, sorted.
    pub sets: Vec<ConflictSet>,
    /// Set when enumeration stopped early; `sets` may then be incomplete.
    pub truncated: Option<Truncation>,
}

fn unsat_with(selected: &[&Axiom], k0: &Ontology, c: &Name, deadline: &Deadline<'_>) -> bool {
    let mut r = Reasoner::new(selected.iter().copied().chain(k0.iter()));
    r.name_satisfiable(c, Some(deadline)).is_unsat()
}

/// One R-MUPS of `c`: a minimal subset `M` of `k` with `c` unsatisfiable in
/// `M ∪ k0`.
pub fn one_mups(
    k: &Ontology,
    k0: &Ontology,
    c: &Name,
    clock: &dyn Clock,
    budget: &ExplanationBudget,
) -> Result<ConflictSet, ExplanationError> {
    let deadline = Deadline::start(clock, budget.per_task_timeout_ms);
    let all: Vec<&Axiom> = k.iter().collect();
    if !unsat_with(&all, k0, c, &deadline) {
        if deadline.expired() {
            let partial = k.ids();
            return Err(ExplanationError::Timeout { concept: c.clone(), partial });
        }
        return Err(ExplanationError::NotUnsatisfiable(c.clone()));
    }
    extract_one(k, k0, c, &deadline)
}

/// Expand–shrink, assuming `c` is unsatisfiable in `k ∪ k0`.
fn extract_one(
    k: &Ontology,
    k0: &Ontology,
    c: &Name,
    deadline: &Deadline<'_>,
) -> Result<ConflictSet, ExplanationError> {
    let timeout = |partial: &[&Axiom]| ExplanationError::Timeout {
        concept: c.clone(),
        partial: partial.iter().map(|a| a.id().clone()).collect(),
    };
    let mut remaining: Vec<&Axiom> = k.iter().collect();
    remaining.sort_by(|a, b| a.id().cmp(b.id()));
    let mut entities: BTreeSet<EntityId> = [EntityId::concept(c.clone())].into_iter().collect();
    let mut selected: Vec<&Axiom> = Vec::new();

    // Expansion, one relevance layer at a time.
    loop {
        if remaining.is_empty() {
            // Only reachable when k0 alone makes c unsatisfiable.
            break;
        }
        let (mut layer, rest): (Vec<&Axiom>, Vec<&Axiom>) =
            remaining.iter().partition(|a| signature_of(a).iter().any(|e| entities.contains(e)));
        if layer.is_empty() {
            layer = rest.clone();
            remaining.clear();
        } else {
            remaining = rest;
        }
        for a in &layer {
            entities.extend(signature_of(a));
        }
        selected.extend(layer);
        if unsat_with(&selected, k0, c, deadline) {
            break;
        }
        if deadline.expired() {
            let mut all = selected.clone();
            all.extend(remaining.iter());
            return Err(timeout(&all));
        }
    }

    // Shrink: last added first.
    let mut i = selected.len();
    while i > 0 {
        i -= 1;
        if deadline.expired() {
            return Err(timeout(&selected));
        }
        let candidate: Vec<&Axiom> = selected.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, a)| *a).collect();
        if unsat_with(&candidate, k0, c, deadline) {
            selected = candidate;
        }
    }
    if deadline.expired() {
        // The last checks may have been cut short and reported as satisfiable.
        return Err(timeout(&selected));
    }
    Ok(ConflictSet::new(selected.into_iter().map(|a| a.id().clone()), Some(c.clone())))
}

/// All R-MUPS of `c` by hitting-set-tree search.
pub fn all_mups(
    k: &Ontology,
    k0: &Ontology,
    c: &Name,
    clock: &dyn Clock,
    budget: &ExplanationBudget,
) -> Result<MupsResult, ExplanationError> {
    let deadline = Deadline::start(clock, budget.per_task_timeout_ms);
    let all: Vec<&Axiom> = k.iter().collect();
    if !unsat_with(&all, k0, c, &deadline) {
        if deadline.expired() {
            return Ok(MupsResult { sets: Vec::new(), truncated: Some(Truncation::Timeout) });
        }
        return Err(ExplanationError::NotUnsatisfiable(c.clone()));
    }

    let mut found: Vec<BTreeSet<AxiomId>> = Vec::new();
    let mut closed: Vec<BTreeSet<AxiomId>> = Vec::new();
    let mut seen: BTreeSet<BTreeSet<AxiomId>> = BTreeSet::new();
    let mut queue: VecDeque<BTreeSet<AxiomId>> = VecDeque::new();
    let mut truncated = None;
    queue.push_back(BTreeSet::new());
    seen.insert(BTreeSet::new());

    while let Some(path) = queue.pop_front() {
        if deadline.expired() {
            truncated = Some(Truncation::Timeout);
            break;
        }
        if closed.iter().any(|p| p.is_subset(&path)) {
            continue;
        }
        let label = match found.iter().find(|m| m.is_disjoint(&path)) {
            Some(m) => m.clone(),
            None => {
                let rest = k.without(&path);
                let rest_refs: Vec<&Axiom> = rest.iter().collect();
                if !unsat_with(&rest_refs, k0, c, &deadline) {
                    closed.push(path);
                    continue;
                }
                match extract_one(&rest, k0, c, &deadline) {
                    Ok(m) => {
                        found.push(m.axioms.clone());
                        if budget.max_mups_per_concept.is_some_and(|max| found.len() >= max) {
                            truncated = Some(Truncation::MaxMups);
                            break;
                        }
                        m.axioms
                    }
                    Err(ExplanationError::Timeout { .. }) => {
                        truncated = Some(Truncation::Timeout);
                        break;
                    }
                    Err(e) => return Err(e),
                }
            }
        };
        for a in &label {
            let mut child = path.clone();
            child.insert(a.clone());
            if seen.insert(child.clone()) {
                queue.push_back(child);
            }
        }
    }

    let mut sets: Vec<ConflictSet> =
        found.into_iter().map(|m| ConflictSet { axioms: m, witness: Some(c.clone()) }).collect();
    sets.sort();
    Ok(MupsResult { sets, truncated })
}

/// The ⊆-minimal members of a family of conflict sets, deduplicated and
/// sorted. Applied to the R-MUPS of all unsatisfiable concepts this yields
/// the R-MIPS; applied to a group of concepts, the local R-MIPS.
pub fn mips_from_mups<I>(family: I) -> Vec<ConflictSet>
where
    I: IntoIterator<Item = ConflictSet>,
{
    let mut all: Vec<ConflictSet> = family.into_iter().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<ConflictSet> = Vec::new();
    for s in all {
        if !kept.iter().any(|m| m.axioms.is_subset(&s.axioms)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// R-MUPS of every concept in `concepts`, in order.
pub fn explain_concepts(
    k: &Ontology,
    k0: &Ontology,
    concepts: &[Name],
    clock: &dyn Clock,
    budget: &ExplanationBudget,
) -> Result<Vec<(Name, MupsResult)>, ExplanationError> {
    concepts.iter().map(|c| all_mups(k, k0, c, clock, budget).map(|r| (c.clone(), r))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::NullClock;
    use crate::syntax::{parse_axiom, parse_ontology};

    fn onto(text: &str) -> Ontology {
        parse_ontology(text).unwrap().ontology
    }

    fn id(text: &str) -> AxiomId {
        parse_axiom(text).unwrap().id().clone()
    }

    fn name(s: &str) -> Name {
        Name::new(s).unwrap()
    }

    fn set(ids: &[&str]) -> BTreeSet<AxiomId> {
        ids.iter().map(|s| AxiomId::clone(&id(s))).collect()
    }

    #[test]
    fn disjoint_superclasses_give_one_mups() {
        let k = onto("SubClassOf(A B)\nSubClassOf(A C)\n");
        let k0 = onto("DisjointClasses(B C)\n");
        let r = all_mups(&k, &k0, &name("A"), &NullClock, &ExplanationBudget::default()).unwrap();
        assert_eq!(r.truncated, None);
        assert_eq!(r.sets.len(), 1);
        assert_eq!(r.sets[0].axioms, set(&["SubClassOf(A B)", "SubClassOf(A C)"]));
    }

    #[test]
    fn two_independent_reasons() {
        let k = onto("SubClassOf(A B)\nSubClassOf(A C)\nSubClassOf(A D)\nSubClassOf(D B)\n");
        let k0 = onto("DisjointClasses(B C)\n");
        let r = all_mups(&k, &k0, &name("A"), &NullClock, &ExplanationBudget::default()).unwrap();
        let got: Vec<_> = r.sets.iter().map(|s| s.axioms.clone()).collect();
        let mut want = vec![
            set(&["SubClassOf(A B)", "SubClassOf(A C)"]),
            set(&["SubClassOf(A C)", "SubClassOf(A D)", "SubClassOf(D B)"]),
        ];
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn max_mups_truncates() {
        let k = onto("SubClassOf(A B)\nSubClassOf(A C)\nSubClassOf(A D)\nSubClassOf(D B)\n");
        let k0 = onto("DisjointClasses(B C)\n");
        let budget = ExplanationBudget { max_mups_per_concept: Some(1), ..Default::default() };
        let r = all_mups(&k, &k0, &name("A"), &NullClock, &budget).unwrap();
        assert_eq!(r.truncated, Some(Truncation::MaxMups));
        assert_eq!(r.sets.len(), 1);
    }

    #[test]
    fn satisfiable_concept_is_an_error() {
        let k = onto("SubClassOf(A B)\n");
        let err = one_mups(&k, &Ontology::new(), &name("A"), &NullClock, &ExplanationBudget::default());
        assert_eq!(err.unwrap_err(), ExplanationError::NotUnsatisfiable(name("A")));
    }

    #[test]
    fn minimal_filter() {
        let a = ConflictSet::new(set(&["SubClassOf(A B)"]), None);
        let ab = ConflictSet::new(set(&["SubClassOf(A B)", "SubClassOf(A C)"]), None);
        let out = mips_from_mups([ab.clone(), a.clone(), a.clone()]);
        assert_eq!(out, vec![a]);
    }

    struct Ticking(core::cell::Cell<u64>);
    impl Clock for Ticking {
        fn now_ms(&self) -> u64 {
            let t = self.0.get();
            self.0.set(t + 10);
            t
        }
    }

    #[test]
    fn timeout_returns_non_minimal_superset() {
        let k = onto("SubClassOf(A B)\nSubClassOf(A C)\nSubClassOf(A D)\nSubClassOf(D B)\n");
        let k0 = onto("DisjointClasses(B C)\n");
        let budget = ExplanationBudget { per_task_timeout_ms: 15, max_mups_per_concept: None };
        match one_mups(&k, &k0, &name("A"), &Ticking(core::cell::Cell::new(0)), &budget) {
            Err(ExplanationError::Timeout { partial, .. }) => {
                assert!(partial.len() >= 2);
                let sub = k.restricted_to(&partial);
                assert!(!crate::reasoner::is_coherent(sub.iter().chain(k0.iter()), &[name("A")]));
            }
            other => panic!("expected timeout, got {other:?}"),
        }
        let r = all_mups(&k, &k0, &name("A"), &Ticking(core::cell::Cell::new(0)), &budget).unwrap();
        assert_eq!(r.truncated, Some(Truncation::Timeout));
    }
}
