//! Tableau procedure for concept satisfiability in ALCH.
//!
//! Concepts are put in negation normal form and hash-consed into an arena.
//! Axioms are preprocessed as follows:
//!
//! * `A ⊑ D` with `A` atomic is unfolded lazily: `D` is added wherever `A` is.
//! * `∃r.⊤ ⊑ D` (object property domains) fires on every `∃s.C` with `s ⊑* r`.
//! * `⊤ ⊑ D` (including ranges as `∀r.D`) is added to every node.
//! * Disjunctive left-hand sides are split, everything else becomes `¬C ⊔ D`
//!   on every node.
//!
//! Nodes are expanded depth-first: ⊓ and unfolding first, then ⊔ (left
//! branch first, chronological backtracking), then one successor per `∃`
//! with `∀`-propagation through the reflexive-transitive role hierarchy.
//! A node whose label is a subset of an ancestor's label is blocked. Once
//! the depth bound is reached the search gives up and answers
//! "satisfiable" with a [`ResourceNote`], so unsatisfiability is never
//! reported falsely.

use core::cell::Cell;

use crate::budget::Deadline;
use crate::ontology::{Axiom, AxiomForm, Concept, Name, Ontology};
use crate::prelude::*;

pub const DEFAULT_DEPTH_BOUND: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ResourceNote {
    DepthBoundHit,
    Timeout,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SatVerdict {
    pub satisfiable: bool,
    /// Present when the search was cut short; the verdict is then `true`.
    pub resource_note: Option<ResourceNote>,
    /// Number of rule applications, for reproducibility checks.
    pub steps: u64,
}

impl SatVerdict {
    pub fn is_unsat(&self) -> bool {
        !self.satisfiable
    }
}

type NodeId = u32;
type RoleId = u32;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
enum Node {
    Top,
    Bottom,
    Atom(u32),
    NegAtom(u32),
    And(Vec<NodeId>),
    Or(Vec<NodeId>),
    Exists(RoleId, NodeId),
    Forall(RoleId, NodeId),
}

#[derive(Debug, Clone, Default)]
struct Arena {
    nodes: Vec<Node>,
    lookup: BTreeMap<Node, NodeId>,
    atoms: BTreeMap<Name, u32>,
    roles: BTreeMap<Name, RoleId>,
}

impl Arena {
    fn intern(&mut self, n: Node) -> NodeId {
        if let Some(&id) = self.lookup.get(&n) {
            return id;
        }
        let id = self.nodes.len() as NodeId;
        self.nodes.push(n.clone());
        self.lookup.insert(n, id);
        id
    }

    fn atom(&mut self, name: &Name) -> u32 {
        let next = self.atoms.len() as u32;
        *self.atoms.entry(name.clone()).or_insert(next)
    }

    fn role(&mut self, name: &Name) -> RoleId {
        let next = self.roles.len() as RoleId;
        *self.roles.entry(name.clone()).or_insert(next)
    }

    fn get(&self, id: NodeId) -> &Node {
        &self.nodes[id as usize]
    }

    /// NNF of `c` (or of `¬c` when `negated`).
    fn nnf(&mut self, c: &Concept, negated: bool) -> NodeId {
        let node = match (c, negated) {
            (Concept::Top, false) | (Concept::Bottom, true) => Node::Top,
            (Concept::Top, true) | (Concept::Bottom, false) => Node::Bottom,
            (Concept::Atomic(n), false) => Node::Atom(self.atom(n)),
            (Concept::Atomic(n), true) => Node::NegAtom(self.atom(n)),
            (Concept::Not(inner), _) => return self.nnf(inner, !negated),
            (Concept::And(cs), false) | (Concept::Or(cs), true) => Node::And(self.nnf_operands(cs, negated)),
            (Concept::Or(cs), false) | (Concept::And(cs), true) => Node::Or(self.nnf_operands(cs, negated)),
            (Concept::Exists(r, f), false) | (Concept::Forall(r, f), true) => {
                let r = self.role(r);
                Node::Exists(r, self.nnf(f, negated))
            }
            (Concept::Forall(r, f), false) | (Concept::Exists(r, f), true) => {
                let r = self.role(r);
                Node::Forall(r, self.nnf(f, negated))
            }
        };
        self.intern(node)
    }

    fn nnf_operands(&mut self, cs: &[Concept], negated: bool) -> Vec<NodeId> {
        let mut ids: Vec<NodeId> = cs.iter().map(|c| self.nnf(c, negated)).collect();
        ids.sort_unstable();
        ids.dedup();
        ids
    }
}

/// Preprocessed TBox ready for satisfiability queries.
#[derive(Debug, Clone)]
pub struct Reasoner {
    arena: Arena,
    /// Concepts added to every node.
    universal: Vec<NodeId>,
    /// Lazy unfolding: atom index -> consequences.
    unfold: BTreeMap<u32, Vec<NodeId>>,
    /// Domain rules: `∃role.⊤ ⊑ concept`.
    domains: Vec<(RoleId, NodeId)>,
    /// Told sub-role pairs, closed on demand by `build_hierarchy`.
    sub_roles: Vec<(RoleId, RoleId)>,
    /// `supers[r]` = all `s` with `r ⊑* s` (reflexive).
    supers: Vec<BTreeSet<RoleId>>,
    depth_bound: usize,
}

impl Reasoner {
    pub fn new<'a, I>(axioms: I) -> Self
    where
        I: IntoIterator<Item = &'a Axiom>,
    {
        let mut r = Reasoner {
            arena: Arena::default(),
            universal: Vec::new(),
            unfold: BTreeMap::new(),
            domains: Vec::new(),
            sub_roles: Vec::new(),
            supers: Vec::new(),
            depth_bound: DEFAULT_DEPTH_BOUND,
        };
        for a in axioms {
            r.add_axiom(a);
        }
        r.universal.sort_unstable();
        r.universal.dedup();
        r.build_hierarchy();
        r
    }

    pub fn from_ontologies(k: &Ontology, k0: &Ontology) -> Self {
        Self::new(k.iter().chain(k0.iter()))
    }

    pub fn with_depth_bound(mut self, bound: usize) -> Self {
        self.depth_bound = bound;
        self
    }

    fn add_axiom(&mut self, a: &Axiom) {
        match a.form() {
            AxiomForm::SubClassOf { sub, sup } => self.absorb(sub, sup, false),
            AxiomForm::EquivalentClasses(x, y) => {
                self.absorb(x, y, false);
                self.absorb(y, x, false);
            }
            AxiomForm::DisjointClasses(x, y) => {
                if absorbable(x) || !absorbable(y) {
                    self.absorb(x, y, true)
                } else {
                    self.absorb(y, x, true)
                }
            }
            AxiomForm::SubRoleOf { sub, sup } => {
                let s = self.arena.role(sub);
                let t = self.arena.role(sup);
                self.sub_roles.push((s, t));
            }
            AxiomForm::Domain { role, filler } => {
                let r = self.arena.role(role);
                let c = self.arena.nnf(filler, false);
                self.domains.push((r, c));
            }
            AxiomForm::Range { role, filler } => {
                let r = self.arena.role(role);
                let c = self.arena.nnf(filler, false);
                let all = self.arena.intern(Node::Forall(r, c));
                self.universal.push(all);
            }
        }
    }

    /// Records `sub ⊑ sup` (or `sub ⊑ ¬sup` when `negate_sup`).
    fn absorb(&mut self, sub: &Concept, sup: &Concept, negate_sup: bool) {
        match sub {
            Concept::Bottom => {}
            Concept::Top => {
                let d = self.arena.nnf(sup, negate_sup);
                self.universal.push(d);
            }
            Concept::Atomic(n) => {
                let a = self.arena.atom(n);
                let d = self.arena.nnf(sup, negate_sup);
                self.unfold.entry(a).or_default().push(d);
            }
            Concept::Or(cs) => cs.iter().for_each(|c| self.absorb(c, sup, negate_sup)),
            Concept::Exists(r, f) if **f == Concept::Top => {
                let r = self.arena.role(r);
                let d = self.arena.nnf(sup, negate_sup);
                self.domains.push((r, d));
            }
            _ => {
                let not_sub = self.arena.nnf(sub, true);
                let d = self.arena.nnf(sup, negate_sup);
                let gci = self.arena.intern(Node::Or(sorted_pair(not_sub, d)));
                self.universal.push(gci);
            }
        }
    }

    fn build_hierarchy(&mut self) {
        let n = self.arena.roles.len();
        let mut supers: Vec<BTreeSet<RoleId>> = (0..n as RoleId).map(|r| [r].into_iter().collect()).collect();
        let mut changed = true;
        while changed {
            changed = false;
            for &(s, t) in &self.sub_roles {
                let add: Vec<RoleId> = supers[t as usize].iter().copied().collect();
                for x in add {
                    changed |= supers[s as usize].insert(x);
                }
            }
        }
        self.supers = supers;
    }

    fn is_sub_role(&self, r: RoleId, s: RoleId) -> bool {
        self.supers.get(r as usize).is_some_and(|set| set.contains(&s))
    }

    /// Satisfiability of `c` w.r.t. the preprocessed axioms.
    pub fn satisfiable(&mut self, c: &Concept, deadline: Option<&Deadline<'_>>) -> SatVerdict {
        let root = self.arena.nnf(c, false);
        // Roles first seen in the query have no hierarchy entry yet.
        if self.supers.len() < self.arena.roles.len() {
            self.build_hierarchy();
        }
        let search = Search {
            r: self,
            deadline,
            steps: Cell::new(0),
            note: Cell::new(None),
            unsat_cache: core::cell::RefCell::new(BTreeSet::new()),
        };
        let sat = search.node(vec![root], &mut Vec::new());
        SatVerdict {
            satisfiable: sat || search.note.get().is_some(),
            resource_note: search.note.get(),
            steps: search.steps.get(),
        }
    }

    pub fn name_satisfiable(&mut self, name: &Name, deadline: Option<&Deadline<'_>>) -> SatVerdict {
        self.satisfiable(&Concept::Atomic(name.clone()), deadline)
    }
}

fn absorbable(c: &Concept) -> bool {
    match c {
        Concept::Top | Concept::Bottom | Concept::Atomic(_) => true,
        Concept::Or(cs) => cs.iter().all(absorbable),
        Concept::Exists(_, f) => **f == Concept::Top,
        _ => false,
    }
}

fn sorted_pair(a: NodeId, b: NodeId) -> Vec<NodeId> {
    let mut v = vec![a, b];
    v.sort_unstable();
    v.dedup();
    v
}

type Label = BTreeSet<NodeId>;

struct Search<'r, 'd> {
    r: &'r Reasoner,
    deadline: Option<&'d Deadline<'d>>,
    steps: Cell<u64>,
    note: Cell<Option<ResourceNote>>,
    unsat_cache: core::cell::RefCell<BTreeSet<Vec<NodeId>>>,
}

impl Search<'_, '_> {
    fn out_of_resources(&self, depth: usize) -> bool {
        if self.note.get().is_some() {
            return true;
        }
        if depth >= self.r.depth_bound {
            self.note.set(Some(ResourceNote::DepthBoundHit));
            return true;
        }
        if self.deadline.is_some_and(|d| d.expired()) {
            self.note.set(Some(ResourceNote::Timeout));
            return true;
        }
        false
    }

    /// Satisfiability of a fresh node seeded with `seed`, below `ancestors`.
    fn node(&self, mut seed: Vec<NodeId>, ancestors: &mut Vec<Label>) -> bool {
        if self.out_of_resources(ancestors.len()) {
            return true;
        }
        seed.extend_from_slice(&self.r.universal);
        seed.sort_unstable();
        seed.dedup();
        if self.unsat_cache.borrow().contains(&seed) {
            return false;
        }
        let mut label = Label::new();
        let sat = self.add_all(&mut label, &seed) && self.branch(label, ancestors);
        if !sat && self.note.get().is_none() {
            self.unsat_cache.borrow_mut().insert(seed);
        }
        sat
    }

    /// Adds concepts and applies the deterministic rules; `false` on clash.
    fn add_all(&self, label: &mut Label, items: &[NodeId]) -> bool {
        let arena = &self.r.arena;
        let mut todo: Vec<NodeId> = items.iter().rev().copied().collect();
        while let Some(id) = todo.pop() {
            if !label.insert(id) {
                continue;
            }
            self.steps.set(self.steps.get() + 1);
            match arena.get(id) {
                Node::Top | Node::Or(_) | Node::Forall(..) => {}
                Node::Bottom => return false,
                Node::Atom(a) => {
                    if arena.lookup.get(&Node::NegAtom(*a)).is_some_and(|n| label.contains(n)) {
                        return false;
                    }
                    if let Some(ds) = self.r.unfold.get(a) {
                        todo.extend(ds.iter().rev());
                    }
                }
                Node::NegAtom(a) => {
                    if arena.lookup.get(&Node::Atom(*a)).is_some_and(|n| label.contains(n)) {
                        return false;
                    }
                }
                Node::And(cs) => todo.extend(cs.iter().rev()),
                Node::Exists(r, _) => {
                    for &(s, d) in &self.r.domains {
                        if self.r.is_sub_role(*r, s) {
                            todo.push(d);
                        }
                    }
                }
            }
        }
        true
    }

    fn branch(&self, label: Label, ancestors: &mut Vec<Label>) -> bool {
        let arena = &self.r.arena;
        let open = label.iter().find_map(|&id| match arena.get(id) {
            Node::Or(ds) if !ds.iter().any(|d| label.contains(d)) => Some(ds),
            _ => None,
        });
        match open {
            Some(disjuncts) => {
                for &d in disjuncts {
                    if self.out_of_resources(ancestors.len()) {
                        return true;
                    }
                    let mut l = label.clone();
                    if self.add_all(&mut l, &[d]) && self.branch(l, ancestors) {
                        return true;
                    }
                }
                false
            }
            None => self.successors(label, ancestors),
        }
    }

    fn successors(&self, label: Label, ancestors: &mut Vec<Label>) -> bool {
        if ancestors.iter().any(|a| label.is_subset(a)) {
            return true;
        }
        let arena = &self.r.arena;
        let existentials: Vec<(RoleId, NodeId)> = label
            .iter()
            .filter_map(|&id| match arena.get(id) {
                Node::Exists(r, f) => Some((*r, *f)),
                _ => None,
            })
            .collect();
        if existentials.is_empty() {
            return true;
        }
        let foralls: Vec<(RoleId, NodeId)> = label
            .iter()
            .filter_map(|&id| match arena.get(id) {
                Node::Forall(r, f) => Some((*r, *f)),
                _ => None,
            })
            .collect();
        ancestors.push(label);
        let mut ok = true;
        for (r, filler) in existentials {
            let mut seed = vec![filler];
            seed.extend(foralls.iter().filter(|(s, _)| self.r.is_sub_role(r, *s)).map(|&(_, g)| g));
            if !self.node(seed, ancestors) {
                ok = false;
                break;
            }
        }
        ancestors.pop();
        ok
    }
}

/// Satisfiability of `c` w.r.t. `axioms`.
pub fn is_satisfiable<'a, I>(axioms: I, c: &Concept) -> SatVerdict
where
    I: IntoIterator<Item = &'a Axiom>,
{
    Reasoner::new(axioms).satisfiable(c, None)
}

/// `true` iff every probed concept is satisfiable. Concepts whose check ran
/// out of resources count as satisfiable.
pub fn is_coherent<'a, I, P>(axioms: I, probe: P) -> bool
where
    I: IntoIterator<Item = &'a Axiom>,
    P: IntoIterator<Item = &'a Name>,
{
    let mut r = Reasoner::new(axioms);
    probe.into_iter().all(|n| r.name_satisfiable(n, None).satisfiable)
}

/// Which named concepts are checked for satisfiability.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProbeScope {
    /// Named concepts of the rebuttal ontology.
    #[default]
    Rebuttal,
    /// Named concepts of both ontologies.
    Union,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UnsatReport {
    /// Unsatisfiable concepts, sorted.
    pub concepts: Vec<Name>,
    /// Concepts whose check was cut short (reported as satisfiable).
    pub notes: Vec<(Name, ResourceNote)>,
}

impl UnsatReport {
    pub fn is_coherent(&self) -> bool {
        self.concepts.is_empty()
    }
}

/// Unsatisfiable named concepts of `k` in `k ∪ k0`.
pub fn unsatisfiable_concepts(k: &Ontology, k0: &Ontology) -> UnsatReport {
    unsatisfiable_concepts_in(k, k0, &k.concept_names(), None)
}

pub fn unsatisfiable_concepts_scoped(k: &Ontology, k0: &Ontology, scope: ProbeScope) -> UnsatReport {
    let mut probe = k.concept_names();
    if scope == ProbeScope::Union {
        probe.extend(k0.concept_names());
    }
    unsatisfiable_concepts_in(k, k0, &probe, None)
}

/// Unsatisfiable concepts among `probe` in `k ∪ k0`.
pub fn unsatisfiable_concepts_in(
    k: &Ontology,
    k0: &Ontology,
    probe: &BTreeSet<Name>,
    deadline: Option<&Deadline<'_>>,
) -> UnsatReport {
    let mut r = Reasoner::from_ontologies(k, k0);
    let mut report = UnsatReport::default();
    for name in probe {
        let v = r.name_satisfiable(name, deadline);
        if let Some(note) = v.resource_note {
            report.notes.push((name.clone(), note));
        }
        if !v.satisfiable {
            report.concepts.push(name.clone());
        }
    }
    report
}
