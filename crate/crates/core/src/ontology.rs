//! ALCH data model: names, concept expressions, axioms and ontologies.

use core::fmt;

use crate::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OntologyError {
    #[error("invalid entity name {0:?}: expected letters, digits, '_' or '-'")]
    InvalidName(String),
    #[error("{0} needs at least two operands")]
    Arity(&'static str),
}

/// A concept or role name. Comparison is case-sensitive byte equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(String);

impl Name {
    pub fn new(s: impl Into<String>) -> Result<Self, OntologyError> {
        let s = s.into();
        if Self::is_valid(&s) {
            Ok(Name(s))
        } else {
            Err(OntologyError::InvalidName(s))
        }
    }

    pub fn is_valid(s: &str) -> bool {
        !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_' || b == b'-')
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityKind {
    Concept,
    Role,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntityId {
    pub name: Name,
    pub kind: EntityKind,
}

impl EntityId {
    pub fn concept(name: Name) -> Self {
        EntityId { name, kind: EntityKind::Concept }
    }

    pub fn role(name: Name) -> Self {
        EntityId { name, kind: EntityKind::Role }
    }
}

impl fmt::Display for EntityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.name.fmt(f)
    }
}

/// Concept expression of ALC.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Top,
    Bottom,
    Atomic(Name),
    Not(Box<Concept>),
    And(Vec<Concept>),
    Or(Vec<Concept>),
    Exists(Name, Box<Concept>),
    Forall(Name, Box<Concept>),
}

impl Concept {
    pub fn atomic(name: &str) -> Result<Self, OntologyError> {
        Name::new(name).map(Concept::Atomic)
    }

    pub fn negation(c: Concept) -> Self {
        Concept::Not(Box::new(c))
    }

    pub fn exists(role: Name, filler: Concept) -> Self {
        Concept::Exists(role, Box::new(filler))
    }

    pub fn forall(role: Name, filler: Concept) -> Self {
        Concept::Forall(role, Box::new(filler))
    }

    /// Sorts the operands of every conjunction and disjunction by their
    /// serialized form and checks arities.
    pub fn canonicalize(&mut self) -> Result<(), OntologyError> {
        match self {
            Concept::Top | Concept::Bottom | Concept::Atomic(_) => Ok(()),
            Concept::Not(c) | Concept::Exists(_, c) | Concept::Forall(_, c) => c.canonicalize(),
            Concept::And(cs) => canonicalize_operands(cs, "ObjectIntersectionOf"),
            Concept::Or(cs) => canonicalize_operands(cs, "ObjectUnionOf"),
        }
    }

    fn collect_signature(&self, out: &mut BTreeSet<EntityId>) {
        match self {
            Concept::Top | Concept::Bottom => {}
            Concept::Atomic(n) => {
                out.insert(EntityId::concept(n.clone()));
            }
            Concept::Not(c) => c.collect_signature(out),
            Concept::And(cs) | Concept::Or(cs) => cs.iter().for_each(|c| c.collect_signature(out)),
            Concept::Exists(r, c) | Concept::Forall(r, c) => {
                out.insert(EntityId::role(r.clone()));
                c.collect_signature(out);
            }
        }
    }
}

fn canonicalize_operands(cs: &mut [Concept], what: &'static str) -> Result<(), OntologyError> {
    if cs.len() < 2 {
        return Err(OntologyError::Arity(what));
    }
    for c in cs.iter_mut() {
        c.canonicalize()?;
    }
    cs.sort_by_cached_key(|c| c.to_string());
    Ok(())
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn list(f: &mut fmt::Formatter<'_>, head: &str, cs: &[Concept]) -> fmt::Result {
            write!(f, "{head}(")?;
            for (i, c) in cs.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str(")")
        }
        match self {
            Concept::Top => f.write_str("owl:Thing"),
            Concept::Bottom => f.write_str("owl:Nothing"),
            Concept::Atomic(n) => write!(f, "{n}"),
            Concept::Not(c) => write!(f, "ObjectComplementOf({c})"),
            Concept::And(cs) => list(f, "ObjectIntersectionOf", cs),
            Concept::Or(cs) => list(f, "ObjectUnionOf", cs),
            Concept::Exists(r, c) => write!(f, "ObjectSomeValuesFrom({r} {c})"),
            Concept::Forall(r, c) => write!(f, "ObjectAllValuesFrom({r} {c})"),
        }
    }
}

/// The logical content of one TBox statement.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AxiomForm {
    SubClassOf { sub: Concept, sup: Concept },
    EquivalentClasses(Concept, Concept),
    DisjointClasses(Concept, Concept),
    SubRoleOf { sub: Name, sup: Name },
    Domain { role: Name, filler: Concept },
    Range { role: Name, filler: Concept },
}

impl AxiomForm {
    fn canonicalize(&mut self) -> Result<(), OntologyError> {
        match self {
            AxiomForm::SubClassOf { sub: a, sup: b }
            | AxiomForm::EquivalentClasses(a, b)
            | AxiomForm::DisjointClasses(a, b) => {
                a.canonicalize()?;
                b.canonicalize()
            }
            AxiomForm::SubRoleOf { .. } => Ok(()),
            AxiomForm::Domain { filler, .. } | AxiomForm::Range { filler, .. } => filler.canonicalize(),
        }
    }

    pub fn kind_label(&self) -> &'static str {
        match self {
            AxiomForm::SubClassOf { .. } => "SubClassOf",
            AxiomForm::EquivalentClasses(..) => "EquivalentClasses",
            AxiomForm::DisjointClasses(..) => "DisjointClasses",
            AxiomForm::SubRoleOf { .. } => "SubObjectPropertyOf",
            AxiomForm::Domain { .. } => "ObjectPropertyDomain",
            AxiomForm::Range { .. } => "ObjectPropertyRange",
        }
    }
}

impl fmt::Display for AxiomForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kw = self.kind_label();
        match self {
            AxiomForm::SubClassOf { sub: a, sup: b }
            | AxiomForm::EquivalentClasses(a, b)
            | AxiomForm::DisjointClasses(a, b) => write!(f, "{kw}({a} {b})"),
            AxiomForm::SubRoleOf { sub, sup } => write!(f, "{kw}({sub} {sup})"),
            AxiomForm::Domain { role, filler } | AxiomForm::Range { role, filler } => {
                write!(f, "{kw}({role} {filler})")
            }
        }
    }
}

/// Canonical serialization of an axiom; doubles as its identity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AxiomId(String);

impl AxiomId {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl core::borrow::Borrow<str> for AxiomId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Axiom {
    id: AxiomId,
    form: AxiomForm,
}

impl Axiom {
    pub fn new(mut form: AxiomForm) -> Result<Self, OntologyError> {
        form.canonicalize()?;
        let id = AxiomId(form.to_string());
        Ok(Axiom { id, form })
    }

    pub fn id(&self) -> &AxiomId {
        &self.id
    }

    pub fn form(&self) -> &AxiomForm {
        &self.form
    }

    pub fn signature(&self) -> BTreeSet<EntityId> {
        signature_of(self)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id.as_str())
    }
}

/// Entity ids occurring in an axiom.
pub fn signature_of(a: &Axiom) -> BTreeSet<EntityId> {
    let mut out = BTreeSet::new();
    match &a.form {
        AxiomForm::SubClassOf { sub: x, sup: y }
        | AxiomForm::EquivalentClasses(x, y)
        | AxiomForm::DisjointClasses(x, y) => {
            x.collect_signature(&mut out);
            y.collect_signature(&mut out);
        }
        AxiomForm::SubRoleOf { sub, sup } => {
            out.insert(EntityId::role(sub.clone()));
            out.insert(EntityId::role(sup.clone()));
        }
        AxiomForm::Domain { role, filler } | AxiomForm::Range { role, filler } => {
            out.insert(EntityId::role(role.clone()));
            filler.collect_signature(&mut out);
        }
    }
    out
}

/// Insertion-ordered, duplicate-free set of axioms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ontology {
    axioms: Vec<Axiom>,
    index: BTreeMap<AxiomId, usize>,
}

impl Ontology {
    pub fn new() -> Self {
        Self::default()
    }

    /// Returns `false` when an axiom with the same id is already present.
    pub fn insert(&mut self, axiom: Axiom) -> bool {
        if self.index.contains_key(&axiom.id) {
            return false;
        }
        self.index.insert(axiom.id.clone(), self.axioms.len());
        self.axioms.push(axiom);
        true
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Axiom> {
        self.axioms.iter()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn get(&self, id: &str) -> Option<&Axiom> {
        self.index.get(id).map(|&i| &self.axioms[i])
    }

    pub fn ids(&self) -> BTreeSet<AxiomId> {
        self.index.keys().cloned().collect()
    }

    /// Axioms whose id is not in `removed`, in the original order.
    pub fn without<'a, I>(&self, removed: I) -> Ontology
    where
        I: IntoIterator<Item = &'a AxiomId>,
    {
        let removed: BTreeSet<&AxiomId> = removed.into_iter().collect();
        self.iter().filter(|a| !removed.contains(&a.id)).cloned().collect()
    }

    /// Axioms whose id is in `keep`, in the original order.
    pub fn restricted_to<'a, I>(&self, keep: I) -> Ontology
    where
        I: IntoIterator<Item = &'a AxiomId>,
    {
        let keep: BTreeSet<&AxiomId> = keep.into_iter().collect();
        self.iter().filter(|a| keep.contains(&a.id)).cloned().collect()
    }

    /// `self` followed by the axioms of `other` not already present.
    pub fn union(&self, other: &Ontology) -> Ontology {
        let mut out = self.clone();
        out.extend(other.iter().cloned());
        out
    }

    pub fn signature(&self) -> BTreeSet<EntityId> {
        self.iter().flat_map(signature_of).collect()
    }

    /// Named concepts of the signature, sorted.
    pub fn concept_names(&self) -> BTreeSet<Name> {
        self.signature().into_iter().filter(|e| e.kind == EntityKind::Concept).map(|e| e.name).collect()
    }
}

impl Extend<Axiom> for Ontology {
    fn extend<T: IntoIterator<Item = Axiom>>(&mut self, iter: T) {
        for a in iter {
            self.insert(a);
        }
    }
}

impl FromIterator<Axiom> for Ontology {
    fn from_iter<T: IntoIterator<Item = Axiom>>(iter: T) -> Self {
        let mut o = Ontology::new();
        o.extend(iter);
        o
    }
}

impl<'a> IntoIterator for &'a Ontology {
    type Item = &'a Axiom;
    type IntoIter = core::slice::Iter<'a, Axiom>;

    fn into_iter(self) -> Self::IntoIter {
        self.axioms.iter()
    }
}

/// A rebuttal ontology `K` to be revised by a reliable ontology `K0`.
#[derive(Debug, Clone)]
pub struct RevisionProblem {
    pub rebuttal: Ontology,
    pub reliable: Ontology,
    /// Concepts whose satisfiability defines coherence for this problem.
    pub probe: BTreeSet<Name>,
    pub threshold: f64,
    pub euclid_k: u32,
    pub step_length: usize,
    /// Axioms found in both inputs; they are kept as reliable.
    pub shared: Vec<AxiomId>,
}

impl RevisionProblem {
    pub const DEFAULT_THRESHOLD: f64 = 0.5;
    pub const DEFAULT_EUCLID_K: u32 = 15;
    pub const DEFAULT_STEP_LENGTH: usize = 10;

    /// Builds a problem with default parameters. Axioms present in both
    /// inputs are dropped from the rebuttal side. The probe set is the set
    /// of named concepts of the rebuttal ontology as given.
    pub fn new(rebuttal: Ontology, reliable: Ontology) -> Self {
        let probe = rebuttal.concept_names();
        let shared: Vec<AxiomId> =
            rebuttal.iter().filter(|a| reliable.contains(a.id.as_str())).map(|a| a.id.clone()).collect();
        let rebuttal = rebuttal.without(&shared);
        RevisionProblem {
            rebuttal,
            reliable,
            probe,
            threshold: Self::DEFAULT_THRESHOLD,
            euclid_k: Self::DEFAULT_EUCLID_K,
            step_length: Self::DEFAULT_STEP_LENGTH,
            shared,
        }
    }

    /// Probes every named concept of `K ∪ K0` instead of `K` only.
    pub fn probe_union_signature(mut self) -> Self {
        self.probe.extend(self.reliable.concept_names());
        self
    }

    pub fn with_threshold(mut self, t: f64) -> Self {
        self.threshold = t;
        self
    }

    pub fn with_euclid_k(mut self, k: u32) -> Self {
        self.euclid_k = k;
        self
    }

    pub fn with_step_length(mut self, n: usize) -> Self {
        self.step_length = n;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(s: &str) -> Concept {
        Concept::atomic(s).unwrap()
    }

    #[test]
    fn names_are_validated() {
        assert!(Name::new("Student_1-x").is_ok());
        assert!(Name::new("").is_err());
        assert!(Name::new("a b").is_err());
        assert!(Name::new("owl:Thing").is_err());
    }

    #[test]
    fn conjunction_operands_are_sorted_in_id() {
        let a = Axiom::new(AxiomForm::SubClassOf {
            sub: atom("X"),
            sup: Concept::And(vec![atom("Judge"), atom("Student")]),
        })
        .unwrap();
        let b = Axiom::new(AxiomForm::SubClassOf {
            sub: atom("X"),
            sup: Concept::And(vec![atom("Student"), atom("Judge")]),
        })
        .unwrap();
        assert_eq!(a.id(), b.id());
        assert_eq!(a.id().as_str(), "SubClassOf(X ObjectIntersectionOf(Judge Student))");
    }

    #[test]
    fn singleton_conjunction_rejected() {
        let err = Axiom::new(AxiomForm::SubClassOf { sub: atom("X"), sup: Concept::And(vec![atom("Y")]) });
        assert_eq!(err.unwrap_err(), OntologyError::Arity("ObjectIntersectionOf"));
    }

    #[test]
    fn signature_of_domain_axiom() {
        let a =
            Axiom::new(AxiomForm::Domain { role: Name::new("hasClassmate").unwrap(), filler: atom("Person") }).unwrap();
        let sig = signature_of(&a);
        let expected: BTreeSet<_> =
            [EntityId::role(Name::new("hasClassmate").unwrap()), EntityId::concept(Name::new("Person").unwrap())]
                .into_iter()
                .collect();
        assert_eq!(sig, expected);
    }

    #[test]
    fn shared_axioms_are_reliable_only() {
        let ab = Axiom::new(AxiomForm::SubClassOf { sub: atom("A"), sup: atom("B") }).unwrap();
        let bc = Axiom::new(AxiomForm::SubClassOf { sub: atom("B"), sup: atom("C") }).unwrap();
        let k: Ontology = [ab.clone(), bc.clone()].into_iter().collect();
        let k0: Ontology = [bc.clone()].into_iter().collect();
        let p = RevisionProblem::new(k, k0);
        assert_eq!(p.rebuttal.len(), 1);
        assert!(p.rebuttal.contains(ab.id().as_str()));
        assert_eq!(p.shared, vec![bc.id().clone()]);
        assert!(p.probe.contains(&Name::new("C").unwrap()));
    }

    #[test]
    fn union_and_removal_keep_order_and_uniqueness() {
        let mk = |x: &str, y: &str| Axiom::new(AxiomForm::SubClassOf { sub: atom(x), sup: atom(y) }).unwrap();
        let o1: Ontology = [mk("A", "B"), mk("B", "C")].into_iter().collect();
        let o2: Ontology = [mk("B", "C"), mk("C", "D")].into_iter().collect();
        let u = o1.union(&o2);
        let ids: Vec<_> = u.iter().map(|a| a.id().to_string()).collect();
        assert_eq!(ids, ["SubClassOf(A B)", "SubClassOf(B C)", "SubClassOf(C D)"]);
        let r = u.without([mk("B", "C").id()]);
        assert_eq!(r.len(), 2);
        assert!(!r.contains("SubClassOf(B C)"));
    }
}
