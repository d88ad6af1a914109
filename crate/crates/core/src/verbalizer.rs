//! Template-based axiom verbalization.
//!
//! | axiom                        | sentence                                         |
//! |------------------------------|--------------------------------------------------|
//! | `SubClassOf(C D)`            | every {C} is a {D}                               |
//! | `EquivalentClasses(C D)`     | every {C} is a {D} and every {D} is a {C}        |
//! | `DisjointClasses(C D)`       | no {C} is a {D}                                  |
//! | `SubObjectPropertyOf(r s)`   | {r} is a kind of {s}                             |
//! | `ObjectPropertyDomain(r C)`  | anything that {r} something is a {C}             |
//! | `ObjectPropertyRange(r C)`   | anything that something {r} is a {C}            |
//!
//! Concepts render as: names split on case changes, `_` and `-` and
//! lower-cased; `∃r.C` as "something that {r} a {C}"; `∀r.C` as "something
//! that {r} only {C}"; `¬C` as "not a {C}"; conjunctions and disjunctions
//! joined with "and" / "or"; `owl:Thing` and `owl:Nothing` as "thing" and
//! "nothing".

use crate::ontology::{Axiom, AxiomForm, AxiomId, Concept, Name, Ontology};
use crate::prelude::*;

/// Axiom id → sentence.
pub type SentenceMap = BTreeMap<AxiomId, String>;

/// "MasterStudent" → "master student", "has_Classmate" → "has classmate".
pub fn humanize(name: &str) -> String {
    let chars: Vec<char> = name.chars().collect();
    let mut words: Vec<String> = Vec::new();
    let mut cur = String::new();
    for (i, &ch) in chars.iter().enumerate() {
        if ch == '_' || ch == '-' {
            if !cur.is_empty() {
                words.push(core::mem::take(&mut cur));
            }
            continue;
        }
        if ch.is_uppercase() && !cur.is_empty() {
            let prev = chars[i - 1];
            let next_lower = chars.get(i + 1).is_some_and(|c| c.is_lowercase());
            // Split "masterStudent" and the end of an acronym as in "XMLFile".
            if prev.is_lowercase() || prev.is_ascii_digit() || (prev.is_uppercase() && next_lower) {
                words.push(core::mem::take(&mut cur));
            }
        }
        cur.extend(ch.to_lowercase());
    }
    if !cur.is_empty() {
        words.push(cur);
    }
    words.join(" ")
}

fn role(r: &Name) -> String {
    humanize(r.as_str())
}

fn concept(c: &Concept) -> String {
    match c {
        Concept::Top => "thing".into(),
        Concept::Bottom => "nothing".into(),
        Concept::Atomic(n) => humanize(n.as_str()),
        Concept::Not(inner) => format!("not a {}", concept(inner)),
        Concept::And(cs) => cs.iter().map(concept).collect::<Vec<_>>().join(" and "),
        Concept::Or(cs) => cs.iter().map(concept).collect::<Vec<_>>().join(" or "),
        Concept::Exists(r, f) => format!("something that {} a {}", role(r), concept(f)),
        Concept::Forall(r, f) => format!("something that {} only {}", role(r), concept(f)),
    }
}

pub fn verbalize(a: &Axiom) -> String {
    match a.form() {
        AxiomForm::SubClassOf { sub, sup } => format!("every {} is a {}", concept(sub), concept(sup)),
        AxiomForm::EquivalentClasses(x, y) => {
            let (x, y) = (concept(x), concept(y));
            format!("every {x} is a {y} and every {y} is a {x}")
        }
        AxiomForm::DisjointClasses(x, y) => format!("no {} is a {}", concept(x), concept(y)),
        AxiomForm::SubRoleOf { sub, sup } => format!("{} is a kind of {}", role(sub), role(sup)),
        AxiomForm::Domain { role: r, filler } => {
            format!("anything that {} something is a {}", role(r), concept(filler))
        }
        AxiomForm::Range { role: r, filler } => {
            format!("anything that something {} is a {}", role(r), concept(filler))
        }
    }
}

pub fn verbalize_ontology<'a, I>(axioms: I) -> SentenceMap
where
    I: IntoIterator<Item = &'a Axiom>,
{
    axioms.into_iter().map(|a| (a.id().clone(), verbalize(a))).collect()
}

impl Ontology {
    pub fn sentences(&self) -> SentenceMap {
        verbalize_ontology(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_axiom;

    fn v(text: &str) -> String {
        verbalize(&parse_axiom(text).unwrap())
    }

    #[test]
    fn templates() {
        assert_eq!(v("SubClassOf(MasterStudent Student)"), "every master student is a student");
        assert_eq!(v("DisjointClasses(Judge Student)"), "no judge is a student");
        assert_eq!(v("EquivalentClasses(A A)"), "every a is a a and every a is a a");
        assert_eq!(v("SubObjectPropertyOf(hasClassmate hasRelation)"), "has classmate is a kind of has relation");
        assert_eq!(v("ObjectPropertyDomain(teaches Teacher)"), "anything that teaches something is a teacher");
        assert_eq!(v("ObjectPropertyRange(teaches Course)"), "anything that something teaches is a course");
        assert_eq!(v("SubClassOf(Judge ObjectComplementOf(Student))"), "every judge is a not a student");
        assert_eq!(
            v("SubClassOf(A ObjectSomeValuesFrom(r ObjectUnionOf(B C)))"),
            "every a is a something that r a b or c"
        );
        assert_eq!(
            v("SubClassOf(owl:Thing ObjectAllValuesFrom(r ObjectIntersectionOf(B C)))"),
            "every thing is a something that r only b and c"
        );
    }

    #[test]
    fn name_splitting() {
        assert_eq!(humanize("MasterStudent"), "master student");
        assert_eq!(humanize("has_Classmate"), "has classmate");
        assert_eq!(humanize("XMLFile"), "xml file");
        assert_eq!(humanize("review-Author2Reviewer"), "review author2 reviewer");
        assert_eq!(humanize("C0"), "c0");
    }
}
