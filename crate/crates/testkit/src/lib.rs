//! Brute-force oracles and random instance generators.
//!
//! Everything here is deliberately naive: the oracles enumerate truth
//! assignments or subsets directly and share no code with the library's
//! reasoner, explainer or hitting-set search.

use std::collections::BTreeSet;

use ontorev_core::{Axiom, AxiomForm, AxiomId, Concept, Name, Ontology};
use rand::seq::SliceRandom;
use rand::Rng;

/// Truth value of a role-free concept under an assignment of atom names.
pub fn eval(c: &Concept, atoms: &[&str], bits: u32) -> bool {
    match c {
        Concept::Top => true,
        Concept::Bottom => false,
        Concept::Atomic(n) => {
            let i = atoms.iter().position(|a| *a == n.as_str()).expect("atom outside alphabet");
            bits >> i & 1 == 1
        }
        Concept::Not(x) => !eval(x, atoms, bits),
        Concept::And(xs) => xs.iter().all(|x| eval(x, atoms, bits)),
        Concept::Or(xs) => xs.iter().any(|x| eval(x, atoms, bits)),
        Concept::Exists(..) | Concept::Forall(..) => panic!("role-free oracle given a role restriction"),
    }
}

fn holds(a: &Axiom, atoms: &[&str], bits: u32) -> bool {
    match a.form() {
        AxiomForm::SubClassOf { sub, sup } => !eval(sub, atoms, bits) || eval(sup, atoms, bits),
        AxiomForm::EquivalentClasses(x, y) => eval(x, atoms, bits) == eval(y, atoms, bits),
        AxiomForm::DisjointClasses(x, y) => !(eval(x, atoms, bits) && eval(y, atoms, bits)),
        // No role assertions can be violated without role successors.
        AxiomForm::SubRoleOf { .. } => true,
        AxiomForm::Domain { .. } | AxiomForm::Range { .. } => panic!("role-free oracle given a role axiom"),
    }
}

/// Satisfiability of `c` w.r.t. role-free `axioms`: without roles a
/// one-element model suffices, so this is propositional satisfiability of
/// `c` together with every axiom read as a constraint on that element.
pub fn prop_satisfiable<'a>(axioms: impl IntoIterator<Item = &'a Axiom> + Clone, c: &Concept, atoms: &[&str]) -> bool {
    assert!(atoms.len() < 32);
    (0..1u32 << atoms.len())
        .any(|bits| eval(c, atoms, bits) && axioms.clone().into_iter().all(|a| holds(a, atoms, bits)))
}

/// All minimal subsets `M ⊆ k` with `c` unsatisfiable in `M ∪ k0`, by
/// walking the whole subset lattice.
pub fn brute_mups(k: &Ontology, k0: &Ontology, c: &Name, atoms: &[&str]) -> BTreeSet<BTreeSet<AxiomId>> {
    let ks: Vec<&Axiom> = k.iter().collect();
    assert!(ks.len() <= 16);
    let concept = Concept::Atomic(c.clone());
    let unsat = |mask: u32| {
        let chosen: Vec<&Axiom> =
            (0..ks.len()).filter(|i| mask >> i & 1 == 1).map(|i| ks[i]).chain(k0.iter()).collect();
        !prop_satisfiable(chosen.iter().copied(), &concept, atoms)
    };
    let mut out = BTreeSet::new();
    for mask in 0..1u32 << ks.len() {
        if !unsat(mask) {
            continue;
        }
        let minimal = (0..ks.len()).filter(|i| mask >> i & 1 == 1).all(|i| !unsat(mask & !(1 << i)));
        if minimal {
            out.insert((0..ks.len()).filter(|i| mask >> i & 1 == 1).map(|i| ks[i].id().clone()).collect());
        }
    }
    out
}

/// Optimum hitting-set size and the lexicographically smallest optimal set,
/// by trying every subset of the universe.
pub fn brute_hitting_set(family: &[BTreeSet<AxiomId>]) -> Option<(usize, BTreeSet<AxiomId>)> {
    let universe: Vec<AxiomId> = family.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    assert!(universe.len() <= 20);
    let mut best: Option<Vec<AxiomId>> = None;
    for mask in 0..1u32 << universe.len() {
        let pick: Vec<AxiomId> =
            (0..universe.len()).filter(|i| mask >> i & 1 == 1).map(|i| universe[i].clone()).collect();
        if !family.iter().all(|s| pick.iter().any(|a| s.contains(a))) {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => pick.len() < b.len() || (pick.len() == b.len() && pick < *b),
        };
        if better {
            best = Some(pick);
        }
    }
    best.map(|b| (b.len(), b.into_iter().collect()))
}

pub const ATOMS: [&str; 6] = ["A0", "A1", "A2", "A3", "A4", "A5"];

pub fn atom(name: &str) -> Concept {
    Concept::atomic(name).unwrap()
}

/// Random role-free concept over the first `n_atoms` atoms.
pub fn random_concept<R: Rng>(rng: &mut R, n_atoms: usize, depth: u32) -> Concept {
    let leaf = depth == 0 || rng.gen_bool(0.4);
    if leaf {
        return match rng.gen_range(0..20) {
            0 => Concept::Top,
            1 => Concept::Bottom,
            _ => atom(ATOMS[rng.gen_range(0..n_atoms)]),
        };
    }
    match rng.gen_range(0..3) {
        0 => Concept::negation(random_concept(rng, n_atoms, depth - 1)),
        1 => Concept::And((0..rng.gen_range(2..=3)).map(|_| random_concept(rng, n_atoms, depth - 1)).collect()),
        _ => Concept::Or((0..rng.gen_range(2..=3)).map(|_| random_concept(rng, n_atoms, depth - 1)).collect()),
    }
}

/// Random role-free axiom. Shapes lean on atomic left-hand sides so that
/// instances have real structure rather than mostly trivial GCIs.
pub fn random_axiom<R: Rng>(rng: &mut R, n_atoms: usize) -> Axiom {
    let pick = |rng: &mut R| atom(ATOMS[rng.gen_range(0..n_atoms)]);
    let form = match rng.gen_range(0..10) {
        0..=3 => AxiomForm::SubClassOf { sub: pick(rng), sup: random_concept(rng, n_atoms, 2) },
        4..=5 => AxiomForm::SubClassOf { sub: pick(rng), sup: pick(rng) },
        6 => AxiomForm::SubClassOf { sub: random_concept(rng, n_atoms, 2), sup: random_concept(rng, n_atoms, 1) },
        7 => AxiomForm::EquivalentClasses(pick(rng), random_concept(rng, n_atoms, 2)),
        _ => AxiomForm::DisjointClasses(pick(rng), random_concept(rng, n_atoms, 1)),
    };
    Axiom::new(form).unwrap()
}

/// Random ontology with up to `max_axioms` distinct axioms.
pub fn random_ontology<R: Rng>(rng: &mut R, n_atoms: usize, max_axioms: usize) -> Ontology {
    let target = rng.gen_range(1..=max_axioms);
    let mut o = Ontology::new();
    for _ in 0..target * 4 {
        if o.len() == target {
            break;
        }
        o.insert(random_axiom(rng, n_atoms));
    }
    o
}

/// Distinct placeholder axiom ids `SubClassOf(Xi Y)`.
pub fn placeholder_ids(n: usize) -> Vec<AxiomId> {
    (0..n)
        .map(|i| {
            let form = AxiomForm::SubClassOf { sub: atom(&format!("X{i:02}")), sup: atom("Y") };
            Axiom::new(form).unwrap().id().clone()
        })
        .collect()
}

/// Random family of non-empty sets over at most `max_elems` ids.
pub fn random_family<R: Rng>(rng: &mut R, max_elems: usize, max_sets: usize) -> Vec<BTreeSet<AxiomId>> {
    let ids = placeholder_ids(rng.gen_range(1..=max_elems));
    (0..rng.gen_range(1..=max_sets))
        .map(|_| {
            let size = rng.gen_range(1..=ids.len().min(5));
            ids.choose_multiple(rng, size).cloned().collect()
        })
        .collect()
}
