//! Synthetic revision pairs with planted conflicts.
//!
//! Each side gets a random taxonomy. The reliable side also gets
//! disjointness between sibling branches; the rebuttal side gets cross-links
//! into the reliable taxonomy that force chosen concepts under two disjoint
//! branches, either directly, through an equivalence, or through a role
//! range. A planted conflict is kept only if it makes exactly its own
//! concept unsatisfiable, and filler axioms only if they leave each side
//! coherent and the union's unsatisfiable concepts unchanged. The
//! unsatisfiable concepts of a pair are therefore exactly the planted ones.

use std::collections::BTreeSet;
use std::path::Path;

use ontorev_core::{serialize_ontology, unsatisfiable_concepts_in, Axiom, AxiomForm, Concept, Name, Ontology};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::files::{self, FileError};

const RETRIES: usize = 50;

const ADJECTIVES: [&str; 24] = [
    "Senior",
    "Junior",
    "Remote",
    "Local",
    "Public",
    "Private",
    "Annual",
    "Digital",
    "Regional",
    "Medical",
    "Legal",
    "Urban",
    "Marine",
    "Field",
    "Central",
    "Visiting",
    "Academic",
    "Technical",
    "Primary",
    "Joint",
    "External",
    "Internal",
    "Mobile",
    "Formal",
];

const RELIABLE_NOUNS: [&str; 24] = [
    "Person",
    "Student",
    "Teacher",
    "Course",
    "Lecture",
    "Paper",
    "Review",
    "Author",
    "Event",
    "Conference",
    "Workshop",
    "Organization",
    "University",
    "Department",
    "Document",
    "Report",
    "Committee",
    "Member",
    "Session",
    "Topic",
    "Venue",
    "Award",
    "Program",
    "Track",
];

const REBUTTAL_NOUNS: [&str; 24] = [
    "Agent",
    "Learner",
    "Instructor",
    "Module",
    "Talk",
    "Article",
    "Assessment",
    "Writer",
    "Meeting",
    "Symposium",
    "Seminar",
    "Institution",
    "College",
    "Unit",
    "Record",
    "Summary",
    "Board",
    "Participant",
    "Slot",
    "Subject",
    "Location",
    "Prize",
    "Scheme",
    "Stream",
];

const RELIABLE_ROLES: [&str; 4] = ["hasPart", "teaches", "attends", "presents"];
const REBUTTAL_ROLES: [&str; 3] = ["relatesTo", "hosts", "uses"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusParams {
    pub seed: u64,
    pub pairs: usize,
    pub concepts_per_ontology: usize,
    pub axioms_per_ontology: usize,
    pub planted_conflicts: usize,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams { seed: 1, pairs: 20, concepts_per_ontology: 30, axioms_per_ontology: 50, planted_conflicts: 10 }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("invalid corpus parameters: {0}")]
    Params(&'static str),
    #[error("pair {0}: no valid pair after {RETRIES} attempts")]
    RetriesExceeded(usize),
    #[error(transparent)]
    File(#[from] FileError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConflictKind {
    Subsumption,
    Equivalence,
    RoleRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlantedConflict {
    pub concept: String,
    pub kind: ConflictKind,
    pub disjointness: String,
    pub rebuttal_axioms: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub pair: String,
    pub seed: u64,
    pub planted: Vec<PlantedConflict>,
    pub unsat_concepts: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct GeneratedPair {
    pub name: String,
    pub rebuttal: Ontology,
    pub reliable: Ontology,
    pub truth: GroundTruth,
}

struct Taxonomy {
    names: Vec<Name>,
    parent: Vec<Option<usize>>,
}

impl Taxonomy {
    fn random(rng: &mut ChaCha8Rng, size: usize, nouns: &[&str]) -> Self {
        let mut seen = BTreeSet::new();
        let mut names = Vec::with_capacity(size);
        while names.len() < size {
            let noun = nouns[rng.gen_range(0..nouns.len())];
            let name = if names.is_empty() || rng.gen_bool(0.3) && seen.len() < nouns.len() {
                noun.to_string()
            } else {
                format!("{}{}", ADJECTIVES[rng.gen_range(0..ADJECTIVES.len())], noun)
            };
            if seen.insert(name.clone()) {
                names.push(Name::new(name).expect("vocabulary names are valid"));
            }
        }
        // Recent nodes are preferred as parents, which gives some depth.
        let parent = (0..size).map(|i| (i > 0).then(|| rng.gen_range(i.saturating_sub(5)..i))).collect();
        Taxonomy { names, parent }
    }

    fn children(&self, p: usize) -> Vec<usize> {
        (0..self.names.len()).filter(|&i| self.parent[i] == Some(p)).collect()
    }

    fn descendants(&self, root: usize) -> Vec<usize> {
        let mut out = vec![root];
        let mut i = 0;
        while i < out.len() {
            out.extend(self.children(out[i]));
            i += 1;
        }
        out
    }

    fn axioms(&self) -> impl Iterator<Item = Axiom> + '_ {
        (0..self.names.len()).filter_map(|i| {
            self.parent[i].map(|p| sub(Concept::Atomic(self.names[i].clone()), Concept::Atomic(self.names[p].clone())))
        })
    }
}

fn sub(sub: Concept, sup: Concept) -> Axiom {
    Axiom::new(AxiomForm::SubClassOf { sub, sup }).expect("generated axioms are well formed")
}

fn atomic(n: &Name) -> Concept {
    Concept::Atomic(n.clone())
}

fn role(s: &str) -> Name {
    Name::new(s).expect("vocabulary roles are valid")
}

fn pair_rng(seed: u64, index: usize, attempt: usize) -> ChaCha8Rng {
    let mix = (index as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ (attempt as u64).wrapping_mul(0xc2b2_ae3d_27d4_eb4f);
    ChaCha8Rng::seed_from_u64(seed ^ mix)
}

fn unsat(k: &Ontology, k0: &Ontology) -> Vec<Name> {
    unsatisfiable_concepts_in(k, k0, &k.concept_names(), None).concepts
}

fn coherent_alone(o: &Ontology) -> bool {
    unsatisfiable_concepts_in(o, &Ontology::new(), &o.concept_names(), None).concepts.is_empty()
}

fn attempt(rng: &mut ChaCha8Rng, index: usize, p: &CorpusParams) -> Option<GeneratedPair> {
    let n = p.concepts_per_ontology;
    let left = Taxonomy::random(rng, n, &RELIABLE_NOUNS);
    let right = Taxonomy::random(rng, n, &REBUTTAL_NOUNS);
    let mut k0: Ontology = left.axioms().collect();
    let mut k: Ontology = right.axioms().collect();
    let mut planted = Vec::new();

    let mut used: BTreeSet<usize> = BTreeSet::new();
    let mut anchors: Vec<usize> = Vec::new();
    let mut base: Vec<Name> = Vec::new();
    for _ in 0..p.planted_conflicts * 10 {
        if planted.len() == p.planted_conflicts {
            break;
        }
        let (conflict, k_add, disj, target) = plant(rng, &left, &right, &used, &anchors, planted.len())?;
        let (mut k2, mut k02) = (k.clone(), k0.clone());
        k2.extend(k_add.iter().cloned());
        k02.insert(disj);
        // Keep only conflicts that make exactly their own concept unsatisfiable.
        let now = unsat(&k2, &k02);
        let mut want = base.clone();
        want.push(right.names[target].clone());
        want.sort();
        if now != want {
            continue;
        }
        (k, k0, base) = (k2, k02, now);
        used.insert(target);
        anchors.push(right.parent[target]?);
        planted.push(conflict);
    }
    if planted.len() < p.planted_conflicts {
        return None;
    }

    if !coherent_alone(&k0) || !coherent_alone(&k) {
        return None;
    }

    for _ in 0..p.axioms_per_ontology * 4 {
        if k0.len() >= p.axioms_per_ontology {
            break;
        }
        let cand = reliable_filler(rng, &left)?;
        let mut next = k0.clone();
        if next.insert(cand) && coherent_alone(&next) && unsat(&k, &next) == base {
            k0 = next;
        }
    }
    for _ in 0..p.axioms_per_ontology * 4 {
        if k.len() >= p.axioms_per_ontology {
            break;
        }
        let cand = rebuttal_filler(rng, &left, &right)?;
        let mut next = k.clone();
        if next.insert(cand) && coherent_alone(&next) && unsat(&next, &k0) == base {
            k = next;
        }
    }

    let name = format!("pair_{index:03}");
    let truth = GroundTruth {
        pair: name.clone(),
        seed: p.seed,
        planted,
        unsat_concepts: base.iter().map(|c| c.to_string()).collect(),
    };
    Some(GeneratedPair { name, rebuttal: k, reliable: k0, truth })
}

type Planting = (PlantedConflict, Vec<Axiom>, Axiom, usize);

fn plant(
    rng: &mut ChaCha8Rng,
    left: &Taxonomy,
    right: &Taxonomy,
    used: &BTreeSet<usize>,
    anchors: &[usize],
    j: usize,
) -> Option<Planting> {
    let n = left.names.len();
    let branching: Vec<usize> = (0..n).filter(|&i| left.children(i).len() >= 2).collect();
    let &fork = branching.choose(rng)?;
    let mut kids = left.children(fork);
    kids.shuffle(rng);
    let (x, y) = (kids[0], kids[1]);
    let disj = Axiom::new(AxiomForm::DisjointClasses(atomic(&left.names[x]), atomic(&left.names[y]))).ok()?;
    let a = *left.descendants(x).choose(rng)?;
    let b = *left.descendants(y).choose(rng)?;

    // Leaves only; reuse an earlier anchor now and then so conflicts overlap.
    let m = right.names.len();
    let free: Vec<usize> = (1..m).filter(|&i| !used.contains(&i) && right.children(i).is_empty()).collect();
    let target = if !anchors.is_empty() && rng.gen_bool(0.3) {
        let anchor = *anchors.choose(rng)?;
        right.children(anchor).into_iter().find(|c| free.contains(c)).or_else(|| free.choose(rng).copied())?
    } else {
        *free.choose(rng)?
    };
    let parent = right.parent[target]?;
    let (l, pa) = (&right.names[target], &right.names[parent]);

    let kind = match rng.gen_range(0..10) {
        0..=5 => ConflictKind::Subsumption,
        6..=7 => ConflictKind::Equivalence,
        _ => ConflictKind::RoleRange,
    };
    let mut added = match kind {
        ConflictKind::Subsumption => {
            vec![sub(atomic(pa), atomic(&left.names[a])), sub(atomic(l), atomic(&left.names[b]))]
        }
        ConflictKind::Equivalence => vec![
            Axiom::new(AxiomForm::EquivalentClasses(atomic(pa), atomic(&left.names[a]))).ok()?,
            sub(atomic(l), atomic(&left.names[b])),
        ],
        ConflictKind::RoleRange => {
            let r = role(&format!("{}{j}", REBUTTAL_ROLES[j % REBUTTAL_ROLES.len()]));
            vec![
                Axiom::new(AxiomForm::Range { role: r.clone(), filler: atomic(&left.names[a]) }).ok()?,
                sub(atomic(l), Concept::exists(r, atomic(&left.names[b]))),
            ]
        }
    };
    // A second route into the other branch gives the concept two reasons.
    if kind == ConflictKind::Subsumption && rng.gen_bool(0.4) {
        let b2 = *left.descendants(y).choose(rng)?;
        added.push(sub(atomic(l), atomic(&left.names[b2])));
    }
    let conflict = PlantedConflict {
        concept: l.to_string(),
        kind,
        disjointness: disj.id().to_string(),
        rebuttal_axioms: added.iter().map(|a| a.id().to_string()).collect(),
    };
    Some((conflict, added, disj, target))
}

fn reliable_filler(rng: &mut ChaCha8Rng, t: &Taxonomy) -> Option<Axiom> {
    let c = |rng: &mut ChaCha8Rng| atomic(t.names.choose(rng).expect("non-empty taxonomy"));
    let r = role(RELIABLE_ROLES.choose(rng)?);
    Some(match rng.gen_range(0..5) {
        0 => Axiom::new(AxiomForm::Domain { role: r, filler: c(rng) }).ok()?,
        1 => Axiom::new(AxiomForm::Range { role: r, filler: c(rng) }).ok()?,
        2 => sub(c(rng), Concept::exists(r, c(rng))),
        3 => {
            let s = role(RELIABLE_ROLES.choose(rng)?);
            Axiom::new(AxiomForm::SubRoleOf { sub: r, sup: s }).ok()?
        }
        _ => {
            let p = rng.gen_range(0..t.names.len());
            let kids = t.children(p);
            if kids.len() < 2 {
                return Some(sub(c(rng), Concept::forall(r, c(rng))));
            }
            Axiom::new(AxiomForm::DisjointClasses(atomic(&t.names[kids[0]]), atomic(&t.names[kids[1]]))).ok()?
        }
    })
}

fn rebuttal_filler(rng: &mut ChaCha8Rng, left: &Taxonomy, right: &Taxonomy) -> Option<Axiom> {
    let l = atomic(left.names.choose(rng)?);
    let r = atomic(right.names.choose(rng)?);
    Some(match rng.gen_range(0..4) {
        0 | 1 => sub(r, l),
        2 => sub(r, Concept::exists(role(REBUTTAL_ROLES.choose(rng)?), l)),
        _ => Axiom::new(AxiomForm::EquivalentClasses(r, l)).ok()?,
    })
}

pub fn generate_pair(params: &CorpusParams, index: usize) -> Result<GeneratedPair, CorpusError> {
    if params.concepts_per_ontology < 4 || params.axioms_per_ontology == 0 {
        return Err(CorpusError::Params("need at least 4 concepts and 1 axiom per ontology"));
    }
    (0..RETRIES)
        .find_map(|a| attempt(&mut pair_rng(params.seed, index, a), index, params))
        .ok_or(CorpusError::RetriesExceeded(index))
}

pub fn generate(params: &CorpusParams) -> Result<Vec<GeneratedPair>, CorpusError> {
    (0..params.pairs).map(|i| generate_pair(params, i)).collect()
}

/// Writes `pair_NNN/{rebuttal.ofn,reliable.ofn,ground_truth.json}` under `dir`.
pub fn write_corpus(dir: &Path, params: &CorpusParams) -> Result<Vec<GeneratedPair>, CorpusError> {
    let pairs = generate(params)?;
    for p in &pairs {
        let base = dir.join(&p.name);
        files::write(&base.join("rebuttal.ofn"), &serialize_ontology(&p.rebuttal))?;
        files::write(&base.join("reliable.ofn"), &serialize_ontology(&p.reliable))?;
        let truth = serde_json::to_string_pretty(&p.truth).expect("ground truth serializes") + "\n";
        files::write(&base.join("ground_truth.json"), &truth)?;
    }
    Ok(pairs)
}

/// A pair loaded from a corpus directory.
#[derive(Debug, Clone)]
pub struct CorpusPair {
    pub name: String,
    pub rebuttal: Ontology,
    pub reliable: Ontology,
}

/// Every subdirectory holding `rebuttal.ofn` and `reliable.ofn`, by name.
pub fn read_corpus(dir: &Path) -> Result<Vec<CorpusPair>, FileError> {
    let entries = std::fs::read_dir(dir).map_err(|source| FileError::Io { path: dir.into(), source })?;
    let mut dirs: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.join("rebuttal.ofn").is_file() && p.join("reliable.ofn").is_file())
        .collect();
    dirs.sort();
    dirs.into_iter()
        .map(|d| {
            Ok(CorpusPair {
                name: d.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default(),
                rebuttal: files::read_ontology(&d.join("rebuttal.ofn"))?.ontology,
                reliable: files::read_ontology(&d.join("reliable.ofn"))?.ontology,
            })
        })
        .collect()
}

impl From<GeneratedPair> for CorpusPair {
    fn from(p: GeneratedPair) -> Self {
        CorpusPair { name: p.name, rebuttal: p.rebuttal, reliable: p.reliable }
    }
}
