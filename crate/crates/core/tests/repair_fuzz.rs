use std::collections::BTreeSet;

use ontorev_core::scoring::{FallbackEmbedder, ScoringConfig};
use ontorev_core::*;
use ontorev_testkit::{atom, prop_satisfiable, random_ontology};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ATOMS: [&str; 5] = ["A0", "A1", "A2", "A3", "A4"];

fn oracle_coherent(p: &RevisionProblem, removed: &BTreeSet<AxiomId>) -> bool {
    let k = p.rebuttal.without(removed);
    p.probe.iter().all(|c| prop_satisfiable(k.iter().chain(p.reliable.iter()), &atom(c.as_str()), &ATOMS))
}

fn problems(count: usize) -> Vec<RevisionProblem> {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut out = Vec::new();
    while out.len() < count {
        let k = random_ontology(&mut rng, 5, 9);
        let k0 = random_ontology(&mut rng, 5, 3);
        let p = RevisionProblem::new(k, k0).with_step_length(rng.gen_range(1..=3));
        // K0 alone must keep the probe satisfiable, else no repair exists.
        if !oracle_coherent(&RevisionProblem::new(Ontology::new(), p.reliable.clone()), &BTreeSet::new()) {
            continue;
        }
        let emptied = RevisionProblem { rebuttal: Ontology::new(), ..p.clone() };
        if !oracle_coherent(&emptied, &BTreeSet::new()) || oracle_coherent(&p, &BTreeSet::new()) {
            continue;
        }
        out.push(p);
    }
    out
}

#[test]
fn repairs_are_coherent_and_minimal() {
    let budget = ExplanationBudget::default();
    for p in problems(60) {
        let store = VectorStore::build(
            &FallbackEmbedder { dimension: 32, seed: 1 },
            p.rebuttal.sentences().iter().chain(p.reliable.sentences().iter()),
        )
        .unwrap();
        let sim = VectorSimilarity { store: &store, metric: Metric::Cos, euclid_k: 15 };
        let mut all_sizes = Vec::new();
        for s in Strategy::ALL {
            let cfg = if s.uses_similarity() {
                ScoringConfig::with_similarity(s, &sim, SimilarityParams::default())
            } else {
                ScoringConfig::counting(s)
            };
            let all = revise_all_mips(&p, &cfg, &NullClock, &budget).unwrap();
            let grouped = revise_grouped(&p, &cfg, &NullClock, &budget).unwrap();
            for d in [&all, &grouped] {
                assert!(oracle_coherent(&p, &d.removed), "{s}: incoherent after repair");
                assert!(d.minimal);
                for a in &d.removed {
                    let mut back = d.removed.clone();
                    back.remove(a);
                    assert!(!oracle_coherent(&p, &back), "{s}: {a} was removed needlessly");
                }
            }
            for m in &all.mips {
                assert!(!m.axioms.is_disjoint(&all.removed));
            }
            let wide = revise_grouped(&p.clone().with_step_length(usize::MAX), &cfg, &NullClock, &budget).unwrap();
            assert_eq!(wide.removed, all.removed, "{s}: one group should equal the all-R-MIPS result");
            all_sizes.push((s, all.removed.len()));
        }
        let base = all_sizes[0].1;
        assert!(all_sizes.iter().all(|&(_, n)| n >= base), "{all_sizes:?}");
    }
}
