use std::collections::BTreeSet;

use ontorev_core::{all_mups, one_mups, ExplanationBudget, Name, NullClock, Ontology};
use ontorev_testkit::{atom, brute_mups, prop_satisfiable, random_ontology, ATOMS};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn unsat_in(sets: &Ontology, k0: &Ontology, c: &Name, atoms: &[&str]) -> bool {
    !prop_satisfiable(sets.iter().chain(k0.iter()), &atom(c.as_str()), atoms)
}

#[test]
fn all_mups_matches_subset_lattice() {
    let atoms = &ATOMS[..4];
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut done = 0;
    let mut multi = 0;
    while done < 200 {
        let k = random_ontology(&mut rng, 4, 10);
        let k0 = if rng.gen_bool(0.5) { random_ontology(&mut rng, 4, 3) } else { Ontology::new() };
        let k = k.without(&k0.ids());
        let Some(c) = atoms
            .iter()
            .map(|a| Name::new(*a).unwrap())
            .find(|c| unsat_in(&k, &k0, c, atoms) && !unsat_in(&Ontology::new(), &k0, c, atoms))
        else {
            continue;
        };
        let want = brute_mups(&k, &k0, &c, atoms);
        let got = all_mups(&k, &k0, &c, &NullClock, &ExplanationBudget::default()).unwrap();
        assert_eq!(got.truncated, None);
        let got_sets: BTreeSet<_> = got.sets.iter().map(|s| s.axioms.clone()).collect();
        assert_eq!(got_sets.len(), got.sets.len(), "duplicate R-MUPS");
        assert_eq!(got_sets, want, "concept {c}");

        for m in &got_sets {
            let sub = k.restricted_to(m);
            assert!(unsat_in(&sub, &k0, &c, atoms));
            for a in m {
                let smaller = sub.without([a]);
                assert!(!unsat_in(&smaller, &k0, &c, atoms), "{a} is not needed");
            }
        }
        let single = one_mups(&k, &k0, &c, &NullClock, &ExplanationBudget::default()).unwrap();
        assert!(want.contains(&single.axioms));
        multi += usize::from(want.len() > 1);
        done += 1;
    }
    assert!(multi > 20, "only {multi} instances with several R-MUPS");
}
