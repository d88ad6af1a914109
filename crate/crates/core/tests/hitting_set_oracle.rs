use ontorev_core::min_hitting_set;
use ontorev_testkit::{brute_hitting_set, random_family};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn optimal_and_lexicographically_first() {
    for seed in 0..200u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let family = random_family(&mut rng, 12, 10);
        let (size, lex_first) = brute_hitting_set(&family).unwrap();
        let got = min_hitting_set(&family).unwrap();
        assert!(family.iter().all(|s| !s.is_disjoint(&got)), "seed {seed}: not a hitting set");
        assert_eq!(got.len(), size, "seed {seed}");
        assert_eq!(got, lex_first, "seed {seed}");
    }
}
