//! Exact minimum-cardinality hitting sets.
//!
//! Phase one finds the optimum size with branch and bound: branch on the
//! elements of the smallest uncovered set (most frequent first), bound below
//! by a greedy packing of pairwise disjoint uncovered sets and above by the
//! greedy cover. Phase two walks increasing index sequences of that size in
//! lexicographic order and returns the first that hits everything.

use crate::ontology::AxiomId;
use crate::prelude::*;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HittingSetError {
    #[error("member {0} of the family is empty and cannot be hit")]
    EmptyMember(usize),
}

struct Instance {
    /// Members as sorted element indices; supersets of other members dropped.
    sets: Vec<Vec<usize>>,
    coverage: Vec<usize>,
}

impl Instance {
    fn new(n: usize, mut sets: Vec<Vec<usize>>) -> Self {
        sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        sets.dedup();
        let mut kept: Vec<Vec<usize>> = Vec::new();
        for s in sets {
            if !kept.iter().any(|k| is_subset(k, &s)) {
                kept.push(s);
            }
        }
        let mut coverage = vec![0; n];
        for s in &kept {
            for &e in s {
                coverage[e] += 1;
            }
        }
        Instance { sets: kept, coverage }
    }

    fn uncovered<'a>(&'a self, chosen: &'a [bool]) -> impl Iterator<Item = &'a Vec<usize>> + 'a {
        self.sets.iter().filter(move |s| !s.iter().any(|&e| chosen[e]))
    }

    /// Number of pairwise disjoint sets picked greedily, smallest first.
    fn packing_bound<'a>(&self, uncovered: impl Iterator<Item = &'a Vec<usize>>, n: usize) -> usize {
        let mut used = vec![false; n];
        let mut count = 0;
        for s in uncovered {
            if s.iter().all(|&e| !used[e]) {
                s.iter().for_each(|&e| used[e] = true);
                count += 1;
            }
        }
        count
    }

    fn greedy(&self, n: usize) -> usize {
        let mut chosen = vec![false; n];
        let mut size = 0;
        loop {
            let open: Vec<&Vec<usize>> = self.uncovered(&chosen).collect();
            if open.is_empty() {
                return size;
            }
            let mut hits = vec![0usize; n];
            for s in &open {
                for &e in s.iter() {
                    hits[e] += 1;
                }
            }
            let best = (0..n).max_by(|&a, &b| hits[a].cmp(&hits[b]).then_with(|| b.cmp(&a))).unwrap();
            chosen[best] = true;
            size += 1;
        }
    }

    fn optimum(&self, n: usize) -> usize {
        let mut best = self.greedy(n);
        let mut chosen = vec![false; n];
        self.branch(&mut chosen, 0, &mut best, n);
        best
    }

    fn branch(&self, chosen: &mut [bool], size: usize, best: &mut usize, n: usize) {
        let open: Vec<&Vec<usize>> = self.uncovered(chosen).collect();
        if open.is_empty() {
            *best = (*best).min(size);
            return;
        }
        if size + self.packing_bound(open.iter().copied(), n) >= *best {
            return;
        }
        let pivot = open.iter().min_by_key(|s| s.len()).unwrap();
        let mut order: Vec<usize> = pivot.to_vec();
        order.sort_by(|&a, &b| self.coverage[b].cmp(&self.coverage[a]).then_with(|| a.cmp(&b)));
        for e in order {
            chosen[e] = true;
            self.branch(chosen, size + 1, best, n);
            chosen[e] = false;
        }
    }

    fn lex_first(&self, chosen: &mut [bool], picked: &mut Vec<usize>, start: usize, k: usize, n: usize) -> bool {
        let open: Vec<&Vec<usize>> = self.uncovered(chosen).collect();
        if open.is_empty() {
            return true;
        }
        let left = k - picked.len();
        if left == 0 {
            return false;
        }
        // Elements below `start` can no longer be picked.
        let mut reachable = Vec::with_capacity(open.len());
        for s in &open {
            let tail: Vec<usize> = s.iter().copied().filter(|&e| e >= start).collect();
            if tail.is_empty() {
                return false;
            }
            reachable.push(tail);
        }
        reachable.sort_by_key(|s| s.len());
        if self.packing_bound(reachable.iter(), n) > left {
            return false;
        }
        // The next pick may not skip past every element of some open set.
        let limit = reachable.iter().map(|s| *s.last().unwrap()).min().unwrap();
        for e in start..=limit {
            if self.coverage[e] == 0 {
                continue;
            }
            chosen[e] = true;
            picked.push(e);
            if self.lex_first(chosen, picked, e + 1, k, n) {
                return true;
            }
            picked.pop();
            chosen[e] = false;
        }
        false
    }
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|e| big.binary_search(e).is_ok())
}

/// A minimum-cardinality set meeting every member of `family`; among those,
/// the lexicographically smallest sorted id sequence.
pub fn min_hitting_set(family: &[BTreeSet<AxiomId>]) -> Result<BTreeSet<AxiomId>, HittingSetError> {
    if let Some(i) = family.iter().position(|s| s.is_empty()) {
        return Err(HittingSetError::EmptyMember(i));
    }
    let universe: Vec<&AxiomId> = family.iter().flatten().collect::<BTreeSet<_>>().into_iter().collect();
    let index = |id: &AxiomId| universe.binary_search(&id).unwrap();
    let sets = family.iter().map(|s| s.iter().map(index).collect()).collect();
    let n = universe.len();
    let inst = Instance::new(n, sets);
    let k = inst.optimum(n);
    let mut chosen = vec![false; n];
    let mut picked = Vec::with_capacity(k);
    let found = inst.lex_first(&mut chosen, &mut picked, 0, k, n);
    debug_assert!(found, "a hitting set of optimal size exists");
    Ok(picked.into_iter().map(|i| universe[i].clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_axiom;

    fn ax(n: &str) -> AxiomId {
        parse_axiom(&format!("SubClassOf({n} X)")).unwrap().id().clone()
    }

    fn fam(sets: &[&[&str]]) -> Vec<BTreeSet<AxiomId>> {
        sets.iter().map(|s| s.iter().map(|n| ax(n)).collect()).collect()
    }

    fn names(h: &BTreeSet<AxiomId>) -> Vec<String> {
        h.iter().map(|a| a.as_str()[11..].split(' ').next().unwrap().to_string()).collect()
    }

    #[test]
    fn forced_element() {
        assert_eq!(names(&min_hitting_set(&fam(&[&["a"], &["a", "b"]])).unwrap()), ["a"]);
    }

    #[test]
    fn two_singletons() {
        assert_eq!(names(&min_hitting_set(&fam(&[&["a2"], &["a1"]])).unwrap()), ["a1", "a2"]);
    }

    #[test]
    fn shared_element_wins() {
        assert_eq!(names(&min_hitting_set(&fam(&[&["a", "b"], &["b", "c"]])).unwrap()), ["b"]);
    }

    #[test]
    fn lexicographic_tie_break() {
        // Optimal pairs: {a,c}, {a,d}, {b,c}, {b,d}.
        let f = fam(&[&["b", "a"], &["d", "c"]]);
        assert_eq!(names(&min_hitting_set(&f).unwrap()), ["a", "c"]);
        let f = fam(&[&["a", "e"], &["b", "e"], &["c", "e"], &["a", "b", "c"], &["d"]]);
        assert_eq!(names(&min_hitting_set(&f).unwrap()), ["a", "d", "e"]);
    }

    #[test]
    fn empty_family_and_empty_member() {
        assert!(min_hitting_set(&[]).unwrap().is_empty());
        let f = vec![BTreeSet::from([ax("a")]), BTreeSet::new()];
        assert_eq!(min_hitting_set(&f), Err(HittingSetError::EmptyMember(1)));
    }
}
