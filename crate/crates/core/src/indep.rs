//! Independent sets: counts by size and a lexicographically first maximum
//! independent set.

use std::collections::HashMap;

use crate::graph::{Graph, VertexSet};
use crate::scalar::{from_u64, Count};

/// Independent-set counts `i_0, ..., i_alpha` of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndepProfile {
    pub alpha: usize,
    /// `counts[k]` is the number of independent sets of size `k`.
    pub counts: Vec<u64>,
}

impl IndepProfile {
    /// Total number of independent sets, which is `hom(G, H_ind)`.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// `sum_k i_k * x^k`, by Horner's rule.
    pub fn eval<T: Count>(&self, x: &T) -> T {
        self.counts
            .iter()
            .rev()
            .fold(T::zero(), |acc, &c| acc * x.clone() + from_u64(c))
    }
}

pub fn indep_profile(g: &Graph) -> IndepProfile {
    let mut memo = HashMap::new();
    let counts = count_within(g, g.vertices(), &mut memo);
    IndepProfile {
        alpha: counts.len() - 1,
        counts,
    }
}

/// Counts of independent subsets of `allowed` by size.
fn count_within(g: &Graph, allowed: VertexSet, memo: &mut HashMap<u32, Vec<u64>>) -> Vec<u64> {
    if allowed.is_empty() {
        return vec![1];
    }
    if let Some(hit) = memo.get(&allowed.0) {
        return hit.clone();
    }
    let v = allowed
        .iter()
        .max_by_key(|&v| (g.neighbors(v).intersection(allowed).len(), std::cmp::Reverse(v)))
        .expect("allowed is nonempty");
    let rest = allowed.difference(VertexSet::singleton(v));
    let without = count_within(g, rest, memo);
    let with = count_within(g, rest.difference(g.neighbors(v)), memo);
    let mut out = vec![0u64; without.len().max(with.len() + 1)];
    for (k, c) in without.into_iter().enumerate() {
        out[k] += c;
    }
    for (k, c) in with.into_iter().enumerate() {
        out[k + 1] += c;
    }
    memo.insert(allowed.0, out.clone());
    out
}

pub fn independence_number(g: &Graph) -> usize {
    max_independent_set(g).len()
}

/// The maximum independent set whose sorted vertex list is
/// lexicographically smallest.
pub fn max_independent_set(g: &Graph) -> VertexSet {
    let mut best = VertexSet::EMPTY;
    let mut first = true;
    branch(g, VertexSet::EMPTY, g.vertices(), &mut best, &mut first);
    best
}

fn branch(g: &Graph, chosen: VertexSet, candidates: VertexSet, best: &mut VertexSet, first: &mut bool) {
    if !*first && chosen.len() + candidates.len() <= best.len() {
        return;
    }
    let Some(v) = candidates.first() else {
        *best = chosen;
        *first = false;
        return;
    };
    let rest = candidates.difference(VertexSet::singleton(v));
    branch(g, chosen.union(VertexSet::singleton(v)), rest.difference(g.neighbors(v)), best, first);
    branch(g, chosen, rest, best, first);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog::{complete_bipartite, complete_graph, cycle, hard_core_ind};
    use crate::hom::hom_bruteforce;
    use crate::{BigCount, Rational};

    fn brute_counts(g: &Graph) -> Vec<u64> {
        let mut counts = vec![0u64; g.order() + 1];
        for s in g.vertices().subsets() {
            if s.iter().all(|v| g.neighbors(v).intersection(s).is_empty()) {
                counts[s.len()] += 1;
            }
        }
        while counts.last() == Some(&0) {
            counts.pop();
        }
        counts
    }

    #[test]
    fn examples() {
        let c4 = cycle(4).unwrap();
        let p = indep_profile(&c4);
        assert_eq!(p.counts, vec![1, 4, 2]);
        assert_eq!(p.alpha, 2);
        assert_eq!(p.total(), 7);
        assert_eq!(indep_profile(&complete_bipartite(3, 3).unwrap()).total(), 15);
        let k5 = indep_profile(&complete_graph(5).unwrap());
        assert_eq!((k5.alpha, k5.total()), (1, 6));
    }

    #[test]
    fn matches_brute_force_and_hom_count() {
        let graphs = [
            cycle(7).unwrap(),
            complete_bipartite(2, 4).unwrap(),
            Graph::from_edges(6, [(0, 1), (1, 2), (3, 4)]).unwrap(),
            cycle(3).unwrap().copies(3).unwrap(),
        ];
        for g in &graphs {
            let p = indep_profile(g);
            assert_eq!(p.counts, brute_counts(g), "{g}");
            assert_eq!(BigCount::from(p.total()), hom_bruteforce(g, &hard_core_ind()).unwrap());
        }
    }

    #[test]
    fn lexicographically_first_maximum() {
        assert_eq!(max_independent_set(&cycle(4).unwrap()).iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(max_independent_set(&cycle(5).unwrap()).iter().collect::<Vec<_>>(), vec![0, 2]);
        let g = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(max_independent_set(&g).iter().collect::<Vec<_>>(), vec![1, 2, 3]);
        assert_eq!(independence_number(&cycle(3).unwrap().copies(2).unwrap()), 2);
    }

    #[test]
    fn rational_evaluation() {
        let p = indep_profile(&cycle(4).unwrap());
        let half = Rational::new(1.into(), 2.into());
        // 1 + 4/2 + 2/4
        assert_eq!(p.eval(&half), Rational::new(7.into(), 2.into()));
        assert_eq!(p.eval(&1u64), 7);
    }
}
