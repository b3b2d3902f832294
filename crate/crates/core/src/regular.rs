//! Generation of regular graphs, one per isomorphism class.
//!
//! Vertices are completed in index order. When vertex `v` is completed it
//! is joined to some later vertices with spare degree; later vertices whose
//! current neighborhoods coincide are interchangeable, so only the lowest
//! indices of each such class are ever chosen. Fresh vertices form one
//! class, which makes every generated labeling a breadth-first one and lets
//! the connected mode prune as soon as the labeled part closes off. The
//! survivors are deduplicated by canonical form.

use std::collections::BTreeSet;

use crate::canon::canonical_form;
use crate::graph::{Graph, VertexSet};
use crate::{Error, Result};

/// Largest order the built-in generator accepts.
pub const MAX_GENERATED_ORDER: usize = 12;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RegularFilter {
    pub connected: bool,
    pub triangle_free: bool,
}

/// Every `d`-regular graph on `n` vertices up to isomorphism, in canonical
/// form and sorted.
pub fn enumerate_regular(n: usize, d: usize, connected: bool) -> Result<Vec<Graph>> {
    enumerate_regular_filtered(
        n,
        d,
        RegularFilter {
            connected,
            triangle_free: false,
        },
    )
}

pub fn enumerate_regular_filtered(n: usize, d: usize, filter: RegularFilter) -> Result<Vec<Graph>> {
    if n == 0 || n > MAX_GENERATED_ORDER {
        return Err(Error::OrderOutOfRange {
            order: n,
            max: MAX_GENERATED_ORDER,
        });
    }
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    if n * d % 2 == 1 {
        return Err(Error::Invalid(format!("no {d}-regular graph on {n} vertices: n*d is odd")));
    }
    if filter.connected {
        return Ok(connected_regular(n, d, filter.triangle_free));
    }
    let pieces: Vec<(usize, Vec<Graph>)> = (d + 1..=n)
        .filter(|s| s * d % 2 == 0)
        .map(|s| (s, connected_regular(s, d, filter.triangle_free)))
        .filter(|(_, gs)| !gs.is_empty())
        .collect();
    let mut found = BTreeSet::new();
    let mut chosen = Vec::new();
    combine(&pieces, n, 0, 0, &mut chosen, &mut found);
    Ok(found.into_iter().map(Graph::from_rows_unchecked).collect())
}

/// Multisets of connected pieces with total order `n`, chosen in
/// nondecreasing `(size index, graph index)` order.
fn combine(
    pieces: &[(usize, Vec<Graph>)],
    remaining: usize,
    from_size: usize,
    from_graph: usize,
    chosen: &mut Vec<Graph>,
    found: &mut BTreeSet<Vec<u32>>,
) {
    if remaining == 0 {
        let union = chosen[1..]
            .iter()
            .fold(chosen[0].clone(), |acc, g| acc.disjoint_union(g).expect("order within range"));
        found.insert(canonical_form(&union).rows().to_vec());
        return;
    }
    for si in from_size..pieces.len() {
        let (size, graphs) = &pieces[si];
        if *size > remaining {
            break;
        }
        let start = if si == from_size { from_graph } else { 0 };
        for gi in start..graphs.len() {
            chosen.push(graphs[gi].clone());
            combine(pieces, remaining - size, si, gi, chosen, found);
            chosen.pop();
        }
    }
}

struct Builder {
    n: usize,
    d: usize,
    triangle_free: bool,
    rows: Vec<u32>,
    found: BTreeSet<Vec<u32>>,
}

impl Builder {
    fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    fn add(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    fn remove(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    /// The labeled part is closed: every vertex with an edge is saturated
    /// but untouched vertices remain.
    fn closed_off(&self, v: usize) -> bool {
        let touched = (0..self.n).filter(|&w| w <= v || self.rows[w] != 0);
        let all_touched = (0..self.n).all(|w| w <= v || self.rows[w] != 0);
        !all_touched && touched.into_iter().all(|w| self.degree(w) == self.d)
    }

    fn fill(&mut self, v: usize) {
        if v == self.n {
            let g = Graph::from_rows_unchecked(self.rows.clone());
            if g.is_connected() {
                self.found.insert(canonical_form(&g).rows().to_vec());
            }
            return;
        }
        let need = self.d - self.degree(v);
        let mut classes: Vec<(u32, Vec<usize>)> = Vec::new();
        for w in v + 1..self.n {
            if self.degree(w) >= self.d || (self.triangle_free && self.rows[w] & self.rows[v] != 0) {
                continue;
            }
            match classes.iter_mut().find(|(r, _)| *r == self.rows[w]) {
                Some((_, members)) => members.push(w),
                None => classes.push((self.rows[w], vec![w])),
            }
        }
        let available: usize = classes.iter().map(|(_, m)| m.len()).sum();
        if available < need {
            return;
        }
        let mut picks = Vec::with_capacity(need);
        self.choose(v, &classes, 0, need, &mut picks);
    }

    fn choose(&mut self, v: usize, classes: &[(u32, Vec<usize>)], i: usize, need: usize, picks: &mut Vec<usize>) {
        if need == 0 {
            for &w in picks.iter() {
                self.add(v, w);
            }
            if !self.closed_off(v) {
                self.fill(v + 1);
            }
            for &w in picks.iter() {
                self.remove(v, w);
            }
            return;
        }
        if i == classes.len() {
            return;
        }
        let rest: usize = classes[i + 1..].iter().map(|(_, m)| m.len()).sum();
        let members = &classes[i].1;
        let lo = need.saturating_sub(rest);
        for take in (lo..=members.len().min(need)).rev() {
            picks.extend_from_slice(&members[..take]);
            self.choose(v, classes, i + 1, need - take, picks);
            picks.truncate(picks.len() - take);
        }
    }
}

fn connected_regular(n: usize, d: usize, triangle_free: bool) -> Vec<Graph> {
    if d >= n || n * d % 2 == 1 {
        return Vec::new();
    }
    let mut b = Builder {
        n,
        d,
        triangle_free,
        rows: vec![0; n],
        found: BTreeSet::new(),
    };
    b.fill(0);
    b.found.into_iter().map(Graph::from_rows_unchecked).collect()
}

/// The disjoint union of `t` copies of `K_{d,d}` or `K_{d+1}`, when `n`
/// allows one.
pub fn extremal_unions(n: usize, d: usize) -> (Option<Graph>, Option<Graph>) {
    use crate::graph::catalog::{clique_union, kdd_union};
    let kdd = (d > 0 && n % (2 * d) == 0).then(|| kdd_union(d, n / (2 * d)).ok()).flatten();
    let kdp1 = (n % (d + 1) == 0).then(|| clique_union(d, n / (d + 1)).ok()).flatten();
    (kdd, kdp1)
}

/// Vertices of `g` lying on a triangle.
pub fn triangle_vertices(g: &Graph) -> VertexSet {
    g.edges()
        .into_iter()
        .filter(|&(u, v)| !g.neighbors(u).intersection(g.neighbors(v)).is_empty())
        .flat_map(|(u, v)| [u, v])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog::{complete_graph, cycle};

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k <= 1 {
                out.push(p.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, p, out);
                let j = if k % 2 == 0 { i } else { 0 };
                p.swap(j, k - 1);
            }
        }
        heap(n, &mut p, &mut out);
        out
    }

    /// Labeled `d`-regular graphs on `n` vertices, by plain recursion.
    fn labeled_count(n: usize, d: usize) -> u64 {
        fn go(v: usize, n: usize, d: usize, deg: &mut Vec<usize>) -> u64 {
            if v == n {
                return 1;
            }
            let need = d - deg[v];
            let open: Vec<usize> = (v + 1..n).filter(|&w| deg[w] < d).collect();
            let mut total = 0;
            for mask in 0u32..1 << open.len() {
                if mask.count_ones() as usize != need {
                    continue;
                }
                let chosen: Vec<usize> = (0..open.len()).filter(|i| mask >> i & 1 == 1).map(|i| open[i]).collect();
                for &w in &chosen {
                    deg[w] += 1;
                }
                total += go(v + 1, n, d, deg);
                for &w in &chosen {
                    deg[w] -= 1;
                }
            }
            total
        }
        go(0, n, d, &mut vec![0; n])
    }

    fn automorphisms(g: &Graph, perms: &[Vec<usize>]) -> u64 {
        perms.iter().filter(|p| g.relabel(p) == *g).count() as u64
    }

    fn factorial(n: usize) -> u64 {
        (1..=n as u64).product()
    }

    #[test]
    fn small_examples() {
        let k4 = enumerate_regular(4, 3, true).unwrap();
        assert_eq!(k4.len(), 1);
        assert!(crate::canon::are_isomorphic(&k4[0], &complete_graph(4).unwrap()));
        let two = enumerate_regular(6, 2, false).unwrap();
        assert_eq!(two.len(), 2);
        let c6 = canonical_form(&cycle(6).unwrap());
        let c33 = canonical_form(&cycle(3).unwrap().copies(2).unwrap());
        assert!(two.contains(&c6) && two.contains(&c33));
        assert_eq!(enumerate_regular(8, 3, true).unwrap().len(), 5);
    }

    #[test]
    fn known_counts() {
        let connected_cubic: Vec<usize> = [4, 6, 8, 10].iter().map(|&n| enumerate_regular(n, 3, true).unwrap().len()).collect();
        assert_eq!(connected_cubic, vec![1, 2, 5, 19]);
        let all_cubic: Vec<usize> = [4, 6, 8, 10].iter().map(|&n| enumerate_regular(n, 3, false).unwrap().len()).collect();
        assert_eq!(all_cubic, vec![1, 2, 6, 21]);
        let quartic: Vec<usize> = (5..=8).map(|n| enumerate_regular(n, 4, true).unwrap().len()).collect();
        assert_eq!(quartic, vec![1, 1, 2, 6]);
        let tf = RegularFilter {
            connected: true,
            triangle_free: true,
        };
        let tf_cubic: Vec<usize> = [6, 8, 10].iter().map(|&n| enumerate_regular_filtered(n, 3, tf).unwrap().len()).collect();
        assert_eq!(tf_cubic, vec![1, 2, 6]);
        // 2-regular graphs are unions of cycles: partitions of n into parts >= 3.
        let cycles: Vec<usize> = (3..=12).map(|n| enumerate_regular(n, 2, false).unwrap().len()).collect();
        assert_eq!(cycles, vec![1, 1, 1, 2, 2, 3, 4, 5, 6, 9]);
    }

    #[test]
    fn matches_labeled_brute_force() {
        for n in 3..=8 {
            let perms = permutations(n);
            for d in 1..n {
                if n * d % 2 == 1 {
                    continue;
                }
                let graphs = enumerate_regular(n, d, false).unwrap();
                let weighted: u64 = graphs.iter().map(|g| factorial(n) / automorphisms(g, &perms)).sum();
                assert_eq!(weighted, labeled_count(n, d), "n={n} d={d}");
                for (i, a) in graphs.iter().enumerate() {
                    assert_eq!(a.regular_degree(), Some(d));
                    for b in &graphs[i + 1..] {
                        assert!(perms.iter().all(|p| a.relabel(p) != *b), "duplicate class n={n} d={d}");
                    }
                }
            }
        }
        assert_eq!(labeled_count(8, 3), 19355);
        assert_eq!(labeled_count(8, 2), 3507);
    }

    #[test]
    fn connected_subset_of_all() {
        for (n, d) in [(8, 2), (8, 3), (9, 4)] {
            let all = enumerate_regular(n, d, false).unwrap();
            let conn = enumerate_regular(n, d, true).unwrap();
            let expected: Vec<Graph> = all.iter().filter(|g| g.is_connected()).cloned().collect();
            assert_eq!(conn, expected);
        }
    }

    #[test]
    fn input_errors() {
        assert!(matches!(enumerate_regular(13, 2, true), Err(Error::OrderOutOfRange { .. })));
        assert!(enumerate_regular(5, 3, true).is_err());
        assert_eq!(enumerate_regular(4, 0, true), Err(Error::ZeroDegree));
        assert!(enumerate_regular(4, 4, true).unwrap().is_empty());
    }

    #[test]
    fn unions_and_triangles() {
        let (kdd, kdp1) = extremal_unions(12, 3);
        assert_eq!(kdd.unwrap().order(), 12);
        assert_eq!(kdp1.unwrap().order(), 12);
        assert_eq!(extremal_unions(6, 2).0, None);
        assert_eq!(triangle_vertices(&cycle(5).unwrap()), VertexSet::EMPTY);
        assert_eq!(triangle_vertices(&complete_graph(3).unwrap()).len(), 3);
    }
}
