use super::ConstraintGraph;

/// The square graph on `V(H) x V(H)`: `(u, v)` and `(u', v')` are joined
/// iff `u ~ u'`, `v ~ v'`, and `u !~ v'` or `u' !~ v`.
///
/// A pair `(u, v)` is joined to itself whenever `u` and `v` are both looped
/// but not adjacent, so the result can carry loops; a loop is an odd cycle
/// for the bipartiteness test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BstSquare {
    /// Number of vertices, `|V(H)|^2`; pair `(u, v)` is vertex `u * k + v`.
    pub order: usize,
    pub adjacency: Vec<Vec<usize>>,
    pub loops: Vec<usize>,
    pub is_bipartite: bool,
}

pub fn bst_square(h: &ConstraintGraph) -> BstSquare {
    let k = h.order();
    let order = k * k;
    let mut adjacency = vec![Vec::new(); order];
    let mut loops = Vec::new();
    for u in 0..k {
        for v in 0..k {
            let x = u * k + v;
            for u2 in h.neighbors(u).iter() {
                for v2 in h.neighbors(v).iter() {
                    if h.adjacent(u, v2) && h.adjacent(u2, v) {
                        continue;
                    }
                    let y = u2 * k + v2;
                    if x == y {
                        loops.push(x);
                    } else {
                        adjacency[x].push(y);
                    }
                }
            }
        }
    }
    let is_bipartite = loops.is_empty() && two_colorable(&adjacency);
    BstSquare {
        order,
        adjacency,
        loops,
        is_bipartite,
    }
}

fn two_colorable(adj: &[Vec<usize>]) -> bool {
    let mut color = vec![u8::MAX; adj.len()];
    for s in 0..adj.len() {
        if color[s] != u8::MAX {
            continue;
        }
        color[s] = 0;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if color[y] == u8::MAX {
                    color[y] = 1 - color[x];
                    stack.push(y);
                } else if color[y] == color[x] {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog::{complete, complete_looped, hard_core, hard_core_ind, loops, widom_rowlinson};

    #[test]
    fn hard_core_graphs_have_bipartite_square() {
        assert!(bst_square(&hard_core_ind()).is_bipartite);
        for k in 1..=6 {
            assert!(bst_square(&hard_core(k).unwrap()).is_bipartite, "H({k})");
        }
    }

    #[test]
    fn two_loops_fail() {
        let sq = bst_square(&loops(2).unwrap());
        assert!(!sq.is_bipartite);
        assert_eq!(sq.loops, vec![1, 2]);
    }

    #[test]
    fn symmetric_adjacency() {
        for h in [widom_rowlinson(), complete(3).unwrap(), complete_looped(2).unwrap()] {
            let sq = bst_square(&h);
            for (x, ys) in sq.adjacency.iter().enumerate() {
                for &y in ys {
                    assert!(sq.adjacency[y].contains(&x));
                }
            }
        }
        // Complete looped graphs fail condition (iii) everywhere.
        assert!(bst_square(&complete_looped(3).unwrap()).adjacency.iter().all(Vec::is_empty));
    }
}
