//! Source graphs `G` (simple, loopless) and constraint graphs `H` (loops
//! allowed), both stored as one bit row per vertex.

mod bst;
pub mod catalog;
mod constraint;
mod graph6;
pub mod stats;

use std::fmt;

pub use bst::{bst_square, BstSquare};
pub use catalog::{catalog, CatalogItem};
pub use constraint::{parse_constraint, ConstraintGraph, Normalized};
pub use graph6::{parse_graph6, to_graph6};
pub use stats::{count_c3, count_c4, count_p4, edge_local_stats, p4_via_edge_formula, EdgeLocalStats};

use crate::{Error, Result};

/// Largest supported source-graph order.
pub const MAX_ORDER: usize = 32;

/// A set of vertex indices below 32, as a bitmask.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(pub u32);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> Self {
        if n >= 32 {
            VertexSet(u32::MAX)
        } else {
            VertexSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> Self {
        VertexSet(1 << v)
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1 << v);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VertexSet) -> Self {
        VertexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VertexSet) -> Self {
        VertexSet(self.0 & other.0)
    }

    pub fn difference(self, other: VertexSet) -> Self {
        VertexSet(self.0 & !other.0)
    }

    /// Lowest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(v)
            }
        })
    }

    /// All subsets of `self`, including the empty set and `self`.
    pub fn subsets(self) -> impl Iterator<Item = VertexSet> {
        let full = self.0;
        let mut sub = 0u32;
        let mut done = false;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            let out = VertexSet(sub);
            if sub == full {
                done = true;
            } else {
                sub = (sub.wrapping_sub(full)) & full;
            }
            Some(out)
        })
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

/// A finite simple loopless graph on vertices `0..order`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    order: usize,
    rows: Vec<u32>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange { order: n, max: MAX_ORDER });
        }
        Ok(Graph { order: n, rows: vec![0; n] })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n)?;
        for (u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Build from neighbor bit rows. Rows must be symmetric with a clear
    /// diagonal.
    pub fn from_rows(rows: Vec<u32>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderOutOfRange { order: n, max: MAX_ORDER });
        }
        let mask = VertexSet::full(n).0;
        for (u, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::VertexOutOfRange {
                    vertex: 31 - row.leading_zeros() as usize,
                    order: n,
                });
            }
            if row >> u & 1 == 1 {
                return Err(Error::SelfLoop(u));
            }
            for v in VertexSet(row).iter() {
                if rows[v] >> u & 1 == 0 {
                    return Err(Error::Invalid(format!("adjacency not symmetric at ({u}, {v})")));
                }
            }
        }
        Ok(Graph { order: n, rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u32>) -> Self {
        debug_assert!(!rows.is_empty() && rows.len() <= MAX_ORDER);
        Graph { order: rows.len(), rows }
    }

    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for w in [u, v] {
            if w >= self.order {
                return Err(Error::VertexOutOfRange { vertex: w, order: self.order });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.order)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.order {
            for v in VertexSet(self.rows[u] & !((2u64 << u) - 1) as u32).iter() {
                out.push((u, v));
            }
        }
        out
    }

    /// The common degree, if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.degree(0);
        (1..self.order).all(|v| self.degree(v) == d).then_some(d)
    }

    pub(crate) fn require_regular(&self) -> Result<usize> {
        self.regular_degree().ok_or(Error::NotRegular)
    }

    /// Connected components, ordered by lowest vertex.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for s in 0..self.order {
            if seen.contains(s) {
                continue;
            }
            let comp = self.component_of(s);
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    pub fn component_of(&self, s: usize) -> VertexSet {
        let mut comp = VertexSet::singleton(s);
        let mut frontier = comp;
        while !frontier.is_empty() {
            let mut next = VertexSet::EMPTY;
            for v in frontier.iter() {
                next = next.union(self.neighbors(v));
            }
            frontier = next.difference(comp);
            comp = comp.union(frontier);
        }
        comp
    }

    pub fn is_connected(&self) -> bool {
        self.component_of(0) == self.vertices()
    }

    /// Two-coloring of every component, or `None` if some component has an
    /// odd cycle. Returns the set of vertices on the "second" side.
    pub fn bipartition(&self) -> Option<VertexSet> {
        let mut side = VertexSet::EMPTY;
        let mut seen = VertexSet::EMPTY;
        for s in 0..self.order {
            if seen.contains(s) {
                continue;
            }
            seen.insert(s);
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in self.neighbors(v).iter() {
                    if !seen.contains(w) {
                        seen.insert(w);
                        if !side.contains(v) {
                            side.insert(w);
                        }
                        stack.push(w);
                    } else if side.contains(w) == side.contains(v) {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Subgraph induced on `set`, relabeled to `0..|set|` preserving order.
    pub fn induced(&self, set: VertexSet) -> Result<Graph> {
        let verts: Vec<usize> = set.iter().collect();
        let mut rows = vec![0u32; verts.len()];
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate() {
                if self.has_edge(u, v) {
                    rows[i] |= 1 << j;
                }
            }
        }
        if rows.is_empty() {
            return Err(Error::OrderOutOfRange { order: 0, max: MAX_ORDER });
        }
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// Relabel so that old vertex `perm[i]` becomes vertex `i`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut inv = vec![0usize; self.order];
        for (i, &v) in perm.iter().enumerate() {
            inv[v] = i;
        }
        let rows = perm
            .iter()
            .map(|&v| VertexSet(self.rows[v]).iter().fold(0u32, |acc, w| acc | 1 << inv[w]))
            .collect();
        Graph::from_rows_unchecked(rows)
    }

    /// Disjoint union, with `other` relabeled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.order + other.order;
        if n > MAX_ORDER {
            return Err(Error::OrderOutOfRange { order: n, max: MAX_ORDER });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << self.order));
        Ok(Graph::from_rows_unchecked(rows))
    }

    /// `t` disjoint copies of `self`.
    pub fn copies(&self, t: usize) -> Result<Graph> {
        if t == 0 {
            return Err(Error::Invalid("need at least one copy".into()));
        }
        let mut g = self.clone();
        for _ in 1..t {
            g = g.disjoint_union(self)?;
        }
        Ok(g)
    }

    pub fn to_graph6(&self) -> String {
        to_graph6(self)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", to_graph6(self))
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_graph6(self))
    }
}

impl std::str::FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_graph6(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertex_set_subsets_enumerates_all() {
        let s = VertexSet(0b1011);
        let subs: Vec<_> = s.subsets().collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|x| x.is_subset(s)));
        assert_eq!(VertexSet::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn rejects_bad_orders_and_loops() {
        assert!(Graph::empty(0).is_err());
        assert!(Graph::empty(33).is_err());
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(Error::SelfLoop(1)));
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
    }

    #[test]
    fn components_and_bipartition() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4)]).unwrap();
        assert_eq!(g.components().len(), 3);
        assert!(!g.is_bipartite());
        let c4 = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        assert_eq!(c4.bipartition(), Some(VertexSet(0b1010)));
        assert_eq!(c4.regular_degree(), Some(2));
    }

    #[test]
    fn union_relabels_second_operand() {
        let k2 = Graph::from_edges(2, [(0, 1)]).unwrap();
        let u = k2.copies(3).unwrap();
        assert_eq!(u.order(), 6);
        assert_eq!(u.edges(), vec![(0, 1), (2, 3), (4, 5)]);
    }
}
