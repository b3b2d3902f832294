use std::fmt;

use super::VertexSet;
use crate::{Error, Result};

/// Largest supported constraint-graph order. Keeps vertex subsets of `H`
/// in one machine word and color tuples packable at four bits per color.
pub const MAX_CONSTRAINT_ORDER: usize = 16;

/// A finite simple graph whose vertices may carry loops: the target `H`.
///
/// Row `v` holds the neighbors of `v`, including `v` itself when `v` is
/// looped.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ConstraintGraph {
    order: usize,
    rows: Vec<u32>,
}

/// Result of stripping isolated vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub graph: ConstraintGraph,
    pub stripped: usize,
}

impl ConstraintGraph {
    /// Build from symmetric neighbor rows (diagonal bits are loops). The
    /// result is not normalized; see [`ConstraintGraph::normalize`].
    pub fn from_rows(rows: Vec<u32>) -> Result<Self> {
        let k = rows.len();
        if k == 0 || k > MAX_CONSTRAINT_ORDER {
            return Err(Error::OrderOutOfRange { order: k, max: MAX_CONSTRAINT_ORDER });
        }
        let mask = VertexSet::full(k).0;
        for (u, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                return Err(Error::VertexOutOfRange {
                    vertex: 31 - row.leading_zeros() as usize,
                    order: k,
                });
            }
            for v in VertexSet(row).iter() {
                if rows[v] >> u & 1 == 0 {
                    return Err(Error::Invalid(format!("adjacency not symmetric at ({u}, {v})")));
                }
            }
        }
        Ok(ConstraintGraph { order: k, rows })
    }

    /// Build from an edge list; `(v, v)` adds a loop.
    pub fn from_edges<I>(k: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if k == 0 || k > MAX_CONSTRAINT_ORDER {
            return Err(Error::OrderOutOfRange { order: k, max: MAX_CONSTRAINT_ORDER });
        }
        let mut rows = vec![0u32; k];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= k {
                    return Err(Error::VertexOutOfRange { vertex: w, order: k });
                }
            }
            rows[u] |= 1 << v;
            rows[v] |= 1 << u;
        }
        Ok(ConstraintGraph { order: k, rows })
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<u32>) -> Self {
        ConstraintGraph { order: rows.len(), rows }
    }

    /// Remove vertices with no incident edge. A vertex whose only edge is
    /// its loop is kept.
    pub fn normalize(&self) -> Result<Normalized> {
        let keep: Vec<usize> = (0..self.order).filter(|&v| self.rows[v] != 0).collect();
        if keep.is_empty() {
            return Err(Error::EmptyConstraintGraph);
        }
        let stripped = self.order - keep.len();
        Ok(Normalized {
            graph: self.relabel(&keep),
            stripped,
        })
    }

    pub fn is_normalized(&self) -> bool {
        self.rows.iter().all(|&r| r != 0)
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

    /// Neighbors of `v`, containing `v` itself when looped.
    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.rows[v])
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.adjacent(v, v)
    }

    pub fn looped(&self) -> VertexSet {
        (0..self.order).filter(|&v| self.has_loop(v)).collect()
    }

    pub fn unlooped(&self) -> VertexSet {
        self.vertices().difference(self.looped())
    }

    pub fn is_loopless(&self) -> bool {
        self.looped().is_empty()
    }

    /// Every pair of vertices, equal or not, is adjacent.
    pub fn is_complete_looped(&self) -> bool {
        let all = self.vertices().0;
        self.rows.iter().all(|&r| r == all)
    }

    /// Vertices adjacent to every member of `set` (the whole vertex set for
    /// an empty `set`).
    pub fn common_neighbors(&self, set: VertexSet) -> VertexSet {
        set.iter().fold(self.vertices(), |acc, v| acc.intersection(self.neighbors(v)))
    }

    /// Every pair in `set` (including each vertex with itself) adjacent.
    pub fn is_looped_clique(&self, set: VertexSet) -> bool {
        set.iter().all(|v| set.is_subset(self.neighbors(v)))
    }

    /// `set` contains no looped vertex and its distinct members are
    /// pairwise adjacent.
    pub fn is_unlooped_clique(&self, set: VertexSet) -> bool {
        set.iter().all(|v| {
            !self.has_loop(v) && set.difference(VertexSet::singleton(v)).is_subset(self.neighbors(v))
        })
    }

    /// Number of edges, each loop counted once.
    pub fn edge_count(&self) -> usize {
        let loops = self.looped().len();
        let total: usize = self.rows.iter().map(|r| r.count_ones() as usize).sum();
        (total - loops) / 2 + loops
    }

    /// The complement within `V(H)` (loops toggled too), with isolated
    /// vertices removed. `None` when `H` is complete looped.
    pub fn complement(&self) -> Option<ConstraintGraph> {
        let all = self.vertices().0;
        let rows = self.rows.iter().map(|r| !r & all).collect();
        ConstraintGraph::from_rows_unchecked(rows).normalize().ok().map(|n| n.graph)
    }

    /// Relabel so that old vertex `keep[i]` becomes vertex `i`, dropping
    /// vertices not listed.
    pub fn relabel(&self, keep: &[usize]) -> ConstraintGraph {
        let mut inv = vec![usize::MAX; self.order];
        for (i, &v) in keep.iter().enumerate() {
            inv[v] = i;
        }
        let rows = keep
            .iter()
            .map(|&v| {
                VertexSet(self.rows[v])
                    .iter()
                    .filter(|&w| inv[w] != usize::MAX)
                    .fold(0u32, |acc, w| acc | 1 << inv[w])
            })
            .collect();
        ConstraintGraph::from_rows_unchecked(rows)
    }

    /// Disjoint union, `other` relabeled after `self`.
    pub fn disjoint_union(&self, other: &ConstraintGraph) -> Result<ConstraintGraph> {
        let k = self.order + other.order;
        if k > MAX_CONSTRAINT_ORDER {
            return Err(Error::OrderOutOfRange { order: k, max: MAX_CONSTRAINT_ORDER });
        }
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().map(|r| r << self.order));
        Ok(ConstraintGraph::from_rows_unchecked(rows))
    }

    /// The 0/1 matrix text format: order on the first line, then one row
    /// per line.
    pub fn to_matrix_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for u in 0..self.order {
            for v in 0..self.order {
                out.push(if self.adjacent(u, v) { '1' } else { '0' });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Debug for ConstraintGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.order)
            .map(|u| (0..self.order).map(|v| if self.adjacent(u, v) { '1' } else { '0' }).collect())
            .collect();
        write!(f, "ConstraintGraph[{}]", rows.join(" "))
    }
}

/// Parse the constraint-matrix text format and strip isolated vertices.
pub fn parse_constraint(text: &str) -> Result<Normalized> {
    let mut lines = text.lines().map(|l| l.strip_suffix('\r').unwrap_or(l));
    let header = lines.next().ok_or_else(|| Error::Matrix {
        line: 1,
        reason: "missing order line".into(),
    })?;
    let k: usize = header.trim().parse().map_err(|_| Error::Matrix {
        line: 1,
        reason: format!("order `{header}` is not a nonnegative integer"),
    })?;
    if k == 0 || k > MAX_CONSTRAINT_ORDER {
        return Err(Error::Matrix {
            line: 1,
            reason: format!("order {k} outside 1..={MAX_CONSTRAINT_ORDER}"),
        });
    }
    let mut rows = vec![0u32; k];
    for (i, row) in rows.iter_mut().enumerate() {
        let line_no = i + 2;
        let line = lines.next().ok_or_else(|| Error::Matrix {
            line: line_no,
            reason: format!("expected {k} matrix rows, found {i}"),
        })?;
        if line.chars().count() != k {
            return Err(Error::Matrix {
                line: line_no,
                reason: format!("expected {k} entries, found {}", line.chars().count()),
            });
        }
        for (j, c) in line.chars().enumerate() {
            match c {
                '0' => {}
                '1' => *row |= 1 << j,
                other => {
                    return Err(Error::Matrix {
                        line: line_no,
                        reason: format!("entry `{other}` at column {} is not 0 or 1", j + 1),
                    })
                }
            }
        }
    }
    for (offset, extra) in lines.enumerate() {
        if !extra.trim().is_empty() {
            return Err(Error::Matrix {
                line: k + 2 + offset,
                reason: "trailing content after matrix".into(),
            });
        }
    }
    for u in 0..k {
        for v in u + 1..k {
            if (rows[u] >> v & 1) != (rows[v] >> u & 1) {
                return Err(Error::Matrix {
                    line: u + 2,
                    reason: format!("matrix not symmetric at ({}, {})", u + 1, v + 1),
                });
            }
        }
    }
    ConstraintGraph::from_rows_unchecked(rows).normalize()
}
