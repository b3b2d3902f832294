//! Small-subgraph counts and the per-edge neighborhood statistics used by
//! the 4-cycle and 4-path extremal lemmas.
//!
//! Paths and cycles are counted as subgraphs: each vertex subset together
//! with a choice of required edges counts once, regardless of whether it is
//! induced.

use super::{Graph, VertexSet};
use crate::{BigCount, Error, Result};

/// Number of triangles.
pub fn count_c3(g: &Graph) -> BigCount {
    let mut total = 0u64;
    for (u, v) in g.edges() {
        let above = VertexSet(!((2u64 << v) - 1) as u32);
        total += g.neighbors(u).intersection(g.neighbors(v)).intersection(above).len() as u64;
    }
    BigCount::from(total)
}

/// Number of 4-cycles: each unordered opposite pair `{x, y}` with `c`
/// common neighbors closes `C(c, 2)` cycles, and every cycle has two
/// opposite pairs.
pub fn count_c4(g: &Graph) -> BigCount {
    let n = g.order();
    let mut twice = 0u64;
    for x in 0..n {
        for y in x + 1..n {
            let c = g.neighbors(x).intersection(g.neighbors(y)).len() as u64;
            twice += c * c.saturating_sub(1) / 2;
        }
    }
    BigCount::from(twice / 2)
}

/// Number of paths on four vertices, by walking every middle edge `bc` and
/// pairing an outer neighbor of `b` with a distinct outer neighbor of `c`.
pub fn count_p4(g: &Graph) -> BigCount {
    let mut total = 0u64;
    for (b, c) in g.edges() {
        for a in g.neighbors(b).iter().filter(|&a| a != c) {
            total += g
                .neighbors(c)
                .iter()
                .filter(|&d| d != b && d != a)
                .count() as u64;
        }
    }
    BigCount::from(total)
}

/// `p4(G) = sum over edges of (d-1)^2 - k(e)` for `d`-regular `G`.
pub fn p4_via_edge_formula(g: &Graph) -> Result<BigCount> {
    let d = g.require_regular()? as u64;
    let sq = d.saturating_sub(1).pow(2);
    let total: u64 = g
        .edges()
        .into_iter()
        .map(|(u, v)| sq - g.neighbors(u).intersection(g.neighbors(v)).len() as u64)
        .sum();
    Ok(BigCount::from(total))
}

/// Neighborhood statistics of an edge `uv` with `u < v`.
///
/// `A` holds neighbors of `u` that are not neighbors of `v`, `B` the common
/// neighbors and `C` the neighbors of `v` that are not neighbors of `u`
/// (each excluding `u` and `v` themselves).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeLocalStats {
    pub a: VertexSet,
    pub b: VertexSet,
    pub c: VertexSet,
    /// `|B|`
    pub k: usize,
    /// Edges between `A`-`B`, `B`-`C` and `C`-`A`.
    pub l: usize,
    /// Edges inside `B`.
    pub m: usize,
}

fn edges_between(g: &Graph, x: VertexSet, y: VertexSet) -> usize {
    x.iter().map(|v| g.neighbors(v).intersection(y).len()).sum()
}

pub fn edge_local_stats(g: &Graph, e: (usize, usize)) -> Result<EdgeLocalStats> {
    let (u, v) = if e.0 < e.1 { e } else { (e.1, e.0) };
    if v >= g.order() || !g.has_edge(u, v) {
        return Err(Error::NotAnEdge(e.0, e.1));
    }
    let ends = VertexSet::singleton(u).union(VertexSet::singleton(v));
    let nu = g.neighbors(u).difference(ends);
    let nv = g.neighbors(v).difference(ends);
    let a = nu.difference(nv);
    let b = nu.intersection(nv);
    let c = nv.difference(nu);
    let l = edges_between(g, a, b) + edges_between(g, b, c) + edges_between(g, c, a);
    let m = edges_between(g, b, b) / 2;
    Ok(EdgeLocalStats {
        a,
        b,
        c,
        k: b.len(),
        l,
        m,
    })
}

/// `(1/4) * sum over edges of (l(e) + 2 m(e))`, which equals `c4(G)`.
pub fn c4_via_edge_stats(g: &Graph) -> Result<BigCount> {
    let mut total = 0usize;
    for e in g.edges() {
        let s = edge_local_stats(g, e)?;
        total += s.l + 2 * s.m;
    }
    debug_assert_eq!(total % 4, 0);
    Ok(BigCount::from(total / 4))
}
