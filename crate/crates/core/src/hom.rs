//! Three independent exact counters for `hom(G, H)`.
//!
//! * [`hom_bruteforce`] walks every map `V(G) -> V(H)` with pruning.
//! * [`hom_dp`] is a frontier dynamic program over partial assignments.
//! * [`hom_inclusion_exclusion`] sums over edge subsets of `G`, counting
//!   maps into the complement of `H`.
//!
//! Their agreement is the main correctness oracle of the crate.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graph::{ConstraintGraph, Graph, VertexSet};
use crate::scalar::Count;
use crate::{BigCount, Error, Limits, Result};

/// Colors are packed four bits apiece into a `u64` key.
const MAX_FRONTIER: usize = 16;

pub fn hom_bruteforce(g: &Graph, h: &ConstraintGraph) -> Result<BigCount> {
    hom_bruteforce_with(g, h, &Limits::default())
}

pub fn hom_bruteforce_with(g: &Graph, h: &ConstraintGraph, limits: &Limits) -> Result<BigCount> {
    let k = h.order() as u128;
    let states = k.checked_pow(g.order() as u32);
    if states.is_none_or(|s| s > limits.brute_force_states as u128) {
        let needed = states.map_or_else(|| format!("{k}^{}", g.order()), |s| s.to_string());
        return Err(Error::guard("brute-force-states", needed, limits.brute_force_states));
    }
    let mut colors = vec![0usize; g.order()];
    let mut count = 0u64;
    brute(g, h, 0, &mut colors, &mut count);
    Ok(BigCount::from(count))
}

fn brute(g: &Graph, h: &ConstraintGraph, v: usize, colors: &mut [usize], count: &mut u64) {
    if v == g.order() {
        *count += 1;
        return;
    }
    let earlier = g.neighbors(v).intersection(VertexSet::full(v));
    let allowed = earlier
        .iter()
        .fold(h.vertices(), |acc, u| acc.intersection(h.neighbors(colors[u])));
    for c in allowed.iter() {
        colors[v] = c;
        brute(g, h, v + 1, colors, count);
    }
}

/// Vertex insertion order for the frontier program: repeatedly add the
/// vertex that leaves the smallest frontier, preferring vertices with more
/// already-placed neighbors, then the lowest index.
pub fn elimination_order(g: &Graph) -> Vec<usize> {
    let n = g.order();
    let mut placed = VertexSet::EMPTY;
    let mut frontier = VertexSet::EMPTY;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<((usize, std::cmp::Reverse<usize>, usize), usize)> = None;
        for v in g.vertices().difference(placed).iter() {
            let after = placed.union(VertexSet::singleton(v));
            let width = frontier
                .union(VertexSet::singleton(v))
                .iter()
                .filter(|&x| !g.neighbors(x).is_subset(after))
                .count();
            let key = (width, std::cmp::Reverse(g.neighbors(v).intersection(placed).len()), v);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, v));
            }
        }
        let (_, v) = best.expect("unplaced vertex exists");
        placed.insert(v);
        frontier = frontier
            .union(VertexSet::singleton(v))
            .iter()
            .filter(|&x| !g.neighbors(x).is_subset(placed))
            .collect();
        order.push(v);
    }
    order
}

/// Exact `hom(G, H)`; the accumulator is `u128` when `|V(H)|^|V(G)|`
/// provably fits and [`BigCount`] otherwise.
pub fn hom_dp(g: &Graph, h: &ConstraintGraph) -> Result<BigCount> {
    hom_dp_with(g, h, &Limits::default())
}

pub fn hom_dp_with(g: &Graph, h: &ConstraintGraph, limits: &Limits) -> Result<BigCount> {
    if fits_u128(h.order(), g.order()) {
        hom_dp_in::<u128>(g, h, limits).map(BigCount::from)
    } else {
        hom_dp_in::<BigCount>(g, h, limits)
    }
}

fn fits_u128(k: usize, n: usize) -> bool {
    (k as u128).checked_pow(n as u32).is_some_and(|s| s < 1 << 127)
}

/// The frontier program over any [`Count`] type.
///
/// Vertices are added in [`elimination_order`]. The table maps the colors
/// of frontier vertices (placed vertices with an unplaced neighbor) to the
/// number of partial homomorphisms inducing them.
pub fn hom_dp_in<C: Count>(g: &Graph, h: &ConstraintGraph, limits: &Limits) -> Result<C> {
    let mut frontier: Vec<usize> = Vec::new();
    let mut placed = VertexSet::EMPTY;
    let mut table: HashMap<u64, C> = HashMap::from([(0, C::one())]);
    for v in elimination_order(g) {
        placed.insert(v);
        let constrained: Vec<usize> = frontier
            .iter()
            .enumerate()
            .filter(|&(_, &u)| g.has_edge(u, v))
            .map(|(i, _)| i)
            .collect();
        let mut extended = frontier.clone();
        extended.push(v);
        let keep: Vec<usize> = (0..extended.len())
            .filter(|&i| !g.neighbors(extended[i]).is_subset(placed))
            .collect();
        if keep.len() > MAX_FRONTIER {
            return Err(Error::guard("dp-frontier", keep.len(), MAX_FRONTIER));
        }
        let slot = 4 * frontier.len();
        let mut next: HashMap<u64, C> = HashMap::with_capacity(table.len());
        for (key, count) in table {
            let allowed = constrained.iter().fold(h.vertices(), |acc, &i| {
                acc.intersection(h.neighbors((key >> (4 * i) & 0xf) as usize))
            });
            for c in allowed.iter() {
                let ext = key | (c as u64) << slot;
                let projected = keep
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &i)| acc | (ext >> (4 * i) & 0xf) << (4 * j));
                let entry = next.entry(projected).or_insert_with(C::zero);
                *entry = std::mem::replace(entry, C::zero()) + count.clone();
            }
            if next.len() as u64 > limits.dp_states {
                return Err(Error::guard("dp-states", next.len(), limits.dp_states));
            }
        }
        table = next;
        frontier = keep.into_iter().map(|i| extended[i]).collect();
    }
    Ok(table.into_values().fold(C::zero(), |acc, c| acc + c))
}

pub fn hom_inclusion_exclusion(g: &Graph, h: &ConstraintGraph) -> Result<BigCount> {
    hom_inclusion_exclusion_with(g, h, &Limits::default())
}

/// `hom(G, H) = sum over S of (-1)^|S| hom(G(S), H^c) |V(H)|^(n - v(S))`,
/// where `G(S)` is the subgraph spanned by the edge set `S` and `H^c` the
/// complement of `H` without isolated vertices. The empty `S` contributes
/// `|V(H)|^n`.
pub fn hom_inclusion_exclusion_with(g: &Graph, h: &ConstraintGraph, limits: &Limits) -> Result<BigCount> {
    let edges = g.edges();
    limits.check_subsets(edges.len())?;
    let n = g.order();
    let complement = h.complement();
    // by_span[v] = sum of (-1)^|S| hom(G(S), H^c) over S spanning v vertices
    let mut by_span: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    by_span[0] = BigInt::one();
    if let Some(hc) = &complement {
        for mask in 1u64..(1u64 << edges.len()) {
            let sub: Vec<(usize, usize)> = VertexSet(mask as u32)
                .iter()
                .map(|i| edges[i])
                .collect();
            let (span, spanned) = spanned_subgraph(&sub);
            let count = hom_dp_with(&spanned, hc, limits)?;
            let term = BigInt::from(count);
            if mask.count_ones() % 2 == 0 {
                by_span[span] += term;
            } else {
                by_span[span] -= term;
            }
        }
    }
    let k = BigInt::from(h.order());
    let mut total = BigInt::zero();
    for (span, coef) in by_span.into_iter().enumerate() {
        if !coef.is_zero() {
            total += coef * num_traits::pow(k.clone(), n - span);
        }
    }
    Ok(total
        .to_biguint()
        .expect("inclusion-exclusion total is a nonnegative count"))
}

/// The graph spanned by an edge list, relabeled densely. Returns the number
/// of spanned vertices alongside it.
pub(crate) fn spanned_subgraph(edges: &[(usize, usize)]) -> (usize, Graph) {
    let verts: VertexSet = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    let mut local = [0usize; 32];
    for (i, v) in verts.iter().enumerate() {
        local[v] = i;
    }
    let mut rows = vec![0u32; verts.len()];
    for &(u, v) in edges {
        rows[local[u]] |= 1 << local[v];
        rows[local[v]] |= 1 << local[u];
    }
    (verts.len(), Graph::from_rows_unchecked(rows))
}
