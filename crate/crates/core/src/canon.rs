//! Canonical forms by exhaustive minimal-adjacency search.
//!
//! Each connected component is labeled separately: the vertex partition is
//! refined to an equitable one, then every vertex of the first non-singleton
//! cell is individualized in turn. Among all discrete leaves the labeling
//! with the lexicographically smallest relabeled adjacency rows wins. Twins
//! inside the target cell are interchangeable, so only one of each is
//! branched on. Components are finally ordered by (size, colors, code).

use crate::graph::{ConstraintGraph, Graph, VertexSet};

type Cells = Vec<Vec<usize>>;

struct Search<'a> {
    rows: &'a [u32],
    best: Option<(Vec<u32>, Vec<usize>)>,
}

impl Search<'_> {
    fn count_in(&self, v: usize, splitter: u32) -> u32 {
        (self.rows[v] & splitter).count_ones()
    }

    fn refine(&self, mut cells: Cells) -> Cells {
        'outer: loop {
            for s in 0..cells.len() {
                let splitter = cells[s].iter().fold(0u32, |m, &v| m | 1 << v);
                let mut out = Vec::with_capacity(cells.len() + 1);
                let mut split = false;
                for cell in &cells {
                    if cell.len() == 1 {
                        out.push(cell.clone());
                        continue;
                    }
                    let c0 = self.count_in(cell[0], splitter);
                    if cell.iter().all(|&v| self.count_in(v, splitter) == c0) {
                        out.push(cell.clone());
                        continue;
                    }
                    let mut keyed: Vec<(u32, usize)> =
                        cell.iter().map(|&v| (self.count_in(v, splitter), v)).collect();
                    keyed.sort_unstable();
                    let mut group = vec![keyed[0].1];
                    for w in keyed.windows(2) {
                        if w[1].0 != w[0].0 {
                            out.push(std::mem::take(&mut group));
                        }
                        group.push(w[1].1);
                    }
                    out.push(group);
                    split = true;
                }
                cells = out;
                if split {
                    continue 'outer;
                }
            }
            return cells;
        }
    }

    fn twins(&self, u: usize, w: usize) -> bool {
        self.rows[u] & !(1 << w) == self.rows[w] & !(1 << u)
    }

    fn leaf(&mut self, cells: &Cells) {
        let labeling: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let mut inv = [0usize; 32];
        for (i, &v) in labeling.iter().enumerate() {
            inv[v] = i;
        }
        let code: Vec<u32> = labeling
            .iter()
            .map(|&v| VertexSet(self.rows[v]).iter().fold(0u32, |acc, w| acc | 1 << inv[w]))
            .collect();
        if self.best.as_ref().is_none_or(|(b, _)| code < *b) {
            self.best = Some((code, labeling));
        }
    }

    fn run(&mut self, cells: Cells) {
        let cells = self.refine(cells);
        let Some(t) = cells.iter().position(|c| c.len() > 1) else {
            self.leaf(&cells);
            return;
        };
        let target = &cells[t];
        let mut tried: Vec<usize> = Vec::new();
        for &v in target {
            if tried.iter().any(|&u| self.twins(u, v)) {
                continue;
            }
            tried.push(v);
            let mut next = Vec::with_capacity(cells.len() + 1);
            next.extend_from_slice(&cells[..t]);
            next.push(vec![v]);
            next.push(target.iter().copied().filter(|&w| w != v).collect());
            next.extend_from_slice(&cells[t + 1..]);
            self.run(next);
        }
    }
}

/// Canonical labeling of a vertex-colored simple graph given by neighbor
/// rows (diagonal ignored). Returns `perm` with `perm[i]` the vertex placed
/// at position `i`.
pub fn canonical_labeling(rows: &[u32], colors: &[u32]) -> Vec<usize> {
    let n = rows.len();
    assert_eq!(colors.len(), n);
    assert!(n <= 32);
    let rows: Vec<u32> = rows.iter().enumerate().map(|(v, r)| r & !(1 << v)).collect();

    // Components.
    let mut seen = 0u32;
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if seen >> s & 1 == 1 {
            continue;
        }
        let mut comp = 1u32 << s;
        let mut frontier = comp;
        while frontier != 0 {
            let next = VertexSet(frontier).iter().fold(0u32, |m, v| m | rows[v]);
            frontier = next & !comp;
            comp |= frontier;
        }
        seen |= comp;
        comps.push(VertexSet(comp).iter().collect());
    }

    let mut labeled: Vec<(usize, Vec<u32>, Vec<u32>, Vec<usize>)> = comps
        .into_iter()
        .map(|verts| {
            let mut local_of = [0usize; 32];
            for (i, &v) in verts.iter().enumerate() {
                local_of[v] = i;
            }
            let local_rows: Vec<u32> = verts
                .iter()
                .map(|&v| VertexSet(rows[v]).iter().fold(0u32, |m, w| m | 1 << local_of[w]))
                .collect();
            let mut by_color: Vec<(u32, usize)> =
                verts.iter().enumerate().map(|(i, &v)| (colors[v], i)).collect();
            by_color.sort_unstable();
            let mut cells: Cells = Vec::new();
            for (i, &(c, v)) in by_color.iter().enumerate() {
                if i > 0 && by_color[i - 1].0 == c {
                    cells.last_mut().expect("nonempty").push(v);
                } else {
                    cells.push(vec![v]);
                }
            }
            let mut search = Search {
                rows: &local_rows,
                best: None,
            };
            search.run(cells);
            let (code, local_perm) = search.best.expect("search reaches a leaf");
            let perm: Vec<usize> = local_perm.iter().map(|&i| verts[i]).collect();
            let color_seq = perm.iter().map(|&v| colors[v]).collect();
            (perm.len(), color_seq, code, perm)
        })
        .collect();
    labeled.sort_by(|a, b| (a.0, &a.1, &a.2).cmp(&(b.0, &b.1, &b.2)));
    labeled.into_iter().flat_map(|(_, _, _, perm)| perm).collect()
}

/// Canonical relabeling of `g`: isomorphic graphs map to equal values.
pub fn canonical_form(g: &Graph) -> Graph {
    let perm = canonical_labeling(g.rows(), &vec![0; g.order()]);
    g.relabel(&perm)
}

/// Canonical relabeling of a constraint graph, loops treated as a vertex
/// color.
pub fn constraint_canonical_form(h: &ConstraintGraph) -> ConstraintGraph {
    let colors: Vec<u32> = (0..h.order()).map(|v| h.has_loop(v) as u32).collect();
    let perm = canonical_labeling(h.rows(), &colors);
    h.relabel(&perm)
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order() && a.edge_count() == b.edge_count() && canonical_form(a) == canonical_form(b)
}

/// Every constraint graph on exactly `k` vertices with no isolated vertex,
/// one per isomorphism class, in canonical-form order.
pub fn all_constraint_graphs(k: usize) -> Vec<ConstraintGraph> {
    assert!((1..=6).contains(&k), "exhaustive listing only for 1..=6 vertices");
    let slots: Vec<(usize, usize)> = (0..k).flat_map(|u| (u..k).map(move |v| (u, v))).collect();
    let mut seen = std::collections::BTreeMap::new();
    for mask in 0u32..(1 << slots.len()) {
        let mut rows = vec![0u32; k];
        for (i, &(u, v)) in slots.iter().enumerate() {
            if mask >> i & 1 == 1 {
                rows[u] |= 1 << v;
                rows[v] |= 1 << u;
            }
        }
        if rows.contains(&0) {
            continue;
        }
        let h = constraint_canonical_form(&ConstraintGraph::from_rows_unchecked(rows));
        seen.entry(h.rows().to_vec()).or_insert(h);
    }
    seen.into_values().collect()
}
