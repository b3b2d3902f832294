//! Named constraint graphs and source graphs.
//!
//! Names are written `Family(params)`:
//!
//! | name          | graph |
//! |---------------|-------|
//! | `K(q)`        | loopless complete graph `K_q` (as a constraint graph) |
//! | `Kloop(k)`    | complete looped graph on `k` vertices |
//! | `Hql(q,l)`    | complete looped graph on `q` vertices with `l` loops deleted |
//! | `Hq(q)`       | complete looped graph on `q` vertices minus one non-loop edge |
//! | `H(k)`        | hard-core graph on `{0..k}`, `ij` an edge iff `i + j <= k` |
//! | `E(k)`        | `k` disjoint loops |
//! | `P(k)`        | fully looped path on `k` vertices |
//! | `Hind`, `HWR` | hard-core and Widom-Rowlinson graphs |
//! | `Kdd(d)`      | complete bipartite source graph `K_{d,d}` |
//! | `Kn(n)`       | complete source graph `K_n` |
//! | `C(n)`        | cycle `C_n` |
//! | `t*X`         | `t` disjoint copies of source graph `X` |

use super::constraint::MAX_CONSTRAINT_ORDER;
use super::{ConstraintGraph, Graph};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CatalogItem {
    Constraint(ConstraintGraph),
    Graph(Graph),
}

impl CatalogItem {
    pub fn into_constraint(self) -> Result<ConstraintGraph> {
        match self {
            CatalogItem::Constraint(h) => Ok(h),
            CatalogItem::Graph(_) => Err(Error::Catalog("name denotes a source graph".into())),
        }
    }

    pub fn into_graph(self) -> Result<Graph> {
        match self {
            CatalogItem::Graph(g) => Ok(g),
            CatalogItem::Constraint(_) => Err(Error::Catalog("name denotes a constraint graph".into())),
        }
    }
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Catalog(msg.into())
}

fn check_order(k: usize) -> Result<()> {
    if k == 0 || k > MAX_CONSTRAINT_ORDER {
        return Err(bad(format!("order {k} outside 1..={MAX_CONSTRAINT_ORDER}")));
    }
    Ok(())
}

/// Loopless complete graph `K_q`, `q >= 2`.
pub fn complete(q: usize) -> Result<ConstraintGraph> {
    if q < 2 {
        return Err(bad("K(q) needs q >= 2"));
    }
    deleted_loops(q, q)
}

/// Complete looped graph on `k` vertices.
pub fn complete_looped(k: usize) -> Result<ConstraintGraph> {
    deleted_loops(k, 0)
}

/// `H_q^l`: complete looped graph on `q` vertices with loops removed at
/// vertices `0..l`.
pub fn deleted_loops(q: usize, l: usize) -> Result<ConstraintGraph> {
    check_order(q)?;
    if l > q {
        return Err(bad(format!("Hql(q,l) needs l <= q, got l={l} > q={q}")));
    }
    if q == 1 && l == 1 {
        return Err(bad("Hql(1,1) is a single isolated vertex"));
    }
    let all = (1u32 << q) - 1;
    let rows = (0..q).map(|v| if v < l { all & !(1 << v) } else { all }).collect();
    ConstraintGraph::from_rows(rows)
}

/// `H_q`: complete looped graph on `q >= 2` vertices minus the edge `{0, 1}`.
pub fn deleted_edge(q: usize) -> Result<ConstraintGraph> {
    if q < 2 {
        return Err(bad("Hq(q) needs q >= 2"));
    }
    check_order(q)?;
    let all = (1u32 << q) - 1;
    let mut rows = vec![all; q];
    rows[0] &= !0b10;
    rows[1] &= !0b01;
    ConstraintGraph::from_rows(rows)
}

/// `H(k)`: vertices `0..=k`, `i ~ j` iff `i + j <= k`.
pub fn hard_core(k: usize) -> Result<ConstraintGraph> {
    check_order(k + 1)?;
    let edges = (0..=k).flat_map(|i| (i..=k).filter(move |j| i + j <= k).map(move |j| (i, j)));
    ConstraintGraph::from_edges(k + 1, edges)
}

/// `E_k^o`: `k` loops and no other edges.
pub fn loops(k: usize) -> Result<ConstraintGraph> {
    check_order(k)?;
    ConstraintGraph::from_edges(k, (0..k).map(|v| (v, v)))
}

/// `P_k^o`: path on `k` vertices, every vertex looped.
pub fn looped_path(k: usize) -> Result<ConstraintGraph> {
    check_order(k)?;
    ConstraintGraph::from_edges(k, (0..k).map(|v| (v, v)).chain((1..k).map(|v| (v - 1, v))))
}

/// `H_ind`: unlooped vertex 0 joined to looped vertex 1.
pub fn hard_core_ind() -> ConstraintGraph {
    ConstraintGraph::from_edges(2, [(0, 1), (1, 1)]).expect("fixed graph")
}

/// `H_WR`: the fully looped path on three vertices.
pub fn widom_rowlinson() -> ConstraintGraph {
    looped_path(3).expect("fixed graph")
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))))
}

pub fn complete_graph(n: usize) -> Result<Graph> {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(bad("C(n) needs n >= 3"));
    }
    Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// `t` disjoint copies of `K_{d,d}`.
pub fn kdd_union(d: usize, t: usize) -> Result<Graph> {
    complete_bipartite(d, d)?.copies(t)
}

/// `t` disjoint copies of `K_{d+1}`.
pub fn clique_union(d: usize, t: usize) -> Result<Graph> {
    complete_graph(d + 1)?.copies(t)
}

fn parse_params(name: &str, inner: &str) -> Result<Vec<usize>> {
    inner
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<usize>()
                .map_err(|_| bad(format!("bad parameter `{p}` in `{name}`")))
        })
        .collect()
}

fn arity(name: &str, params: &[usize], n: usize) -> Result<()> {
    if params.len() != n {
        return Err(bad(format!("`{name}` takes {n} parameter(s), got {}", params.len())));
    }
    Ok(())
}

/// Resolve a catalog name such as `Hql(4,1)`, `HWR` or `2*Kdd(3)`.
pub fn catalog(name: &str) -> Result<CatalogItem> {
    let name = name.trim();
    if let Some((count, rest)) = name.split_once('*') {
        let t: usize = count
            .trim()
            .parse()
            .map_err(|_| bad(format!("bad copy count in `{name}`")))?;
        let g = catalog(rest)?.into_graph()?;
        return g.copies(t).map(CatalogItem::Graph);
    }
    match name {
        "Hind" => return Ok(CatalogItem::Constraint(hard_core_ind())),
        "HWR" => return Ok(CatalogItem::Constraint(widom_rowlinson())),
        _ => {}
    }
    let (family, params) = match name.split_once('(') {
        Some((family, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| bad(format!("missing `)` in `{name}`")))?;
            (family, parse_params(name, inner)?)
        }
        None => return Err(bad(format!("unknown name `{name}`"))),
    };
    use CatalogItem::{Constraint as C, Graph as G};
    let one = |params: &[usize]| arity(name, params, 1).map(|_| params[0]);
    Ok(match family {
        "K" => C(complete(one(&params)?)?),
        "Kloop" => C(complete_looped(one(&params)?)?),
        "Hql" => {
            arity(name, &params, 2)?;
            C(deleted_loops(params[0], params[1])?)
        }
        "Hq" => C(deleted_edge(one(&params)?)?),
        "H" => C(hard_core(one(&params)?)?),
        "E" => C(loops(one(&params)?)?),
        "P" => C(looped_path(one(&params)?)?),
        "Kdd" => G(complete_bipartite(one(&params)?, params[0])?),
        "Kab" => {
            arity(name, &params, 2)?;
            G(complete_bipartite(params[0], params[1])?)
        }
        "Kn" => G(complete_graph(one(&params)?)?),
        "C" => G(cycle(one(&params)?)?),
        other => return Err(bad(format!("unknown family `{other}`"))),
    })
}

/// Every named constraint-graph instance on at most `max_order` vertices,
/// keyed by catalog name. Isomorphic duplicates (e.g. `H(1)` and `Hind`)
/// are kept; use [`crate::canon`] to deduplicate.
pub fn constraint_catalog(max_order: usize) -> Vec<(String, ConstraintGraph)> {
    let max_order = max_order.min(MAX_CONSTRAINT_ORDER);
    let mut out = Vec::new();
    let mut push = |name: String| {
        if let Ok(CatalogItem::Constraint(h)) = catalog(&name) {
            if h.order() <= max_order {
                out.push((name, h));
            }
        }
    };
    push("Hind".into());
    push("HWR".into());
    for q in 2..=max_order {
        push(format!("K({q})"));
    }
    for k in 1..=max_order {
        push(format!("Kloop({k})"));
    }
    for q in 1..=max_order {
        for l in 1..q {
            push(format!("Hql({q},{l})"));
        }
    }
    for q in 2..=max_order {
        push(format!("Hq({q})"));
    }
    for k in 1..max_order {
        push(format!("H({k})"));
    }
    for k in 1..=max_order {
        push(format!("E({k})"));
        push(format!("P({k})"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::constraint_canonical_form as canon;

    fn h(name: &str) -> ConstraintGraph {
        catalog(name).unwrap().into_constraint().unwrap()
    }

    #[test]
    fn named_aliases_are_isomorphic() {
        assert_eq!(canon(&h("H(1)")), canon(&h("Hind")));
        assert_eq!(canon(&h("P(3)")), canon(&h("HWR")));
        assert_eq!(canon(&h("Hq(3)")), canon(&h("HWR")));
        assert_eq!(canon(&h("Hq(2)")), canon(&h("E(2)")));
        assert_eq!(canon(&h("Hql(3,3)")), canon(&h("K(3)")));
    }

    #[test]
    fn k22_is_the_four_cycle() {
        let k22 = catalog("Kdd(2)").unwrap().into_graph().unwrap();
        let c4 = catalog("C(4)").unwrap().into_graph().unwrap();
        assert_eq!(crate::canon::canonical_form(&k22), crate::canon::canonical_form(&c4));
    }

    #[test]
    fn family_shapes() {
        let h4 = h("H(4)");
        assert_eq!(h4.order(), 5);
        assert_eq!(h4.looped().len(), 3);
        let hq = h("Hq(4)");
        assert!(hq.looped().len() == 4 && !hq.adjacent(0, 1));
        let hql = h("Hql(4,1)");
        assert_eq!(hql.looped().len(), 3);
        assert_eq!(h("E(3)").edge_count(), 3);
        assert_eq!(h("P(4)").edge_count(), 7);
        assert!(h("Kloop(3)").is_complete_looped());
        let two = catalog("2*Kdd(3)").unwrap().into_graph().unwrap();
        assert_eq!((two.order(), two.edge_count()), (12, 18));
    }

    #[test]
    fn rejects_invalid_parameters() {
        assert!(catalog("Hql(2,3)").is_err());
        assert!(catalog("K(1)").is_err());
        assert!(catalog("Zork(2)").is_err());
        assert!(catalog("Hql(3)").is_err());
        assert!(catalog("E(17)").is_err());
        assert!(catalog("C(2)").is_err());
        assert!(catalog("Kdd(2").is_err());
        assert!(catalog("2*HWR").is_err());
    }

    #[test]
    fn catalog_listing_respects_order_bound() {
        let cat = constraint_catalog(4);
        assert!(cat.iter().all(|(_, h)| h.order() <= 4 && h.is_normalized()));
        assert!(cat.iter().any(|(n, _)| n == "Hql(4,2)"));
        assert!(!cat.iter().any(|(n, _)| n == "E(5)"));
    }
}
