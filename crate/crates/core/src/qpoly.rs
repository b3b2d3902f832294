//! Homomorphism counts as polynomials in the number of colors `q`.
//!
//! Covers the deleted-loop family `H_q^l`, complete looped graphs minus a
//! disjoint union of complete bipartite graphs, chromatic polynomials, the
//! broken-circuit coefficients of Whitney's theorem, and exact thresholds
//! beyond which one polynomial dominates another.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::canon::canonical_labeling;
use crate::graph::{ConstraintGraph, Graph, VertexSet};
use crate::scalar::Ring;
use crate::{BigCount, Error, IntPoly, Limits, Result};

/// A polynomial with coefficients lowest power first and no trailing
/// zeros. The zero polynomial has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Ring> QPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn zero() -> Self {
        QPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: T) -> Self {
        QPoly::new(vec![c])
    }

    /// `c * q^deg`
    pub fn monomial(c: T, deg: usize) -> Self {
        let mut coeffs = vec![T::zero(); deg];
        coeffs.push(c);
        QPoly::new(coeffs)
    }

    /// `q - c`
    pub fn linear_root(c: T) -> Self
    where
        T: Neg<Output = T>,
    {
        QPoly::new(vec![-c, T::one()])
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// Coefficient of `q^i`.
    pub fn coeff(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    pub fn eval(&self, q: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * q.clone() + c.clone())
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(QPoly::constant(T::one()), |acc, _| &acc * self)
    }
}

impl<T: Ring> Add for &QPoly<T> {
    type Output = QPoly<T>;
    fn add(self, rhs: &QPoly<T>) -> QPoly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<T: Ring> Sub for &QPoly<T> {
    type Output = QPoly<T>;
    fn sub(self, rhs: &QPoly<T>) -> QPoly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<T: Ring> Mul for &QPoly<T> {
    type Output = QPoly<T>;
    fn mul(self, rhs: &QPoly<T>) -> QPoly<T> {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        QPoly::new(out)
    }
}

impl<T: Ring + Neg<Output = T>> Neg for &QPoly<T> {
    type Output = QPoly<T>;
    fn neg(self) -> QPoly<T> {
        QPoly::new(self.coeffs.iter().cloned().map(Neg::neg).collect())
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl<T: Ring> $tr for QPoly<T> {
            type Output = QPoly<T>;
            fn $m(self, rhs: QPoly<T>) -> QPoly<T> {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for QPoly<BigInt> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            match (first, c.is_negative()) {
                (true, true) => f.write_str("-")?,
                (true, false) => {}
                (false, true) => f.write_str(" - ")?,
                (false, false) => f.write_str(" + ")?,
            }
            first = false;
            let unit = mag.is_one() && i > 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => f.write_str("q")?,
                _ => write!(f, "q^{i}")?,
            }
        }
        Ok(())
    }
}

/// Serializes as `{"coeffs":[c0, c1, ...]}` with exact integer literals.
impl Serialize for QPoly<BigInt> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let raw: Vec<Box<serde_json::value::RawValue>> = self
            .coeffs
            .iter()
            .map(|c| serde_json::value::RawValue::from_string(c.to_string()).expect("integer literal"))
            .collect();
        let mut st = s.serialize_struct("QPoly", 1)?;
        st.serialize_field("coeffs", &raw)?;
        st.end()
    }
}

impl QPoly<BigInt> {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("polynomial serializes")
    }

    pub fn eval_u64(&self, q: u64) -> BigInt {
        self.eval(&BigInt::from(q))
    }
}

/// Union-find with parity and undo, used to walk every edge subset once.
struct Forest {
    parent: Vec<usize>,
    /// Parity of the path from a vertex to its parent.
    parity: Vec<u8>,
    size: Vec<usize>,
    /// Class sizes `[even, odd]` relative to the root, valid at roots.
    classes: Vec<[u32; 2]>,
    degree: Vec<u32>,
    spanned: usize,
    merges: usize,
    odd_cycles: usize,
    undo: Vec<Undo>,
}

enum Undo {
    Merge { child: usize, root: usize, flip: bool },
    Odd,
    Cycle,
}

impl Forest {
    fn new(n: usize) -> Self {
        Forest {
            parent: (0..n).collect(),
            parity: vec![0; n],
            size: vec![1; n],
            classes: vec![[1, 0]; n],
            degree: vec![0; n],
            spanned: 0,
            merges: 0,
            odd_cycles: 0,
            undo: Vec::new(),
        }
    }

    fn find(&self, mut v: usize) -> (usize, u8) {
        let mut p = 0;
        while self.parent[v] != v {
            p ^= self.parity[v];
            v = self.parent[v];
        }
        (v, p)
    }

    fn touch(&mut self, v: usize, delta: i32) {
        let before = self.degree[v];
        self.degree[v] = (before as i32 + delta) as u32;
        match (before, self.degree[v]) {
            (0, 1) => self.spanned += 1,
            (1, 0) => self.spanned -= 1,
            _ => {}
        }
    }

    fn push(&mut self, u: usize, v: usize) {
        self.touch(u, 1);
        self.touch(v, 1);
        let (ru, pu) = self.find(u);
        let (rv, pv) = self.find(v);
        if ru == rv {
            if pu == pv {
                self.odd_cycles += 1;
                self.undo.push(Undo::Odd);
            } else {
                self.undo.push(Undo::Cycle);
            }
            return;
        }
        let (root, child) = if self.size[ru] >= self.size[rv] { (ru, rv) } else { (rv, ru) };
        let flip = pu == pv;
        self.parent[child] = root;
        self.parity[child] = flip as u8;
        self.size[root] += self.size[child];
        let [c0, c1] = self.classes[child];
        let add = if flip { [c1, c0] } else { [c0, c1] };
        self.classes[root][0] += add[0];
        self.classes[root][1] += add[1];
        self.merges += 1;
        self.undo.push(Undo::Merge { child, root, flip });
    }

    fn pop(&mut self, u: usize, v: usize) {
        match self.undo.pop().expect("matching push") {
            Undo::Odd => self.odd_cycles -= 1,
            Undo::Cycle => {}
            Undo::Merge { child, root, flip } => {
                let [c0, c1] = self.classes[child];
                let add = if flip { [c1, c0] } else { [c0, c1] };
                self.classes[root][0] -= add[0];
                self.classes[root][1] -= add[1];
                self.size[root] -= self.size[child];
                self.parent[child] = child;
                self.parity[child] = 0;
                self.merges -= 1;
            }
        }
        self.touch(u, -1);
        self.touch(v, -1);
    }

    /// Class sizes of each component of the spanned subgraph.
    fn component_classes(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (0..self.parent.len())
            .filter(|&v| self.parent[v] == v && self.size[v] > 1)
            .map(|v| (self.classes[v][0], self.classes[v][1]))
    }
}

/// Visit every edge subset `S` with its sign, the forest state and `|S|`.
fn walk_subsets<F: FnMut(&Forest, usize)>(edges: &[(usize, usize)], forest: &mut Forest, i: usize, size: usize, f: &mut F) {
    if i == edges.len() {
        f(forest, size);
        return;
    }
    walk_subsets(edges, forest, i + 1, size, f);
    let (u, v) = edges[i];
    forest.push(u, v);
    walk_subsets(edges, forest, i + 1, size + 1, f);
    forest.pop(u, v);
}

pub fn qpoly_deleted_loops(g: &Graph, l: u64) -> Result<IntPoly> {
    qpoly_deleted_loops_with(g, l, &Limits::default())
}

/// `sum over S of (-1)^|S| l^{c(S)} q^{n - v(S)}`, with `c(S)` and `v(S)`
/// the component and vertex counts of the subgraph spanned by `S`.
pub fn qpoly_deleted_loops_with(g: &Graph, l: u64, limits: &Limits) -> Result<IntPoly> {
    let edges = g.edges();
    limits.check_subsets(edges.len())?;
    let n = g.order();
    // table[v][c] = signed number of subsets spanning v vertices in c components
    let mut table = vec![vec![0i64; n + 1]; n + 1];
    let mut forest = Forest::new(n);
    walk_subsets(&edges, &mut forest, 0, 0, &mut |f, size| {
        let c = f.spanned - f.merges;
        table[f.spanned][c] += if size % 2 == 0 { 1 } else { -1 };
    });
    let mut coeffs = vec![BigInt::zero(); n + 1];
    let l = BigInt::from(l);
    for (v, row) in table.iter().enumerate() {
        for (c, &count) in row.iter().enumerate() {
            if count != 0 {
                coeffs[n - v] += BigInt::from(count) * num_traits::pow(l.clone(), c);
            }
        }
    }
    Ok(IntPoly::new(coeffs))
}

/// The complement `K_{r1,s1} u ... u K_{rm,sm}` of a constraint graph
/// inside the complete looped graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeletionSpec {
    pairs: Vec<(u64, u64)>,
}

impl DeletionSpec {
    pub fn new(pairs: Vec<(u64, u64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::Invalid("deletion spec needs at least one pair".into()));
        }
        if pairs.iter().any(|&(r, s)| r == 0 || s == 0) {
            return Err(Error::Invalid("deletion spec sides must be positive".into()));
        }
        Ok(DeletionSpec { pairs })
    }

    pub fn pairs(&self) -> &[(u64, u64)] {
        &self.pairs
    }

    /// Number of deleted edges, `sum r_i s_i`.
    pub fn deleted_edges(&self) -> u64 {
        self.pairs.iter().map(|&(r, s)| r * s).sum()
    }

    /// Vertices covered by the deleted bipartite graphs.
    pub fn vertices_consumed(&self) -> u64 {
        self.pairs.iter().map(|&(r, s)| r + s).sum()
    }

    /// The constraint graph on `q` vertices: complete looped, minus each
    /// `K_{r,s}` placed on consecutive fresh vertices.
    pub fn constraint_graph(&self, q: usize) -> Result<ConstraintGraph> {
        if (q as u64) < self.vertices_consumed() {
            return Err(Error::Invalid(format!(
                "q = {q} is below the {} vertices the spec consumes",
                self.vertices_consumed()
            )));
        }
        let all = VertexSet::full(q).0;
        let mut rows = vec![all; q];
        let mut next = 0usize;
        for &(r, s) in &self.pairs {
            let left = next..next + r as usize;
            let right = next + r as usize..next + (r + s) as usize;
            for u in left.clone() {
                for v in right.clone() {
                    rows[u] &= !(1 << v);
                    rows[v] &= !(1 << u);
                }
            }
            next = right.end;
        }
        ConstraintGraph::from_rows(rows)
    }
}

impl fmt::Display for DeletionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.pairs.iter().map(|(r, s)| format!("{r}x{s}")).collect();
        f.write_str(&parts.join(","))
    }
}

pub fn qpoly_bipartite_deletion(g: &Graph, spec: &DeletionSpec) -> Result<IntPoly> {
    qpoly_bipartite_deletion_with(g, spec, &Limits::default())
}

/// `sum over S of (-1)^|S| hom(G(S), H^c) q^{n - v(S)}` with `H^c` the
/// union of complete bipartite graphs. A connected bipartite component with
/// classes of sizes `a` and `b` maps to `K_{r,s}` in `r^a s^b + r^b s^a`
/// ways; a component with an odd cycle does not map at all.
pub fn qpoly_bipartite_deletion_with(g: &Graph, spec: &DeletionSpec, limits: &Limits) -> Result<IntPoly> {
    let edges = g.edges();
    limits.check_subsets(edges.len())?;
    let n = g.order();
    let pow_table = |x: u64| -> Vec<BigInt> { (0..=n).map(|e| num_traits::pow(BigInt::from(x), e)).collect() };
    let powers: Vec<(Vec<BigInt>, Vec<BigInt>)> = spec.pairs.iter().map(|&(r, s)| (pow_table(r), pow_table(s))).collect();
    let mut component_homs = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for (a, row) in component_homs.iter_mut().enumerate() {
        for (b, slot) in row.iter_mut().enumerate().take(n + 1 - a) {
            *slot = powers
                .iter()
                .map(|(r, s)| &r[a] * &s[b] + &r[b] * &s[a])
                .sum();
        }
    }
    let mut by_span = vec![BigInt::zero(); n + 1];
    let mut forest = Forest::new(n);
    walk_subsets(&edges, &mut forest, 0, 0, &mut |f, size| {
        if f.odd_cycles > 0 {
            return;
        }
        let term = f
            .component_classes()
            .fold(BigInt::one(), |acc, (a, b)| acc * &component_homs[a as usize][b as usize]);
        if size % 2 == 0 {
            by_span[f.spanned] += term;
        } else {
            by_span[f.spanned] -= term;
        }
    });
    let mut coeffs = vec![BigInt::zero(); n + 1];
    for (v, c) in by_span.into_iter().enumerate() {
        coeffs[n - v] += c;
    }
    Ok(IntPoly::new(coeffs))
}

pub fn chromatic_polynomial(g: &Graph) -> Result<IntPoly> {
    chromatic_polynomial_with(g, &Limits::default())
}

/// Deletion-contraction, memoized on canonical forms.
pub fn chromatic_polynomial_with(g: &Graph, limits: &Limits) -> Result<IntPoly> {
    let mut memo = HashMap::new();
    chromatic_rows(g.rows().to_vec(), &mut memo, limits)
}

fn drop_vertex(rows: &[u32], v: usize) -> Vec<u32> {
    let low = (1u32 << v) - 1;
    rows.iter()
        .enumerate()
        .filter(|&(i, _)| i != v)
        .map(|(_, &r)| (r & low) | ((r >> 1) & !low))
        .collect()
}

fn falling_poly(n: usize) -> IntPoly {
    (0..n).fold(IntPoly::constant(BigInt::one()), |acc, i| {
        &acc * &IntPoly::linear_root(BigInt::from(i))
    })
}

fn chromatic_rows(rows: Vec<u32>, memo: &mut HashMap<Vec<u32>, IntPoly>, limits: &Limits) -> Result<IntPoly> {
    let n = rows.len();
    let degrees: Vec<u32> = rows.iter().map(|r| r.count_ones()).collect();
    let twice_edges: u32 = degrees.iter().sum();
    if twice_edges == 0 {
        return Ok(IntPoly::monomial(BigInt::one(), n));
    }
    if let Some(v) = degrees.iter().position(|&d| d == 0) {
        let rest = chromatic_rows(drop_vertex(&rows, v), memo, limits)?;
        return Ok(&rest * &IntPoly::monomial(BigInt::one(), 1));
    }
    if let Some(v) = degrees.iter().position(|&d| d == 1) {
        let rest = chromatic_rows(drop_vertex(&rows, v), memo, limits)?;
        return Ok(&rest * &IntPoly::linear_root(BigInt::one()));
    }
    if degrees.iter().all(|&d| d as usize == n - 1) {
        return Ok(falling_poly(n));
    }
    let graph = Graph::from_rows_unchecked(rows);
    let comps = graph.components();
    if comps.len() > 1 {
        let mut acc = IntPoly::constant(BigInt::one());
        for c in comps {
            let sub = graph.induced(c)?;
            acc = &acc * &chromatic_rows(sub.rows().to_vec(), memo, limits)?;
        }
        return Ok(acc);
    }
    let canon = graph.relabel(&canonical_labeling(graph.rows(), &vec![0; n]));
    if let Some(hit) = memo.get(canon.rows()) {
        return Ok(hit.clone());
    }
    let rows = canon.rows().to_vec();
    let u = (0..n).max_by_key(|&v| (rows[v].count_ones(), std::cmp::Reverse(v))).expect("n > 0");
    let v = VertexSet(rows[u])
        .iter()
        .max_by_key(|&w| ((rows[w] & rows[u]).count_ones(), std::cmp::Reverse(w)))
        .expect("u has a neighbor");
    let mut deleted = rows.clone();
    deleted[u] &= !(1 << v);
    deleted[v] &= !(1 << u);
    let mut merged = rows.clone();
    merged[u] = (merged[u] | merged[v]) & !(1 << u) & !(1 << v);
    for w in VertexSet(merged[u]).iter() {
        merged[w] |= 1 << u;
    }
    let contracted = drop_vertex(&merged, v);
    let p = &chromatic_rows(deleted, memo, limits)? - &chromatic_rows(contracted, memo, limits)?;
    if memo.len() as u64 >= limits.dp_states {
        return Err(Error::guard("chromatic-memo", memo.len() + 1, limits.dp_states));
    }
    memo.insert(rows, p.clone());
    Ok(p)
}

/// Whitney's `a_i`: the number of `i`-edge subsets containing no broken
/// circuit, where `edge_order` lists the edges from smallest to largest.
/// Index `i` runs from 0 to `n - 1`.
pub fn broken_circuit_coefficients(g: &Graph, edge_order: &[(usize, usize)]) -> Result<Vec<BigCount>> {
    broken_circuit_coefficients_with(g, edge_order, &Limits::default())
}

pub fn broken_circuit_coefficients_with(
    g: &Graph,
    edge_order: &[(usize, usize)],
    limits: &Limits,
) -> Result<Vec<BigCount>> {
    let m = g.edge_count();
    limits.check_subsets(m)?;
    let mut rank = HashMap::new();
    for (i, &(u, v)) in edge_order.iter().enumerate() {
        let key = (u.min(v), u.max(v));
        if !g.has_edge(u, v) || rank.insert(key, i).is_some() {
            return Err(Error::Invalid(format!("edge order entry ({u}, {v}) is not a fresh edge")));
        }
    }
    if rank.len() != m {
        return Err(Error::Invalid(format!("edge order lists {} of {m} edges", rank.len())));
    }
    let bit = |u: usize, v: usize| 1u64 << rank[&(u.min(v), u.max(v))];
    let mut broken: Vec<u64> = cycles(g, bit)
        .into_iter()
        .map(|c| c & !(1u64 << (63 - c.leading_zeros())))
        .collect();
    broken.sort_unstable_by_key(|b| b.count_ones());
    let mut minimal: Vec<u64> = Vec::new();
    for b in broken {
        if !minimal.iter().any(|&x| x & b == x) {
            minimal.push(b);
        }
    }
    let n = g.order();
    let mut counts = vec![0u64; n.max(1)];
    for s in 0u64..(1u64 << m) {
        let size = s.count_ones() as usize;
        if size < n && !minimal.iter().any(|&b| s & b == b) {
            counts[size] += 1;
        }
    }
    Ok(counts.into_iter().map(BigCount::from).collect())
}

/// Edge sets of all cycles, as masks under `bit`.
fn cycles(g: &Graph, bit: impl Fn(usize, usize) -> u64) -> HashSet<u64> {
    fn extend(
        g: &Graph,
        start: usize,
        at: usize,
        visited: VertexSet,
        mask: u64,
        len: usize,
        bit: &dyn Fn(usize, usize) -> u64,
        out: &mut HashSet<u64>,
    ) {
        for w in g.neighbors(at).iter() {
            if w == start && len >= 3 {
                out.insert(mask | bit(at, w));
            } else if w > start && !visited.contains(w) {
                extend(g, start, w, visited.union(VertexSet::singleton(w)), mask | bit(at, w), len + 1, bit, out);
            }
        }
    }
    let mut out = HashSet::new();
    for s in 0..g.order() {
        extend(g, s, s, VertexSet::singleton(s), 0, 1, &bit, &mut out);
    }
    out
}

/// The polynomial family used by [`threshold_q`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// `hom(G, K_q)`.
    Chromatic,
    /// `hom(G, H_q^l)`.
    DeletedLoops(u64),
    /// `hom(G, H)` with `H^c` given by the spec.
    BipartiteDeletion(DeletionSpec),
}

impl Family {
    pub fn polynomial(&self, g: &Graph, limits: &Limits) -> Result<IntPoly> {
        match self {
            Family::Chromatic => chromatic_polynomial_with(g, limits),
            Family::DeletedLoops(l) => qpoly_deleted_loops_with(g, *l, limits),
            Family::BipartiteDeletion(spec) => qpoly_bipartite_deletion_with(g, spec, limits),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Chromatic => f.write_str("chromatic"),
            Family::DeletedLoops(l) => write!(f, "deleted-loops:{l}"),
            Family::BipartiteDeletion(spec) => write!(f, "bipartite:{spec}"),
        }
    }
}

impl std::str::FromStr for Family {
    type Err = Error;

    /// Parses `chromatic`, `deleted-loops:L` or `bipartite:RxS,RxS,...`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("unknown polynomial family `{s}`"));
        let s = s.trim();
        if s == "chromatic" {
            return Ok(Family::Chromatic);
        }
        let (name, arg) = s.split_once(':').ok_or_else(bad)?;
        match name {
            "deleted-loops" => arg.trim().parse().map(Family::DeletedLoops).map_err(|_| bad()),
            "bipartite" => {
                let pairs = arg
                    .split(',')
                    .map(|p| {
                        let (r, t) = p.trim().split_once('x').ok_or_else(bad)?;
                        Ok((r.parse().map_err(|_| bad())?, t.parse().map_err(|_| bad())?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                DeletionSpec::new(pairs).map(Family::BipartiteDeletion)
            }
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThresholdOutcome {
    /// `D(q) > 0` for every integer `q >= q0`, and `q0 - 1` fails (or
    /// `q0 = 1`).
    Threshold(u64),
    /// The leading coefficient of `D` is negative.
    Never,
    /// `D` is identically zero.
    Tie,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdReport {
    pub reference: IntPoly,
    pub candidate: IntPoly,
    /// `reference - candidate`.
    pub difference: IntPoly,
    pub outcome: ThresholdOutcome,
}

pub fn threshold_q(g_ref: &Graph, g: &Graph, family: &Family) -> Result<ThresholdReport> {
    threshold_q_with(g_ref, g, family, &Limits::default())
}

pub fn threshold_q_with(g_ref: &Graph, g: &Graph, family: &Family, limits: &Limits) -> Result<ThresholdReport> {
    let reference = family.polynomial(g_ref, limits)?;
    let candidate = family.polynomial(g, limits)?;
    let difference = &reference - &candidate;
    let outcome = positivity_threshold(&difference, limits)?;
    Ok(ThresholdReport {
        reference,
        candidate,
        difference,
        outcome,
    })
}

/// Smallest `q0 >= 1` with `D(q) > 0` for all integers `q >= q0`.
///
/// Every real root lies below `1 + max|c_i| / |c_lead|`, so only the
/// integers under that bound are evaluated.
pub fn positivity_threshold(d: &IntPoly, limits: &Limits) -> Result<ThresholdOutcome> {
    let Some(lead) = d.leading() else {
        return Ok(ThresholdOutcome::Tie);
    };
    if lead.is_negative() {
        return Ok(ThresholdOutcome::Never);
    }
    let max_lower = d.coeffs()[..d.coeffs().len() - 1]
        .iter()
        .map(|c| c.abs())
        .max()
        .unwrap_or_else(BigInt::zero);
    let ratio = (&max_lower + lead - 1u32) / lead;
    let bound = BigInt::one() + ratio;
    let bound: u64 = u64::try_from(&bound)
        .ok()
        .filter(|&b| b <= limits.brute_force_states)
        .ok_or_else(|| Error::guard("threshold-scan", &bound, limits.brute_force_states))?;
    let mut q = bound;
    while q > 1 && d.eval_u64(q - 1).is_positive() {
        q -= 1;
    }
    Ok(ThresholdOutcome::Threshold(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog::*;
    use crate::graph::stats::{count_c3, count_c4};
    use crate::hom::hom_dp;

    fn poly(c: &[i64]) -> IntPoly {
        IntPoly::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn arithmetic_and_display() {
        let p = poly(&[0, -3, 6, -4, 1]);
        assert_eq!(p.to_string(), "q^4 - 4q^3 + 6q^2 - 3q");
        assert_eq!(p.to_json(), r#"{"coeffs":[0,-3,6,-4,1]}"#);
        assert_eq!(poly(&[-1, 1]).pow(2), poly(&[1, -2, 1]));
        assert_eq!(&poly(&[1, 1]) - &poly(&[1, 1]), IntPoly::zero());
        assert_eq!(IntPoly::zero().to_string(), "0");
        assert_eq!(poly(&[2, 0, -1]).to_string(), "-q^2 + 2");
    }

    #[test]
    fn deleted_loop_examples() {
        let k2 = complete_graph(2).unwrap();
        assert_eq!(qpoly_deleted_loops(&k2, 1).unwrap(), poly(&[-1, 0, 1]));
        assert_eq!(qpoly_deleted_loops(&k2, 2).unwrap(), poly(&[-2, 0, 1]));
        assert_eq!(qpoly_deleted_loops(&cycle(4).unwrap(), 0).unwrap(), poly(&[0, 0, 0, 0, 1]));
        assert_eq!(qpoly_deleted_loops(&k2, 1).unwrap().eval_u64(4), BigInt::from(15));
    }

    #[test]
    fn deleted_loops_match_dp() {
        for g in [cycle(5).unwrap(), complete_bipartite(2, 3).unwrap(), complete_graph(4).unwrap()] {
            for q in 1..=5usize {
                for l in 0..=q {
                    if q == 1 && l == 1 {
                        continue;
                    }
                    let h = deleted_loops(q, l).unwrap();
                    let p = qpoly_deleted_loops(&g, l as u64).unwrap();
                    assert_eq!(p.eval_u64(q as u64), BigInt::from(hom_dp(&g, &h).unwrap()), "{g} q={q} l={l}");
                }
            }
        }
    }

    #[test]
    fn family_round_trip() {
        for text in ["chromatic", "deleted-loops:2", "bipartite:1x1,2x3"] {
            let f: Family = text.parse().unwrap();
            assert_eq!(f.to_string(), text);
        }
        assert!("bipartite:0x1".parse::<Family>().is_err());
        assert!("spectral".parse::<Family>().is_err());
    }

    #[test]
    fn bipartite_deletion_examples() {
        let spec = DeletionSpec::new(vec![(1, 1)]).unwrap();
        assert_eq!(qpoly_bipartite_deletion(&complete_graph(2).unwrap(), &spec).unwrap(), poly(&[-2, 0, 1]));
        let k3 = qpoly_bipartite_deletion(&complete_graph(3).unwrap(), &spec).unwrap();
        for q in 3..=5usize {
            let h = spec.constraint_graph(q).unwrap();
            assert_eq!(k3.eval_u64(q as u64), BigInt::from(hom_dp(&complete_graph(3).unwrap(), &h).unwrap()));
        }
        assert_eq!(k3, poly(&[6, -6, 0, 1]));
        let c4 = qpoly_bipartite_deletion(&cycle(4).unwrap(), &spec).unwrap();
        assert_eq!(c4.eval_u64(3), BigInt::from(35));
        assert!(DeletionSpec::new(vec![]).is_err());
        assert!(DeletionSpec::new(vec![(0, 2)]).is_err());
    }

    #[test]
    fn bipartite_deletion_matches_dp() {
        let specs = [vec![(1, 2)], vec![(2, 2)], vec![(1, 1), (1, 2)]];
        for pairs in specs {
            let spec = DeletionSpec::new(pairs).unwrap();
            for g in [cycle(5).unwrap(), cycle(6).unwrap(), complete_graph(4).unwrap()] {
                let p = qpoly_bipartite_deletion(&g, &spec).unwrap();
                for q in spec.vertices_consumed() as usize..=6 {
                    let h = spec.constraint_graph(q).unwrap();
                    assert_eq!(p.eval_u64(q as u64), BigInt::from(hom_dp(&g, &h).unwrap()), "{g} {spec} q={q}");
                }
            }
        }
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_polynomial(&cycle(4).unwrap()).unwrap(), poly(&[0, -3, 6, -4, 1]));
        assert_eq!(chromatic_polynomial(&complete_graph(3).unwrap()).unwrap(), poly(&[0, 2, -3, 1]));
        assert_eq!(chromatic_polynomial(&cycle(5).unwrap()).unwrap().eval_u64(3), BigInt::from(30));
        let petersen = Graph::from_edges(
            10,
            [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (1, 6), (2, 7), (3, 8), (4, 9), (5, 7), (7, 9), (9, 6), (6, 8), (8, 5)],
        )
        .unwrap();
        assert_eq!(chromatic_polynomial(&petersen).unwrap().eval_u64(3), BigInt::from(120));
    }

    #[test]
    fn chromatic_matches_cycle_formula() {
        for n in 3..=9 {
            let p = chromatic_polynomial(&cycle(n).unwrap()).unwrap();
            let q1 = poly(&[-1, 1]);
            let sign = if n % 2 == 0 { 1 } else { -1 };
            let expected = &q1.pow(n) + &poly(&[-sign, sign]);
            assert_eq!(p, expected, "C{n}");
        }
    }

    #[test]
    fn broken_circuit_examples() {
        let c4 = cycle(4).unwrap();
        let a = broken_circuit_coefficients(&c4, &c4.edges()).unwrap();
        assert_eq!(a, [1u32, 4, 6, 3].map(BigCount::from).to_vec());
        let k3 = complete_graph(3).unwrap();
        let a = broken_circuit_coefficients(&k3, &k3.edges()).unwrap();
        assert_eq!(a, [1u32, 3, 2].map(BigCount::from).to_vec());
        let k4 = complete_graph(4).unwrap();
        let mut rev = k4.edges();
        rev.reverse();
        let a = broken_circuit_coefficients(&k4, &rev).unwrap();
        assert_eq!(a[1], BigCount::from(6u32));
        assert_eq!(a[2], BigCount::from(15u32) - count_c3(&k4));
        assert!(broken_circuit_coefficients(&k4, &rev[1..]).is_err());
    }

    #[test]
    fn a3_for_triangle_free() {
        let g = complete_bipartite(3, 3).unwrap();
        let a = broken_circuit_coefficients(&g, &g.edges()).unwrap();
        assert_eq!(a[3], BigCount::from(84u32) - count_c4(&g));
    }

    #[test]
    fn thresholds() {
        let ref_graph = cycle(4).unwrap().copies(2).unwrap();
        let c8 = cycle(8).unwrap();
        let r = threshold_q(&ref_graph, &c8, &Family::Chromatic).unwrap();
        let ThresholdOutcome::Threshold(q0) = r.outcome else {
            panic!("expected a finite threshold, got {:?}", r.outcome);
        };
        assert!(q0 <= 140);
        for q in q0..q0 + 50 {
            assert!(r.difference.eval_u64(q).is_positive());
        }
        assert!(q0 == 1 || !r.difference.eval_u64(q0 - 1).is_positive());
        assert_eq!(threshold_q(&c8, &c8, &Family::Chromatic).unwrap().outcome, ThresholdOutcome::Tie);
        let back = threshold_q(&c8, &ref_graph, &Family::Chromatic).unwrap();
        assert_eq!(back.outcome, ThresholdOutcome::Never);
    }

    #[test]
    fn bipartite_family_threshold() {
        let spec = DeletionSpec::new(vec![(1, 1)]).unwrap();
        let r = threshold_q(
            &cycle(3).unwrap().copies(2).unwrap(),
            &cycle(6).unwrap(),
            &Family::BipartiteDeletion(spec),
        )
        .unwrap();
        assert!(matches!(r.outcome, ThresholdOutcome::Threshold(_)), "{:?}", r.outcome);
    }

    #[test]
    fn positivity_threshold_by_hand() {
        let lim = Limits::default();
        // (q - 3)(q - 5) is positive from 6 on.
        assert_eq!(positivity_threshold(&poly(&[15, -8, 1]), &lim).unwrap(), ThresholdOutcome::Threshold(6));
        assert_eq!(positivity_threshold(&poly(&[1]), &lim).unwrap(), ThresholdOutcome::Threshold(1));
        assert_eq!(positivity_threshold(&poly(&[5, -1]), &lim).unwrap(), ThresholdOutcome::Never);
        // Double root at 4: zero there, positive elsewhere.
        assert_eq!(positivity_threshold(&poly(&[16, -8, 1]), &lim).unwrap(), ThresholdOutcome::Threshold(5));
    }
}
