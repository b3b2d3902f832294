//! Complete bipartite images, complete images, the structural parameters
//! built from them, and the type classifier.

use std::fmt;

use serde::Serialize;

use crate::closed::{compare_cross_powers_with, CrossPowerVerdict, Dominance};
use crate::graph::{ConstraintGraph, VertexSet};
use crate::Result;

/// Largest degree examined by [`classify`] when locating the crossover.
pub const DEFAULT_D_MAX: usize = 12;

/// An ordered pair of vertex sets.
pub type Pair = (VertexSet, VertexSet);

/// All images of a constraint graph.
///
/// Complete bipartite images are stored as frames `(A, N(A))`, where `N(A)`
/// is the common neighborhood of `A`; the images with first side `A` are
/// exactly the pairs `(A, B)` with `B` a nonempty subset of `N(A)`.
#[derive(Clone, Debug)]
pub struct ImageSet {
    frames: Vec<Pair>,
    complete: Vec<Pair>,
    unlooped_cliques: Vec<VertexSet>,
}

impl ImageSet {
    /// Frames `(A, N(A))` over every nonempty `A` with nonempty `N(A)`.
    pub fn frames(&self) -> &[Pair] {
        &self.frames
    }

    /// Every complete bipartite image, once each.
    pub fn bipartite_images(&self) -> impl Iterator<Item = Pair> + '_ {
        self.frames.iter().flat_map(|&(a, common)| {
            common
                .subsets()
                .filter(|b| !b.is_empty())
                .map(move |b| (a, b))
        })
    }

    pub fn bipartite_count(&self) -> u64 {
        self.frames.iter().map(|&(_, c)| (1u64 << c.len()) - 1).sum()
    }

    /// Complete images `(A, B)`, `A` nonempty.
    pub fn complete_images(&self) -> &[Pair] {
        &self.complete
    }

    /// Nonempty cliques of unlooped vertices.
    pub fn unlooped_cliques(&self) -> &[VertexSet] {
        &self.unlooped_cliques
    }

    pub fn largest_unlooped_clique(&self) -> usize {
        self.unlooped_cliques.iter().map(|c| c.len()).max().unwrap_or(0)
    }
}

/// Nonempty cliques inside `pool`, where `pool` holds only looped or only
/// unlooped vertices.
fn cliques_within(h: &ConstraintGraph, pool: VertexSet) -> Vec<VertexSet> {
    fn extend(h: &ConstraintGraph, current: VertexSet, candidates: VertexSet, out: &mut Vec<VertexSet>) {
        for v in candidates.iter() {
            let grown = current.union(VertexSet::singleton(v));
            out.push(grown);
            let above = VertexSet(!((2u64 << v) - 1) as u32);
            extend(h, grown, candidates.intersection(h.neighbors(v)).intersection(above), out);
        }
    }
    let mut out = Vec::new();
    extend(h, VertexSet::EMPTY, pool, &mut out);
    out
}

pub fn enumerate_images(h: &ConstraintGraph) -> ImageSet {
    let k = h.order();
    let mut common = vec![0u32; 1 << k];
    common[0] = h.vertices().0;
    let mut frames = Vec::new();
    for mask in 1usize..1 << k {
        let low = mask.trailing_zeros() as usize;
        common[mask] = common[mask & (mask - 1)] & h.rows()[low];
        if common[mask] != 0 {
            frames.push((VertexSet(mask as u32), VertexSet(common[mask])));
        }
    }
    let unlooped_cliques = cliques_within(h, h.unlooped());
    let mut complete = Vec::new();
    for a in cliques_within(h, h.looped()) {
        let pool = h.common_neighbors(a).intersection(h.unlooped());
        complete.push((a, VertexSet::EMPTY));
        complete.extend(cliques_within(h, pool).into_iter().map(|b| (a, b)));
    }
    ImageSet {
        frames,
        complete,
        unlooped_cliques,
    }
}

/// The primed parameters, present when `a^2 = eta` and `m = n = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Primed {
    pub eta: u64,
    pub m: u64,
    pub a: u64,
    pub b: u64,
    pub n: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructuralProfile {
    pub eta: u64,
    pub m: u64,
    pub a: u64,
    pub b: u64,
    pub n: u64,
    #[serde(serialize_with = "serialize_set")]
    pub a0: Option<VertexSet>,
    pub primed: Option<Primed>,
    pub has_loop: bool,
    pub complete_looped: bool,
}

fn serialize_set<S: serde::Serializer>(set: &Option<VertexSet>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match set {
        Some(v) => s.collect_seq(v.iter()),
        None => s.serialize_none(),
    }
}

/// `(best size, count)` over the sizes produced by `sizes`.
fn max_count(sizes: impl Iterator<Item = u64>) -> (u64, u64) {
    sizes.fold((0, 0), |(best, count), s| match s.cmp(&best) {
        std::cmp::Ordering::Greater => (s, 1),
        std::cmp::Ordering::Equal => (best, count + 1),
        std::cmp::Ordering::Less => (best, count),
    })
}

/// `(a, b, n)` over complete images: the largest primary size, the largest
/// secondary size at that primary size, and how many images attain both.
fn complete_maxima<'a>(images: impl Iterator<Item = &'a Pair> + Clone) -> (u64, u64, u64) {
    let a = images.clone().map(|(x, _)| x.len() as u64).max().unwrap_or(0);
    let (b, n) = max_count(
        images
            .filter(|(x, _)| x.len() as u64 == a)
            .map(|(_, y)| y.len() as u64),
    );
    if a == 0 {
        (0, 0, 0)
    } else {
        (a, b, n)
    }
}

pub fn structural_profile(h: &ConstraintGraph) -> StructuralProfile {
    profile_from_images(h, &enumerate_images(h))
}

pub fn profile_from_images(h: &ConstraintGraph, images: &ImageSet) -> StructuralProfile {
    let (eta, m) = max_count(images.frames().iter().map(|&(x, c)| (x.len() * c.len()) as u64));
    let (a, b, n) = complete_maxima(images.complete_images().iter());
    let mut a0 = None;
    let mut primed = None;
    if a > 0 && a * a == eta && m == 1 && n == 1 {
        let base = images
            .complete_images()
            .iter()
            .find(|(x, _)| x.len() as u64 == a)
            .map(|&(x, _)| x)
            .expect("an image of primary size a exists");
        a0 = Some(base);
        let escaping = images
            .complete_images()
            .iter()
            .filter(|(x, y)| !x.union(*y).is_subset(base));
        let (pa, pb, pn) = complete_maxima(escaping);
        // For a fixed first side the largest escaping partner is N(A) itself.
        let (peta, pm) = max_count(
            images
                .frames()
                .iter()
                .filter(|(x, c)| !x.is_subset(base) || !c.is_subset(base))
                .map(|&(x, c)| (x.len() * c.len()) as u64),
        );
        primed = Some(Primed {
            eta: peta,
            m: pm,
            a: pa,
            b: pb,
            n: pn,
        });
    }
    StructuralProfile {
        eta,
        m,
        a,
        b,
        n,
        a0,
        primed,
        has_loop: !h.is_loopless(),
        complete_looped: h.is_complete_looped(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    Neutral,
    CompleteBipartiteType,
    CompleteType,
}

impl Kind {
    /// The comparison outcome this type predicts for large `d`.
    pub fn expected_dominance(self) -> Dominance {
        match self {
            Kind::Neutral => Dominance::Equal,
            Kind::CompleteBipartiteType => Dominance::Left,
            Kind::CompleteType => Dominance::Right,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Neutral => "Neutral",
            Kind::CompleteBipartiteType => "CompleteBipartiteType",
            Kind::CompleteType => "CompleteType",
        })
    }
}

/// Which rule decided the type. Complete-bipartite conditions are numbered
/// 1 to 5 (1 being "loopless"), complete conditions 1 to 4.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FiredCondition {
    CompleteLooped,
    Bipartite(u8),
    Complete(u8),
}

impl FiredCondition {
    pub fn kind(self) -> Kind {
        match self {
            FiredCondition::CompleteLooped => Kind::Neutral,
            FiredCondition::Bipartite(_) => Kind::CompleteBipartiteType,
            FiredCondition::Complete(_) => Kind::CompleteType,
        }
    }
}

impl fmt::Display for FiredCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiredCondition::CompleteLooped => f.write_str("complete looped"),
            FiredCondition::Bipartite(1) => f.write_str("complete bipartite condition 1 (loopless)"),
            FiredCondition::Bipartite(i) => write!(f, "complete bipartite condition {i}"),
            FiredCondition::Complete(i) => write!(f, "complete condition {i}"),
        }
    }
}

/// Every classifier condition that holds for `p`, evaluated literally.
/// Exactly one should hold for any constraint graph.
pub fn conditions_fired(p: &StructuralProfile) -> Vec<FiredCondition> {
    use FiredCondition::*;
    let mut fired = Vec::new();
    if p.complete_looped {
        fired.push(CompleteLooped);
    }
    if !p.has_loop {
        fired.push(Bipartite(1));
        return fired;
    }
    let square = p.a * p.a;
    let unique = p.m == 1 && p.n == 1;
    if square < p.eta {
        fired.push(Bipartite(2));
    }
    if square == p.eta && p.m > 1 && p.m >= p.n * p.n {
        fired.push(Bipartite(3));
    }
    if square == p.eta && p.m < p.n * p.n {
        fired.push(Complete(1));
    }
    if let (true, true, Some(q)) = (square == p.eta, unique, p.primed) {
        let lhs = p.a * q.a;
        if lhs < q.eta {
            fired.push(Bipartite(4));
        }
        if lhs > q.eta {
            fired.push(Complete(2));
        }
        if lhs == q.eta && q.b > 0 {
            fired.push(Complete(3));
        }
        if lhs == q.eta && q.b == 0 && 2 * q.n * q.a <= p.a * q.m && q.m > 0 {
            fired.push(Bipartite(5));
        }
        if lhs == q.eta && q.b == 0 && 2 * q.n * q.a > p.a * q.m {
            fired.push(Complete(4));
        }
    }
    fired
}

/// The deciding condition, checked in the order complete looped,
/// loopless, then the remaining conditions.
pub fn classify_profile(p: &StructuralProfile) -> Option<FiredCondition> {
    conditions_fired(p).first().copied()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeVerdict {
    pub kind: Kind,
    pub condition: FiredCondition,
    /// Smallest `d` from which the exact comparison agrees with `kind` up
    /// to the examined maximum; absent for neutral graphs or when the
    /// comparison does not agree at the maximum.
    pub crossover_d: Option<usize>,
}

pub fn classify(h: &ConstraintGraph) -> Result<TypeVerdict> {
    classify_with(h, DEFAULT_D_MAX)
}

pub fn classify_with(h: &ConstraintGraph, d_max: usize) -> Result<TypeVerdict> {
    let images = enumerate_images(h);
    let profile = profile_from_images(h, &images);
    let condition = classify_profile(&profile).ok_or_else(|| {
        crate::Error::Invalid(format!("no classifier condition holds for {h:?}"))
    })?;
    let kind = condition.kind();
    let crossover_d = if kind == Kind::Neutral {
        None
    } else {
        let report = empirical_from_images(&images, d_max);
        (report.stable == Some(kind.expected_dominance()))
            .then_some(report.crossover_d)
            .flatten()
    };
    Ok(TypeVerdict {
        kind,
        condition,
        crossover_d,
    })
}

/// Exact comparisons for `d = 1..=d_max` and where their sign settles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalReport {
    pub table: Vec<CrossPowerVerdict>,
    /// Sign at `d_max`.
    pub stable: Option<Dominance>,
    /// Smallest `d0` with the sign constant on `[d0, d_max]`.
    pub crossover_d: Option<usize>,
}

impl EmpiricalReport {
    pub fn stable_kind(&self) -> Option<Kind> {
        self.stable.map(|s| match s {
            Dominance::Left => Kind::CompleteBipartiteType,
            Dominance::Right => Kind::CompleteType,
            Dominance::Equal => Kind::Neutral,
        })
    }
}

pub fn empirical_type(h: &ConstraintGraph, d_max: usize) -> EmpiricalReport {
    empirical_from_images(&enumerate_images(h), d_max)
}

fn empirical_from_images(images: &ImageSet, d_max: usize) -> EmpiricalReport {
    let table: Vec<CrossPowerVerdict> = (1..=d_max)
        .map(|d| compare_cross_powers_with(images, d))
        .collect();
    let stable = table.last().map(|v| v.sign);
    let crossover_d = stable.map(|s| {
        let unstable = table.iter().rposition(|v| v.sign != s);
        unstable.map_or(1, |i| i + 2)
    });
    EmpiricalReport {
        table,
        stable,
        crossover_d,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::all_constraint_graphs;
    use crate::graph::catalog::*;

    /// Brute-force parameters straight from the definitions.
    fn brute_profile(h: &ConstraintGraph) -> (u64, u64, u64, u64, u64) {
        let all = h.vertices();
        let mut bip = Vec::new();
        let mut comp = Vec::new();
        for x in all.subsets() {
            for y in all.subsets() {
                let joined = x.iter().all(|u| y.is_subset(h.neighbors(u)));
                if !x.is_empty() && !y.is_empty() && joined {
                    bip.push((x.len() * y.len()) as u64);
                }
                if !x.is_empty()
                    && joined
                    && x.intersection(y).is_empty()
                    && h.is_looped_clique(x)
                    && h.is_unlooped_clique(y)
                {
                    comp.push((x.len() as u64, y.len() as u64));
                }
            }
        }
        let eta = bip.iter().copied().max().unwrap_or(0);
        let m = bip.iter().filter(|&&s| s == eta).count() as u64;
        let a = comp.iter().map(|c| c.0).max().unwrap_or(0);
        let b = comp.iter().filter(|c| c.0 == a).map(|c| c.1).max().unwrap_or(0);
        let n = comp.iter().filter(|&&c| c == (a, b)).count() as u64;
        (eta, m, a, b, if a == 0 { 0 } else { n })
    }

    #[test]
    fn enumeration_matches_definitions() {
        for k in 1..=3 {
            for h in all_constraint_graphs(k) {
                let images = enumerate_images(&h);
                let p = profile_from_images(&h, &images);
                assert_eq!((p.eta, p.m, p.a, p.b, p.n), brute_profile(&h), "{h:?}");
                let mut seen: Vec<Pair> = images.bipartite_images().collect();
                let total = seen.len() as u64;
                seen.sort();
                seen.dedup();
                assert_eq!(seen.len() as u64, total);
                assert_eq!(total, images.bipartite_count());
            }
        }
    }

    #[test]
    fn published_parameters() {
        let wr = structural_profile(&widom_rowlinson());
        assert_eq!((wr.eta, wr.m, wr.a, wr.n), (4, 2, 2, 2));
        let ind = structural_profile(&hard_core_ind());
        assert_eq!((ind.eta, ind.m), (2, 2));
        let e1 = structural_profile(&loops(1).unwrap());
        assert_eq!((e1.eta, e1.m), (1, 1));
        let h4 = structural_profile(&hard_core(4).unwrap());
        assert_eq!((h4.eta, h4.m, h4.a, h4.n), (9, 1, 3, 1));
        let q = h4.primed.unwrap();
        assert_eq!((q.a, q.eta), (2, 8));
        let hq = structural_profile(&deleted_edge(4).unwrap());
        assert_eq!((hq.eta, hq.a, hq.m, hq.n), (9, 3, 2, 2));
        let e3 = structural_profile(&loops(3).unwrap());
        assert_eq!((e3.eta, e3.a, e3.m, e3.n), (1, 1, 3, 3));
        for k in 3..=6 {
            let p = structural_profile(&looped_path(k).unwrap());
            assert_eq!((p.eta, p.a, p.m, p.n), (4, 2, k as u64 - 1, k as u64 - 1));
        }
    }

    #[test]
    fn profile_invariants_hold_exhaustively() {
        for k in 1..=4 {
            for h in all_constraint_graphs(k) {
                let p = structural_profile(&h);
                assert!(p.a * p.a + p.a * p.b <= p.eta, "{h:?}");
                if p.a * p.a == p.eta && p.has_loop {
                    assert_eq!(p.b, 0);
                    assert!(p.m >= p.n);
                }
                if let Some(q) = p.primed {
                    assert_eq!(q.eta == 0, h.is_complete_looped(), "{h:?}");
                    let a0 = p.a0.unwrap();
                    let rest = h.vertices().difference(a0);
                    let split = rest.iter().all(|v| !h.has_loop(v) && h.neighbors(v).is_subset(rest));
                    assert_eq!(q.a == 0, split, "{h:?}");
                }
                assert_eq!(conditions_fired(&p).len(), 1, "{h:?} {p:?}");
            }
        }
    }

    #[test]
    fn classifier_examples() {
        assert_eq!(classify(&complete(3).unwrap()).unwrap().condition, FiredCondition::Bipartite(1));
        let wr = classify(&widom_rowlinson()).unwrap();
        assert_eq!((wr.kind, wr.condition), (Kind::CompleteType, FiredCondition::Complete(1)));
        assert_eq!(wr.crossover_d, Some(2));
        let h5 = classify(&hard_core(5).unwrap()).unwrap();
        assert_eq!((h5.kind, h5.condition), (Kind::CompleteBipartiteType, FiredCondition::Bipartite(2)));
        let h4 = classify(&hard_core(4).unwrap()).unwrap();
        assert_eq!(h4.condition, FiredCondition::Bipartite(4));
        let neutral = classify(&complete_looped(2).unwrap()).unwrap();
        assert_eq!((neutral.kind, neutral.crossover_d), (Kind::Neutral, None));
    }

    #[test]
    fn empirical_examples() {
        let wr = empirical_type(&widom_rowlinson(), 12);
        assert_eq!((wr.stable_kind(), wr.crossover_d), (Some(Kind::CompleteType), Some(2)));
        let ind = empirical_type(&hard_core_ind(), 12);
        assert_eq!((ind.stable_kind(), ind.crossover_d), (Some(Kind::CompleteBipartiteType), Some(2)));
        assert_eq!(ind.table[0].sign, Dominance::Equal);
        let k2 = empirical_type(&complete_looped(2).unwrap(), 12);
        assert!(k2.table.iter().all(|v| v.sign == Dominance::Equal));
    }
}
