//! Closed forms for `hom(K_{d,d}, H)` and `hom(K_{d+1}, H)` from images,
//! and exact comparisons between the two conjectured bounds.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::graph::catalog::{complete_bipartite, complete_graph};
use crate::graph::{ConstraintGraph, Graph};
use crate::hom::hom_dp_with;
use crate::structure::{enumerate_images, ImageSet};
use crate::{BigCount, Error, Limits, Result};

/// Number of maps from a `d`-set onto an `r`-set.
pub fn surjections(d: u64, r: u64) -> BigCount {
    let mut total = BigInt::zero();
    for i in 0..=r {
        let term = BigInt::from(binomial(r, i)) * num_traits::pow(BigInt::from(r - i), d as usize);
        if i % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total.to_biguint().expect("surjection count is nonnegative")
}

/// `x (x - 1) ... (x - m + 1)`.
pub fn falling_factorial(x: u64, m: u64) -> BigCount {
    if m > x {
        return BigCount::zero();
    }
    (0..m).fold(BigCount::one(), |acc, i| acc * (x - i))
}

pub fn hom_kdd_closed(h: &ConstraintGraph, d: usize) -> BigCount {
    hom_kdd_from_images(&enumerate_images(h), d)
}

/// `sum over complete bipartite images (A, B) of S(d, |A|) S(d, |B|)`,
/// with the images sharing a first side grouped by `|B|`.
pub fn hom_kdd_from_images(images: &ImageSet, d: usize) -> BigCount {
    let d = d as u64;
    let surj: Vec<BigCount> = (0..=32).map(|r| surjections(d, r)).collect();
    // inner[t] = sum over nonempty B in a t-set of S(d, |B|)
    let inner: Vec<BigCount> = (0..=32u64)
        .map(|t| (1..=t).map(|j| BigCount::from(binomial(t, j)) * &surj[j as usize]).sum())
        .collect();
    images
        .frames()
        .iter()
        .map(|&(a, common)| &surj[a.len()] * &inner[common.len()])
        .sum()
}

/// The complete-image sum for `hom(K_{d+1}, H)` and whether it is exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueClosedForm {
    pub value: BigCount,
    /// `d + 1` exceeds the largest clique of unlooped vertices, so every
    /// homomorphic image of `K_{d+1}` uses a loop.
    pub valid: bool,
}

pub fn hom_kdp1_closed(h: &ConstraintGraph, d: usize) -> CliqueClosedForm {
    hom_kdp1_from_images(&enumerate_images(h), d)
}

pub fn hom_kdp1_from_images(images: &ImageSet, d: usize) -> CliqueClosedForm {
    let t = d as u64 + 1;
    let value = images
        .complete_images()
        .iter()
        .filter(|(_, b)| b.len() as u64 <= t)
        .map(|&(a, b)| {
            let fixed = b.len() as u64;
            falling_factorial(t, fixed) * surjections(t - fixed, a.len() as u64)
        })
        .sum();
    CliqueClosedForm {
        value,
        valid: d + 1 > images.largest_unlooped_clique(),
    }
}

/// `hom(K_{d+1}, H)` for every `d`: the complete-image sum plus `(d+1)!`
/// for each unlooped clique on exactly `d + 1` vertices.
pub fn hom_kdp1_exact(images: &ImageSet, d: usize) -> BigCount {
    let base = hom_kdp1_from_images(images, d).value;
    let bare = images
        .unlooped_cliques()
        .iter()
        .filter(|c| c.len() == d + 1)
        .count();
    base + falling_factorial(d as u64 + 1, d as u64 + 1) * bare
}

/// Which side of a comparison is larger.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Dominance {
    Left,
    Equal,
    Right,
}

impl From<Ordering> for Dominance {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Greater => Dominance::Left,
            Ordering::Equal => Dominance::Equal,
            Ordering::Less => Dominance::Right,
        }
    }
}

/// `hom(K_{d,d}, H)^{d+1}` against `hom(K_{d+1}, H)^{2d}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossPowerVerdict {
    pub d: usize,
    pub kdd: BigCount,
    pub kdp1: BigCount,
    pub left: BigCount,
    pub right: BigCount,
    pub sign: Dominance,
}

pub fn compare_cross_powers(h: &ConstraintGraph, d: usize) -> CrossPowerVerdict {
    compare_cross_powers_with(&enumerate_images(h), d)
}

pub fn compare_cross_powers_with(images: &ImageSet, d: usize) -> CrossPowerVerdict {
    let kdd = hom_kdd_from_images(images, d);
    let kdp1 = hom_kdp1_exact(images, d);
    let left = num_traits::pow(kdd.clone(), d + 1);
    let right = num_traits::pow(kdp1.clone(), 2 * d);
    let sign = left.cmp(&right).into();
    CrossPowerVerdict {
        d,
        kdd,
        kdp1,
        left,
        right,
        sign,
    }
}

/// `hom(G, H)` against both conjectured bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureVerdict {
    pub n: usize,
    pub d: usize,
    pub hom: BigCount,
    pub hom_kdd: BigCount,
    pub hom_kdp1: BigCount,
    /// `hom(G,H)^{2d(d+1)}` against `hom(K_{d,d},H)^{n(d+1)}`.
    pub vs_kdd: Ordering,
    /// `hom(G,H)^{2d(d+1)}` against `hom(K_{d+1},H)^{2dn}`.
    pub vs_kdp1: Ordering,
    /// Which bound is larger.
    pub dominant: Dominance,
    pub satisfied: bool,
    /// `hom(G,H)` equals the larger bound.
    pub equality: bool,
}

pub fn conjecture_rhs_compare(g: &Graph, h: &ConstraintGraph) -> Result<ConjectureVerdict> {
    conjecture_rhs_compare_with(g, h, &Limits::default())
}

pub fn conjecture_rhs_compare_with(g: &Graph, h: &ConstraintGraph, limits: &Limits) -> Result<ConjectureVerdict> {
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    if d == 0 {
        return Err(Error::ZeroDegree);
    }
    let n = g.order();
    let hom = hom_dp_with(g, h, limits)?;
    let hom_kdd = hom_dp_with(&complete_bipartite(d, d)?, h, limits)?;
    let hom_kdp1 = hom_dp_with(&complete_graph(d + 1)?, h, limits)?;
    // Common exponent 2d(d+1), with the shared factor divided out of each
    // comparison.
    let vs_kdd = num_traits::pow(hom.clone(), 2 * d).cmp(&num_traits::pow(hom_kdd.clone(), n));
    let vs_kdp1 = num_traits::pow(hom.clone(), d + 1).cmp(&num_traits::pow(hom_kdp1.clone(), n));
    let dominant: Dominance = num_traits::pow(hom_kdd.clone(), d + 1)
        .cmp(&num_traits::pow(hom_kdp1.clone(), 2 * d))
        .into();
    let against_max = match dominant {
        Dominance::Left | Dominance::Equal => vs_kdd,
        Dominance::Right => vs_kdp1,
    };
    Ok(ConjectureVerdict {
        n,
        d,
        hom,
        hom_kdd,
        hom_kdp1,
        vs_kdd,
        vs_kdp1,
        dominant,
        satisfied: against_max != Ordering::Greater,
        equality: against_max == Ordering::Equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog::*;
    use crate::hom::hom_dp;

    #[test]
    fn surjection_and_falling_factorial_values() {
        assert_eq!(surjections(3, 2), BigCount::from(6u32));
        for d in 1..6 {
            assert_eq!(surjections(d, 1), BigCount::one());
        }
        assert_eq!(surjections(2, 3), BigCount::zero());
        assert_eq!(surjections(0, 0), BigCount::one());
        assert_eq!(falling_factorial(5, 2), BigCount::from(20u32));
        assert_eq!(falling_factorial(4, 0), BigCount::one());
        assert_eq!(falling_factorial(3, 4), BigCount::zero());
    }

    #[test]
    fn surjections_match_stirling_recurrence() {
        // S(d, r) = r (S(d-1, r) + S(d-1, r-1))
        for d in 1..10u64 {
            for r in 1..=d {
                let rec = (surjections(d - 1, r) + surjections(d - 1, r - 1)) * r;
                assert_eq!(surjections(d, r), rec);
            }
        }
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(hom_kdd_closed(&hard_core_ind(), 2), BigCount::from(7u32));
        assert_eq!(hom_kdd_closed(&widom_rowlinson(), 2), BigCount::from(35u32));
        for k in 1..=3u32 {
            assert_eq!(hom_kdd_closed(&complete_looped(k as usize).unwrap(), 3), BigCount::from(k.pow(6)));
        }
        let wr = hom_kdp1_closed(&widom_rowlinson(), 2);
        assert_eq!(wr, CliqueClosedForm { value: BigCount::from(15u32), valid: true });
        assert_eq!(hom_kdp1_closed(&hard_core_ind(), 2).value, BigCount::from(4u32));
        let k3 = hom_kdp1_closed(&complete(3).unwrap(), 3);
        assert_eq!(k3.value, BigCount::zero());
        assert!(k3.valid);
        assert!(!hom_kdp1_closed(&complete(3).unwrap(), 2).valid);
    }

    #[test]
    fn exact_clique_count_matches_dp_everywhere() {
        for h in [complete(4).unwrap(), deleted_edge(4).unwrap(), hard_core(3).unwrap()] {
            let images = enumerate_images(&h);
            for d in 1..=4 {
                let g = complete_graph(d + 1).unwrap();
                assert_eq!(hom_kdp1_exact(&images, d), hom_dp(&g, &h).unwrap(), "{h:?} d={d}");
            }
        }
    }

    #[test]
    fn cross_power_examples() {
        let wr = compare_cross_powers(&widom_rowlinson(), 2);
        assert_eq!((wr.left, wr.right), (BigCount::from(42875u32), BigCount::from(50625u32)));
        assert_eq!(wr.sign, Dominance::Right);
        for d in 1..=6 {
            assert_eq!(compare_cross_powers(&complete_looped(3).unwrap(), d).sign, Dominance::Equal);
        }
        assert_eq!(compare_cross_powers(&complete(3).unwrap(), 3).sign, Dominance::Left);
    }

    #[test]
    fn conjecture_examples() {
        let c4 = conjecture_rhs_compare(&cycle(4).unwrap(), &hard_core_ind()).unwrap();
        assert!(c4.satisfied && c4.equality);
        assert_eq!(c4.vs_kdd, Ordering::Equal);
        let k4 = conjecture_rhs_compare(&complete_graph(4).unwrap(), &widom_rowlinson()).unwrap();
        assert!(k4.satisfied && k4.equality);
        assert_eq!(k4.vs_kdp1, Ordering::Equal);
        let two_c3 = cycle(3).unwrap().copies(2).unwrap();
        let e2 = conjecture_rhs_compare(&two_c3, &loops(2).unwrap()).unwrap();
        assert_eq!(e2.hom, BigCount::from(4u32));
        assert!(e2.satisfied && e2.equality);
        assert_eq!(e2.vs_kdp1, Ordering::Equal);
        assert_eq!(conjecture_rhs_compare(&Graph::empty(3).unwrap(), &hard_core_ind()).unwrap_err(), Error::ZeroDegree);
    }
}
