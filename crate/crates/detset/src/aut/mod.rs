//! Automorphism groups of concrete finite groups.
//!
//! The engine enumerates automorphisms as permutations of element indices,
//! searching generator images inside invariant-matched candidate pools. Caps
//! make the enumeration refuse up front when the candidate space or the memory
//! footprint would be too large; a refused enumeration still yields a sample
//! and a usable lower bound, and targeted questions ("is there a nontrivial
//! automorphism fixing this set?") stay answerable exactly via
//! [`fixing_automorphism`].

mod search;

use std::collections::HashSet;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom, Subset};

pub(crate) use search::{
    close_under_composition, enumerate_automorphisms, extract_generators, probe_automorphisms,
    stabilizer_witness, verify_map, SearchContext,
};

/// A bijective self-homomorphism, stored as the permutation it induces on
/// element indices. Always fixes index 0 (the identity element).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Automorphism {
    image: Vec<u32>,
}

impl Automorphism {
    pub fn identity(n: usize) -> Automorphism {
        Automorphism { image: (0..n as u32).collect() }
    }

    /// Wraps a verified image table. Callers outside the search engine should
    /// go through [`Automorphism::from_hom`].
    pub(crate) fn from_image_unchecked(image: Vec<u32>) -> Automorphism {
        Automorphism { image }
    }

    /// Checks that `hom` is a bijective homomorphism of `g` and wraps it.
    pub fn from_hom(g: &FiniteGroup, hom: &GroupHom) -> Result<Automorphism> {
        if hom.image.len() != g.order() {
            return Err(Error::pre("from_hom", "image table has the wrong length"));
        }
        if !hom.is_injective() || !hom.verify(g, g) {
            return Err(Error::pre("from_hom", "map is not a bijective homomorphism"));
        }
        Ok(Automorphism { image: hom.image.clone() })
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &y)| y as usize == i)
    }

    /// Pointwise fix check: does this automorphism fix every member of `s`?
    pub fn fixes(&self, s: &Subset) -> bool {
        s.iter().all(|x| self.apply(x) == x)
    }

    /// `self` after `other`: applies `other` first.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { image: other.image.iter().map(|&y| self.image[y as usize]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0u32; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Automorphism { image: inv }
    }

    /// Multiplicative order: least k >= 1 with the k-fold composite trivial.
    /// Computed as the lcm of the permutation's cycle lengths.
    pub fn order(&self) -> u64 {
        let n = self.image.len();
        let mut seen = vec![false; n];
        let mut order = 1u64;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x] as usize;
                len += 1;
            }
            order = crate::group::lcm(order, len);
        }
        order
    }

    pub fn as_hom(&self) -> GroupHom {
        GroupHom { image: self.image.clone() }
    }
}

/// Serializes as the permutation array: position `x` holds the image of `x`.
impl serde::Serialize for Automorphism {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.image.serialize(serializer)
    }
}

/// Result of an automorphism-group computation.
///
/// When `complete` is true, `elements` is the entire group and
/// `order_lower_bound` its exact order. When false (the candidate space broke
/// the cap), `elements` is a deterministic sample and `order_lower_bound` the
/// size of the largest subgroup certified from that sample.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub complete: bool,
    pub elements: Vec<Automorphism>,
    pub generators: Vec<Automorphism>,
    pub order_lower_bound: usize,
    /// Product of candidate-pool sizes: the bound compared against the cap.
    pub candidate_estimate: u128,
    /// The cap the estimate was compared against (count and memory combined).
    pub effective_cap: u64,
}

impl AutGroup {
    /// Exact order when fully enumerated.
    pub fn order(&self) -> Option<usize> {
        self.complete.then_some(self.order_lower_bound)
    }

    pub fn is_trivial(&self) -> Option<bool> {
        if self.complete {
            Some(self.order_lower_bound == 1)
        } else if self.order_lower_bound > 1 {
            Some(false)
        } else {
            None
        }
    }
}

/// Enumeration refuses up front when the candidate space exceeds both the
/// count cap and the memory cap (stored entries = automorphisms x order).
pub(crate) fn effective_aut_cap(n: usize, caps: &Caps) -> u64 {
    caps.aut_enumeration_cap.min(caps.aut_memory_cap / n.max(1) as u64)
}

const PROBE_LEAVES: usize = 64;
const PROBE_TRIALS: u64 = 100_000;
const PROBE_CLOSURE_CAP: usize = 4096;

/// Computes `Aut(g)`: fully enumerated when the candidate estimate fits the
/// effective cap, otherwise a probe sample with a certified lower bound.
pub fn aut_group(g: &FiniteGroup, caps: &Caps) -> AutGroup {
    let ctx = SearchContext::new(g);
    let effective_cap = effective_aut_cap(g.order(), caps);
    if ctx.candidate_estimate <= effective_cap as u128 {
        let elements = enumerate_automorphisms(&ctx);
        let generators = extract_generators(g.order(), &elements, elements.len() + 1);
        AutGroup {
            complete: true,
            order_lower_bound: elements.len(),
            elements,
            generators,
            candidate_estimate: ctx.candidate_estimate,
            effective_cap,
        }
    } else {
        let elements = probe_automorphisms(&ctx, PROBE_LEAVES, PROBE_TRIALS);
        let generators = extract_generators(g.order(), &elements, PROBE_CLOSURE_CAP);
        let (closed, _) = close_under_composition(g.order(), &generators, PROBE_CLOSURE_CAP);
        AutGroup {
            complete: false,
            order_lower_bound: closed.len(),
            elements,
            generators,
            candidate_estimate: ctx.candidate_estimate,
            effective_cap,
        }
    }
}

/// First nontrivial automorphism of `g` fixing `fixed` pointwise, or `None`
/// when the exhaustive search proves only the identity fixes the set. The walk
/// is budgeted by `caps.node_budget` candidate assignments.
pub fn fixing_automorphism(
    g: &FiniteGroup,
    fixed: &Subset,
    caps: &Caps,
) -> Result<Option<Automorphism>> {
    let ctx = SearchContext::new(g);
    let mut budget = caps.node_budget;
    stabilizer_witness(&ctx, fixed, &mut budget)
}

/// Conjugation by `x`: the map `y -> x y x^-1`.
pub fn inner_automorphism(g: &FiniteGroup, x: usize) -> Automorphism {
    let image: Vec<u32> = (0..g.order()).map(|y| g.conjugate(x, y) as u32).collect();
    debug_assert!(search::verify_map(g, g, &[], &image));
    Automorphism { image }
}

/// Brute-force oracle: tries every permutation of nonidentity elements and
/// keeps the homomorphisms. Exponential; guarded by `cap` on the order.
pub fn exhaustive_automorphism_scan(g: &FiniteGroup, cap: usize) -> Result<Vec<Automorphism>> {
    let n = g.order();
    if n > cap {
        return Err(Error::OracleCap { order: n, cap });
    }
    let mut out = Vec::new();
    let mut perm: Vec<u32> = (0..n as u32).collect();
    loop {
        if is_automorphism_image(g, &perm) {
            out.push(Automorphism { image: perm.clone() });
        }
        // Next lexicographic permutation of perm[1..], keeping the identity
        // pinned at index 0.
        if !next_permutation(&mut perm[1..]) {
            return Ok(out);
        }
    }
}

fn is_automorphism_image(g: &FiniteGroup, image: &[u32]) -> bool {
    let n = g.order();
    for a in 0..n {
        for b in 0..n {
            if image[g.mul(a, b)] as usize != g.mul(image[a] as usize, image[b] as usize) {
                return false;
            }
        }
    }
    true
}

/// In-place lexicographic successor; false when already at the last one.
fn next_permutation(xs: &mut [u32]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let Some(i) = (0..xs.len() - 1).rev().find(|&i| xs[i] < xs[i + 1]) else {
        return false;
    };
    let j = (i + 1..xs.len()).rev().find(|&j| xs[j] > xs[i]).unwrap();
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

/// Every homomorphism `src -> dst`, found by mapping a generating sequence of
/// `src` into order-compatible candidates. Refuses when the candidate space
/// exceeds `caps.hom_candidate_cap`.
pub fn hom_set(src: &FiniteGroup, dst: &FiniteGroup, caps: &Caps) -> Result<Vec<GroupHom>> {
    let ctx = SearchContext::new(src);
    let dst_orders: Vec<usize> = (0..dst.order()).map(|y| dst.element_order(y)).collect();
    // f(x) must have order dividing the order of x.
    let pools: Vec<Vec<u32>> = ctx
        .seq
        .iter()
        .map(|&s| {
            let so = src.element_order(s);
            (0..dst.order()).filter(|&y| so.is_multiple_of(dst_orders[y])).map(|y| y as u32).collect()
        })
        .collect();
    let estimate = pools.iter().fold(1u128, |acc, p| acc.saturating_mul(p.len() as u128));
    if estimate > caps.hom_candidate_cap as u128 {
        return Err(Error::HomCap { estimate, cap: caps.hom_candidate_cap });
    }
    let mut out = Vec::new();
    let pm = search::PartialMap::new(src, dst, false);
    let mut walker = search::Walker {
        src,
        dst,
        seq: &ctx.seq,
        pools: &pools,
        trials: 0,
        budget: u64::MAX,
    };
    walker.run(&pm, 0, &mut |image| {
        out.push(GroupHom { image: image.to_vec() });
        search::WalkStep::Continue
    })?;
    Ok(out)
}

/// An isomorphism `src -> dst` if one exists. Quick-rejects on order and on
/// the multiset of element fingerprints before searching.
pub fn isomorphism(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    caps: &Caps,
) -> Result<Option<GroupHom>> {
    if src.order() != dst.order() {
        return Ok(None);
    }
    let ctx = SearchContext::new(src);
    let dst_fps = search::fingerprints(dst);
    let mut src_sorted: Vec<&search::Fingerprint> = ctx.fps.iter().collect();
    let mut dst_sorted: Vec<&search::Fingerprint> = dst_fps.iter().collect();
    src_sorted.sort_by(fingerprint_cmp);
    dst_sorted.sort_by(fingerprint_cmp);
    if src_sorted != dst_sorted {
        return Ok(None);
    }
    let pools: Vec<Vec<u32>> = ctx
        .seq
        .iter()
        .map(|&s| {
            (0..dst.order()).filter(|&y| dst_fps[y] == ctx.fps[s]).map(|y| y as u32).collect()
        })
        .collect();
    let estimate = pools.iter().fold(1u128, |acc, p| acc.saturating_mul(p.len() as u128));
    if estimate > caps.hom_candidate_cap as u128 {
        return Err(Error::HomCap { estimate, cap: caps.hom_candidate_cap });
    }
    let mut found = None;
    let pm = search::PartialMap::new(src, dst, true);
    let mut walker = search::Walker {
        src,
        dst,
        seq: &ctx.seq,
        pools: &pools,
        trials: 0,
        budget: u64::MAX,
    };
    walker.run(&pm, 0, &mut |image| {
        found = Some(GroupHom { image: image.to_vec() });
        search::WalkStep::Stop
    })?;
    Ok(found)
}

#[allow(clippy::ptr_arg)]
fn fingerprint_cmp(a: &&search::Fingerprint, b: &&search::Fingerprint) -> std::cmp::Ordering {
    (a.order, a.class_size, a.sqrt_count, &a.power_classes).cmp(&(
        b.order,
        b.class_size,
        b.sqrt_count,
        &b.power_classes,
    ))
}

/// The inner automorphism group as a deduplicated set of permutations.
pub fn inner_automorphisms(g: &FiniteGroup) -> Vec<Automorphism> {
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut out = Vec::new();
    for x in 0..g.order() {
        let a = inner_automorphism(g, x);
        if seen.insert(a.image().to_vec()) {
            out.push(a);
        }
    }
    out
}
