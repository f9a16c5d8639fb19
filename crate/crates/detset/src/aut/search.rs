//! Backtracking search over generator images.
//!
//! All searches in this module share one engine: pick a canonical generating
//! sequence of the source group, restrict each generator's candidate images to
//! an invariant-matched pool, and grow a partial map whose closure propagation
//! forces every product of already-mapped elements. A finished walk therefore
//! carries a full multiplication-checked map; the leaf verification below is a
//! redundant guard against engine bugs, not part of the proof.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subset};
use crate::group::ClosureState;

use super::Automorphism;

/// Per-element profile preserved by every automorphism (and matched by any
/// isomorphism). Pools of candidate images are keyed by equality of this whole
/// struct, never by conjugacy class identity: an automorphism may permute
/// classes, so same-profile classes must share one pool.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Fingerprint {
    pub order: u32,
    pub class_size: u32,
    /// Number of square roots: |{y : y*y = x}|.
    pub sqrt_count: u32,
    /// Conjugacy class sizes of x^2, ..., x^(order-1). Invariant because
    /// f(x)^k = f(x^k) and class sizes are preserved.
    pub power_classes: Vec<u32>,
}

pub(crate) fn fingerprints(g: &FiniteGroup) -> Vec<Fingerprint> {
    let n = g.order();
    let mut class_size = vec![0u32; n];
    for class in g.conjugacy_classes() {
        for &x in &class {
            class_size[x as usize] = class.len() as u32;
        }
    }
    let mut sqrt_count = vec![0u32; n];
    for y in 0..n {
        sqrt_count[g.mul(y, y)] += 1;
    }
    (0..n)
        .map(|x| {
            let order = g.element_order(x) as u32;
            let mut power_classes = Vec::new();
            let mut p = g.mul(x, x);
            for _ in 2..order {
                power_classes.push(class_size[p]);
                p = g.mul(p, x);
            }
            Fingerprint { order, class_size: class_size[x], sqrt_count: sqrt_count[x], power_classes }
        })
        .collect()
}

/// Precomputed data for automorphism searches on one group.
pub(crate) struct SearchContext<'g> {
    pub g: &'g FiniteGroup,
    pub fps: Vec<Fingerprint>,
    /// Canonical generating sequence: repeatedly the highest-order element
    /// outside the closure of the prefix, ties broken by smallest index.
    /// Depends only on the table, so every search on `g` walks the same tree.
    pub seq: Vec<usize>,
    /// `pools[i]`: ascending candidate images for `seq[i]`.
    pub pools: Vec<Vec<u32>>,
    /// Product of pool sizes; an upper bound on full enumeration leaves.
    pub candidate_estimate: u128,
}

impl<'g> SearchContext<'g> {
    pub fn new(g: &'g FiniteGroup) -> SearchContext<'g> {
        let n = g.order();
        let fps = fingerprints(g);
        let mut cs = ClosureState::identity(g);
        let mut seq = Vec::new();
        while cs.len() < n {
            let pick = (0..n)
                .filter(|&x| !cs.contains(x))
                .max_by_key(|&x| (fps[x].order, std::cmp::Reverse(x)))
                .expect("closure is proper, so an outside element exists");
            seq.push(pick);
            cs.extend(g, pick);
        }
        let pools: Vec<Vec<u32>> = seq
            .iter()
            .map(|&s| (0..n).filter(|&y| fps[y] == fps[s]).map(|y| y as u32).collect())
            .collect();
        let candidate_estimate =
            pools.iter().fold(1u128, |acc, p| acc.saturating_mul(p.len() as u128));
        SearchContext { g, fps, seq, pools, candidate_estimate }
    }
}

/// Partial map `src -> dst` that eagerly closes under multiplication: after
/// `assign(x, y)` succeeds, every product of mapped elements is mapped, and
/// every such product has been checked consistent. Conflicts leave the map
/// dirty, so callers clone before assigning.
#[derive(Clone)]
pub(crate) struct PartialMap<'a> {
    src: &'a FiniteGroup,
    dst: &'a FiniteGroup,
    injective: bool,
    image: Vec<u32>,
    used: Vec<bool>,
    defined: Vec<u32>,
}

const UNSET: u32 = u32::MAX;

impl<'a> PartialMap<'a> {
    /// Starts with only the identity mapped to the identity.
    pub fn new(src: &'a FiniteGroup, dst: &'a FiniteGroup, injective: bool) -> PartialMap<'a> {
        let mut image = vec![UNSET; src.order()];
        let mut used = vec![false; dst.order()];
        image[0] = 0;
        used[0] = true;
        PartialMap { src, dst, injective, image, used, defined: vec![0] }
    }

    pub fn get(&self, x: usize) -> Option<usize> {
        (self.image[x] != UNSET).then(|| self.image[x] as usize)
    }

    pub fn target_used(&self, y: usize) -> bool {
        self.injective && self.used[y]
    }

    /// Maps `x` to `y` and propagates. Returns false on any conflict: a forced
    /// value disagreeing, or (when injective) a collision of targets.
    pub fn assign(&mut self, x: usize, y: usize) -> bool {
        let mut work = vec![(x as u32, y as u32)];
        while let Some((a, b)) = work.pop() {
            let (a_us, b_us) = (a as usize, b as usize);
            match self.image[a_us] {
                v if v == UNSET => {}
                v if v == b => continue,
                _ => return false,
            }
            if self.injective && self.used[b_us] {
                return false;
            }
            self.image[a_us] = b;
            if self.injective {
                self.used[b_us] = true;
            }
            self.defined.push(a);
            // Pair the new element against everything defined so far (itself
            // included). Later definitions pair back against this one, so all
            // ordered pairs of defined elements are eventually enforced.
            for i in 0..self.defined.len() {
                let d = self.defined[i] as usize;
                let e = self.image[d] as usize;
                work.push((self.src.mul(a_us, d) as u32, self.dst.mul(b_us, e) as u32));
                work.push((self.src.mul(d, a_us) as u32, self.dst.mul(e, b_us) as u32));
            }
        }
        true
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    fn is_total(&self) -> bool {
        self.defined.len() == self.src.order()
    }
}

/// Full-map check. For small groups verify the whole table; for larger ones
/// check `f(s*x) = f(s)*f(x)` for the generating sequence `s`, which forces the
/// homomorphism property on all of `src` by induction on words.
pub(crate) fn verify_map(src: &FiniteGroup, dst: &FiniteGroup, seq: &[usize], image: &[u32]) -> bool {
    let n = src.order();
    if image.len() != n || image[0] != 0 {
        return false;
    }
    if n <= 128 {
        for a in 0..n {
            for b in 0..n {
                if image[src.mul(a, b)] as usize
                    != dst.mul(image[a] as usize, image[b] as usize)
                {
                    return false;
                }
            }
        }
    } else {
        for &s in seq {
            let fs = image[s] as usize;
            for x in 0..n {
                if image[src.mul(s, x)] as usize != dst.mul(fs, image[x] as usize) {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(PartialEq, Eq)]
pub(crate) enum WalkStep {
    Continue,
    Stop,
}

/// Depth-first walk over generator images. `budget` counts candidate
/// assignments tried; exhausting it aborts with `Error::NodeBudget`.
pub(crate) struct Walker<'a> {
    pub src: &'a FiniteGroup,
    pub dst: &'a FiniteGroup,
    pub seq: &'a [usize],
    pub pools: &'a [Vec<u32>],
    pub trials: u64,
    pub budget: u64,
}

impl<'a> Walker<'a> {
    pub fn run(
        &mut self,
        pm: &PartialMap<'a>,
        depth: usize,
        sink: &mut dyn FnMut(&[u32]) -> WalkStep,
    ) -> Result<WalkStep> {
        let mut i = depth;
        while i < self.seq.len() && pm.get(self.seq[i]).is_some() {
            i += 1;
        }
        if i == self.seq.len() {
            assert!(pm.is_total(), "generating sequence closure did not cover the group");
            assert!(
                verify_map(self.src, self.dst, self.seq, pm.image()),
                "propagated map failed verification"
            );
            return Ok(sink(pm.image()));
        }
        for &cand in &self.pools[i] {
            if pm.target_used(cand as usize) {
                continue;
            }
            if self.trials >= self.budget {
                return Err(Error::NodeBudget { lower: 0 });
            }
            self.trials += 1;
            let mut child = pm.clone();
            if child.assign(self.seq[i], cand as usize)
                && self.run(&child, i + 1, sink)? == WalkStep::Stop
            {
                return Ok(WalkStep::Stop);
            }
        }
        Ok(WalkStep::Continue)
    }
}

/// Enumerates every automorphism. Caller is responsible for the cap check;
/// the walk itself is bounded by the candidate pools.
pub(crate) fn enumerate_automorphisms(ctx: &SearchContext<'_>) -> Vec<Automorphism> {
    let mut out = Vec::new();
    collect(ctx, u64::MAX, usize::MAX, &mut out).expect("unbounded walk cannot hit a budget");
    out
}

/// Bounded sampling walk for groups past the enumeration cap: stops after
/// `max_leaves` automorphisms or `trial_budget` candidate assignments.
pub(crate) fn probe_automorphisms(
    ctx: &SearchContext<'_>,
    max_leaves: usize,
    trial_budget: u64,
) -> Vec<Automorphism> {
    let mut out = Vec::new();
    match collect(ctx, trial_budget, max_leaves, &mut out) {
        Ok(()) | Err(Error::NodeBudget { .. }) => out,
        Err(e) => unreachable!("probe walk raised {e}"),
    }
}

fn collect(
    ctx: &SearchContext<'_>,
    budget: u64,
    max_leaves: usize,
    out: &mut Vec<Automorphism>,
) -> Result<()> {
    let pm = PartialMap::new(ctx.g, ctx.g, true);
    let mut walker = Walker {
        src: ctx.g,
        dst: ctx.g,
        seq: &ctx.seq,
        pools: &ctx.pools,
        trials: 0,
        budget,
    };
    walker.run(&pm, 0, &mut |image| {
        out.push(Automorphism::from_image_unchecked(image.to_vec()));
        if out.len() >= max_leaves {
            WalkStep::Stop
        } else {
            WalkStep::Continue
        }
    })?;
    Ok(())
}

/// First nontrivial automorphism fixing `fixed` pointwise, in canonical walk
/// order, or `None` once the exhaustive walk proves there is none. Candidate
/// assignments are drawn down from the shared `budget`, including on failure.
pub(crate) fn stabilizer_witness(
    ctx: &SearchContext<'_>,
    fixed: &Subset,
    budget: &mut u64,
) -> Result<Option<Automorphism>> {
    let mut pm = PartialMap::new(ctx.g, ctx.g, true);
    for w in fixed.iter() {
        let ok = pm.assign(w, w);
        assert!(ok, "identity on a subset cannot conflict");
    }
    let mut found = None;
    let mut walker = Walker {
        src: ctx.g,
        dst: ctx.g,
        seq: &ctx.seq,
        pools: &ctx.pools,
        trials: 0,
        budget: *budget,
    };
    let res = walker.run(&pm, 0, &mut |image| {
        if image.iter().enumerate().all(|(i, &y)| y as usize == i) {
            WalkStep::Continue
        } else {
            found = Some(Automorphism::from_image_unchecked(image.to_vec()));
            WalkStep::Stop
        }
    });
    *budget = budget.saturating_sub(walker.trials);
    res?;
    Ok(found)
}

/// BFS closure of `gens` under composition, capped at `cap` permutations.
/// Returns the closed set and whether it is actually closed (false = cap hit).
pub(crate) fn close_under_composition(
    n: usize,
    gens: &[Automorphism],
    cap: usize,
) -> (HashSet<Vec<u32>>, bool) {
    let identity: Vec<u32> = (0..n as u32).collect();
    let mut closed: HashSet<Vec<u32>> = HashSet::new();
    closed.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(f) = frontier.pop() {
        for g in gens {
            let composed: Vec<u32> = (0..n).map(|x| f[g.apply(x)]).collect();
            if closed.len() >= cap && !closed.contains(&composed) {
                return (closed, false);
            }
            if closed.insert(composed.clone()) {
                frontier.push(composed);
            }
        }
    }
    (closed, true)
}

/// Greedy generating set: scan automorphisms by descending permutation order
/// (ties lexicographic) and keep each one outside the closure so far.
pub(crate) fn extract_generators(
    n: usize,
    elements: &[Automorphism],
    closure_cap: usize,
) -> Vec<Automorphism> {
    let mut sorted: Vec<&Automorphism> = elements.iter().collect();
    sorted.sort_by(|a, b| b.order().cmp(&a.order()).then_with(|| a.image().cmp(b.image())));
    let mut gens: Vec<Automorphism> = Vec::new();
    let mut closed: HashSet<Vec<u32>> = HashSet::new();
    closed.insert((0..n as u32).collect());
    for a in sorted {
        if closed.contains(a.image()) {
            continue;
        }
        gens.push(a.clone());
        closed = close_under_composition(n, &gens, closure_cap).0;
    }
    gens
}
