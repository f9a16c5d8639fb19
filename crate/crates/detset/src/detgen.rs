//! Determining and generating numbers.
//!
//! The determining number is the least size of a set fixed pointwise only by
//! the trivial automorphism; the generating number is the least size of a
//! generating set. Both searches iterate subset sizes upward, so the first hit
//! is a minimum witness, and within a size the recursion is lexicographic, so
//! the returned witness is the lex-least minimum one.
//!
//! Two strategies compute the determining number. When the automorphism group
//! fits the enumeration caps, subsets are tested against an explicit stabilizer
//! list that shrinks along the recursion. Otherwise a pool of known nontrivial
//! automorphisms certifies most subsets non-determining by a cheap scan, and
//! only subsets the pool cannot settle go to the backtracking engine, whose
//! answers refill the pool. Both are exhaustive, so the answers are exact;
//! running out of node budget raises an error carrying the proven lower bound
//! instead of returning a guess.

use itertools::Itertools;

use crate::aut::{
    aut_group, effective_aut_cap, enumerate_automorphisms, probe_automorphisms,
    stabilizer_witness, Automorphism, SearchContext,
};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::ClosureState;
use crate::group::{FiniteGroup, Subset};

/// How the determining-number search handled the automorphism group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AlphaStrategy {
    /// Automorphisms fully enumerated; stabilizers filtered explicitly.
    FullEnumeration,
    /// Automorphism group too large to enumerate; each subset was certified
    /// by an exhaustive per-subset witness search.
    WitnessSearch,
}

/// Exact determining number with a lex-least minimum witness.
#[derive(Clone, Debug)]
pub struct Alpha {
    pub value: usize,
    pub witness: Subset,
    pub strategy: AlphaStrategy,
    /// Exact automorphism group order when fully enumerated.
    pub aut_order: Option<usize>,
    /// Budget units consumed (subset nodes plus engine assignments).
    pub nodes: u64,
}

/// Exact generating number with a lex-least minimum witness.
#[derive(Clone, Debug)]
pub struct Gamma {
    pub value: usize,
    pub witness: Subset,
    pub nodes: u64,
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc: u128 = 1;
    for i in 0..k.min(n - k) {
        acc = acc.saturating_mul((n - i) as u128) / (i as u128 + 1);
    }
    acc
}

fn spend(budget: &mut u64) -> Result<()> {
    if *budget == 0 {
        return Err(Error::NodeBudget { lower: 0 });
    }
    *budget -= 1;
    Ok(())
}

/// Re-tags a budget error with the size whose levels below are exhausted.
fn at_level(e: Error, k: usize) -> Error {
    match e {
        Error::NodeBudget { .. } => Error::NodeBudget { lower: k },
        other => other,
    }
}

/// Computes the determining number of `g`.
pub fn determining_number(g: &FiniteGroup, caps: &Caps) -> Result<Alpha> {
    let ctx = SearchContext::new(g);
    let enumerable =
        ctx.candidate_estimate <= effective_aut_cap(g.order(), caps) as u128;
    if enumerable {
        alpha_full_enumeration(g, &ctx, caps)
    } else {
        alpha_witness_search(g, &ctx, caps)
    }
}

fn alpha_full_enumeration(g: &FiniteGroup, ctx: &SearchContext<'_>, caps: &Caps) -> Result<Alpha> {
    let auts = enumerate_automorphisms(ctx);
    let nontrivial: Vec<&Automorphism> = auts.iter().filter(|a| !a.is_identity()).collect();
    let mut budget = caps.node_budget;
    if nontrivial.is_empty() {
        return Ok(Alpha {
            value: 0,
            witness: Subset::empty(),
            strategy: AlphaStrategy::FullEnumeration,
            aut_order: Some(auts.len()),
            nodes: 0,
        });
    }
    let n = g.order();
    for k in 1..=n {
        let mut chosen = Vec::new();
        let found = rec_stabilizer(g, &nontrivial, k, 0, &mut chosen, &mut budget)
            .map_err(|e| at_level(e, k))?;
        if let Some(witness) = found {
            return Ok(Alpha {
                value: k,
                witness: Subset::from_indices(&witness),
                strategy: AlphaStrategy::FullEnumeration,
                aut_order: Some(auts.len()),
                nodes: caps.node_budget - budget,
            });
        }
    }
    unreachable!("the full element set is always determining");
}

/// Lexicographic size-`k_left` extension carrying the stabilizer of the chosen
/// prefix. A candidate fixed by the whole current stabilizer is skipped: if a
/// member of a determining set leaves the prefix stabilizer unchanged, the set
/// minus that member is still determining, so no minimum witness is lost.
fn rec_stabilizer(
    g: &FiniteGroup,
    stab: &[&Automorphism],
    k_left: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    budget: &mut u64,
) -> Result<Option<Vec<usize>>> {
    let n = g.order();
    for e in start..n {
        if n - e < k_left {
            break;
        }
        spend(budget)?;
        if stab.iter().all(|a| a.apply(e) == e) {
            continue;
        }
        let child: Vec<&Automorphism> =
            stab.iter().filter(|a| a.apply(e) == e).copied().collect();
        chosen.push(e);
        if k_left == 1 {
            if child.is_empty() {
                return Ok(Some(chosen.clone()));
            }
        } else {
            debug_assert!(
                !child.is_empty(),
                "a proper prefix with trivial stabilizer contradicts minimality of this level"
            );
            if let Some(found) = rec_stabilizer(g, &child, k_left - 1, e + 1, chosen, budget)? {
                return Ok(Some(found));
            }
        }
        chosen.pop();
    }
    Ok(None)
}

/// Nontrivial automorphisms kept around to certify subsets non-determining
/// without an engine call. Probe samples seed it permanently; fresh engine
/// answers rotate through a bounded ring, so the memory stays flat while the
/// pool tracks the crawl.
struct WitnessPool {
    seeds: Vec<Automorphism>,
    ring: Vec<Automorphism>,
    next: usize,
}

const WITNESS_POOL_RING: usize = 256;

impl WitnessPool {
    fn new(seeds: Vec<Automorphism>) -> WitnessPool {
        WitnessPool { seeds, ring: Vec::new(), next: 0 }
    }

    fn find_fixing(&self, chosen: &[usize]) -> Option<&Automorphism> {
        let fixes_all = |a: &&Automorphism| chosen.iter().all(|&x| a.apply(x) == x);
        self.ring.iter().find(fixes_all).or_else(|| self.seeds.iter().find(fixes_all))
    }

    fn push(&mut self, a: Automorphism) {
        if self.ring.len() < WITNESS_POOL_RING {
            self.ring.push(a);
        } else {
            self.ring[self.next] = a;
            self.next = (self.next + 1) % WITNESS_POOL_RING;
        }
    }
}

fn alpha_witness_search(g: &FiniteGroup, ctx: &SearchContext<'_>, caps: &Caps) -> Result<Alpha> {
    let mut budget = caps.node_budget;
    let root = stabilizer_witness(ctx, &Subset::empty(), &mut budget)?;
    let Some(root_witness) = root else {
        return Ok(Alpha {
            value: 0,
            witness: Subset::empty(),
            strategy: AlphaStrategy::WitnessSearch,
            aut_order: Some(1),
            nodes: caps.node_budget - budget,
        });
    };
    let mut seeds: Vec<Automorphism> = probe_automorphisms(ctx, 64, 100_000)
        .into_iter()
        .filter(|a| !a.is_identity())
        .collect();
    seeds.push(root_witness);
    let mut pool = WitnessPool::new(seeds);
    let n = g.order();
    for k in 1..=n {
        let estimate = binomial(n, k);
        if estimate > budget as u128 {
            return Err(Error::SubsetBudget { size: k, estimate, budget });
        }
        let mut chosen = Vec::new();
        let found = rec_witness(ctx, &mut pool, k, 0, &mut chosen, &mut budget)
            .map_err(|e| at_level(e, k))?;
        if let Some(witness) = found {
            return Ok(Alpha {
                value: k,
                witness: Subset::from_indices(&witness),
                strategy: AlphaStrategy::WitnessSearch,
                aut_order: None,
                nodes: caps.node_budget - budget,
            });
        }
    }
    unreachable!("the full element set is always determining");
}

/// Lexicographic extension. A pool automorphism fixing the whole choice
/// certifies it non-determining without an engine call; otherwise the engine
/// decides exhaustively and its answer joins the pool for later subsets.
fn rec_witness(
    ctx: &SearchContext<'_>,
    pool: &mut WitnessPool,
    k_left: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    budget: &mut u64,
) -> Result<Option<Vec<usize>>> {
    let n = ctx.g.order();
    for e in start..n {
        if n - e < k_left {
            break;
        }
        spend(budget)?;
        chosen.push(e);
        if pool.find_fixing(chosen).is_none() {
            match stabilizer_witness(ctx, &Subset::from_indices(chosen), budget)? {
                None => {
                    // Only a leaf can be determining here: levels below the
                    // current size were exhausted, so no smaller set has a
                    // trivial stabilizer.
                    assert!(k_left == 1, "proper prefix cannot be determining at a minimal level");
                    return Ok(Some(chosen.clone()));
                }
                Some(sigma) => pool.push(sigma),
            }
        }
        if k_left > 1 {
            if let Some(found) = rec_witness(ctx, pool, k_left - 1, e + 1, chosen, budget)? {
                return Ok(Some(found));
            }
        }
        chosen.pop();
    }
    Ok(None)
}

/// Computes the generating number of `g`.
pub fn generating_number(g: &FiniteGroup, caps: &Caps) -> Result<Gamma> {
    let n = g.order();
    if n == 1 {
        return Ok(Gamma { value: 0, witness: Subset::empty(), nodes: 0 });
    }
    let mut budget = caps.node_budget;
    for k in 1..=n {
        let estimate = binomial(n, k);
        if estimate > budget as u128 {
            return Err(Error::SubsetBudget { size: k, estimate, budget });
        }
        let mut chosen = Vec::new();
        let cs = ClosureState::identity(g);
        let found = rec_generate(g, &cs, k, 0, &mut chosen, &mut budget)
            .map_err(|e| at_level(e, k))?;
        if let Some(witness) = found {
            return Ok(Gamma {
                value: k,
                witness: Subset::from_indices(&witness),
                nodes: caps.node_budget - budget,
            });
        }
    }
    unreachable!("the full element set generates the group");
}

/// Lexicographic extension of a partial generating set, branching on a cloned
/// incremental closure. Candidates already inside the closure are skipped:
/// at a minimal size no witness wastes a slot on a redundant generator. Every
/// kept generator at least doubles the closure, giving the overshoot prune.
fn rec_generate(
    g: &FiniteGroup,
    cs: &ClosureState,
    k_left: usize,
    start: usize,
    chosen: &mut Vec<usize>,
    budget: &mut u64,
) -> Result<Option<Vec<usize>>> {
    let n = g.order();
    // Even if every remaining slot doubles the closure, the target is missed.
    if (cs.len() as u128) << k_left.min(127) > n as u128 {
        return Ok(None);
    }
    for e in start..n {
        if n - e < k_left {
            break;
        }
        spend(budget)?;
        if cs.contains(e) {
            continue;
        }
        let mut child = cs.clone();
        child.extend(g, e);
        if child.len() == n {
            if k_left == 1 {
                chosen.push(e);
                return Ok(Some(chosen.clone()));
            }
            // Full already: the remaining slots would all be redundant.
            continue;
        }
        if k_left > 1 {
            chosen.push(e);
            if let Some(found) = rec_generate(g, &child, k_left - 1, e + 1, chosen, budget)? {
                return Ok(Some(found));
            }
            chosen.pop();
        }
    }
    Ok(None)
}

/// Is `s` a determining set: does only the identity automorphism fix it
/// pointwise? Exact; budgeted by `caps.node_budget`.
pub fn is_determining_set(g: &FiniteGroup, s: &Subset, caps: &Caps) -> Result<bool> {
    let ctx = SearchContext::new(g);
    let mut budget = caps.node_budget;
    Ok(stabilizer_witness(&ctx, s, &mut budget)?.is_none())
}

pub fn is_generating_set(g: &FiniteGroup, s: &Subset) -> bool {
    let members: Vec<usize> = s.iter().collect();
    g.closure(&members).len() == g.order()
}

/// Whether the determining and generating numbers coincide, with both results.
#[derive(Clone, Debug)]
pub struct DegReport {
    pub alpha: Alpha,
    pub gamma: Gamma,
}

impl DegReport {
    pub fn is_deg(&self) -> bool {
        self.alpha.value == self.gamma.value
    }
}

pub fn deg_report(g: &FiniteGroup, caps: &Caps) -> Result<DegReport> {
    Ok(DegReport { alpha: determining_number(g, caps)?, gamma: generating_number(g, caps)? })
}

/// All minimum determining sets, in lexicographic order. Requires the
/// automorphism group to be fully enumerable under the caps.
pub fn minimum_determining_sets(g: &FiniteGroup, caps: &Caps) -> Result<Vec<Subset>> {
    let aut = aut_group(g, caps);
    if !aut.complete {
        return Err(Error::pre(
            "minimum_determining_sets",
            "automorphism group exceeds the enumeration caps",
        ));
    }
    let alpha = determining_number(g, caps)?;
    let nontrivial: Vec<&Automorphism> =
        aut.elements.iter().filter(|a| !a.is_identity()).collect();
    if nontrivial.is_empty() {
        return Ok(vec![Subset::empty()]);
    }
    let n = g.order();
    let mut budget = caps.node_budget;
    let mut out = Vec::new();
    for combo in (0..n).combinations(alpha.value) {
        spend(&mut budget).map_err(|e| at_level(e, alpha.value))?;
        if nontrivial.iter().all(|a| combo.iter().any(|&e| a.apply(e) != e)) {
            out.push(Subset::from_indices(&combo));
        }
    }
    Ok(out)
}

/// Brute-force determining number: no pruning, no stabilizer carrying, just
/// every subset in lexicographic order against the full automorphism list.
pub fn oracle_determining_number(g: &FiniteGroup, caps: &Caps) -> Result<(usize, Subset)> {
    let n = g.order();
    if n > caps.oracle_cap {
        return Err(Error::OracleCap { order: n, cap: caps.oracle_cap });
    }
    let aut = aut_group(g, caps);
    assert!(aut.complete, "oracle-sized groups enumerate fully");
    let nontrivial: Vec<&Automorphism> =
        aut.elements.iter().filter(|a| !a.is_identity()).collect();
    for k in 0..=n {
        for combo in (0..n).combinations(k) {
            if nontrivial.iter().all(|a| combo.iter().any(|&e| a.apply(e) != e)) {
                return Ok((k, Subset::from_indices(&combo)));
            }
        }
    }
    unreachable!("the full element set is always determining");
}

/// Brute-force generating number: every subset, fresh closure each time.
pub fn oracle_generating_number(g: &FiniteGroup, caps: &Caps) -> Result<(usize, Subset)> {
    let n = g.order();
    if n > caps.oracle_cap {
        return Err(Error::OracleCap { order: n, cap: caps.oracle_cap });
    }
    for k in 0..=n {
        for combo in (0..n).combinations(k) {
            if g.closure(&combo).len() == n {
                return Ok((k, Subset::from_indices(&combo)));
            }
        }
    }
    unreachable!("the full element set generates the group");
}
