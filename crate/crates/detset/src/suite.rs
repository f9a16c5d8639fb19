//! Machine verification of the structural theorems over a group catalog.
//!
//! Every catalog entry is analyzed once (automorphism group, determining and
//! generating numbers, subgroup scan, tight cover) and then run through a
//! fixed list of checks. Each (group, check) pair yields one entry with a
//! three-valued verdict:
//!
//! * `pass`: the statement holds, vacuously so when its hypothesis fails;
//! * `fail`: the statement is violated, with a concrete witness attached;
//! * `skip`: no verdict. Policy skips come from static caps (info-only
//!   entries, scan and oracle order bounds, enumeration refusals decided
//!   before any search runs). Resource skips mean a search spent its budget
//!   mid-flight, so the answer is genuinely unknown.
//!
//! Groups are analyzed concurrently; the report aggregates in catalog order
//! and is deterministic for fixed caps, independent of the worker count.

use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use serde::Serialize;
use serde_json::json;

use crate::aut::{
    aut_group, exhaustive_automorphism_scan, inner_automorphism, isomorphism, AutGroup,
};
use crate::caps::Caps;
use crate::catalog::CatalogEntry;
use crate::constructions::{index_p_fixing_automorphism, tight_cover, TightCover};
use crate::detgen::{
    determining_number, generating_number, is_determining_set, oracle_determining_number,
    oracle_generating_number, Alpha, Gamma,
};
use crate::error::Error;
use crate::group::{elementary_abelian, factorize, is_prime, FiniteGroup, Subset};
use crate::product::{automorphism_image_set, bidwell_aut_group, product_aut_direct, row_criterion_check};

/// Bases at or below this order get the tight-cover treatment: the cover is
/// built, checked DEG, and compared against every other sampled cover.
const COVER_SAMPLE_MAX_BASE: usize = 12;

/// Permutation-scan cross-check bound; 10! candidate bijections is the most
/// the exhaustive scan should burn per group.
const SCAN_AGREEMENT_MAX_ORDER: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SkipKind {
    /// Statically out of scope under the configured caps.
    Policy,
    /// A search ran out of budget; the verdict is unknown.
    Resource,
}

/// One (group, check) verdict.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteEntry {
    pub descriptor: String,
    pub check: &'static str,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skip_kind: Option<SkipKind>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<serde_json::Value>,
    pub millis: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub entries: Vec<SuiteEntry>,
    pub groups: usize,
    pub pass: usize,
    pub fail: usize,
    pub policy_skips: usize,
    pub resource_skips: usize,
    pub nodes: u64,
    pub millis: u128,
}

impl SuiteReport {
    /// 1 on any violation, 3 when a verdict is missing for resource reasons,
    /// 0 otherwise. Policy skips are clean: the caps said "don't".
    pub fn exit_code(&self) -> i32 {
        if self.fail > 0 {
            1
        } else if self.resource_skips > 0 {
            3
        } else {
            0
        }
    }
}

struct Outcome {
    verdict: Verdict,
    skip_kind: Option<SkipKind>,
    detail: Option<String>,
    witness: Option<serde_json::Value>,
}

fn pass() -> Outcome {
    Outcome { verdict: Verdict::Pass, skip_kind: None, detail: None, witness: None }
}

fn fail(detail: impl Into<String>, witness: Option<serde_json::Value>) -> Outcome {
    Outcome { verdict: Verdict::Fail, skip_kind: None, detail: Some(detail.into()), witness }
}

fn policy(reason: impl Into<String>) -> Outcome {
    Outcome {
        verdict: Verdict::Skip,
        skip_kind: Some(SkipKind::Policy),
        detail: Some(reason.into()),
        witness: None,
    }
}

fn resource(reason: impl Into<String>) -> Outcome {
    Outcome {
        verdict: Verdict::Skip,
        skip_kind: Some(SkipKind::Resource),
        detail: Some(reason.into()),
        witness: None,
    }
}

/// Classify a search error as a skip. Refusals decided before any search
/// starts are policy; budgets spent mid-search are resource. Anything else
/// is a bug surfacing, so it fails loudly instead of hiding in a skip.
fn skip_for(e: &Error) -> Outcome {
    match e {
        Error::OrderCap { .. }
        | Error::ScanCap { .. }
        | Error::OracleCap { .. }
        | Error::HomCap { .. }
        | Error::BidwellCap { .. }
        | Error::BidwellFactorCapped
        | Error::SubsetBudget { .. } => policy(e.to_string()),
        Error::NodeBudget { .. } => resource(e.to_string()),
        other => fail(format!("unexpected error: {other}"), None),
    }
}

macro_rules! need {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(outcome) => return outcome,
        }
    };
}

struct CoverData {
    tc: TightCover,
    alpha: Result<Alpha, Error>,
    gamma: Result<Gamma, Error>,
}

/// Everything a check may ask about one catalog entry, computed up front.
struct GroupAnalysis {
    info_only: bool,
    order: usize,
    chi: usize,
    nilpotent: bool,
    abelian: bool,
    cyclic: bool,
    simple: Option<bool>,
    aut: AutGroup,
    alpha: Option<Result<Alpha, Error>>,
    gamma: Result<Gamma, Error>,
    subgroups: Option<Vec<Subset>>,
    cover: Option<Result<CoverData, Error>>,
    nodes: u64,
}

impl GroupAnalysis {
    fn alpha(&self) -> Result<&Alpha, Outcome> {
        match &self.alpha {
            None => Err(policy("info-only entry: the distinguishing search is not run")),
            Some(Ok(a)) => Ok(a),
            Some(Err(e)) => Err(skip_for(e)),
        }
    }

    fn gamma(&self) -> Result<&Gamma, Outcome> {
        self.gamma.as_ref().map_err(skip_for)
    }
}

fn analyze(entry: &CatalogEntry, caps: &Caps) -> GroupAnalysis {
    let g = entry.built.group();
    let order = g.order();
    let aut = aut_group(g, caps);
    let alpha = (!entry.info_only).then(|| determining_number(g, caps));
    let gamma = generating_number(g, caps);
    let simple = g.is_simple(caps.subgroup_scan_cap).ok();
    let subgroups =
        (order <= caps.subgroup_scan_cap).then(|| g.all_subgroups(caps.subgroup_scan_cap).ok()).flatten();
    let cover = (!entry.info_only && order <= COVER_SAMPLE_MAX_BASE).then(|| {
        tight_cover(g, caps).map(|tc| {
            let alpha = determining_number(&tc.cover.group, caps);
            let gamma = generating_number(&tc.cover.group, caps);
            CoverData { tc, alpha, gamma }
        })
    });

    let mut nodes = 0u64;
    if let Some(Ok(a)) = &alpha {
        nodes += a.nodes;
    }
    if let Ok(gm) = &gamma {
        nodes += gm.nodes;
    }
    if let Some(Ok(cd)) = &cover {
        if let Ok(a) = &cd.alpha {
            nodes += a.nodes;
        }
        if let Ok(gm) = &cd.gamma {
            nodes += gm.nodes;
        }
    }

    GroupAnalysis {
        info_only: entry.info_only,
        order,
        chi: g.chi(),
        nilpotent: g.is_nilpotent(),
        abelian: g.is_abelian(),
        cyclic: (0..order).any(|x| g.element_order(x) == order),
        simple,
        aut,
        alpha,
        gamma,
        subgroups,
        cover,
        nodes,
    }
}

struct Ctx<'a> {
    entry: &'a CatalogEntry,
    a: &'a GroupAnalysis,
    caps: &'a Caps,
}

impl Ctx<'_> {
    fn group(&self) -> &FiniteGroup {
        self.entry.built.group()
    }

    fn labels(&self, s: &Subset) -> Vec<String> {
        s.labels(self.group())
    }
}

fn check_alpha_zero_only_for_order_two(c: &Ctx) -> Outcome {
    let alpha = need!(c.a.alpha());
    if (alpha.value == 0) == (c.a.order == 2) {
        pass()
    } else {
        fail(
            format!("alpha = {} at order {}", alpha.value, c.a.order),
            Some(json!(c.labels(&alpha.witness))),
        )
    }
}

fn check_alpha_one_only_for_cyclic_of_order_at_least_three(c: &Ctx) -> Outcome {
    let alpha = need!(c.a.alpha());
    let cyclic_big = c.a.cyclic && c.a.order >= 3;
    if (alpha.value == 1) == cyclic_big {
        pass()
    } else {
        fail(
            format!("alpha = {}, cyclic of order >= 3: {}", alpha.value, cyclic_big),
            Some(json!(c.labels(&alpha.witness))),
        )
    }
}

fn check_nonabelian_alpha_at_least_two(c: &Ctx) -> Outcome {
    if c.a.abelian {
        return pass();
    }
    let alpha = need!(c.a.alpha());
    if alpha.value >= 2 {
        pass()
    } else {
        fail(format!("nonabelian group with alpha = {}", alpha.value), None)
    }
}

fn check_generating_pairs_force_determining_pairs(c: &Ctx) -> Outcome {
    let gamma = need!(c.a.gamma());
    if gamma.value != 2 {
        return pass();
    }
    let alpha = need!(c.a.alpha());
    if alpha.value == 2 {
        pass()
    } else {
        fail(format!("gamma = 2 but alpha = {}", alpha.value), None)
    }
}

fn check_alpha_at_most_gamma(c: &Ctx) -> Outcome {
    let alpha = need!(c.a.alpha());
    let gamma = need!(c.a.gamma());
    if alpha.value <= gamma.value {
        pass()
    } else {
        fail(format!("alpha = {} > gamma = {}", alpha.value, gamma.value), None)
    }
}

fn check_gamma_at_most_chi(c: &Ctx) -> Outcome {
    let gamma = need!(c.a.gamma());
    if gamma.value <= c.a.chi {
        pass()
    } else {
        fail(format!("gamma = {} > chi = {}", gamma.value, c.a.chi), None)
    }
}

fn check_nilpotent_groups_are_deg(c: &Ctx) -> Outcome {
    if !c.a.nilpotent || c.a.order < 3 {
        return pass();
    }
    let alpha = need!(c.a.alpha());
    let gamma = need!(c.a.gamma());
    if alpha.value == gamma.value {
        pass()
    } else {
        fail(format!("nilpotent, alpha = {} != gamma = {}", alpha.value, gamma.value), None)
    }
}

fn check_simple_groups_are_deg(c: &Ctx) -> Outcome {
    let simple = match c.a.simple {
        Some(s) => s,
        None => return policy("subgroup scan cap blocks the simplicity test"),
    };
    if !simple || c.a.order < 3 {
        return pass();
    }
    let prime_cyclic = c.a.cyclic && is_prime(c.a.order as u64);
    // A simple nonabelian group of order 60 is the alternating group.
    if !(prime_cyclic || c.a.order == 60) {
        return policy(
            "simple-group verification is limited to prime cyclics and the order-60 \
             alternating group; the two-generator fact is cited, not re-proved",
        );
    }
    let alpha = need!(c.a.alpha());
    let gamma = need!(c.a.gamma());
    if alpha.value == gamma.value && gamma.value <= 2 {
        pass()
    } else {
        fail(
            format!("simple group with alpha = {}, gamma = {}", alpha.value, gamma.value),
            None,
        )
    }
}

fn check_alpha_chi_equality_structure(c: &Ctx) -> Outcome {
    let alpha = need!(c.a.alpha());
    if alpha.value != c.a.chi {
        return pass();
    }
    let g = c.group();
    for x in 1..c.a.order {
        if !is_prime(g.element_order(x) as u64) {
            return fail(
                format!("alpha = chi but element order {} is not prime", g.element_order(x)),
                Some(json!(g.label(x))),
            );
        }
    }
    if c.a.nilpotent {
        let factors = factorize(c.a.order as u64);
        if factors.len() != 1 {
            return fail(
                "alpha = chi and nilpotent but the order is divisible by two primes
                    (the proof forces a single prime)"
                    .to_string(),
                Some(json!(factors)),
            );
        }
        let p = factors[0].0;
        let model = match elementary_abelian(p, c.a.chi as u32, c.caps.order_cap) {
            Ok(m) => m,
            Err(e) => return skip_for(&e),
        };
        match isomorphism(g, &model, c.caps) {
            Ok(Some(_)) => {}
            Ok(None) => {
                return fail(
                    format!("alpha = chi, nilpotent, but not isomorphic to EA({p},{})", c.a.chi),
                    None,
                )
            }
            Err(e) => return skip_for(&e),
        }
    }
    let subgroups = match &c.a.subgroups {
        Some(list) => list,
        None => return policy("subgroup scan cap blocks the per-subgroup gamma test"),
    };
    for h in subgroups {
        let (sub, _) = match g.promote(h) {
            Ok(v) => v,
            Err(e) => return fail(format!("promote failed on a scanned subgroup: {e}"), None),
        };
        let sub_chi = sub.chi();
        match generating_number(&sub, c.caps) {
            Ok(gm) if gm.value == sub_chi => {}
            Ok(gm) => {
                return fail(
                    format!(
                        "alpha = chi but a subgroup of order {} has gamma = {} != chi = {}",
                        h.len(),
                        gm.value,
                        sub_chi
                    ),
                    Some(json!(c.labels(h))),
                )
            }
            Err(e) => return skip_for(&e),
        }
    }
    pass()
}

fn check_aut_order_bound_and_equality_cases(c: &Ctx) -> Outcome {
    let alpha = need!(c.a.alpha());
    let aut_order = match c.a.aut.order() {
        Some(o) => o as u128,
        None => return policy("automorphism enumeration capped; the bound needs the exact order"),
    };
    let n = c.a.order as u128;
    let bound: u128 = (0..alpha.value as u128).map(|i| n - 1 - i).product();
    if aut_order > bound {
        return fail(format!("|Aut| = {aut_order} exceeds the falling-factorial bound {bound}"), None);
    }
    let g = c.group();
    let klein = c.a.order == 4 && (0..4).all(|x| g.element_order(x) <= 2);
    let expected_equality = (c.a.cyclic && is_prime(c.a.order as u64)) || klein;
    if (aut_order == bound) == expected_equality {
        pass()
    } else {
        fail(
            format!(
                "|Aut| = {aut_order}, bound = {bound}: equality must hold exactly for \
                 prime-order cyclic groups and the Klein four-group"
            ),
            None,
        )
    }
}

fn check_witness_span_gamma_equals_alpha(c: &Ctx) -> Outcome {
    let alpha = need!(c.a.alpha());
    let g = c.group();
    let indices: Vec<usize> = alpha.witness.iter().collect();
    let span = g.closure(&indices);
    let (sub, _) = match g.promote(&span) {
        Ok(v) => v,
        Err(e) => return fail(format!("witness span failed to promote: {e}"), None),
    };
    match generating_number(&sub, c.caps) {
        Ok(gm) if gm.value == alpha.value => pass(),
        Ok(gm) => fail(
            format!("alpha = {} but the witness span has gamma = {}", alpha.value, gm.value),
            Some(json!(c.labels(&alpha.witness))),
        ),
        Err(e) => skip_for(&e),
    }
}

fn check_witness_centralizer_equals_center(c: &Ctx) -> Outcome {
    let alpha = need!(c.a.alpha());
    let g = c.group();
    let indices: Vec<usize> = alpha.witness.iter().collect();
    if g.centralizer(&indices) == g.center() {
        pass()
    } else {
        fail(
            "the witness centralizer differs from the center",
            Some(json!(c.labels(&alpha.witness))),
        )
    }
}

fn check_witness_images_remain_determining(c: &Ctx) -> Outcome {
    let alpha = need!(c.a.alpha());
    let g = c.group();
    for sigma in &c.a.aut.generators {
        let image = Subset::new(alpha.witness.iter().map(|x| sigma.apply(x) as u32).collect());
        match is_determining_set(g, &image, c.caps) {
            Ok(true) => {}
            Ok(false) => {
                return fail(
                    "an automorphic image of the minimum witness stopped determining",
                    Some(json!({ "automorphism": sigma, "image": image.labels(g) })),
                )
            }
            Err(e) => return skip_for(&e),
        }
    }
    pass()
}

fn check_inner_automorphism_count_is_center_index(c: &Ctx) -> Outcome {
    let g = c.group();
    let distinct: HashSet<Vec<u32>> =
        (0..c.a.order).map(|x| inner_automorphism(g, x).image().to_vec()).collect();
    let center_index = c.a.order / g.center().len();
    if distinct.len() == center_index {
        pass()
    } else {
        fail(
            format!("{} distinct conjugations, center index {center_index}", distinct.len()),
            None,
        )
    }
}

fn check_prime_squared_orders_are_abelian(c: &Ctx) -> Outcome {
    let factors = factorize(c.a.order as u64);
    let prime_squared = factors.len() == 1 && factors[0].1 == 2;
    if !prime_squared || c.a.abelian {
        pass()
    } else {
        fail(format!("order {} is a prime square but the group is nonabelian", c.a.order), None)
    }
}

fn check_nilpotent_groups_have_all_divisor_subgroups(c: &Ctx) -> Outcome {
    if !c.a.nilpotent {
        return pass();
    }
    let subgroups = match &c.a.subgroups {
        Some(list) => list,
        None => return policy("subgroup scan cap blocks the divisor-subgroup test"),
    };
    let sizes: HashSet<usize> = subgroups.iter().map(|h| h.len()).collect();
    for d in 1..=c.a.order {
        if c.a.order.is_multiple_of(d) && !sizes.contains(&d) {
            return fail(format!("nilpotent but no subgroup of order {d}"), Some(json!(d)));
        }
    }
    pass()
}

fn check_searches_agree_with_oracles(c: &Ctx) -> Outcome {
    let alpha = need!(c.a.alpha());
    let gamma = need!(c.a.gamma());
    let g = c.group();
    let (oracle_alpha, oracle_alpha_witness) = match oracle_determining_number(g, c.caps) {
        Ok(v) => v,
        Err(e) => return skip_for(&e),
    };
    if oracle_alpha != alpha.value || oracle_alpha_witness != alpha.witness {
        return fail(
            format!("pruned alpha = {} but oracle alpha = {oracle_alpha}", alpha.value),
            Some(json!({
                "search": c.labels(&alpha.witness),
                "oracle": c.labels(&oracle_alpha_witness),
            })),
        );
    }
    let (oracle_gamma, oracle_gamma_witness) = match oracle_generating_number(g, c.caps) {
        Ok(v) => v,
        Err(e) => return skip_for(&e),
    };
    if oracle_gamma != gamma.value || oracle_gamma_witness != gamma.witness {
        return fail(
            format!("pruned gamma = {} but oracle gamma = {oracle_gamma}", gamma.value),
            Some(json!({
                "search": c.labels(&gamma.witness),
                "oracle": c.labels(&oracle_gamma_witness),
            })),
        );
    }
    pass()
}

fn check_aut_search_agrees_with_permutation_scan(c: &Ctx) -> Outcome {
    if c.a.order > SCAN_AGREEMENT_MAX_ORDER {
        return policy(format!(
            "permutation scan sampled only up to order {SCAN_AGREEMENT_MAX_ORDER}"
        ));
    }
    let scanned = match exhaustive_automorphism_scan(c.group(), SCAN_AGREEMENT_MAX_ORDER) {
        Ok(v) => v,
        Err(e) => return skip_for(&e),
    };
    if !c.a.aut.complete {
        return fail("pool-pruned search left a tiny automorphism group incomplete", None);
    }
    let mut scanned_images: Vec<&[u32]> = scanned.iter().map(|a| a.image()).collect();
    let mut search_images: Vec<&[u32]> = c.a.aut.elements.iter().map(|a| a.image()).collect();
    scanned_images.sort();
    search_images.sort();
    if scanned_images == search_images {
        pass()
    } else {
        fail(
            format!(
                "scan found {} automorphisms, pruned search found {}",
                scanned_images.len(),
                search_images.len()
            ),
            None,
        )
    }
}

fn check_fixing_automorphism_below_prime_index_subgroups(c: &Ctx) -> Outcome {
    let g = c.group();
    let subgroups = match &c.a.subgroups {
        Some(list) => list,
        None => return policy("subgroup scan cap blocks the prime-index configuration search"),
    };
    let center = g.center();
    let mut config = None;
    'outer: for h in subgroups {
        if h.len() == c.a.order {
            continue;
        }
        let index = c.a.order / h.len();
        if !is_prime(index as u64) || !g.is_normal(h) {
            continue;
        }
        for z in h.iter() {
            if z != 0 && center.contains(z) && g.element_order(z) == index {
                config = Some((h, z, index));
                break 'outer;
            }
        }
    }
    let (m, z, _p) = match config {
        Some(v) => v,
        None => {
            return policy("no prime-index normal subgroup carries a central element of the index order")
        }
    };
    // Same coset, same twist: the two representatives must build one map.
    let a1 = (0..c.a.order).find(|&x| !m.contains(x)).expect("proper subgroup has a complement element");
    let m1 = m.iter().find(|&x| x != 0).expect("the twist witnesses a nontrivial subgroup");
    let a2 = g.mul(a1, m1);
    let sigma1 = match index_p_fixing_automorphism(g, m, a1, z) {
        Ok(s) => s,
        Err(e) => return fail(format!("construction refused an eligible configuration: {e}"), None),
    };
    let sigma2 = match index_p_fixing_automorphism(g, m, a2, z) {
        Ok(s) => s,
        Err(e) => return fail(format!("construction refused the second representative: {e}"), None),
    };
    if sigma1 != sigma2 {
        return fail(
            "coset representatives with one twist built different maps",
            Some(json!({ "first": sigma1, "second": sigma2 })),
        );
    }
    if !sigma1.fixes(m) {
        return fail("the fixing automorphism moved its subgroup", Some(json!(sigma1)));
    }
    if sigma1.is_identity() {
        return fail("the fixing automorphism collapsed to the identity", None);
    }
    pass()
}

fn factor_alpha_max(c: &Ctx) -> Result<usize, Outcome> {
    let dp = c.entry.built.product().expect("caller checked the product form");
    let mut max = 0;
    for f in &dp.factors {
        match determining_number(f, c.caps) {
            Ok(a) => max = max.max(a.value),
            Err(e) => return Err(skip_for(&e)),
        }
    }
    Ok(max)
}

fn pairwise_coprime(c: &Ctx) -> bool {
    match c.entry.built.product() {
        None => false,
        Some(dp) => {
            let orders: Vec<usize> = dp.factors.iter().map(|f| f.order()).collect();
            orders.iter().enumerate().all(|(i, &a)| {
                orders[i + 1..].iter().all(|&b| {
                    let (mut x, mut y) = (a, b);
                    while y != 0 {
                        (x, y) = (y, x % y);
                    }
                    x == 1
                })
            })
        }
    }
}

fn check_product_alpha_dominates_factors(c: &Ctx) -> Outcome {
    if c.entry.built.product().is_none() {
        return pass();
    }
    let alpha = need!(c.a.alpha());
    let max = need!(factor_alpha_max(c));
    if alpha.value >= max {
        pass()
    } else {
        fail(format!("product alpha = {} below the factor maximum {max}", alpha.value), None)
    }
}

fn check_coprime_product_alpha_is_factor_max(c: &Ctx) -> Outcome {
    if !pairwise_coprime(c) {
        return pass();
    }
    let alpha = need!(c.a.alpha());
    let max = need!(factor_alpha_max(c));
    if alpha.value == max {
        pass()
    } else {
        fail(
            format!("coprime factors, alpha = {} != factor maximum {max}", alpha.value),
            None,
        )
    }
}

fn check_witness_matrix_rows_determine_factors(c: &Ctx) -> Outcome {
    let dp = match c.entry.built.product() {
        Some(dp) => dp,
        None => return pass(),
    };
    let alpha = need!(c.a.alpha());
    let indices: Vec<usize> = alpha.witness.iter().collect();
    match row_criterion_check(dp, &indices, c.caps) {
        Ok(report) if report.rows.iter().all(|&r| r) => pass(),
        Ok(report) => fail(
            "a row of the witness characteristic matrix is not determining in its factor",
            Some(json!({ "rows": report.rows, "witness": c.labels(&alpha.witness) })),
        ),
        Err(e) => skip_for(&e),
    }
}

fn check_matrix_enumeration_matches_direct_search(c: &Ctx) -> Outcome {
    if !pairwise_coprime(c) || c.a.info_only {
        return pass();
    }
    let dp = c.entry.built.product().expect("coprime implies a product entry");
    let matrix = match bidwell_aut_group(dp, false, c.caps) {
        Ok(m) => m,
        Err(e) => return skip_for(&e),
    };
    if matrix.rejected != 0 {
        return fail(
            format!("coprime factors rejected {} candidate matrices", matrix.rejected),
            None,
        );
    }
    let direct = product_aut_direct(dp, c.caps);
    if !direct.complete || !matrix.aut.complete {
        return policy("one enumeration stayed incomplete under the caps");
    }
    if matrix.aut.order() != direct.order() {
        return fail(
            format!("matrix form found {:?}, direct search {:?}", matrix.aut.order(), direct.order()),
            None,
        );
    }
    if automorphism_image_set(&matrix.aut.elements) == automorphism_image_set(&direct.elements) {
        pass()
    } else {
        fail("equal counts but different automorphism sets", None)
    }
}

fn check_tight_cover_is_deg(c: &Ctx) -> Outcome {
    let cover = match &c.a.cover {
        None if c.a.info_only => return policy("info-only entry: no cover is built"),
        None => return policy(format!("cover sampling stops at base order {COVER_SAMPLE_MAX_BASE}")),
        Some(Err(e)) => return skip_for(e),
        Some(Ok(cd)) => cd,
    };
    let alpha = match &cover.alpha {
        Ok(a) => a,
        Err(e) => return skip_for(e),
    };
    let gamma = match &cover.gamma {
        Ok(g) => g,
        Err(e) => return skip_for(e),
    };
    if alpha.value == gamma.value {
        pass()
    } else {
        fail(
            format!(
                "cover {} has alpha = {} != gamma = {}",
                cover.tc.cover.group.descriptor(),
                alpha.value,
                gamma.value
            ),
            None,
        )
    }
}

type Check = (&'static str, fn(&Ctx) -> Outcome);

const CHECKS: &[Check] = &[
    ("alpha_zero_only_for_order_two", check_alpha_zero_only_for_order_two),
    (
        "alpha_one_only_for_cyclic_of_order_at_least_three",
        check_alpha_one_only_for_cyclic_of_order_at_least_three,
    ),
    ("nonabelian_alpha_at_least_two", check_nonabelian_alpha_at_least_two),
    ("generating_pairs_force_determining_pairs", check_generating_pairs_force_determining_pairs),
    ("alpha_at_most_gamma", check_alpha_at_most_gamma),
    ("gamma_at_most_chi", check_gamma_at_most_chi),
    ("nilpotent_groups_are_deg", check_nilpotent_groups_are_deg),
    ("simple_groups_are_deg", check_simple_groups_are_deg),
    ("alpha_chi_equality_structure", check_alpha_chi_equality_structure),
    ("aut_order_bound_and_equality_cases", check_aut_order_bound_and_equality_cases),
    ("witness_span_gamma_equals_alpha", check_witness_span_gamma_equals_alpha),
    ("witness_centralizer_equals_center", check_witness_centralizer_equals_center),
    ("witness_images_remain_determining", check_witness_images_remain_determining),
    (
        "inner_automorphism_count_is_center_index",
        check_inner_automorphism_count_is_center_index,
    ),
    ("prime_squared_orders_are_abelian", check_prime_squared_orders_are_abelian),
    (
        "nilpotent_groups_have_all_divisor_subgroups",
        check_nilpotent_groups_have_all_divisor_subgroups,
    ),
    ("searches_agree_with_oracles", check_searches_agree_with_oracles),
    ("aut_search_agrees_with_permutation_scan", check_aut_search_agrees_with_permutation_scan),
    (
        "fixing_automorphism_below_prime_index_subgroups",
        check_fixing_automorphism_below_prime_index_subgroups,
    ),
    ("product_alpha_dominates_factors", check_product_alpha_dominates_factors),
    ("coprime_product_alpha_is_factor_max", check_coprime_product_alpha_is_factor_max),
    ("witness_matrix_rows_determine_factors", check_witness_matrix_rows_determine_factors),
    (
        "matrix_enumeration_matches_direct_search",
        check_matrix_enumeration_matches_direct_search,
    ),
    ("tight_cover_is_deg", check_tight_cover_is_deg),
];

const COVER_SEPARATION_CHECK: &str = "tight_covers_separate_small_bases";

fn entry_from(descriptor: &str, check: &'static str, outcome: Outcome, millis: u128) -> SuiteEntry {
    SuiteEntry {
        descriptor: descriptor.to_string(),
        check,
        verdict: outcome.verdict,
        skip_kind: outcome.skip_kind,
        detail: outcome.detail,
        witness: outcome.witness,
        millis,
    }
}

/// Per-group work: analysis plus every per-group check, timed per entry.
fn run_group(entry: &CatalogEntry, caps: &Caps) -> (GroupAnalysis, Vec<SuiteEntry>) {
    let analysis = analyze(entry, caps);
    let ctx = Ctx { entry, a: &analysis, caps };
    let mut out = Vec::with_capacity(CHECKS.len());
    for (name, check) in CHECKS {
        let start = Instant::now();
        let outcome = check(&ctx);
        out.push(entry_from(&entry.descriptor, name, outcome, start.elapsed().as_millis()));
    }
    (analysis, out)
}

/// The cross-group pass: non-isomorphic sampled bases must produce
/// non-isomorphic covers. One entry per catalog group.
fn cover_separation_entries(
    entries: &[CatalogEntry],
    analyses: &[GroupAnalysis],
    caps: &Caps,
) -> Vec<SuiteEntry> {
    let eligible: Vec<usize> = (0..entries.len())
        .filter(|&i| matches!(&analyses[i].cover, Some(Ok(_))))
        .collect();
    entries
        .iter()
        .enumerate()
        .map(|(i, entry)| {
            let start = Instant::now();
            let outcome = match &analyses[i].cover {
                None if analyses[i].info_only => policy("info-only entry: no cover is built"),
                None => policy(format!(
                    "cover sampling stops at base order {COVER_SAMPLE_MAX_BASE}"
                )),
                Some(Err(e)) => skip_for(e),
                Some(Ok(cd)) => {
                    let mut outcome = pass();
                    for &j in &eligible {
                        if j == i {
                            continue;
                        }
                        let other = match &analyses[j].cover {
                            Some(Ok(cd)) => cd,
                            _ => unreachable!("eligible indices carry built covers"),
                        };
                        let bases_isomorphic = match isomorphism(
                            entry.built.group(),
                            entries[j].built.group(),
                            caps,
                        ) {
                            Ok(map) => map.is_some(),
                            Err(e) => {
                                outcome = skip_for(&e);
                                break;
                            }
                        };
                        if bases_isomorphic {
                            continue;
                        }
                        match isomorphism(&cd.tc.cover.group, &other.tc.cover.group, caps) {
                            Ok(None) => {}
                            Ok(Some(_)) => {
                                outcome = fail(
                                    format!(
                                        "covers of non-isomorphic bases {} and {} are isomorphic",
                                        entry.descriptor, entries[j].descriptor
                                    ),
                                    Some(json!([entry.descriptor, entries[j].descriptor])),
                                );
                                break;
                            }
                            Err(e) => {
                                outcome = skip_for(&e);
                                break;
                            }
                        }
                    }
                    outcome
                }
            };
            entry_from(&entry.descriptor, COVER_SEPARATION_CHECK, outcome, start.elapsed().as_millis())
        })
        .collect()
}

/// One catalog entry's finished work, parked until aggregation.
type Slot = Mutex<Option<(GroupAnalysis, Vec<SuiteEntry>)>>;

/// Run every check over the catalog. Groups are processed concurrently up to
/// `workers` threads; the report is aggregated in catalog order.
pub fn theorem_suite(entries: &[CatalogEntry], caps: &Caps, workers: usize) -> SuiteReport {
    let started = Instant::now();
    let slots: Vec<Slot> = entries.iter().map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..workers.max(1).min(entries.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= entries.len() {
                    break;
                }
                let result = run_group(&entries[i], caps);
                *slots[i].lock().expect("no worker panicked holding a result slot") = Some(result);
            });
        }
    });
    let mut analyses = Vec::with_capacity(entries.len());
    let mut per_group = Vec::with_capacity(entries.len());
    for slot in slots {
        let (analysis, group_entries) =
            slot.into_inner().expect("result mutex is free after the scope").expect("every slot is filled");
        analyses.push(analysis);
        per_group.push(group_entries);
    }
    let separation = cover_separation_entries(entries, &analyses, caps);

    let mut all = Vec::with_capacity(entries.len() * (CHECKS.len() + 1));
    for (group_entries, separation_entry) in per_group.into_iter().zip(separation) {
        all.extend(group_entries);
        all.push(separation_entry);
    }

    let mut report = SuiteReport {
        groups: entries.len(),
        pass: 0,
        fail: 0,
        policy_skips: 0,
        resource_skips: 0,
        nodes: analyses.iter().map(|a| a.nodes).sum(),
        millis: started.elapsed().as_millis(),
        entries: all,
    };
    for e in &report.entries {
        match (e.verdict, e.skip_kind) {
            (Verdict::Pass, _) => report.pass += 1,
            (Verdict::Fail, _) => report.fail += 1,
            (Verdict::Skip, Some(SkipKind::Resource)) => report.resource_skips += 1,
            (Verdict::Skip, _) => report.policy_skips += 1,
        }
    }
    report
}
