//! Acceptance gate: the structural claims the project exists to check, each
//! verified end to end against the default catalog and constructions. One
//! PASS line prints per criterion; a violation panics with the offending
//! group and values.

use std::process::Command;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use detset::aut::{aut_group, exhaustive_automorphism_scan, AutGroup};
use detset::catalog::default_catalog;
use detset::constructions::{
    index_p_fixing_automorphism, odd_index_abelian_automorphism, shift_determining_set,
    tight_cover, tight_cover_recover,
};
use detset::detgen::{
    deg_report, determining_number, generating_number, oracle_determining_number,
    oracle_generating_number, Alpha, Gamma,
};
use detset::group::{abelian, cyclic, dihedral, elementary_abelian, is_prime, quaternion};
use detset::product::{automorphism_image_set, bidwell_aut_group};
use detset::triangular::{diagonal_quotient_bound, verify_determining_pair, TriangularSpec};
use detset::{Caps, FiniteGroup, Subset};

fn caps() -> Caps {
    Caps::default()
}

struct Analyzed {
    descriptor: String,
    group: FiniteGroup,
    alpha: Alpha,
    gamma: Gamma,
    aut: AutGroup,
}

/// Every non-info-only default catalog entry, fully analyzed once and shared
/// by the catalog-wide criteria.
fn analyzed() -> &'static [Analyzed] {
    static CELL: OnceLock<Vec<Analyzed>> = OnceLock::new();
    CELL.get_or_init(|| {
        let caps = caps();
        default_catalog(&caps)
            .expect("default catalog builds")
            .into_iter()
            .filter(|e| !e.info_only)
            .map(|e| {
                let group = e.built.into_group();
                let alpha = determining_number(&group, &caps)
                    .unwrap_or_else(|err| panic!("alpha({}): {err}", e.descriptor));
                let gamma = generating_number(&group, &caps)
                    .unwrap_or_else(|err| panic!("gamma({}): {err}", e.descriptor));
                let aut = aut_group(&group, &caps);
                Analyzed { descriptor: e.descriptor, group, alpha, gamma, aut }
            })
            .collect()
    })
}

#[test]
fn a01_elementary_abelian_determining_number_equals_the_rank() {
    let caps = caps();
    let mut slowest = Duration::ZERO;
    for (p, k) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
        let g = elementary_abelian(p, k, caps.order_cap).expect("builds");
        let started = Instant::now();
        let alpha = determining_number(&g, &caps).expect("within budget");
        let took = started.elapsed();
        assert_eq!(alpha.value, k as usize, "alpha({}) != rank", g.descriptor());
        assert!(took < Duration::from_secs(30), "{} took {took:?}", g.descriptor());
        slowest = slowest.max(took);
    }
    println!(
        "ACCEPTANCE a01 PASS: alpha = rank on 6 elementary abelian instances, slowest {slowest:?}"
    );
}

#[test]
fn a02_alpha_zero_and_one_classify_exactly_across_the_catalog() {
    let mut cyclics = 0;
    for a in analyzed() {
        // Up to isomorphism: S(2) names the same order-2 group as Z(2).
        let expect_zero = a.group.order() == 2;
        assert_eq!(
            a.alpha.value == 0,
            expect_zero,
            "{}: alpha {} breaks the alpha-0 classification",
            a.descriptor,
            a.alpha.value
        );
        let cyclic_large = a.group.is_cyclic() && a.group.order() >= 3;
        assert_eq!(
            a.alpha.value == 1,
            cyclic_large,
            "{}: alpha {} breaks the alpha-1 classification",
            a.descriptor,
            a.alpha.value
        );
        cyclics += usize::from(cyclic_large);
    }
    println!(
        "ACCEPTANCE a02 PASS: over {} groups alpha = 0 only on the order-2 group; alpha = 1 exactly on {} cyclic groups of order >= 3",
        analyzed().len(),
        cyclics
    );
}

#[test]
fn a03_nilpotent_and_simple_catalog_groups_match_alpha_with_gamma() {
    let mut nilpotent = 0;
    let mut simple = 0;
    for a in analyzed() {
        let n = a.group.order();
        if a.group.is_nilpotent() && n >= 3 {
            nilpotent += 1;
            assert_eq!(
                a.alpha.value, a.gamma.value,
                "nilpotent {} of order {n} is not DEG",
                a.descriptor
            );
        }
        let simple_member =
            (a.group.is_cyclic() && is_prime(n as u64) && n >= 3) || a.descriptor == "A(5)";
        if simple_member {
            simple += 1;
            assert_eq!(a.alpha.value, a.gamma.value, "simple {} is not DEG", a.descriptor);
        }
        // Up to isomorphism the order-2 group is the only gamma <= 2 exception.
        if a.gamma.value <= 2 && n != 2 {
            assert_eq!(
                a.alpha.value, a.gamma.value,
                "{} has gamma <= 2 but is not DEG; only the order-2 group may do that",
                a.descriptor
            );
        }
        if n == 2 {
            assert_eq!((a.alpha.value, a.gamma.value), (0, 1), "{}", a.descriptor);
        }
    }
    assert!(analyzed().iter().any(|a| a.descriptor == "A(5)"), "A(5) must be analyzed");
    println!(
        "ACCEPTANCE a03 PASS: {nilpotent} nilpotent and {simple} simple catalog groups are DEG; the order-2 group is the unique gamma<=2 exception"
    );
}

#[test]
fn a04_rank_two_prime_power_abelian_groups_have_alpha_two() {
    let caps = caps();
    let mut count = 0;
    for p in [2u64, 3] {
        for k in 1..=3u32 {
            for l in k..=3u32 {
                let dp = abelian(&[p.pow(k), p.pow(l)], caps.order_cap).expect("builds");
                let alpha = determining_number(&dp.group, &caps).expect("within budget");
                assert_eq!(
                    alpha.value,
                    2,
                    "alpha({}) = {} != 2",
                    dp.group.descriptor(),
                    alpha.value
                );
                count += 1;
            }
        }
    }
    println!(
        "ACCEPTANCE a04 PASS: alpha = 2 on all {count} products of two p-power cyclic factors, p in {{2,3}}, exponents <= 3"
    );
}

#[test]
fn a05_matrix_form_automorphisms_match_brute_force_on_sample_products() {
    let caps = caps();
    let z = |n| cyclic(n, caps.order_cap).expect("builds");
    let s3 = detset::group::symmetric(3, caps.order_cap).expect("builds");
    let samples: [(Vec<FiniteGroup>, usize); 3] = [
        (vec![z(2), z(4)], 8),
        (vec![z(3), s3], 12),
        (vec![z(3), z(5)], 8),
    ];
    for (factors, expected) in samples {
        let dp = detset::group::direct_product(factors, caps.order_cap).expect("builds");
        let bidwell = bidwell_aut_group(&dp, true, &caps).expect("factors enumerate");
        let brute = aut_group(&dp.group, &caps);
        assert!(brute.complete);
        assert_eq!(bidwell.rejected, 0, "{}: rejected candidates", dp.group.descriptor());
        assert_eq!(
            bidwell.aut.order(),
            Some(expected),
            "{}: matrix count",
            dp.group.descriptor()
        );
        assert_eq!(brute.order(), Some(expected), "{}: brute count", dp.group.descriptor());
        assert_eq!(
            automorphism_image_set(&bidwell.aut.elements),
            automorphism_image_set(&brute.elements),
            "{}: the two automorphism sets differ as functions",
            dp.group.descriptor()
        );
    }
    println!(
        "ACCEPTANCE a05 PASS: matrix-form enumeration equals brute force as a set on Z(2)xZ(4), Z(3)xS(3), Z(3)xZ(5) (8/12/8 maps)"
    );
}

#[test]
fn a06_alpha_gamma_chi_chain_and_factorial_aut_bound_hold_catalog_wide() {
    let mut equality: Vec<&str> = Vec::new();
    for a in analyzed() {
        let n = a.group.order();
        let chi = a.group.chi();
        assert!(
            a.alpha.value <= a.gamma.value && a.gamma.value <= chi,
            "{}: alpha {} gamma {} chi {}",
            a.descriptor,
            a.alpha.value,
            a.gamma.value,
            chi
        );
        // (n-1)(n-2)...(n-m): image choices for n-1 non-fixed points of an
        // automorphism determined by where a determining set of size m goes.
        let bound: u128 = (0..a.alpha.value).map(|i| (n - 1 - i) as u128).product();
        let expect_equality = (a.group.is_cyclic() && is_prime(n as u64))
            || (n == 4 && (0..n).all(|x| a.group.element_order(x) <= 2));
        match a.aut.order() {
            Some(order) => {
                assert!(
                    (order as u128) <= bound,
                    "{}: |Aut| = {order} over the bound {bound}",
                    a.descriptor
                );
                assert_eq!(
                    (order as u128) == bound,
                    expect_equality,
                    "{}: bound equality off ({order} vs {bound})",
                    a.descriptor
                );
                if order as u128 == bound {
                    equality.push(a.descriptor.as_str());
                }
            }
            None => {
                assert!(
                    (a.aut.order_lower_bound as u128) <= bound,
                    "{}: certified lower bound exceeds the factorial bound",
                    a.descriptor
                );
                assert!(
                    !expect_equality,
                    "{}: equality expected but the enumeration is incomplete",
                    a.descriptor
                );
            }
        }
    }
    assert!(equality.contains(&"EA(2,2)"));
    assert!(equality.contains(&"Z(2) x Z(2)"));
    assert!(equality.contains(&"Z(7)"));
    println!(
        "ACCEPTANCE a06 PASS: alpha <= gamma <= chi on {} groups; factorial bound tight exactly on prime cyclics and the Klein four-group ({} descriptors)",
        analyzed().len(),
        equality.len()
    );
}

#[test]
fn a07_minimum_witnesses_span_alpha_matched_subgroups_and_share_the_center() {
    let caps = caps();
    for a in analyzed() {
        let members: Vec<usize> = a.alpha.witness.iter().collect();
        let span = a.group.closure(&members);
        let (sub, _) = a.group.promote(&span).expect("closures are subgroups");
        let sub_gamma = generating_number(&sub, &caps).expect("within budget");
        assert_eq!(
            a.alpha.value, sub_gamma.value,
            "{}: alpha {} but the witness spans a subgroup of generating number {}",
            a.descriptor, a.alpha.value, sub_gamma.value
        );
        assert_eq!(
            a.group.centralizer(&members),
            a.group.center(),
            "{}: the witness centralizer is not the center",
            a.descriptor
        );
    }
    println!(
        "ACCEPTANCE a07 PASS: on {} groups each minimum witness generates an alpha-matched subgroup and centralizes exactly the center",
        analyzed().len()
    );
}

#[test]
fn a08_searches_agree_with_exhaustive_oracles_on_small_groups() {
    let caps = caps();
    let mut oracle_checked = 0;
    let mut scan_checked = 0;
    for a in analyzed() {
        let n = a.group.order();
        if n <= caps.oracle_cap {
            let (oa, ow) = oracle_determining_number(&a.group, &caps).expect("oracle runs");
            assert_eq!((oa, &ow), (a.alpha.value, &a.alpha.witness), "{}: alpha", a.descriptor);
            let (ga, gw) = oracle_generating_number(&a.group, &caps).expect("oracle runs");
            assert_eq!((ga, &gw), (a.gamma.value, &a.gamma.witness), "{}: gamma", a.descriptor);
            oracle_checked += 1;
        }
        if n <= 10 {
            let scanned = exhaustive_automorphism_scan(&a.group, 10).expect("within the cap");
            assert_eq!(
                automorphism_image_set(&scanned),
                automorphism_image_set(&a.aut.elements),
                "{}: scan and search disagree",
                a.descriptor
            );
            scan_checked += 1;
        }
    }
    assert!(oracle_checked > 0 && scan_checked > 0);
    println!(
        "ACCEPTANCE a08 PASS: searches match the oracles on {oracle_checked} groups (order <= {}) and the bijection scan on {scan_checked} (order <= 10)",
        caps.oracle_cap
    );
}

#[test]
fn a09_triangular_determining_pair_certificates_verify() {
    let caps = caps();
    let started = Instant::now();

    let v = verify_determining_pair(5, &caps).expect("certificate legs hold");
    assert_eq!(v.group_order, 2000);
    assert_eq!(v.centralizer_dimension, 1);
    assert!(v.duality_excluded);
    assert!(v.nonabelian);
    assert_eq!(v.alpha, 2);
    assert!(v.conditional, "the alpha value rests on the structural classification");
    assert_eq!(v.gamma_lower_bound, 2);
    let c = v.concrete.expect("the order-2000 group fits the cap");
    assert_eq!(c.group_order, 2000);
    assert_eq!(c.rejected, 0, "every structural map must verify concretely");
    assert_eq!(c.maps_verified, 2 * c.q_count);
    assert_eq!(c.pair_fixing_distinct, 1, "only the identity fixes the pair");
    assert!(c.pair_span_order < 2000, "the pair determines without generating");

    let quot = diagonal_quotient_bound(&TriangularSpec { n: 3, p: 5, det_one: true }, &caps)
        .expect("bound materializes");
    assert!(quot.verified_on_group);
    assert_eq!(quot.bound, 2);

    for p in [7u64, 11] {
        let v = verify_determining_pair(p, &caps).expect("certificate legs hold");
        assert_eq!(v.centralizer_dimension, 1, "p = {p}");
        assert!(v.duality_excluded, "p = {p}");
        assert!(v.nonabelian, "p = {p}");
        assert_eq!(v.gamma_lower_bound, (p - 3) as usize, "p = {p}");
        assert!(v.conditional);
        assert!(v.concrete.is_none(), "p = {p}: too large for the concrete scan by default");
    }
    let took = started.elapsed();
    assert!(took < Duration::from_secs(60), "triangular suite took {took:?}");
    println!(
        "ACCEPTANCE a09 PASS: order-2000 pair certificate concrete and conditional alpha = 2 reported; p = 7, 11 formula-level in {took:?} total"
    );
}

#[test]
fn a10_constructed_witness_automorphisms_and_tight_covers_verify() {
    let caps = caps();

    // Prime-index coset twists.
    let z4 = cyclic(4, caps.order_cap).expect("builds");
    let d4 = dihedral(4, caps.order_cap).expect("builds");
    let q8 = quaternion(caps.order_cap).expect("builds");
    for g in [&z4, &d4, &q8] {
        let m = g.closure(&[if g.order() == 4 { 2 } else { 1 }]);
        assert_eq!(g.order() / m.len(), 2);
        let a = (0..g.order()).find(|&x| !m.contains(x)).expect("proper subgroup");
        let z = m
            .iter()
            .find(|&x| g.center().contains(x) && g.element_order(x) == 2)
            .expect("central involution");
        let sigma = index_p_fixing_automorphism(g, &m, a, z).expect("construction verifies");
        assert!(sigma.fixes(&m) && !sigma.is_identity(), "{}", g.descriptor());
    }

    // Inversion away from an odd-index subgroup.
    let z3 = cyclic(3, caps.order_cap).expect("builds");
    let sigma = odd_index_abelian_automorphism(&z3, &z3.closure(&[])).expect("verifies");
    assert_eq!(sigma.image(), &[0, 2, 1]);
    let z15 = cyclic(15, caps.order_cap).expect("builds");
    let m = z15.closure(&[3]);
    let sigma = odd_index_abelian_automorphism(&z15, &m).expect("verifies");
    assert!(sigma.fixes(&m) && !sigma.is_identity() && sigma.order() == 2);

    // Shifting a witness across the involution enlarges its span.
    let z6 = cyclic(6, caps.order_cap).expect("builds");
    let shifted = shift_determining_set(&z6, 3, &Subset::from_indices(&[2]), &caps)
        .expect("shift verifies");
    assert_eq!(shifted.labels(&z6), vec!["5"]);
    assert_eq!(z6.closure(&[5]).len(), 6);

    // Tight covers: build, check the numbers coincide, recover the base.
    for base in [
        cyclic(2, caps.order_cap).expect("builds"),
        cyclic(3, caps.order_cap).expect("builds"),
        detset::group::symmetric(3, caps.order_cap).expect("builds"),
    ] {
        let tc = tight_cover(&base, &caps).expect("cover fits the cap");
        let deg = deg_report(&tc.cover.group, &caps).expect("within budget");
        assert!(
            deg.is_deg(),
            "cover of {}: alpha {} != gamma {}",
            base.descriptor(),
            deg.alpha.value,
            deg.gamma.value
        );
        assert_eq!(deg.gamma.value, tc.l, "cover generating number matches the attached rank");
        tight_cover_recover(&tc, &caps).expect("quotient returns the base up to isomorphism");
    }

    println!(
        "ACCEPTANCE a10 PASS: coset twists on Z(4)/D(4)/Q(8), inversions on Z(3)/Z(15), the Z(6) witness shift to {{5}}, and three tight covers all verify"
    );
}

#[test]
fn a11_full_default_verify_is_clean_within_budget() {
    let started = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_detset"))
        .args(["verify", "--format", "json"])
        .env_remove("DETSET_CAPS")
        .output()
        .expect("binary runs");
    let took = started.elapsed();
    let stdout = String::from_utf8(out.stdout).expect("utf-8");
    assert_eq!(
        out.status.code(),
        Some(0),
        "verify exited nonzero:\n{}\n{}",
        stdout.chars().take(2000).collect::<String>(),
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(took < Duration::from_secs(600), "verify took {took:?}");
    let v: serde_json::Value = serde_json::from_str(&stdout).expect("json report");
    let entries = v["suite_entries"].as_array().expect("entries");
    assert!(!entries.is_empty());
    assert!(entries.iter().all(|e| e["verdict"] != "fail"));
    assert!(entries.iter().all(|e| e["skip_kind"] != "resource"));
    println!(
        "ACCEPTANCE a11 PASS: default verify ran {} checks clean in {took:?}",
        entries.len()
    );
}
