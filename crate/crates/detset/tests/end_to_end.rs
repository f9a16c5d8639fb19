//! Consumer's-eye usage of the public API: expression in, numbers and
//! witness objects out, suite verdict clean.

use detset::catalog::{build_catalog, CatalogSpec};
use detset::constructions::{tight_cover, tight_cover_recover};
use detset::detgen::deg_report;
use detset::expr::{evaluate, parse_group_expr};
use detset::suite::theorem_suite;
use detset::{aut_group, determining_number, generating_number, Caps, FiniteGroup};

fn caps() -> Caps {
    Caps::default()
}

fn group(text: &str) -> FiniteGroup {
    evaluate(&parse_group_expr(text).expect("parses"), &caps()).expect("builds").into_group()
}

#[test]
fn known_invariant_pairs_reproduce_from_expressions() {
    let expected = [
        ("Z(2)", 0, 1),
        ("Z(3)", 1, 1),
        ("Z(6)", 1, 1),
        ("EA(2,2)", 2, 2),
        ("EA(2,3)", 3, 3),
        ("Z(4) x Z(2)", 2, 2),
        ("D(4)", 2, 2),
        ("Q(8)", 2, 2),
        ("S(3)", 2, 2),
    ];
    let caps = caps();
    for (text, alpha, gamma) in expected {
        let g = group(text);
        assert_eq!(g.descriptor(), text, "descriptor round trip");
        let report = deg_report(&g, &caps).expect("within budget");
        assert_eq!((report.alpha.value, report.gamma.value), (alpha, gamma), "{text}");
    }
}

#[test]
fn witnesses_certify_themselves() {
    let caps = caps();
    let g = group("D(6)");
    let alpha = determining_number(&g, &caps).expect("within budget");
    assert!(detset::detgen::is_determining_set(&g, &alpha.witness, &caps).expect("checks"));
    let gamma = generating_number(&g, &caps).expect("within budget");
    assert!(detset::detgen::is_generating_set(&g, &gamma.witness));
    let aut = aut_group(&g, &caps);
    let order = aut.order().expect("order 12 enumerates fully");
    assert!(aut.elements.iter().all(|a| alpha
        .witness
        .iter()
        .any(|e| a.apply(e) != e)
        || a.is_identity()));
    assert!(order >= 2);
}

#[test]
fn a_cover_round_trips_its_base() {
    let caps = caps();
    let base = group("S(3)");
    let tc = tight_cover(&base, &caps).expect("cover fits");
    let deg = deg_report(&tc.cover.group, &caps).expect("within budget");
    assert!(deg.is_deg());
    let recovered = tight_cover_recover(&tc, &caps).expect("base recovers");
    assert_eq!(recovered.order(), base.order());
}

#[test]
fn tiny_catalog_suite_is_clean() {
    let caps = caps();
    let entries = build_catalog(
        &CatalogSpec { max_order: 5, families: None, include_products: true },
        &caps,
    )
    .expect("builds");
    let report = theorem_suite(&entries, &caps, 2);
    assert_eq!(report.exit_code(), 0, "{:#?}", report.entries);
    assert_eq!(report.fail, 0);
    assert_eq!(report.groups, entries.len());
}
