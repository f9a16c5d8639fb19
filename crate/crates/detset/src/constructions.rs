//! Hand-built witness objects: automorphisms assembled from subgroup data,
//! determining-set shifts along an involution, and tight covers (a slightly
//! larger group a base embeds into whose determining and generating numbers
//! coincide).

use crate::aut::{isomorphism, Automorphism};
use crate::caps::Caps;
use crate::detgen::{generating_number, is_determining_set};
use crate::error::{Error, Result};
use crate::group::{
    direct_product, elementary_abelian, is_prime, DirectProduct, FiniteGroup, GroupHom, Subset,
};

/// Automorphism of `G` fixing a normal prime-index subgroup `M` pointwise:
/// with coset representative `a` and a central `z` in `M` of order equal to
/// the index, the map sends `a^i x` to `(az)^i x`.
///
/// Each precondition failure is reported separately. The returned map is
/// verified as a nontrivial automorphism that fixes `M` pointwise.
pub fn index_p_fixing_automorphism(
    g: &FiniteGroup,
    m: &Subset,
    a: usize,
    z: usize,
) -> Result<Automorphism> {
    const OP: &str = "index_p_fixing_automorphism";
    let n = g.order();
    let members: Vec<usize> = m.iter().collect();
    if g.closure(&members) != *m {
        return Err(Error::pre(OP, "the fixed set is not a subgroup"));
    }
    if !g.is_normal(m) {
        return Err(Error::pre(OP, "the subgroup is not normal"));
    }
    let p = n / m.len();
    if !is_prime(p as u64) {
        return Err(Error::pre(OP, format!("subgroup index {p} is not prime")));
    }
    if m.contains(a) {
        return Err(Error::pre(OP, "the coset representative lies in the subgroup"));
    }
    if !m.contains(z) {
        return Err(Error::pre(OP, "the twisting element lies outside the subgroup"));
    }
    if !g.center().contains(z) {
        return Err(Error::pre(OP, "the twisting element is not central"));
    }
    if g.element_order(z) != p {
        return Err(Error::pre(OP, format!("the twisting element must have order {p}")));
    }

    let az = g.mul(a, z);
    let mut image = vec![u32::MAX; n];
    for i in 0..p {
        let src = g.pow(a, i as i64);
        let dst = g.pow(az, i as i64);
        for x in m.iter() {
            let from = g.mul(src, x);
            assert_eq!(image[from], u32::MAX, "prime-index cosets partition the group");
            image[from] = g.mul(dst, x) as u32;
        }
    }
    let aut = Automorphism::from_hom(g, &GroupHom { image })?;
    assert!(aut.fixes(m), "the subgroup sits in the zeroth coset");
    assert!(!aut.is_identity(), "the coset representative moves to a distinct element");
    Ok(aut)
}

/// For abelian `G` with a subgroup `M` of odd prime index `p` met trivially
/// by the `p`-part `P` of `G`: the automorphism inverting `P` and fixing `M`
/// pointwise. When `P` meets `M`, the error signals delegating to the
/// prime-index coset construction instead.
pub fn odd_index_abelian_automorphism(g: &FiniteGroup, m: &Subset) -> Result<Automorphism> {
    const OP: &str = "odd_index_abelian_automorphism";
    if !g.is_abelian() {
        return Err(Error::pre(OP, "the group is not abelian"));
    }
    let n = g.order();
    let members: Vec<usize> = m.iter().collect();
    if g.closure(&members) != *m {
        return Err(Error::pre(OP, "the fixed set is not a subgroup"));
    }
    let p = n / m.len();
    if !is_prime(p as u64) || p == 2 {
        return Err(Error::pre(OP, format!("subgroup index {p} is not an odd prime")));
    }
    let p_part: Vec<usize> = (0..n)
        .filter(|&x| {
            let mut o = g.element_order(x);
            while o.is_multiple_of(p) {
                o /= p;
            }
            o == 1
        })
        .collect();
    if p_part.iter().any(|&x| x != 0 && m.contains(x)) {
        return Err(Error::pre(
            OP,
            "the p-part meets the subgroup; delegate to the prime-index coset construction",
        ));
    }
    assert_eq!(p_part.len(), p, "trivial intersection leaves a p-part of order exactly p");

    let mut image = vec![u32::MAX; n];
    for &x in &p_part {
        let xinv = g.inv(x);
        for zm in m.iter() {
            let from = g.mul(x, zm);
            assert_eq!(image[from], u32::MAX, "the p-part and the subgroup span each element once");
            image[from] = g.mul(xinv, zm) as u32;
        }
    }
    let aut = Automorphism::from_hom(g, &GroupHom { image })?;
    assert!(aut.fixes(m), "inversion touches only the p-part");
    assert!(!aut.is_identity(), "an odd prime keeps inversion away from the identity map");
    Ok(aut)
}

/// Shifts a determining set out of the odd-order part: for abelian `G`
/// splitting as an order-2 element `x` times an odd-order part `M`, and a
/// determining set `D` inside `M`, the translate `xD` is again determining
/// and spans strictly more than `D`.
pub fn shift_determining_set(
    g: &FiniteGroup,
    x: usize,
    d: &Subset,
    caps: &Caps,
) -> Result<Subset> {
    const OP: &str = "shift_determining_set";
    if !g.is_abelian() {
        return Err(Error::pre(OP, "the group is not abelian"));
    }
    if g.element_order(x) != 2 {
        return Err(Error::pre(OP, "the shift element must have order 2"));
    }
    let odd: Vec<usize> = (0..g.order()).filter(|&y| g.element_order(y) % 2 == 1).collect();
    if odd.len() * 2 != g.order() {
        return Err(Error::pre(OP, "the group is not the shift element times an odd-order part"));
    }
    let odd_set = Subset::from_indices(&odd);
    if d.is_empty() {
        return Err(Error::pre(OP, "the set is empty; nothing to shift"));
    }
    if d.iter().any(|e| !odd_set.contains(e)) {
        return Err(Error::pre(OP, "the set leaves the odd-order part"));
    }
    if !is_determining_set(g, d, caps)? {
        return Err(Error::pre(OP, "the set does not determine the group"));
    }

    let shifted = Subset::new(d.iter().map(|e| g.mul(x, e) as u32).collect());
    if !is_determining_set(g, &shifted, caps)? {
        return Err(Error::pre(OP, "shifted set unexpectedly fails to determine the group"));
    }
    let before = g.closure(&d.iter().collect::<Vec<_>>());
    let after = g.closure(&shifted.iter().collect::<Vec<_>>());
    if before.len() >= after.len() || before.iter().any(|e| !after.contains(e)) {
        return Err(Error::pre(OP, "shifted set does not strictly enlarge the span"));
    }
    Ok(shifted)
}

/// A base group together with the cover it embeds into: the product of the
/// base with `l` copies of `Z_p`, where `l` is the base's generating number
/// and `p` the least prime exceeding the base order.
#[derive(Clone, Debug)]
pub struct TightCover {
    pub base: FiniteGroup,
    /// Generating number of the base, the rank of the attached power.
    pub l: usize,
    /// Least prime exceeding the base order.
    pub p: u64,
    pub cover: DirectProduct,
    /// Embedding of the base into the cover.
    pub embedding: GroupHom,
}

pub fn tight_cover(h: &FiniteGroup, caps: &Caps) -> Result<TightCover> {
    if h.order() < 2 {
        return Err(Error::pre("tight_cover", "the base must be nontrivial"));
    }
    let l = generating_number(h, caps)?.value;
    let mut p = h.order() as u64 + 1;
    while !is_prime(p) {
        p += 1;
    }
    let cover_order = (p as u128).pow(l as u32) * h.order() as u128;
    if cover_order > caps.order_cap as u128 {
        return Err(Error::OrderCap { order: cover_order, cap: caps.order_cap });
    }
    let power = elementary_abelian(p, l as u32, caps.order_cap)?;
    let cover = direct_product(vec![power, h.clone()], caps.order_cap)?;
    let embedding = cover.embedding(1);
    assert!(embedding.verify(h, &cover.group), "factor embeddings are homomorphisms");
    Ok(TightCover { base: h.clone(), l, p, cover, embedding })
}

/// Quotient of a cover by its attached power, verified isomorphic to the
/// base via isomorphism search.
pub fn tight_cover_recover(tc: &TightCover, caps: &Caps) -> Result<FiniteGroup> {
    let power = tc.cover.embedding(0).image_subset();
    let (q, _) = tc.cover.group.quotient(&power)?;
    match isomorphism(&q, &tc.base, caps)? {
        Some(_) => Ok(q),
        None => Err(Error::pre("tight_cover_recover", "quotient is not isomorphic to the base")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detgen::deg_report;
    use crate::group::{cyclic, dihedral, quaternion, symmetric};

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn index_two_on_z4_is_negation() {
        let z4 = cyclic(4, 100).unwrap();
        let m = z4.closure(&[2]);
        let sigma = index_p_fixing_automorphism(&z4, &m, 1, 2).unwrap();
        assert_eq!(sigma.image(), &[0, 3, 2, 1]);
    }

    #[test]
    fn index_two_multiplies_the_far_coset_by_the_twist() {
        // D_4: reflections pick up r^2. Q_8: j and k negate, <i> stays.
        let d4 = dihedral(4, 100).unwrap();
        let q8 = quaternion(100).unwrap();
        for g in [&d4, &q8] {
            let m = g.closure(&[1]);
            let sigma = index_p_fixing_automorphism(g, &m, 4, 2).unwrap();
            assert_eq!(sigma.order(), 2);
            for t in 0..g.order() {
                let expect = if m.contains(t) { t } else { g.mul(t, 2) };
                assert_eq!(sigma.apply(t), expect, "{} at {t}", g.descriptor());
            }
        }
    }

    #[test]
    fn same_coset_representatives_build_the_same_map() {
        let d4 = dihedral(4, 100).unwrap();
        let m = d4.closure(&[1]);
        let s = 4;
        let sr2 = d4.mul(s, 2);
        let one = index_p_fixing_automorphism(&d4, &m, s, 2).unwrap();
        let two = index_p_fixing_automorphism(&d4, &m, sr2, 2).unwrap();
        assert_eq!(one, two);
        assert_eq!(one.apply(s), d4.mul(s, 2));
    }

    #[test]
    fn index_p_preconditions_are_distinct() {
        let reason = |r: Result<Automorphism>| match r.unwrap_err() {
            Error::Precondition { reason, .. } => reason,
            e => panic!("unexpected {e:?}"),
        };
        let z4 = cyclic(4, 100).unwrap();
        let m = z4.closure(&[2]);
        let not_group = Subset::from_indices(&[0, 1]);
        assert!(reason(index_p_fixing_automorphism(&z4, &not_group, 2, 2))
            .contains("not a subgroup"));
        assert!(reason(index_p_fixing_automorphism(&z4, &m, 2, 2))
            .contains("coset representative"));
        assert!(reason(index_p_fixing_automorphism(&z4, &m, 1, 1))
            .contains("outside the subgroup"));
        assert!(reason(index_p_fixing_automorphism(&z4, &m, 1, 0)).contains("order"));

        let s3 = symmetric(3, 100).unwrap();
        assert!(reason(index_p_fixing_automorphism(&s3, &s3.closure(&[1]), 3, 0))
            .contains("not normal"));

        let z12 = cyclic(12, 100).unwrap();
        assert!(reason(index_p_fixing_automorphism(&z12, &z12.closure(&[4]), 1, 4))
            .contains("not prime"));

        let z2 = cyclic(2, 100).unwrap();
        let dp = direct_product(vec![s3, z2], 100).unwrap();
        let m = dp.embedding(0).image_subset();
        assert!(reason(index_p_fixing_automorphism(&dp.group, &m, 1, 2))
            .contains("not central"));
    }

    #[test]
    fn odd_inversion_small_cyclics() {
        let z3 = cyclic(3, 100).unwrap();
        let sigma =
            odd_index_abelian_automorphism(&z3, &Subset::from_indices(&[0])).unwrap();
        assert_eq!(sigma.image(), &[0, 2, 1]);

        let z15 = cyclic(15, 100).unwrap();
        let m = z15.closure(&[3]);
        let sigma = odd_index_abelian_automorphism(&z15, &m).unwrap();
        assert!(sigma.fixes(&m));
        assert_eq!(sigma.apply(5), 10);
        assert_eq!(sigma.apply(10), 5);
        // 1 = 10 + 6 splits across the 3-part and the subgroup.
        assert_eq!(sigma.apply(1), 11);
        assert!(sigma.compose(&sigma).is_identity());
    }

    #[test]
    fn odd_inversion_preconditions() {
        let z6 = cyclic(6, 100).unwrap();
        let err = odd_index_abelian_automorphism(&z6, &z6.closure(&[2])).unwrap_err();
        match err {
            Error::Precondition { reason, .. } => assert!(reason.contains("odd prime")),
            e => panic!("unexpected {e:?}"),
        }

        let z9 = cyclic(9, 100).unwrap();
        let err = odd_index_abelian_automorphism(&z9, &z9.closure(&[3])).unwrap_err();
        match err {
            Error::Precondition { reason, .. } => assert!(reason.contains("delegate")),
            e => panic!("unexpected {e:?}"),
        }

        let s3 = symmetric(3, 100).unwrap();
        let err = odd_index_abelian_automorphism(&s3, &s3.closure(&[1])).unwrap_err();
        match err {
            Error::Precondition { reason, .. } => assert!(reason.contains("abelian")),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn shift_moves_z6_witness_to_a_generator() {
        let z6 = cyclic(6, 100).unwrap();
        let shifted =
            shift_determining_set(&z6, 3, &Subset::from_indices(&[2]), &caps()).unwrap();
        assert_eq!(shifted.members(), &[5]);
        assert_eq!(z6.closure(&[5]).len(), 6);
    }

    #[test]
    fn shift_preconditions() {
        let caps = caps();
        let z6 = cyclic(6, 100).unwrap();
        let two = Subset::from_indices(&[2]);
        assert!(shift_determining_set(&z6, 2, &two, &caps).is_err());
        assert!(shift_determining_set(&z6, 3, &Subset::from_indices(&[3]), &caps).is_err());
        assert!(shift_determining_set(&z6, 3, &Subset::from_indices(&[0]), &caps).is_err());
        assert!(shift_determining_set(&z6, 3, &Subset::empty(), &caps).is_err());

        let z4 = cyclic(4, 100).unwrap();
        assert!(shift_determining_set(&z4, 2, &Subset::empty(), &caps).is_err());
        let s3 = symmetric(3, 100).unwrap();
        assert!(shift_determining_set(&s3, 1, &Subset::from_indices(&[3]), &caps).is_err());
    }

    #[test]
    fn tight_cover_metadata_and_deg() {
        let caps = caps();
        let z2 = cyclic(2, 100).unwrap();
        let tc = tight_cover(&z2, &caps).unwrap();
        assert_eq!((tc.l, tc.p, tc.cover.group.order()), (1, 3, 6));
        let deg = deg_report(&tc.cover.group, &caps).unwrap();
        assert!(deg.is_deg());
        assert_eq!(deg.alpha.value, 1);

        let z3 = cyclic(3, 100).unwrap();
        let tc = tight_cover(&z3, &caps).unwrap();
        assert_eq!((tc.l, tc.p, tc.cover.group.order()), (1, 5, 15));
        assert!(deg_report(&tc.cover.group, &caps).unwrap().is_deg());

        let s3 = symmetric(3, 100).unwrap();
        let tc = tight_cover(&s3, &caps).unwrap();
        assert_eq!((tc.l, tc.p, tc.cover.group.order()), (2, 7, 294));
        let back = tight_cover_recover(&tc, &caps).unwrap();
        assert_eq!(back.order(), 6);
    }

    #[test]
    fn tight_cover_respects_the_order_cap() {
        let ea = elementary_abelian(2, 3, 100).unwrap();
        assert_eq!(
            tight_cover(&ea, &caps()).unwrap_err(),
            Error::OrderCap { order: 10_648, cap: 10_000 }
        );
        let trivial = cyclic(1, 10).unwrap();
        assert!(tight_cover(&trivial, &caps()).is_err());
    }

    #[test]
    fn covers_of_nonisomorphic_bases_stay_nonisomorphic() {
        let caps = caps();
        let d4 = dihedral(4, 100).unwrap();
        let q8 = quaternion(100).unwrap();
        let c1 = tight_cover(&d4, &caps).unwrap();
        let c2 = tight_cover(&q8, &caps).unwrap();
        assert_eq!(c1.cover.group.order(), 968);
        assert_eq!(c1.cover.group.order(), c2.cover.group.order());
        assert!(isomorphism(&c1.cover.group, &c2.cover.group, &caps).unwrap().is_none());
        let back = tight_cover_recover(&c1, &caps).unwrap();
        assert!(isomorphism(&back, &d4, &caps).unwrap().is_some());
    }
}
