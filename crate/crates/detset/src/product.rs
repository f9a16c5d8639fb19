//! Direct products: componentwise spreads of element tuples, matrix-of-maps
//! automorphisms, and the row criterion for determining sets.
//!
//! An automorphism of `H_1 x ... x H_m` where the factors share no direct
//! factor decomposes into an m x m matrix of maps: an automorphism of `H_i`
//! at entry (i,i) and a homomorphism `H_j -> H_i` with central image at
//! (i,j). Enumerating those matrices reconstructs the automorphism group of
//! the product without searching over the product itself.

use std::collections::HashSet;

use crate::aut::{aut_group, extract_generators, hom_set, AutGroup, Automorphism};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{gcd, DirectProduct, GroupHom, Subset};

/// Componentwise spread of an ordered tuple of product elements: row `i`
/// holds the factor-`i` components, one column per tuple entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicMatrix {
    /// `grid[i][j]`: index in factor `i` of the i-component of element `j`.
    pub grid: Vec<Vec<u32>>,
}

pub fn characteristic_matrix(dp: &DirectProduct, xs: &[usize]) -> Result<CharacteristicMatrix> {
    let order = dp.group.order();
    let mut grid = vec![Vec::with_capacity(xs.len()); dp.factor_count()];
    for &x in xs {
        if x >= order {
            return Err(Error::pre(
                "characteristic_matrix",
                format!("element index {x} outside a product of order {order}"),
            ));
        }
        for (i, c) in dp.decompose(x).into_iter().enumerate() {
            grid[i].push(c as u32);
        }
    }
    Ok(CharacteristicMatrix { grid })
}

impl CharacteristicMatrix {
    pub fn columns(&self) -> usize {
        self.grid.first().map_or(0, Vec::len)
    }

    /// Product element reassembled from column `j`.
    pub fn column_element(&self, dp: &DirectProduct, j: usize) -> usize {
        let comps: Vec<usize> = self.grid.iter().map(|row| row[j] as usize).collect();
        dp.compose(&comps)
    }

    /// Row `i` as a subset of factor `i`; repeated components collapse.
    pub fn row_subset(&self, i: usize) -> Subset {
        Subset::new(self.grid[i].clone())
    }
}

/// Matrix of maps over the factors of a product: `diag[i]` acts on factor
/// `i`, `off[i][j]` (i != j) carries factor `j` into factor `i` and must
/// land inside the center of factor `i` for the induced map to multiply out.
#[derive(Clone, Debug)]
pub struct BidwellMatrix {
    pub diag: Vec<Automorphism>,
    /// `off[i][j]` for i != j; the diagonal slots stay `None`.
    pub off: Vec<Vec<Option<GroupHom>>>,
}

impl BidwellMatrix {
    /// Identity on the diagonal, trivial homomorphisms elsewhere.
    pub fn identity(dp: &DirectProduct) -> BidwellMatrix {
        let m = dp.factor_count();
        let diag = dp.factors.iter().map(|f| Automorphism::identity(f.order())).collect();
        let off = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        (i != j)
                            .then(|| GroupHom { image: vec![0; dp.factors[j].order()] })
                    })
                    .collect()
            })
            .collect();
        BidwellMatrix { diag, off }
    }
}

/// Image of product element `g`: component `i` is the ordered product over
/// `j` of entry (i,j) applied to the j-component of `g`.
pub fn bidwell_apply(dp: &DirectProduct, m: &BidwellMatrix, g: usize) -> usize {
    let comps = dp.decompose(g);
    let mut out = Vec::with_capacity(comps.len());
    for i in 0..comps.len() {
        let hi = &dp.factors[i];
        let mut acc = 0usize;
        for (j, &cj) in comps.iter().enumerate() {
            let part = if i == j {
                m.diag[i].apply(cj)
            } else {
                m.off[i][j].as_ref().expect("off-diagonal entry present").apply(cj)
            };
            acc = hi.mul(acc, part);
        }
        out.push(acc);
    }
    dp.compose(&out)
}

/// Checks a matrix of maps entry by entry (shapes, central off-diagonal
/// images) and then verifies the induced map as a bijective homomorphism of
/// the product. The entry conditions already force a homomorphism; the full
/// check stays as a guard.
pub fn bidwell_automorphism(dp: &DirectProduct, m: &BidwellMatrix) -> Result<Automorphism> {
    let k = dp.factor_count();
    if m.diag.len() != k || m.off.len() != k {
        return Err(Error::pre("bidwell_automorphism", "matrix shape does not match the factors"));
    }
    for i in 0..k {
        if m.diag[i].degree() != dp.factors[i].order() || m.off[i].len() != k {
            return Err(Error::pre(
                "bidwell_automorphism",
                format!("row {i} does not match the factor orders"),
            ));
        }
        let center = dp.factors[i].center();
        for j in 0..k {
            if i == j {
                continue;
            }
            let hom = m.off[i][j]
                .as_ref()
                .ok_or_else(|| Error::pre("bidwell_automorphism", format!("entry ({i},{j}) missing")))?;
            if !hom.verify(&dp.factors[j], &dp.factors[i]) {
                return Err(Error::pre(
                    "bidwell_automorphism",
                    format!("entry ({i},{j}) is not a homomorphism"),
                ));
            }
            if hom.image.iter().any(|&y| !center.contains(y as usize)) {
                return Err(Error::pre(
                    "bidwell_automorphism",
                    format!("entry ({i},{j}) leaves the center of factor {i}"),
                ));
            }
        }
    }
    let image: Vec<u32> = (0..dp.group.order()).map(|g| bidwell_apply(dp, m, g) as u32).collect();
    induced_automorphism(dp, image)
}

/// Bijection plus homomorphism check on an induced image table.
fn induced_automorphism(dp: &DirectProduct, image: Vec<u32>) -> Result<Automorphism> {
    let hom = GroupHom { image };
    if !hom.is_injective() {
        return Err(Error::pre("bidwell_automorphism", "induced map is not a bijection"));
    }
    Automorphism::from_hom(&dp.group, &hom)
}

/// Outcome of enumerating every matrix of maps over a product.
#[derive(Clone, Debug)]
pub struct BidwellEnumeration {
    pub aut: AutGroup,
    /// Accepted matrices, in the same order as `aut.elements`.
    pub matrices: Vec<BidwellMatrix>,
    /// Grid combinations examined.
    pub candidates: u64,
    /// Combinations whose induced map failed the bijection check.
    pub rejected: u64,
}

/// Automorphism group of a product assembled from matrices of maps.
///
/// The decomposition is only exhaustive when no two factors share a direct
/// factor. Pairwise coprime orders guarantee that; otherwise the caller must
/// assert it via `assert_no_common_direct_factor` (a false assertion silently
/// under-counts: diagonal-swapping automorphisms have no matrix form).
pub fn bidwell_aut_group(
    dp: &DirectProduct,
    assert_no_common_direct_factor: bool,
    caps: &Caps,
) -> Result<BidwellEnumeration> {
    let m = dp.factor_count();
    let coprime = (0..m).all(|i| {
        (i + 1..m)
            .all(|j| gcd(dp.factors[i].order() as u64, dp.factors[j].order() as u64) == 1)
    });
    if !coprime && !assert_no_common_direct_factor {
        return Err(Error::BidwellNeedsAssertion);
    }

    let mut diag_pools: Vec<Vec<Automorphism>> = Vec::with_capacity(m);
    for f in &dp.factors {
        let a = aut_group(f, caps);
        if !a.complete {
            return Err(Error::BidwellFactorCapped);
        }
        diag_pools.push(a.elements);
    }
    // off_pools[i][j]: homs from factor j into factor i, image central in i.
    let mut off_pools: Vec<Vec<Vec<GroupHom>>> = vec![vec![Vec::new(); m]; m];
    for i in 0..m {
        let (center, embed) = dp.factors[i].promote(&dp.factors[i].center())?;
        for j in 0..m {
            if i == j {
                continue;
            }
            off_pools[i][j] =
                hom_set(&dp.factors[j], &center, caps)?.iter().map(|h| h.then(&embed)).collect();
        }
    }

    let mut estimate: u128 = diag_pools.iter().fold(1, |acc, p| acc.saturating_mul(p.len() as u128));
    for i in 0..m {
        for j in 0..m {
            if i != j {
                estimate = estimate.saturating_mul(off_pools[i][j].len() as u128);
            }
        }
    }
    if estimate > caps.bidwell_candidate_cap as u128 {
        return Err(Error::BidwellCap { estimate, cap: caps.bidwell_candidate_cap });
    }

    // Odometer over all slots: the m diagonal entries first, then the
    // off-diagonal entries in row-major order, last slot fastest.
    let mut slots: Vec<(Option<usize>, usize, usize)> = Vec::new();
    for (i, pool) in diag_pools.iter().enumerate() {
        slots.push((None, i, pool.len()));
    }
    for i in 0..m {
        for j in 0..m {
            if i != j {
                slots.push((Some(j), i, off_pools[i][j].len()));
            }
        }
    }
    let mut digits = vec![0usize; slots.len()];
    let mut accepted: Vec<(Automorphism, BidwellMatrix)> = Vec::new();
    let mut candidates = 0u64;
    let mut rejected = 0u64;
    'outer: loop {
        candidates += 1;
        let mut matrix = BidwellMatrix::identity(dp);
        for (slot, &digit) in slots.iter().zip(&digits) {
            match *slot {
                (None, i, _) => matrix.diag[i] = diag_pools[i][digit].clone(),
                (Some(j), i, _) => matrix.off[i][j] = Some(off_pools[i][j][digit].clone()),
            }
        }
        let image: Vec<u32> =
            (0..dp.group.order()).map(|g| bidwell_apply(dp, &matrix, g) as u32).collect();
        match induced_automorphism(dp, image) {
            Ok(a) => accepted.push((a, matrix)),
            Err(_) => rejected += 1,
        }
        for k in (0..digits.len()).rev() {
            digits[k] += 1;
            if digits[k] < slots[k].2 {
                continue 'outer;
            }
            digits[k] = 0;
        }
        break;
    }

    accepted.sort_by(|a, b| a.0.cmp(&b.0));
    let (elements, matrices): (Vec<Automorphism>, Vec<BidwellMatrix>) =
        accepted.into_iter().unzip();
    let generators = extract_generators(dp.group.order(), &elements, elements.len() + 1);
    let aut = AutGroup {
        complete: true,
        order_lower_bound: elements.len(),
        elements,
        generators,
        candidate_estimate: estimate,
        effective_cap: caps.bidwell_candidate_cap,
    };
    Ok(BidwellEnumeration { aut, matrices, candidates, rejected })
}

/// Row-by-row verdicts for the componentwise spread of a determining set:
/// entry `i` is true when row `i` determines factor `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCriterionReport {
    pub rows: Vec<bool>,
}

impl RowCriterionReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|&b| b)
    }
}

/// Checks, factor by factor, that the rows of a determining set's spread are
/// themselves determining. The input must determine the product.
pub fn row_criterion_check(
    dp: &DirectProduct,
    xs: &[usize],
    caps: &Caps,
) -> Result<RowCriterionReport> {
    let subset = Subset::from_indices(xs);
    if !crate::detgen::is_determining_set(&dp.group, &subset, caps)? {
        return Err(Error::pre("row_criterion_check", "input set does not determine the product"));
    }
    let cm = characteristic_matrix(dp, xs)?;
    let mut rows = Vec::with_capacity(dp.factor_count());
    for i in 0..dp.factor_count() {
        rows.push(crate::detgen::is_determining_set(&dp.factors[i], &cm.row_subset(i), caps)?);
    }
    Ok(RowCriterionReport { rows })
}

/// Deduplicated images of a complete automorphism enumeration, for set
/// comparisons between construction routes.
pub fn automorphism_image_set(elements: &[Automorphism]) -> HashSet<Vec<u32>> {
    elements.iter().map(|a| a.image().to_vec()).collect()
}

/// Direct-search automorphism group of the underlying product table, used to
/// cross-check the matrix route.
pub fn product_aut_direct(dp: &DirectProduct, caps: &Caps) -> AutGroup {
    aut_group(&dp.group, caps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::detgen::determining_number;
    use crate::group::{cyclic, dihedral, direct_product, elementary_abelian, symmetric};

    fn caps() -> Caps {
        Caps::default()
    }

    fn product_of(orders: &[u64]) -> DirectProduct {
        let factors = orders.iter().map(|&n| cyclic(n, 10_000).unwrap()).collect();
        direct_product(factors, 10_000).unwrap()
    }

    #[test]
    fn characteristic_matrix_round_trips() {
        let dp = product_of(&[2, 3]);
        let xs: Vec<usize> = (0..dp.group.order()).collect();
        let cm = characteristic_matrix(&dp, &xs).unwrap();
        assert_eq!(cm.columns(), 6);
        for (j, &x) in xs.iter().enumerate() {
            assert_eq!(cm.column_element(&dp, j), x);
        }
        assert_eq!(
            characteristic_matrix(&dp, &[6]),
            Err(Error::pre(
                "characteristic_matrix",
                "element index 6 outside a product of order 6"
            ))
        );
    }

    #[test]
    fn unit_vectors_spread_to_identity_grid() {
        let dp = product_of(&[3, 3, 3]);
        let unit = |i: usize| {
            let mut comps = vec![0usize; 3];
            comps[i] = 1;
            dp.compose(&comps)
        };
        let xs: Vec<usize> = (0..3).map(unit).collect();
        let cm = characteristic_matrix(&dp, &xs).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(cm.grid[i][j], u32::from(i == j));
            }
        }
        for i in 0..3 {
            assert_eq!(cm.row_subset(i).members(), &[0, 1][..]);
        }
    }

    #[test]
    fn matrix_application_shifts_by_central_image() {
        let dp = product_of(&[2, 4]);
        let mut m = BidwellMatrix::identity(&dp);
        m.off[1][0] = Some(GroupHom { image: vec![0, 2] });
        let x = dp.compose(&[1, 0]);
        let y = bidwell_apply(&dp, &m, x);
        assert_eq!(dp.decompose(y), vec![1, 2]);
        assert_eq!(dp.group.label(y), "(1,2)");
        let a = bidwell_automorphism(&dp, &m).unwrap();
        assert_eq!(a.apply(x), y);
    }

    #[test]
    fn non_central_entry_rejected() {
        let s3 = symmetric(3, 100).unwrap();
        let z3 = cyclic(3, 100).unwrap();
        let dp = direct_product(vec![s3.clone(), z3], 100).unwrap();
        // 1 in Z_3 to a 3-cycle of S_3: a homomorphism, but S_3 has trivial
        // center, so the entry fails the centrality requirement.
        let three_cycle = (0..6).find(|&x| s3.element_order(x) == 3).unwrap();
        let image: Vec<u32> =
            (0..3).map(|k| s3.pow(three_cycle, k as i64) as u32).collect();
        let mut m = BidwellMatrix::identity(&dp);
        m.off[0][1] = Some(GroupHom { image });
        let err = bidwell_automorphism(&dp, &m).unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }));
    }

    #[test]
    fn matrix_route_matches_direct_search() {
        // (descriptor factors, needs the no-common-factor assertion, |Aut|)
        let cases: [(&[u64], bool, usize); 3] =
            [(&[2, 4], true, 8), (&[3, 5], false, 8), (&[4, 3], false, 4)];
        for (orders, needs_assert, expect) in cases {
            let dp = product_of(orders);
            if needs_assert {
                assert_eq!(
                    bidwell_aut_group(&dp, false, &caps()).unwrap_err(),
                    Error::BidwellNeedsAssertion
                );
            }
            let enumeration = bidwell_aut_group(&dp, needs_assert, &caps()).unwrap();
            assert_eq!(enumeration.aut.order(), Some(expect), "factors {orders:?}");
            assert_eq!(enumeration.rejected, 0);
            let direct = product_aut_direct(&dp, &caps());
            assert_eq!(
                automorphism_image_set(&enumeration.aut.elements),
                automorphism_image_set(&direct.elements)
            );
        }
    }

    #[test]
    fn nonabelian_factor_counts() {
        let z3 = cyclic(3, 100).unwrap();
        let s3 = symmetric(3, 100).unwrap();
        let dp = direct_product(vec![z3, s3], 100).unwrap();
        let enumeration = bidwell_aut_group(&dp, true, &caps()).unwrap();
        assert_eq!(enumeration.candidates, 12);
        assert_eq!(enumeration.rejected, 0);
        assert_eq!(enumeration.aut.order(), Some(12));
        let direct = product_aut_direct(&dp, &caps());
        assert_eq!(
            automorphism_image_set(&enumeration.aut.elements),
            automorphism_image_set(&direct.elements)
        );
    }

    #[test]
    fn accepted_maps_close_under_composition() {
        let dp = product_of(&[2, 4]);
        let enumeration = bidwell_aut_group(&dp, true, &caps()).unwrap();
        let set = automorphism_image_set(&enumeration.aut.elements);
        for a in &enumeration.aut.elements {
            for b in &enumeration.aut.elements {
                assert!(set.contains(a.compose(b).image()));
            }
        }
    }

    #[test]
    fn common_direct_factor_breaks_the_decomposition() {
        // A false assertion is not detected: Z_2 x Z_2 has |Aut| = 6, but the
        // swap of the two factors has no matrix form, so only 3 maps appear.
        let dp = product_of(&[2, 2]);
        let enumeration = bidwell_aut_group(&dp, true, &caps()).unwrap();
        assert_eq!(enumeration.candidates, 4);
        assert_eq!(enumeration.rejected, 1);
        assert_eq!(enumeration.aut.order(), Some(3));
        assert_eq!(product_aut_direct(&dp, &caps()).order(), Some(6));
    }

    #[test]
    fn candidate_cap_refuses_up_front() {
        let dp = product_of(&[2, 4]);
        let tight = Caps { bidwell_candidate_cap: 4, ..Caps::default() };
        assert_eq!(
            bidwell_aut_group(&dp, true, &tight).unwrap_err(),
            Error::BidwellCap { estimate: 8, cap: 4 }
        );
    }

    #[test]
    fn factor_cap_propagates() {
        let big = elementary_abelian(2, 5, 100).unwrap();
        let z3 = cyclic(3, 200).unwrap();
        let dp = direct_product(vec![big, z3], 200).unwrap();
        assert_eq!(bidwell_aut_group(&dp, false, &caps()).unwrap_err(), Error::BidwellFactorCapped);
    }

    #[test]
    fn row_criterion_holds_on_minimum_witnesses() {
        let k4 = elementary_abelian(2, 2, 100).unwrap();
        let z9 = cyclic(9, 100).unwrap();
        let dp = direct_product(vec![k4, z9], 100).unwrap();
        let alpha = determining_number(&dp.group, &caps()).unwrap();
        assert_eq!(alpha.value, 2);
        let xs: Vec<usize> = alpha.witness.iter().collect();
        let report = row_criterion_check(&dp, &xs, &caps()).unwrap();
        assert!(report.holds(), "rows {:?}", report.rows);
    }

    #[test]
    fn row_criterion_requires_a_determining_input() {
        let dp = product_of(&[2, 3]);
        let err = row_criterion_check(&dp, &[0], &caps()).unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }));
    }

    #[test]
    fn product_alpha_bounds() {
        // alpha of a product is at least the largest factor alpha, with
        // equality when the factor orders are pairwise coprime.
        let caps = caps();
        let z2 = cyclic(2, 100).unwrap();
        let s3 = symmetric(3, 100).unwrap();
        let dp = direct_product(vec![s3, z2], 100).unwrap();
        assert_eq!(determining_number(&dp.group, &caps).unwrap().value, 2);

        let dp = product_of(&[3, 5]);
        assert_eq!(determining_number(&dp.group, &caps).unwrap().value, 1);

        let d4 = dihedral(4, 100).unwrap();
        let z3 = cyclic(3, 100).unwrap();
        let dp = direct_product(vec![d4.clone(), z3], 100).unwrap();
        let alpha = determining_number(&dp.group, &caps).unwrap().value;
        let alpha_d4 = determining_number(&d4, &caps).unwrap().value;
        assert_eq!(alpha, alpha_d4);
    }
}
