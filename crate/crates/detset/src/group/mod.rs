//! Concrete finite groups as dense Cayley tables.
//!
//! Elements are indices `0..order` with the identity pinned at index 0. The
//! table stores `x * y` at `x * order + y`. Construction validates the group
//! axioms; associativity is checked exhaustively only up to
//! `Caps::assoc_check_cap` and is otherwise guaranteed by the constructors.

mod construct;
mod subgroups;
mod table_io;

pub use construct::{
    abelian, alternating, cyclic, dicyclic, dihedral, direct_product, elementary_abelian,
    quaternion, symmetric, unitriangular, DirectProduct,
};
pub use subgroups::NilpotencyReport;

use crate::error::{Error, Result};

/// A finite group given by its full multiplication table.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverse: Vec<u32>,
    labels: Vec<String>,
    descriptor: String,
}

impl FiniteGroup {
    /// Validates a raw table and builds the group.
    ///
    /// Checks: square shape, identity at index 0, every row and column a
    /// permutation (Latin square), two-sided inverses, distinct labels, and
    /// associativity for orders up to `assoc_check_cap`.
    pub fn from_table(
        table: Vec<u32>,
        labels: Vec<String>,
        descriptor: impl Into<String>,
        assoc_check_cap: usize,
    ) -> Result<FiniteGroup> {
        let descriptor = descriptor.into();
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty element set".into()));
        }
        if table.len() != n * n {
            return Err(Error::InvalidTable(format!(
                "table has {} entries, expected {}",
                table.len(),
                n * n
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v as usize >= n) {
            return Err(Error::InvalidTable(format!("entry {bad} out of range")));
        }
        for i in 0..n {
            if table[i] != i as u32 || table[i * n] != i as u32 {
                return Err(Error::InvalidTable("index 0 is not a two-sided identity".into()));
            }
        }
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = table[i * n + j] as usize;
                if seen[v] {
                    return Err(Error::InvalidTable(format!("row {i} repeats entry {v}")));
                }
                seen[v] = true;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                let v = table[j * n + i] as usize;
                if seen[v] {
                    return Err(Error::InvalidTable(format!("column {i} repeats entry {v}")));
                }
                seen[v] = true;
            }
        }
        if n <= assoc_check_cap {
            for a in 0..n {
                for b in 0..n {
                    let ab = table[a * n + b] as usize;
                    for c in 0..n {
                        let bc = table[b * n + c] as usize;
                        if table[ab * n + c] != table[a * n + bc] {
                            return Err(Error::InvalidTable(format!(
                                "associativity fails at ({a},{b},{c})"
                            )));
                        }
                    }
                }
            }
        }
        // Above the cap associativity is trusted; two-sided inverses stay the
        // one structural check that is cheap enough to run at any order.
        let mut inverse = vec![u32::MAX; n];
        for x in 0..n {
            let y = (0..n).find(|&y| table[x * n + y] == 0).unwrap();
            if table[y * n + x] != 0 {
                return Err(Error::InvalidTable(format!("element {x} has one-sided inverse only")));
            }
            inverse[x] = y as u32;
        }
        {
            let mut sorted: Vec<&String> = labels.iter().collect();
            sorted.sort();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidTable("labels are not pairwise distinct".into()));
            }
        }
        Ok(FiniteGroup { order: n, table, inverse, labels, descriptor })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g * x * g^-1`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Commutator `a * b * a^-1 * b^-1`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
    }

    pub fn pow(&self, x: usize, k: i64) -> usize {
        let o = self.element_order(x) as i64;
        let mut e = k.rem_euclid(o) as u64;
        let mut base = x;
        let mut acc = 0usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn with_descriptor(mut self, descriptor: impl Into<String>) -> FiniteGroup {
        self.descriptor = descriptor.into();
        self
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut y = x;
        let mut k = 1;
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1u64, |acc, x| lcm(acc, self.element_order(x) as u64))
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.table[a * n + b] == self.table[b * n + a]))
    }

    pub fn is_cyclic(&self) -> bool {
        (0..self.order).any(|x| self.element_order(x) == self.order)
    }

    /// True when the order is a prime power p^k with k >= 1.
    pub fn is_p_group(&self) -> bool {
        factorize(self.order as u64).len() == 1
    }

    /// Subgroup generated by a set of elements. The identity is always included.
    pub fn closure(&self, seed: &[usize]) -> Subset {
        let mut state = ClosureState::identity(self);
        for &s in seed {
            state.extend(self, s);
        }
        state.into_subset()
    }

    /// Elements commuting with every member of `s`.
    pub fn centralizer(&self, s: &[usize]) -> Subset {
        let members = (0..self.order)
            .filter(|&c| s.iter().all(|&x| self.mul(c, x) == self.mul(x, c)))
            .map(|c| c as u32)
            .collect();
        Subset { members }
    }

    pub fn center(&self) -> Subset {
        let all: Vec<usize> = (0..self.order).collect();
        self.centralizer(&all)
    }

    /// Conjugacy classes as sorted element lists, ordered by least member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<u32>> {
        let n = self.order;
        let mut seen = vec![false; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut class = Vec::new();
            for g in 0..n {
                let y = self.conjugate(g, x);
                if !seen[y] {
                    seen[y] = true;
                    class.push(y as u32);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Subgroup generated by all commutators.
    pub fn derived_subgroup(&self) -> Subset {
        let n = self.order;
        let mut comms: Vec<usize> = Vec::new();
        let mut mark = vec![false; n];
        for a in 0..n {
            for b in 0..n {
                let c = self.commutator(a, b);
                if !mark[c] {
                    mark[c] = true;
                    comms.push(c);
                }
            }
        }
        self.closure(&comms)
    }

    /// Number of prime divisors of the order counted with multiplicity.
    pub fn chi(&self) -> usize {
        factorize(self.order as u64).iter().map(|&(_, e)| e as usize).sum()
    }

    /// Builds a standalone group from a subgroup, keeping element labels.
    /// Returns the new group together with the embedding into `self`.
    pub fn promote(&self, h: &Subset) -> Result<(FiniteGroup, GroupHom)> {
        if self.closure_of_subset(h) != *h {
            return Err(Error::NotSubgroup);
        }
        let m = h.len();
        let mut back = vec![u32::MAX; self.order];
        for (i, &x) in h.members.iter().enumerate() {
            back[x as usize] = i as u32;
        }
        let mut table = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                let prod = self.mul(h.members[i] as usize, h.members[j] as usize);
                table[i * m + j] = back[prod];
            }
        }
        let labels = h.members.iter().map(|&x| self.labels[x as usize].clone()).collect();
        let descriptor = format!("sub{}_of_{}", m, self.descriptor);
        // Subgroup of a valid group: associativity is inherited.
        let group = FiniteGroup::from_table(table, labels, descriptor, 0)?;
        let embedding = GroupHom { image: h.members.clone() };
        Ok((group, embedding))
    }

    pub(crate) fn closure_of_subset(&self, s: &Subset) -> Subset {
        let seed: Vec<usize> = s.members.iter().map(|&x| x as usize).collect();
        self.closure(&seed)
    }

    /// All elements as a subset.
    pub fn full_subset(&self) -> Subset {
        Subset { members: (0..self.order as u32).collect() }
    }

    pub fn trivial_subset(&self) -> Subset {
        Subset { members: vec![0] }
    }
}

/// Incrementally grown subgroup closure. Cloneable so subset searches can
/// branch without recomputing the prefix.
#[derive(Debug, Clone)]
pub(crate) struct ClosureState {
    pub in_set: Vec<bool>,
    pub members: Vec<u32>,
}

impl ClosureState {
    pub fn identity(g: &FiniteGroup) -> ClosureState {
        let mut in_set = vec![false; g.order];
        in_set[0] = true;
        ClosureState { in_set, members: vec![0] }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.in_set[x]
    }

    /// Adds `x` and closes under multiplication.
    pub fn extend(&mut self, g: &FiniteGroup, x: usize) {
        if self.in_set[x] {
            return;
        }
        self.in_set[x] = true;
        self.members.push(x as u32);
        let mut next = self.members.len() - 1;
        while next < self.members.len() {
            let a = self.members[next] as usize;
            // Products against all members present so far; later members pick
            // up the symmetric products when they are processed.
            let mut i = 0;
            while i < self.members.len() {
                let b = self.members[i] as usize;
                for p in [g.mul(a, b), g.mul(b, a)] {
                    if !self.in_set[p] {
                        self.in_set[p] = true;
                        self.members.push(p as u32);
                    }
                }
                i += 1;
            }
            next += 1;
        }
    }

    pub fn into_subset(mut self) -> Subset {
        self.members.sort_unstable();
        Subset { members: self.members }
    }
}

/// A set of element indices, kept strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset {
    members: Vec<u32>,
}

impl Subset {
    pub fn new(mut members: Vec<u32>) -> Subset {
        members.sort_unstable();
        members.dedup();
        Subset { members }
    }

    pub fn from_indices(indices: &[usize]) -> Subset {
        Subset::new(indices.iter().map(|&i| i as u32).collect())
    }

    pub fn empty() -> Subset {
        Subset { members: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&(x as u32)).is_ok()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|&x| x as usize)
    }

    pub fn labels(&self, g: &FiniteGroup) -> Vec<String> {
        self.iter().map(|x| g.label(x).to_string()).collect()
    }
}

/// A homomorphism stored as its full image table: `image[x]` is the codomain
/// index of domain element `x`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupHom {
    pub image: Vec<u32>,
}

impl GroupHom {
    pub fn apply(&self, x: usize) -> usize {
        self.image[x] as usize
    }

    pub fn domain_order(&self) -> usize {
        self.image.len()
    }

    /// Full check: identity preserved and every product respected.
    pub fn verify(&self, dom: &FiniteGroup, cod: &FiniteGroup) -> bool {
        if self.image.len() != dom.order() || self.image[0] != 0 {
            return false;
        }
        if self.image.iter().any(|&v| v as usize >= cod.order()) {
            return false;
        }
        for a in 0..dom.order() {
            for b in 0..dom.order() {
                let lhs = self.image[dom.mul(a, b)] as usize;
                let rhs = cod.mul(self.image[a] as usize, self.image[b] as usize);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.image.iter().all(|v| seen.insert(*v))
    }

    pub fn is_surjective(&self, cod: &FiniteGroup) -> bool {
        let mut seen = vec![false; cod.order()];
        for &v in &self.image {
            seen[v as usize] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// `other` after `self` (self's codomain must be other's domain).
    pub fn then(&self, other: &GroupHom) -> GroupHom {
        GroupHom { image: self.image.iter().map(|&v| other.image[v as usize]).collect() }
    }

    pub fn image_subset(&self) -> Subset {
        Subset::new(self.image.clone())
    }

    /// Elements mapping to the identity.
    pub fn kernel(&self) -> Subset {
        let members =
            self.image.iter().enumerate().filter(|(_, &v)| v == 0).map(|(i, _)| i as u32).collect();
        Subset { members }
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let g = cyclic(6, 10_000).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.mul(4, 5), 3);
        assert_eq!(g.inv(2), 4);
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.element_order(0), 1);
        assert!(g.is_abelian());
        assert!(g.is_cyclic());
        assert_eq!(g.exponent(), 6);
        assert_eq!(g.label(5), "5");
    }

    #[test]
    fn identity_must_sit_at_zero() {
        // Swap rows/columns so index 0 is no longer the identity.
        let g = cyclic(3, 100).unwrap();
        let n = 3;
        let perm = [1usize, 0, 2];
        let mut table = vec![0u32; 9];
        for a in 0..n {
            for b in 0..n {
                table[perm[a] * n + perm[b]] = perm[g.mul(a, b)] as u32;
            }
        }
        let labels = vec!["a".into(), "b".into(), "c".into()];
        assert!(matches!(
            FiniteGroup::from_table(table, labels, "twisted", 256),
            Err(Error::InvalidTable(_))
        ));
    }

    #[test]
    fn latin_square_violation_rejected() {
        let table = vec![0, 1, 2, 1, 1, 0, 2, 0, 1];
        let labels = vec!["e".into(), "x".into(), "y".into()];
        assert!(FiniteGroup::from_table(table, labels, "bad", 256).is_err());
    }

    #[test]
    fn associativity_violation_rejected() {
        // The Z_6 addition table with one intercalate swapped: still a Latin
        // square with identity and two-sided inverses, but (1*1)*1 != 1*(1*1).
        let table: Vec<u32> = vec![
            0, 1, 2, 3, 4, 5, //
            1, 5, 3, 4, 2, 0, //
            2, 3, 4, 5, 0, 1, //
            3, 4, 5, 0, 1, 2, //
            4, 2, 0, 1, 5, 3, //
            5, 0, 1, 2, 3, 4,
        ];
        let labels = (0..6).map(|i| i.to_string()).collect();
        assert!(matches!(
            FiniteGroup::from_table(table, labels, "loop6", 256),
            Err(Error::InvalidTable(msg)) if msg.contains("associativity")
        ));
    }

    #[test]
    fn closure_of_element_is_cyclic_subgroup() {
        let g = cyclic(12, 10_000).unwrap();
        let h = g.closure(&[4]);
        assert_eq!(h.members(), &[0, 4, 8]);
        let h2 = g.closure(&[2, 3]);
        assert_eq!(h2.len(), 12);
        assert_eq!(g.closure(&[]).members(), &[0]);
    }

    #[test]
    fn center_and_classes_s3() {
        let g = symmetric(3, 10_000).unwrap();
        assert_eq!(g.center().len(), 1);
        let mut sizes: Vec<usize> = g.conjugacy_classes().iter().map(|c| c.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        assert!(!g.is_abelian());
    }

    #[test]
    fn dihedral_center_and_classes() {
        let d4 = dihedral(4, 10_000).unwrap();
        assert_eq!(d4.order(), 8);
        assert_eq!(d4.center().len(), 2);
        assert_eq!(d4.conjugacy_classes().len(), 5);
    }

    #[test]
    fn centralizer_of_rotation_in_d4() {
        let d4 = dihedral(4, 10_000).unwrap();
        let r = d4.element_by_label("r1").unwrap();
        let c = d4.centralizer(&[r]);
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|x| d4.element_by_label("r0").is_some() && x < 4));
    }

    #[test]
    fn derived_subgroups() {
        let s3 = symmetric(3, 10_000).unwrap();
        assert_eq!(s3.derived_subgroup().len(), 3);
        let q8 = quaternion(10_000).unwrap();
        let d = q8.derived_subgroup();
        assert_eq!(d.len(), 2);
        assert!(d.contains(q8.element_by_label("a2").unwrap()));
        let z6 = cyclic(6, 10_000).unwrap();
        assert_eq!(z6.derived_subgroup().len(), 1);
    }

    #[test]
    fn chi_counts_prime_divisors_with_multiplicity() {
        assert_eq!(cyclic(12, 10_000).unwrap().chi(), 3);
        assert_eq!(alternating(5, 10_000).unwrap().chi(), 4);
        assert_eq!(cyclic(7, 10_000).unwrap().chi(), 1);
    }

    #[test]
    fn promote_rebuilds_subgroup() {
        let z12 = cyclic(12, 10_000).unwrap();
        let h = z12.closure(&[3]);
        let (g, emb) = z12.promote(&h).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_cyclic());
        assert!(emb.verify(&g, &z12));
        assert!(emb.is_injective());
        // Non-subgroup input rejected.
        assert_eq!(z12.promote(&Subset::from_indices(&[0, 5])), Err(Error::NotSubgroup));
    }

    #[test]
    fn pow_matches_iteration() {
        let g = dihedral(6, 10_000).unwrap();
        for x in 0..g.order() {
            let mut acc = 0;
            for k in 0..8i64 {
                assert_eq!(g.pow(x, k), acc);
                acc = g.mul(acc, x);
            }
            assert_eq!(g.pow(x, -1), g.inv(x));
        }
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(60), vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert!(is_prime(2) && is_prime(97) && !is_prime(91));
    }
}
