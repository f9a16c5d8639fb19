//! Constructors for the standard group families.
//!
//! Every constructor computes the target order arithmetically first and
//! refuses anything above `cap` before allocating the table.

use super::{FiniteGroup, GroupHom};
use crate::error::{Error, Result};

fn check_cap(order: u128, cap: usize) -> Result<usize> {
    if order == 0 {
        return Err(Error::BadParameter { family: "construct", reason: "order zero".into() });
    }
    if order > cap as u128 {
        return Err(Error::OrderCap { order, cap });
    }
    Ok(order as usize)
}

/// Z_n, elements written additively and labeled by residue.
pub fn cyclic(n: u64, cap: usize) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(Error::BadParameter { family: "Z", reason: "n must be >= 1".into() });
    }
    let n = check_cap(n as u128, cap)?;
    let mut table = vec![0u32; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as u32;
        }
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    FiniteGroup::from_table(table, labels, format!("Z({n})"), assoc_trusted())
}

/// Dihedral group of order 2n: rotations `r{i}` and reflections `sr{i}`.
pub fn dihedral(n: u64, cap: usize) -> Result<FiniteGroup> {
    if n < 1 {
        return Err(Error::BadParameter { family: "D", reason: "n must be >= 1".into() });
    }
    let n = n as usize;
    let order = check_cap(2 * n as u128, cap)?;
    // Element (eps, i) with eps in {0,1} encodes s^eps r^i at index eps*n + i.
    let idx = |eps: usize, i: usize| (eps * n + i) as u32;
    let mut table = vec![0u32; order * order];
    for e1 in 0..2 {
        for i in 0..n {
            for e2 in 0..2 {
                for j in 0..n {
                    // r^i * s = s * r^(-i); normal form s^eps r^k.
                    let (eps, k) = if e2 == 0 {
                        (e1, (i + j) % n)
                    } else {
                        (1 - e1, (n + j - i) % n)
                    };
                    table[(e1 * n + i) * order + (e2 * n + j)] = idx(eps, k);
                }
            }
        }
    }
    let labels = (0..2)
        .flat_map(|eps| (0..n).map(move |i| if eps == 0 { format!("r{i}") } else { format!("sr{i}") }))
        .collect();
    FiniteGroup::from_table(table, labels, format!("D({n})"), assoc_trusted())
}

fn permutations_lex(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<u8>, used: &mut Vec<bool>, depth: usize, out: &mut Vec<Vec<u8>>) {
        if depth == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur[depth] = v as u8;
                rec(n, cur, used, depth + 1, out);
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, 0, &mut out);
    out
}

fn parity(p: &[u8]) -> usize {
    let mut seen = vec![false; p.len()];
    let mut transpositions = 0;
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = p[i] as usize;
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2
}

fn permutation_group(perms: Vec<Vec<u8>>, descriptor: String) -> Result<FiniteGroup> {
    let order = perms.len();
    let mut index = std::collections::HashMap::with_capacity(order);
    for (i, p) in perms.iter().enumerate() {
        index.insert(p.clone(), i as u32);
    }
    let deg = perms[0].len();
    let mut table = vec![0u32; order * order];
    let mut prod = vec![0u8; deg];
    for a in 0..order {
        for b in 0..order {
            for i in 0..deg {
                prod[i] = perms[a][perms[b][i] as usize];
            }
            table[a * order + b] = index[&prod];
        }
    }
    let labels = perms
        .iter()
        .map(|p| p.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(""))
        .collect();
    FiniteGroup::from_table(table, labels, descriptor, assoc_trusted())
}

/// S_n with elements enumerated lexicographically; labels are one-line images.
pub fn symmetric(n: u64, cap: usize) -> Result<FiniteGroup> {
    if !(1..=10).contains(&n) {
        return Err(Error::BadParameter { family: "S", reason: "n must be in 1..=10".into() });
    }
    let fact: u128 = (1..=n as u128).product();
    check_cap(fact, cap)?;
    permutation_group(permutations_lex(n as usize), format!("S({n})"))
}

/// A_n: the even permutations of S_n in lexicographic order.
pub fn alternating(n: u64, cap: usize) -> Result<FiniteGroup> {
    if !(1..=10).contains(&n) {
        return Err(Error::BadParameter { family: "A", reason: "n must be in 1..=10".into() });
    }
    let fact: u128 = (1..=n as u128).product();
    let order = if n <= 2 { 1 } else { fact / 2 };
    check_cap(order, cap)?;
    let perms: Vec<Vec<u8>> =
        permutations_lex(n as usize).into_iter().filter(|p| parity(p) == 0).collect();
    permutation_group(perms, format!("A({n})"))
}

/// Dicyclic group of order 4m: `a` of order 2m, `b^2 = a^m`, `b a b^-1 = a^-1`.
/// Elements `a{i}` and `a{i}b`.
pub fn dicyclic(m: u64, cap: usize) -> Result<FiniteGroup> {
    if m < 2 {
        return Err(Error::BadParameter { family: "Q", reason: "order must be 4m with m >= 2".into() });
    }
    let m = m as usize;
    let two_m = 2 * m;
    let order = check_cap(4 * m as u128, cap)?;
    // Index eps*2m + i encodes a^i b^eps.
    let idx = |eps: usize, i: usize| (eps * two_m + i) as u32;
    let mut table = vec![0u32; order * order];
    for e1 in 0..2 {
        for i in 0..two_m {
            for e2 in 0..2 {
                for j in 0..two_m {
                    // a^i b^e1 * a^j b^e2: move a^j left across b^e1, then b^e1 b^e2.
                    let shifted = if e1 == 0 { (i + j) % two_m } else { (i + two_m - j) % two_m };
                    let (eps, k) = if e1 + e2 == 2 {
                        // b^2 = a^m.
                        (0, (shifted + m) % two_m)
                    } else {
                        (e1 + e2, shifted)
                    };
                    table[(e1 * two_m + i) * order + (e2 * two_m + j)] = idx(eps, k);
                }
            }
        }
    }
    let labels = (0..2)
        .flat_map(|eps| {
            (0..two_m).map(move |i| if eps == 0 { format!("a{i}") } else { format!("a{i}b") })
        })
        .collect();
    FiniteGroup::from_table(table, labels, format!("Q({order})"), assoc_trusted())
}

/// The quaternion group Q_8.
pub fn quaternion(cap: usize) -> Result<FiniteGroup> {
    dicyclic(2, cap)
}

/// Z_p^k via the product machinery.
pub fn elementary_abelian(p: u64, k: u32, cap: usize) -> Result<FiniteGroup> {
    if !super::is_prime(p) {
        return Err(Error::BadParameter { family: "EA", reason: format!("{p} is not prime") });
    }
    if k < 1 {
        return Err(Error::BadParameter { family: "EA", reason: "k must be >= 1".into() });
    }
    let product = abelian(&vec![p; k as usize], cap)?;
    Ok(product.group.with_descriptor(format!("EA({p},{k})")))
}

/// Direct product of cyclic groups of the given orders.
pub fn abelian(orders: &[u64], cap: usize) -> Result<DirectProduct> {
    if orders.is_empty() {
        return Err(Error::BadParameter { family: "abelian", reason: "no factors".into() });
    }
    let factors: Result<Vec<FiniteGroup>> = orders.iter().map(|&n| cyclic(n, cap)).collect();
    direct_product(factors?, cap)
}

/// Unipotent upper-triangular n x n matrices over F_p (1s on the diagonal).
pub fn unitriangular(n: u32, p: u64, cap: usize) -> Result<FiniteGroup> {
    if !(2..=6).contains(&n) {
        return Err(Error::BadParameter { family: "U", reason: "n must be in 2..=6".into() });
    }
    if !super::is_prime(p) {
        return Err(Error::BadParameter { family: "U", reason: format!("{p} is not prime") });
    }
    let n = n as usize;
    let slots = n * (n - 1) / 2;
    let order = check_cap((p as u128).pow(slots as u32), cap)?;
    // Strict upper entries in row-major scan order form a mixed-radix rank;
    // rank 0 (all zeros) is the identity matrix.
    let positions: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let unrank = |mut r: usize| -> Vec<u64> {
        let mut digits = vec![0u64; slots];
        for d in (0..slots).rev() {
            digits[d] = (r % p as usize) as u64;
            r /= p as usize;
        }
        digits
    };
    let rank = |digits: &[u64]| -> usize {
        digits.iter().fold(0usize, |acc, &d| acc * p as usize + d as usize)
    };
    let to_matrix = |digits: &[u64]| -> Vec<u64> {
        let mut m = vec![0u64; n * n];
        for i in 0..n {
            m[i * n + i] = 1;
        }
        for (s, &(i, j)) in positions.iter().enumerate() {
            m[i * n + j] = digits[s];
        }
        m
    };
    let mats: Vec<Vec<u64>> = (0..order).map(|r| to_matrix(&unrank(r))).collect();
    let mut table = vec![0u32; order * order];
    let mut digits = vec![0u64; slots];
    for a in 0..order {
        for b in 0..order {
            for (s, &(i, j)) in positions.iter().enumerate() {
                let mut acc = 0u64;
                for k in 0..n {
                    acc = (acc + mats[a][i * n + k] * mats[b][k * n + j]) % p;
                }
                digits[s] = acc;
            }
            table[a * order + b] = rank(&digits) as u32;
        }
    }
    let labels = (0..order)
        .map(|r| {
            let d = unrank(r);
            d.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
        })
        .map(|s| format!("u[{s}]"))
        .collect();
    FiniteGroup::from_table(table, labels, format!("U({n},{p})"), assoc_trusted())
}

/// A direct product together with its factor structure.
///
/// Product element indices are mixed-radix over the factor indices with
/// factor 0 most significant, so the identity tuple lands at index 0.
#[derive(Debug, Clone)]
pub struct DirectProduct {
    pub group: FiniteGroup,
    pub factors: Vec<FiniteGroup>,
    strides: Vec<usize>,
}

pub fn direct_product(factors: Vec<FiniteGroup>, cap: usize) -> Result<DirectProduct> {
    if factors.is_empty() {
        return Err(Error::BadParameter { family: "product", reason: "no factors".into() });
    }
    let order = check_cap(factors.iter().map(|f| f.order() as u128).product(), cap)?;
    let m = factors.len();
    let mut strides = vec![1usize; m];
    for i in (0..m - 1).rev() {
        strides[i] = strides[i + 1] * factors[i + 1].order();
    }
    let decompose = |mut idx: usize| -> Vec<usize> {
        (0..m)
            .map(|i| {
                let c = idx / strides[i];
                idx %= strides[i];
                c
            })
            .collect()
    };
    let mut table = vec![0u32; order * order];
    for a in 0..order {
        let ca = decompose(a);
        for b in 0..order {
            let cb = decompose(b);
            let mut idx = 0usize;
            for i in 0..m {
                idx += factors[i].mul(ca[i], cb[i]) * strides[i];
            }
            table[a * order + b] = idx as u32;
        }
    }
    let labels = (0..order)
        .map(|x| {
            let cs = decompose(x);
            let parts: Vec<&str> = (0..m).map(|i| factors[i].label(cs[i])).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let descriptor =
        factors.iter().map(|f| f.descriptor().to_string()).collect::<Vec<_>>().join(" x ");
    let group = FiniteGroup::from_table(table, labels, descriptor, assoc_trusted())?;
    Ok(DirectProduct { group, factors, strides })
}

impl DirectProduct {
    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    /// Component indices of a product element, factor 0 first.
    pub fn decompose(&self, mut idx: usize) -> Vec<usize> {
        self.strides
            .iter()
            .map(|&s| {
                let c = idx / s;
                idx %= s;
                c
            })
            .collect()
    }

    pub fn compose(&self, components: &[usize]) -> usize {
        components.iter().zip(&self.strides).map(|(&c, &s)| c * s).sum()
    }

    /// Embedding of factor `i` into the product.
    pub fn embedding(&self, i: usize) -> GroupHom {
        let image = (0..self.factors[i].order()).map(|x| (x * self.strides[i]) as u32).collect();
        GroupHom { image }
    }

    /// Projection of the product onto factor `i`.
    pub fn projection(&self, i: usize) -> GroupHom {
        let image = (0..self.group.order()).map(|x| self.decompose(x)[i] as u32).collect();
        GroupHom { image }
    }
}

/// Constructor-produced tables are associative by construction, so validation
/// may skip the cubic check. Keep a small threshold anyway: it is cheap at
/// these sizes and guards the constructors themselves.
fn assoc_trusted() -> usize {
    96
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(cyclic(1, 100).unwrap().order(), 1);
        assert_eq!(dihedral(6, 100).unwrap().order(), 12);
        assert_eq!(symmetric(4, 100).unwrap().order(), 24);
        assert_eq!(alternating(5, 100).unwrap().order(), 60);
        assert_eq!(quaternion(100).unwrap().order(), 8);
        assert_eq!(dicyclic(3, 100).unwrap().order(), 12);
        assert_eq!(elementary_abelian(3, 2, 100).unwrap().order(), 9);
        assert_eq!(unitriangular(3, 2, 100).unwrap().order(), 8);
        assert_eq!(unitriangular(3, 3, 100).unwrap().order(), 27);
    }

    #[test]
    fn cap_refusals() {
        assert!(matches!(cyclic(101, 100), Err(Error::OrderCap { order: 101, cap: 100 })));
        assert!(matches!(symmetric(8, 10_000), Err(Error::OrderCap { .. })));
        assert!(matches!(unitriangular(4, 7, 10_000), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn parameter_validation() {
        assert!(cyclic(0, 100).is_err());
        assert!(elementary_abelian(4, 2, 100).is_err());
        assert!(dicyclic(1, 100).is_err());
        assert!(unitriangular(1, 2, 100).is_err());
        assert!(unitriangular(3, 4, 100).is_err());
    }

    #[test]
    fn symmetric_labels_lexicographic() {
        let s3 = symmetric(3, 100).unwrap();
        assert_eq!(s3.label(0), "012");
        assert_eq!(s3.label(5), "210");
        // Composition convention: (a*b)(i) = a[b[i]].
        let swap01 = s3.element_by_label("102").unwrap();
        let swap12 = s3.element_by_label("021").unwrap();
        let prod = s3.mul(swap01, swap12);
        assert_eq!(s3.label(prod), "120");
    }

    #[test]
    fn alternating_is_even_half() {
        let a4 = alternating(4, 100).unwrap();
        assert_eq!(a4.order(), 12);
        assert_eq!(a4.label(0), "0123");
        assert!(a4.element_by_label("0132").is_none());
    }

    #[test]
    fn dicyclic_relations() {
        let q8 = quaternion(100).unwrap();
        let a = q8.element_by_label("a1").unwrap();
        let b = q8.element_by_label("a0b").unwrap();
        // b^2 = a^2 and b a b^-1 = a^-1.
        assert_eq!(q8.mul(b, b), q8.mul(a, a));
        assert_eq!(q8.conjugate(b, a), q8.inv(a));
        assert_eq!(q8.element_order(b), 4);
        // Exactly one element of order 2.
        let order2 = (0..8).filter(|&x| q8.element_order(x) == 2).count();
        assert_eq!(order2, 1);
    }

    #[test]
    fn unitriangular_heisenberg_p3() {
        let u = unitriangular(3, 3, 100).unwrap();
        assert_eq!(u.order(), 27);
        assert!(!u.is_abelian());
        // Exponent p for odd p.
        assert_eq!(u.exponent(), 3);
        assert_eq!(u.center().len(), 3);
    }

    #[test]
    fn unitriangular_p2_is_dihedral() {
        let u = unitriangular(3, 2, 100).unwrap();
        assert!(!u.is_abelian());
        let order_sets: Vec<usize> = (0..8).map(|x| u.element_order(x)).collect();
        assert_eq!(order_sets.iter().filter(|&&o| o == 4).count(), 2);
        assert_eq!(order_sets.iter().filter(|&&o| o == 2).count(), 5);
    }

    #[test]
    fn product_structure() {
        let z2 = cyclic(2, 100).unwrap();
        let z4 = cyclic(4, 100).unwrap();
        let p = direct_product(vec![z2, z4], 100).unwrap();
        assert_eq!(p.group.order(), 8);
        assert_eq!(p.group.descriptor(), "Z(2) x Z(4)");
        assert_eq!(p.group.label(0), "(0,0)");
        assert_eq!(p.group.label(5), "(1,1)");
        assert_eq!(p.decompose(6), vec![1, 2]);
        assert_eq!(p.compose(&[1, 2]), 6);
        // (1,2) * (1,3) = (0,1).
        assert_eq!(p.group.mul(6, 7), 1);
        let emb = p.embedding(0);
        assert_eq!(emb.image, vec![0, 4]);
        assert!(emb.verify(&p.factors[0], &p.group));
        let proj = p.projection(1);
        assert!(proj.verify(&p.group, &p.factors[1]));
        assert!(proj.is_surjective(&p.factors[1]));
    }

    #[test]
    fn product_of_three() {
        let p = abelian(&[2, 2, 3], 100).unwrap();
        assert_eq!(p.group.order(), 12);
        assert_eq!(p.group.label(0), "(0,0,0)");
        assert!(p.group.is_abelian());
        assert_eq!(p.group.exponent(), 6);
        for i in 0..3 {
            assert!(p.embedding(i).verify(&p.factors[i], &p.group));
        }
    }

    #[test]
    fn coprime_product_is_cyclic() {
        let p = abelian(&[3, 5], 100).unwrap();
        assert!(p.group.is_cyclic());
        assert_eq!(p.group.element_order(p.compose(&[1, 1])), 15);
    }
}
