//! Upper-triangular matrix groups over prime fields, and the two-element
//! determining pair inside the determinant-one triangular group of degree
//! p - 2: a diagonal matrix with distinct entries and a unipotent shift.
//!
//! The pair's certificate has two legs. Matrix-level checks run at any p:
//! the joint centralizer of the pair inside upper-triangular matrices is
//! one-dimensional (scalars only), the duality-composed case is excluded by
//! a diagonal mismatch, and the diagonal quotient bounds the generating
//! number below by p - 3. When the group itself fits the order cap (p = 5),
//! every structural map is materialized and checked concretely.

use std::collections::HashSet;

use crate::aut::{verify_map, Automorphism, SearchContext};
use crate::caps::Caps;
use crate::detgen::generating_number;
use crate::error::{Error, Result};
use crate::group::{abelian, is_prime, FiniteGroup, GroupHom};

/// Square matrix over F_p, row-major, entries kept reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixFp {
    pub n: usize,
    pub p: u64,
    entries: Vec<u64>,
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p for prime p and a != 0.
    assert!(!a.is_multiple_of(p), "zero is not invertible");
    let mut base = a % p;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

impl MatrixFp {
    pub fn new(n: usize, p: u64, entries: Vec<u64>) -> MatrixFp {
        assert_eq!(entries.len(), n * n, "row-major n x n entries");
        let entries = entries.into_iter().map(|v| v % p).collect();
        MatrixFp { n, p, entries }
    }

    pub fn from_rows(p: u64, rows: &[Vec<u64>]) -> MatrixFp {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n, "square matrix");
            entries.extend(row.iter().map(|&v| v % p));
        }
        MatrixFp { n, p, entries }
    }

    pub fn identity(n: usize, p: u64) -> MatrixFp {
        let mut m = MatrixFp { n, p, entries: vec![0; n * n] };
        for i in 0..n {
            m.entries[i * n + i] = 1;
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.entries[i * self.n + j] = v % self.p;
    }

    pub fn mul(&self, rhs: &MatrixFp) -> MatrixFp {
        let mut out = MatrixFp { n: self.n, p: self.p, entries: vec![0; self.n * self.n] };
        self.mul_into(rhs, &mut out);
        out
    }

    /// Product written into a caller-owned buffer; the hot loops reuse one.
    pub fn mul_into(&self, rhs: &MatrixFp, out: &mut MatrixFp) {
        let n = self.n;
        assert!(rhs.n == n && rhs.p == self.p && out.n == n && out.p == self.p);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u64;
                for k in 0..n {
                    acc += self.entries[i * n + k] * rhs.entries[k * n + j];
                }
                out.entries[i * n + j] = acc % self.p;
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> MatrixFp {
        let mut acc = MatrixFp::identity(self.n, self.p);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn transpose(&self) -> MatrixFp {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = self.entries[j * n + i];
            }
        }
        out
    }

    /// Conjugation by the reversal permutation: both indices flip.
    pub fn j_conjugate(&self) -> MatrixFp {
        let n = self.n;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = self.entries[(n - 1 - i) * n + (n - 1 - j)];
            }
        }
        out
    }

    pub fn det(&self) -> u64 {
        let n = self.n;
        let p = self.p;
        let mut a = self.entries.clone();
        let mut det = 1u64;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != 0);
            let Some(pivot) = pivot else { return 0 };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = det * (p - 1) % p;
            }
            let pv = a[col * n + col];
            det = det * pv % p;
            let pv_inv = inv_mod(pv, p);
            for r in col + 1..n {
                let factor = a[r * n + col] * pv_inv % p;
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = factor * a[col * n + j] % p;
                    a[r * n + j] = (a[r * n + j] + p - sub) % p;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<MatrixFp> {
        let n = self.n;
        let p = self.p;
        let mut a = self.entries.clone();
        let mut inv = MatrixFp::identity(n, p).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != 0)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let pv_inv = inv_mod(a[col * n + col], p);
            for j in 0..n {
                a[col * n + j] = a[col * n + j] * pv_inv % p;
                inv[col * n + j] = inv[col * n + j] * pv_inv % p;
            }
            for r in 0..n {
                if r == col || a[r * n + col] == 0 {
                    continue;
                }
                let factor = a[r * n + col];
                for j in 0..n {
                    let s1 = factor * a[col * n + j] % p;
                    a[r * n + j] = (a[r * n + j] + p - s1) % p;
                    let s2 = factor * inv[col * n + j] % p;
                    inv[r * n + j] = (inv[r * n + j] + p - s2) % p;
                }
            }
        }
        Some(MatrixFp { n, p, entries: inv })
    }

    /// The duality J (A^{-1})^T J; an involution on invertible matrices that
    /// preserves upper-triangularity and determinant one.
    pub fn dual(&self) -> Option<MatrixFp> {
        Some(self.inverse()?.transpose().j_conjugate())
    }

    pub fn is_upper_triangular(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == 0))
    }

    pub fn is_scalar(&self) -> bool {
        let d = self.get(0, 0);
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == if i == j { d } else { 0 }))
    }
}

/// Which triangular group: degree, field, and whether the determinant is
/// pinned to one.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TriangularSpec {
    pub n: usize,
    pub p: u64,
    pub det_one: bool,
}

impl TriangularSpec {
    /// Group order; saturates at `u128::MAX` for degrees far past any cap.
    pub fn order(&self) -> u128 {
        let units = (self.p - 1) as u128;
        let free_diag = self.n - usize::from(self.det_one);
        let strict_upper = self.n * (self.n - 1) / 2;
        let mut order = 1u128;
        for _ in 0..free_diag {
            order = order.saturating_mul(units);
        }
        for _ in 0..strict_upper {
            order = order.saturating_mul(self.p as u128);
        }
        order
    }

    pub fn descriptor(&self) -> String {
        let family = if self.det_one { "ST" } else { "T" };
        format!("{family}({},{})", self.n, self.p)
    }

    fn validate(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::BadParameter {
                family: "triangular",
                reason: "degree must be at least 2".into(),
            });
        }
        if !is_prime(self.p) {
            return Err(Error::BadParameter {
                family: "triangular",
                reason: format!("{} is not prime", self.p),
            });
        }
        Ok(())
    }

    fn free_diag(&self) -> usize {
        self.n - usize::from(self.det_one)
    }

    /// Matrix at a rank. Ranks are mixed radix over the free diagonal
    /// entries (unit values, offset by one so the identity sits at rank
    /// zero) followed by the strict upper entries in row-major order.
    pub fn matrix_of(&self, mut rank: usize) -> MatrixFp {
        let TriangularSpec { n, p, det_one } = *self;
        let strict: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut radices: Vec<usize> = vec![(p - 1) as usize; self.free_diag()];
        radices.extend(std::iter::repeat_n(p as usize, strict.len()));
        let mut digits = vec![0usize; radices.len()];
        for k in (0..radices.len()).rev() {
            digits[k] = rank % radices[k];
            rank /= radices[k];
        }
        assert_eq!(rank, 0, "rank within the group order");
        let mut m = MatrixFp::identity(n, p);
        let mut diag_prod = 1u64;
        for i in 0..self.free_diag() {
            let v = digits[i] as u64 + 1;
            m.set(i, i, v);
            diag_prod = diag_prod * v % p;
        }
        if det_one {
            m.set(n - 1, n - 1, inv_mod(diag_prod, p));
        }
        for (k, &(i, j)) in strict.iter().enumerate() {
            m.set(i, j, digits[self.free_diag() + k] as u64);
        }
        m
    }

    /// Rank of a member matrix; `None` when the matrix lies outside the
    /// group (wrong shape, non-unit diagonal, or determinant mismatch).
    pub fn index_of(&self, m: &MatrixFp) -> Option<usize> {
        let TriangularSpec { n, p, det_one } = *self;
        if m.n != n || m.p != p || !m.is_upper_triangular() {
            return None;
        }
        let mut diag_prod = 1u64;
        for i in 0..n {
            let v = m.get(i, i);
            if v == 0 {
                return None;
            }
            diag_prod = diag_prod * v % p;
        }
        if det_one && diag_prod != 1 {
            return None;
        }
        let mut rank = 0usize;
        for i in 0..self.free_diag() {
            rank = rank * (p - 1) as usize + (m.get(i, i) - 1) as usize;
        }
        for i in 0..n {
            for j in i + 1..n {
                rank = rank * p as usize + m.get(i, j) as usize;
            }
        }
        Some(rank)
    }
}

/// A materialized triangular group. Ranks into the table follow the
/// `TriangularSpec` arithmetic index scheme; no hashing anywhere.
pub struct StGroup {
    pub spec: TriangularSpec,
    pub group: FiniteGroup,
}

impl StGroup {
    pub fn matrix_of(&self, rank: usize) -> MatrixFp {
        self.spec.matrix_of(rank)
    }

    pub fn index_of(&self, m: &MatrixFp) -> Option<usize> {
        self.spec.index_of(m)
    }
}

pub fn st_group(spec: &TriangularSpec, caps: &Caps) -> Result<StGroup> {
    spec.validate()?;
    let order_big = spec.order();
    if order_big > caps.order_cap as u128 {
        return Err(Error::OrderCap { order: order_big, cap: caps.order_cap });
    }
    let order = order_big as usize;
    let mats: Vec<MatrixFp> = (0..order).map(|r| spec.matrix_of(r)).collect();
    let mut table = vec![0u32; order * order];
    let mut scratch = MatrixFp::identity(spec.n, spec.p);
    for a in 0..order {
        for b in 0..order {
            mats[a].mul_into(&mats[b], &mut scratch);
            let idx = spec.index_of(&scratch).expect("products stay in the group");
            table[a * order + b] = idx as u32;
        }
    }
    let labels: Vec<String> = mats
        .iter()
        .map(|m| {
            let cells: Vec<String> = (0..spec.n)
                .flat_map(|i| (i..spec.n).map(move |j| m.get(i, j).to_string()))
                .collect();
            cells.join(",")
        })
        .collect();
    // Matrix multiplication is associative by construction; the table check
    // threshold mirrors the group constructors.
    let group = FiniteGroup::from_table(table, labels, spec.descriptor(), 96)?;
    Ok(StGroup { spec: *spec, group })
}

/// The conditional determining pair for the determinant-one triangular group
/// of degree p - 2: the diagonal matrix (1, 2, ..., p-2) and the unipotent
/// shift I + sum of superdiagonal units. Wilson's theorem puts the diagonal
/// matrix inside the determinant-one group.
pub fn determining_pair(p: u64) -> Result<(MatrixFp, MatrixFp)> {
    if !is_prime(p) || p < 5 {
        return Err(Error::pre("determining_pair", "needs a prime p >= 5"));
    }
    let n = (p - 2) as usize;
    let mut b = MatrixFp::identity(n, p);
    for i in 0..n {
        b.set(i, i, i as u64 + 1);
    }
    let mut c = MatrixFp::identity(n, p);
    for i in 0..n - 1 {
        c.set(i, i + 1, 1);
    }
    Ok((b, c))
}

/// Row rank of a matrix over F_p via elimination; rows are consumed.
fn rank_mod_p(rows: &mut [Vec<u64>], p: u64) -> usize {
    let width = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else { continue };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p);
        for j in col..width {
            rows[rank][j] = rows[rank][j] * inv % p;
        }
        for r in 0..rows.len() {
            if r == rank || rows[r][col] == 0 {
                continue;
            }
            let factor = rows[r][col];
            for j in col..width {
                let sub = factor * rows[rank][j] % p;
                rows[r][j] = (rows[r][j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Dimension of the space of upper-triangular matrices commuting with both
/// members of the determining pair, via an exact linear solve in the
/// n(n+1)/2 upper entries. One means scalars only.
pub fn pair_centralizer_dimension(p: u64) -> Result<usize> {
    let (b, c) = determining_pair(p)?;
    let n = b.n;
    let unknowns: Vec<(usize, usize)> =
        (0..n).flat_map(|r| (r..n).map(move |c| (r, c))).collect();
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for x in [&b, &c] {
        for i in 0..n {
            for j in 0..n {
                // Coefficient of q_{r,c} in (QX - XQ)_{ij}.
                let row: Vec<u64> = unknowns
                    .iter()
                    .map(|&(r, cc)| {
                        let plus = if r == i { x.get(cc, j) } else { 0 };
                        let minus = if cc == j { x.get(i, r) } else { 0 };
                        (plus + p - minus) % p
                    })
                    .collect();
                if row.iter().any(|&v| v != 0) {
                    rows.push(row);
                }
            }
        }
    }
    Ok(unknowns.len() - rank_mod_p(&mut rows, p))
}

/// Whether the duality-composed case dies on the diagonal: the dual of the
/// diagonal member has top-left entry (p-2)^{-1}, which differs from 1 for
/// every p >= 5, while triangular conjugation preserves the diagonal.
pub fn duality_case_excluded(p: u64) -> Result<bool> {
    let (b, _) = determining_pair(p)?;
    let dual = b.dual().expect("a diagonal of units is invertible");
    Ok(dual.get(0, 0) != 1)
}

/// The two shapes a structural map takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructuralCase {
    /// f(A) = Q A Q^{-1}.
    Conjugation,
    /// f(A) = Q (J A^{-T} J) Q^{-1}.
    DualityConjugation,
}

/// Materializes a structural map on a built triangular group and verifies it
/// as an automorphism. `q` must be upper triangular and invertible over the
/// same field.
pub fn structural_automorphism(
    st: &StGroup,
    q: &MatrixFp,
    case: StructuralCase,
) -> Result<Automorphism> {
    const OP: &str = "structural_automorphism";
    if q.n != st.spec.n || q.p != st.spec.p {
        return Err(Error::pre(OP, "matrix shape or field does not match the group"));
    }
    if !q.is_upper_triangular() {
        return Err(Error::pre(OP, "the conjugating matrix is not upper triangular"));
    }
    let Some(qinv) = q.inverse() else {
        return Err(Error::pre(OP, "the conjugating matrix is singular"));
    };
    let image: Vec<u32> = (0..st.group.order())
        .map(|idx| {
            let a = st.matrix_of(idx);
            let t = match case {
                StructuralCase::Conjugation => a,
                StructuralCase::DualityConjugation => {
                    a.dual().expect("group elements are invertible")
                }
            };
            let res = q.mul(&t).mul(&qinv);
            st.index_of(&res).expect("structural maps stay inside the group") as u32
        })
        .collect();
    Automorphism::from_hom(&st.group, &GroupHom { image })
}

/// The diagonal-quotient leg of the certificate: dropping the pinned last
/// entry, the diagonal map is a surjective homomorphism onto n-1 copies of
/// the unit group, so the generating number of the triangular group is at
/// least n-1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalQuotientBound {
    /// Lower bound on the generating number: n - 1 copies of Z_{p-1}.
    pub bound: usize,
    pub kernel_order: u128,
    /// True when the group fit the cap and the quotient map was materialized
    /// and checked (homomorphism, surjectivity, kernel is the unipotent part).
    pub verified_on_group: bool,
}

pub fn diagonal_quotient_bound(spec: &TriangularSpec, caps: &Caps) -> Result<DiagonalQuotientBound> {
    spec.validate()?;
    if !spec.det_one {
        return Err(Error::pre(
            "diagonal_quotient_bound",
            "the bound is stated for the determinant-one group",
        ));
    }
    let k = spec.n - 1;
    let p = spec.p;
    let kernel_order = (p as u128).pow((spec.n * (spec.n - 1) / 2) as u32);
    // Generating number of k copies of Z_{p-1}: fewer than k elements of an
    // abelian group of exponent p-1 span at most (p-1)^(k-1) of the
    // (p-1)^k elements; the unit vectors reach the whole group.
    let bound = k;
    if spec.order() > caps.order_cap as u128 {
        return Ok(DiagonalQuotientBound { bound, kernel_order, verified_on_group: false });
    }

    let st = st_group(spec, caps)?;
    let target = abelian(&vec![p - 1; k], caps.order_cap)?;
    let root = (2..p).find(|&g| {
        let mut acc = 1u64;
        (1..p - 1).all(|_| {
            acc = acc * g % p;
            acc != 1
        })
    })
    .expect("every prime field has a primitive root");
    let mut dlog = vec![0usize; p as usize];
    let mut acc = 1u64;
    for e in 0..p - 1 {
        dlog[acc as usize] = e as usize;
        acc = acc * root % p;
    }
    let image: Vec<u32> = (0..st.group.order())
        .map(|idx| {
            let m = st.matrix_of(idx);
            let comps: Vec<usize> = (0..k).map(|i| dlog[m.get(i, i) as usize]).collect();
            target.compose(&comps) as u32
        })
        .collect();
    let hom = GroupHom { image };
    assert!(hom.verify(&st.group, &target.group), "the diagonal map multiplies pointwise");
    assert!(hom.is_surjective(&target.group), "free diagonal entries realize every unit tuple");
    let kernel = hom.kernel();
    assert_eq!(kernel.len() as u128, kernel_order);
    assert!(
        kernel.iter().all(|idx| {
            let m = st.matrix_of(idx);
            (0..spec.n).all(|i| m.get(i, i) == 1)
        }),
        "the kernel is the unipotent subgroup"
    );
    // The order-counting certificate against an actual search.
    assert_eq!(generating_number(&target.group, caps)?.value, bound);
    Ok(DiagonalQuotientBound { bound, kernel_order, verified_on_group: true })
}

/// Exhaustive scan of the structural family on a materialized group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcreteFamilyChecks {
    pub group_order: usize,
    /// Invertible upper-triangular conjugators enumerated.
    pub q_count: usize,
    /// Maps materialized and verified (two cases per conjugator).
    pub maps_verified: usize,
    /// Distinct maps among them, keyed by generator images.
    pub distinct_maps: usize,
    /// Distinct maps fixing both members of the pair; one means only the
    /// identity, making the pair determining within the family.
    pub pair_fixing_distinct: usize,
    /// Candidates that failed the automorphism check; zero expected.
    pub rejected: usize,
    /// Order of the subgroup the pair generates: the pair determines the
    /// group without generating it.
    pub pair_span_order: usize,
}

fn concrete_family_checks(
    spec: &TriangularSpec,
    b: &MatrixFp,
    c: &MatrixFp,
    caps: &Caps,
) -> Result<ConcreteFamilyChecks> {
    let st = st_group(spec, caps)?;
    let order = st.group.order();
    let n = spec.n;
    let p = spec.p;
    let b_idx = st.index_of(b).expect("Wilson: the diagonal member has determinant one");
    let c_idx = st.index_of(c).expect("the unipotent member has determinant one");
    let pair_span_order = st.group.closure(&[b_idx, c_idx]).len();

    let mats: Vec<MatrixFp> = (0..order).map(|r| st.matrix_of(r)).collect();
    let duals: Vec<MatrixFp> =
        mats.iter().map(|m| m.dual().expect("group elements are invertible")).collect();
    let seq = SearchContext::new(&st.group).seq;

    // Enumerate upper-triangular invertible Q: unit diagonals, free strict
    // upper entries.
    let strict: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut radices: Vec<usize> = vec![(p - 1) as usize; n];
    radices.extend(std::iter::repeat_n(p as usize, strict.len()));
    let q_count: usize = radices.iter().product();

    let mut maps_verified = 0usize;
    let mut rejected = 0usize;
    let mut distinct: HashSet<Vec<u32>> = HashSet::new();
    let mut fixing: HashSet<Vec<u32>> = HashSet::new();
    let mut scratch1 = MatrixFp::identity(n, p);
    let mut scratch2 = MatrixFp::identity(n, p);
    let mut digits = vec![0usize; radices.len()];
    let mut image = vec![0u32; order];
    let mut seen = vec![false; order];
    loop {
        let mut q = MatrixFp::identity(n, p);
        for i in 0..n {
            q.set(i, i, digits[i] as u64 + 1);
        }
        for (k, &(i, j)) in strict.iter().enumerate() {
            q.set(i, j, digits[n + k] as u64);
        }
        let qinv = q.inverse().expect("unit diagonal makes Q invertible");
        for case in [StructuralCase::Conjugation, StructuralCase::DualityConjugation] {
            let sources = match case {
                StructuralCase::Conjugation => &mats,
                StructuralCase::DualityConjugation => &duals,
            };
            for (idx, src) in sources.iter().enumerate() {
                q.mul_into(src, &mut scratch1);
                scratch1.mul_into(&qinv, &mut scratch2);
                image[idx] =
                    st.index_of(&scratch2).expect("conjugation stays inside the group") as u32;
            }
            seen.fill(false);
            let bijective = image.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true));
            if bijective && verify_map(&st.group, &st.group, &seq, &image) {
                maps_verified += 1;
                let key: Vec<u32> = seq.iter().map(|&s| image[s]).collect();
                distinct.insert(key.clone());
                if image[b_idx] as usize == b_idx && image[c_idx] as usize == c_idx {
                    assert!(
                        image.iter().enumerate().all(|(x, &y)| x == y as usize),
                        "only the identity map fixes the pair"
                    );
                    fixing.insert(key);
                }
            } else {
                rejected += 1;
            }
        }
        let mut done = true;
        for k in (0..digits.len()).rev() {
            digits[k] += 1;
            if digits[k] < radices[k] {
                done = false;
                break;
            }
            digits[k] = 0;
        }
        if done {
            break;
        }
    }
    Ok(ConcreteFamilyChecks {
        group_order: order,
        q_count,
        maps_verified,
        distinct_maps: distinct.len(),
        pair_fixing_distinct: fixing.len(),
        rejected,
        pair_span_order,
    })
}

/// The full certificate for one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeterminingPairVerdict {
    pub p: u64,
    pub n: usize,
    pub group_order: u128,
    /// Determining number of the group under the classification of its
    /// automorphisms into the structural family; not re-derived here.
    pub alpha: usize,
    /// Always true: the alpha value rests on that classification.
    pub conditional: bool,
    /// Generating number lower bound from the diagonal quotient (p - 3).
    pub gamma_lower_bound: usize,
    pub centralizer_dimension: usize,
    pub duality_excluded: bool,
    /// The pair does not commute, so the determining number is at least 2.
    pub nonabelian: bool,
    /// Present when the group fits the order cap and every structural map
    /// was checked concretely.
    pub concrete: Option<ConcreteFamilyChecks>,
}

/// Certifies that the determining pair pins down the triangular group of
/// degree p - 2, conditional on the structural classification: the joint
/// centralizer is scalar, the duality case is excluded, and the group is
/// nonabelian, giving alpha = 2 while the generating number grows with p.
pub fn verify_determining_pair(p: u64, caps: &Caps) -> Result<DeterminingPairVerdict> {
    let (b, c) = determining_pair(p)?;
    let n = b.n;
    let spec = TriangularSpec { n, p, det_one: true };
    let centralizer_dimension = pair_centralizer_dimension(p)?;
    let duality_excluded = duality_case_excluded(p)?;
    let nonabelian = b.mul(&c) != c.mul(&b);
    if centralizer_dimension != 1 || !duality_excluded || !nonabelian {
        return Err(Error::pre(
            "verify_determining_pair",
            format!("certificate legs failed at p = {p}"),
        ));
    }
    let bound = diagonal_quotient_bound(&spec, caps)?;
    let concrete = if spec.order() <= caps.order_cap as u128 {
        Some(concrete_family_checks(&spec, &b, &c, caps)?)
    } else {
        None
    };
    Ok(DeterminingPairVerdict {
        p,
        n,
        group_order: spec.order(),
        alpha: 2,
        conditional: true,
        gamma_lower_bound: bound.bound,
        centralizer_dimension,
        duality_excluded,
        nonabelian,
        concrete,
    })
}
