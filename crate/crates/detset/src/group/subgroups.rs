//! Subgroup lattice scans, quotients, and the nilpotency test.

use super::{ClosureState, FiniteGroup, GroupHom, Subset};
use crate::error::{Error, Result};
use std::collections::BTreeSet;

impl FiniteGroup {
    /// Every subgroup, found by closing known subgroups under one extra
    /// generator until the lattice stabilizes. Output is sorted by
    /// (order, members) for determinism.
    pub fn all_subgroups(&self, scan_cap: usize) -> Result<Vec<Subset>> {
        if self.order() > scan_cap {
            return Err(Error::ScanCap { order: self.order(), cap: scan_cap });
        }
        let trivial = self.trivial_subset();
        let mut known: BTreeSet<Vec<u32>> = BTreeSet::new();
        known.insert(trivial.members().to_vec());
        let mut queue = vec![trivial];
        while let Some(h) = queue.pop() {
            for g in 1..self.order() {
                if h.contains(g) {
                    continue;
                }
                let mut state = ClosureState::identity(self);
                for x in h.iter() {
                    state.extend(self, x);
                }
                state.extend(self, g);
                let bigger = state.into_subset();
                if known.insert(bigger.members().to_vec()) {
                    queue.push(bigger);
                }
            }
        }
        let mut out: Vec<Subset> = known.into_iter().map(Subset::new).collect();
        out.sort_by(|a, b| (a.len(), a.members()).cmp(&(b.len(), b.members())));
        Ok(out)
    }

    pub fn is_normal(&self, h: &Subset) -> bool {
        (0..self.order()).all(|g| h.iter().all(|x| h.contains(self.conjugate(g, x))))
    }

    /// Normal subgroups: the subgroups that are unions of conjugacy classes.
    pub fn normal_subgroups(&self, scan_cap: usize) -> Result<Vec<Subset>> {
        Ok(self.all_subgroups(scan_cap)?.into_iter().filter(|h| self.is_normal(h)).collect())
    }

    /// True when the only normal subgroups are trivial and the whole group.
    pub fn is_simple(&self, scan_cap: usize) -> Result<bool> {
        Ok(self.order() > 1 && self.normal_subgroups(scan_cap)?.len() == 2)
    }

    /// Quotient by a normal subgroup. Cosets are indexed by their least
    /// representative, identity coset first. Also returns the projection.
    pub fn quotient(&self, n: &Subset) -> Result<(FiniteGroup, GroupHom)> {
        if self.closure_of_subset(n) != *n {
            return Err(Error::NotSubgroup);
        }
        if !self.is_normal(n) {
            return Err(Error::NotNormal);
        }
        let order = self.order();
        let mut coset_of = vec![u32::MAX; order];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..order {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            for m in n.iter() {
                coset_of[self.mul(x, m)] = id;
            }
            reps.push(x);
        }
        let q = reps.len();
        debug_assert_eq!(q * n.len(), order);
        let mut table = vec![0u32; q * q];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * q + j] = coset_of[self.mul(a, b)];
            }
        }
        let labels = reps.iter().map(|&r| format!("[{}]", self.label(r))).collect();
        let descriptor = format!("{}/N{}", self.descriptor(), n.len());
        let group = FiniteGroup::from_table(table, labels, descriptor, 0)?;
        let projection = GroupHom { image: coset_of };
        Ok((group, projection))
    }

    /// Upper central series test: repeatedly pull back the center of the
    /// quotient until the series stalls or reaches the whole group.
    pub fn nilpotency(&self) -> NilpotencyReport {
        let mut series = vec![self.trivial_subset()];
        loop {
            let current = series.last().unwrap();
            if current.len() == self.order() {
                return NilpotencyReport { nilpotent: true, upper_central_series: series };
            }
            let (q, proj) = self.quotient(current).expect("series members are normal");
            let zq = q.center();
            let next_members: Vec<u32> = (0..self.order() as u32)
                .filter(|&x| zq.contains(proj.apply(x as usize)))
                .collect();
            let next = Subset::new(next_members);
            if next.len() == current.len() {
                return NilpotencyReport { nilpotent: false, upper_central_series: series };
            }
            series.push(next);
        }
    }

    pub fn is_nilpotent(&self) -> bool {
        self.nilpotency().nilpotent
    }
}

/// Outcome of the upper central series computation. The series starts at the
/// trivial subgroup and each step is the preimage of the quotient's center.
#[derive(Debug, Clone)]
pub struct NilpotencyReport {
    pub nilpotent: bool,
    pub upper_central_series: Vec<Subset>,
}

impl NilpotencyReport {
    /// Nilpotency class when nilpotent (length of the strictly increasing series).
    pub fn class(&self) -> Option<usize> {
        self.nilpotent.then(|| self.upper_central_series.len() - 1)
    }
}
