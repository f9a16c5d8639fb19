//! The stock verification catalog: a fixed roster of small groups drawn from
//! every construction family, used by the theorem suite and the CLI.

use crate::caps::Caps;
use crate::error::Result;
use crate::expr::{evaluate, Atom, Built, GroupExpr};

/// What to generate. The default reproduces the stock catalog: every cyclic
/// group up to the order bound, the elementary abelian groups of order at
/// most 32, abelian products of at most three cyclic factors of order at
/// most 48, the dihedral groups through `D(12)`, symmetric groups through
/// `S(4)`, `A(5)` with `S(5)` as an info-only showcase, the quaternions, two
/// unitriangular groups, and `ST(2,3)`.
#[derive(Debug, Clone)]
pub struct CatalogSpec {
    /// Groups above this order are dropped (info-only showcases excepted).
    pub max_order: usize,
    /// Restrict to these family letters; `None` keeps everything.
    pub families: Option<Vec<String>>,
    pub include_products: bool,
}

impl Default for CatalogSpec {
    fn default() -> CatalogSpec {
        CatalogSpec { max_order: 63, families: None, include_products: true }
    }
}

/// One catalog member, already built. Info-only entries are listed and
/// inspected but exempt from search commands with superlinear cost.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub expr: GroupExpr,
    pub descriptor: String,
    pub built: Built,
    pub info_only: bool,
}

impl CatalogEntry {
    pub fn order(&self) -> usize {
        self.built.group().order()
    }
}

fn product_expr(factors: &[u64]) -> GroupExpr {
    let mut it = factors.iter().map(|&n| GroupExpr::Atom(Atom::Cyclic(n)));
    let first = it.next().expect("product of at least one factor");
    it.fold(first, |acc, rhs| GroupExpr::Product(Box::new(acc), Box::new(rhs)))
}

fn atom_family(expr: &GroupExpr) -> Vec<&'static str> {
    let mut fams: Vec<&'static str> = expr.flatten().iter().map(|a| a.family()).collect();
    fams.dedup();
    fams
}

/// Build the catalog a spec describes, in a fixed deterministic order.
pub fn build_catalog(spec: &CatalogSpec, caps: &Caps) -> Result<Vec<CatalogEntry>> {
    let mut exprs: Vec<(GroupExpr, bool)> = Vec::new();
    let atom = |a: Atom| (GroupExpr::Atom(a), false);

    for n in 2..=spec.max_order as u64 {
        exprs.push(atom(Atom::Cyclic(n)));
    }
    for (p, k) in [(2, 2), (2, 3), (2, 4), (2, 5), (3, 2), (3, 3), (5, 2)] {
        if (p as usize).pow(k as u32) <= spec.max_order.min(32) {
            exprs.push(atom(Atom::ElementaryAbelian(p, k)));
        }
    }
    if spec.include_products {
        let bound = spec.max_order.min(48) as u64;
        for a in 2..=bound {
            for b in a..=bound {
                if a * b <= bound {
                    exprs.push((product_expr(&[a, b]), false));
                }
            }
        }
        for a in 2..=bound {
            for b in a..=bound {
                for c in b..=bound {
                    if a * b * c <= bound {
                        exprs.push((product_expr(&[a, b, c]), false));
                    }
                }
            }
        }
    }
    for n in 3..=12u64 {
        if 2 * n as usize <= spec.max_order {
            exprs.push(atom(Atom::Dihedral(n)));
        }
    }
    for n in 2..=4u64 {
        if (1..=n as usize).product::<usize>() <= spec.max_order {
            exprs.push(atom(Atom::Symmetric(n)));
        }
    }
    // The two order-60+ showcases stand or fall together: A(5) gets the full
    // treatment, S(5) rides along info-only above the order bound.
    if spec.max_order >= 60 {
        exprs.push(atom(Atom::Alternating(5)));
        exprs.push((GroupExpr::Atom(Atom::Symmetric(5)), true));
    }
    if spec.max_order >= 8 {
        exprs.push(atom(Atom::Dicyclic(8)));
        exprs.push(atom(Atom::Unitriangular(3, 2)));
    }
    if spec.max_order >= 27 {
        exprs.push(atom(Atom::Unitriangular(3, 3)));
    }
    if spec.max_order >= 6 {
        exprs.push(atom(Atom::SpecialTriangular(2, 3)));
    }

    let mut entries = Vec::new();
    for (expr, info_only) in exprs {
        if let Some(allowed) = &spec.families {
            if !atom_family(&expr).iter().all(|f| allowed.iter().any(|a| a == f)) {
                continue;
            }
        }
        let built = evaluate(&expr, caps)?;
        if built.group().order() > spec.max_order && !info_only {
            continue;
        }
        entries.push(CatalogEntry { descriptor: expr.to_string(), expr, built, info_only });
    }
    Ok(entries)
}

/// The stock catalog at the default order bound.
pub fn default_catalog(caps: &Caps) -> Result<Vec<CatalogEntry>> {
    build_catalog(&CatalogSpec::default(), caps)
}
