//! Determining and generating numbers of concrete finite groups.
//!
//! A determining set is a set of elements fixed pointwise only by the trivial
//! automorphism; the determining number is the least size of one. The
//! generating number is the least size of a generating set. This crate builds
//! small groups as explicit Cayley tables, enumerates or searches their
//! automorphisms, computes both invariants with independent oracles, and
//! machine-checks a suite of structural facts over a catalog of groups.

// Grid math throughout (Cayley tables, matrices, odometers, pool tables)
// reads clearest with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod aut;
pub mod caps;
pub mod catalog;
pub mod constructions;
pub mod detgen;
pub mod error;
pub mod expr;
pub mod group;
pub mod product;
pub mod report;
pub mod suite;
pub mod triangular;

pub use aut::{aut_group, fixing_automorphism, AutGroup, Automorphism};
pub use caps::Caps;
pub use detgen::{determining_number, generating_number, Alpha, AlphaStrategy, Gamma};
pub use error::{Error, Result};
pub use group::{FiniteGroup, GroupHom, Subset};
