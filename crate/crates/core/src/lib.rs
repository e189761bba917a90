//! Generalized Latin square graphs of finite semigroups.
//!
//! A finite semigroup `S = {s_1, .., s_n}` is given by its Cayley table. Its
//! generalized Latin square graph `Γ(S)` has one vertex `(s_i, s_j, s_i s_j)`
//! per table cell, and two vertices are adjacent when they agree in exactly
//! one coordinate.
//!
//! This crate is `no_std` (it needs `alloc`) and contains the pure algorithmic
//! parts:
//!
//! * [`semigroup`]: validated Cayley tables, the standard families, transpose
//!   and canonical forms up to isomorphism and anti-isomorphism.
//! * [`invariants`]: the per-cell counting invariants and the `O(n^2)` degree
//!   formula, regularity and the factorization-count obstruction.
//! * [`graph`]: the explicit graph built from the definition, used as an
//!   `O(n^4)` oracle, plus components and text exports.
//! * [`spectral`]: a cyclic Jacobi eigensolver, clustered spectra and energy.
//! * [`enumerate`]: depth-first enumeration of all associative tables of a
//!   small order with incremental associativity pruning.
//!
//! Element indices are 0-based inside the Rust API. Every text surface
//! (table formats, error messages, exports) is 1-based.
//!
//! ```
//! use glsg_core::semigroup::CayleyTable;
//! use glsg_core::invariants::{compute_invariants, is_regular_glsg};
//!
//! let null3 = CayleyTable::null(3);
//! let inv = compute_invariants(&null3);
//! assert_eq!(inv.ns(2), 9);
//! assert_eq!(inv.deg(0, 1), 4);
//! assert_eq!(is_regular_glsg(&null3).degree_set, vec![4]);
//! ```
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod enumerate;
pub mod graph;
pub mod invariants;
pub mod semigroup;
pub mod spectral;

pub use graph::GlsgGraph;
pub use invariants::InvariantSet;
pub use semigroup::{CayleyTable, FamilySpec, TableError};
pub use spectral::Spectrum;
