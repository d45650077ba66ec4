//! Isometry of integral quadratic lattices over dyadic local fields.
//!
//! Lattices are given by Gram matrices over Q_2 or a totally ramified
//! extension. Good BONGs and their invariants R_i, α_i decide isometry;
//! the classical Jordan-splitting criterion and the 2-adic specialisation
//! are provided as independent deciders.

#![allow(clippy::needless_range_loop)]

pub mod bong;
pub mod classify;
pub mod error;
pub mod field;
pub mod invariants;
pub mod json;
pub mod lattice;
pub mod random;
pub mod selftest;
pub mod spaces;

pub use error::{Error, Result};
pub use field::{Field, FieldElement};

/// Stand-in for +∞ in orders and defects. Large enough to dominate every
/// finite order, small enough that sums do not overflow.
pub const INF: i64 = 1 << 40;

pub fn is_inf(v: i64) -> bool {
    v >= INF / 2
}
