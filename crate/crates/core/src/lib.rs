//! Exact combinatorial kernel for rings of differential operators on affine
//! toric varieties.
//!
//! For an integer matrix `A` whose columns generate `Z^d`, the crate computes
//! the invariants controlling `D(R_A)`: facet support functions and the face
//! lattice of the cone, exact semigroup membership, the sets `E_tau(alpha)`
//! classifying hypergeometric systems, extremeness and strict-sign
//! feasibility, graded annihilator descriptions, the finite set of homogeneous
//! primitive ideals, and the simplicity verdict. All arithmetic is exact.

// index loops mirror the matrix notation throughout
#![allow(clippy::needless_range_loop)]

pub mod classify;
pub mod cone;
pub mod error;
pub mod fm;
pub mod lattice;
pub mod matrix;
pub mod prim;
pub mod rat;
pub mod report;
pub mod semigroup;

pub use error::{Error, Result};
