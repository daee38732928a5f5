//! Exact integer arithmetic for K3 lattices.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: integer and rational matrices, determinants, Smith normal
//!   form, characteristic polynomials and exact signatures.
//! * [`lattice`]: integral quadratic lattices, discriminant groups, Hilbert
//!   symbols, genus fingerprints, isotropy and binary-form equivalence.
//! * [`mukai`]: Mukai vectors over a Picard lattice, spherical reflections and
//!   Chern-class/index arithmetic.
//! * [`real_k3`]: Nikulin invariants of lattice involutions and the
//!   topological type of the real locus.
//! * [`monodromy`]: quasi-unipotency, Kulikov type, primitive logarithms and
//!   Weyl group membership.
//!
//! No floating point is used anywhere.

#![allow(clippy::needless_range_loop)]

pub mod arith;
mod error;
pub mod lattice;
pub mod linalg;
pub mod monodromy;
pub mod mukai;
pub mod real_k3;

pub use error::{Error, Result};
pub use lattice::IntegralLattice;
pub use linalg::{IntMatrix, RatMatrix};
