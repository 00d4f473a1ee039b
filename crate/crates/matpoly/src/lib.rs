//! Exact computation of matroid polynomial invariants.
//!
//! The crate computes coboundary, Möbius, Tutte and two-variable zeta
//! polynomials of matroids given by a representation matrix, a uniform
//! parameter pair, duality, or an explicit rank table. All arithmetic is
//! exact (arbitrary-precision rationals); nothing is floating point.
//!
//! On top of the invariants sit two reconstruction procedures that recover
//! the coboundary polynomial of a matroid from the Möbius polynomials of the
//! matroid and its dual, and a randomized search harness that looks for
//! pairs of matroids sharing Möbius data while differing in coboundary data.

pub mod comb;
pub mod corpus;
pub mod duality;
pub mod error;
pub mod field;
pub mod invariants;
pub mod lattice;
pub mod matrix;
pub mod matroid;
pub mod poly;
pub mod reconstruct;
pub mod search;
pub mod solve;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
