//! Exact GF(2) linear algebra and certification tools for twin-free graphs
//! whose adjacency matrices have minimal binary rank.
//!
//! The crate is layered bottom-up:
//!
//! - [`gf2`]: bit-packed vectors and matrices, rank and row-space queries,
//!   and the `f2mat` text format.
//! - [`graph`]: simple undirected graphs on top of [`gf2::BitMatrix`], with
//!   the twin-free / negation-free predicates, line graphs and graph6 I/O.
//! - [`products`]: Kronecker and parity products and the `0 -> +1, 1 -> -1`
//!   sign map that relates them.
//! - [`constructions`]: the concrete graph families.
//! - [`spectral`]: exact Hadamard checks and a cyclic Jacobi eigensolver.
//! - [`verify`]: per-property checkers aggregated into a [`verify::VerificationReport`].
//! - [`search`]: exhaustive enumeration at orders 4 and 8, and an exact
//!   isomorphism test.

pub mod constructions;
pub mod gf2;
pub mod graph;
pub mod products;
pub mod search;
pub mod spectral;
pub mod verify;

pub use gf2::{BitMatrix, BitVector};
pub use graph::Graph;
