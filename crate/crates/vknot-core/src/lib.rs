//! Exact combinatorial invariants of virtual knot diagrams given as Gauss
//! codes: Fox p-coloring spaces, coloring-matrix determinants, dihedral
//! quandle colorings, and Euler-circuit counts of the associated 2-in/2-out
//! digraph, plus a deterministic randomized harness that cross-checks the
//! Kauffman-Harary heterogeneity property and its supporting identities on
//! generated corpora.
//!
//! All arithmetic is exact (arbitrary-precision integers, prime fields);
//! there is no floating point anywhere in this crate. Every operation is a
//! pure function on immutable values, and everything seeded is reproducible
//! from the seed alone.
//!
//! The crate is `no_std` (with `alloc`); IO, JSON and the command-line
//! front end live in the companion `vknot-cli` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod arc_matrix;
pub mod euler_graph;
pub mod exact_linalg;
pub mod fox_coloring;
pub mod gauss_code;
mod primality;
mod rng;
pub mod verify;

pub use arc_matrix::{ArcTable, ColoringMatrix};
pub use euler_graph::DirectedMultigraph;
pub use exact_linalg::{IntMatrix, ModPVector};
pub use fox_coloring::{Coloring, ColoringSpace, Quandle};
pub use gauss_code::{DiagramClass, GaussCode, Pass, Sign, Visit};
pub use verify::{Check, FuzzConfig, FuzzReport, KhReport};
