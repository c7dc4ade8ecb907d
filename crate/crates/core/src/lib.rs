//! Finite-volume engine for q-state nearest-neighbour spin models on the
//! Cayley tree of order `k`.
//!
//! The crate is `no_std` and only needs `alloc`. It covers:
//!
//! * [`tree`]: balls `V_n` of the Cayley tree with the halo sphere `W_{n+1}`,
//!   vertex/edge boundaries and connected-subgraph enumeration;
//! * [`group`]: the vertex ↔ reduced-word correspondence with the free product
//!   of `k + 1` copies of `Z_2`, and periodic configurations induced by
//!   homomorphisms onto finite groups;
//! * [`model`]: model specifications, edge energies, Hamiltonians and
//!   ground-state checks;
//! * [`contour`]: boundaries, subcontours and contours of boundary-extended
//!   configurations;
//! * [`gibbs`]: finite-volume Gibbs measures by exact enumeration and by
//!   tree recursion, contour probabilities and the contour-erasure map;
//! * [`verify`]: exhaustive checks of the counting identities and bounds,
//!   shared by the command-line driver and the test suites.
//!
//! Spin values are 0-based indices throughout this crate (`0..q`); front ends
//! that present them as `1..=q` must translate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod config;
pub mod contour;
pub mod error;
pub mod gibbs;
pub mod group;
pub mod logsum;
pub mod model;
pub mod tree;
pub mod verify;

pub use config::{Configuration, PartialConfiguration};
pub use error::{Budget, Error, Result};
pub use model::ModelSpec;
pub use tree::{EdgeId, TreeVolume, Vertex};
