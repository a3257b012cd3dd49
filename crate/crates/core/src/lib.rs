//! Uniformly edge-colored complete graphs `K_n^r`.
//!
//! Sampling, brute-force oracles, exact subgraph detectors, closed-form
//! moment and threshold formulas, and the Monte Carlo trial kernel. The crate
//! is `no_std` and only needs an allocator; file formats, parallel execution
//! and the command line live in the `chromathresh` crate.
#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bigmath;
pub mod detect;
pub mod error;
pub mod graph;
pub mod moments;
pub mod montecarlo;
pub mod oracle;
pub mod query;
pub mod rng;

pub use error::{Error, Result};
pub use graph::{ColoredGraph, Color, EdgeIdx, Vertex};
pub use query::{Chromatic, PropertyLabel, PropertyQuery, SubgraphKind};
pub use rng::SeedSpec;
