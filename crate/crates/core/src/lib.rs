//! Sparse r-uniform hypergraphs in the Brown–Erdős–Sós regime.
//!
//! The crate is organised around the objects the extremal arguments act on:
//!
//! * [`hypergraph`]: canonical edge storage, codegree index, links, vertex deletion, text I/O.
//! * [`freeness`]: deciding `G_r(v,e)`-freeness and finding bad configurations.
//! * [`cleanup`]: the codegree peeling procedure with its removal log.
//! * [`increment`]: structural analysis around a bad configuration and the
//!   density-increment deletion loop.
//! * [`extremal`]: exact Turán numbers at small `n`, greedy packings,
//!   witness-certified lower bounds and the table of closed-form limits.

pub mod cleanup;
pub mod combinatorics;
pub mod error;
pub mod extremal;
pub mod freeness;
pub mod hypergraph;
pub mod increment;

pub use error::{Error, Result};
pub use hypergraph::{EdgeId, Hypergraph, Relabeling, SubsetKey, Vertex};

/// Exact rational used for every density, bound and limit.
pub type Rational = num_rational::Ratio<i128>;

/// Default node budget for configuration searches and the exact solver.
pub const DEFAULT_BUDGET: u64 = 10_000_000;
