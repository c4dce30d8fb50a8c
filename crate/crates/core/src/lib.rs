//! Normalized volumes of type-PQ adjacency polytopes.
//!
//! For a simple graph `G` on `[n]`, the type-PQ adjacency polytope is the
//! convex hull of the points `(e_i, e_j) ∈ R^{2n}` with `i = j` or `ij ∈ E(G)`.
//! For connected `G` its normalized volume equals the number of draconian
//! sequences of the doubled bipartite graph `D(G)`. This crate
//!
//! - builds the graphs of interest ([`graph`], [`family`]),
//! - decides and enumerates draconian sequences ([`draconian`]),
//! - evaluates the closed-form volumes for complete graphs, triangles on
//!   matchings, and path or cycle deletions ([`closed_forms`]),
//! - constructs the explicit exception sets behind the deletion formulas
//!   ([`exception_sets`]) and the maps behind the tripling recurrence
//!   ([`recurrence`]),
//! - cross-checks everything with an independent lattice-point count
//!   ([`ehrhart`]) and collects the results into a ledger ([`verify`]).
//!
//! ```
//! use pqvol::graph::{complete_graph, delete_path};
//! use pqvol::draconian::count_draconian;
//!
//! let k4 = complete_graph(4)?;
//! assert_eq!(count_draconian(&k4).count, 20u32.into());
//! assert_eq!(count_draconian(&delete_path(4, 2)?).count, 12u32.into());
//! # Ok::<(), pqvol::Error>(())
//! ```
//!
//! The `book/` directory at the repository root walks through each concept;
//! its code listings are compiled and run as doc-tests of this crate.

pub mod bitset;
pub mod closed_forms;
pub mod composition;
pub mod draconian;
pub mod ehrhart;
pub mod error;
pub mod exception_sets;
pub mod family;
pub mod flow;
pub mod graph;
pub mod recurrence;
mod report;
pub mod verify;

pub use composition::{CompositionSequence, SequenceSet};
pub use draconian::{Engine, VolumeReport};
pub use error::{Error, Result};
pub use graph::{BipartiteDouble, Edge, Graph};

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/draconian.md")]
    mod draconian {}
    #[doc = include_str!("../../../book/src/closed_forms.md")]
    mod closed_forms {}
    #[doc = include_str!("../../../book/src/exception_sets.md")]
    mod exception_sets {}
    #[doc = include_str!("../../../book/src/recurrence.md")]
    mod recurrence {}
    #[doc = include_str!("../../../book/src/ehrhart.md")]
    mod ehrhart {}
}
