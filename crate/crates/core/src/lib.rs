//! Average effective resistance of unit-resistance multigraphs: solvers,
//! extremal constructions, bounds and an exhaustive small-case search.

pub mod bounds;
pub mod canonical;
pub mod constructions;
pub mod edgelist;
pub mod error;
pub mod flow;
pub mod multigraph;
pub mod resistance;
pub mod search;
pub mod solver;
pub mod spanning;
pub mod spectral;
pub mod verify;

pub use error::{Error, Result};
pub use multigraph::{Multigraph, RootedGraph, Vertex};
pub use resistance::{Resistance, ResistanceSummary, RootedSummary, WeightedNetwork};
