//! The pressing game on black-and-white graphs and its link to sorting
//! signed permutations by reversals.
//!
//! * [`bwgraph`]: graphs, the press operation, component classification.
//! * [`permrev`]: signed permutations, the desire/reality graph, overlap
//!   graphs and the hurdle-free reversal distance.
//! * [`paths`]: pressing-path checks, enumeration and greedy solving.
//! * [`meta`]: LCS metagraphs over successful paths and verification sweeps.
//! * [`sampler`]: Metropolis-Hastings over successful paths.
//! * [`cli`]: the `pressgame` command-line front end.

pub mod bwgraph;
pub mod cli;
pub mod error;
pub mod meta;
pub mod paths;
pub mod permrev;
pub mod sampler;

pub use bwgraph::{BWGraph, Color, ComponentReport, VertexId};
pub use error::{Error, Result};
pub use paths::{PathSet, PressingPath};
pub use permrev::{DesireRealityGraph, Interval, SignedPermutation};
