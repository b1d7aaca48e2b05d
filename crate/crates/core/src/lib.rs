//! Parallel shortest paths through hub-set hierarchies.
//!
//! The crate computes all-pairs distances, shortest negative cycles and
//! minimum ratio cycles on real-weighted digraphs, while a logical PRAM
//! meter records the work and depth each algorithm would take. Brute-force
//! oracles for every result live in [`oracle`].

pub mod apsp;
pub mod bellman_ford;
pub mod domain;
pub mod error;
pub mod format;
pub mod gen;
pub mod graph;
pub mod hubset;
pub mod minplus;
pub mod oracle;
pub mod parametric;
pub mod verify;
pub mod workdepth;

pub use apsp::{apsp, ApspOutcome, ApspResult};
pub use error::{Error, Result};
pub use graph::{Digraph, DistMatrix, Path};
pub use hubset::{build_hub_hierarchy, shortest_negative_cycle, HubHierarchy, NegativeCycle};
pub use parametric::{min_ratio_binary_search, min_ratio_parametric, RatioAnswer, TimedDigraph};
pub use workdepth::{Meter, WorkDepthReport};
