//! Vertex connectivity toolkit: local connectivity `kappa(u, v)`, minimum
//! `uv`-separators, and maximum systems of internally disjoint `uv`-paths,
//! plus a harness that checks the classical relations between them over
//! exhaustive and random graph corpora.

pub mod cli;
pub mod connectivity;
pub mod disjoint_paths;
pub mod edgelist;
mod error;
pub mod flow;
pub mod graph;
pub mod harness;

pub use connectivity::{
    enumerate_minimum_separators, is_separator, kappa_bruteforce, kappa_flow, min_vertex_cut,
    Connectivity, MinimumSeparator, Separator, SeparatorEnumeration, DEFAULT_SEPARATOR_LIMIT,
};
pub use disjoint_paths::{
    base_case_paths, critical_spanning_subgraph, lift_path_system, menger_paths, mu_bruteforce,
    mu_flow, PathSystem,
};
pub use error::Error;
pub use graph::{Edge, Graph, Path, TerminalPair, Vertex};
