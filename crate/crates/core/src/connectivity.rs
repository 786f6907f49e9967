//! Local vertex connectivity `kappa(u, v)` and minimum `uv`-separators.
//!
//! Two independent engines compute the same quantity: exhaustive subset
//! search ([`kappa_bruteforce`]) and max-flow on a vertex-split network
//! ([`kappa_flow`]). They are cross-checked in the test suite.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::flow::SplitNetwork;
use crate::graph::{Edge, Graph, TerminalPair, Vertex};

/// Default cap on the number of separators [`enumerate_minimum_separators`]
/// returns.
pub const DEFAULT_SEPARATOR_LIMIT: usize = 10_000;

/// `kappa(u, v)`: a finite separator size, or unbounded for adjacent terminals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Connectivity {
    Finite(usize),
    Unbounded,
}

impl Connectivity {
    pub fn finite(self) -> Option<usize> {
        match self {
            Connectivity::Finite(k) => Some(k),
            Connectivity::Unbounded => None,
        }
    }

    pub fn is_unbounded(self) -> bool {
        matches!(self, Connectivity::Unbounded)
    }
}

impl fmt::Display for Connectivity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Connectivity::Finite(k) => write!(f, "{k}"),
            Connectivity::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// A vertex set disjoint from the terminals whose removal separates them.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Separator {
    pub pair: TerminalPair,
    pub members: BTreeSet<Vertex>,
}

impl Separator {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// One minimum separator together with the edges it induces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimumSeparator {
    pub separator: Separator,
    pub induced: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparatorEnumeration {
    pub kappa: usize,
    pub separators: Vec<MinimumSeparator>,
    /// Set when the limit cut the listing short.
    pub truncated: bool,
}

/// Reachability test on a graph with some vertices blocked. `blocked` is
/// indexed by vertex id.
fn connected_avoiding(g: &Graph, pair: TerminalPair, blocked: &[bool]) -> bool {
    let mut seen = vec![false; g.id_bound()];
    seen[pair.u.index()] = true;
    let mut queue = VecDeque::from([pair.u]);
    while let Some(a) = queue.pop_front() {
        for &b in g.neighbor_set(a).expect("vertex from graph") {
            if b == pair.v {
                return true;
            }
            if !blocked[b.index()] && !seen[b.index()] {
                seen[b.index()] = true;
                queue.push_back(b);
            }
        }
    }
    false
}

/// True iff `u` and `v` lie in different components of `G - set`.
/// Always false for adjacent terminals.
pub fn is_separator(g: &Graph, pair: TerminalPair, set: &BTreeSet<Vertex>) -> Result<bool, Error> {
    pair.require_in(g)?;
    for &w in set {
        if pair.is_terminal(w) {
            return Err(Error::TerminalInSet(w));
        }
        if !g.contains_vertex(w) {
            return Err(Error::UnknownVertex(w));
        }
    }
    let mut blocked = vec![false; g.id_bound()];
    for w in set {
        blocked[w.index()] = true;
    }
    Ok(!connected_avoiding(g, pair, &blocked))
}

fn interior(g: &Graph, pair: TerminalPair) -> Vec<Vertex> {
    g.vertices().filter(|&w| !pair.is_terminal(w)).collect()
}

/// Separators of size exactly `size`, in lexicographic order.
fn separators_of_size(
    g: &Graph,
    pair: TerminalPair,
    size: usize,
) -> impl Iterator<Item = Vec<Vertex>> + '_ {
    let mut blocked = vec![false; g.id_bound()];
    interior(g, pair)
        .into_iter()
        .combinations(size)
        .filter(move |combo| {
            for w in combo {
                blocked[w.index()] = true;
            }
            let separated = !connected_avoiding(g, pair, &blocked);
            for w in combo {
                blocked[w.index()] = false;
            }
            separated
        })
}

/// Smallest separator found by trying subsets in (size, lexicographic) order.
pub fn min_separator_bruteforce(g: &Graph, pair: TerminalPair) -> Result<Separator, Error> {
    pair.require_non_adjacent(g)?;
    let n = interior(g, pair).len();
    (0..=n)
        .find_map(|size| separators_of_size(g, pair, size).next())
        .map(|members| Separator {
            pair,
            members: members.into_iter().collect(),
        })
        .ok_or_else(|| unreachable_separator(pair))
}

fn unreachable_separator(pair: TerminalPair) -> Error {
    // the full interior always separates non-adjacent terminals
    Error::PreconditionViolated(format!("no separator found for {pair}"))
}

/// `kappa(u, v)` by exhaustive subset search.
pub fn kappa_bruteforce(g: &Graph, pair: TerminalPair) -> Result<Connectivity, Error> {
    pair.require_in(g)?;
    if pair.adjacent_in(g) {
        return Ok(Connectivity::Unbounded);
    }
    Ok(Connectivity::Finite(min_separator_bruteforce(g, pair)?.len()))
}

/// `kappa(u, v)` as the max-flow value of the vertex-split network.
pub fn kappa_flow(g: &Graph, pair: TerminalPair) -> Result<Connectivity, Error> {
    pair.require_in(g)?;
    if pair.adjacent_in(g) {
        return Ok(Connectivity::Unbounded);
    }
    Ok(Connectivity::Finite(SplitNetwork::new(g, pair).max_flow()))
}

/// Finite `kappa` for a pair known to be non-adjacent.
pub(crate) fn kappa_flow_finite(g: &Graph, pair: TerminalPair) -> Result<usize, Error> {
    pair.require_non_adjacent(g)?;
    Ok(SplitNetwork::new(g, pair).max_flow())
}

/// One minimum separator, read off the residual cut of a maximum flow.
pub fn min_vertex_cut(g: &Graph, pair: TerminalPair) -> Result<Separator, Error> {
    pair.require_non_adjacent(g)?;
    let mut net = SplitNetwork::new(g, pair);
    net.max_flow();
    Ok(Separator {
        pair,
        members: net.min_cut_vertices(),
    })
}

/// All minimum separators in lexicographic order, at most `limit` of them.
pub fn enumerate_minimum_separators(
    g: &Graph,
    pair: TerminalPair,
    limit: usize,
) -> Result<SeparatorEnumeration, Error> {
    let kappa = kappa_flow_finite(g, pair)?;
    let found = separators_of_size(g, pair, kappa);
    let mut separators = Vec::new();
    let mut truncated = false;
    for members in found {
        if separators.len() == limit {
            truncated = true;
            break;
        }
        let members: BTreeSet<Vertex> = members.into_iter().collect();
        let induced = g.induced_edges(&members)?;
        separators.push(MinimumSeparator {
            separator: Separator { pair, members },
            induced,
        });
    }
    Ok(SeparatorEnumeration {
        kappa,
        separators,
        truncated,
    })
}
