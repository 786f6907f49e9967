//! Internally disjoint `uv`-path systems.
//!
//! Two constructive engines produce a maximum system:
//!
//! * [`mu_flow`] decomposes a maximum flow on the vertex-split network.
//! * [`menger_paths`] follows the inductive argument: shrink to an
//!   edge-critical spanning subgraph, contract an interior edge `xy` into
//!   `x`, solve the smaller instance, then lift the paths back by routing
//!   through `y` where an added edge was used. When no interior edge is
//!   left every path has length two and the system is read off directly.
//!
//! [`mu_bruteforce`] is a small-graph oracle that enumerates every simple
//! path and searches for the largest disjoint subfamily.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::connectivity::kappa_flow_finite;
use crate::error::Error;
use crate::flow::SplitNetwork;
use crate::graph::{Edge, Graph, Path, TerminalPair, Vertex};

/// Largest graph [`mu_bruteforce`] accepts.
pub const MU_BRUTEFORCE_MAX_VERTICES: usize = 10;

/// A family of pairwise internally disjoint `uv`-paths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathSystem {
    pub pair: TerminalPair,
    pub paths: Vec<Path>,
}

impl PathSystem {
    pub fn empty(pair: TerminalPair) -> Self {
        PathSystem {
            pair,
            paths: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Re-walks every path in `host` and checks pairwise internal disjointness.
    pub fn validate(&self, host: &Graph) -> Result<(), Error> {
        let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
        for (i, path) in self.paths.iter().enumerate() {
            path.validate(host, self.pair)?;
            for &w in path.interior() {
                if let Some(j) = owner.insert(w, i) {
                    return Err(Error::PathsIntersect(j, i));
                }
            }
        }
        // two copies of the direct edge u-v would share no interior vertex
        let direct = self.paths.iter().filter(|p| p.len_edges() == 1).count();
        if direct > 1 {
            return Err(Error::InvalidPath("direct edge used twice".into()));
        }
        Ok(())
    }
}

/// Maximum path system from a flow decomposition.
pub fn mu_flow(g: &Graph, pair: TerminalPair) -> Result<PathSystem, Error> {
    pair.require_non_adjacent(g)?;
    let mut net = SplitNetwork::new(g, pair);
    net.max_flow();
    Ok(PathSystem {
        pair,
        paths: net.decompose().into_iter().map(Path::new).collect(),
    })
}

/// Exact `mu(u, v)` by enumerating all simple paths (graphs of at most
/// [`MU_BRUTEFORCE_MAX_VERTICES`] vertices).
pub fn mu_bruteforce(g: &Graph, pair: TerminalPair) -> Result<usize, Error> {
    pair.require_non_adjacent(g)?;
    if g.vertex_count() > MU_BRUTEFORCE_MAX_VERTICES {
        return Err(Error::TooLarge {
            actual: g.vertex_count(),
            limit: MU_BRUTEFORCE_MAX_VERTICES,
        });
    }
    let order: Vec<Vertex> = g.vertices().collect();
    let bit = |w: Vertex| 1u32 << order.binary_search(&w).expect("vertex in graph");
    let adjacency: Vec<u32> = order
        .iter()
        .map(|&w| g.neighbor_set(w).expect("vertex in graph").iter().map(|&b| bit(b)).sum())
        .collect();
    let (start, end) = (bit(pair.u).trailing_zeros() as usize, bit(pair.v).trailing_zeros() as usize);

    // interior vertex sets of all simple u-v paths
    let mut interiors = BTreeSet::new();
    let mut stack = vec![(start, 1u32 << start)];
    while let Some((at, visited)) = stack.pop() {
        let mut next = adjacency[at] & !visited;
        while next != 0 {
            let b = next.trailing_zeros() as usize;
            next &= next - 1;
            if b == end {
                interiors.insert(visited & !(1 << start));
            } else {
                stack.push((b, visited | (1 << b)));
            }
        }
    }

    // only inclusion-minimal interiors matter for a packing
    let mut by_size: Vec<u32> = interiors.into_iter().collect();
    by_size.sort_by_key(|m| (m.count_ones(), *m));
    let mut minimal: Vec<u32> = Vec::new();
    for m in by_size {
        if minimal.iter().all(|&k| k & m != k) {
            minimal.push(m);
        }
    }

    let start_nbrs = adjacency[start];
    let end_nbrs = adjacency[end];
    let mut best = 0;
    pack(&minimal, 0, 0, 0, start_nbrs, end_nbrs, &mut best);
    Ok(best)
}

fn pack(
    sets: &[u32],
    from: usize,
    used: u32,
    count: usize,
    start_nbrs: u32,
    end_nbrs: u32,
    best: &mut usize,
) {
    *best = (*best).max(count);
    // each further path needs a fresh neighbour of both terminals
    let bound = (start_nbrs & !used)
        .count_ones()
        .min((end_nbrs & !used).count_ones()) as usize;
    if count + bound <= *best {
        return;
    }
    for (i, &set) in sets.iter().enumerate().skip(from) {
        if set & used == 0 {
            pack(sets, i + 1, used | set, count + 1, start_nbrs, end_nbrs, best);
        }
    }
}

/// Edges traversed by a path system.
fn used_edges(paths: &[Vec<Vertex>]) -> BTreeSet<Edge> {
    paths
        .iter()
        .flat_map(|p| p.windows(2).map(|w| Edge::new(w[0], w[1])))
        .collect()
}

/// Spanning subgraph `H` with the same `kappa(u, v)` in which deleting any
/// edge lowers `kappa`.
///
/// One pass over the edges in canonical order deletes every edge whose
/// removal keeps `kappa`. An edge untouched by the current maximum flow is
/// deleted without re-solving.
pub fn critical_spanning_subgraph(g: &Graph, pair: TerminalPair) -> Result<Graph, Error> {
    pair.require_non_adjacent(g)?;
    let mut net = SplitNetwork::new(g, pair);
    let k = net.max_flow();
    let mut used = used_edges(&net.decompose());
    let mut h = g.clone();
    for e in g.edges() {
        let candidate = h.delete_edge(e)?;
        if !used.contains(&e) {
            h = candidate;
            continue;
        }
        let mut net = SplitNetwork::new(&candidate, pair);
        if net.max_flow_up_to(k) == k {
            used = used_edges(&net.decompose());
            h = candidate;
        }
    }
    Ok(h)
}

/// Paths `u-w-v` through common neighbours, for a critical graph with no
/// edge between interior vertices.
pub fn base_case_paths(h: &Graph, pair: TerminalPair) -> Result<PathSystem, Error> {
    pair.require_non_adjacent(h)?;
    if let Some(e) = h
        .edges()
        .find(|e| !pair.is_terminal(e.lo()) && !pair.is_terminal(e.hi()))
    {
        return Err(Error::PreconditionViolated(format!("interior edge {e} present")));
    }
    let k = kappa_flow_finite(h, pair)?;
    let from_u = h.neighbor_set(pair.u)?;
    let from_v = h.neighbor_set(pair.v)?;
    let common: Vec<Vertex> = from_u.intersection(from_v).copied().take(k).collect();
    if common.len() < k {
        return Err(Error::PreconditionViolated(format!(
            "only {} common neighbours of {} and {}, need {k}",
            common.len(),
            pair.u,
            pair.v
        )));
    }
    Ok(PathSystem {
        pair,
        paths: common
            .into_iter()
            .map(|w| Path::new(vec![pair.u, w, pair.v]))
            .collect(),
    })
}

/// How [`lift_path_system_traced`] rewired the system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LiftCase {
    /// No path used an added edge.
    Unchanged,
    /// `w, x, x_i` became `w, y, x_i` (both `w` and `x_i` neighbour `y`).
    BypassX,
    /// `w, x, x_i` became `w, x, y, x_i`.
    InsertY,
}

/// Turns a path system of `G' = contract_reduce(G, x, y)` into one of `G`.
///
/// `y_nbrs` is `N(y)` in `G` and `added` the edges the contraction created.
pub fn lift_path_system(
    paths: &PathSystem,
    x: Vertex,
    y: Vertex,
    y_nbrs: &BTreeSet<Vertex>,
    added: &BTreeSet<Edge>,
    g: &Graph,
) -> Result<PathSystem, Error> {
    lift_path_system_traced(paths, x, y, y_nbrs, added, g).map(|(system, _)| system)
}

/// [`lift_path_system`], also reporting which rewiring applied.
pub fn lift_path_system_traced(
    paths: &PathSystem,
    x: Vertex,
    y: Vertex,
    y_nbrs: &BTreeSet<Vertex>,
    added: &BTreeSet<Edge>,
    g: &Graph,
) -> Result<(PathSystem, LiftCase), Error> {
    let through_x: Vec<usize> = paths
        .paths
        .iter()
        .enumerate()
        .filter(|(_, p)| p.interior().contains(&x))
        .map(|(i, _)| i)
        .collect();
    if through_x.len() > 1 {
        return Err(Error::PreconditionViolated(format!(
            "{} paths pass through {x}",
            through_x.len()
        )));
    }
    let mut lifted = paths.clone();
    let mut case = LiftCase::Unchanged;

    if let Some(&j) = through_x.first() {
        let seq = paths.paths[j].vertices();
        let at = seq.iter().position(|&w| w == x).expect("x on path");
        let (before, after) = (seq[at - 1], seq[at + 1]);
        let via_added = |w: Vertex| added.contains(&Edge::new(x, w));

        // orient so that x -> x_i is the added edge
        let oriented = if via_added(after) {
            Some((before, after, false))
        } else if via_added(before) {
            Some((after, before, true))
        } else {
            None
        };

        if let Some((w, xi, reversed)) = oriented {
            let mut forward: Vec<Vertex> = seq.to_vec();
            if reversed {
                forward.reverse();
            }
            let at = forward.iter().position(|&z| z == x).expect("x on path");
            if y_nbrs.contains(&w) {
                forward[at] = y;
                case = LiftCase::BypassX;
            } else {
                forward.insert(at + 1, y);
                case = LiftCase::InsertY;
            }
            if reversed {
                forward.reverse();
            }
            for pair in forward.windows(2) {
                if !g.has_edge(pair[0], pair[1]) {
                    return Err(Error::PreconditionViolated(format!(
                        "rewired edge {}-{} (via {xi}) absent from graph",
                        pair[0], pair[1]
                    )));
                }
            }
            lifted.paths[j] = Path::new(forward);
        }
    }
    Ok((lifted, case))
}

/// A maximum path system built by the contraction recursion.
pub fn menger_paths(g: &Graph, pair: TerminalPair) -> Result<PathSystem, Error> {
    pair.require_non_adjacent(g)?;
    let k = kappa_flow_finite(g, pair)?;
    if k == 0 {
        return Ok(PathSystem::empty(pair));
    }

    let mut h = critical_spanning_subgraph(g, pair)?;
    let isolated: Vec<Vertex> = h
        .vertices()
        .filter(|&w| !pair.is_terminal(w) && h.degree(w) == Ok(0))
        .collect();
    h = h.delete_vertices(&isolated)?;
    if let Some(w) = h
        .vertices()
        .find(|&w| !pair.is_terminal(w) && h.degree(w) == Ok(1))
    {
        return Err(Error::PreconditionViolated(format!(
            "interior vertex {w} has degree 1 in an edge-critical subgraph"
        )));
    }

    let interior_edge = h
        .edges()
        .find(|e| !pair.is_terminal(e.lo()) && !pair.is_terminal(e.hi()));
    let Some(edge) = interior_edge else {
        return base_case_paths(&h, pair);
    };

    let (x, y) = edge.endpoints();
    let y_nbrs = h.neighbors(y)?;
    let (reduced, added) = h.contract_reduce(x, y)?;
    let after = kappa_flow_finite(&reduced, pair)?;
    if after != k {
        return Err(Error::KappaDroppedAfterContraction {
            x,
            y,
            before: k,
            after,
        });
    }
    let smaller = menger_paths(&reduced, pair)?;
    let lifted = lift_path_system(&smaller, x, y, &y_nbrs, &added, &h).map_err(|e| {
        Error::LiftFailed {
            y,
            reason: e.to_string(),
        }
    })?;
    lifted.validate(&h).map_err(|e| Error::LiftFailed {
        y,
        reason: e.to_string(),
    })?;
    if lifted.len() != k {
        return Err(Error::LiftFailed {
            y,
            reason: format!("lifted {} paths, expected {k}", lifted.len()),
        });
    }
    Ok(lifted)
}
