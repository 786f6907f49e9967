//! Finite simple undirected graphs as immutable values.
//!
//! Every structural operation (vertex/edge deletion, contraction) returns a
//! fresh [`Graph`] and leaves its input untouched, so algorithms can recurse
//! on `G - a` while still holding `G`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Opaque, totally ordered vertex identifier.
///
/// All deterministic tie-breaking in the crate uses this order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex(pub u32);

impl Vertex {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for Vertex {
    fn from(id: u32) -> Self {
        Vertex(id)
    }
}

/// Unordered pair of distinct vertices, stored with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    lo: Vertex,
    hi: Vertex,
}

impl Edge {
    /// Builds the edge `{a, b}`, rejecting self-loops.
    pub fn try_new(a: Vertex, b: Vertex) -> Result<Self, Error> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { lo: a, hi: b }),
            std::cmp::Ordering::Greater => Ok(Edge { lo: b, hi: a }),
            std::cmp::Ordering::Equal => Err(Error::SelfLoop(a)),
        }
    }

    /// Like [`Edge::try_new`] but panics on `a == b`.
    pub fn new(a: Vertex, b: Vertex) -> Self {
        Self::try_new(a, b).expect("edge endpoints must differ")
    }

    pub fn endpoints(self) -> (Vertex, Vertex) {
        (self.lo, self.hi)
    }

    pub fn lo(self) -> Vertex {
        self.lo
    }

    pub fn hi(self) -> Vertex {
        self.hi
    }

    pub fn contains(self, w: Vertex) -> bool {
        self.lo == w || self.hi == w
    }

    /// The endpoint that is not `w`, if `w` is an endpoint.
    pub fn other(self, w: Vertex) -> Option<Vertex> {
        if w == self.lo {
            Some(self.hi)
        } else if w == self.hi {
            Some(self.lo)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.lo, self.hi)
    }
}

/// A finite simple undirected graph.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a graph from an edge list plus extra (possibly isolated) vertices.
    ///
    /// Duplicate pairs and both orientations collapse to one edge.
    pub fn from_edge_list<I, J>(pairs: I, isolated: J) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
        J: IntoIterator<Item = Vertex>,
    {
        let mut adj: BTreeMap<Vertex, BTreeSet<Vertex>> = BTreeMap::new();
        for w in isolated {
            adj.entry(w).or_default();
        }
        for (a, b) in pairs {
            Edge::try_new(a, b)?;
            adj.entry(a).or_default().insert(b);
            adj.entry(b).or_default().insert(a);
        }
        Ok(Graph { adj })
    }

    /// Convenience constructor over raw `u32` ids.
    pub fn from_pairs(pairs: &[(u32, u32)], isolated: &[u32]) -> Result<Self, Error> {
        Self::from_edge_list(
            pairs.iter().map(|&(a, b)| (Vertex(a), Vertex(b))),
            isolated.iter().map(|&w| Vertex(w)),
        )
    }

    /// Graph on vertices `0..n` with no edges.
    pub fn empty(n: u32) -> Self {
        Graph {
            adj: (0..n).map(|i| (Vertex(i), BTreeSet::new())).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn contains_vertex(&self, w: Vertex) -> bool {
        self.adj.contains_key(&w)
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adj.get(&a).is_some_and(|n| n.contains(&b))
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.lo, e.hi)
    }

    /// Vertices in ascending order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    /// Edges in canonical (lexicographic) order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj.iter().flat_map(|(&a, ns)| {
            ns.range(a..)
                .filter(move |&&b| b != a)
                .map(move |&b| Edge { lo: a, hi: b })
        })
    }

    pub fn degree(&self, w: Vertex) -> Result<usize, Error> {
        Ok(self.neighbor_set(w)?.len())
    }

    /// Open neighbourhood `N(w)`.
    pub fn neighbors(&self, w: Vertex) -> Result<BTreeSet<Vertex>, Error> {
        self.neighbor_set(w).cloned()
    }

    /// Borrowing view of `N(w)`.
    pub fn neighbor_set(&self, w: Vertex) -> Result<&BTreeSet<Vertex>, Error> {
        self.adj.get(&w).ok_or(Error::UnknownVertex(w))
    }

    /// `G - w`.
    pub fn delete_vertex(&self, w: Vertex) -> Result<Graph, Error> {
        let nbrs = self.neighbor_set(w)?;
        let mut adj = self.adj.clone();
        adj.remove(&w);
        for n in nbrs {
            if let Some(set) = adj.get_mut(n) {
                set.remove(&w);
            }
        }
        Ok(Graph { adj })
    }

    /// `G - S` for a vertex set.
    pub fn delete_vertices<'a, I>(&self, ws: I) -> Result<Graph, Error>
    where
        I: IntoIterator<Item = &'a Vertex>,
    {
        let mut g = self.clone();
        for &w in ws {
            g = g.delete_vertex(w)?;
        }
        Ok(g)
    }

    /// `G - e`; the vertex set is unchanged.
    pub fn delete_edge(&self, e: Edge) -> Result<Graph, Error> {
        if !self.contains_edge(e) {
            return Err(Error::UnknownEdge(e));
        }
        let mut adj = self.adj.clone();
        adj.get_mut(&e.lo).map(|s| s.remove(&e.hi));
        adj.get_mut(&e.hi).map(|s| s.remove(&e.lo));
        Ok(Graph { adj })
    }

    /// Returns a copy with `e` added. Endpoints are created if missing.
    pub fn with_edge(&self, e: Edge) -> Graph {
        let mut adj = self.adj.clone();
        adj.entry(e.lo).or_default().insert(e.hi);
        adj.entry(e.hi).or_default().insert(e.lo);
        Graph { adj }
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn connected_components(&self) -> Vec<Vec<Vertex>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.vertices() {
            if !seen.insert(start) {
                continue;
            }
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(a) = queue.pop_front() {
                for &b in &self.adj[&a] {
                    if seen.insert(b) {
                        comp.push(b);
                        queue.push_back(b);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// True iff deleting `e` increases the number of connected components.
    ///
    /// Equivalently, no other route joins the endpoints of `e`.
    pub fn is_bridge(&self, e: Edge) -> Result<bool, Error> {
        if !self.contains_edge(e) {
            return Err(Error::UnknownEdge(e));
        }
        let mut seen = BTreeSet::from([e.lo]);
        let mut stack = vec![e.lo];
        while let Some(a) = stack.pop() {
            for &b in &self.adj[&a] {
                if a == e.lo && b == e.hi {
                    continue;
                }
                if b == e.hi {
                    return Ok(false);
                }
                if seen.insert(b) {
                    stack.push(b);
                }
            }
        }
        Ok(true)
    }

    /// Edges with both endpoints in `set` (the edge set induced by `set`).
    pub fn induced_edges(&self, set: &BTreeSet<Vertex>) -> Result<Vec<Edge>, Error> {
        if let Some(&w) = set.iter().find(|w| !self.contains_vertex(**w)) {
            return Err(Error::UnknownVertex(w));
        }
        Ok(set
            .iter()
            .flat_map(|&a| {
                self.adj[&a]
                    .range(a..)
                    .filter(|b| set.contains(b))
                    .map(move |&b| Edge::new(a, b))
            })
            .collect())
    }

    /// Deletes `y` and joins `x` to every other former neighbour of `y`.
    ///
    /// Requires `xy` to be an edge. Returns the new graph together with the
    /// edges that were absent before and had to be added; every one of them
    /// is incident to `x`.
    pub fn contract_reduce(&self, x: Vertex, y: Vertex) -> Result<(Graph, BTreeSet<Edge>), Error> {
        let xy = Edge::try_new(x, y)?;
        if !self.contains_edge(xy) {
            return Err(Error::UnknownEdge(xy));
        }
        let mut reduced = self.delete_vertex(y)?;
        let mut added = BTreeSet::new();
        for &xi in &self.adj[&y] {
            if xi == x || self.has_edge(x, xi) {
                continue;
            }
            let e = Edge::new(x, xi);
            reduced.adj.get_mut(&x).map(|s| s.insert(xi));
            reduced.adj.get_mut(&xi).map(|s| s.insert(x));
            added.insert(e);
        }
        Ok((reduced, added))
    }

    /// Largest vertex id + 1, or 0 for the empty graph.
    pub(crate) fn id_bound(&self) -> usize {
        self.adj.keys().next_back().map_or(0, |v| v.index() + 1)
    }
}

/// An unordered-by-meaning but ordered-by-role pair of distinct terminals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TerminalPair {
    pub u: Vertex,
    pub v: Vertex,
}

impl TerminalPair {
    /// Checks `u != v` and that both belong to `g`.
    pub fn new(g: &Graph, u: Vertex, v: Vertex) -> Result<Self, Error> {
        for w in [u, v] {
            if !g.contains_vertex(w) {
                return Err(Error::UnknownVertex(w));
            }
        }
        if u == v {
            return Err(Error::IdenticalTerminals(u));
        }
        Ok(TerminalPair { u, v })
    }

    pub fn is_terminal(&self, w: Vertex) -> bool {
        w == self.u || w == self.v
    }

    pub fn adjacent_in(&self, g: &Graph) -> bool {
        g.has_edge(self.u, self.v)
    }

    pub(crate) fn require_in(&self, g: &Graph) -> Result<(), Error> {
        TerminalPair::new(g, self.u, self.v).map(|_| ())
    }

    pub(crate) fn require_non_adjacent(&self, g: &Graph) -> Result<(), Error> {
        self.require_in(g)?;
        if self.adjacent_in(g) {
            return Err(Error::AdjacentTerminals(self.u, self.v));
        }
        Ok(())
    }
}

impl fmt::Display for TerminalPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

/// A simple path, stored as its vertex sequence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Path(Vec<Vertex>);

impl Path {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Path(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    pub fn len_edges(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<Vertex> {
        self.0.last().copied()
    }

    /// Edge sequence; panics if the path repeats a vertex consecutively.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.0.windows(2).map(|w| Edge::new(w[0], w[1]))
    }

    /// Vertices strictly between the two ends.
    pub fn interior(&self) -> &[Vertex] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    /// Checks that this is a simple `u`-`v` path in `g`.
    pub fn validate(&self, g: &Graph, pair: TerminalPair) -> Result<(), Error> {
        let bad = |why: &str| Err(Error::InvalidPath(format!("{self}: {why}")));
        if self.first() != Some(pair.u) || self.last() != Some(pair.v) {
            return bad("wrong endpoints");
        }
        let mut seen = BTreeSet::new();
        for &w in &self.0 {
            if !g.contains_vertex(w) {
                return bad("vertex not in graph");
            }
            if !seen.insert(w) {
                return bad("repeated vertex");
            }
        }
        for w in self.0.windows(2) {
            if !g.has_edge(w[0], w[1]) {
                return bad("consecutive vertices not adjacent");
            }
        }
        Ok(())
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(","))
    }
}
