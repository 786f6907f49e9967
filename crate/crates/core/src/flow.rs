//! Unit-capacity vertex-split flow network and a shortest-augmenting-path
//! max-flow solver over it.
//!
//! Every non-terminal vertex `w` becomes `w_in -> w_out` with capacity one.
//! Each undirected edge `ab` becomes the arcs `a_out -> b_in` and
//! `b_out -> a_in`. Edge arcs get a capacity no flow can saturate, so a
//! minimum cut consists of split arcs only and reads off as a vertex set.
//! Arcs entering `u` or leaving `v` are never created.

use std::collections::{BTreeSet, VecDeque};

use crate::graph::{Graph, TerminalPair, Vertex};

#[derive(Debug, Clone, Copy)]
struct Arc {
    to: usize,
    cap: u32,
    flow: i32,
}

impl Arc {
    fn residual(&self) -> i64 {
        self.cap as i64 - self.flow as i64
    }
}

/// Flow network derived from a graph and a terminal pair.
#[derive(Debug, Clone)]
pub struct SplitNetwork {
    pair: TerminalPair,
    /// node index -> original vertex; nodes `2i` and `2i + 1` are `in`/`out`
    /// of `vertices[i]`.
    vertices: Vec<Vertex>,
    slot: Vec<Option<usize>>,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    value: usize,
}

impl SplitNetwork {
    /// Builds the network. Caller guarantees `pair` lies in `g`.
    pub fn new(g: &Graph, pair: TerminalPair) -> Self {
        let vertices: Vec<Vertex> = g.vertices().collect();
        let mut slot = vec![None; g.id_bound()];
        for (i, w) in vertices.iter().enumerate() {
            slot[w.index()] = Some(i);
        }
        let mut net = SplitNetwork {
            pair,
            vertices,
            slot,
            arcs: Vec::new(),
            out: Vec::new(),
            value: 0,
        };
        net.out = vec![Vec::new(); 2 * net.vertices.len()];
        let big = u32::try_from(net.vertices.len()).unwrap_or(u32::MAX).max(2);

        for i in 0..net.vertices.len() {
            if !pair.is_terminal(net.vertices[i]) {
                net.add_arc(2 * i, 2 * i + 1, 1);
            }
        }
        for e in g.edges() {
            let (a, b) = e.endpoints();
            for (from, to) in [(a, b), (b, a)] {
                if from == pair.v || to == pair.u {
                    continue;
                }
                let (fi, ti) = (net.index_of(from), net.index_of(to));
                net.add_arc(2 * fi + 1, 2 * ti, big);
            }
        }
        net
    }

    fn index_of(&self, w: Vertex) -> usize {
        self.slot[w.index()].expect("vertex belongs to network")
    }

    fn add_arc(&mut self, from: usize, to: usize, cap: u32) {
        let id = self.arcs.len();
        self.arcs.push(Arc { to, cap, flow: 0 });
        self.arcs.push(Arc { to: from, cap: 0, flow: 0 });
        self.out[from].push(id);
        self.out[to].push(id + 1);
    }

    pub fn source(&self) -> usize {
        2 * self.index_of(self.pair.u) + 1
    }

    pub fn sink(&self) -> usize {
        2 * self.index_of(self.pair.v)
    }

    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    /// Number of arcs, excluding residual twins.
    pub fn arc_count(&self) -> usize {
        self.arcs.len() / 2
    }

    pub fn vertex_of(&self, node: usize) -> Vertex {
        self.vertices[node / 2]
    }

    pub fn value(&self) -> usize {
        self.value
    }

    /// BFS in the residual network; returns the parent arc of every reached node.
    fn bfs(&self) -> Vec<Option<usize>> {
        let (s, t) = (self.source(), self.sink());
        let mut parent = vec![None; self.node_count()];
        let mut seen = vec![false; self.node_count()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            if a == t {
                break;
            }
            for &id in &self.out[a] {
                let arc = &self.arcs[id];
                if arc.residual() > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    parent[arc.to] = Some(id);
                    queue.push_back(arc.to);
                }
            }
        }
        parent
    }

    /// Augments along shortest paths until no path remains or the flow
    /// value reaches `limit`. Returns the flow value.
    pub fn max_flow_up_to(&mut self, limit: usize) -> usize {
        let (s, t) = (self.source(), self.sink());
        while self.value < limit {
            let parent = self.bfs();
            if parent[t].is_none() {
                break;
            }
            let mut bottleneck = i64::MAX;
            let mut node = t;
            while node != s {
                let id = parent[node].expect("path back to source");
                bottleneck = bottleneck.min(self.arcs[id].residual());
                node = self.arcs[id ^ 1].to;
            }
            let room = (limit - self.value).min(i32::MAX as usize) as i64;
            let push = bottleneck.min(room) as i32;
            let mut node = t;
            while node != s {
                let id = parent[node].expect("path back to source");
                self.arcs[id].flow += push;
                self.arcs[id ^ 1].flow -= push;
                node = self.arcs[id ^ 1].to;
            }
            self.value += push as usize;
        }
        self.value
    }

    pub fn max_flow(&mut self) -> usize {
        self.max_flow_up_to(usize::MAX)
    }

    /// Nodes reachable from the source in the residual network.
    pub fn source_side(&self) -> Vec<bool> {
        let s = self.source();
        let mut seen = vec![false; self.node_count()];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for &id in &self.out[a] {
                let arc = &self.arcs[id];
                if arc.residual() > 0 && !seen[arc.to] {
                    seen[arc.to] = true;
                    queue.push_back(arc.to);
                }
            }
        }
        seen
    }

    /// Vertices whose split arc crosses the residual cut. Only meaningful
    /// after [`SplitNetwork::max_flow`].
    pub fn min_cut_vertices(&self) -> BTreeSet<Vertex> {
        let side = self.source_side();
        (0..self.vertices.len())
            .filter(|&i| !self.pair.is_terminal(self.vertices[i]))
            .filter(|&i| side[2 * i] && !side[2 * i + 1])
            .map(|i| self.vertices[i])
            .collect()
    }

    /// Decomposes the current flow into source-sink walks, mapped back to
    /// vertex sequences. Flow circulating away from the source is ignored.
    pub fn decompose(&self) -> Vec<Vec<Vertex>> {
        let (s, t) = (self.source(), self.sink());
        let mut remaining: Vec<i32> = self.arcs.iter().map(|a| a.flow.max(0)).collect();
        let mut paths = Vec::new();
        loop {
            let mut node = s;
            let mut walk = vec![self.vertex_of(s)];
            while node != t {
                let next = self.out[node]
                    .iter()
                    .copied()
                    .find(|&id| id % 2 == 0 && remaining[id] > 0);
                let Some(id) = next else { break };
                remaining[id] -= 1;
                node = self.arcs[id].to;
                let w = self.vertex_of(node);
                if walk.last() != Some(&w) {
                    walk.push(w);
                }
            }
            if node != t {
                break;
            }
            paths.push(walk);
        }
        paths
    }
}
