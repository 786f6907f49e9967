//! Invariants checked against independent oracles, exhaustively on small
//! labelled graphs and by proptest on random ones.

use std::collections::{BTreeSet, VecDeque};

use menger_core::disjoint_paths::{lift_path_system_traced, LiftCase};
use menger_core::harness::{generate, GraphSource};
use menger_core::{
    critical_spanning_subgraph, enumerate_minimum_separators, is_separator, kappa_bruteforce,
    kappa_flow, menger_paths, min_vertex_cut, mu_bruteforce, mu_flow, Connectivity, Edge, Graph,
    PathSystem, TerminalPair, Vertex,
};
use proptest::prelude::*;

fn all_pairs(g: &Graph) -> Vec<TerminalPair> {
    let vs: Vec<Vertex> = g.vertices().collect();
    let mut out = Vec::new();
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            out.push(TerminalPair { u, v });
        }
    }
    out
}

/// Bitmask oracle: does removing `blocked` disconnect u from v?
fn separates_oracle(g: &Graph, pair: TerminalPair, blocked: u32) -> bool {
    let mut seen = 1u32 << pair.u.0;
    let mut queue = VecDeque::from([pair.u]);
    while let Some(a) = queue.pop_front() {
        for b in g.neighbors(a).unwrap() {
            let bit = 1u32 << b.0;
            if b == pair.v {
                return false;
            }
            if blocked & bit == 0 && seen & bit == 0 {
                seen |= bit;
                queue.push_back(b);
            }
        }
    }
    true
}

/// Every separator of minimum size, found by scanning all subsets.
fn minimum_separators_oracle(g: &Graph, pair: TerminalPair) -> Vec<BTreeSet<Vertex>> {
    let n = g.vertex_count() as u32;
    let terminals = (1u32 << pair.u.0) | (1u32 << pair.v.0);
    let separating: Vec<u32> = (0..1u32 << n)
        .filter(|m| m & terminals == 0 && separates_oracle(g, pair, *m))
        .collect();
    let best = separating.iter().map(|m| m.count_ones()).min().unwrap();
    let mut out: Vec<BTreeSet<Vertex>> = separating
        .into_iter()
        .filter(|m| m.count_ones() == best)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(Vertex).collect())
        .collect();
    out.sort();
    out
}

fn arb_graph(max_n: u32) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        let slots = (n * (n - 1) / 2) as usize;
        proptest::collection::vec(any::<bool>(), slots).prop_map(move |bits| {
            let mut pairs = Vec::new();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits[k] {
                        pairs.push((a, b));
                    }
                    k += 1;
                }
            }
            Graph::from_pairs(&pairs, &(0..n).collect::<Vec<_>>()).unwrap()
        })
    })
}

fn arb_instance(max_n: u32) -> impl Strategy<Value = (Graph, TerminalPair)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.vertex_count() as u32;
        (Just(g), 0..n, 1..n).prop_map(move |(g, u, off)| {
            let v = (u + off) % n;
            let pair = TerminalPair::new(&g, Vertex(u), Vertex(v)).unwrap();
            (g, pair)
        })
    })
}

#[test]
fn engines_agree_exhaustively_up_to_six() {
    for n in 2..=6 {
        for g in generate(GraphSource::Exhaustive { n }).unwrap() {
            for pair in all_pairs(&g) {
                let brute = kappa_bruteforce(&g, pair).unwrap();
                assert_eq!(brute, kappa_flow(&g, pair).unwrap(), "{g:?} {pair}");
                assert_eq!(brute.is_unbounded(), pair.adjacent_in(&g));
                if let Connectivity::Finite(k) = brute {
                    assert!(k <= n - 2);
                }
            }
        }
    }
}

#[test]
fn separator_enumeration_matches_subset_oracle() {
    for n in 2..=6 {
        for g in generate(GraphSource::Exhaustive { n }).unwrap() {
            for pair in all_pairs(&g).into_iter().filter(|p| !p.adjacent_in(&g)) {
                let listing = enumerate_minimum_separators(&g, pair, usize::MAX).unwrap();
                let got: Vec<BTreeSet<Vertex>> = listing
                    .separators
                    .iter()
                    .map(|s| s.separator.members.clone())
                    .collect();
                assert_eq!(got, minimum_separators_oracle(&g, pair), "{g:?} {pair}");
                for s in &listing.separators {
                    let expected: Vec<Edge> = g
                        .edges()
                        .filter(|e| {
                            s.separator.members.contains(&e.lo())
                                && s.separator.members.contains(&e.hi())
                        })
                        .collect();
                    assert_eq!(s.induced, expected);
                }
            }
        }
    }
}

#[test]
fn menger_paths_matches_bruteforce_up_to_six() {
    for n in 2..=6 {
        for g in generate(GraphSource::Exhaustive { n }).unwrap() {
            for pair in all_pairs(&g).into_iter().filter(|p| !p.adjacent_in(&g)) {
                let k = kappa_bruteforce(&g, pair).unwrap().finite().unwrap();
                let system = menger_paths(&g, pair).unwrap();
                system.validate(&g).unwrap();
                assert_eq!(system.len(), k, "{g:?} {pair}");
            }
        }
    }
}

#[test]
fn critical_subgraph_is_edge_critical() {
    for g in generate(GraphSource::Exhaustive { n: 5 }).unwrap() {
        for pair in all_pairs(&g).into_iter().filter(|p| !p.adjacent_in(&g)) {
            let k = kappa_flow(&g, pair).unwrap().finite().unwrap();
            let h = critical_spanning_subgraph(&g, pair).unwrap();
            assert_eq!(h.vertices().collect::<Vec<_>>(), g.vertices().collect::<Vec<_>>());
            assert!(h.edges().all(|e| g.contains_edge(e)));
            assert_eq!(kappa_bruteforce(&h, pair).unwrap(), Connectivity::Finite(k));
            for e in h.edges() {
                let after = kappa_flow(&h.delete_edge(e).unwrap(), pair).unwrap();
                assert_eq!(after, Connectivity::Finite(k - 1), "{g:?} {pair} {e}");
            }
            if k >= 1 {
                for w in h.vertices().filter(|&w| !pair.is_terminal(w)) {
                    assert_ne!(h.degree(w).unwrap(), 1);
                }
            }
        }
    }
}

/// Searches graphs on up to five vertices for a contraction where a path of `G'`
/// enters and leaves `x` over two added edges, then lifts it.
#[test]
fn double_added_edge_lift_found_by_search() {
    let mut found = 0;
    let mut smallest = u32::MAX;
    for n in 3..=5u32 {
        for g in generate(GraphSource::Exhaustive { n: n as usize }).unwrap() {
            let pair = TerminalPair {
                u: Vertex(0),
                v: Vertex(n - 1),
            };
            if pair.adjacent_in(&g) {
                continue;
            }
            for e in g.edges().filter(|e| !pair.is_terminal(e.lo()) && !pair.is_terminal(e.hi())) {
                let (a, b) = e.endpoints();
                for (x, y) in [(a, b), (b, a)] {
                    let (reduced, added) = g.contract_reduce(x, y).unwrap();
                    let system = mu_flow(&reduced, pair).unwrap();
                    let doubled = system.paths.iter().any(|p| {
                        p.edges().filter(|edge| added.contains(edge)).count() == 2
                    });
                    if !doubled {
                        continue;
                    }
                    let y_nbrs = g.neighbors(y).unwrap();
                    let (lifted, case) =
                        lift_path_system_traced(&system, x, y, &y_nbrs, &added, &g).unwrap();
                    assert_eq!(case, LiftCase::BypassX);
                    lifted.validate(&g).unwrap();
                    assert_eq!(lifted.len(), system.len());
                    // x leaves the interior; y is the only vertex that can join it.
                    for (before, after) in system.paths.iter().zip(&lifted.paths) {
                        let mut joined: BTreeSet<Vertex> = after.interior().iter().copied().collect();
                        for w in before.interior() {
                            joined.remove(w);
                        }
                        assert!(joined.iter().all(|&w| w == y));
                    }
                    smallest = smallest.min(n);
                    found += 1;
                }
            }
        }
    }
    assert!(found > 0);
    // u - y - v with x hanging off y: contracting y into x gives u - x - v.
    assert_eq!(smallest, 4);
}

fn petersen() -> Graph {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_pairs(&pairs, &[]).unwrap()
}

#[test]
fn petersen_flow_matches_bruteforce() {
    let g = petersen();
    for pair in all_pairs(&g).into_iter().filter(|p| !p.adjacent_in(&g)) {
        assert_eq!(kappa_bruteforce(&g, pair).unwrap(), Connectivity::Finite(3));
        assert_eq!(kappa_flow(&g, pair).unwrap(), Connectivity::Finite(3));
    }
}

#[test]
fn k4_minus_terminal_edge_drops_the_chord() {
    let k4 = Graph::from_pairs(&[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)], &[]).unwrap();
    let pair = TerminalPair::new(&k4, Vertex(0), Vertex(1)).unwrap();
    assert_eq!(mu_bruteforce(&k4, pair).unwrap(), 2);
    let h = critical_spanning_subgraph(&k4, pair).unwrap();
    assert!(!h.has_edge(Vertex(2), Vertex(3)));
    assert_eq!(h.edge_count(), 4);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn flow_matches_bruteforce_up_to_eight((g, pair) in arb_instance(8)) {
        prop_assert_eq!(kappa_bruteforce(&g, pair).unwrap(), kappa_flow(&g, pair).unwrap());
    }

    #[test]
    fn min_cut_is_a_minimum_separator((g, pair) in arb_instance(9)) {
        prop_assume!(!pair.adjacent_in(&g));
        let cut = min_vertex_cut(&g, pair).unwrap();
        prop_assert!(is_separator(&g, pair, &cut.members).unwrap());
        prop_assert_eq!(Connectivity::Finite(cut.len()), kappa_flow(&g, pair).unwrap());
    }

    #[test]
    fn lemma1_bounds_hold((g, pair) in arb_instance(8)) {
        prop_assume!(!pair.adjacent_in(&g));
        let k = kappa_flow(&g, pair).unwrap().finite().unwrap();
        for w in g.vertices().filter(|&w| !pair.is_terminal(w)) {
            let after = kappa_flow(&g.delete_vertex(w).unwrap(), pair).unwrap().finite().unwrap();
            prop_assert!(after <= k && after + 1 >= k);
        }
        for e in g.edges() {
            let after = kappa_flow(&g.delete_edge(e).unwrap(), pair).unwrap().finite().unwrap();
            prop_assert!(after <= k && after + 1 >= k);
        }
    }

    #[test]
    fn every_path_system_is_maximum_and_valid((g, pair) in arb_instance(10)) {
        prop_assume!(!pair.adjacent_in(&g));
        let k = kappa_flow(&g, pair).unwrap().finite().unwrap();
        let mu = mu_bruteforce(&g, pair).unwrap();
        prop_assert_eq!(mu, k);
        for system in [mu_flow(&g, pair).unwrap(), menger_paths(&g, pair).unwrap()] {
            system.validate(&g).unwrap();
            prop_assert_eq!(system.len(), k);
        }
    }

    #[test]
    fn menger_paths_on_larger_graphs((g, pair) in arb_instance(18)) {
        prop_assume!(!pair.adjacent_in(&g));
        let system: PathSystem = menger_paths(&g, pair).unwrap();
        system.validate(&g).unwrap();
        prop_assert_eq!(Connectivity::Finite(system.len()), kappa_flow(&g, pair).unwrap());
    }

    #[test]
    fn vertex_deletions_commute(g in arb_graph(8), a in 0u32..8, b in 0u32..8) {
        let n = g.vertex_count() as u32;
        let (a, b) = (Vertex(a % n), Vertex(b % n));
        prop_assume!(a != b);
        let ab = g.delete_vertex(a).unwrap().delete_vertex(b).unwrap();
        let ba = g.delete_vertex(b).unwrap().delete_vertex(a).unwrap();
        prop_assert_eq!(ab, ba);
    }

    #[test]
    fn edge_deletion_keeps_vertices_and_lowers_kappa((g, pair) in arb_instance(8)) {
        for e in g.edges() {
            let smaller = g.delete_edge(e).unwrap();
            prop_assert!(smaller.vertices().eq(g.vertices()));
            if !pair.adjacent_in(&g) {
                let before = kappa_flow(&g, pair).unwrap().finite().unwrap();
                let after = kappa_flow(&smaller, pair).unwrap().finite().unwrap();
                prop_assert!(after <= before);
            }
        }
    }

    #[test]
    fn contraction_shape(g in arb_graph(9)) {
        for e in g.edges() {
            let (a, b) = e.endpoints();
            for (x, y) in [(a, b), (b, a)] {
                let (reduced, added) = g.contract_reduce(x, y).unwrap();
                prop_assert_eq!(reduced.vertex_count(), g.vertex_count() - 1);
                let without_y = g.delete_vertex(y).unwrap();
                prop_assert!(without_y.edges().all(|f| reduced.contains_edge(f)));
                for f in &added {
                    prop_assert!(!g.contains_edge(*f));
                    prop_assert!(f.contains(x));
                    prop_assert!(reduced.contains_edge(*f));
                }
                prop_assert_eq!(reduced.edge_count(), without_y.edge_count() + added.len());
            }
        }
    }

    #[test]
    fn components_partition_vertices(g in arb_graph(10)) {
        let comps = g.connected_components();
        let mut all: Vec<Vertex> = comps.iter().flatten().copied().collect();
        let total = all.len();
        all.sort();
        all.dedup();
        prop_assert_eq!(all.len(), total);
        prop_assert!(all.into_iter().eq(g.vertices()));
        for pair in comps.windows(2) {
            prop_assert!(pair[0][0] < pair[1][0]);
        }
    }
}
