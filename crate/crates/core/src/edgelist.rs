//! Plain-text edge-list format.
//!
//! One declaration per line: a single token declares a vertex, two tokens
//! declare an edge. Blank lines and lines starting with `#` are ignored.
//! Tokens are mapped to vertex ids `0, 1, ...` in order of first appearance.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Edge, Graph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected 1 or 2 tokens, found {found}")]
    TooManyTokens { line: usize, found: usize },
    #[error("line {line}: self-loop on '{token}'")]
    SelfLoop { line: usize, token: String },
}

/// A graph together with the token each vertex was declared under.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LabeledGraph {
    pub graph: Graph,
    tokens: Vec<String>,
    ids: HashMap<String, Vertex>,
}

impl LabeledGraph {
    /// Labels vertex `i` of `graph` with its decimal id.
    pub fn with_numeric_labels(graph: Graph) -> Self {
        let mut labeled = LabeledGraph::default();
        for w in graph.vertices() {
            while labeled.tokens.len() <= w.index() {
                let t = labeled.tokens.len().to_string();
                labeled.ids.insert(t.clone(), Vertex(labeled.tokens.len() as u32));
                labeled.tokens.push(t);
            }
        }
        labeled.graph = graph;
        labeled
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut labeled = LabeledGraph::default();
        let mut edges = Vec::new();
        let mut isolated = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match tokens.as_slice() {
                [a] => isolated.push(labeled.intern(a)),
                [a, b] => {
                    if a == b {
                        return Err(ParseError::SelfLoop {
                            line: i + 1,
                            token: a.to_string(),
                        });
                    }
                    let (a, b) = (labeled.intern(a), labeled.intern(b));
                    edges.push((a, b));
                }
                _ => {
                    return Err(ParseError::TooManyTokens {
                        line: i + 1,
                        found: tokens.len(),
                    })
                }
            }
        }
        labeled.graph =
            Graph::from_edge_list(edges, isolated).expect("self-loops rejected while parsing");
        Ok(labeled)
    }

    fn intern(&mut self, token: &str) -> Vertex {
        if let Some(&w) = self.ids.get(token) {
            return w;
        }
        let w = Vertex(self.tokens.len() as u32);
        self.tokens.push(token.to_string());
        self.ids.insert(token.to_string(), w);
        w
    }

    pub fn vertex(&self, token: &str) -> Option<Vertex> {
        self.ids.get(token).copied()
    }

    pub fn token(&self, w: Vertex) -> &str {
        &self.tokens[w.index()]
    }

    pub fn edge_tokens(&self, e: Edge) -> (&str, &str) {
        (self.token(e.lo()), self.token(e.hi()))
    }

    /// Every vertex on its own line in id order, then every edge.
    ///
    /// Parsing the output reproduces the same graph with the same ids.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for w in self.graph.vertices() {
            let _ = writeln!(out, "{}", self.token(w));
        }
        for e in self.graph.edges() {
            let (a, b) = self.edge_tokens(e);
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_basics() {
        let doc = LabeledGraph::parse("# comment\n\nu a\na v\n  # indented comment\nz\nv a\n").unwrap();
        assert_eq!(doc.graph.vertex_count(), 4);
        assert_eq!(doc.graph.edge_count(), 2);
        assert_eq!(doc.vertex("u"), Some(Vertex(0)));
        assert_eq!(doc.vertex("z"), Some(Vertex(3)));
        assert_eq!(doc.token(Vertex(2)), "v");
        assert_eq!(doc.graph.degree(Vertex(3)), Ok(0));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            LabeledGraph::parse("a b c"),
            Err(ParseError::TooManyTokens { line: 1, found: 3 })
        );
        assert_eq!(
            LabeledGraph::parse("a b\nq q\n"),
            Err(ParseError::SelfLoop {
                line: 2,
                token: "q".into()
            })
        );
    }

    #[test]
    fn serialize_keeps_isolated_vertices() {
        let doc = LabeledGraph::parse("x\ny z\n").unwrap();
        assert_eq!(doc.serialize(), "x\ny\nz\ny z\n");
    }

    fn token() -> impl Strategy<Value = String> {
        "[a-z0-9_.-]{1,4}"
    }

    proptest! {
        #[test]
        fn parse_serialize_round_trip(
            lines in proptest::collection::vec(
                prop_oneof![
                    token().prop_map(|t| t),
                    (token(), token()).prop_filter("no loops", |(a, b)| a != b)
                        .prop_map(|(a, b)| format!("{a} {b}")),
                    Just("# note".to_string()),
                    Just(String::new()),
                ],
                0..30,
            )
        ) {
            let text = lines.join("\n");
            let first = LabeledGraph::parse(&text).unwrap();
            let second = LabeledGraph::parse(&first.serialize()).unwrap();
            prop_assert_eq!(&first.graph, &second.graph);
            for w in first.graph.vertices() {
                prop_assert_eq!(first.token(w), second.token(w));
            }
        }
    }
}
