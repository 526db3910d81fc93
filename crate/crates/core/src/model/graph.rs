use std::collections::BTreeSet;

use super::{edge_endpoints, EdgeColoring};

/// A simple graph on `0..n`; edges are stored as `(u, v)` with `u < v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            edges: BTreeSet::new(),
        }
    }

    /// Inserts `uv`; returns false for loops, out-of-range vertices and
    /// duplicates.
    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v || u >= self.n || v >= self.n {
            return false;
        }
        self.edges.insert((u.min(v), u.max(v)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }
}

/// One edge from every color class (the lexicographically least), giving a
/// rainbow spanning subgraph with exactly `color_count` edges.
pub fn representative_subgraph(coloring: &EdgeColoring) -> SimpleGraph {
    let n = coloring.n();
    let mut graph = SimpleGraph::new(n);
    let mut taken = vec![false; coloring.color_count() as usize];
    for (idx, &c) in coloring.colors().iter().enumerate() {
        if !std::mem::replace(&mut taken[c as usize], true) {
            let (u, v) = edge_endpoints(n, idx).expect("index within K_n");
            graph.add_edge(u, v);
        }
    }
    graph
}
