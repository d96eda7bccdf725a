//! Abstract simple graphs and subgraph descriptions shared by all modules.

use std::collections::BTreeSet;
use std::fmt;

pub type Vertex = usize;

/// Undirected edge stored with the smaller endpoint first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub Vertex, pub Vertex);

impl Edge {
    pub fn new(u: Vertex, v: Vertex) -> Self {
        if u <= v {
            Edge(u, v)
        } else {
            Edge(v, u)
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0 == v || self.1 == v
    }

    pub fn other(&self, v: Vertex) -> Vertex {
        if self.0 == v {
            self.1
        } else {
            self.0
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.0, self.1)
    }
}

/// Largest vertex count handled by the bitset-based solver and enumerator.
pub const MAX_VERTICES: usize = 64;

/// A simple undirected graph on vertices `0..n`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph from an edge list. Loops and repeated edges are ignored.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        let mut g = Graph::new(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        if u == v || self.has_edge(u, v) {
            return false;
        }
        self.adj[u].push(v);
        self.adj[v].push(u);
        true
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        let before = self.adj[u].len();
        self.adj[u].retain(|&w| w != v);
        self.adj[v].retain(|&w| w != u);
        before != self.adj[u].len()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].contains(&v)
    }

    /// Edges in increasing order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = self
            .adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| u < v).map(move |&v| Edge(u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    /// Adjacency bitsets; `None` when the graph exceeds [`MAX_VERTICES`].
    pub fn masks(&self) -> Option<Vec<u64>> {
        if self.adj.len() > MAX_VERTICES {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|ns| ns.iter().fold(0u64, |m, &v| m | (1u64 << v)))
                .collect(),
        )
    }

    pub fn is_connected(&self) -> bool {
        if self.adj.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.adj.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.adj.len()
    }

    /// Subgraph induced on `keep` (others become isolated, ids are preserved).
    pub fn induced(&self, keep: &[bool]) -> Graph {
        let mut g = Graph::new(self.adj.len());
        for e in self.edges() {
            if keep[e.0] && keep[e.1] {
                g.add_edge(e.0, e.1);
            }
        }
        g
    }

    /// Whether the graph restricted to `vertices` is 2-connected (at least three
    /// vertices, connected, no cut vertex).
    pub fn is_two_connected_on(&self, vertices: &[Vertex]) -> bool {
        if vertices.len() < 3 {
            return false;
        }
        let inside: BTreeSet<Vertex> = vertices.iter().copied().collect();
        let reach = |skip: Option<Vertex>| -> usize {
            let start = match vertices.iter().find(|&&v| Some(v) != skip) {
                Some(&s) => s,
                None => return 0,
            };
            let mut seen = BTreeSet::new();
            seen.insert(start);
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if inside.contains(&w) && Some(w) != skip && seen.insert(w) {
                        stack.push(w);
                    }
                }
            }
            seen.len()
        };
        if reach(None) != vertices.len() {
            return false;
        }
        vertices
            .iter()
            .all(|&v| reach(Some(v)) == vertices.len() - 1)
    }
}

/// A subgraph given by explicit vertex and edge sets (edges imply their endpoints).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Subgraph {
    vertices: BTreeSet<Vertex>,
    edges: BTreeSet<Edge>,
}

impl Subgraph {
    pub fn new() -> Self {
        Subgraph::default()
    }

    pub fn from_parts(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Self {
        let mut s = Subgraph::new();
        for v in vertices {
            s.vertices.insert(v);
        }
        for e in edges {
            s.add_edge(e);
        }
        s
    }

    /// The path or cycle through `walk`; `closed` adds the closing edge.
    pub fn from_walk(walk: &[Vertex], closed: bool) -> Self {
        let mut s = Subgraph::from_parts(walk.iter().copied(), []);
        for w in walk.windows(2) {
            s.add_edge(Edge::new(w[0], w[1]));
        }
        if closed && walk.len() > 2 {
            s.add_edge(Edge::new(walk[walk.len() - 1], walk[0]));
        }
        s
    }

    /// The whole graph as a subgraph of itself.
    pub fn whole(g: &Graph) -> Self {
        Subgraph::from_parts(0..g.vertex_count(), g.edges())
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, e: Edge) {
        self.vertices.insert(e.0);
        self.vertices.insert(e.1);
        self.edges.insert(e);
    }

    pub fn vertices(&self) -> &BTreeSet<Vertex> {
        &self.vertices
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn contains_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.edges.contains(&Edge::new(u, v))
    }

    pub fn is_subgraph_of(&self, other: &Subgraph) -> bool {
        self.vertices.is_subset(&other.vertices) && self.edges.is_subset(&other.edges)
    }

    pub fn union(&self, other: &Subgraph) -> Subgraph {
        Subgraph {
            vertices: self.vertices.union(&other.vertices).copied().collect(),
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &Subgraph) -> Subgraph {
        Subgraph {
            vertices: self
                .vertices
                .intersection(&other.vertices)
                .copied()
                .collect(),
            edges: self.edges.intersection(&other.edges).copied().collect(),
        }
    }

    /// Checks that every vertex and edge exists in `g`.
    pub fn within(&self, g: &Graph) -> bool {
        self.vertices.iter().all(|&v| v < g.vertex_count())
            && self
                .edges
                .iter()
                .all(|e| e.1 < g.vertex_count() && g.has_edge(e.0, e.1))
    }

    pub fn vertex_mask(&self) -> u64 {
        self.vertices.iter().fold(0u64, |m, &v| m | (1u64 << v))
    }
}
