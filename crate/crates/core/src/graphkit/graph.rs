use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored as `(min, max)` pairs, so two graphs compare equal
/// exactly when they have the same labelled edge set.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl Graph {
    /// Rejects loops, out-of-range endpoints and repeated edges.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            if !g.insert_edge(u, v)? {
                return Err(Error::InvalidGraph(format!("repeated edge {u}-{v}")));
            }
        }
        Ok(g)
    }

    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: BTreeSet::new(),
        }
    }

    fn insert_edge(&mut self, u: usize, v: usize) -> Result<bool> {
        if u == v {
            return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidGraph(format!(
                "edge {u}-{v} out of range for {} vertices",
                self.n
            )));
        }
        Ok(self.edges.insert((u.min(v), u.max(v))))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n)
            .filter(|&u| u != v && self.has_edge(u, v))
            .collect()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|&&(a, b)| a == v || b == v)
            .count()
    }

    /// Copy with the extra edge `u-v`; an existing edge is an error.
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        if !g.insert_edge(u, v)? {
            return Err(Error::InvalidGraph(format!("edge {u}-{v} already present")));
        }
        Ok(g)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Result<Graph> {
        let mut g = self.clone();
        if !g.edges.remove(&(u.min(v), u.max(v))) {
            return Err(Error::InvalidGraph(format!("edge {u}-{v} not present")));
        }
        Ok(g)
    }

    /// Copy with one extra isolated vertex, numbered `n`.
    pub fn with_isolated_vertex(&self) -> Graph {
        Graph {
            n: self.n + 1,
            edges: self.edges.clone(),
        }
    }

    /// `self ⊔ other`, with `other` relabelled after `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        Graph {
            n: self.n + other.n,
            edges: self
                .edges
                .iter()
                .copied()
                .chain(other.edges.iter().map(|&(u, v)| (u + shift, v + shift)))
                .collect(),
        }
    }

    /// Adjacency rows as bitmasks. Requires at most 64 vertices.
    pub fn adjacency_masks(&self) -> Result<Vec<u64>> {
        if self.n > 64 {
            return Err(Error::ResourceGuard(format!(
                "bitmask adjacency needs at most 64 vertices, graph has {}",
                self.n
            )));
        }
        let mut adj = vec![0u64; self.n];
        for &(u, v) in &self.edges {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Ok(adj)
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u != v && self.has_edge(u, v))
        })
    }

    pub fn is_stable(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u != v && !self.has_edge(u, v))
        })
    }

    /// Induced subgraph without `x`, vertices after `x` shifted down by one.
    pub fn remove_vertex(&self, x: usize) -> Graph {
        let shift = |v: usize| if v > x { v - 1 } else { v };
        Graph {
            n: self.n.saturating_sub(1),
            edges: self
                .edges
                .iter()
                .filter(|&&(u, v)| u != x && v != x)
                .map(|&(u, v)| (shift(u), shift(v)))
                .collect(),
        }
    }

    pub fn rooted(self, root: usize) -> Result<RootedGraph> {
        RootedGraph::new(self, root)
    }

    pub fn double_rooted(self, u: usize, v: usize) -> Result<DoubleRootedGraph> {
        DoubleRootedGraph::new(self, u, v)
    }

    /// Stable textual form of the labelled graph, used as a cache key.
    pub fn canonical_key(&self) -> String {
        let mut s = format!("{}:", self.n);
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(&format!("{u}-{v}"));
        }
        s
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.canonical_key())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedGraph {
    pub graph: Graph,
    pub root: usize,
}

impl RootedGraph {
    pub fn new(graph: Graph, root: usize) -> Result<Self> {
        if root >= graph.order() {
            return Err(Error::InvalidGraph(format!(
                "root {root} out of range for {} vertices",
                graph.order()
            )));
        }
        Ok(RootedGraph { graph, root })
    }

    /// The singleton `K_1`.
    pub fn singleton() -> Self {
        RootedGraph {
            graph: Graph::empty(1),
            root: 0,
        }
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DoubleRootedGraph {
    pub graph: Graph,
    pub roots: (usize, usize),
}

impl DoubleRootedGraph {
    pub fn new(graph: Graph, u: usize, v: usize) -> Result<Self> {
        if u == v {
            return Err(Error::InvalidGraph(format!(
                "roots must be distinct, got {u} twice"
            )));
        }
        if u.max(v) >= graph.order() {
            return Err(Error::InvalidGraph(format!(
                "roots ({u}, {v}) out of range for {} vertices",
                graph.order()
            )));
        }
        Ok(DoubleRootedGraph {
            graph,
            roots: (u, v),
        })
    }

    pub fn order(&self) -> usize {
        self.graph.order()
    }

    /// `(graph, u)`.
    pub fn entry(&self) -> RootedGraph {
        RootedGraph {
            graph: self.graph.clone(),
            root: self.roots.0,
        }
    }

    /// `(graph, v)`.
    pub fn exit(&self) -> RootedGraph {
        RootedGraph {
            graph: self.graph.clone(),
            root: self.roots.1,
        }
    }
}

/// Serialized form `{"n": 6, "edges": [[0,1],[1,2]], "roots": [0,5]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default)]
    pub roots: Vec<usize>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph, roots: &[usize]) -> Self {
        GraphJson {
            n: g.order(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            roots: roots.to_vec(),
        }
    }

    pub fn to_graph(&self) -> Result<Graph> {
        let g = Graph::new(self.n, self.edges.iter().map(|e| (e[0], e[1])))?;
        if let Some(&r) = self.roots.iter().find(|&&r| r >= self.n) {
            return Err(Error::InvalidGraph(format!("root {r} out of range")));
        }
        Ok(g)
    }
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        GraphJson::from_graph(g, &[])
    }
}

impl From<&RootedGraph> for GraphJson {
    fn from(g: &RootedGraph) -> Self {
        GraphJson::from_graph(&g.graph, &[g.root])
    }
}

impl From<&DoubleRootedGraph> for GraphJson {
    fn from(g: &DoubleRootedGraph) -> Self {
        GraphJson::from_graph(&g.graph, &[g.roots.0, g.roots.1])
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        GraphJson::deserialize(d)?
            .to_graph()
            .map_err(serde::de::Error::custom)
    }
}

/// Brute-force isomorphism test by backtracking over vertex bijections,
/// pruned by degree. Intended for graphs of order at most about 10.
pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.order();
    let deg_a: Vec<usize> = (0..n).map(|v| a.degree(v)).collect();
    let deg_b: Vec<usize> = (0..n).map(|v| b.degree(v)).collect();
    let mut sa = deg_a.clone();
    let mut sb = deg_b.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return false;
    }
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend_mapping(a, b, &deg_a, &deg_b, 0, &mut map, &mut used)
}

fn extend_mapping(
    a: &Graph,
    b: &Graph,
    deg_a: &[usize],
    deg_b: &[usize],
    v: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    if v == a.order() {
        return true;
    }
    for w in 0..b.order() {
        if used[w] || deg_a[v] != deg_b[w] {
            continue;
        }
        let consistent = (0..v).all(|u| a.has_edge(u, v) == b.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend_mapping(a, b, deg_a, deg_b, v + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[v] = usize::MAX;
    false
}
