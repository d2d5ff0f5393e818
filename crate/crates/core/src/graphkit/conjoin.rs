//! Path-, spider- and chain-conjoining.
//!
//! Vertex numbering is canonical: node graphs first, in argument order and
//! keeping their own labels, then any spider center, then path interior
//! vertices in the order the paths are listed. A path of length 0 identifies
//! its two ends; the surviving label is the smaller one and later labels
//! close up the gap.

use super::graph::{DoubleRootedGraph, Graph, RootedGraph};
use crate::error::{Error, Result};

#[derive(Default)]
struct Assembly {
    n: usize,
    edges: Vec<(usize, usize)>,
    merged_into: Vec<usize>,
}

impl Assembly {
    fn add_graph(&mut self, g: &Graph) -> usize {
        let offset = self.n;
        for _ in 0..g.order() {
            self.add_vertex();
        }
        self.edges
            .extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
        offset
    }

    fn add_vertex(&mut self) -> usize {
        self.merged_into.push(self.n);
        self.n += 1;
        self.n - 1
    }

    fn find(&self, mut v: usize) -> usize {
        while self.merged_into[v] != v {
            v = self.merged_into[v];
        }
        v
    }

    /// Joins `a` and `b` by a path with `len` edges.
    fn link(&mut self, a: usize, b: usize, len: usize) {
        if len == 0 {
            let (ra, rb) = (self.find(a), self.find(b));
            let (keep, drop) = (ra.min(rb), ra.max(rb));
            self.merged_into[drop] = keep;
            return;
        }
        let mut prev = a;
        for _ in 1..len {
            let v = self.add_vertex();
            self.edges.push((prev, v));
            prev = v;
        }
        self.edges.push((prev, b));
    }

    /// Returns the graph and the final label of every assembly vertex.
    fn finish(self) -> Result<(Graph, Vec<usize>)> {
        let reps: Vec<usize> = (0..self.n).map(|v| self.find(v)).collect();
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for v in 0..self.n {
            if reps[v] == v {
                label[v] = next;
                next += 1;
            }
        }
        let relabel: Vec<usize> = reps.iter().map(|&r| label[r]).collect();
        let mut g = Graph::empty(next);
        for &(u, v) in &self.edges {
            let (a, b) = (relabel[u], relabel[v]);
            if a == b {
                return Err(Error::InvalidGraph(format!(
                    "identification turns edge {u}-{v} into a loop"
                )));
            }
            g = g.with_edge(a, b).map_err(|_| {
                Error::InvalidGraph(format!(
                    "identification would create a multi-edge between {a} and {b}"
                ))
            })?;
        }
        Ok((g, relabel))
    }
}

/// `P^k(G, H)`: the roots of `G` and `H` joined by a path of length `k`.
pub fn path_conjoin(g: &RootedGraph, h: &RootedGraph, k: usize) -> Result<Graph> {
    Ok(path_conjoin_double(g, h, k)?.0)
}

/// As [`path_conjoin`], also returning the final labels of both roots.
pub fn path_conjoin_double(
    g: &RootedGraph,
    h: &RootedGraph,
    k: usize,
) -> Result<(Graph, usize, usize)> {
    let mut asm = Assembly::default();
    let og = asm.add_graph(&g.graph);
    let oh = asm.add_graph(&h.graph);
    asm.link(og + g.root, oh + h.root, k);
    let (graph, label) = asm.finish()?;
    Ok((graph, label[og + g.root], label[oh + h.root]))
}

/// The tailed graph `G^k = P^k(G, K_1)`, rooted at the free end of the tail.
pub fn tailed(g: &RootedGraph, k: usize) -> Result<RootedGraph> {
    let (graph, _, end) = path_conjoin_double(g, &RootedGraph::singleton(), k)?;
    RootedGraph::new(graph, end)
}

/// `S^τ(G_1, ..., G_l)`: leg `i` of length `τ_i` runs from a new center to
/// the root of `G_i`. The result is rooted at the center.
pub fn spider_conjoin(tau: &[usize], nodes: &[RootedGraph]) -> Result<RootedGraph> {
    if tau.len() != nodes.len() {
        return Err(Error::InvalidParameter(format!(
            "spider needs one leg per node: {} legs, {} nodes",
            tau.len(),
            nodes.len()
        )));
    }
    if tau.is_empty() {
        return Err(Error::InvalidParameter(
            "spider needs at least one leg".into(),
        ));
    }
    let mut asm = Assembly::default();
    let roots: Vec<usize> = nodes
        .iter()
        .map(|node| asm.add_graph(&node.graph) + node.root)
        .collect();
    let center = asm.add_vertex();
    for (&len, &root) in tau.iter().zip(&roots) {
        asm.link(center, root, len);
    }
    let (graph, label) = asm.finish()?;
    RootedGraph::new(graph, label[center])
}

/// `C^τ(G_0, ..., G_l)`: a path of length `τ_i` links the exit root of node
/// `i - 1` to the entry root of node `i`. The end nodes carry one root each.
pub fn chain_conjoin(
    tau: &[usize],
    first: &RootedGraph,
    middle: &[DoubleRootedGraph],
    last: &RootedGraph,
) -> Result<Graph> {
    if tau.len() != middle.len() + 1 {
        return Err(Error::InvalidParameter(format!(
            "chain with {} inner nodes needs {} links, got {}",
            middle.len(),
            middle.len() + 1,
            tau.len()
        )));
    }
    let mut asm = Assembly::default();
    let mut ports = Vec::with_capacity(middle.len() + 2);
    let o = asm.add_graph(&first.graph);
    ports.push((o + first.root, o + first.root));
    for node in middle {
        let o = asm.add_graph(&node.graph);
        ports.push((o + node.roots.0, o + node.roots.1));
    }
    let o = asm.add_graph(&last.graph);
    ports.push((o + last.root, o + last.root));
    for (i, &len) in tau.iter().enumerate() {
        asm.link(ports[i].1, ports[i + 1].0, len);
    }
    Ok(asm.finish()?.0)
}
