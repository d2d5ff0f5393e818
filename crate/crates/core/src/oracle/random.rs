//! Random valid inputs for the identity checkers.

use rand::seq::SliceRandom;
use rand::Rng;

use super::ApMode;
use crate::graphkit::Graph;

/// Erdős–Rényi graph `G(n, p)`.
pub fn random_graph<R: Rng + ?Sized>(rng: &mut R, n: usize, p: f64) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::new(n, edges).expect("generated edges are simple")
}

/// A random graph of the given order (at least 3) with a stable triple.
pub fn random_triple_deletion_instance<R: Rng + ?Sized>(
    rng: &mut R,
    order: usize,
) -> (Graph, [usize; 3]) {
    assert!(order >= 3, "a stable triple needs three vertices");
    let mut g = random_graph(rng, order, 0.4);
    let picked: Vec<usize> = rand::seq::index::sample(rng, order, 3).into_vec();
    let triple = [picked[0], picked[1], picked[2]];
    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        if g.has_edge(triple[a], triple[b]) {
            g = g.without_edge(triple[a], triple[b]).expect("edge present");
        }
    }
    (g, triple)
}

/// A random tribe-vertex pair `(K, x)` in a graph of order at most
/// `max_order` (at least 3). The tribe arises by blowing a vertex up into a
/// clique of true twins; `x` is the last vertex and is adjacent to none
/// (add mode) or all (remove mode) of `K`.
pub fn random_ap_instance<R: Rng + ?Sized>(
    rng: &mut R,
    max_order: usize,
    mode: ApMode,
) -> (Graph, Vec<usize>, usize) {
    assert!(
        max_order >= 3,
        "a nontrivial tribe-vertex pair needs three vertices"
    );
    let tribe = rng.gen_range(2..=(max_order - 1).min(4));
    let base_order = rng.gen_range(1..=max_order - tribe);
    let base = random_graph(rng, base_order, 0.5);
    let v = rng.gen_range(0..base_order);

    let n = base_order + tribe;
    let x = n - 1;
    let mut clique: Vec<usize> = std::iter::once(v).chain(base_order..x).collect();
    let mut edges: Vec<(usize, usize)> = base.edges().collect();
    for &t in &clique[1..] {
        edges.extend(base.neighbors(v).into_iter().map(|u| (u, t)));
    }
    for (i, &a) in clique.iter().enumerate() {
        for &b in &clique[i + 1..] {
            edges.push((a, b));
        }
    }
    for u in (0..base_order).filter(|&u| u != v) {
        if rng.gen_bool(0.5) {
            edges.push((u, x));
        }
    }
    if mode == ApMode::Remove {
        edges.extend(clique.iter().map(|&t| (t, x)));
    }
    clique.shuffle(rng);
    let g = Graph::new(n, edges).expect("generated edges are simple");
    (g, clique, x)
}
