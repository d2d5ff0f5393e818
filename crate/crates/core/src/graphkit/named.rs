//! The standard graphs and the named families built from them.

use super::conjoin::{chain_conjoin, path_conjoin, spider_conjoin, tailed};
use super::graph::{DoubleRootedGraph, Graph, RootedGraph};
use crate::error::{Error, Result};

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

/// `K_n`, `n >= 1`.
pub fn clique(n: usize) -> Result<Graph> {
    require(n >= 1, || "clique needs n >= 1".into())?;
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// `P_n` on vertices `0..n` in path order, `n >= 1`.
pub fn path_graph(n: usize) -> Result<Graph> {
    require(n >= 1, || "path needs n >= 1".into())?;
    Graph::new(n, (1..n).map(|v| (v - 1, v)))
}

/// `C_n` on `0..n` in cyclic order. `C_2` is its underlying simple graph,
/// a single edge.
pub fn cycle(n: usize) -> Result<Graph> {
    require(n >= 2, || "cycle needs n >= 2".into())?;
    if n == 2 {
        return Graph::new(2, [(0, 1)]);
    }
    Graph::new(n, (0..n).map(|v| (v, (v + 1) % n)))
}

/// `P_n` rooted at an end.
pub fn rooted_path(n: usize) -> Result<RootedGraph> {
    path_graph(n)?.rooted(0)
}

/// `K_m` with roots `0` and `m - 1`, `m >= 2`.
pub fn double_rooted_clique(m: usize) -> Result<DoubleRootedGraph> {
    require(m >= 2, || "double-rooted clique needs m >= 2".into())?;
    clique(m)?.double_rooted(0, m - 1)
}

/// `C_m` with the adjacent roots `0` and `m - 1`.
pub fn hat_cycle(m: usize) -> Result<DoubleRootedGraph> {
    cycle(m)?.double_rooted(0, m - 1)
}

/// Lollipop `K_m^l`.
pub fn lollipop(m: usize, l: usize) -> Result<Graph> {
    Ok(tailed(&clique(m)?.rooted(0)?, l)?.graph)
}

/// Tadpole `C_m^l`, `m >= 2`.
pub fn tadpole(m: usize, l: usize) -> Result<Graph> {
    Ok(tailed(&cycle(m)?.rooted(0)?, l)?.graph)
}

/// The spider `S(legs)`: paths of the given lengths sharing one end.
pub fn spider(legs: &[usize]) -> Result<Graph> {
    require(!legs.is_empty(), || "spider needs at least one leg".into())?;
    let nodes = vec![RootedGraph::singleton(); legs.len()];
    Ok(spider_conjoin(legs, &nodes)?.graph)
}

/// Clique `K_m` with two pendant paths of lengths `g` and `h` at one vertex.
pub fn pineapple(g: usize, h: usize, m: usize) -> Result<Graph> {
    let k1 = RootedGraph::singleton();
    Ok(spider_conjoin(&[0, g, h], &[clique(m)?.rooted(0)?, k1.clone(), k1])?.graph)
}

/// `C^{gh}(K_1, C_m, K_1)` with the two cycle roots adjacent.
pub fn hat(g: usize, m: usize, h: usize) -> Result<Graph> {
    hat_chain(&[m], &[g, h])
}

/// `C^{τ_0 ... τ_l}(K_1, C_{m_1}, ..., C_{m_l}, K_1)` with each cycle's roots
/// adjacent.
pub fn hat_chain(ms: &[usize], taus: &[usize]) -> Result<Graph> {
    require(!ms.is_empty(), || {
        "hat-chain needs at least one cycle".into()
    })?;
    require(taus.len() == ms.len() + 1, || {
        format!(
            "hat-chain with {} cycles needs {} links",
            ms.len(),
            ms.len() + 1
        )
    })?;
    let cycles = ms
        .iter()
        .map(|&m| hat_cycle(m))
        .collect::<Result<Vec<_>>>()?;
    let k1 = RootedGraph::singleton();
    chain_conjoin(taus, &k1, &cycles, &k1)
}

/// The `K`-chain `K_{γ_1} + ... + K_{γ_l}`, each part at least 2.
pub fn kchain(gamma: &[usize]) -> Result<Graph> {
    require(!gamma.is_empty() && gamma.iter().all(|&p| p >= 2), || {
        format!("K-chain parts must all be at least 2, got {gamma:?}")
    })?;
    let l = gamma.len();
    if l == 1 {
        return clique(gamma[0]);
    }
    let first = clique(gamma[0])?.rooted(gamma[0] - 1)?;
    let last = clique(gamma[l - 1])?.rooted(0)?;
    let middle = gamma[1..l - 1]
        .iter()
        .map(|&m| double_rooted_clique(m))
        .collect::<Result<Vec<_>>>()?;
    chain_conjoin(&vec![0; l - 1], &first, &middle, &last)
}

/// Clique-path-cycle `P^b(K_a, C_c)`.
pub fn kpc(a: usize, b: usize, c: usize) -> Result<Graph> {
    path_conjoin(&clique(a)?.rooted(0)?, &cycle(c)?.rooted(0)?, b)
}

/// Kayak paddle `P^k(C_g, C_h)`.
pub fn kayak(g: usize, k: usize, h: usize) -> Result<Graph> {
    path_conjoin(&cycle(g)?.rooted(0)?, &cycle(h)?.rooted(0)?, k)
}

/// Path-clique-path `K_m^{gh}(K_1, K_1)`.
pub fn pkp(g: usize, h: usize, m: usize) -> Result<Graph> {
    let k1 = RootedGraph::singleton();
    chain_conjoin(&[g, h], &k1, &[double_rooted_clique(m)?], &k1)
}

/// Clique-clique-path `K_{b+1}^{0a}(K_c, K_1)`.
pub fn kkp(a: usize, b: usize, c: usize) -> Result<Graph> {
    require(b >= 1 && c >= 1, || "kkp needs b, c >= 1".into())?;
    chain_conjoin(
        &[0, a],
        &clique(c)?.rooted(0)?,
        &[double_rooted_clique(b + 1)?],
        &RootedGraph::singleton(),
    )
}

/// Parses a node graph name: `K<n>`, `C<n>` (rooted at 0) or `P<n>`
/// (rooted at an end).
pub fn node_graph(name: &str) -> Result<RootedGraph> {
    let name = name.trim();
    let (kind, size) = name.split_at(name.len().min(1));
    let n: usize = size
        .parse()
        .map_err(|_| Error::Parse(format!("bad node graph {name:?}")))?;
    match kind {
        "K" | "k" => clique(n)?.rooted(0),
        "C" | "c" => cycle(n)?.rooted(0),
        "P" | "p" => rooted_path(n),
        _ => Err(Error::Parse(format!(
            "unknown node graph {name:?}; expected K<n>, C<n> or P<n>"
        ))),
    }
}
