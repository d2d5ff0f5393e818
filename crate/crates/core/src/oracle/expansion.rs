//! `X_G = Σ_{S ⊆ E} (-1)^{|S|} p_{λ(S)}`, where `λ(S)` lists the component
//! sizes of the spanning subgraph `(V, S)`.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graphkit::Graph;
use crate::symcore::{Partition, PowerSum, SymFunc};

/// Largest edge count the subset enumeration accepts.
pub const MAX_SUBSET_EDGES: usize = 30;
/// Largest order the grouped expansion accepts.
pub const MAX_GROUPED_ORDER: usize = 16;

const CHUNK_BITS: usize = 14;

/// Enumerates every edge subset. Refuses graphs with more than
/// [`MAX_SUBSET_EDGES`] edges.
pub fn power_sum_by_subsets(g: &Graph) -> Result<SymFunc<PowerSum, BigInt>> {
    let m = g.edge_count();
    if m > MAX_SUBSET_EDGES {
        return Err(Error::ResourceGuard(format!(
            "edge-subset expansion is limited to {MAX_SUBSET_EDGES} edges, graph has {m}"
        )));
    }
    let n = g.order();
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let total: u64 = 1 << m;
    let chunk: u64 = 1 << CHUNK_BITS.min(m);
    let chunks = total / chunk;

    let counts = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut local: HashMap<Vec<u8>, i64> = HashMap::new();
            let mut parent = vec![0usize; n];
            let mut size = vec![0u8; n];
            let mut key: Vec<u8> = Vec::with_capacity(n);
            for mask in c * chunk..(c + 1) * chunk {
                for (v, p) in parent.iter_mut().enumerate() {
                    *p = v;
                }
                let mut bits = mask;
                while bits != 0 {
                    let e = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let (u, v) = edges[e];
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru != rv {
                        parent[ru] = rv;
                    }
                }
                size.iter_mut().for_each(|s| *s = 0);
                for v in 0..n {
                    let r = find(&mut parent, v);
                    size[r] += 1;
                }
                key.clear();
                key.extend(size.iter().copied().filter(|&s| s > 0));
                key.sort_unstable_by(|a, b| b.cmp(a));
                let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
                match local.get_mut(key.as_slice()) {
                    Some(c) => *c += sign,
                    None => {
                        local.insert(key.clone(), sign);
                    }
                }
            }
            local
        })
        .reduce(HashMap::new, merge_counts);

    collect(n, counts.into_iter().map(|(k, c)| (k, c as i128)))
}

fn find(parent: &mut [usize], mut v: usize) -> usize {
    while parent[v] != v {
        parent[v] = parent[parent[v]];
        v = parent[v];
    }
    v
}

fn merge_counts(mut a: HashMap<Vec<u8>, i64>, b: HashMap<Vec<u8>, i64>) -> HashMap<Vec<u8>, i64> {
    for (k, c) in b {
        *a.entry(k).or_insert(0) += c;
    }
    a
}

fn collect(
    n: usize,
    counts: impl Iterator<Item = (Vec<u8>, i128)>,
) -> Result<SymFunc<PowerSum, BigInt>> {
    SymFunc::from_terms(
        n,
        counts.map(|(k, c)| {
            (
                Partition::from_parts(k.into_iter().map(usize::from).collect()),
                BigInt::from(c),
            )
        }),
    )
}

/// The same signed sum, with subsets merged as soon as they induce the same
/// vertex partition. Subsets that close a cycle inside a component cancel in
/// pairs and are dropped immediately. Refuses graphs of order above
/// [`MAX_GROUPED_ORDER`].
pub fn power_sum_grouped(g: &Graph) -> Result<SymFunc<PowerSum, BigInt>> {
    let n = g.order();
    if n > MAX_GROUPED_ORDER {
        return Err(Error::ResourceGuard(format!(
            "grouped expansion is limited to {MAX_GROUPED_ORDER} vertices, graph has {n}"
        )));
    }
    // state: 4-bit block label per vertex, labels in first-occurrence order
    let singletons: u64 = (0..n).fold(0, |s, v| s | ((v as u64) << (4 * v)));
    let mut states: HashMap<u64, i128> = HashMap::from([(singletons, 1)]);
    for (u, v) in g.edges() {
        let mut next: HashMap<u64, i128> = HashMap::with_capacity(states.len() * 2);
        for (&s, &c) in &states {
            let (lu, lv) = (label(s, u), label(s, v));
            if lu == lv {
                continue;
            }
            add_checked(&mut next, s, c)?;
            add_checked(&mut next, merge_blocks(s, n, lu, lv), -c)?;
        }
        next.retain(|_, c| *c != 0);
        states = next;
    }
    let mut by_partition: HashMap<Vec<u8>, i128> = HashMap::new();
    for (s, c) in states {
        let mut sizes = [0u8; MAX_GROUPED_ORDER];
        for v in 0..n {
            sizes[label(s, v) as usize] += 1;
        }
        let mut key: Vec<u8> = sizes.iter().copied().filter(|&x| x > 0).collect();
        key.sort_unstable_by(|a, b| b.cmp(a));
        let slot = by_partition.entry(key).or_insert(0);
        *slot = slot
            .checked_add(c)
            .ok_or_else(|| Error::ResourceGuard("coefficient overflow".into()))?;
    }
    collect(n, by_partition.into_iter())
}

fn label(state: u64, v: usize) -> u64 {
    (state >> (4 * v)) & 0xf
}

fn add_checked(map: &mut HashMap<u64, i128>, key: u64, c: i128) -> Result<()> {
    let slot = map.entry(key).or_insert(0);
    *slot = slot
        .checked_add(c)
        .ok_or_else(|| Error::ResourceGuard("coefficient overflow".into()))?;
    Ok(())
}

/// Merges blocks `a` and `b`, then restores first-occurrence labelling.
fn merge_blocks(state: u64, n: usize, a: u64, b: u64) -> u64 {
    let (keep, gone) = (a.min(b), a.max(b));
    let mut remap = [u64::MAX; MAX_GROUPED_ORDER];
    let mut next = 0u64;
    let mut out = 0u64;
    for v in 0..n {
        let mut l = label(state, v);
        if l == gone {
            l = keep;
        }
        if remap[l as usize] == u64::MAX {
            remap[l as usize] = next;
            next += 1;
        }
        out |= remap[l as usize] << (4 * v);
    }
    out
}
