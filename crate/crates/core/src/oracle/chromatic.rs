//! Chromatic polynomial values from the number of partitions of `V` into
//! `j` stable sets: `χ_G(k) = Σ_j a_j · k(k-1)...(k-j+1)`.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::graphkit::Graph;

pub const MAX_CHROMATIC_ORDER: usize = 12;

/// Number of proper colorings of `g` with `k` colors.
pub fn chromatic_poly(g: &Graph, k: u64) -> Result<BigInt> {
    let n = g.order();
    if n > MAX_CHROMATIC_ORDER {
        return Err(Error::ResourceGuard(format!(
            "chromatic polynomial is limited to {MAX_CHROMATIC_ORDER} vertices, graph has {n}"
        )));
    }
    let adj = g.adjacency_masks()?;
    let mut memo = HashMap::new();
    let counts = stable_partitions(((1u64 << n) - 1) as u32, &adj, &mut memo);
    let mut total = BigInt::from(0);
    for (j, &a) in counts.iter().enumerate() {
        if a == 0 {
            continue;
        }
        let falling: BigInt = (0..j as u64)
            .map(|i| BigInt::from(k) - BigInt::from(i))
            .product();
        total += falling * BigInt::from(a);
    }
    Ok(total)
}

/// `out[j]` = number of partitions of `set` into `j` nonempty stable sets.
fn stable_partitions(set: u32, adj: &[u64], memo: &mut HashMap<u32, Vec<u64>>) -> Vec<u64> {
    if set == 0 {
        return vec![1];
    }
    if let Some(hit) = memo.get(&set) {
        return hit.clone();
    }
    let v = set.trailing_zeros() as usize;
    let candidates = set & !(1 << v) & !(adj[v] as u32);
    let mut out: Vec<u64> = Vec::new();
    // every subset of the candidates, including the empty one
    let mut sub = candidates;
    loop {
        if is_stable(sub, adj) {
            let rest = stable_partitions(set & !(sub | (1 << v)), adj, memo);
            if out.len() < rest.len() + 1 {
                out.resize(rest.len() + 1, 0);
            }
            for (j, c) in rest.iter().enumerate() {
                out[j + 1] += c;
            }
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & candidates;
    }
    memo.insert(set, out.clone());
    out
}

fn is_stable(set: u32, adj: &[u64]) -> bool {
    let mut bits = set;
    while bits != 0 {
        let u = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        if adj[u] as u32 & set != 0 {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphkit::{clique, cycle, path_graph};

    #[test]
    fn known_values() {
        assert_eq!(
            chromatic_poly(&clique(3).unwrap(), 3).unwrap(),
            BigInt::from(6)
        );
        assert_eq!(
            chromatic_poly(&path_graph(3).unwrap(), 2).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(
            chromatic_poly(&path_graph(4).unwrap(), 0).unwrap(),
            BigInt::from(0)
        );
        // (k-1)^n + (-1)^n (k-1)
        assert_eq!(
            chromatic_poly(&cycle(5).unwrap(), 3).unwrap(),
            BigInt::from(30)
        );
        assert_eq!(
            chromatic_poly(&Graph::empty(0), 0).unwrap(),
            BigInt::from(1)
        );
    }

    #[test]
    fn guard() {
        assert!(matches!(
            chromatic_poly(&Graph::empty(13), 2),
            Err(Error::ResourceGuard(_))
        ));
    }
}
