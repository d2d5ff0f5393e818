//! Sources for the tailed-graph and path-conjoined values that reduction
//! formulas are written in.

use super::{lollipop_sf, path_sf, reductions::spider_tail_two_node, Sf};
use crate::error::{Error, Result};
use crate::graphkit::{path_conjoin, tailed, RootedGraph};
use crate::oracle::CsfSource;
use crate::symcore::Scalar;

/// `k ↦ X_{H^k}` for a fixed rooted node `H`.
pub trait TailProvider<C: Scalar>: Sync {
    fn tail(&self, k: usize) -> Result<Sf<C>>;
}

impl<C: Scalar, F> TailProvider<C> for F
where
    F: Fn(usize) -> Result<Sf<C>> + Sync,
{
    fn tail(&self, k: usize) -> Result<Sf<C>> {
        self(k)
    }
}

/// Values attached to an ordered pair of rooted nodes `(G, H)`.
pub trait PairProvider<C: Scalar>: Sync {
    /// `X_{G^k}`.
    fn first_tail(&self, k: usize) -> Result<Sf<C>>;
    /// `X_{H^k}`.
    fn second_tail(&self, k: usize) -> Result<Sf<C>>;
    /// `X_{P^k(G, H)}`.
    fn bridge(&self, k: usize) -> Result<Sf<C>>;
}

/// Tails of `K_1`: `X_{P_{k+1}}`.
#[derive(Clone, Copy, Debug, Default)]
pub struct PathTails;

impl<C: Scalar> TailProvider<C> for PathTails {
    fn tail(&self, k: usize) -> Result<Sf<C>> {
        Ok(path_sf(k + 1))
    }
}

/// Tails of `K_m`: the lollipops `X_{K_m^k}`.
#[derive(Clone, Copy, Debug)]
pub struct CliqueTails {
    pub m: usize,
}

impl<C: Scalar> TailProvider<C> for CliqueTails {
    fn tail(&self, k: usize) -> Result<Sf<C>> {
        lollipop_sf(self.m, k)
    }
}

/// Builds `H^k` and asks a [`CsfSource`].
pub struct OracleTails<'a, S: ?Sized> {
    source: &'a S,
    node: RootedGraph,
}

impl<'a, S: ?Sized> OracleTails<'a, S> {
    pub fn new(source: &'a S, node: RootedGraph) -> Self {
        OracleTails { source, node }
    }
}

impl<C: Scalar, S: CsfSource<C> + ?Sized> TailProvider<C> for OracleTails<'_, S> {
    fn tail(&self, k: usize) -> Result<Sf<C>> {
        self.source.csf(&tailed(&self.node, k)?.graph)
    }
}

/// Builds `G^k`, `H^k` and `P^k(G, H)` and asks a [`CsfSource`].
pub struct OraclePair<'a, S: ?Sized> {
    source: &'a S,
    first: RootedGraph,
    second: RootedGraph,
}

impl<'a, S: ?Sized> OraclePair<'a, S> {
    pub fn new(source: &'a S, first: RootedGraph, second: RootedGraph) -> Self {
        OraclePair {
            source,
            first,
            second,
        }
    }
}

impl<C: Scalar, S: CsfSource<C> + ?Sized> PairProvider<C> for OraclePair<'_, S> {
    fn first_tail(&self, k: usize) -> Result<Sf<C>> {
        self.source.csf(&tailed(&self.first, k)?.graph)
    }

    fn second_tail(&self, k: usize) -> Result<Sf<C>> {
        self.source.csf(&tailed(&self.second, k)?.graph)
    }

    fn bridge(&self, k: usize) -> Result<Sf<C>> {
        self.source
            .csf(&path_conjoin(&self.first, &self.second, k)?)
    }
}

/// The pair `(H, G)` seen through a provider for `(G, H)`.
pub struct SwappedPair<'a, P: ?Sized>(pub &'a P);

impl<C: Scalar, P: PairProvider<C> + ?Sized> PairProvider<C> for SwappedPair<'_, P> {
    fn first_tail(&self, k: usize) -> Result<Sf<C>> {
        self.0.second_tail(k)
    }

    fn second_tail(&self, k: usize) -> Result<Sf<C>> {
        self.0.first_tail(k)
    }

    fn bridge(&self, k: usize) -> Result<Sf<C>> {
        self.0.bridge(k)
    }
}

/// Tails of `W = S_0^{gh}(G, H)` rooted at its center, `W^j = S_j^{gh}(G, H)`,
/// expanded with the two-node spider formula. Needs `g + h >= 1`.
pub struct SpiderTails<'a, P: ?Sized> {
    pair: &'a P,
    g: usize,
    h: usize,
}

impl<'a, P: ?Sized> SpiderTails<'a, P> {
    pub fn new(pair: &'a P, g: usize, h: usize) -> Result<Self> {
        if g + h == 0 {
            return Err(Error::InvalidParameter(
                "spider tails need at least one leg of positive length".into(),
            ));
        }
        Ok(SpiderTails { pair, g, h })
    }
}

impl<C: Scalar, P: PairProvider<C> + ?Sized> TailProvider<C> for SpiderTails<'_, P> {
    fn tail(&self, j: usize) -> Result<Sf<C>> {
        if self.h >= 1 {
            spider_tail_two_node(self.g, self.h, j, self.pair)
        } else {
            spider_tail_two_node(self.h, self.g, j, &SwappedPair(self.pair))
        }
    }
}
