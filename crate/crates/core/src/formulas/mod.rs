//! Closed-form `e_I`-expansions and reduction formulas for conjoined graph
//! families. Everything is generic over the coefficient [`Scalar`]; the
//! recurring subexpressions `X_{H^k}` and `X_{P^k(G,H)}` come from providers
//! so that each formula can be checked on its own.

mod closed;
mod providers;
mod reductions;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use parking_lot::Mutex;

use crate::error::{Error, Result};
use crate::symcore::{compositions_of, factorial, w_weight, Elementary, Scalar, SymFunc};

pub use closed::{
    clique_path_convolution, f_weights, kchain_ei, kchain_weak_terms, kkp_ei, kpc_ei, lollipop_ei,
    path_ei, pkp_ei, spider3_sf, tadpole_ei, FWeights, WeakTerm,
};
pub use providers::{
    CliqueTails, OraclePair, OracleTails, PairProvider, PathTails, SpiderTails, SwappedPair,
    TailProvider,
};
pub use reductions::{
    cpg_reduce, gch_sf, kgh_sf, kpg_reduce, pineapple_sf, pkpg_sf, spider3_reduce,
    spider_clique_sf, spider_cycle_reduce, spider_gk_sf, spider_l_reduce, spider_tail_one_node,
    spider_tail_two_node,
};

/// Elementary-basis symmetric function over `C`.
pub type Sf<C> = SymFunc<Elementary, C>;

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg()))
    }
}

/// `e_k`, with `e_0 = 1`.
pub fn e<C: Scalar>(k: usize) -> Sf<C> {
    Sf::e(k)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
enum Key {
    Path(usize),
    Cycle(usize),
    LollipopCore(usize, usize),
}

type Shared = Arc<SymFunc<Elementary, BigInt>>;

fn cached(key: Key, build: impl FnOnce() -> SymFunc<Elementary, BigInt>) -> Shared {
    static CACHE: OnceLock<Mutex<HashMap<Key, Shared>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().get(&key) {
        return hit.clone();
    }
    let value = Arc::new(build());
    cache.lock().entry(key).or_insert(value).clone()
}

/// `X_{P_n}`, with `X_{P_0} = 1`.
pub fn path_sf<C: Scalar>(n: usize) -> Sf<C> {
    if n == 0 {
        return Sf::one();
    }
    cached(Key::Path(n), || {
        path_ei::<BigInt>(n).expect("n >= 1").flatten()
    })
    .to_scalar()
}

/// `X_{C_n}` for `n >= 2`; `C_2` is a single edge.
pub fn cycle_sf<C: Scalar>(n: usize) -> Result<Sf<C>> {
    require(n >= 2, || format!("cycle needs n >= 2, got {n}"))?;
    Ok(cached(Key::Cycle(n), || {
        tadpole_ei::<BigInt>(n, 0).expect("n >= 2").flatten()
    })
    .to_scalar())
}

/// `X_{K_a^{n-a}} / (a-1)! = Σ_{I ⊨ n, i_{-1} >= a} w_I e_I`, for `1 <= a <= n`.
pub fn lollipop_core_sf<C: Scalar>(a: usize, n: usize) -> Sf<C> {
    assert!(1 <= a && a <= n, "lollipop core needs 1 <= a <= n");
    cached(Key::LollipopCore(a, n), || {
        let mut out = SymFunc::zero(n);
        for comp in compositions_of(n) {
            if comp.last().is_some_and(|l| l >= a) {
                out = out + SymFunc::monomial(comp.rho(), BigInt::from(w_weight(&comp)));
            }
        }
        out
    })
    .to_scalar()
}

/// `X_{K_m^l}`, the clique `K_m` with a tail of length `l`.
pub fn lollipop_sf<C: Scalar>(m: usize, l: usize) -> Result<Sf<C>> {
    require(m >= 1, || "lollipop needs m >= 1".into())?;
    Ok(lollipop_core_sf::<C>(m, m + l).scale(&C::from_bigint(&factorial(m - 1))))
}
