//! Reduction formulas expressing conjoined graphs through tailed graphs,
//! path-conjoined graphs and paths.

use super::{
    cycle_sf, e, lollipop_core_sf, lollipop_sf, path_sf, require, PairProvider, Sf, TailProvider,
};
use crate::error::{Error, Result};
use crate::graphkit::{path_conjoin, spider_conjoin, tailed, RootedGraph};
use crate::oracle::CsfSource;
use crate::symcore::{factorial, Scalar};

/// Running sum that adopts the degree of its first term and rejects
/// mismatched ones.
struct Acc<C: Scalar>(Option<Sf<C>>);

impl<C: Scalar> Acc<C> {
    fn new() -> Self {
        Acc(None)
    }

    fn add(&mut self, term: Sf<C>) -> Result<()> {
        self.0 = Some(match self.0.take() {
            None => term,
            Some(acc) => acc.checked_add(&term)?,
        });
        Ok(())
    }

    fn sub(&mut self, term: Sf<C>) -> Result<()> {
        self.add(-term)
    }

    fn finish(self) -> Result<Sf<C>> {
        self.0
            .ok_or_else(|| Error::InvalidParameter("formula has no terms".into()))
    }
}

fn fact<C: Scalar>(n: usize) -> C {
    C::from_bigint(&factorial(n))
}

/// `X_{P^k(K_g, H)} = (g-1)! Σ_{l=0}^{g-1} (1-l) e_l X_{H^{k+g-1-l}}`.
pub fn kpg_reduce<C: Scalar>(
    g: usize,
    k: usize,
    tails: &(impl TailProvider<C> + ?Sized),
) -> Result<Sf<C>> {
    require(g >= 1, || format!("KPG needs g >= 1, got {g}"))?;
    let mut acc = Acc::new();
    for l in 0..g {
        acc.add(
            e::<C>(l)
                .product(&tails.tail(k + g - 1 - l)?)
                .scale_int(1 - l as i64),
        )?;
    }
    Ok(acc.finish()?.scale(&fact(g - 1)))
}

/// `X_{P^k(C_g, H)} = (g-1) X_{H^{k+g-1}} - Σ_{l=1}^{g-2} X_{C_{g-l}} X_{H^{k+l-1}}`.
pub fn cpg_reduce<C: Scalar>(
    g: usize,
    k: usize,
    tails: &(impl TailProvider<C> + ?Sized),
) -> Result<Sf<C>> {
    require(g >= 2, || format!("CPG needs g >= 2, got {g}"))?;
    let mut acc = Acc::new();
    acc.add(tails.tail(k + g - 1)?.scale_int(g as i64 - 1))?;
    for l in 1..g.saturating_sub(1) {
        acc.sub(cycle_sf::<C>(g - l)?.product(&tails.tail(k + l - 1)?))?;
    }
    acc.finish()
}

/// `X_{S^τ(G_1, ..., G_l)}` for `l >= 3` and `τ_1, τ_2 >= 1`, peeling one
/// leg at a time:
///
/// `X_G = X_{S^{(τ_1-1)τ_2 1}(G_1, G_2, H) + X_{G_1^{τ_1-1}} X_{S^{τ_2...τ_l}}
///   - X_{P^{τ_1+τ_2-1}(G_1, G_2)} X_H`, with `H = S^{τ_3...τ_l}(G_3, ...)`.
///
/// Three-leg spiders and every graph the step cannot peel further go to
/// `source`.
pub fn spider_l_reduce<C: Scalar>(
    tau: &[usize],
    nodes: &[RootedGraph],
    source: &(impl CsfSource<C> + ?Sized),
) -> Result<Sf<C>> {
    let l = tau.len();
    require(l >= 3 && nodes.len() == l, || {
        format!(
            "spider reduction needs l >= 3 legs with one node each, got {l} legs and {} nodes",
            nodes.len()
        )
    })?;
    require(tau[0] >= 1 && tau[1] >= 1, || {
        format!("spider reduction needs the first two legs positive, got {tau:?}")
    })?;
    if l == 3 {
        return source.csf(&spider_conjoin(tau, nodes)?.graph);
    }
    let (g1, g2) = (&nodes[0], &nodes[1]);
    let hub = spider_conjoin(&tau[2..], &nodes[2..])?;
    let three = spider_conjoin(
        &[tau[0] - 1, tau[1], 1],
        &[g1.clone(), g2.clone(), hub.clone()],
    )?;
    let rest = if tau[2] >= 1 {
        spider_l_reduce(&tau[1..], &nodes[1..], source)?
    } else {
        source.csf(&spider_conjoin(&tau[1..], &nodes[1..])?.graph)?
    };
    let mut acc = Acc::new();
    acc.add(source.csf(&three.graph)?)?;
    acc.add(source.csf(&tailed(g1, tau[0] - 1)?.graph)?.product(&rest))?;
    acc.sub(
        source
            .csf(&path_conjoin(g1, g2, tau[0] + tau[1] - 1)?)?
            .product(&source.csf(&hub.graph)?),
    )?;
    acc.finish()
}

/// `X_{S^{ghj}(G, H, J)}` for `h >= 1`, given `base = X_{S^{(g+j)h0}(G, H, J)}`,
/// a provider for `(G, H)` and one for `(H, J)`.
pub fn spider3_reduce<C: Scalar>(
    g: usize,
    h: usize,
    j: usize,
    base: &Sf<C>,
    gh: &(impl PairProvider<C> + ?Sized),
    hj: &(impl PairProvider<C> + ?Sized),
) -> Result<Sf<C>> {
    require(h >= 1, || "the 3-spider reduction needs h >= 1".into())?;
    let mut acc = Acc::new();
    acc.add(base.clone())?;
    for i in 1..=j {
        acc.add(gh.bridge(g + h + i - 1)?.product(&hj.second_tail(j - i)?))?;
        acc.sub(gh.first_tail(g + i - 1)?.product(&hj.bridge(h + j - i)?))?;
    }
    acc.finish()
}

/// `X_{S_j^{gh}(G, H)} = Σ_{i=0}^j X_{P_i} X_{P^{g+h+j-i}(G,H)}
///   - Σ_{i=1}^j X_{G^{g+i-1}} X_{H^{h+j-i}}`, for `h >= 1`.
pub fn spider_tail_two_node<C: Scalar>(
    g: usize,
    h: usize,
    j: usize,
    pair: &(impl PairProvider<C> + ?Sized),
) -> Result<Sf<C>> {
    require(h >= 1, || "the two-node spider formula needs h >= 1".into())?;
    let mut acc = Acc::new();
    for i in 0..=j {
        acc.add(path_sf::<C>(i).product(&pair.bridge(g + h + j - i)?))?;
    }
    for i in 1..=j {
        acc.sub(
            pair.first_tail(g + i - 1)?
                .product(&pair.second_tail(h + j - i)?),
        )?;
    }
    acc.finish()
}

/// `X_{S_{hj}^g(G)} = Σ_{i=0}^j X_{P_i} X_{G^{g+j-i+h}} - Σ_{i=1}^j X_{P_{i+h}} X_{G^{g+j-i}}`,
/// for `h >= 1`.
pub fn spider_tail_one_node<C: Scalar>(
    g: usize,
    h: usize,
    j: usize,
    tails: &(impl TailProvider<C> + ?Sized),
) -> Result<Sf<C>> {
    require(h >= 1, || "the one-node spider formula needs h >= 1".into())?;
    let mut acc = Acc::new();
    for i in 0..=j {
        acc.add(path_sf::<C>(i).product(&tails.tail(g + j - i + h)?))?;
    }
    for i in 1..=j {
        acc.sub(path_sf::<C>(i + h).product(&tails.tail(g + j - i)?))?;
    }
    acc.finish()
}

/// `X_{S^{ghk}(G, H, K_m)}` for `m, h >= 1`.
pub fn spider_clique_sf<C: Scalar>(
    g: usize,
    h: usize,
    k: usize,
    m: usize,
    pair: &(impl PairProvider<C> + ?Sized),
) -> Result<Sf<C>> {
    require(m >= 1 && h >= 1, || {
        format!("clique spider needs m, h >= 1, got m={m}, h={h}")
    })?;
    let mut main = Acc::new();
    for z in 0..m {
        main.add(e::<C>(m - 1 - z).product(&pair.bridge(g + h + k + z)?))?;
    }
    // a + b + c = k + m - 2 with a <= m - 1
    if k + m >= 2 {
        let total = k + m - 2;
        for a in 0..=total.min(m - 1) {
            for b in 0..=total - a {
                let c = total - a - b;
                let term = e::<C>(a)
                    .product(&pair.first_tail(b + g)?)
                    .product(&pair.second_tail(c + h)?);
                main.sub(term.scale_int(1 - a as i64))?;
            }
        }
    }
    let mut acc = Acc::new();
    acc.add(main.finish()?.scale(&fact(m - 1)))?;
    for z in 0..k {
        acc.add(lollipop_sf::<C>(m, z)?.product(&pair.bridge(g + h + k - z - 1)?))?;
    }
    acc.finish()
}

/// `X_{S^{gkh}(G, K_m, K_1)}` for `m, h >= 1`.
pub fn spider_gk_sf<C: Scalar>(
    g: usize,
    k: usize,
    h: usize,
    m: usize,
    tails: &(impl TailProvider<C> + ?Sized),
) -> Result<Sf<C>> {
    require(m >= 1 && h >= 1, || {
        format!("clique spider needs m, h >= 1, got m={m}, h={h}")
    })?;
    let mut main = Acc::new();
    for z in 0..m {
        main.add(e::<C>(z).product(&tails.tail(g + h + k + m - z - 1)?))?;
    }
    for z in 1..m {
        main.sub(lollipop_core_sf::<C>(z, z + h).product(&tails.tail(g + k + m - z - 1)?))?;
    }
    let mut acc = Acc::new();
    acc.add(main.finish()?.scale(&fact(m - 1)))?;
    for z in 0..k {
        acc.add(lollipop_sf::<C>(m, z)?.product(&tails.tail(g + h + k - z - 1)?))?;
        acc.sub(lollipop_sf::<C>(m, h + z)?.product(&tails.tail(g + k - z - 1)?))?;
    }
    acc.finish()
}

/// The pineapple `S^{0gh}(K_m, K_1, K_1)` for `h, m >= 1`.
pub fn pineapple_sf<C: Scalar>(g: usize, h: usize, m: usize) -> Result<Sf<C>> {
    require(m >= 1 && h >= 1, || {
        format!("pineapple needs h, m >= 1, got h={h}, m={m}")
    })?;
    let mut acc = Acc::new();
    for z in 0..m {
        acc.add(e::<C>(z).product(&path_sf(g + h + m - z)))?;
    }
    for z in 1..m {
        acc.sub(lollipop_core_sf::<C>(z, z + h).product(&path_sf(g + m - z)))?;
    }
    Ok(acc.finish()?.scale(&fact(m - 1)))
}

/// `X_{S^{ghk}(G, H, C_m)} = (m-1) X_{W^{k+m-1}} - Σ_{l=1}^{m-2} X_{W^{k+l-1}} X_{C_{m-l}}`,
/// where `W^j = S_j^{gh}(G, H)` comes from `w_tails`.
pub fn spider_cycle_reduce<C: Scalar>(
    k: usize,
    m: usize,
    w_tails: &(impl TailProvider<C> + ?Sized),
) -> Result<Sf<C>> {
    cpg_reduce(m, k, w_tails)
}

/// `X_{C^{gh}(G, K_m, H)}` for `m >= 2`.
pub fn kgh_sf<C: Scalar>(
    g: usize,
    h: usize,
    m: usize,
    pair: &(impl PairProvider<C> + ?Sized),
) -> Result<Sf<C>> {
    require(m >= 2, || format!("KGH needs m >= 2, got {m}"))?;
    let mut acc = Acc::new();
    for z in 1..m {
        acc.add(
            e::<C>(m - 1 - z)
                .product(&pair.bridge(g + h + z)?)
                .scale_int(z as i64),
        )?;
    }
    let total = m - 2;
    let mut inner = Acc::new();
    for a in 0..=total {
        for b in 0..=total - a {
            let c = total - a - b;
            let term = e::<C>(a)
                .product(&pair.first_tail(b + g)?)
                .product(&pair.second_tail(c + h)?);
            inner.add(term.scale_int(a as i64 - 1))?;
        }
    }
    acc.add(inner.finish()?.scale_int(m as i64 - 2))?;
    Ok(acc.finish()?.scale(&fact(m - 2)))
}

/// `X_{C^{gh}(G, K_m, K_1)}` for `m >= 2`.
pub fn pkpg_sf<C: Scalar>(
    g: usize,
    h: usize,
    m: usize,
    tails: &(impl TailProvider<C> + ?Sized),
) -> Result<Sf<C>> {
    require(m >= 2, || format!("PKPG needs m >= 2, got {m}"))?;
    let mut acc = Acc::new();
    for z in 1..m {
        acc.add(
            e::<C>(m - 1 - z)
                .product(&tails.tail(g + h + z)?)
                .scale_int(z as i64),
        )?;
    }
    for z in 1..m {
        let term = lollipop_core_sf::<C>(z, z + h).product(&tails.tail(m - 1 - z + g)?);
        acc.sub(term.scale_int(m as i64 - 2))?;
    }
    Ok(acc.finish()?.scale(&fact(m - 2)))
}

/// `X_{C^{gh}(G, C_m, H)}` where the cycle's two roots are adjacent, `m >= 2`.
pub fn gch_sf<C: Scalar>(
    g: usize,
    h: usize,
    m: usize,
    pair: &(impl PairProvider<C> + ?Sized),
) -> Result<Sf<C>> {
    require(m >= 2, || format!("GCH needs m >= 2, got {m}"))?;
    let mut acc = Acc::new();
    let top = g + h + m - 1;
    for b in g + h + 1..=top {
        let a = top - b;
        acc.add(
            path_sf::<C>(a)
                .product(&pair.bridge(b)?)
                .scale_int((b - g - h) as i64),
        )?;
    }
    let total = g + h + m - 2;
    for a in g..=total {
        for b in h..=total - a {
            let c = total - a - b;
            if c >= 2 {
                acc.add(
                    pair.first_tail(a)?
                        .product(&pair.second_tail(b)?)
                        .product(&cycle_sf(c)?),
                )?;
            }
        }
    }
    let mut correction = Acc::new();
    for a in g..=total - h {
        correction.add(pair.first_tail(a)?.product(&pair.second_tail(total - a)?))?;
    }
    acc.sub(correction.finish()?.scale(&C::from_int(m as i64 - 2)))?;
    acc.finish()
}
