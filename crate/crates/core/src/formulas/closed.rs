//! Closed-form `e_I`-expansions. Coefficients are computed over the integers
//! and converted to the requested scalar at the end.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{e, path_sf, require, Sf};
use crate::error::{Error, Result};
use crate::symcore::{
    compositions_of, factorial, surplus, w_weight, Composition, EIExpansion, Scalar,
};

fn big(n: i128) -> BigInt {
    BigInt::from(n)
}

fn w_big(comp: &Composition) -> BigInt {
    big(w_weight(comp))
}

/// `X_{P_n} = Σ_{I ⊨ n} w_I e_I`.
pub fn path_ei<C: Scalar>(n: usize) -> Result<EIExpansion<C>> {
    require(n >= 1, || format!("path needs n >= 1, got {n}"))?;
    let mut out = EIExpansion::new(n);
    for comp in compositions_of(n) {
        let w = w_weight(&comp);
        if w != 0 {
            out.add_term(comp, C::from_bigint(&big(w)));
        }
    }
    Ok(out)
}

/// `X_{K_a^{n-a}} = (a-1)! Σ_{I ⊨ n, i_{-1} >= a} w_I e_I`.
pub fn lollipop_ei<C: Scalar>(a: usize, n: usize) -> Result<EIExpansion<C>> {
    require(1 <= a && a <= n, || {
        format!("lollipop needs 1 <= a <= n, got a={a}, n={n}")
    })?;
    let scale = factorial(a - 1);
    let mut out = EIExpansion::new(n);
    for comp in compositions_of(n) {
        if comp.last().is_some_and(|last| last >= a) {
            out.add_term(comp.clone(), C::from_bigint(&(&scale * w_big(&comp))));
        }
    }
    Ok(out)
}

/// `X_{C_{n-l}^l} = Σ_{I ⊨ n} Θ_I(l+1) w_I e_I`.
pub fn tadpole_ei<C: Scalar>(n: usize, l: usize) -> Result<EIExpansion<C>> {
    require(n >= 2 && l <= n - 2, || {
        format!("tadpole needs 0 <= l <= n-2, got n={n}, l={l}")
    })?;
    let mut out = EIExpansion::new(n);
    for comp in compositions_of(n) {
        let theta = surplus(&comp, l as i64 + 1)?;
        out.add_term(
            comp.clone(),
            C::from_bigint(&(big(theta as i128) * w_big(&comp))),
        );
    }
    Ok(out)
}

/// `X_{S(abc)}` for the spider with legs `a`, `b`, `c` (any may be 0):
/// `Σ_{i=0}^{c} X_{P_i} X_{P_{n-i}} - Σ_{i=b+1}^{b+c} X_{P_i} X_{P_{n-i}}`.
pub fn spider3_sf<C: Scalar>(a: usize, b: usize, c: usize) -> Result<Sf<C>> {
    let n = a + b + c + 1;
    let mut out = Sf::<C>::zero(n);
    for i in 0..=c {
        out = out + path_sf::<C>(i).product(&path_sf(n - i));
    }
    for i in b + 1..=b + c {
        out = out - path_sf::<C>(i).product(&path_sf(n - i));
    }
    Ok(out)
}

/// One weak composition of the K-chain expansion with its full coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakTerm {
    pub alpha: Vec<usize>,
    pub coeff: BigInt,
}

/// Every `α ∈ A_γ` with a nonzero coefficient, prefactor included.
pub fn kchain_weak_terms(gamma: &[usize]) -> Result<Vec<WeakTerm>> {
    require(!gamma.is_empty() && gamma.iter().all(|&g| g >= 2), || {
        format!("K-chain clique sizes must be at least 2, got {gamma:?}")
    })?;
    let l = gamma.len();
    let total = gamma.iter().sum::<usize>() - l + 1;
    let prefactor: BigInt = gamma[..l - 1]
        .iter()
        .map(|&g| factorial(g - 2))
        .product::<BigInt>()
        * factorial(gamma[l - 1] - 1);
    // bound[i] = γ_i + ... + γ_l - (l - i), 0-based i
    let bound: Vec<usize> = (0..l)
        .map(|i| gamma[i..].iter().sum::<usize>() - (l - 1 - i))
        .collect();

    let mut out = Vec::new();
    let mut alpha = vec![0usize; l];
    weak_compositions(total, &mut alpha, 0, &mut |alpha| {
        let mut suffix = 0usize;
        let mut coeff = big(alpha[0] as i128);
        for i in (1..l).rev() {
            suffix += alpha[i];
            let below = alpha[i] < gamma[i - 1];
            if below != (suffix < bound[i]) {
                return;
            }
            coeff *= big((alpha[i] as i128 - gamma[i - 1] as i128 + 1).abs());
        }
        if !coeff.is_zero() {
            out.push(WeakTerm {
                alpha: alpha.to_vec(),
                coeff: coeff * &prefactor,
            });
        }
    });
    Ok(out)
}

fn weak_compositions(rest: usize, alpha: &mut [usize], at: usize, f: &mut impl FnMut(&[usize])) {
    if at + 1 == alpha.len() {
        alpha[at] = rest;
        f(alpha);
        return;
    }
    for v in 0..=rest {
        alpha[at] = v;
        weak_compositions(rest - v, alpha, at + 1, f);
    }
}

/// The K-chain expansion with zero parts of `α` dropped (`e_0 = 1`).
pub fn kchain_ei<C: Scalar>(gamma: &[usize]) -> Result<EIExpansion<C>> {
    let terms = kchain_weak_terms(gamma)?;
    let n = gamma.iter().sum::<usize>() - gamma.len() + 1;
    let mut out = EIExpansion::new(n);
    for t in terms {
        let comp = Composition::new(t.alpha.into_iter().filter(|&p| p > 0).collect())?;
        out.add_term(comp, C::from_bigint(&t.coeff));
    }
    Ok(out)
}

/// `X_{P^b(K_a, C_c)} = (a-1)! Σ_{K ⊨ n} c_K w_K e_K`, `n = a+b+c-1`.
pub fn kpc_ei<C: Scalar>(a: usize, b: usize, c: usize) -> Result<EIExpansion<C>> {
    require(a >= 1 && c >= 2, || {
        format!("KPC needs a >= 1, b >= 0, c >= 2, got ({a},{b},{c})")
    })?;
    let n = a + b + c - 1;
    let scale = factorial(a - 1);
    let mut out = EIExpansion::new(n);
    for comp in compositions_of(n) {
        let w = w_big(&comp);
        let k1 = comp.parts()[0];
        let k2 = comp.part(2);
        let cw = match k2 {
            Some(k2) if k2 < a => continue,
            Some(k2) if k1 < a && k2 >= a + b => {
                // (k2 - k1)/(k2 - 1) · w is integral since w carries (k2 - 1)
                let frac = big(k2 as i128 - k1 as i128) * &w;
                let denom = big(k2 as i128 - 1);
                if !(&frac % &denom).is_zero() {
                    return Err(Error::IdentityFailed(format!(
                        "non-integral KPC coefficient at {comp}"
                    )));
                }
                big(k2 as i128 - (a + b) as i128) * &w + frac / denom
            }
            _ => big(surplus(&comp, (a + b) as i64)? as i128) * &w,
        };
        out.add_term(comp, C::from_bigint(&(&scale * cw)));
    }
    Ok(out)
}

/// The values `f_1, f_2, f_3` for a composition and an integer `a`,
/// without the `e_I` factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FWeights {
    pub f1: BigInt,
    pub f2: BigInt,
    pub f3: BigInt,
}

impl FWeights {
    /// `f1 - f2 - f3`, which is `a - 1` for one-part compositions and 0
    /// otherwise.
    pub fn defect(&self) -> BigInt {
        &self.f1 - &self.f2 - &self.f3
    }
}

pub fn f_weights(comp: &Composition, a: i64) -> Result<FWeights> {
    let last = comp
        .last()
        .ok_or_else(|| Error::InvalidParameter("f-weights need a nonempty composition".into()))?
        as i64;
    let head = w_big(&comp.without_from_end(1));
    let a_big = BigInt::from(a);
    Ok(FWeights {
        f1: (&a_big - 1) * w_big(comp),
        f2: (&a_big - 2) * BigInt::from(last) * &head,
        f3: BigInt::from(last - a + 1) * head,
    })
}

/// Path-clique-path graph `C^{gh}(K_1, K_m, K_1)`, `n = g+h+m`:
/// `(m-2)! [(m-1)e_n + Σ_{Θ_I(h+1) >= m-1} f_2(I,m) + Σ_{i_{-1} >= m-1} f_3(I,m)]`.
pub fn pkp_ei<C: Scalar>(g: usize, h: usize, m: usize) -> Result<EIExpansion<C>> {
    require(m >= 2, || format!("PKP needs m >= 2, got {m}"))?;
    let n = g + h + m;
    let scale = factorial(m - 2);
    let mut out = EIExpansion::new(n);
    out.add_term(
        Composition::new(vec![n])?,
        C::from_bigint(&(&scale * big(m as i128 - 1))),
    );
    for comp in compositions_of(n) {
        let f = f_weights(&comp, m as i64)?;
        let mut coeff = BigInt::zero();
        if surplus(&comp, h as i64 + 1)? >= m as i64 - 1 {
            coeff += f.f2;
        }
        if comp.last().is_some_and(|last| last + 1 >= m) {
            coeff += f.f3;
        }
        out.add_term(comp, C::from_bigint(&(&scale * coeff)));
    }
    Ok(out)
}

/// Clique-clique-path graph `C^{0a}(K_c, K_{b+1}, K_1)`, `n = a+b+c`.
pub fn kkp_ei<C: Scalar>(a: usize, b: usize, c: usize) -> Result<EIExpansion<C>> {
    require(b >= 1 && c >= 1, || {
        format!("KKP needs a >= 0, b >= 1, c >= 1, got ({a},{b},{c})")
    })?;
    let n = a + b + c;
    let scale = factorial(b - 1) * factorial(c - 1);
    let (bi, ci) = (b as i128, c as i128);
    let mut out = EIExpansion::new(n);
    for comp in compositions_of(n) {
        let last = comp.from_end(1).expect("n >= 2") as i128;
        let mut coeff = BigInt::zero();
        if last >= bi + ci {
            coeff += big(bi) * w_big(&comp);
        }
        if let Some(second) = comp.from_end(2) {
            let low = last <= (bi - 1).min(ci - 1);
            let high = last >= (bi + 1).max(ci);
            if last < bi + ci && last + second as i128 >= bi + ci && (low || high) {
                coeff += big((bi - last).abs()) * w_big(&comp.without_from_end(1));
            }
        }
        out.add_term(comp, C::from_bigint(&(&scale * coeff)));
    }
    Ok(out)
}

/// `Σ_{l=0}^{a} (1-l) e_l X_{P_{n-l}}`, checked against `X_{K_{a+1}^{n-1-a}}/a!`
/// (or `e_n` when `a = n`).
pub fn clique_path_convolution<C: Scalar>(a: usize, n: usize) -> Result<Sf<C>> {
    require(a <= n, || {
        format!("convolution needs a <= n, got a={a}, n={n}")
    })?;
    let mut lhs = Sf::<C>::zero(n);
    for l in 0..=a {
        lhs = lhs + e::<C>(l).product(&path_sf(n - l)).scale_int(1 - l as i64);
    }
    let rhs = if a == n {
        e(n)
    } else {
        super::lollipop_core_sf(a + 1, n)
    };
    if lhs != rhs {
        return Err(Error::IdentityFailed(format!(
            "clique-path convolution fails at a={a}, n={n}: {lhs} != {rhs}"
        )));
    }
    Ok(lhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcore::Partition;
    use crate::Rational;

    fn c(p: &[usize]) -> Composition {
        Composition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn small_paths() {
        assert_eq!(
            path_ei::<BigInt>(1).unwrap().coeff(&c(&[1])),
            BigInt::from(1)
        );
        assert_eq!(
            path_ei::<Rational>(3).unwrap().flatten().to_string(),
            "3e_3 + e_21"
        );
        assert!(path_ei::<BigInt>(0).is_err());
    }

    #[test]
    fn lollipop_and_tadpole() {
        let want = "8e_4 + 4e_31";
        assert_eq!(
            lollipop_ei::<BigInt>(3, 4).unwrap().flatten().to_string(),
            want
        );
        assert_eq!(
            tadpole_ei::<BigInt>(4, 1).unwrap().flatten().to_string(),
            want
        );
        assert_eq!(
            tadpole_ei::<BigInt>(3, 0).unwrap().flatten().to_string(),
            "6e_3"
        );
        assert_eq!(
            lollipop_ei::<BigInt>(5, 5).unwrap().flatten().to_string(),
            "120e_5"
        );
    }

    #[test]
    fn kchain_hand_values() {
        let p3 = kchain_ei::<BigInt>(&[2, 2]).unwrap().flatten();
        assert_eq!(p3.to_string(), "3e_3 + e_21");
        let big_chain = kchain_ei::<BigInt>(&[3, 7]).unwrap().flatten();
        assert_eq!(big_chain.coeff(&Partition::single(9)), BigInt::from(12960));
        assert_eq!(
            kchain_ei::<BigInt>(&[4]).unwrap().flatten().to_string(),
            "24e_4"
        );
    }

    #[test]
    fn f_weight_examples() {
        let f = f_weights(&c(&[2, 1]), 3).unwrap();
        assert_eq!((f.f1, f.f2, f.f3), (0.into(), 2.into(), (-2).into()));
        for n in 1..=6 {
            let f = f_weights(&c(&[n]), 5).unwrap();
            assert_eq!(f.defect(), BigInt::from(4));
        }
    }

    #[test]
    fn convolution_endpoints() {
        assert_eq!(clique_path_convolution::<BigInt>(0, 4).unwrap(), path_sf(4));
        assert_eq!(clique_path_convolution::<BigInt>(5, 5).unwrap(), e(5));
        clique_path_convolution::<BigInt>(2, 4).unwrap();
    }

    #[test]
    fn spider_with_empty_leg_is_a_path() {
        assert_eq!(spider3_sf::<BigInt>(2, 3, 0).unwrap(), path_sf(6));
    }
}
