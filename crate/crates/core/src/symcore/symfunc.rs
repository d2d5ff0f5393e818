//! Homogeneous symmetric functions stored as sparse partition-keyed maps in a
//! multiplicative basis (elementary or power-sum).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use parking_lot::Mutex;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::partition::Partition;
use super::scalar::{binomial, Scalar};
use crate::error::{Error, Result};

/// Marker for a multiplicative basis `b_λ = b_{λ_1} b_{λ_2} ...`.
pub trait Basis: Copy + Clone + fmt::Debug + PartialEq + Eq + Send + Sync + 'static {
    /// Serialized basis tag.
    const TAG: &'static str;

    /// Value of the generator `b_part` at `x_1 = ... = x_k = 1`, other variables 0.
    fn principal(part: usize, k: u64) -> BigInt;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Elementary;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerSum;

impl Basis for Elementary {
    const TAG: &'static str = "e";

    fn principal(part: usize, k: u64) -> BigInt {
        binomial(k, part as u64)
    }
}

impl Basis for PowerSum {
    const TAG: &'static str = "p";

    fn principal(_part: usize, k: u64) -> BigInt {
        BigInt::from(k)
    }
}

/// A homogeneous symmetric function of fixed degree. Zero coefficients are
/// never stored.
#[derive(Clone, PartialEq)]
pub struct SymFunc<B: Basis, C: Scalar> {
    degree: usize,
    coeffs: BTreeMap<Partition, C>,
    basis: PhantomData<B>,
}

impl<B: Basis, C: Scalar> SymFunc<B, C> {
    pub fn zero(degree: usize) -> Self {
        SymFunc {
            degree,
            coeffs: BTreeMap::new(),
            basis: PhantomData,
        }
    }

    /// The constant 1 (degree 0, keyed by the empty partition).
    pub fn one() -> Self {
        Self::basis_element(Partition::empty())
    }

    pub fn basis_element(partition: Partition) -> Self {
        Self::monomial(partition, C::one())
    }

    pub fn monomial(partition: Partition, coeff: C) -> Self {
        let mut f = Self::zero(partition.size());
        f.add_term(partition, coeff);
        f
    }

    /// The generator `b_k`; `k = 0` gives the constant 1.
    pub fn generator(k: usize) -> Self {
        Self::basis_element(Partition::single(k))
    }

    /// Builds from `(partition, coefficient)` pairs, summing repeats.
    pub fn from_terms<I>(degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Partition, C)>,
    {
        let mut f = Self::zero(degree);
        for (p, c) in terms {
            if p.size() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: p.size(),
                });
            }
            f.add_term(p, c);
        }
        Ok(f)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, partition: &Partition) -> C {
        self.coeffs.get(partition).cloned().unwrap_or_else(C::zero)
    }

    /// Terms in ascending partition order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Partition, &C)> {
        self.coeffs.iter()
    }

    pub(crate) fn add_term(&mut self, partition: Partition, coeff: C) {
        debug_assert_eq!(partition.size(), self.degree);
        if coeff.is_zero() {
            return;
        }
        match self.coeffs.entry(partition) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + coeff;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    fn check_degree(&self, other: &Self) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_degree(other)?;
        let mut out = self.clone();
        for (p, c) in &other.coeffs {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.checked_add(&-other)
    }

    pub fn scale(&self, factor: &C) -> Self {
        let mut out = Self::zero(self.degree);
        for (p, c) in &self.coeffs {
            out.add_term(p.clone(), c.clone() * factor.clone());
        }
        out
    }

    pub fn scale_int(&self, factor: i64) -> Self {
        self.scale(&C::from_int(factor))
    }

    /// Divides every coefficient by `divisor`. Exact for fields; for integer
    /// rings the caller guarantees divisibility.
    pub fn div_scalar(&self, divisor: &C) -> Self {
        let mut out = Self::zero(self.degree);
        for (p, c) in &self.coeffs {
            out.add_term(p.clone(), c.clone() / divisor.clone());
        }
        out
    }

    /// Bilinear product with `b_λ b_μ = b_{λ ∪ μ}`.
    pub fn product(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.degree + other.degree);
        for (p, c) in &self.coeffs {
            for (q, d) in &other.coeffs {
                out.add_term(p.union(q), c.clone() * d.clone());
            }
        }
        out
    }

    pub fn pow(&self, exp: usize) -> Self {
        (0..exp).fold(Self::one(), |acc, _| acc.product(self))
    }

    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> SymFunc<B, D> {
        let mut out = SymFunc::zero(self.degree);
        for (p, c) in &self.coeffs {
            out.add_term(p.clone(), f(c));
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(Scalar::is_integral)
    }

    /// Evaluates at `x_1 = ... = x_k = 1` and all other variables 0.
    pub fn principal_eval(&self, k: u64) -> C {
        let mut total = C::zero();
        for (p, c) in &self.coeffs {
            let v = p
                .parts()
                .iter()
                .fold(BigInt::one(), |acc, &part| acc * B::principal(part, k));
            total = total + c.clone() * C::from_bigint(&v);
        }
        total
    }
}

impl<B: Basis> SymFunc<B, BigInt> {
    pub fn to_scalar<C: Scalar>(&self) -> SymFunc<B, C> {
        self.map_coeffs(C::from_bigint)
    }
}

impl<C: Scalar> SymFunc<Elementary, C> {
    /// `e_k`, with `e_0 = 1`.
    pub fn e(k: usize) -> Self {
        Self::generator(k)
    }
}

impl<C: Scalar> SymFunc<PowerSum, C> {
    /// `p_k`, with `p_0 = 1`.
    pub fn p(k: usize) -> Self {
        Self::generator(k)
    }
}

/// Whether every e-coefficient is nonnegative, with a witness if not.
#[derive(Clone, Debug, PartialEq)]
pub struct Positivity<C> {
    pub positive: bool,
    /// The largest (in reverse lexicographic order) partition with a
    /// negative coefficient.
    pub witness: Option<(Partition, C)>,
}

pub fn is_e_positive<C: Scalar>(f: &SymFunc<Elementary, C>) -> Positivity<C> {
    let witness = f
        .terms()
        .rev()
        .find(|(_, c)| c.is_negative())
        .map(|(p, c)| (p.clone(), c.clone()));
    Positivity {
        positive: witness.is_none(),
        witness,
    }
}

pub fn principal_eval<B: Basis, C: Scalar>(f: &SymFunc<B, C>, k: u64) -> C {
    f.principal_eval(k)
}

type ECache<K> = Mutex<HashMap<K, Arc<SymFunc<Elementary, BigInt>>>>;

fn power_sum_in_e(k: usize) -> Arc<SymFunc<Elementary, BigInt>> {
    static CACHE: OnceLock<ECache<usize>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().get(&k) {
        return hit.clone();
    }
    // p_k = (-1)^{k-1} k e_k + sum_{i=1}^{k-1} (-1)^{k-1-i} e_{k-i} p_i
    let value = if k == 0 {
        SymFunc::one()
    } else {
        let sign = |exp: usize| if exp.is_multiple_of(2) { 1i64 } else { -1 };
        let mut acc = SymFunc::<Elementary, BigInt>::e(k).scale_int(sign(k - 1) * k as i64);
        for i in 1..k {
            let term = SymFunc::e(k - i).product(&power_sum_in_e(i));
            acc = acc + term.scale_int(sign(k - 1 - i));
        }
        acc
    };
    let value = Arc::new(value);
    cache.lock().insert(k, value.clone());
    value
}

fn power_sum_product_in_e(lambda: &Partition) -> Arc<SymFunc<Elementary, BigInt>> {
    static CACHE: OnceLock<ECache<Partition>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().get(lambda) {
        return hit.clone();
    }
    let value = Arc::new(
        lambda
            .parts()
            .iter()
            .fold(SymFunc::one(), |acc, &k| acc.product(&power_sum_in_e(k))),
    );
    cache.lock().insert(lambda.clone(), value.clone());
    value
}

/// Change of basis from power sums to elementary functions via Newton's
/// identities.
pub fn p_to_e<C: Scalar>(f: &SymFunc<PowerSum, C>) -> SymFunc<Elementary, C> {
    let mut out = SymFunc::zero(f.degree());
    for (lambda, c) in f.terms() {
        for (mu, d) in power_sum_product_in_e(lambda).terms() {
            out.add_term(mu.clone(), c.clone() * C::from_bigint(d));
        }
    }
    out
}

impl<B: Basis, C: Scalar> Neg for &SymFunc<B, C> {
    type Output = SymFunc<B, C>;

    fn neg(self) -> SymFunc<B, C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<B: Basis, C: Scalar> Neg for SymFunc<B, C> {
    type Output = SymFunc<B, C>;

    fn neg(self) -> SymFunc<B, C> {
        -&self
    }
}

// The operator forms panic on a degree mismatch; use `checked_add` /
// `checked_sub` for untrusted operands.
macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<B: Basis, C: Scalar> $tr<&SymFunc<B, C>> for &SymFunc<B, C> {
            type Output = SymFunc<B, C>;

            fn $method(self, rhs: &SymFunc<B, C>) -> SymFunc<B, C> {
                self.$checked(rhs).expect("homogeneous degrees must agree")
            }
        }

        impl<B: Basis, C: Scalar> $tr<SymFunc<B, C>> for SymFunc<B, C> {
            type Output = SymFunc<B, C>;

            fn $method(self, rhs: SymFunc<B, C>) -> SymFunc<B, C> {
                (&self).$method(&rhs)
            }
        }

        impl<B: Basis, C: Scalar> $tr<&SymFunc<B, C>> for SymFunc<B, C> {
            type Output = SymFunc<B, C>;

            fn $method(self, rhs: &SymFunc<B, C>) -> SymFunc<B, C> {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);

impl<B: Basis, C: Scalar> Mul<&SymFunc<B, C>> for &SymFunc<B, C> {
    type Output = SymFunc<B, C>;

    fn mul(self, rhs: &SymFunc<B, C>) -> SymFunc<B, C> {
        SymFunc::product(self, rhs)
    }
}

impl<B: Basis, C: Scalar> Mul<SymFunc<B, C>> for SymFunc<B, C> {
    type Output = SymFunc<B, C>;

    fn mul(self, rhs: SymFunc<B, C>) -> SymFunc<B, C> {
        SymFunc::product(&self, &rhs)
    }
}

impl<B: Basis, C: Scalar> fmt::Debug for SymFunc<B, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `18e_6 + 22e_51 - 2e_42`, largest partitions first.
impl<B: Basis, C: Scalar> fmt::Display for SymFunc<B, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.coeffs.iter().rev().enumerate() {
            let (neg, mag) = if c.is_negative() {
                (true, -c.clone())
            } else {
                (false, c.clone())
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            write!(f, "{}_{}", B::TAG, p)?;
        }
        Ok(())
    }
}

/// One serialized term: a partition and its coefficient as a string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRepr {
    pub partition: Partition,
    pub coeff: String,
}

#[derive(Serialize, Deserialize)]
struct SymFuncRepr {
    basis: String,
    degree: usize,
    terms: Vec<TermRepr>,
}

impl<B: Basis, C: Scalar> SymFunc<B, C> {
    /// Terms in serialization order, largest partition first.
    pub fn term_reprs(&self) -> Vec<TermRepr> {
        self.coeffs
            .iter()
            .rev()
            .map(|(p, c)| TermRepr {
                partition: p.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }
}

impl<B: Basis, C: Scalar> Serialize for SymFunc<B, C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SymFuncRepr {
            basis: B::TAG.to_string(),
            degree: self.degree,
            terms: self.term_reprs(),
        }
        .serialize(serializer)
    }
}

impl<'de, B: Basis, C: Scalar> Deserialize<'de> for SymFunc<B, C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let repr = SymFuncRepr::deserialize(deserializer)?;
        if repr.basis != B::TAG {
            return Err(de::Error::custom(format!(
                "expected basis {:?}, found {:?}",
                B::TAG,
                repr.basis
            )));
        }
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let c = t
                .coeff
                .parse::<C>()
                .map_err(|_| de::Error::custom(format!("bad coefficient {:?}", t.coeff)))?;
            terms.push((t.partition, c));
        }
        SymFunc::from_terms(repr.degree, terms).map_err(de::Error::custom)
    }
}
