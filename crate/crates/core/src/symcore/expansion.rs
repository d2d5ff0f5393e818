use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use serde::{Deserialize, Serialize};

use super::composition::{rho, Composition};
use super::symfunc::{Elementary, SymFunc};
use super::Scalar;

/// A composition-indexed expansion `Σ c_I e_I` where `e_I = e_{ρ(I)}`.
///
/// Such expansions are not unique; two of them are the same symmetric
/// function exactly when their [`flatten`](Self::flatten)ed forms agree.
#[derive(Clone, PartialEq)]
pub struct EIExpansion<C: Scalar> {
    degree: usize,
    terms: BTreeMap<Composition, C>,
}

impl<C: Scalar> EIExpansion<C> {
    pub fn new(degree: usize) -> Self {
        EIExpansion {
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Accumulates `coeff` onto `comp`; zero sums are removed.
    ///
    /// # Panics
    /// If `comp` does not have size [`degree`](Self::degree).
    pub fn add_term(&mut self, comp: Composition, coeff: C) {
        assert_eq!(
            comp.size(),
            self.degree,
            "composition {comp} has the wrong size for degree {}",
            self.degree
        );
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(comp).or_insert_with(C::zero);
        *slot = slot.clone() + coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn coeff(&self, comp: &Composition) -> C {
        self.terms.get(comp).cloned().unwrap_or_else(C::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Composition, &C)> {
        self.terms.iter()
    }

    pub fn scale(&self, factor: &C) -> Self {
        let mut out = Self::new(self.degree);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c.clone() * factor.clone());
        }
        out
    }

    /// Groups terms by `ρ(I)` and sums.
    pub fn flatten(&self) -> SymFunc<Elementary, C> {
        ei_flatten(self)
    }

    /// True when every stored coefficient is nonnegative.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// First stored term with a negative coefficient.
    pub fn negative_term(&self) -> Option<(&Composition, &C)> {
        self.terms.iter().find(|(_, c)| c.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(Scalar::is_integral)
    }
}

impl EIExpansion<num_bigint::BigInt> {
    /// Converts integer coefficients into any coefficient ring.
    pub fn to_scalar<C: Scalar>(&self) -> EIExpansion<C> {
        EIExpansion {
            degree: self.degree,
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), C::from_bigint(c)))
                .collect(),
        }
    }
}

pub fn ei_flatten<C: Scalar>(x: &EIExpansion<C>) -> SymFunc<Elementary, C> {
    SymFunc::from_terms(x.degree, x.terms.iter().map(|(k, c)| (rho(k), c.clone())))
        .expect("composition sizes equal the expansion degree")
}

impl<C: Scalar> Add for &EIExpansion<C> {
    type Output = EIExpansion<C>;

    /// # Panics
    /// On a degree mismatch.
    fn add(self, rhs: &EIExpansion<C>) -> EIExpansion<C> {
        assert_eq!(self.degree, rhs.degree, "expansion degrees must agree");
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }
}

impl<C: Scalar> fmt::Debug for EIExpansion<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(
                self.terms
                    .iter()
                    .map(|(k, c)| (k.to_string(), c.to_string())),
            )
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompositionTerm {
    pub composition: Composition,
    pub coeff: String,
}

impl<C: Scalar> EIExpansion<C> {
    /// Raw `e_I` terms for reports, in composition order.
    pub fn composition_terms(&self) -> Vec<CompositionTerm> {
        self.terms
            .iter()
            .map(|(k, c)| CompositionTerm {
                composition: k.clone(),
                coeff: c.to_string(),
            })
            .collect()
    }
}
