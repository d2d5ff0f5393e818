//! Seeded identity suites shared by the CLI and the test targets.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::{clique_path_convolution, f_weights};
use crate::oracle::{
    check_ap, check_triple_deletion, random_ap_instance, random_triple_deletion_instance, ApMode,
    IdentityReport, Oracle,
};
use crate::symcore::compositions_of;
use crate::Rational;

/// Random graphs with a stable triple, orders drawn from `3..=max_order`.
pub fn triple_deletion_suite(
    oracle: &Oracle,
    trials: usize,
    max_order: usize,
    seed: u64,
) -> Result<Vec<IdentityReport>> {
    if max_order < 3 {
        return Err(Error::InvalidParameter(format!(
            "triple deletion needs order >= 3, got {max_order}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<_> = (0..trials)
        .map(|_| {
            let order = rng.gen_range(3..=max_order);
            random_triple_deletion_instance(&mut rng, order)
        })
        .collect();
    instances
        .par_iter()
        .map(|(g, triple)| check_triple_deletion(oracle, g, *triple))
        .collect()
}

/// Random tribe-vertex pairs in graphs of order at most `max_order`.
pub fn ap_suite(
    oracle: &Oracle,
    trials: usize,
    max_order: usize,
    mode: ApMode,
    seed: u64,
) -> Result<Vec<IdentityReport>> {
    if max_order < 3 {
        return Err(Error::InvalidParameter(format!(
            "tribe-vertex pairs need order >= 3, got {max_order}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let instances: Vec<_> = (0..trials)
        .map(|_| random_ap_instance(&mut rng, max_order, mode))
        .collect();
    instances
        .par_iter()
        .map(|(g, clique, x)| check_ap(oracle, g, clique, *x, mode))
        .collect()
}

/// One `(n, a)` cell of the f-weight identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FWeightRecord {
    pub check: &'static str,
    pub n: usize,
    pub a: usize,
    pub compositions: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

/// `f1 - f2 - f3` equals `a - 1` on one-part compositions and vanishes on
/// the rest, for every composition of `1..=max_n` and `2 <= a <= max_a`.
pub fn f_weight_suite(max_n: usize, max_a: usize) -> Result<Vec<FWeightRecord>> {
    let cells: Vec<(usize, usize)> = (1..=max_n)
        .flat_map(|n| (2..=max_a).map(move |a| (n, a)))
        .collect();
    cells
        .par_iter()
        .map(|&(n, a)| {
            let mut failures = Vec::new();
            let mut count = 0;
            for comp in compositions_of(n) {
                count += 1;
                let expected = if comp.len() == 1 { a as i64 - 1 } else { 0 };
                let got = f_weights(&comp, a as i64)?.defect();
                if got != BigInt::from(expected) {
                    failures.push(format!("{comp}: {got} != {expected}"));
                }
            }
            Ok(FWeightRecord {
                check: "f-weights",
                n,
                a,
                compositions: count,
                pass: failures.is_empty(),
                failures,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvolutionRecord {
    pub check: &'static str,
    pub a: usize,
    pub n: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// The clique-path convolution for every `0 <= a <= n <= max_n`.
pub fn convolution_suite(max_n: usize) -> Result<Vec<ConvolutionRecord>> {
    let cells: Vec<(usize, usize)> = (0..=max_n)
        .flat_map(|n| (0..=n).map(move |a| (a, n)))
        .collect();
    cells
        .par_iter()
        .map(|&(a, n)| match clique_path_convolution::<Rational>(a, n) {
            Ok(_) => Ok(ConvolutionRecord {
                check: "convolution",
                a,
                n,
                pass: true,
                detail: None,
            }),
            Err(Error::IdentityFailed(msg)) => Ok(ConvolutionRecord {
                check: "convolution",
                a,
                n,
                pass: false,
                detail: Some(msg),
            }),
            Err(e) => Err(e),
        })
        .collect()
}
