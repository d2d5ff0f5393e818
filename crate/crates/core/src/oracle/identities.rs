//! Checkers for the triple-deletion identities and the arithmetic
//! progression property of tribe-vertex pairs.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::CsfSource;
use crate::error::{Error, Result};
use crate::graphkit::{Graph, GraphJson};
use crate::symcore::{Elementary, Partition, SymFunc};

type ExactE = SymFunc<Elementary, BigInt>;

/// Outcome of an identity check. `residual_terms` collects the nonzero
/// terms of `lhs - rhs` for every equation that failed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub check: String,
    pub graph: GraphJson,
    pub pass: bool,
    pub residual_terms: Vec<ResidualTerm>,
    pub equations: usize,
    #[serde(default, skip_serializing_if = "serde_json::Value::is_null")]
    pub params: serde_json::Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualTerm {
    pub equation: String,
    pub partition: Partition,
    pub coeff: String,
}

impl IdentityReport {
    fn new(check: &str, g: &Graph, params: serde_json::Value) -> Self {
        IdentityReport {
            check: check.to_string(),
            graph: g.into(),
            pass: true,
            residual_terms: Vec::new(),
            equations: 0,
            params,
        }
    }

    fn record(&mut self, equation: String, residual: &ExactE) {
        self.equations += 1;
        if residual.is_zero() {
            return;
        }
        self.pass = false;
        self.residual_terms
            .extend(residual.term_reprs().into_iter().map(|t| ResidualTerm {
                equation: equation.clone(),
                partition: t.partition,
                coeff: t.coeff,
            }));
    }
}

/// Verifies both triple-deletion identities for the stable triple
/// `(t1, t2, t3)`, with `e1 = t1t2`, `e2 = t2t3`, `e3 = t1t3`.
pub fn check_triple_deletion(
    oracle: &impl CsfSource<BigInt>,
    g: &Graph,
    triple: [usize; 3],
) -> Result<IdentityReport> {
    let [t1, t2, t3] = triple;
    if triple.iter().any(|&t| t >= g.order()) {
        return Err(Error::InvalidParameter(format!(
            "triple {triple:?} out of range for a graph of order {}",
            g.order()
        )));
    }
    if t1 == t2 || t2 == t3 || t1 == t3 || !g.is_stable(&triple) {
        return Err(Error::InvalidParameter(format!(
            "vertices {triple:?} are not a stable triple"
        )));
    }
    let edges = [(t1, t2), (t2, t3), (t1, t3)];
    let x = |s: &[usize]| -> Result<ExactE> {
        let mut h = g.clone();
        for &j in s {
            let (u, v) = edges[j - 1];
            h = h.with_edge(u, v)?;
        }
        oracle.csf(&h)
    };
    let (x1, x3, x12, x13, x23, x123) = (
        x(&[1])?,
        x(&[3])?,
        x(&[1, 2])?,
        x(&[1, 3])?,
        x(&[2, 3])?,
        x(&[1, 2, 3])?,
    );
    let mut report = IdentityReport::new(
        "triple-deletion",
        g,
        serde_json::json!({ "triple": triple }),
    );
    report.record("G12 = G1 + G23 - G3".into(), &(x12 - x1 - &x23 + &x3));
    report.record("G123 = G13 + G23 - G3".into(), &(x123 - x13 - x23 + x3));
    Ok(report)
}

/// Whether the edges between `x` and the tribe are added or removed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ApMode {
    Add,
    Remove,
}

impl fmt::Display for ApMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ApMode::Add => "add",
            ApMode::Remove => "remove",
        })
    }
}

impl FromStr for ApMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "add" => Ok(ApMode::Add),
            "remove" => Ok(ApMode::Remove),
            other => Err(Error::Parse(format!("unknown mode {other:?}"))),
        }
    }
}

/// Verifies `(i-j)X_{G_k} + (j-k)X_{G_i} + (k-i)X_{G_j} = 0` for all
/// `0 <= i <= j <= k <= |K|`, where `G_i` toggles the edges from `x` to the
/// first `i` vertices of `K`. A vertex `x == |G|` denotes a fresh vertex.
pub fn check_ap(
    oracle: &impl CsfSource<BigInt>,
    g: &Graph,
    clique: &[usize],
    x: usize,
    mode: ApMode,
) -> Result<IdentityReport> {
    let n = g.order();
    let base = match x.cmp(&n) {
        std::cmp::Ordering::Less => g.clone(),
        std::cmp::Ordering::Equal => g.with_isolated_vertex(),
        std::cmp::Ordering::Greater => {
            return Err(Error::InvalidParameter(format!(
                "vertex {x} is neither in the graph nor the next fresh label {n}"
            )))
        }
    };
    validate_tribe(&base, clique, x, mode)?;

    let graphs = (0..=clique.len())
        .map(|i| {
            clique[..i]
                .iter()
                .try_fold(base.clone(), |h, &v| match mode {
                    ApMode::Add => h.with_edge(x, v),
                    ApMode::Remove => h.without_edge(x, v),
                })
        })
        .collect::<Result<Vec<_>>>()?;
    let values = graphs
        .iter()
        .map(|h| oracle.csf(h))
        .collect::<Result<Vec<ExactE>>>()?;

    let mut report = IdentityReport::new(
        "arithmetic-progression",
        g,
        serde_json::json!({ "clique": clique, "x": x, "mode": mode }),
    );
    let m = clique.len();
    for i in 0..=m {
        for j in i..=m {
            for k in j..=m {
                let c = |a: usize, b: usize| a as i64 - b as i64;
                let residual = values[k].scale_int(c(i, j))
                    + values[i].scale_int(c(j, k))
                    + values[j].scale_int(c(k, i));
                report.record(format!("(i,j,k)=({i},{j},{k})"), &residual);
            }
        }
    }
    Ok(report)
}

fn validate_tribe(g: &Graph, clique: &[usize], x: usize, mode: ApMode) -> Result<()> {
    let invalid = |msg: String| Err(Error::InvalidParameter(msg));
    let distinct: BTreeSet<usize> = clique.iter().copied().collect();
    if distinct.len() != clique.len() || clique.iter().any(|&v| v >= g.order()) {
        return invalid(format!(
            "clique {clique:?} has repeated or out-of-range vertices"
        ));
    }
    if distinct.contains(&x) {
        return invalid(format!("vertex {x} lies in the clique"));
    }
    if !g.is_clique(clique) {
        return invalid(format!("{clique:?} is not a clique"));
    }
    let closed = |v: usize| -> BTreeSet<usize> {
        g.neighbors(v)
            .into_iter()
            .chain([v])
            .filter(|&u| u != x)
            .collect()
    };
    if let Some(&first) = clique.first() {
        let reference = closed(first);
        if clique.iter().any(|&v| closed(v) != reference) {
            return invalid(format!(
                "vertices of {clique:?} have different closed neighborhoods away from {x}"
            ));
        }
    }
    let linked = clique.iter().filter(|&&v| g.has_edge(x, v)).count();
    match mode {
        ApMode::Add if linked > 0 => {
            invalid(format!("vertex {x} is already adjacent to the clique"))
        }
        ApMode::Remove if linked < clique.len() => {
            invalid(format!("vertex {x} is not adjacent to every clique vertex"))
        }
        _ => Ok(()),
    }
}
