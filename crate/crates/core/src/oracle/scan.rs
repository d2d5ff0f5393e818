//! Parallel e-positivity scans over generated graph families.

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::CsfSource;
use crate::error::Result;
use crate::graphkit::{Graph, GraphJson};
use crate::symcore::{is_e_positive, Elementary, Partition, SymFunc};

/// A labelled graph to scan.
#[derive(Clone, Debug)]
pub struct ScanItem {
    pub label: String,
    pub graph: Graph,
}

impl ScanItem {
    pub fn new(label: impl Into<String>, graph: Graph) -> Self {
        ScanItem {
            label: label.into(),
            graph,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub label: String,
    pub order: usize,
    pub edges: usize,
    pub positive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub partition: Partition,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub label: String,
    pub graph: GraphJson,
    pub witness: Witness,
}

/// Per-graph records in input order, plus every failure.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ScanOutcome {
    pub records: Vec<ScanRecord>,
    pub counterexamples: Vec<Counterexample>,
}

/// Computes `X_G` for every item and tests e-positivity. Work is spread
/// over the current rayon pool; the output order matches the input.
pub fn positivity_scan(
    oracle: &(impl CsfSource<BigInt> + ?Sized),
    items: &[ScanItem],
) -> Result<ScanOutcome> {
    let records = items
        .par_iter()
        .map(|item| {
            let x: SymFunc<Elementary, BigInt> = oracle.csf(&item.graph)?;
            let verdict = is_e_positive(&x);
            Ok(ScanRecord {
                label: item.label.clone(),
                order: item.graph.order(),
                edges: item.graph.edge_count(),
                positive: verdict.positive,
                witness: verdict.witness.map(|(partition, c)| Witness {
                    partition,
                    coeff: c.to_string(),
                }),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let counterexamples = records
        .iter()
        .zip(items)
        .filter_map(|(r, item)| {
            r.witness.clone().map(|witness| Counterexample {
                label: r.label.clone(),
                graph: (&item.graph).into(),
                witness,
            })
        })
        .collect();
    Ok(ScanOutcome {
        records,
        counterexamples,
    })
}
