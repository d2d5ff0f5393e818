//! Ground truth: `X_G` by signed edge-subset expansion, the chromatic
//! polynomial by counting stable-set partitions, and checkers for the
//! deletion identities.

mod chromatic;
mod expansion;
mod identities;
mod random;
mod scan;

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use parking_lot::RwLock;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::graphkit::Graph;
use crate::symcore::{p_to_e, Elementary, Scalar, SymFunc};

pub use chromatic::{chromatic_poly, MAX_CHROMATIC_ORDER};
pub use expansion::{power_sum_by_subsets, power_sum_grouped, MAX_GROUPED_ORDER, MAX_SUBSET_EDGES};
pub use identities::{check_ap, check_triple_deletion, ApMode, IdentityReport, ResidualTerm};
pub use random::{random_ap_instance, random_graph, random_triple_deletion_instance};
pub use scan::{positivity_scan, Counterexample, ScanItem, ScanOutcome, ScanRecord, Witness};

/// Which expansion the oracle runs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Plain enumeration of all `2^|E|` subsets.
    Subsets,
    /// Subsets merged by induced vertex partition.
    Grouped,
    /// Subsets for sparse graphs, grouped for dense ones.
    #[default]
    Auto,
}

impl FromStr for Engine {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subsets" => Ok(Engine::Subsets),
            "grouped" => Ok(Engine::Grouped),
            "auto" => Ok(Engine::Auto),
            other => Err(Error::Parse(format!("unknown oracle engine {other:?}"))),
        }
    }
}

/// Above this many edges `Auto` prefers the grouped expansion when the
/// order allows it.
const AUTO_SUBSET_EDGES: usize = 18;

/// Computes `X_G` in the elementary basis with integer coefficients.
pub fn csf_exact(g: &Graph, engine: Engine) -> Result<SymFunc<Elementary, BigInt>> {
    let p = match engine {
        Engine::Subsets => power_sum_by_subsets(g)?,
        Engine::Grouped => power_sum_grouped(g)?,
        Engine::Auto => {
            if g.edge_count() <= AUTO_SUBSET_EDGES || g.order() > MAX_GROUPED_ORDER {
                power_sum_by_subsets(g)?
            } else {
                power_sum_grouped(g)?
            }
        }
    };
    Ok(p_to_e(&p))
}

/// `X_G` over the rationals, without caching.
pub fn csf_oracle(g: &Graph) -> Result<crate::SymFuncE> {
    Ok(csf_exact(g, Engine::Auto)?.to_scalar())
}

/// Anything that can produce `X_G` for a concrete graph.
pub trait CsfSource<C: Scalar>: Sync {
    fn csf(&self, g: &Graph) -> Result<SymFunc<Elementary, C>>;
}

/// Memoizing oracle, safe to share across threads. Results are keyed by the
/// canonical edge list and optionally persisted as one JSON file per graph.
pub struct Oracle {
    engine: Engine,
    cache: RwLock<HashMap<String, Arc<SymFunc<Elementary, BigInt>>>>,
    cache_dir: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct CacheEntry {
    key: String,
    csf: SymFunc<Elementary, BigInt>,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle::new(Engine::Auto)
    }
}

impl Oracle {
    pub fn new(engine: Engine) -> Self {
        Oracle {
            engine,
            cache: RwLock::new(HashMap::new()),
            cache_dir: None,
        }
    }

    /// Persists results under `dir`, creating it if needed.
    pub fn with_cache_dir(mut self, dir: impl AsRef<Path>) -> Result<Self> {
        fs::create_dir_all(dir.as_ref())?;
        self.cache_dir = Some(dir.as_ref().to_path_buf());
        Ok(self)
    }

    pub fn engine(&self) -> Engine {
        self.engine
    }

    /// Number of graphs held in memory.
    pub fn cached(&self) -> usize {
        self.cache.read().len()
    }

    pub fn csf_exact(&self, g: &Graph) -> Result<Arc<SymFunc<Elementary, BigInt>>> {
        let key = g.canonical_key();
        if let Some(hit) = self.cache.read().get(&key) {
            return Ok(hit.clone());
        }
        let value = match self.load(&key)? {
            Some(v) => v,
            None => {
                let v = csf_exact(g, self.engine)?;
                self.store(&key, &v)?;
                v
            }
        };
        let value = Arc::new(value);
        self.cache
            .write()
            .entry(key)
            .or_insert_with(|| value.clone());
        Ok(value)
    }

    fn path_for(&self, key: &str) -> Option<PathBuf> {
        self.cache_dir.as_ref().map(|d| {
            d.join(format!(
                "{}.json",
                hex::encode(Sha256::digest(key.as_bytes()))
            ))
        })
    }

    fn load(&self, key: &str) -> Result<Option<SymFunc<Elementary, BigInt>>> {
        let Some(path) = self.path_for(key) else {
            return Ok(None);
        };
        if !path.exists() {
            return Ok(None);
        }
        let entry: CacheEntry = serde_json::from_slice(&fs::read(&path)?)?;
        Ok((entry.key == key).then_some(entry.csf))
    }

    fn store(&self, key: &str, csf: &SymFunc<Elementary, BigInt>) -> Result<()> {
        let Some(path) = self.path_for(key) else {
            return Ok(());
        };
        let entry = CacheEntry {
            key: key.to_string(),
            csf: csf.clone(),
        };
        let tmp = path.with_extension(format!("tmp{}", std::process::id()));
        fs::write(&tmp, serde_json::to_vec(&entry)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

impl<C: Scalar> CsfSource<C> for Oracle {
    fn csf(&self, g: &Graph) -> Result<SymFunc<Elementary, C>> {
        Ok(self.csf_exact(g)?.to_scalar())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphkit::{clique, path_graph};
    use crate::symcore::{factorial, Partition};

    #[test]
    fn small_values() {
        let k3 = csf_oracle(&clique(3).unwrap()).unwrap();
        assert_eq!(k3.to_string(), "6e_3");
        let p3 = csf_oracle(&path_graph(3).unwrap()).unwrap();
        assert_eq!(p3.to_string(), "3e_3 + e_21");
        assert_eq!(csf_oracle(&clique(1).unwrap()).unwrap().to_string(), "e_1");
    }

    #[test]
    fn dense_graph_uses_grouped_engine() {
        let f = csf_exact(&clique(9).unwrap(), Engine::Auto).unwrap();
        assert_eq!(f.coeff(&Partition::single(9)), factorial(9));
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn disk_cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("csf-cache-test-{}", std::process::id()));
        let g = path_graph(5).unwrap();
        let first = Oracle::default().with_cache_dir(&dir).unwrap();
        let a = first.csf_exact(&g).unwrap();
        let second = Oracle::new(Engine::Grouped).with_cache_dir(&dir).unwrap();
        assert!(second.load(&g.canonical_key()).unwrap().is_some());
        assert_eq!(*second.csf_exact(&g).unwrap(), *a);
        fs::remove_dir_all(dir).unwrap();
    }
}
