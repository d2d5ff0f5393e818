//! Named graph families: the `name:key=value,...` spec grammar, parameter
//! grids, graph construction and formula evaluation by name.
//!
//! A spec such as `kpc:a=4,b=2,c=4` or `kchain:gamma=3,7` names a family and
//! its parameters. Tokens are separated by `,` or `;`; a token without `=`
//! extends the list of the previous key. Node parameters take graph names
//! `K<n>`, `C<n>` or `P<n>` (see [`node_graph`]).
//!
//! A grid such as `m=2..4,g=0..2,H=K1|C4` expands to the cartesian product
//! of inclusive ranges and `|`-separated alternatives.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::formulas::{
    cpg_reduce, gch_sf, kchain_ei, kgh_sf, kkp_ei, kpc_ei, kpg_reduce, lollipop_ei, path_ei,
    pineapple_sf, pkp_ei, pkpg_sf, spider3_reduce, spider3_sf, spider_clique_sf,
    spider_cycle_reduce, spider_gk_sf, spider_l_reduce, spider_tail_one_node, spider_tail_two_node,
    tadpole_ei, OraclePair, OracleTails, SpiderTails,
};
use crate::graphkit::{
    chain_conjoin, clique, cycle, double_rooted_clique, hat_chain, hat_cycle, kayak, kchain, kkp,
    kpc, lollipop, node_graph, path_conjoin, path_graph, pineapple, pkp, spider_conjoin, tadpole,
    Graph, RootedGraph,
};
use crate::oracle::Oracle;
use crate::symcore::{CompositionTerm, TermRepr};
use crate::{EIExpansion, Rational, SymFuncE};

/// Node graphs used by the default grids.
pub const NODE_POOL: [&str; 5] = ["K1", "K2", "K3", "C4", "P3"];

/// A parsed family spec.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FamilySpec {
    pub family: String,
    pub params: BTreeMap<String, Vec<String>>,
}

impl FamilySpec {
    pub fn new(family: &str) -> Self {
        FamilySpec {
            family: family.to_string(),
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), vec![value.to_string()]);
        self
    }

    pub fn with_list<T: ToString>(mut self, key: &str, values: &[T]) -> Self {
        self.params
            .insert(key.to_string(), values.iter().map(T::to_string).collect());
        self
    }

    fn def(&self) -> Result<&'static FamilyDef> {
        family(&self.family)
    }

    fn raw(&self, key: &str) -> Result<Vec<String>> {
        if let Some(v) = self.params.get(key) {
            return Ok(v.clone());
        }
        let param = self
            .def()?
            .params
            .iter()
            .find(|p| p.key == key)
            .ok_or_else(|| {
                Error::Parse(format!("family {} has no parameter {key}", self.family))
            })?;
        match param.default {
            Some(d) => Ok(d.split(',').map(str::to_string).collect()),
            None => Err(Error::Parse(format!(
                "{}: missing parameter {key}",
                self.family
            ))),
        }
    }

    pub fn int(&self, key: &str) -> Result<usize> {
        match self.ints(key)?.as_slice() {
            [v] => Ok(*v),
            other => Err(Error::Parse(format!(
                "{}: parameter {key} takes one value, got {other:?}",
                self.family
            ))),
        }
    }

    pub fn ints(&self, key: &str) -> Result<Vec<usize>> {
        self.raw(key)?
            .iter()
            .map(|s| {
                s.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("{key}={s} is not a nonnegative integer")))
            })
            .collect()
    }

    pub fn node(&self, key: &str) -> Result<RootedGraph> {
        match self.raw(key)?.as_slice() {
            [v] => node_graph(v),
            other => Err(Error::Parse(format!(
                "{}: node {key} takes one graph name, got {other:?}",
                self.family
            ))),
        }
    }

    pub fn nodes(&self, key: &str) -> Result<Vec<RootedGraph>> {
        self.raw(key)?.iter().map(|s| node_graph(s)).collect()
    }

    /// The graph the spec describes.
    pub fn graph(&self) -> Result<Graph> {
        (self.def()?.graph)(self)
    }

    /// Evaluates the family's formula. Families without one return an
    /// error.
    pub fn evaluate(&self, oracle: &Oracle) -> Result<Evaluation> {
        let def = self.def()?;
        match def.eval {
            Some(eval) => eval(self, oracle),
            None => Err(Error::InvalidParameter(format!(
                "family {} has no closed form; use the oracle engine",
                self.family
            ))),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.family)?;
        let ordered: Vec<(&String, &Vec<String>)> = match family(&self.family) {
            Ok(def) => {
                let mut keys: Vec<_> = self.params.iter().collect();
                keys.sort_by_key(|(k, _)| def.params.iter().position(|p| p.key == k.as_str()));
                keys
            }
            Err(_) => self.params.iter().collect(),
        };
        for (i, (k, v)) in ordered.into_iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}={}", v.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let def = family(name)?;
        let mut spec = FamilySpec::new(def.name);
        let mut last: Option<String> = None;
        for token in rest
            .split([',', ';'])
            .map(str::trim)
            .filter(|t| !t.is_empty())
        {
            match token.split_once('=') {
                Some((k, v)) => {
                    let k = k.trim();
                    if !def.params.iter().any(|p| p.key == k) {
                        return Err(Error::Parse(format!(
                            "family {name} has no parameter {k:?}; expected one of {}",
                            def.param_names()
                        )));
                    }
                    if spec.params.contains_key(k) {
                        return Err(Error::Parse(format!("parameter {k} given twice")));
                    }
                    spec.params
                        .insert(k.to_string(), vec![v.trim().to_string()]);
                    last = Some(k.to_string());
                }
                None => match &last {
                    Some(k) => spec
                        .params
                        .get_mut(k)
                        .expect("key inserted")
                        .push(token.into()),
                    None => return Err(Error::Parse(format!("value {token:?} has no key"))),
                },
            }
        }
        for p in def.params {
            if p.default.is_none() && !spec.params.contains_key(p.key) {
                return Err(Error::Parse(format!("{name}: missing parameter {}", p.key)));
            }
        }
        Ok(spec)
    }
}

/// Formula output: the symmetric function, and the composition-level
/// expansion when the formula produces one.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub sf: SymFuncE,
    pub expansion: Option<EIExpansion>,
}

impl Evaluation {
    fn from_expansion(x: EIExpansion) -> Self {
        Evaluation {
            sf: x.flatten(),
            expansion: Some(x),
        }
    }

    fn from_sf(sf: SymFuncE) -> Self {
        Evaluation {
            sf,
            expansion: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamKind {
    Int,
    IntList,
    Node,
    NodeList,
}

#[derive(Clone, Copy, Debug)]
pub struct ParamDef {
    pub key: &'static str,
    pub kind: ParamKind,
    pub default: Option<&'static str>,
}

const fn int(key: &'static str) -> ParamDef {
    ParamDef {
        key,
        kind: ParamKind::Int,
        default: None,
    }
}

const fn ints(key: &'static str) -> ParamDef {
    ParamDef {
        key,
        kind: ParamKind::IntList,
        default: None,
    }
}

const fn node(key: &'static str) -> ParamDef {
    ParamDef {
        key,
        kind: ParamKind::Node,
        default: Some("K1"),
    }
}

type GraphFn = fn(&FamilySpec) -> Result<Graph>;
type EvalFn = fn(&FamilySpec, &Oracle) -> Result<Evaluation>;

/// A registered family.
pub struct FamilyDef {
    pub name: &'static str,
    pub summary: &'static str,
    pub params: &'static [ParamDef],
    /// Whether the formula is a composition-level expansion claimed to have
    /// only nonnegative coefficients.
    pub positive_expansion: bool,
    graph: GraphFn,
    eval: Option<EvalFn>,
}

impl FamilyDef {
    pub fn has_formula(&self) -> bool {
        self.eval.is_some()
    }

    fn param_names(&self) -> String {
        self.params
            .iter()
            .map(|p| p.key)
            .collect::<Vec<_>>()
            .join(", ")
    }
}

impl fmt::Debug for FamilyDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FamilyDef({})", self.name)
    }
}

fn rooted_clique(m: usize) -> Result<RootedGraph> {
    clique(m)?.rooted(0)
}

fn rooted_cycle(m: usize) -> Result<RootedGraph> {
    cycle(m)?.rooted(0)
}

fn k1() -> RootedGraph {
    RootedGraph::singleton()
}

fn pair<'a>(oracle: &'a Oracle, s: &FamilySpec) -> Result<OraclePair<'a, Oracle>> {
    Ok(OraclePair::new(oracle, s.node("G")?, s.node("H")?))
}

static FAMILIES: &[FamilyDef] = &[
    FamilyDef {
        name: "path",
        summary: "path P_n",
        params: &[int("n")],
        positive_expansion: true,
        graph: |s| path_graph(s.int("n")?),
        eval: Some(|s, _| Ok(Evaluation::from_expansion(path_ei(s.int("n")?)?))),
    },
    FamilyDef {
        name: "clique",
        summary: "complete graph K_n",
        params: &[int("n")],
        positive_expansion: true,
        graph: |s| clique(s.int("n")?),
        eval: Some(|s, _| {
            let n = s.int("n")?;
            Ok(Evaluation::from_expansion(lollipop_ei(n, n)?))
        }),
    },
    FamilyDef {
        name: "cycle",
        summary: "cycle C_n",
        params: &[int("n")],
        positive_expansion: true,
        graph: |s| cycle(s.int("n")?),
        eval: Some(|s, _| Ok(Evaluation::from_expansion(tadpole_ei(s.int("n")?, 0)?))),
    },
    FamilyDef {
        name: "lollipop",
        summary: "lollipop K_a^{n-a}",
        params: &[int("a"), int("n")],
        positive_expansion: true,
        graph: |s| {
            let (a, n) = (s.int("a")?, s.int("n")?);
            if a > n {
                return Err(Error::InvalidParameter("lollipop needs a <= n".into()));
            }
            lollipop(a, n - a)
        },
        eval: Some(|s, _| {
            Ok(Evaluation::from_expansion(lollipop_ei(
                s.int("a")?,
                s.int("n")?,
            )?))
        }),
    },
    FamilyDef {
        name: "tadpole",
        summary: "tadpole C_{n-l}^l",
        params: &[int("n"), int("l")],
        positive_expansion: true,
        graph: |s| {
            let (n, l) = (s.int("n")?, s.int("l")?);
            if l + 2 > n {
                return Err(Error::InvalidParameter("tadpole needs l <= n-2".into()));
            }
            tadpole(n - l, l)
        },
        eval: Some(|s, _| {
            Ok(Evaluation::from_expansion(tadpole_ei(
                s.int("n")?,
                s.int("l")?,
            )?))
        }),
    },
    FamilyDef {
        name: "spider3",
        summary: "3-spider S(abc)",
        params: &[int("a"), int("b"), int("c")],
        positive_expansion: false,
        graph: |s| {
            Ok(spider_conjoin(
                &[s.int("a")?, s.int("b")?, s.int("c")?],
                &[k1(), k1(), k1()],
            )?
            .graph)
        },
        eval: Some(|s, _| {
            Ok(Evaluation::from_sf(spider3_sf(
                s.int("a")?,
                s.int("b")?,
                s.int("c")?,
            )?))
        }),
    },
    FamilyDef {
        name: "kchain",
        summary: "K-chain K_{γ_1} + ... + K_{γ_l}",
        params: &[ints("gamma")],
        positive_expansion: true,
        graph: |s| kchain(&s.ints("gamma")?),
        eval: Some(|s, _| Ok(Evaluation::from_expansion(kchain_ei(&s.ints("gamma")?)?))),
    },
    FamilyDef {
        name: "kpc",
        summary: "clique-path-cycle P^b(K_a, C_c)",
        params: &[int("a"), int("b"), int("c")],
        positive_expansion: true,
        graph: |s| kpc(s.int("a")?, s.int("b")?, s.int("c")?),
        eval: Some(|s, _| {
            Ok(Evaluation::from_expansion(kpc_ei(
                s.int("a")?,
                s.int("b")?,
                s.int("c")?,
            )?))
        }),
    },
    FamilyDef {
        name: "pkp",
        summary: "path-clique-path C^{gh}(K_1, K_m, K_1)",
        params: &[int("g"), int("h"), int("m")],
        positive_expansion: true,
        graph: |s| pkp(s.int("g")?, s.int("h")?, s.int("m")?),
        eval: Some(|s, _| {
            Ok(Evaluation::from_expansion(pkp_ei(
                s.int("g")?,
                s.int("h")?,
                s.int("m")?,
            )?))
        }),
    },
    FamilyDef {
        name: "kkp",
        summary: "clique-clique-path C^{0a}(K_c, K_{b+1}, K_1)",
        params: &[int("a"), int("b"), int("c")],
        positive_expansion: true,
        graph: |s| kkp(s.int("a")?, s.int("b")?, s.int("c")?),
        eval: Some(|s, _| {
            Ok(Evaluation::from_expansion(kkp_ei(
                s.int("a")?,
                s.int("b")?,
                s.int("c")?,
            )?))
        }),
    },
    FamilyDef {
        name: "kpg",
        summary: "P^k(K_g, H) by tailed graphs of H",
        params: &[int("g"), int("k"), node("H")],
        positive_expansion: false,
        graph: |s| path_conjoin(&rooted_clique(s.int("g")?)?, &s.node("H")?, s.int("k")?),
        eval: Some(|s, o| {
            let tails = OracleTails::new(o, s.node("H")?);
            Ok(Evaluation::from_sf(kpg_reduce(
                s.int("g")?,
                s.int("k")?,
                &tails,
            )?))
        }),
    },
    FamilyDef {
        name: "cpg",
        summary: "P^k(C_g, H) by tailed graphs of H",
        params: &[int("g"), int("k"), node("H")],
        positive_expansion: false,
        graph: |s| path_conjoin(&rooted_cycle(s.int("g")?)?, &s.node("H")?, s.int("k")?),
        eval: Some(|s, o| {
            let tails = OracleTails::new(o, s.node("H")?);
            Ok(Evaluation::from_sf(cpg_reduce(
                s.int("g")?,
                s.int("k")?,
                &tails,
            )?))
        }),
    },
    FamilyDef {
        name: "kayak",
        summary: "kayak paddle P^k(C_g, C_h)",
        params: &[int("g"), int("k"), int("h")],
        positive_expansion: false,
        graph: |s| kayak(s.int("g")?, s.int("k")?, s.int("h")?),
        eval: Some(|s, o| {
            let tails = OracleTails::new(o, rooted_cycle(s.int("h")?)?);
            Ok(Evaluation::from_sf(cpg_reduce(
                s.int("g")?,
                s.int("k")?,
                &tails,
            )?))
        }),
    },
    FamilyDef {
        name: "spider",
        summary: "spider-conjoined S^τ(G_1, ..., G_l), l >= 3",
        params: &[
            ints("tau"),
            ParamDef {
                key: "nodes",
                kind: ParamKind::NodeList,
                default: None,
            },
        ],
        positive_expansion: false,
        graph: |s| Ok(spider_conjoin(&s.ints("tau")?, &spider_nodes(s)?)?.graph),
        eval: Some(|s, o| {
            Ok(Evaluation::from_sf(spider_l_reduce(
                &s.ints("tau")?,
                &spider_nodes(s)?,
                o,
            )?))
        }),
    },
    FamilyDef {
        name: "spider3r",
        summary: "S^{ghj}(G, H, J) reduced to J glued at the center",
        params: &[
            int("g"),
            int("h"),
            int("j"),
            node("G"),
            node("H"),
            node("J"),
        ],
        positive_expansion: false,
        graph: |s| {
            let tau = [s.int("g")?, s.int("h")?, s.int("j")?];
            Ok(spider_conjoin(&tau, &[s.node("G")?, s.node("H")?, s.node("J")?])?.graph)
        },
        eval: Some(|s, o| {
            let (g, h, j) = (s.int("g")?, s.int("h")?, s.int("j")?);
            let (gn, hn, jn) = (s.node("G")?, s.node("H")?, s.node("J")?);
            let base_graph =
                spider_conjoin(&[g + j, h, 0], &[gn.clone(), hn.clone(), jn.clone()])?.graph;
            let base = o.csf_exact(&base_graph)?.to_scalar::<Rational>();
            let gh = OraclePair::new(o, gn, hn.clone());
            let hj = OraclePair::new(o, hn, jn);
            Ok(Evaluation::from_sf(spider3_reduce(
                g, h, j, &base, &gh, &hj,
            )?))
        }),
    },
    FamilyDef {
        name: "spidertail",
        summary: "S_j^{gh}(G, H) = S^{ghj}(G, H, K_1)",
        params: &[int("g"), int("h"), int("j"), node("G"), node("H")],
        positive_expansion: false,
        graph: |s| {
            let tau = [s.int("g")?, s.int("h")?, s.int("j")?];
            Ok(spider_conjoin(&tau, &[s.node("G")?, s.node("H")?, k1()])?.graph)
        },
        eval: Some(|s, o| {
            let p = pair(o, s)?;
            Ok(Evaluation::from_sf(spider_tail_two_node(
                s.int("g")?,
                s.int("h")?,
                s.int("j")?,
                &p,
            )?))
        }),
    },
    FamilyDef {
        name: "spidertail1",
        summary: "S_{hj}^g(G) = S^{ghj}(G, K_1, K_1)",
        params: &[int("g"), int("h"), int("j"), node("G")],
        positive_expansion: false,
        graph: |s| {
            let tau = [s.int("g")?, s.int("h")?, s.int("j")?];
            Ok(spider_conjoin(&tau, &[s.node("G")?, k1(), k1()])?.graph)
        },
        eval: Some(|s, o| {
            let tails = OracleTails::new(o, s.node("G")?);
            Ok(Evaluation::from_sf(spider_tail_one_node(
                s.int("g")?,
                s.int("h")?,
                s.int("j")?,
                &tails,
            )?))
        }),
    },
    FamilyDef {
        name: "spiderclique",
        summary: "S^{ghk}(G, H, K_m)",
        params: &[int("g"), int("h"), int("k"), int("m"), node("G"), node("H")],
        positive_expansion: false,
        graph: |s| {
            let tau = [s.int("g")?, s.int("h")?, s.int("k")?];
            let nodes = [s.node("G")?, s.node("H")?, rooted_clique(s.int("m")?)?];
            Ok(spider_conjoin(&tau, &nodes)?.graph)
        },
        eval: Some(|s, o| {
            let p = pair(o, s)?;
            Ok(Evaluation::from_sf(spider_clique_sf(
                s.int("g")?,
                s.int("h")?,
                s.int("k")?,
                s.int("m")?,
                &p,
            )?))
        }),
    },
    FamilyDef {
        name: "spidergk",
        summary: "S^{gkh}(G, K_m, K_1)",
        params: &[int("g"), int("k"), int("h"), int("m"), node("G")],
        positive_expansion: false,
        graph: |s| {
            let tau = [s.int("g")?, s.int("k")?, s.int("h")?];
            let nodes = [s.node("G")?, rooted_clique(s.int("m")?)?, k1()];
            Ok(spider_conjoin(&tau, &nodes)?.graph)
        },
        eval: Some(|s, o| {
            let tails = OracleTails::new(o, s.node("G")?);
            Ok(Evaluation::from_sf(spider_gk_sf(
                s.int("g")?,
                s.int("k")?,
                s.int("h")?,
                s.int("m")?,
                &tails,
            )?))
        }),
    },
    FamilyDef {
        name: "pineapple",
        summary: "pineapple S^{0gh}(K_m, K_1, K_1)",
        params: &[int("g"), int("h"), int("m")],
        positive_expansion: false,
        graph: |s| pineapple(s.int("g")?, s.int("h")?, s.int("m")?),
        eval: Some(|s, _| {
            Ok(Evaluation::from_sf(pineapple_sf(
                s.int("g")?,
                s.int("h")?,
                s.int("m")?,
            )?))
        }),
    },
    FamilyDef {
        name: "spidercycle",
        summary: "S^{ghk}(G, H, C_m)",
        params: &[int("g"), int("h"), int("k"), int("m"), node("G"), node("H")],
        positive_expansion: false,
        graph: |s| {
            let tau = [s.int("g")?, s.int("h")?, s.int("k")?];
            let nodes = [s.node("G")?, s.node("H")?, rooted_cycle(s.int("m")?)?];
            Ok(spider_conjoin(&tau, &nodes)?.graph)
        },
        eval: Some(|s, o| {
            let (g, h, k, m) = (s.int("g")?, s.int("h")?, s.int("k")?, s.int("m")?);
            let sf = if g + h == 0 {
                let hub = spider_conjoin(&[0, 0], &[s.node("G")?, s.node("H")?])?;
                spider_cycle_reduce(k, m, &OracleTails::new(o, hub))?
            } else {
                let p = pair(o, s)?;
                spider_cycle_reduce(k, m, &SpiderTails::new(&p, g, h)?)?
            };
            Ok(Evaluation::from_sf(sf))
        }),
    },
    FamilyDef {
        name: "kgh",
        summary: "C^{gh}(G, K_m, H)",
        params: &[int("g"), int("h"), int("m"), node("G"), node("H")],
        positive_expansion: false,
        graph: |s| {
            let mid = double_rooted_clique(s.int("m")?)?;
            chain_conjoin(
                &[s.int("g")?, s.int("h")?],
                &s.node("G")?,
                &[mid],
                &s.node("H")?,
            )
        },
        eval: Some(|s, o| {
            let p = pair(o, s)?;
            Ok(Evaluation::from_sf(kgh_sf(
                s.int("g")?,
                s.int("h")?,
                s.int("m")?,
                &p,
            )?))
        }),
    },
    FamilyDef {
        name: "pkpg",
        summary: "C^{gh}(G, K_m, K_1)",
        params: &[int("g"), int("h"), int("m"), node("G")],
        positive_expansion: false,
        graph: |s| {
            let mid = double_rooted_clique(s.int("m")?)?;
            chain_conjoin(&[s.int("g")?, s.int("h")?], &s.node("G")?, &[mid], &k1())
        },
        eval: Some(|s, o| {
            let tails = OracleTails::new(o, s.node("G")?);
            Ok(Evaluation::from_sf(pkpg_sf(
                s.int("g")?,
                s.int("h")?,
                s.int("m")?,
                &tails,
            )?))
        }),
    },
    FamilyDef {
        name: "gch",
        summary: "C^{gh}(G, C_m, H), cycle roots adjacent",
        params: &[int("g"), int("h"), int("m"), node("G"), node("H")],
        positive_expansion: false,
        graph: |s| {
            let mid = hat_cycle(s.int("m")?)?;
            chain_conjoin(
                &[s.int("g")?, s.int("h")?],
                &s.node("G")?,
                &[mid],
                &s.node("H")?,
            )
        },
        eval: Some(|s, o| {
            let p = pair(o, s)?;
            Ok(Evaluation::from_sf(gch_sf(
                s.int("g")?,
                s.int("h")?,
                s.int("m")?,
                &p,
            )?))
        }),
    },
    FamilyDef {
        name: "hat",
        summary: "hat C^{gh}(K_1, C_m, K_1), cycle roots adjacent",
        params: &[int("g"), int("m"), int("h")],
        positive_expansion: false,
        graph: |s| hat_chain(&[s.int("m")?], &[s.int("g")?, s.int("h")?]),
        eval: Some(|s, o| {
            let p = OraclePair::new(o, k1(), k1());
            Ok(Evaluation::from_sf(gch_sf(
                s.int("g")?,
                s.int("h")?,
                s.int("m")?,
                &p,
            )?))
        }),
    },
    FamilyDef {
        name: "hatchain",
        summary: "hat-chain C^{τ}(K_1, C_{m_1}, ..., C_{m_l}, K_1)",
        params: &[ints("ms"), ints("taus")],
        positive_expansion: false,
        graph: |s| hat_chain(&s.ints("ms")?, &s.ints("taus")?),
        eval: None,
    },
];

fn spider_nodes(s: &FamilySpec) -> Result<Vec<RootedGraph>> {
    let tau = s.ints("tau")?;
    if s.params.contains_key("nodes") {
        s.nodes("nodes")
    } else {
        Ok(vec![k1(); tau.len()])
    }
}

/// All registered families.
pub fn families() -> &'static [FamilyDef] {
    FAMILIES
}

pub fn family(name: &str) -> Result<&'static FamilyDef> {
    FAMILIES.iter().find(|f| f.name == name).ok_or_else(|| {
        let names: Vec<_> = FAMILIES.iter().map(|f| f.name).collect();
        Error::Parse(format!(
            "unknown family {name:?}; known: {}",
            names.join(", ")
        ))
    })
}

/// Expands a grid over a family. Unlisted parameters keep their defaults;
/// list-valued parameters take a single `|`-free value list.
pub fn expand_grid(family_name: &str, grid: &str) -> Result<Vec<FamilySpec>> {
    let def = family(family_name)?;
    let mut axes: Vec<(String, Vec<Vec<String>>)> = Vec::new();
    let mut last_list: Option<usize> = None;
    for token in grid
        .split([',', ';'])
        .map(str::trim)
        .filter(|t| !t.is_empty())
    {
        let Some((k, v)) = token.split_once('=') else {
            match last_list {
                Some(i) => {
                    for choice in &mut axes[i].1 {
                        choice.push(token.to_string());
                    }
                    continue;
                }
                None => return Err(Error::Parse(format!("grid value {token:?} has no key"))),
            }
        };
        let (k, v) = (k.trim(), v.trim());
        let param =
            def.params.iter().find(|p| p.key == k).ok_or_else(|| {
                Error::Parse(format!("family {family_name} has no parameter {k:?}"))
            })?;
        let values: Vec<Vec<String>> = match param.kind {
            ParamKind::Int => parse_axis(v)?.into_iter().map(|x| vec![x]).collect(),
            ParamKind::Node => v.split('|').map(|x| vec![x.trim().to_string()]).collect(),
            ParamKind::IntList | ParamKind::NodeList => vec![vec![v.to_string()]],
        };
        last_list =
            matches!(param.kind, ParamKind::IntList | ParamKind::NodeList).then_some(axes.len());
        axes.push((k.to_string(), values));
    }
    let mut specs = vec![FamilySpec::new(def.name)];
    for (key, values) in axes {
        specs = specs
            .into_iter()
            .flat_map(|s| {
                let key = &key;
                values.iter().map(move |v| {
                    let mut s = s.clone();
                    s.params.insert(key.clone(), v.clone());
                    s
                })
            })
            .collect();
    }
    for s in &specs {
        for p in def.params {
            if p.default.is_none() && !s.params.contains_key(p.key) {
                return Err(Error::Parse(format!(
                    "grid for {family_name} must set parameter {}",
                    p.key
                )));
            }
        }
    }
    Ok(specs)
}

fn parse_axis(v: &str) -> Result<Vec<String>> {
    let bad = || Error::Parse(format!("bad grid value {v:?}; expected n, a..b or a|b|c"));
    let mut out = Vec::new();
    for alt in v.split('|') {
        match alt.split_once("..") {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (
                    a.trim().parse().map_err(|_| bad())?,
                    b.trim().parse().map_err(|_| bad())?,
                );
                if a > b {
                    return Err(bad());
                }
                out.extend((a..=b).map(|x| x.to_string()));
            }
            None => {
                alt.trim().parse::<usize>().map_err(|_| bad())?;
                out.push(alt.trim().to_string());
            }
        }
    }
    Ok(out)
}

/// Every parameter tuple of a family whose graph has order at most
/// `max_order`, with node parameters drawn from [`NODE_POOL`]. Tuples that
/// violate a precondition are left out.
pub fn default_grid(family_name: &str, max_order: usize) -> Result<Vec<FamilySpec>> {
    let def = family(family_name)?;
    let mut out = Vec::new();
    match def.name {
        "kchain" => {
            // a K-chain of order n corresponds to a composition of n - 1
            for n in 2..=max_order {
                for comp in crate::symcore::compositions_of(n - 1) {
                    let gamma: Vec<usize> = comp.parts().iter().map(|&p| p + 1).collect();
                    out.push(FamilySpec::new("kchain").with_list("gamma", &gamma));
                }
            }
            return Ok(out);
        }
        "hatchain" => {
            return Ok(hat_chains(max_order)
                .into_iter()
                .map(|(ms, taus)| {
                    FamilySpec::new("hatchain")
                        .with_list("ms", &ms)
                        .with_list("taus", &taus)
                })
                .collect())
        }
        "spider" => {
            for l in 3..=max_order {
                for_each_weak(l, max_order.saturating_sub(1), &mut |tau| {
                    if tau[0] >= 1 && tau[1] >= 1 {
                        out.push(FamilySpec::new("spider").with_list("tau", tau));
                    }
                });
            }
            out.retain(|s| s.graph().map(|g| g.order() <= max_order).unwrap_or(false));
            return Ok(out);
        }
        _ => {}
    }
    let mut specs = vec![FamilySpec::new(def.name)];
    for p in def.params {
        let values: Vec<String> = match p.kind {
            ParamKind::Int => (0..=max_order).map(|v| v.to_string()).collect(),
            ParamKind::Node => NODE_POOL.iter().map(|s| s.to_string()).collect(),
            _ => unreachable!("list parameters handled above"),
        };
        specs = specs
            .into_iter()
            .flat_map(|s| values.iter().map(move |v| s.clone().with(p.key, v)))
            .collect();
    }
    for s in specs {
        if let Ok(g) = s.graph() {
            if g.order() <= max_order && g.order() >= 1 && admissible(&s) {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// Preconditions of the formulas that the graph constructors do not check.
fn admissible(s: &FamilySpec) -> bool {
    let get = |k: &str| s.int(k).ok();
    match s.family.as_str() {
        "lollipop" => get("a").is_some_and(|a| a >= 1),
        "kpc" => get("a").is_some_and(|a| a >= 1) && get("c").is_some_and(|c| c >= 2),
        "pkp" | "kgh" | "pkpg" | "gch" | "hat" => get("m").is_some_and(|m| m >= 2),
        "kkp" => get("b").is_some_and(|b| b >= 1) && get("c").is_some_and(|c| c >= 1),
        "kpg" => get("g").is_some_and(|g| g >= 1),
        "cpg" | "spidercycle" => {
            get(if s.family == "cpg" { "g" } else { "m" }).is_some_and(|g| g >= 2)
        }
        "kayak" => get("g").is_some_and(|g| g >= 3) && get("h").is_some_and(|h| h >= 3),
        "spider3r" | "spidertail" | "spidertail1" => get("h").is_some_and(|h| h >= 1),
        "spiderclique" | "spidergk" | "pineapple" => {
            get("h").is_some_and(|h| h >= 1) && get("m").is_some_and(|m| m >= 1)
        }
        "path" | "clique" => get("n").is_some_and(|n| n >= 1),
        "cycle" => get("n").is_some_and(|n| n >= 3),
        _ => true,
    }
}

fn for_each_weak(len: usize, total_max: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(buf: &mut Vec<usize>, len: usize, left: usize, f: &mut impl FnMut(&[usize])) {
        if buf.len() == len {
            f(buf);
            return;
        }
        for v in 0..=left {
            buf.push(v);
            rec(buf, len, left - v, f);
            buf.pop();
        }
    }
    rec(&mut Vec::with_capacity(len), len, total_max, f);
}

/// Hat-chain parameters `(m_1..m_l; τ_0..τ_l)` with every `m_i >= 3` and
/// order `Σm + Στ - l + 1` at most `max_order`.
pub fn hat_chains(max_order: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for l in 1..=max_order / 2 {
        let mut ms = Vec::new();
        gen_cycles(l, max_order, &mut ms, &mut |ms| {
            let used = ms.iter().sum::<usize>() + 1 - l;
            if used > max_order {
                return;
            }
            for_each_weak(l + 1, max_order - used, &mut |taus| {
                out.push((ms.to_vec(), taus.to_vec()));
            });
        });
    }
    out
}

fn gen_cycles(l: usize, max_order: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if buf.len() == l {
        f(buf);
        return;
    }
    for m in 3..=max_order {
        buf.push(m);
        if buf.iter().sum::<usize>() + 1 - buf.len() <= max_order {
            gen_cycles(l, max_order, buf, f);
        }
        buf.pop();
    }
}

/// Kayak paddles `P^k(C_g, C_h)` with `3 <= g <= h` of order at most
/// `max_order`.
pub fn kayaks(max_order: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for g in 3..=max_order {
        for h in g..=max_order {
            for k in 0..=max_order {
                if g + h + k - 1 <= max_order {
                    out.push((g, k, h));
                }
            }
        }
    }
    out
}

/// Outcome of comparing a formula with the oracle on one spec.
#[derive(Clone, Debug, Serialize)]
pub struct VerifyRecord {
    pub spec: String,
    pub order: usize,
    pub edges: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expansion_nonnegative: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub residual_terms: Vec<TermRepr>,
}

/// Evaluates the formula and the oracle on one spec and compares them
/// exactly. The nonnegativity flag is reported for expansion families.
pub fn verify_spec(spec: &FamilySpec, oracle: &Oracle) -> Result<VerifyRecord> {
    let g = spec.graph()?;
    let formula = spec.evaluate(oracle)?;
    let truth: SymFuncE = oracle.csf_exact(&g)?.to_scalar();
    let residual = formula.sf.checked_sub(&truth)?;
    Ok(VerifyRecord {
        spec: spec.to_string(),
        order: g.order(),
        edges: g.edge_count(),
        pass: residual.is_zero(),
        expansion_nonnegative: formula.expansion.as_ref().map(|x| x.is_positive()),
        residual_terms: residual.term_reprs(),
    })
}

/// JSON-ready view of an evaluation.
#[derive(Clone, Debug, Serialize)]
pub struct ComputeOutput {
    pub spec: String,
    pub engine: String,
    pub csf: SymFuncE,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub composition_terms: Option<Vec<CompositionTerm>>,
}

/// Integer-valued view used by tests: the flattened formula over `BigInt`.
pub fn integral(
    sf: &SymFuncE,
) -> Option<crate::symcore::SymFunc<crate::symcore::Elementary, BigInt>> {
    if !sf.is_integral() {
        return None;
    }
    Some(sf.map_coeffs(|c| c.to_integer()))
}
