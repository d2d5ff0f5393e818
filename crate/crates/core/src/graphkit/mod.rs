//! Simple graphs, rooted and double-rooted graphs, the conjoining operations
//! and the named graph families.

mod conjoin;
mod graph;
pub mod named;

pub use conjoin::{chain_conjoin, path_conjoin, path_conjoin_double, spider_conjoin, tailed};
pub use graph::{is_isomorphic, DoubleRootedGraph, Graph, GraphJson, RootedGraph};
pub use named::{
    clique, cycle, double_rooted_clique, hat, hat_chain, hat_cycle, kayak, kchain, kkp, kpc,
    lollipop, node_graph, path_graph, pineapple, pkp, rooted_path, spider, tadpole,
};
