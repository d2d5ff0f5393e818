use num_bigint::BigInt;

use csf_core::families::{default_grid, verify_spec, FamilySpec};
use csf_core::formulas::{
    kpc_ei, lollipop_ei, path_ei, spider3_reduce, spider_clique_sf, spider_l_reduce,
    spider_tail_two_node, tadpole_ei, OraclePair,
};
use csf_core::graphkit::{clique, cycle, node_graph, path_graph, spider_conjoin, RootedGraph};
use csf_core::oracle::Oracle;
use csf_core::symcore::{Elementary, SymFunc};
use csf_core::{Rational, SymFuncE};

fn truth(oracle: &Oracle, g: &csf_core::graphkit::Graph) -> SymFuncE {
    oracle.csf_exact(g).unwrap().to_scalar()
}

#[test]
fn spiders_with_many_legs() {
    let oracle = Oracle::default();
    let cases: &[(&[usize], &[&str])] = &[
        (&[1, 1, 1, 1], &["K1", "K1", "K1", "K1"]),
        (&[2, 1, 0, 1], &["K2", "K3", "K1", "C4"]),
        (&[1, 2, 1, 1, 1], &["K1", "P3", "K2", "K1", "K1"]),
        (&[3, 1, 2, 0], &["C4", "K1", "K1", "K3"]),
    ];
    for (tau, names) in cases {
        let nodes: Vec<RootedGraph> = names.iter().map(|n| node_graph(n).unwrap()).collect();
        let g = spider_conjoin(tau, &nodes).unwrap().graph;
        let sf: SymFuncE = spider_l_reduce(tau, &nodes, &oracle).unwrap();
        assert_eq!(sf, truth(&oracle, &g), "tau {tau:?} nodes {names:?}");
    }
}

#[test]
fn clique_leg_of_size_one_is_a_spider_tail() {
    let oracle = Oracle::default();
    let pair = OraclePair::new(
        &oracle,
        node_graph("K2").unwrap(),
        node_graph("C4").unwrap(),
    );
    for (g, h, k) in [(1, 1, 1), (0, 2, 2), (2, 1, 0)] {
        let a: SymFuncE = spider_clique_sf(g, h, k, 1, &pair).unwrap();
        let b: SymFuncE = spider_tail_two_node(g, h, k, &pair).unwrap();
        assert_eq!(a, b, "({g},{h},{k})");
    }
}

#[test]
fn three_spider_needs_a_middle_leg() {
    let oracle = Oracle::default();
    let k1 = RootedGraph::singleton();
    let gh = OraclePair::new(&oracle, k1.clone(), k1.clone());
    let hj = OraclePair::new(&oracle, k1.clone(), k1);
    let base: SymFuncE = SymFunc::e(3);
    assert!(spider3_reduce(1, 0, 1, &base, &gh, &hj).is_err());
}

#[test]
fn expansions_work_over_floats() {
    for n in 1..=8 {
        let exact = path_ei::<Rational>(n).unwrap().flatten();
        let float = path_ei::<f64>(n).unwrap().flatten();
        for (p, c) in exact.terms() {
            let c: f64 = c.to_string().parse().unwrap();
            assert!((float.coeff(p) - c).abs() < 1e-9, "P_{n} at {p}");
        }
    }
    let f32_sum: f32 = lollipop_ei::<f32>(3, 6)
        .unwrap()
        .flatten()
        .terms()
        .map(|(_, c)| *c)
        .sum();
    let exact_sum: BigInt = lollipop_ei::<BigInt>(3, 6)
        .unwrap()
        .flatten()
        .terms()
        .map(|(_, c)| c.clone())
        .sum();
    assert_eq!(f32_sum, exact_sum.to_string().parse::<f32>().unwrap());
}

#[test]
fn lollipop_on_a_triangle_is_a_tadpole() {
    let oracle = Oracle::default();
    for n in 3..=9 {
        let l = n - 3;
        let a = lollipop_ei::<Rational>(3, n).unwrap().flatten();
        let b = tadpole_ei::<Rational>(n, l).unwrap().flatten();
        assert_eq!(a, b, "n = {n}");
        let g = csf_core::graphkit::tadpole(3, l).unwrap();
        assert_eq!(a, truth(&oracle, &g));
    }
}

#[test]
fn closed_forms_match_small_graphs() {
    let oracle = Oracle::default();
    assert_eq!(
        path_ei::<Rational>(6).unwrap().flatten(),
        truth(&oracle, &path_graph(6).unwrap())
    );
    assert_eq!(
        lollipop_ei::<Rational>(5, 5).unwrap().flatten(),
        truth(&oracle, &clique(5).unwrap())
    );
    assert_eq!(
        tadpole_ei::<Rational>(6, 0).unwrap().flatten(),
        truth(&oracle, &cycle(6).unwrap())
    );
    let kpc = kpc_ei::<BigInt>(3, 0, 3).unwrap();
    assert!(kpc.is_positive());
}

#[test]
fn invalid_parameters_are_rejected() {
    assert!(kpc_ei::<Rational>(0, 1, 3).is_err());
    assert!(tadpole_ei::<Rational>(3, 2).is_err());
    assert!("kkp:a=1,b=0,c=2"
        .parse::<FamilySpec>()
        .unwrap()
        .evaluate(&Oracle::default())
        .is_err());
}

#[test]
fn reduction_families_match_the_oracle_up_to_order_seven() {
    let oracle = Oracle::default();
    for family in [
        "kpg",
        "cpg",
        "spider3",
        "spider3r",
        "spidertail",
        "spidertail1",
        "spiderclique",
        "spidergk",
        "pineapple",
        "spidercycle",
        "kgh",
        "pkpg",
        "gch",
        "hat",
        "kayak",
    ] {
        let specs = default_grid(family, 7).unwrap();
        assert!(!specs.is_empty(), "{family}");
        for s in specs {
            let r = verify_spec(&s, &oracle).unwrap();
            assert!(r.pass, "{s}: {:?}", r.residual_terms);
        }
    }
}

#[test]
fn integral_view_of_formula_output() {
    let x = path_ei::<Rational>(4).unwrap().flatten();
    let int: SymFunc<Elementary, BigInt> = csf_core::families::integral(&x).unwrap();
    assert_eq!(int.to_string(), x.to_string());
}
