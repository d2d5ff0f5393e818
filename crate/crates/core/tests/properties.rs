use num_bigint::BigInt;
use proptest::prelude::*;

use csf_core::graphkit::{
    chain_conjoin, clique, cycle, double_rooted_clique, hat_cycle, path_conjoin, path_graph,
    spider_conjoin, Graph, RootedGraph,
};
use csf_core::oracle::{
    chromatic_poly, csf_exact, power_sum_by_subsets, power_sum_grouped, Engine,
};
use csf_core::symcore::{
    compositions_of, factorial, principal_eval, w_weight, Composition, EIExpansion, Elementary,
    Partition, SymFunc,
};
use csf_core::Rational;

type Exact = SymFunc<Elementary, BigInt>;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        let m = pairs.len();
        prop::collection::vec(any::<bool>(), m).prop_map(move |keep| {
            let edges = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(e, _)| *e);
            Graph::new(n, edges).unwrap()
        })
    })
}

fn csf(g: &Graph) -> Exact {
    csf_exact(g, Engine::Auto).unwrap()
}

fn node() -> impl Strategy<Value = RootedGraph> {
    prop_oneof![
        Just(RootedGraph::singleton()),
        (2..=4usize).prop_map(|m| clique(m).unwrap().rooted(0).unwrap()),
        (3..=5usize).prop_map(|m| cycle(m).unwrap().rooted(0).unwrap()),
        (2..=4usize).prop_map(|m| path_graph(m).unwrap().rooted(0).unwrap()),
    ]
}

fn small_sf() -> impl Strategy<Value = SymFunc<Elementary, Rational>> {
    (1..=5usize).prop_flat_map(|d| {
        let parts: Vec<Partition> = compositions_of(d)
            .map(|c| c.rho())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        prop::collection::vec(-5i64..=5, parts.len()).prop_map(move |cs| {
            let terms = parts
                .iter()
                .cloned()
                .zip(cs.into_iter().map(|c| Rational::from_integer(c.into())));
            SymFunc::from_terms(d, terms).unwrap()
        })
    })
}

fn expansion(n: usize) -> impl Strategy<Value = EIExpansion<Rational>> {
    let comps: Vec<Composition> = compositions_of(n).collect();
    prop::collection::vec(-4i64..=4, comps.len()).prop_map(move |cs| {
        let mut x = EIExpansion::new(n);
        for (c, k) in comps.iter().zip(cs) {
            x.add_term(c.clone(), Rational::from_integer(k.into()));
        }
        x
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn csf_is_multiplicative(g in graph(5), h in graph(4)) {
        prop_assert_eq!(csf(&g.disjoint_union(&h)), csf(&g).product(&csf(&h)));
    }

    #[test]
    fn isolated_vertex_multiplies_by_e1(g in graph(6)) {
        prop_assert_eq!(csf(&g.with_isolated_vertex()), csf(&g).product(&Exact::e(1)));
    }

    #[test]
    fn principal_specialization_counts_colorings(g in graph(7), k in 0u64..=5) {
        prop_assert_eq!(principal_eval(&csf(&g), k), chromatic_poly(&g, k).unwrap());
    }

    #[test]
    fn subset_and_grouped_engines_agree(g in graph(7)) {
        prop_assert_eq!(power_sum_by_subsets(&g).unwrap(), power_sum_grouped(&g).unwrap());
    }

    #[test]
    fn csf_ignores_labels(g in graph(6), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let relabeled = Graph::new(n, g.edges().map(|(u, v)| (perm[u], perm[v]))).unwrap();
        prop_assert_eq!(csf(&g), csf(&relabeled));
    }

    #[test]
    fn csf_has_degree_order_and_leading_count(g in graph(7)) {
        let x = csf(&g);
        prop_assert_eq!(x.degree(), g.order());
        // e_1^n appears exactly for edgeless graphs
        let ones = Partition::new(vec![1; g.order()]).unwrap();
        prop_assert_eq!(x.coeff(&ones) != BigInt::from(0), g.edge_count() == 0);
    }

    #[test]
    fn w_is_nonnegative(n in 1usize..=9) {
        for c in compositions_of(n) {
            prop_assert!(w_weight(&c) >= 0);
        }
    }

    #[test]
    fn flatten_is_linear(x in expansion(5), y in expansion(5), k in -3i64..=3) {
        let k = Rational::from_integer(k.into());
        let mut sum = x.scale(&k);
        for (c, v) in y.terms() {
            sum.add_term(c.clone(), v.clone());
        }
        let expected = x.flatten().scale(&k).checked_add(&y.flatten()).unwrap();
        prop_assert_eq!(sum.flatten(), expected);
    }

    #[test]
    fn product_commutes_and_associates(a in small_sf(), b in small_sf(), c in small_sf()) {
        prop_assert_eq!(a.product(&b), b.product(&a));
        prop_assert_eq!(a.product(&b).product(&c), a.product(&b.product(&c)));
    }

    #[test]
    fn path_conjoin_order(g in node(), h in node(), k in 0usize..=4) {
        let joined = path_conjoin(&g, &h, k).unwrap();
        prop_assert_eq!(joined.order(), g.order() + h.order() + k - 1);
    }

    #[test]
    fn spider_conjoin_order(nodes in prop::collection::vec(node(), 1..=4), seed in any::<u64>()) {
        let tau: Vec<usize> = (0..nodes.len()).map(|i| ((seed >> (4 * i)) % 4) as usize).collect();
        let s = spider_conjoin(&tau, &nodes).unwrap();
        let expected = 1 + nodes.iter().zip(&tau).map(|(g, t)| g.order() + t - 1).sum::<usize>();
        prop_assert_eq!(s.graph.order(), expected);
    }

    #[test]
    fn chain_conjoin_order(first in node(), last in node(), ms in prop::collection::vec(2usize..=4, 0..=2), seed in any::<u64>()) {
        let mids: Vec<_> = ms
            .iter()
            .enumerate()
            .map(|(i, &m)| if i % 2 == 0 { double_rooted_clique(m).unwrap() } else { hat_cycle(m.max(3)).unwrap() })
            .collect();
        let taus: Vec<usize> = (0..=mids.len()).map(|i| ((seed >> (3 * i)) % 3) as usize).collect();
        let g = chain_conjoin(&taus, &first, &mids, &last).unwrap();
        let expected = first.order() + last.order() + mids.iter().map(|m| m.order()).sum::<usize>()
            + taus.iter().sum::<usize>() - taus.len();
        prop_assert_eq!(g.order(), expected);
    }
}

#[test]
fn cliques_are_factorial_multiples() {
    for n in 1..=7 {
        assert_eq!(
            csf(&clique(n).unwrap()),
            Exact::e(n).scale(&factorial(n)),
            "K_{n}"
        );
    }
}
