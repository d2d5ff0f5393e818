//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use csf_core::families::{default_grid, family, verify_spec, FamilySpec};
use csf_core::formulas::{kkp_ei, kpc_ei, lollipop_ei, path_ei, pkp_ei, tadpole_ei};
use csf_core::graphkit::{
    chain_conjoin, clique, cycle, kkp, kpc, lollipop, path_graph, pkp, tadpole, Graph, RootedGraph,
};
use csf_core::oracle::{chromatic_poly, positivity_scan, random_graph, ApMode, Oracle, ScanItem};
use csf_core::suites::{ap_suite, convolution_suite, f_weight_suite, triple_deletion_suite};
use csf_core::symcore::{
    factorial, is_e_positive, principal_eval, Composition, EIExpansion, Elementary, Partition,
    SymFunc,
};
use csf_core::{Rational, SymFuncE};

type Exact = SymFunc<Elementary, BigInt>;
type Check = fn(&Oracle) -> Result<String, String>;

const KPC_424: &str = "18e_{1422}+162e_{144}+30e_{162}+126e_{18}+48e_{252}+132e_{27}\
    +54e_{342}+54e_{36}+288e_{45}+270e_{54}+162e_{9}";
const PKP_214: &str = "24e_{142}+16e_{151}+24e_{16}+2e_{421}+6e_{43}+48e_{52}+30e_{61}+42e_{7}";
const KKP_PRINTED: &str = "48e_{126}+720e_{162}+1152e_{171}+1680e_{18}+192e_{27}+144e_{36}\
    +1008e_{72}+1536e_{81}+2160e_{9}";
const NONADJACENT_HAT: &str = "18e_{6}+22e_{51}-2e_{42}+6e_{411}+9e_{33}+4e_{321}-2e_{222}\
    +e_{2211}";

/// Parses printed sums such as `18e_{1422}+162e_{144}` into composition
/// terms. Every part is a single digit.
fn printed(text: &str) -> Vec<(Composition, BigInt)> {
    let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut out = Vec::new();
    let mut rest = text.as_str();
    while !rest.is_empty() {
        let e = rest.find('e').expect("term has e_");
        let coeff = match &rest[..e] {
            "" | "+" => BigInt::from(1),
            "-" => BigInt::from(-1),
            c => c.trim_start_matches('+').parse().expect("coefficient"),
        };
        let open = rest.find('{').expect("brace");
        let close = rest.find('}').expect("brace");
        let parts = rest[open + 1..close]
            .chars()
            .map(|d| d.to_digit(10).expect("digit") as usize)
            .collect();
        out.push((Composition::new(parts).expect("composition"), coeff));
        rest = &rest[close + 1..];
    }
    out
}

fn printed_sf(text: &str) -> Exact {
    let terms = printed(text);
    let degree = terms[0].0.size();
    let mut totals: BTreeMap<Partition, BigInt> = BTreeMap::new();
    for (c, k) in terms {
        *totals.entry(c.rho()).or_default() += k;
    }
    SymFunc::from_terms(degree, totals).expect("printed sum is homogeneous")
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_sf(oracle: &Oracle, g: &Graph) -> Result<SymFuncE, String> {
    Ok(oracle.csf_exact(g).map_err(|e| e.to_string())?.to_scalar())
}

fn flat(x: csf_core::Result<EIExpansion<Rational>>) -> Result<SymFuncE, String> {
    Ok(x.map_err(|e| e.to_string())?.flatten())
}

fn clique_baseline(oracle: &Oracle) -> Result<String, String> {
    for n in 1..=7 {
        let x = oracle
            .csf_exact(&clique(n).unwrap())
            .map_err(|e| e.to_string())?;
        let expected = Exact::e(n).scale(&factorial(n));
        ensure(*x == expected, || format!("K_{n}: {x} != {expected}"))?;
    }
    Ok("X(K_n) = n! e_n for n = 1..7".into())
}

fn path_formula(oracle: &Oracle) -> Result<String, String> {
    for n in 1..=10 {
        let f = flat(path_ei(n))?;
        let t = oracle_sf(oracle, &path_graph(n).unwrap())?;
        ensure(f == t, || format!("P_{n}: formula {f} != oracle {t}"))?;
    }
    Ok("path expansion equals the oracle for n = 1..10".into())
}

fn lollipop_tadpole(oracle: &Oracle) -> Result<String, String> {
    let mut count = 0;
    for n in 1..=9 {
        for a in 1..=n {
            let f = flat(lollipop_ei(a, n))?;
            let t = oracle_sf(oracle, &lollipop(a, n - a).unwrap())?;
            ensure(f == t, || format!("lollipop (a={a}, n={n}) differs"))?;
            count += 1;
        }
        for l in 0..=n.saturating_sub(2) {
            if n < 2 {
                break;
            }
            let f = flat(tadpole_ei(n, l))?;
            let t = oracle_sf(oracle, &tadpole(n - l, l).unwrap())?;
            ensure(f == t, || format!("tadpole (n={n}, l={l}) differs"))?;
            count += 1;
        }
        if n >= 3 {
            let a = flat(lollipop_ei(3, n))?;
            let b = flat(tadpole_ei(n, n - 3))?;
            ensure(a == b, || format!("K_3 and C_3 tails differ at n={n}"))?;
        }
    }
    Ok(format!(
        "{count} lollipop/tadpole cases, and K_3^l = C_3^l for n <= 9"
    ))
}

fn kpc_golden(oracle: &Oracle) -> Result<String, String> {
    let x = kpc_ei::<BigInt>(4, 2, 4).map_err(|e| e.to_string())?;
    let golden = printed_sf(KPC_424);
    ensure(x.flatten() == golden, || {
        format!("kpc(4,2,4) = {} != printed {golden}", x.flatten())
    })?;
    let t = oracle
        .csf_exact(&kpc(4, 2, 4).unwrap())
        .map_err(|e| e.to_string())?;
    ensure(*t == golden, || format!("oracle {t} != printed"))?;
    let same_terms = printed(KPC_424).iter().all(|(c, k)| x.coeff(c) == *k) && x.len() == 11;
    Ok(format!(
        "11 printed terms match at partition level ({} partitions); composition labels {}",
        golden.len(),
        if same_terms { "also match" } else { "differ" }
    ))
}

fn pkp_golden(oracle: &Oracle) -> Result<String, String> {
    let x = pkp_ei::<BigInt>(2, 1, 4)
        .map_err(|e| e.to_string())?
        .flatten();
    let golden = printed_sf(PKP_214);
    ensure(x == golden, || {
        format!("pkp(2,1,4) = {x} != printed {golden}")
    })?;
    let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
    ensure(x.coeff(&p(&[4, 2, 1])) == BigInt::from(26), || {
        "e_421 total is not 26".into()
    })?;
    ensure(x.coeff(&p(&[7])) == BigInt::from(42), || {
        "e_7 is not 42".into()
    })?;
    let t = oracle
        .csf_exact(&pkp(2, 1, 4).unwrap())
        .map_err(|e| e.to_string())?;
    ensure(*t == x, || format!("oracle {t} != formula {x}"))?;
    Ok("partition totals match (421 -> 26, 7 -> 42) and equal the oracle".into())
}

fn kkp_golden(oracle: &Oracle) -> Result<String, String> {
    let golden = printed_sf(KKP_PRINTED);
    let x = kkp_ei::<BigInt>(1, 5, 3)
        .map_err(|e| e.to_string())?
        .flatten();
    ensure(x == golden, || {
        format!("kkp(1,5,3) = {x} != printed {golden}")
    })?;
    let p = |v: &[usize]| Partition::new(v.to_vec()).unwrap();
    ensure(x.coeff(&p(&[9])) == BigInt::from(2160), || {
        "e_9 is not 2160".into()
    })?;
    ensure(x.coeff(&p(&[8, 1])) == BigInt::from(3216), || {
        "e_81 total is not 3216".into()
    })?;
    let g = kkp(1, 5, 3).unwrap();
    ensure(g.edge_count() <= 19, || {
        format!("chain graph has {} edges", g.edge_count())
    })?;
    let t = oracle.csf_exact(&g).map_err(|e| e.to_string())?;
    ensure(*t == golden, || format!("oracle {t} != printed"))?;
    // The printed label names b + 1 = 7, i.e. (a, b, c) = (1, 6, 3).
    let labelled = kkp(1, 6, 3).unwrap();
    let labelled_x = oracle.csf_exact(&labelled).map_err(|e| e.to_string())?;
    ensure(labelled_x.degree() == 10 && *labelled_x != golden, || {
        "labelled candidate unexpectedly matches".into()
    })?;
    Ok(format!(
        "printed sum equals kkp(1,5,3) and the oracle; LABEL DISCREPANCY: printed label \
         K_7^{{01}}(K_3,K_1) is (a,b,c)=(1,6,3), order {}, which does not match; the printed \
         terms are those of K_6^{{01}}(K_3,K_1), order {}",
        labelled.order(),
        g.order()
    ))
}

fn nonpositive_witness(oracle: &Oracle) -> Result<String, String> {
    let c4 = cycle(4)
        .unwrap()
        .double_rooted(0, 2)
        .map_err(|e| e.to_string())?;
    let k1 = RootedGraph::singleton();
    let g = chain_conjoin(&[1, 1], &k1, &[c4], &k1).map_err(|e| e.to_string())?;
    let x = oracle.csf_exact(&g).map_err(|e| e.to_string())?;
    let golden = printed_sf(NONADJACENT_HAT);
    ensure(*x == golden, || format!("oracle {x} != printed {golden}"))?;
    let verdict = is_e_positive(&*x);
    ensure(!verdict.positive, || "reported e-positive".into())?;
    let (p, c) = verdict.witness.ok_or("no witness")?;
    ensure(
        p == Partition::new(vec![4, 2]).unwrap() && c == BigInt::from(-2),
        || format!("witness ({p}, {c}) instead of (42, -2)"),
    )?;
    Ok(format!("X = {x}; witness e_42 -> -2"))
}

const REDUCTION_FAMILIES: [&str; 13] = [
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
];

fn reduction_grid(oracle: &Oracle) -> Result<String, String> {
    let mut summary = Vec::new();
    for name in REDUCTION_FAMILIES {
        let specs = default_grid(name, 9).map_err(|e| e.to_string())?;
        ensure(!specs.is_empty(), || format!("{name}: empty grid"))?;
        let failures: Vec<String> = specs
            .par_iter()
            .filter_map(|s| match verify_spec(s, oracle) {
                Ok(r) if r.pass => None,
                Ok(_) => Some(format!("{s}: mismatch")),
                Err(e) => Some(format!("{s}: {e}")),
            })
            .collect();
        ensure(failures.is_empty(), || {
            format!(
                "{name}: {} of {} fail, e.g. {}",
                failures.len(),
                specs.len(),
                failures[0]
            )
        })?;
        summary.push(format!("{name} {}", specs.len()));
    }
    Ok(format!(
        "order <= 9, nodes K1 K2 K3 C4 P3: {}",
        summary.join(", ")
    ))
}

fn claimed_positive(oracle: &Oracle) -> Result<String, String> {
    let mut summary = Vec::new();
    for name in ["path", "lollipop", "tadpole", "kchain", "kpc", "pkp", "kkp"] {
        ensure(
            family(name).map(|f| f.positive_expansion).unwrap_or(false),
            || format!("{name} is not registered as positive"),
        )?;
        let specs: Vec<FamilySpec> = default_grid(name, 9).map_err(|e| e.to_string())?;
        let bad: Vec<String> = specs
            .par_iter()
            .filter_map(|s| match s.evaluate(oracle) {
                Ok(ev) => match ev.expansion {
                    Some(x) if x.is_positive() => None,
                    Some(x) => Some(format!("{s}: {:?}", x.negative_term())),
                    None => Some(format!("{s}: no expansion")),
                },
                Err(e) => Some(format!("{s}: {e}")),
            })
            .collect();
        ensure(bad.is_empty(), || format!("{name}: {}", bad[0]))?;
        summary.push(format!("{name} {}", specs.len()));
    }
    Ok(format!(
        "all stored coefficients >= 0: {}",
        summary.join(", ")
    ))
}

fn identity_suites(oracle: &Oracle) -> Result<String, String> {
    let err = |e: csf_core::Error| e.to_string();
    let td = triple_deletion_suite(oracle, 50, 8, 2024).map_err(err)?;
    let add = ap_suite(oracle, 50, 8, ApMode::Add, 2024).map_err(err)?;
    let remove = ap_suite(oracle, 50, 8, ApMode::Remove, 2025).map_err(err)?;
    for (name, reports) in [
        ("triple deletion", &td),
        ("AP add", &add),
        ("AP remove", &remove),
    ] {
        ensure(reports.len() == 50, || {
            format!("{name}: {} instances", reports.len())
        })?;
        ensure(reports.iter().all(|r| r.graph.n <= 8), || {
            format!("{name}: order above 8")
        })?;
        if let Some(r) = reports.iter().find(|r| !r.pass) {
            return Err(format!(
                "{name} fails on {:?}: {:?}",
                r.graph, r.residual_terms
            ));
        }
    }
    let f = f_weight_suite(12, 12).map_err(err)?;
    if let Some(r) = f.iter().find(|r| !r.pass) {
        return Err(format!(
            "f-weights fail at n={}, a={}: {:?}",
            r.n, r.a, r.failures
        ));
    }
    let conv = convolution_suite(10).map_err(err)?;
    if let Some(r) = conv.iter().find(|r| !r.pass) {
        return Err(format!("convolution fails at a={}, n={}", r.a, r.n));
    }
    let equations: usize = td
        .iter()
        .chain(&add)
        .chain(&remove)
        .map(|r| r.equations)
        .sum();
    Ok(format!(
        "150 random instances ({equations} equations), {} f-weight cells, {} convolution cells",
        f.len(),
        conv.len()
    ))
}

fn conjecture_scan(oracle: &Oracle) -> Result<String, String> {
    let mut lines = Vec::new();
    for name in ["hatchain", "kayak"] {
        let items: Vec<ScanItem> = default_grid(name, 10)
            .map_err(|e| e.to_string())?
            .into_iter()
            .map(|s| ScanItem::new(s.to_string(), s.graph().expect("generated spec builds")))
            .collect();
        let out = positivity_scan(oracle, &items).map_err(|e| e.to_string())?;
        ensure(out.counterexamples.is_empty(), || {
            format!("{name} counterexamples: {:?}", out.counterexamples)
        })?;
        lines.push(format!("{} {name} graphs", items.len()));
    }
    Ok(format!("no counterexamples among {}", lines.join(" and ")))
}

fn corpus() -> Vec<Graph> {
    let mut graphs = vec![
        clique(1).unwrap(),
        clique(5).unwrap(),
        path_graph(7).unwrap(),
        cycle(6).unwrap(),
        lollipop(4, 3).unwrap(),
        tadpole(5, 2).unwrap(),
        kpc(4, 2, 4).unwrap(),
        pkp(2, 1, 4).unwrap(),
        kkp(1, 5, 3).unwrap(),
        Graph::empty(4),
    ];
    for name in ["hatchain", "kayak", "spiderclique", "gch"] {
        for s in default_grid(name, 8).unwrap().into_iter().step_by(7) {
            graphs.push(s.graph().unwrap());
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let n = rng.gen_range(1..=9);
        graphs.push(random_graph(&mut rng, n, 0.45));
    }
    graphs
}

fn chromatic_consistency(oracle: &Oracle) -> Result<String, String> {
    let graphs = corpus();
    let bad: Vec<String> = graphs
        .par_iter()
        .flat_map_iter(|g| {
            let x = oracle.csf_exact(g).expect("corpus graphs are small");
            (0..=5u64).filter_map(move |k| {
                let lhs = principal_eval(&*x, k);
                let rhs = chromatic_poly(g, k).expect("corpus graphs have order <= 12");
                (lhs != rhs).then(|| format!("order {} k={k}: {lhs} != {rhs}", g.order()))
            })
        })
        .collect();
    ensure(bad.is_empty(), || bad[0].clone())?;
    Ok(format!("{} graphs, k = 0..5", graphs.len()))
}

fn main() -> ExitCode {
    let oracle = Oracle::default();
    let criteria: [(&str, Check); 12] = [
        ("clique baseline", clique_baseline),
        ("path formula", path_formula),
        ("lollipop and tadpole", lollipop_tadpole),
        ("KPC golden example", kpc_golden),
        ("PKP golden example", pkp_golden),
        ("KKP golden example", kkp_golden),
        ("non-e-positive witness", nonpositive_witness),
        ("reduction equivalence grid", reduction_grid),
        ("claimed-positive expansions", claimed_positive),
        ("identity suites", identity_suites),
        ("hat-chain and kayak scan", conjecture_scan),
        ("chromatic polynomial consistency", chromatic_consistency),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(|| check(&oracle))).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] AC-{} {name} ({secs:.2}s): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] AC-{} {name} ({secs:.2}s): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
