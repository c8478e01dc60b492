//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs as a plain binary so the verdict lines are always printed; the
//! process exits non-zero when any criterion fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cycle_prefix::containers::{
    beta, char_triple, container, leg_distance, lower_bound_witness, theta,
};
use cycle_prefix::oracle::{self, verify_container, Network};
use cycle_prefix::routing::{self, header_split, is_remote, reach_walk};
use cycle_prefix::topology::{compose, in_neighbors, origin_in_neighbor, standard_origin};
use cycle_prefix::{NetworkParams, Vertex, Walk};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn p(delta: usize, dee: usize, r: usize) -> NetworkParams {
    NetworkParams::new(delta, dee, r).unwrap()
}

fn v(s: &str) -> Vertex {
    s.parse().unwrap()
}

fn check(ok: bool, msg: String) -> Outcome {
    if ok {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn full_instances() -> Vec<NetworkParams> {
    vec![p(4, 4, 0), p(5, 4, 0), p(5, 5, 0), p(6, 5, 0)]
}

fn distance_equivalence() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0u64;
    let mut mismatches = 0u64;
    for g in full_instances() {
        let net = Network::build(&g).unwrap();
        let bad: u64 = (0..net.len())
            .into_par_iter()
            .map(|s| {
                let x = net.vertex(s);
                let dist = net.bfs(s);
                net.vertices()
                    .iter()
                    .zip(&dist)
                    .filter(|(y, &d)| routing::distance(&x, y, &g).unwrap() != d as usize)
                    .count() as u64
            })
            .sum();
        pairs += (net.len() * net.len()) as u64;
        mismatches += bad;
    }
    let elapsed = start.elapsed();
    check(
        mismatches == 0 && elapsed < Duration::from_secs(60),
        format!("{pairs} pairs, {mismatches} mismatches, {elapsed:.2?}"),
    )
}

fn uniqueness() -> Outcome {
    let mut non_unique = 0u64;
    for g in full_instances() {
        let net = Network::build(&g).unwrap();
        non_unique += (0..net.len())
            .into_par_iter()
            .map(|s| net.geodesic_counts(s).1.iter().filter(|&&c| c != 1).count() as u64)
            .sum::<u64>();
    }
    let g = p(8, 8, 0);
    let (x, y) = (v("47285136"), v("82164753"));
    let d = routing::distance(&x, &y, &g).unwrap();
    let split = header_split(&x, &y);
    check(
        non_unique == 0 && d == 4 && split.header() == [8, 2, 1, 6] && split.tail() == [4, 7, 5, 3],
        format!(
            "{non_unique} pairs with geodesic count ≠ 1; d = {d}, header {:?}",
            split.header()
        ),
    )
}

fn deleted_diameter() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for (g, want) in [(p(4, 4, 1), 5), (p(5, 5, 1), 6)] {
        let net = Network::build(&g).unwrap();
        let diam = oracle::diameter_of(&net).unwrap();
        let dist = net.bfs(net.index_of(&standard_origin(&g)).unwrap());
        let remote: Vec<usize> = (0..net.len())
            .filter(|&i| is_remote(&net.vertex(i), &g))
            .collect();
        let wrong = remote
            .iter()
            .filter(|&&i| dist[i] as usize != g.dee() + g.r())
            .count();
        ok &= diam == Some(want) && !remote.is_empty() && wrong == 0;
        lines.push(format!(
            "{g}: diameter {diam:?}, {} remote, {wrong} off D+r",
            remote.len()
        ));
    }
    check(ok, lines.join("; "))
}

fn non_uniqueness() -> Outcome {
    let g = p(4, 4, 1);
    let (x, y) = (v("1234"), v("5214"));
    let count = oracle::count_geodesics(&x, &y, &g).unwrap();
    let found: BTreeSet<Vec<Vertex>> = oracle::enumerate_geodesics(&x, &y, &g)
        .unwrap()
        .into_iter()
        .collect();
    let displayed: BTreeSet<Vec<Vertex>> = [
        ["1234", "4123", "5412", "1542", "2154", "5214"],
        ["1234", "5123", "4512", "1452", "2145", "5214"],
    ]
    .iter()
    .map(|p| p.iter().map(|s| v(s)).collect())
    .collect();
    let extra: Vec<String> = found
        .difference(&displayed)
        .map(|p| {
            p.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    check(
        count == 2 && found == displayed,
        format!(
            "count {count} (expected 2); displayed pair present: {}; extra geodesics: {extra:?}",
            displayed.is_subset(&found)
        ),
    )
}

fn reachability() -> Outcome {
    let start = Instant::now();
    let a = oracle::exact_k_reachable(&p(3, 3, 0), 3).unwrap();
    let g = p(5, 5, 1);
    let net = Network::build(&g).unwrap();
    let b = net.exact_k_reachable(6);
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let samples = 2000;
    let bad = (0..samples)
        .filter(|_| {
            let x = net.vertex(rng.gen_range(0..net.len()));
            let y = net.vertex(rng.gen_range(0..net.len()));
            match reach_walk(&x, &y, &g) {
                Ok(w) => {
                    let rebuilt = Walk::new(w.vertices().to_vec(), g);
                    rebuilt.is_err() || w.len() != 6 || w.source() != x || w.target() != y
                }
                Err(_) => true,
            }
        })
        .count();
    let elapsed = start.elapsed();
    check(
        a.all_pairs_reachable_in_exactly_k
            && b.all_pairs_reachable_in_exactly_k
            && bad == 0
            && elapsed < Duration::from_secs(30),
        format!(
            "Γ_3(3) k=3: {}, Γ_5(5,−1) k=6: {}, {bad}/{samples} bad walks, {elapsed:.2?}",
            a.all_pairs_reachable_in_exactly_k, b.all_pairs_reachable_in_exactly_k
        ),
    )
}

fn characteristics() -> Outcome {
    let g = p(6, 6, 0);
    let x = v("531624");
    let d = routing::distance(&x, &v("123456"), &g).unwrap();
    let t = char_triple(&x, &g).unwrap();
    let b2 = beta(&x, 2, d);
    check(
        d == 4 && t.alpha == 3 && t.beta == 6 && b2 == 7,
        format!("d = {d}, α = {}, β = {}, β(X,2) = {b2}", t.alpha, t.beta),
    )
}

fn containers_exhaustive() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();
    let mut ok = true;
    for g in [p(4, 4, 0), p(5, 4, 0)] {
        let net = Network::build(&g).unwrap();
        let (bad, longest) = (0..net.len())
            .into_par_iter()
            .map(|a| {
                let x = net.vertex(a);
                let mut bad = 0u64;
                let mut longest = 0;
                for y in net.vertices().iter().filter(|y| **y != x) {
                    let c = container(&x, y, &g).unwrap();
                    let report = verify_container(&c, &g);
                    longest = longest.max(report.length);
                    if !report.valid || report.length > g.dee() + 2 {
                        bad += 1;
                    }
                }
                (bad, longest)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1.max(b.1)));
        ok &= bad == 0;
        lines.push(format!("{g}: {bad} bad, longest {longest}"));
    }

    let g = p(5, 4, 0);
    let c = container(&v("1325"), &v("1234"), &g).unwrap();
    let table_rows = example_table_rows();
    let rows_ok = c.paths == table_rows;
    ok &= rows_ok;
    lines.push(format!(
        "1325 → 1234 table {}",
        if rows_ok { "reproduced" } else { "differs" }
    ));

    let mut leg_checks = 0u64;
    let mut leg_bad = 0u64;
    for g in [p(4, 4, 0), p(5, 4, 0), p(5, 5, 0)] {
        let net = Network::build(&g).unwrap();
        let origin = standard_origin(&g);
        let (n, b) = (0..net.len())
            .into_par_iter()
            .filter(|&a| net.vertex(a) != origin)
            .map(|a| {
                let x = net.vertex(a);
                let (mut n, mut b) = (0u64, 0u64);
                for i in 1..=g.max_symbol() {
                    let Ok(pred) = leg_distance(&x, i, &g) else {
                        continue;
                    };
                    let j = theta(&x, i, &g).unwrap();
                    let z = compose(i, &x, &g).unwrap();
                    let exit = origin_in_neighbor(j, g.dee());
                    let actual = net.bfs(net.index_of(&z).unwrap())[net.index_of(&exit).unwrap()];
                    n += 1;
                    if actual as usize != pred {
                        b += 1;
                    }
                }
                (n, b)
            })
            .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
        leg_checks += n;
        leg_bad += b;
    }
    ok &= leg_bad == 0;
    lines.push(format!("leg distances {leg_bad}/{leg_checks} off BFS"));
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(600);
    lines.push(format!("{elapsed:.2?}"));
    check(ok, lines.join("; "))
}

fn example_table_rows() -> Vec<Vec<Vertex>> {
    [
        &["1325", "2135", "4213", "3421", "1342", "2134", "1234"][..],
        &["1325", "3125", "4312", "1432", "3142", "2314", "1234"][..],
        &["1325", "4132", "3412", "2341", "1234"][..],
        &["1325", "5132", "4513", "3451", "2345", "1234"][..],
        &["1325", "6132", "4613", "3461", "2346", "1234"][..],
    ]
    .iter()
    .map(|row| row.iter().map(|s| v(s)).collect())
    .collect()
}

fn wide_diameter() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for g in [p(4, 4, 0), p(5, 4, 0), p(5, 5, 0)] {
        let w = lower_bound_witness(&g).unwrap();
        let c = container(&w.x, &w.y, &g).unwrap();
        let report = verify_container(&c, &g);
        let good = w.ok && report.valid && c.length() == g.dee() + 2;
        ok &= good;
        lines.push(format!(
            "{g}: witness {}, container length {}",
            w.ok,
            c.length()
        ));
    }
    check(ok, lines.join("; "))
}

fn theta_bijectivity() -> Outcome {
    let mut lines = Vec::new();
    let mut ok = true;
    for g in [p(5, 4, 0), p(5, 5, 0)] {
        let net = Network::build(&g).unwrap();
        let origin = standard_origin(&g);
        let m_y: BTreeSet<Vertex> = in_neighbors(&origin, &g).unwrap().into_iter().collect();
        let counterexamples: Vec<Vertex> = net
            .vertices()
            .par_iter()
            .filter(|x| **x != origin)
            .filter(|x| {
                let mut want = m_y.clone();
                want.remove(x);
                let mut images = Vec::new();
                for i in 1..=g.max_symbol() {
                    if i == x.first() || compose(i, x, &g).unwrap() == origin {
                        continue;
                    }
                    images.push(origin_in_neighbor(theta(x, i, &g).unwrap(), g.dee()));
                }
                let got: BTreeSet<Vertex> = images.iter().copied().collect();
                got.len() != images.len() || got != want
            })
            .copied()
            .collect();
        ok &= counterexamples.is_empty();
        lines.push(format!(
            "{g}: {} counterexamples {:?}",
            counterexamples.len(),
            counterexamples
                .iter()
                .take(5)
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
        ));
    }
    check(ok, lines.join("; "))
}

fn menger() -> Outcome {
    let g = p(5, 4, 0);
    let net = Network::build(&g).unwrap();
    let mut rng = StdRng::seed_from_u64(0xd15_70147);
    let mut pairs = Vec::new();
    while pairs.len() < 2000 {
        let (a, b) = (rng.gen_range(0..net.len()), rng.gen_range(0..net.len()));
        if a != b {
            pairs.push((a, b));
        }
    }
    let wrong: Vec<(usize, usize, usize)> = pairs
        .par_iter()
        .filter_map(|&(a, b)| {
            let m = net.max_disjoint_paths(a, b);
            (m != g.delta()).then_some((a, b, m))
        })
        .collect();
    check(
        wrong.is_empty(),
        format!(
            "{} sampled pairs, {} with count ≠ Δ",
            pairs.len(),
            wrong.len()
        ),
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("distance oracle equivalence", distance_equivalence),
        ("shortest-path uniqueness", uniqueness),
        ("diameter of deleted graphs", deleted_diameter),
        ("non-uniqueness under deletion", non_uniqueness),
        ("exact-length reachability", reachability),
        ("characteristic statistics", characteristics),
        ("container correctness", containers_exhaustive),
        ("wide-diameter exactness", wide_diameter),
        ("θ bijectivity", theta_bijectivity),
        ("Menger connectivity", menger),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg}", n + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg}", n + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
