use std::time::Instant;

use anyhow::{bail, Result};
use clap::ValueEnum;
use cycle_prefix::containers::{container, lower_bound_witness};
use cycle_prefix::oracle::{diameter_of, verify_container, Network};
use cycle_prefix::routing::{distance, is_remote, reach_walk};
use cycle_prefix::topology::standard_origin;
use cycle_prefix::{NetworkParams, Vertex, Walk};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::record::ExperimentRecord;

const MAX_LISTED: usize = 10;
const GRID_MAX_DELTA: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Distances,
    Uniqueness,
    Diameter,
    Reachability,
    Containers,
    Witness,
    Menger,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Suite::Distances => "distances",
            Suite::Uniqueness => "uniqueness",
            Suite::Diameter => "diameter",
            Suite::Reachability => "reachability",
            Suite::Containers => "containers",
            Suite::Witness => "witness",
            Suite::Menger => "menger",
        }
    }

    /// Deletion levels this suite checks on a `(Δ, D)` grid point.
    fn grid_rs(self, dee: usize) -> Vec<usize> {
        match self {
            Suite::Diameter => (0..=(dee - 2) / 2).collect(),
            Suite::Reachability if dee < 3 => vec![],
            Suite::Reachability => (0..=(dee - 3) / 2).collect(),
            Suite::Witness if dee < 4 => vec![],
            _ => vec![0],
        }
    }

    fn check_domain(self, g: &NetworkParams) -> Result<()> {
        let (d, r) = (g.dee(), g.r());
        match self {
            Suite::Distances | Suite::Containers | Suite::Menger if r != 0 => {
                bail!("suite {} needs r = 0", self.name())
            }
            Suite::Witness if r != 0 || d < 4 => bail!("suite witness needs r = 0 and D ≥ 4"),
            Suite::Diameter if d < 2 * r + 2 => bail!("suite diameter needs D ≥ 2r+2"),
            Suite::Reachability if d < 2 * r + 3 => bail!("suite reachability needs D ≥ 2r+3"),
            _ => Ok(()),
        }
    }
}

pub struct Options {
    pub suite: Suite,
    pub instance: Option<NetworkParams>,
    pub max_vertices: u64,
    pub seed: u64,
    pub samples: Option<usize>,
    pub timing: bool,
}

/// Instances checked by a suite: the explicit one, or every grid point
/// with `Δ ≤ 6` under the vertex cap.
pub fn instances(opts: &Options) -> Result<Vec<NetworkParams>> {
    if let Some(g) = opts.instance {
        opts.suite.check_domain(&g)?;
        if g.vertex_count() > opts.max_vertices {
            bail!(
                "{g} has {} vertices, above --max-vertices {}",
                g.vertex_count(),
                opts.max_vertices
            );
        }
        return Ok(vec![g]);
    }
    let mut out = Vec::new();
    for delta in 2..=GRID_MAX_DELTA {
        for dee in 2..=delta {
            for r in opts.suite.grid_rs(dee) {
                let g = NetworkParams::new(delta, dee, r)?;
                if g.vertex_count() <= opts.max_vertices {
                    out.push(g);
                }
            }
        }
    }
    Ok(out)
}

pub fn run(opts: &Options) -> Result<Vec<ExperimentRecord>> {
    let mut records = Vec::new();
    for g in instances(opts)? {
        let start = Instant::now();
        let net = Network::build_capped(&g, opts.max_vertices)?;
        let (inputs, outputs, pass) = match opts.suite {
            Suite::Distances => distances(&net),
            Suite::Uniqueness => uniqueness(&net),
            Suite::Diameter => diameter(&net)?,
            Suite::Reachability => reachability(&net, opts),
            Suite::Containers => containers(&net, opts)?,
            Suite::Witness => witness(&net)?,
            Suite::Menger => menger(&net, opts),
        };
        let mut rec = ExperimentRecord::new(
            &format!("verify {}", opts.suite.name()),
            &g,
            inputs,
            outputs,
            pass,
        );
        if opts.timing {
            rec.elapsed_ms = Some(start.elapsed().as_millis() as u64);
        }
        records.push(rec);
    }
    Ok(records)
}

type Check = (Value, Value, bool);

fn fmt(g: &NetworkParams, v: &Vertex) -> String {
    g.format_vertex(v)
}

fn distances(net: &Network) -> Check {
    let g = *net.params();
    let bad: Vec<(usize, usize, usize, u32)> = (0..net.len())
        .into_par_iter()
        .flat_map_iter(|s| {
            let x = net.vertex(s);
            let dist = net.bfs(s);
            dist.into_iter()
                .enumerate()
                .filter_map(move |(t, d)| {
                    let h = distance(&x, &net.vertex(t), &g).ok()?;
                    (h != d as usize).then_some((s, t, h, d))
                })
                .collect::<Vec<_>>()
        })
        .collect();
    let listed: Vec<Value> = bad
        .iter()
        .take(MAX_LISTED)
        .map(|&(s, t, h, d)| {
            json!({"src": fmt(&g, &net.vertex(s)), "dst": fmt(&g, &net.vertex(t)), "header": h, "bfs": d})
        })
        .collect();
    let pairs = (net.len() * net.len()) as u64;
    (
        json!({"pairs": "all"}),
        json!({"vertices": net.len(), "pairs": pairs, "mismatches": bad.len(), "counterexamples": listed}),
        bad.is_empty(),
    )
}

fn uniqueness(net: &Network) -> Check {
    let g = *net.params();
    let non_unique: u64 = (0..net.len())
        .into_par_iter()
        .map(|s| net.geodesic_counts(s).1.iter().filter(|&&c| c != 1).count() as u64)
        .sum();
    let origin = standard_origin(&g);
    let (_, counts) = net.geodesic_counts(net.index_of(&origin).expect("origin is a vertex"));
    let listed: Vec<Value> = counts
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 1)
        .map(|(t, &c)| json!({"src": fmt(&g, &origin), "dst": fmt(&g, &net.vertex(t)), "geodesics": c}))
        .collect();
    (
        json!({"pairs": "all", "listed_from": fmt(&g, &origin)}),
        json!({"vertices": net.len(), "non_unique_pairs": non_unique, "counterexamples": listed}),
        non_unique == 0,
    )
}

fn diameter(net: &Network) -> Result<Check> {
    let g = *net.params();
    let expected = g.dee() + g.r();
    let diam = diameter_of(net)?;
    let dist = net.bfs(net.index_of(&standard_origin(&g))?);
    let remote: Vec<usize> = (0..net.len())
        .filter(|&i| is_remote(&net.vertex(i), &g))
        .collect();
    let off: Vec<Value> = remote
        .iter()
        .filter(|&&i| dist[i] as usize != expected)
        .take(MAX_LISTED)
        .map(|&i| json!({"vertex": fmt(&g, &net.vertex(i)), "distance": dist[i]}))
        .collect();
    Ok((
        json!({"expected": expected}),
        json!({"diameter": diam, "remote_vertices": remote.len(), "remote_off": off}),
        diam == Some(expected) && off.is_empty(),
    ))
}

fn reachability(net: &Network, opts: &Options) -> Check {
    let g = *net.params();
    let k = g.dee() + g.r();
    let report = net.exact_k_reachable(k);
    let samples = opts.samples.unwrap_or(1000);
    let mut rng = StdRng::seed_from_u64(opts.seed);
    let pairs: Vec<(usize, usize)> = (0..samples)
        .map(|_| (rng.gen_range(0..net.len()), rng.gen_range(0..net.len())))
        .collect();
    let bad: Vec<&(usize, usize)> = pairs
        .par_iter()
        .filter(|&&(a, b)| {
            let (x, y) = (net.vertex(a), net.vertex(b));
            !matches!(reach_walk(&x, &y, &g), Ok(w)
                if w.len() == k && w.source() == x && w.target() == y
                    && Walk::new(w.vertices().to_vec(), g).is_ok())
        })
        .collect();
    let listed_bad: Vec<Value> = bad
        .iter()
        .take(MAX_LISTED)
        .map(|&&(a, b)| json!([fmt(&g, &net.vertex(a)), fmt(&g, &net.vertex(b))]))
        .collect();
    let missing: Vec<Value> = report
        .counterexamples
        .iter()
        .take(MAX_LISTED)
        .map(|(x, y)| json!([fmt(&g, x), fmt(&g, y)]))
        .collect();
    (
        json!({"k": k, "walk_samples": samples, "seed": opts.seed}),
        json!({
            "all_pairs_reachable_in_exactly_k": report.all_pairs_reachable_in_exactly_k,
            "missing_pairs": report.missing_pairs,
            "counterexamples": missing,
            "bad_walks": bad.len(),
            "bad_walk_pairs": listed_bad,
        }),
        report.all_pairs_reachable_in_exactly_k && bad.is_empty(),
    )
}

/// Ordered pairs to check: all of them when there are at most
/// `10 · samples`, otherwise `samples` distinct pairs drawn with the seed.
fn pair_set(net: &Network, samples: usize, seed: u64) -> (Vec<(usize, usize)>, bool) {
    let n = net.len();
    if n * (n - 1) <= samples * 10 {
        let all = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        return (all, true);
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if a != b {
            out.push((a, b));
        }
    }
    (out, false)
}

fn containers(net: &Network, opts: &Options) -> Result<Check> {
    let g = *net.params();
    let (pairs, exhaustive) = pair_set(net, opts.samples.unwrap_or(10_000), opts.seed);
    let results: Vec<(usize, usize, bool, usize, String)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let c = container(&net.vertex(a), &net.vertex(b), &g)?;
            let report = verify_container(&c, &g);
            let ok = report.valid && report.length <= g.dee() + 2;
            Ok((a, b, ok, report.length, format!("{:?}", report.issues)))
        })
        .collect::<cycle_prefix::Result<_>>()?;
    let longest = results.iter().map(|r| r.3).max().unwrap_or(0);
    let failures: Vec<Value> = results
        .iter()
        .filter(|r| !r.2)
        .map(|(a, b, _, len, issues)| {
            json!({"src": fmt(&g, &net.vertex(*a)), "dst": fmt(&g, &net.vertex(*b)), "length": len, "issues": issues})
        })
        .collect();
    Ok((
        json!({"pairs": pairs.len(), "exhaustive": exhaustive, "seed": opts.seed, "max_length": g.dee() + 2}),
        json!({"failures": failures.len(), "longest": longest, "counterexamples": failures.into_iter().take(MAX_LISTED).collect::<Vec<_>>()}),
        results.iter().all(|r| r.2),
    ))
}

fn witness(net: &Network) -> Result<Check> {
    let g = *net.params();
    let w = lower_bound_witness(&g)?;
    let c = container(&w.x, &w.y, &g)?;
    let report = verify_container(&c, &g);
    let legs: Vec<Value> = w
        .legs
        .iter()
        .map(|l| {
            json!({"symbol": l.symbol, "neighbor": fmt(&g, &l.neighbor), "distance": l.distance,
                   "geodesics": l.geodesics, "through_hub": l.through_hub})
        })
        .collect();
    let expected = g.dee() + 2;
    Ok((
        json!({"x": fmt(&g, &w.x), "y": fmt(&g, &w.y), "hub": fmt(&g, &w.hub)}),
        json!({"legs": legs, "last_distance": w.last_distance, "container_valid": report.valid,
               "container_length": c.length(), "expected_length": expected}),
        w.ok && report.valid && c.length() == expected,
    ))
}

fn menger(net: &Network, opts: &Options) -> Check {
    let g = *net.params();
    let (pairs, exhaustive) = pair_set(net, opts.samples.unwrap_or(1000), opts.seed);
    let counts: Vec<usize> = pairs
        .par_iter()
        .map(|&(a, b)| net.max_disjoint_paths(a, b))
        .collect();
    let wrong: Vec<Value> = pairs
        .iter()
        .zip(&counts)
        .filter(|(_, &m)| m != g.delta())
        .take(MAX_LISTED)
        .map(|(&(a, b), &m)| json!({"src": fmt(&g, &net.vertex(a)), "dst": fmt(&g, &net.vertex(b)), "paths": m}))
        .collect();
    (
        json!({"pairs": pairs.len(), "exhaustive": exhaustive, "seed": opts.seed, "expected": g.delta()}),
        json!({"min": counts.iter().min(), "max": counts.iter().max(), "counterexamples": wrong}),
        counts.iter().all(|&m| m == g.delta()),
    )
}
