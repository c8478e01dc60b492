//! Brute-force ground truth over an explicit adjacency table.
//!
//! Vertices are indexed by the lexicographic rank of their D-permutation.
//! Everything here is deliberately independent of the header/tail routing
//! and the container construction: it only uses [`out_arcs`].

use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::topology::{out_arcs, standard_origin, vertex_count, NetworkParams, Vertex};

/// Default guard on the number of vertices an oracle will materialize.
pub const DEFAULT_MAX_VERTICES: u64 = 1_000_000;

const UNREACHED: u32 = u32::MAX;

/// Lexicographic ranking of D-permutations over `1..=Δ+1`.
#[derive(Debug, Clone)]
pub struct Indexer {
    alphabet: usize,
    len: usize,
    // weights[p] = number of completions of a prefix of length p + 1
    weights: Vec<u64>,
}

impl Indexer {
    pub fn new(params: &NetworkParams) -> Self {
        let alphabet = params.delta() + 1;
        let len = params.dee();
        let weights = (0..len)
            .map(|p| (p + 1..len).map(|q| (alphabet - q) as u64).product())
            .collect();
        Self {
            alphabet,
            len,
            weights,
        }
    }

    pub fn rank(&self, x: &Vertex) -> u64 {
        let mut used = [false; 256];
        let mut rank = 0;
        for (p, &s) in x.iter().enumerate() {
            let smaller = (1..s).filter(|&t| !used[t as usize]).count() as u64;
            rank += smaller * self.weights[p];
            used[s as usize] = true;
        }
        rank
    }

    pub fn unrank(&self, mut rank: u64) -> Vertex {
        let mut used = [false; 256];
        let mut syms = Vec::with_capacity(self.len);
        for p in 0..self.len {
            let mut skip = rank / self.weights[p];
            rank %= self.weights[p];
            let s = (1..=self.alphabet as u8)
                .find(|&t| {
                    if used[t as usize] {
                        return false;
                    }
                    if skip == 0 {
                        return true;
                    }
                    skip -= 1;
                    false
                })
                .expect("rank within range");
            used[s as usize] = true;
            syms.push(s);
        }
        Vertex::from_symbols(&syms).expect("distinct by construction")
    }
}

/// Explicit adjacency of Γ_Δ(D,−r).
#[derive(Debug, Clone)]
pub struct Network {
    params: NetworkParams,
    indexer: Indexer,
    vertices: Vec<Vertex>,
    degree: usize,
    succ: Vec<u32>,
    pred_start: Vec<u32>,
    pred: Vec<u32>,
}

impl Network {
    pub fn build(params: &NetworkParams) -> Result<Self> {
        Self::build_capped(params, DEFAULT_MAX_VERTICES)
    }

    pub fn build_capped(params: &NetworkParams, cap: u64) -> Result<Self> {
        let count = vertex_count(params);
        if count > cap || count > u32::MAX as u64 - 1 {
            return Err(Error::InstanceTooLarge { count, cap });
        }
        let indexer = Indexer::new(params);
        let n = count as usize;
        let vertices: Vec<Vertex> = (0..count)
            .into_par_iter()
            .map(|i| indexer.unrank(i))
            .collect();
        let degree = params.out_degree();
        let succ: Vec<u32> = vertices
            .par_iter()
            .flat_map_iter(|v| {
                out_arcs(v, params)
                    .into_iter()
                    .map(|a| indexer.rank(&a.dst) as u32)
                    .collect::<Vec<_>>()
            })
            .collect();
        debug_assert_eq!(succ.len(), n * degree);
        let mut pred_start = vec![0u32; n + 1];
        for &t in &succ {
            pred_start[t as usize + 1] += 1;
        }
        for i in 0..n {
            pred_start[i + 1] += pred_start[i];
        }
        let mut fill = pred_start.clone();
        let mut pred = vec![0u32; succ.len()];
        for (u, row) in succ.chunks(degree.max(1)).enumerate() {
            for &t in row {
                pred[fill[t as usize] as usize] = u as u32;
                fill[t as usize] += 1;
            }
        }
        Ok(Self {
            params: *params,
            indexer,
            vertices,
            degree,
            succ,
            pred_start,
            pred,
        })
    }

    pub fn params(&self) -> &NetworkParams {
        &self.params
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, i: usize) -> Vertex {
        self.vertices[i]
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn index_of(&self, x: &Vertex) -> Result<usize> {
        self.params.check_vertex(x)?;
        Ok(self.indexer.rank(x) as usize)
    }

    pub fn successors(&self, i: usize) -> &[u32] {
        &self.succ[i * self.degree..(i + 1) * self.degree]
    }

    pub fn predecessors(&self, i: usize) -> &[u32] {
        &self.pred[self.pred_start[i] as usize..self.pred_start[i + 1] as usize]
    }

    pub fn in_degree(&self, i: usize) -> usize {
        self.predecessors(i).len()
    }

    pub fn has_arc(&self, u: &Vertex, v: &Vertex) -> bool {
        match (self.index_of(u), self.index_of(v)) {
            (Ok(a), Ok(b)) => self.successors(a).contains(&(b as u32)),
            _ => false,
        }
    }

    /// Breadth-first distances from `source`; `u32::MAX` marks unreachable.
    pub fn bfs(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHED; self.len()];
        let mut queue = VecDeque::with_capacity(self.len());
        dist[source] = 0;
        queue.push_back(source as u32);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &v in self.successors(u as usize) {
                if dist[v as usize] == UNREACHED {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Distances and geodesic counts from `source`.
    pub fn geodesic_counts(&self, source: usize) -> (Vec<u32>, Vec<u64>) {
        let mut dist = vec![UNREACHED; self.len()];
        let mut count = vec![0u64; self.len()];
        let mut queue = VecDeque::with_capacity(self.len());
        dist[source] = 0;
        count[source] = 1;
        queue.push_back(source as u32);
        while let Some(u) = queue.pop_front() {
            let (du, cu) = (dist[u as usize], count[u as usize]);
            for &v in self.successors(u as usize) {
                let v = v as usize;
                if dist[v] == UNREACHED {
                    dist[v] = du + 1;
                    queue.push_back(v as u32);
                }
                if dist[v] == du + 1 {
                    count[v] = count[v].saturating_add(cu);
                }
            }
        }
        (dist, count)
    }

    pub fn eccentricity(&self, source: usize) -> Option<usize> {
        let dist = self.bfs(source);
        if dist.contains(&UNREACHED) {
            None
        } else {
            dist.iter().max().map(|&d| d as usize)
        }
    }

    /// All minimum-length paths from `x` to `y`, in lexicographic order.
    pub fn enumerate_geodesics(&self, x: usize, y: usize) -> Vec<Vec<Vertex>> {
        let dist = self.bfs(x);
        if dist[y] == UNREACHED {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut stack = vec![y];
        self.walk_back(&dist, x, &mut stack, &mut out);
        out.sort();
        out
    }

    fn walk_back(
        &self,
        dist: &[u32],
        x: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<Vertex>>,
    ) {
        let cur = *stack.last().unwrap();
        if cur == x {
            out.push(stack.iter().rev().map(|&i| self.vertices[i]).collect());
            return;
        }
        for &p in self.predecessors(cur) {
            if dist[p as usize] != UNREACHED && dist[p as usize] + 1 == dist[cur] {
                stack.push(p as usize);
                self.walk_back(dist, x, stack, out);
                stack.pop();
            }
        }
    }

    /// Rows `R[u]` of the relation "a walk of length exactly `k` leads from
    /// `u`", as bitsets.
    fn exact_k_rows(&self, k: usize) -> Vec<Vec<u64>> {
        let n = self.len();
        let words = n.div_ceil(64);
        let mut rows: Vec<Vec<u64>> = (0..n)
            .map(|u| {
                let mut row = vec![0u64; words];
                row[u / 64] |= 1 << (u % 64);
                row
            })
            .collect();
        for _ in 0..k {
            rows = (0..n)
                .into_par_iter()
                .map(|u| {
                    let mut row = vec![0u64; words];
                    for &v in self.successors(u) {
                        for (a, b) in row.iter_mut().zip(&rows[v as usize]) {
                            *a |= *b;
                        }
                    }
                    row
                })
                .collect();
        }
        rows
    }

    pub fn exact_k_reachable(&self, k: usize) -> ReachabilityReport {
        let rows = self.exact_k_rows(k);
        let n = self.len();
        let mut counterexamples = Vec::new();
        let mut missing = 0u64;
        for (u, row) in rows.iter().enumerate() {
            for v in 0..n {
                if row[v / 64] & (1 << (v % 64)) == 0 {
                    missing += 1;
                    if counterexamples.len() < MAX_COUNTEREXAMPLES {
                        counterexamples.push((self.vertices[u], self.vertices[v]));
                    }
                }
            }
        }
        ReachabilityReport {
            params: self.params,
            k,
            all_pairs_reachable_in_exactly_k: missing == 0,
            missing_pairs: missing,
            counterexamples,
        }
    }

    /// Smallest `k ≤ limit` for which every ordered pair is joined by a walk
    /// of length exactly `k`.
    pub fn min_exact_reach(&self, limit: usize) -> Option<usize> {
        let n = self.len();
        let words = n.div_ceil(64);
        let full = |row: &Vec<u64>| {
            (0..words).all(|w| {
                let bits = if (w + 1) * 64 <= n {
                    u64::MAX
                } else {
                    (1u64 << (n % 64)) - 1
                };
                row[w] & bits == bits
            })
        };
        let mut rows: Vec<Vec<u64>> = (0..n)
            .map(|u| {
                let mut row = vec![0u64; words];
                row[u / 64] |= 1 << (u % 64);
                row
            })
            .collect();
        for k in 0..=limit {
            if rows.par_iter().all(full) {
                return Some(k);
            }
            rows = (0..n)
                .into_par_iter()
                .map(|u| {
                    let mut row = vec![0u64; words];
                    for &v in self.successors(u) {
                        for (a, b) in row.iter_mut().zip(&rows[v as usize]) {
                            *a |= *b;
                        }
                    }
                    row
                })
                .collect();
        }
        None
    }

    /// Maximum number of internally vertex-disjoint `x → y` paths, by unit
    /// vertex capacities and augmenting paths.
    pub fn max_disjoint_paths(&self, x: usize, y: usize) -> usize {
        if x == y {
            return 0;
        }
        let mut flow = SplitFlow::new(self, x, y);
        let mut paths = 0;
        while flow.augment() {
            paths += 1;
        }
        paths
    }
}

const MAX_COUNTEREXAMPLES: usize = 100;

/// Unit-capacity flow network with every vertex split into in/out halves.
struct SplitFlow {
    head: Vec<usize>,
    to: Vec<u32>,
    cap: Vec<u8>,
    next: Vec<usize>,
    source: usize,
    sink: usize,
}

impl SplitFlow {
    const NONE: usize = usize::MAX;

    fn new(net: &Network, x: usize, y: usize) -> Self {
        let n = net.len();
        let mut f = SplitFlow {
            head: vec![Self::NONE; 2 * n],
            to: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
            source: 2 * x + 1,
            sink: 2 * y,
        };
        for v in 0..n {
            if v != x && v != y {
                f.add_edge(2 * v, 2 * v + 1);
            }
            for &w in net.successors(v) {
                f.add_edge(2 * v + 1, 2 * w as usize);
            }
        }
        f
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        for (from, to, cap) in [(a, b, 1u8), (b, a, 0u8)] {
            self.to.push(to as u32);
            self.cap.push(cap);
            self.next.push(self.head[from]);
            self.head[from] = self.to.len() - 1;
        }
    }

    fn augment(&mut self) -> bool {
        let mut via = vec![Self::NONE; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        let mut queue = VecDeque::new();
        seen[self.source] = true;
        queue.push_back(self.source);
        while let Some(u) = queue.pop_front() {
            if u == self.sink {
                break;
            }
            let mut e = self.head[u];
            while e != Self::NONE {
                let w = self.to[e] as usize;
                if self.cap[e] > 0 && !seen[w] {
                    seen[w] = true;
                    via[w] = e;
                    queue.push_back(w);
                }
                e = self.next[e];
            }
        }
        if !seen[self.sink] {
            return false;
        }
        let mut v = self.sink;
        while v != self.source {
            let e = via[v];
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            v = self.to[e ^ 1] as usize;
        }
        true
    }
}

/// Distances from one source in Γ_Δ(D,−r).
#[derive(Debug, Clone)]
pub struct DistanceTable {
    pub params: NetworkParams,
    pub source: Vertex,
    indexer: Indexer,
    dist: Vec<u32>,
}

impl DistanceTable {
    pub fn get(&self, v: &Vertex) -> Option<usize> {
        if self.params.check_vertex(v).is_err() {
            return None;
        }
        match self.dist[self.indexer.rank(v) as usize] {
            UNREACHED => None,
            d => Some(d as usize),
        }
    }

    /// `None` when some vertex is unreachable.
    pub fn eccentricity(&self) -> Option<usize> {
        if self.dist.contains(&UNREACHED) {
            None
        } else {
            self.dist.iter().max().map(|&d| d as usize)
        }
    }

    /// `(vertex, distance)` in vertex rank order.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Option<usize>)> + '_ {
        self.dist.iter().enumerate().map(|(i, &d)| {
            (
                self.indexer.unrank(i as u64),
                (d != UNREACHED).then_some(d as usize),
            )
        })
    }
}

pub fn bfs_distances(source: &Vertex, params: &NetworkParams) -> Result<DistanceTable> {
    let net = Network::build(params)?;
    let s = net.index_of(source)?;
    Ok(DistanceTable {
        params: *params,
        source: *source,
        indexer: net.indexer.clone(),
        dist: net.bfs(s),
    })
}

/// Maximum eccentricity over the origin and two other sources, which must
/// agree by vertex symmetry. `None` when the digraph is not strongly
/// connected.
pub fn diameter(params: &NetworkParams) -> Result<Option<usize>> {
    let net = Network::build(params)?;
    diameter_of(&net)
}

pub fn diameter_of(net: &Network) -> Result<Option<usize>> {
    let origin = net.index_of(&standard_origin(net.params()))?;
    let sources = [origin, net.len() / 2, net.len() - 1];
    let ecc: Vec<Option<usize>> = sources.iter().map(|&s| net.eccentricity(s)).collect();
    if ecc.iter().any(|e| *e != ecc[0]) {
        return Err(Error::SymmetryViolation(format!(
            "{}: eccentricities {ecc:?} from sources {:?}",
            net.params(),
            sources.map(|s| net.vertex(s))
        )));
    }
    Ok(ecc[0])
}

pub fn count_geodesics(x: &Vertex, y: &Vertex, params: &NetworkParams) -> Result<u64> {
    let net = Network::build(params)?;
    let (a, b) = (net.index_of(x)?, net.index_of(y)?);
    Ok(net.geodesic_counts(a).1[b])
}

pub fn enumerate_geodesics(
    x: &Vertex,
    y: &Vertex,
    params: &NetworkParams,
) -> Result<Vec<Vec<Vertex>>> {
    let net = Network::build(params)?;
    let (a, b) = (net.index_of(x)?, net.index_of(y)?);
    Ok(net.enumerate_geodesics(a, b))
}

/// Outcome of an exact-length reachability sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReachabilityReport {
    pub params: NetworkParams,
    pub k: usize,
    pub all_pairs_reachable_in_exactly_k: bool,
    pub missing_pairs: u64,
    /// At most 100 of the missing pairs.
    pub counterexamples: Vec<(Vertex, Vertex)>,
}

pub fn exact_k_reachable(params: &NetworkParams, k: usize) -> Result<ReachabilityReport> {
    Ok(Network::build(params)?.exact_k_reachable(k))
}

pub fn menger_disjoint_count(x: &Vertex, y: &Vertex, params: &NetworkParams) -> Result<usize> {
    let net = Network::build(params)?;
    Ok(net.max_disjoint_paths(net.index_of(x)?, net.index_of(y)?))
}

/// A family of paths between one ordered pair, meant to be internally
/// vertex-disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Container {
    pub src: Vertex,
    pub dst: Vertex,
    pub paths: Vec<Vec<Vertex>>,
}

impl Container {
    pub fn width(&self) -> usize {
        self.paths.len()
    }

    /// Longest path length in arcs.
    pub fn length(&self) -> usize {
        self.paths
            .iter()
            .map(|p| p.len().saturating_sub(1))
            .max()
            .unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ContainerIssue {
    Width {
        expected: usize,
        found: usize,
    },
    Endpoints {
        path: usize,
    },
    MissingArc {
        path: usize,
        from: Vertex,
        to: Vertex,
    },
    RepeatedVertex {
        path: usize,
        vertex: Vertex,
    },
    EndpointInside {
        path: usize,
        vertex: Vertex,
    },
    Shared {
        vertex: Vertex,
        paths: (usize, usize),
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainerReport {
    pub valid: bool,
    pub length: usize,
    pub issues: Vec<ContainerIssue>,
}

/// Checks width `Δ − r`, endpoints, arcs and internal disjointness.
pub fn verify_container(c: &Container, params: &NetworkParams) -> ContainerReport {
    let mut issues = Vec::new();
    if c.width() != params.out_degree() {
        issues.push(ContainerIssue::Width {
            expected: params.out_degree(),
            found: c.width(),
        });
    }
    let mut owner: HashMap<Vertex, usize> = HashMap::new();
    for (pi, path) in c.paths.iter().enumerate() {
        if path.len() < 2 || path[0] != c.src || *path.last().unwrap() != c.dst {
            issues.push(ContainerIssue::Endpoints { path: pi });
            continue;
        }
        for w in path.windows(2) {
            if crate::topology::arc_op(&w[0], &w[1], params).is_none() {
                issues.push(ContainerIssue::MissingArc {
                    path: pi,
                    from: w[0],
                    to: w[1],
                });
            }
        }
        let mut own = HashSet::new();
        for &v in &path[1..path.len() - 1] {
            if v == c.src || v == c.dst {
                issues.push(ContainerIssue::EndpointInside {
                    path: pi,
                    vertex: v,
                });
                continue;
            }
            if !own.insert(v) {
                issues.push(ContainerIssue::RepeatedVertex {
                    path: pi,
                    vertex: v,
                });
                continue;
            }
            if let Some(&other) = owner.get(&v) {
                issues.push(ContainerIssue::Shared {
                    vertex: v,
                    paths: (other, pi),
                });
            } else {
                owner.insert(v, pi);
            }
        }
    }
    ContainerReport {
        valid: issues.is_empty(),
        length: c.length(),
        issues,
    }
}
