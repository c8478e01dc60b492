//! Shortest-path routing in Γ_Δ(D) and restricted routing in Γ_Δ(D,−r).
//!
//! Distances in the full digraph come from the header/tail decomposition:
//! the longest suffix of the target that embeds into the source (with every
//! source symbol up to the last embedded one also present in the target) is
//! the tail, and the remaining prefix is the header. Its length is the
//! distance, and composing the header symbols from last to first traces the
//! unique geodesic.
//!
//! The restricted constructions all route from the standard origin; an
//! arbitrary pair is handled by relabeling the source onto the origin.

use std::collections::HashMap;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::oracle;
use crate::topology::{
    arc_op, can_lead, compose_unchecked, standard_origin, ArcOp, NetworkParams, Relabeling, Vertex,
};

/// A walk in Γ_Δ(D,−r): consecutive vertices are joined by arcs; vertices
/// and arcs may repeat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    vertices: Vec<Vertex>,
    params: NetworkParams,
}

impl Walk {
    pub fn new(vertices: Vec<Vertex>, params: NetworkParams) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidWalk("no vertices".into()));
        }
        for v in &vertices {
            params.check_vertex(v)?;
        }
        for pair in vertices.windows(2) {
            if arc_op(&pair[0], &pair[1], &params).is_none() {
                return Err(Error::InvalidWalk(format!(
                    "{} → {} is not an arc of {params}",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(Self { vertices, params })
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn params(&self) -> &NetworkParams {
        &self.params
    }

    pub fn source(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn target(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    /// Number of arcs.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    /// The operation of each arc, in order.
    pub fn ops(&self) -> Vec<ArcOp> {
        self.vertices
            .windows(2)
            .map(|w| arc_op(&w[0], &w[1], &self.params).expect("validated on construction"))
            .collect()
    }

    pub fn is_path(&self) -> bool {
        let mut seen = std::collections::HashSet::with_capacity(self.vertices.len());
        self.vertices.iter().all(|v| seen.insert(*v))
    }

    pub fn relabel(&self, sigma: &Relabeling) -> Walk {
        Walk {
            vertices: self.vertices.iter().map(|v| sigma.apply(v)).collect(),
            params: self.params,
        }
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.vertices
    }
}

/// A walk whose vertices are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Path(Walk);

impl Path {
    pub fn new(vertices: Vec<Vertex>, params: NetworkParams) -> Result<Self> {
        Self::from_walk(Walk::new(vertices, params)?)
    }

    pub fn from_walk(walk: Walk) -> Result<Self> {
        if !walk.is_path() {
            return Err(Error::InvalidWalk("vertex repeated in a path".into()));
        }
        Ok(Path(walk))
    }

    pub fn relabel(&self, sigma: &Relabeling) -> Path {
        Path(self.0.relabel(sigma))
    }

    pub fn into_walk(self) -> Walk {
        self.0
    }
}

impl Deref for Path {
    type Target = Walk;

    fn deref(&self) -> &Walk {
        &self.0
    }
}

/// Split of a target into header and tail relative to a source.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeaderSplit {
    pub target: Vertex,
    pub header_len: usize,
}

impl HeaderSplit {
    pub fn header(&self) -> &[u8] {
        &self.target.as_slice()[..self.header_len]
    }

    pub fn tail(&self) -> &[u8] {
        &self.target.as_slice()[self.header_len..]
    }
}

/// Shortest header of `y` with respect to `x`.
pub fn header_split(x: &Vertex, y: &Vertex) -> HeaderSplit {
    HeaderSplit {
        target: *y,
        header_len: header_len(x, y),
    }
}

pub(crate) fn header_len(x: &Vertex, y: &Vertex) -> usize {
    let d = y.len();
    if x == y {
        return 0;
    }
    let ys = y.as_slice();
    let Some(mut pos) = x.position(ys[d - 1]) else {
        return d;
    };
    if x.as_slice()[..=pos].iter().any(|s| !y.contains(*s)) {
        return d;
    }
    let mut tail = 1;
    while tail < d {
        match x.position(ys[d - 1 - tail]) {
            Some(q) if q < pos => {
                pos = q;
                tail += 1;
            }
            _ => break,
        }
    }
    d - tail
}

fn require_full(params: &NetworkParams) -> Result<()> {
    if params.r() != 0 {
        return Err(Error::ParameterDomain(format!(
            "header routing needs r = 0, got r = {}",
            params.r()
        )));
    }
    Ok(())
}

/// Distance from `x` to `y` in Γ_Δ(D).
pub fn distance(x: &Vertex, y: &Vertex, params: &NetworkParams) -> Result<usize> {
    require_full(params)?;
    params.check_vertex(x)?;
    params.check_vertex(y)?;
    Ok(header_len(x, y))
}

/// The unique shortest path from `x` to `y` in Γ_Δ(D).
pub fn shortest_path(x: &Vertex, y: &Vertex, params: &NetworkParams) -> Result<Path> {
    require_full(params)?;
    params.check_vertex(x)?;
    params.check_vertex(y)?;
    if x == y {
        return Err(Error::SameVertex(*x));
    }
    Ok(Path(Walk {
        vertices: geodesic(x, y),
        params: *params,
    }))
}

pub(crate) fn geodesic(x: &Vertex, y: &Vertex) -> Vec<Vertex> {
    let k = header_len(x, y);
    let mut out = Vec::with_capacity(k + 1);
    let mut cur = *x;
    out.push(cur);
    for &s in y.as_slice()[..k].iter().rev() {
        cur = compose_unchecked(s, &cur);
        out.push(cur);
    }
    debug_assert_eq!(cur, *y);
    out
}

/// `d(i ∘ x, y)`. Moving along the first header symbol `y_k` lowers the
/// distance by one; every other choice does not lower it.
pub fn next_hop_distance_check(
    x: &Vertex,
    y: &Vertex,
    i: u8,
    params: &NetworkParams,
) -> Result<usize> {
    let k = distance(x, y, params)?;
    if k == 0 {
        return Err(Error::SameVertex(*x));
    }
    let z = crate::topology::compose(i, x, params)?;
    Ok(header_len(&z, y))
}

/// A path of length at most `D + r` from `x` to `y` in Γ_Δ(D,−r), for
/// `Δ ≥ D ≥ 2r+2`.
pub fn restricted_route(x: &Vertex, y: &Vertex, params: &NetworkParams) -> Result<Path> {
    let (d, r) = (params.dee(), params.r());
    if d < 2 * r + 2 {
        return Err(Error::ParameterDomain(format!(
            "restricted routing needs D ≥ 2r+2, got D = {d}, r = {r}"
        )));
    }
    params.check_vertex(x)?;
    params.check_vertex(y)?;
    if x == y {
        return Err(Error::SameVertex(*x));
    }
    let sigma = Relabeling::normalizing(x, params);
    let target = sigma.apply(y);
    let walk = if target.last() != 1 {
        insert_then_push(&target, params, false)?
    } else {
        route_closing_one(&target, params)?
    };
    let back = sigma.inverse();
    let vertices = erase_loops(walk).iter().map(|v| back.apply(v)).collect();
    Ok(Path(Walk {
        vertices,
        params: *params,
    }))
}

/// A walk of length exactly `D + r` from `x` to `y` in Γ_Δ(D,−r), for
/// `Δ ≥ D ≥ 2r+3`. `x = y` is allowed.
pub fn reach_walk(x: &Vertex, y: &Vertex, params: &NetworkParams) -> Result<Walk> {
    let (d, r) = (params.dee(), params.r());
    if d < 2 * r + 3 {
        return Err(Error::ParameterDomain(format!(
            "exact-length walks need D ≥ 2r+3, got D = {d}, r = {r}"
        )));
    }
    params.check_vertex(x)?;
    params.check_vertex(y)?;
    let sigma = Relabeling::normalizing(x, params);
    let walk = insert_then_push(&sigma.apply(y), params, true)?;
    debug_assert_eq!(walk.len(), d + r + 1);
    let back = sigma.inverse();
    Ok(Walk {
        vertices: walk.iter().map(|v| back.apply(v)).collect(),
        params: *params,
    })
}

/// Smallest symbol of `pool` that may lead the next vertex after `cur`.
fn pick(cur: &Vertex, pool: &[u8], params: &NetworkParams) -> Option<u8> {
    pool.iter()
        .copied()
        .filter(|&s| can_lead(cur, s, params))
        .min()
}

/// From the origin, insert `r` (or `r + 1` when the target ends in 1 and an
/// exact length is wanted) dead-angle-avoiding symbols taken from the front
/// of the target, then bring the target's symbols to the front from the
/// last one backwards.
///
/// For a target ending in 1 the final symbol is never pushed: every inserted
/// symbol sits left of 1 and is pushed again later, so 1 drifts to the last
/// position without being bumped out.
fn insert_then_push(target: &Vertex, params: &NetworkParams, exact: bool) -> Result<Vec<Vertex>> {
    let (d, r) = (params.dee(), params.r());
    let ts = target.as_slice();
    let ends_in_one = ts[d - 1] == 1;
    // ends_in_one only reaches here with exact = true
    let (mut pool, inserts, pushes): (Vec<u8>, usize, &[u8]) = if ends_in_one {
        (ts[..d - r - 2].to_vec(), r + 1, &ts[..d - 1])
    } else {
        (ts[..d - r - 1].to_vec(), r, ts)
    };
    debug_assert!(exact || !ends_in_one);
    let mut cur = standard_origin(params);
    let mut walk = vec![cur];
    for _ in 0..inserts {
        let s = match pick(&cur, &pool, params) {
            Some(s) => s,
            // D = 2r+2 can exhaust the pool; any symbol outside the target's
            // last r+1 positions keeps the push phase valid
            None if !exact => {
                let wide: Vec<u8> = (1..=params.max_symbol())
                    .filter(|s| !ts[d - r - 1..].contains(s))
                    .collect();
                pick(&cur, &wide, params).ok_or_else(|| {
                    Error::ConstructionFailed(format!("no insertable symbol at {cur}"))
                })?
            }
            None => {
                return Err(Error::ConstructionFailed(format!(
                    "no insertable symbol at {cur} towards {target}"
                )))
            }
        };
        pool.retain(|&p| p != s);
        cur = compose_unchecked(s, &cur);
        walk.push(cur);
    }
    push_suffix(&mut walk, pushes, params)?;
    if *walk.last().unwrap() != *target {
        return Err(Error::ConstructionFailed(format!(
            "push phase ended at {} instead of {target}",
            walk.last().unwrap()
        )));
    }
    Ok(walk)
}

/// Brings `symbols` to the front from the last one backwards.
fn push_suffix(walk: &mut Vec<Vertex>, symbols: &[u8], params: &NetworkParams) -> Result<()> {
    let mut cur = *walk.last().unwrap();
    for &s in symbols.iter().rev() {
        if !can_lead(&cur, s, params) {
            return Err(Error::ConstructionFailed(format!(
                "{s} lies in the dead angle of {cur}"
            )));
        }
        cur = compose_unchecked(s, &cur);
        walk.push(cur);
    }
    Ok(())
}

/// Target ending in 1: insert up to `r` symbols from `x_1 … x_{D−r−2}`, then
/// push `x_{D−1}, …, x_1`. Uses `r` insertions when possible and backs off to
/// fewer when `D = 2r+2` leaves no room.
fn route_closing_one(target: &Vertex, params: &NetworkParams) -> Result<Vec<Vertex>> {
    let (d, r) = (params.dee(), params.r());
    let ts = target.as_slice();
    let mut pool: Vec<u8> = ts[..d - r - 2].to_vec();
    pool.sort_unstable();
    let origin = standard_origin(params);
    for inserts in (0..=r).rev() {
        let mut walk = vec![origin];
        if search_inserts(&mut walk, &pool, inserts, &ts[..d - 1], target, params) {
            return Ok(walk);
        }
    }
    Err(Error::ConstructionFailed(format!(
        "no restricted route to {target}"
    )))
}

fn search_inserts(
    walk: &mut Vec<Vertex>,
    pool: &[u8],
    remaining: usize,
    pushes: &[u8],
    target: &Vertex,
    params: &NetworkParams,
) -> bool {
    let cur = *walk.last().unwrap();
    if remaining == 0 {
        let base = walk.len();
        if push_suffix(walk, pushes, params).is_ok() && walk.last() == Some(target) {
            return true;
        }
        walk.truncate(base);
        return false;
    }
    for &s in pool {
        if walk.iter().any(|v| v.first() == s) || !can_lead(&cur, s, params) {
            continue;
        }
        walk.push(compose_unchecked(s, &cur));
        if search_inserts(walk, pool, remaining - 1, pushes, target, params) {
            return true;
        }
        walk.pop();
    }
    false
}

/// Cuts every cycle out of a walk, leaving a path with the same endpoints.
fn erase_loops(walk: Vec<Vertex>) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = Vec::with_capacity(walk.len());
    let mut at: HashMap<Vertex, usize> = HashMap::new();
    for v in walk {
        if let Some(&i) = at.get(&v) {
            for dropped in out.drain(i + 1..) {
                at.remove(&dropped);
            }
        } else {
            at.insert(v, out.len());
            out.push(v);
        }
    }
    out
}

/// `x_{D−1} = 1`, `x_D = D` and some earlier symbol exceeds `D`.
pub fn is_remote(x: &Vertex, params: &NetworkParams) -> bool {
    let d = params.dee();
    let xs = x.as_slice();
    xs.len() == d
        && d >= 3
        && xs[d - 2] == 1
        && xs[d - 1] as usize == d
        && xs[..d - 2].iter().any(|&s| s as usize > d)
}

/// A remote vertex together with its oracle distance from the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemoteWitness {
    pub vertex: Vertex,
    pub distance: Option<usize>,
    pub expected: usize,
}

impl RemoteWitness {
    pub fn holds(&self) -> bool {
        self.distance == Some(self.expected)
    }
}

/// The remote vertex `(D+1) 2 3 ⋯ (D−2) 1 D` and its breadth-first
/// distance from the origin, which should equal `D + r`.
pub fn remote_distance_witness(params: &NetworkParams) -> Result<RemoteWitness> {
    let (d, r) = (params.dee(), params.r());
    if d < 2 * r + 2 || d < 3 {
        return Err(Error::ParameterDomain(format!(
            "remote witnesses need D ≥ max(3, 2r+2), got D = {d}, r = {r}"
        )));
    }
    let mut syms = vec![d as u8 + 1];
    syms.extend(2..=(d as u8 - 2));
    syms.extend([1, d as u8]);
    let vertex = params.vertex(&syms)?;
    let table = oracle::bfs_distances(&standard_origin(params), params)?;
    Ok(RemoteWitness {
        vertex,
        distance: table.get(&vertex),
        expected: d + r,
    })
}
