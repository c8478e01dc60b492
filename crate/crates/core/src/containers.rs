//! Containers of width Δ and length at most `D + 2` in Γ_Δ(D).
//!
//! With the destination relabeled to the standard origin `Y = 1 2 ⋯ D` and
//! `k = d(X, Y)`, every out-neighbor `Z = i ∘ X` is paired with an
//! in-neighbor `θ(Z) = Y_j` of the origin. The unique geodesics `Z ⇝ θ(Z)`
//! are pairwise disjoint, so `X → Z ⇝ θ(Z) → Y` gives the container.
//!
//! The pairing depends on whether `x_1 = 1`, `x_1 = k + 1`, or neither.
//! Before pairing, symbols above `D` are renamed so that those occurring in
//! `X` read `D+1, D+2, …` from left to right; this fixes `1..=D` and hence
//! the origin and its in-neighbors up to index renaming.
//!
//! [`CharTriple`] computes the statistics `(α, β, β(·,1))` that separate the
//! interiors of different legs. They are diagnostics: validity is decided by
//! [`verify_container`](crate::oracle::verify_container).

use crate::error::{Error, Result};
use crate::oracle::{Container, Network};
use crate::routing::{geodesic, header_len};
use crate::topology::{
    compose_unchecked, origin_in_neighbor, standard_origin, NetworkParams, Relabeling, Vertex,
};

/// First symbol of `x` outside `{k+1, …, D+1}`.
pub fn alpha(x: &Vertex, k: usize) -> Result<u8> {
    let d = x.len();
    x.iter()
        .copied()
        .find(|&s| !(k + 1..=d + 1).contains(&(s as usize)))
        .ok_or(Error::UndefinedAlpha { vertex: *x, k })
}

/// `min(D+2, smallest s > k that lies right of i in x or is absent from x)`.
pub fn beta(x: &Vertex, i: u8, k: usize) -> usize {
    let d = x.len();
    let right: &[u8] = match x.position(i) {
        Some(p) => &x.as_slice()[p + 1..],
        None => &[],
    };
    (k + 1..=d + 1)
        .find(|&s| {
            let s = s as u8;
            right.contains(&s) || !x.contains(s)
        })
        .unwrap_or(d + 2)
}

/// `(α(v), β(v), β(v, 1))` relative to the standard origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharTriple {
    pub alpha: u8,
    pub beta: usize,
    pub beta1: usize,
}

pub fn char_triple(v: &Vertex, params: &NetworkParams) -> Result<CharTriple> {
    params.check_vertex(v)?;
    let origin = standard_origin(params);
    if *v == origin {
        return Err(Error::SameVertex(*v));
    }
    let k = header_len(v, &origin);
    let a = alpha(v, k)?;
    Ok(CharTriple {
        alpha: a,
        beta: beta(v, a, k),
        beta1: beta(v, 1, k),
    })
}

/// Which pairing rule applies to a (normalized) source.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PairingCase {
    /// `x_1 = 1`
    LeadsWithOne,
    /// `x_1 = k + 1`
    LeadsWithSuccessor,
    /// every other source; normalization forces `2 ≤ x_1 < k`
    General,
}

/// Renames symbols above `D` so that those in `x` appear as `D+1, D+2, …`
/// from left to right; the rest follow in increasing order.
pub fn big_symbol_normalizer(x: &Vertex, params: &NetworkParams) -> Relabeling {
    let d = params.dee();
    let n = params.delta() + 1;
    let mut images = vec![0u8; n];
    for s in 1..=d {
        images[s - 1] = s as u8;
    }
    let mut next = d as u8 + 1;
    for &s in x.iter().filter(|&&s| s as usize > d) {
        images[s as usize - 1] = next;
        next += 1;
    }
    for s in d + 1..=n {
        if images[s - 1] == 0 {
            images[s - 1] = next;
            next += 1;
        }
    }
    Relabeling::new(&images).expect("permutation by construction")
}

/// A source already normalized, with its distance and pairing statistics.
struct Normalized {
    x: Vertex,
    k: usize,
    beta1: usize,
    case: PairingCase,
}

impl Normalized {
    fn new(x: Vertex) -> Self {
        let d = x.len();
        let origin = Vertex::from_symbols(&(1..=d as u8).collect::<Vec<_>>()).unwrap();
        let k = header_len(&x, &origin);
        let case = match x.first() as usize {
            1 => PairingCase::LeadsWithOne,
            f if f == k + 1 => PairingCase::LeadsWithSuccessor,
            _ => PairingCase::General,
        };
        Self {
            x,
            k,
            beta1: beta(&x, 1, k),
            case,
        }
    }

    /// Index `j` of `θ(i ∘ x) = Y_j`.
    fn theta(&self, i: usize) -> usize {
        let (k, b1) = (self.k, self.beta1);
        match self.case {
            PairingCase::LeadsWithOne => i,
            PairingCase::LeadsWithSuccessor => match i {
                1 => k,
                _ if i < k => i,
                _ if i == k => b1 - 1,
                _ if i < b1 => i - 1,
                _ => i,
            },
            PairingCase::General => match i {
                1 => b1 - 1,
                _ if i < k => i,
                // α(x) = x_1 here
                _ if i == k => self.x.first() as usize,
                _ if i < b1 => i - 1,
                _ => i,
            },
        }
    }

    /// Length of the geodesic `i ∘ x ⇝ θ(i ∘ x)`.
    fn leg_distance(&self, i: usize) -> usize {
        let (k, b1, d) = (self.k, self.beta1, self.x.len());
        match self.case {
            PairingCase::LeadsWithOne => match i {
                _ if i < k => k,
                _ if i == k => k - 2,
                _ if i <= d => i - 2,
                _ => d - 1,
            },
            PairingCase::LeadsWithSuccessor => match i {
                1 => k - 1,
                _ if i < k => k,
                _ if i == k => k - 2,
                _ if i < b1 => i - 1,
                _ if i <= d + 1 => i - 2,
                _ => d - 1,
            },
            PairingCase::General => match i {
                1 => b1 - 2,
                _ if i < k => k,
                _ if i == k => k - 1,
                _ if i < b1 => i - 1,
                _ if i <= d + 1 => i - 2,
                _ => d - 1,
            },
        }
    }
}

/// Normalizes `x` (relative to the origin) and checks that `i` is in θ's domain.
fn prepare(x: &Vertex, i: u8, params: &NetworkParams) -> Result<(Normalized, Relabeling, usize)> {
    if params.r() != 0 {
        return Err(Error::ParameterDomain(
            "containers are built in Γ_Δ(D), r = 0".into(),
        ));
    }
    params.check_vertex(x)?;
    let origin = standard_origin(params);
    if *x == origin {
        return Err(Error::SameVertex(*x));
    }
    if i == 0 || i > params.max_symbol() {
        return Err(Error::SymbolOutOfAlphabet {
            symbol: i,
            max: params.max_symbol(),
        });
    }
    if i == x.first() {
        return Err(Error::ThetaDomain {
            vertex: *x,
            symbol: i,
            reason: "i = x_1 does not give a neighbor",
        });
    }
    if compose_unchecked(i, x) == origin {
        return Err(Error::ThetaDomain {
            vertex: *x,
            symbol: i,
            reason: "i ∘ x is the destination",
        });
    }
    let tau = big_symbol_normalizer(x, params);
    let ni = tau.image(i) as usize;
    Ok((Normalized::new(tau.apply(x)), tau, ni))
}

/// Pairing case of `x` after normalization.
pub fn pairing_case(x: &Vertex, params: &NetworkParams) -> Result<PairingCase> {
    params.check_vertex(x)?;
    let tau = big_symbol_normalizer(x, params);
    Ok(Normalized::new(tau.apply(x)).case)
}

/// Index `j` such that `θ(i ∘ x) = Y_j`, toward the standard origin.
pub fn theta(x: &Vertex, i: u8, params: &NetworkParams) -> Result<usize> {
    let (norm, tau, ni) = prepare(x, i, params)?;
    let j = norm.theta(ni);
    Ok(if j > params.dee() {
        tau.inverse().image(j as u8) as usize
    } else {
        j
    })
}

/// Predicted length of the geodesic from `i ∘ x` to `θ(i ∘ x)`.
pub fn leg_distance(x: &Vertex, i: u8, params: &NetworkParams) -> Result<usize> {
    let (norm, _, ni) = prepare(x, i, params)?;
    Ok(norm.leg_distance(ni))
}

/// Δ internally disjoint paths from `x` to `y`, each of length at most `D + 2`.
///
/// Paths are ordered by the symbol of their first hop.
pub fn container(x: &Vertex, y: &Vertex, params: &NetworkParams) -> Result<Container> {
    if params.r() != 0 {
        return Err(Error::ParameterDomain(
            "containers are built in Γ_Δ(D), r = 0".into(),
        ));
    }
    params.check_vertex(x)?;
    params.check_vertex(y)?;
    if x == y {
        return Err(Error::SameVertex(*x));
    }
    let to_origin = Relabeling::normalizing(y, params);
    let moved = to_origin.apply(x);
    let tau = big_symbol_normalizer(&moved, params);
    let norm = Normalized::new(tau.apply(&moved));
    let origin = standard_origin(params);

    let back_tau = tau.inverse();
    let back_origin = to_origin.inverse();
    let back = |v: &Vertex| back_origin.apply(&back_tau.apply(v));

    let mut legs: Vec<(u8, Vec<Vertex>)> = Vec::with_capacity(params.delta());
    for i in 1..=params.max_symbol() {
        if i == norm.x.first() {
            continue;
        }
        let z = compose_unchecked(i, &norm.x);
        let mut path = vec![norm.x];
        if z == origin {
            path.push(origin);
        } else {
            let exit = origin_in_neighbor(norm.theta(i as usize), params.dee());
            path.extend(geodesic(&z, &exit));
            path.push(origin);
        }
        let path: Vec<Vertex> = path.iter().map(back).collect();
        legs.push((path[1].first(), path));
    }
    legs.sort_by_key(|(s, _)| *s);
    Ok(Container {
        src: *x,
        dst: *y,
        paths: legs.into_iter().map(|(_, p)| p).collect(),
    })
}

/// One neighbor `i ∘ X*` checked by [`lower_bound_witness`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessLeg {
    pub symbol: u8,
    pub neighbor: Vertex,
    pub distance: usize,
    pub geodesics: u64,
    pub through_hub: bool,
}

/// The pair `X* = (Δ+1) Δ ⋯ (Δ−D+2)`, `Y = 1 2 ⋯ D` whose wide distance is
/// at least `D + 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundWitness {
    pub x: Vertex,
    pub y: Vertex,
    /// `2 3 ⋯ D (Δ+1)`
    pub hub: Vertex,
    /// `i ∘ X*` for `1 < i < D`.
    pub legs: Vec<WitnessLeg>,
    /// `d(D ∘ X*, Y)`, which must differ from `D`.
    pub last_distance: usize,
    pub ok: bool,
}

/// For `1 < i < D` the neighbor `i ∘ X*` is at distance `D` from the origin
/// and its only geodesic runs through the hub. With at least two such
/// neighbors, any Δ disjoint paths must include one of length `≥ D + 2`.
pub fn lower_bound_witness(params: &NetworkParams) -> Result<LowerBoundWitness> {
    let (delta, d) = (params.delta(), params.dee());
    if d < 4 || params.r() != 0 {
        return Err(Error::ParameterDomain(format!(
            "the lower-bound witness needs D ≥ 4 and r = 0, got {params}"
        )));
    }
    let xs: Vec<u8> = (0..d).map(|j| (delta + 1 - j) as u8).collect();
    let x = params.vertex(&xs)?;
    let y = standard_origin(params);
    let mut hub_syms: Vec<u8> = (2..=d as u8).collect();
    hub_syms.push(delta as u8 + 1);
    let hub = params.vertex(&hub_syms)?;

    let net = Network::build(params)?;
    let target = net.index_of(&y)?;
    let mut legs = Vec::new();
    for i in 2..d as u8 {
        let z = compose_unchecked(i, &x);
        let (dist, counts) = net.geodesic_counts(net.index_of(&z)?);
        let through_hub = geodesic(&z, &y).contains(&hub);
        legs.push(WitnessLeg {
            symbol: i,
            neighbor: z,
            distance: dist[target] as usize,
            geodesics: counts[target],
            through_hub,
        });
    }
    let last_distance = header_len(&compose_unchecked(d as u8, &x), &y);
    let ok = last_distance != d
        && legs
            .iter()
            .all(|l| l.distance == d && l.geodesics == 1 && l.through_hub);
    Ok(LowerBoundWitness {
        x,
        y,
        hub,
        legs,
        last_distance,
        ok,
    })
}
