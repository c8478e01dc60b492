//! Vertices, arc operations and neighborhoods of the cycle prefix digraph
//! Γ_Δ(D) and its link-deleted variants Γ_Δ(D,−r).
//!
//! A vertex is a sequence of `D` distinct symbols drawn from the alphabet
//! `1..=Δ+1`. Symbols are kept one-based everywhere so that vertices print
//! the way they are usually written (`1234`, `5214`, ...). Positions passed
//! to [`rotate`] are one-based as well: `rotate(x, k)` moves `x_k` to the
//! front.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Longest supported sequence length `D`.
pub const MAX_LEN: usize = 16;

/// Largest supported degree `Δ` (the alphabet `1..=Δ+1` must fit in a `u8`).
pub const MAX_DELTA: usize = 254;

/// Parameters `(Δ, D, r)` of the digraph Γ_Δ(D,−r).
///
/// `r = 0` is the full cycle prefix digraph. Validation enforces
/// `Δ ≥ D ≥ 2` and `r ≤ D − 1`; the stronger conditions needed by the
/// diameter and reachability constructions are checked by those operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NetworkParams {
    delta: usize,
    dee: usize,
    r: usize,
}

impl NetworkParams {
    pub fn new(delta: usize, dee: usize, r: usize) -> Result<Self> {
        if dee < 2 {
            return Err(Error::InvalidParams(format!(
                "D = {dee} must be at least 2"
            )));
        }
        if delta < dee {
            return Err(Error::InvalidParams(format!(
                "Δ = {delta} is smaller than D = {dee}"
            )));
        }
        if dee > MAX_LEN {
            return Err(Error::InvalidParams(format!(
                "D = {dee} exceeds the supported maximum {MAX_LEN}"
            )));
        }
        if delta > MAX_DELTA {
            return Err(Error::InvalidParams(format!(
                "Δ = {delta} exceeds the supported maximum {MAX_DELTA}"
            )));
        }
        if r >= dee {
            return Err(Error::InvalidParams(format!(
                "r = {r} must be below D = {dee}"
            )));
        }
        Ok(Self { delta, dee, r })
    }

    /// Parameters of the full digraph Γ_Δ(D).
    pub fn full(delta: usize, dee: usize) -> Result<Self> {
        Self::new(delta, dee, 0)
    }

    pub fn delta(&self) -> usize {
        self.delta
    }

    pub fn dee(&self) -> usize {
        self.dee
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Same `Δ` and `D` with a different number of deleted rotations.
    pub fn with_r(&self, r: usize) -> Result<Self> {
        Self::new(self.delta, self.dee, r)
    }

    /// Largest symbol of the alphabet, `Δ + 1`.
    pub fn max_symbol(&self) -> u8 {
        (self.delta + 1) as u8
    }

    pub fn out_degree(&self) -> usize {
        self.delta - self.r
    }

    pub fn vertex_count(&self) -> u64 {
        vertex_count(self)
    }

    pub fn arc_count(&self) -> u64 {
        self.vertex_count() * self.out_degree() as u64
    }

    /// Checks that `x` is a vertex of this digraph.
    pub fn check_vertex(&self, x: &Vertex) -> Result<()> {
        if x.len() != self.dee {
            return Err(Error::InvalidVertex(format!(
                "{x} has length {} but D = {}",
                x.len(),
                self.dee
            )));
        }
        let max = self.max_symbol();
        match x.iter().find(|&&s| s > max) {
            Some(&symbol) => Err(Error::SymbolOutOfAlphabet { symbol, max }),
            None => Ok(()),
        }
    }

    /// Builds a vertex from symbols, validating it against these parameters.
    pub fn vertex(&self, symbols: &[u8]) -> Result<Vertex> {
        let v = Vertex::from_symbols(symbols)?;
        self.check_vertex(&v)?;
        Ok(v)
    }

    pub fn parse_vertex(&self, text: &str) -> Result<Vertex> {
        let v: Vertex = text.parse()?;
        self.check_vertex(&v)?;
        Ok(v)
    }

    /// Text form of a vertex: a plain digit string when the alphabet fits in
    /// single digits, hyphen separated symbols otherwise.
    pub fn format_vertex(&self, x: &Vertex) -> String {
        x.to_text(self.delta + 1 > 9)
    }

    fn check_symbol(&self, symbol: u8) -> Result<()> {
        let max = self.max_symbol();
        if symbol == 0 || symbol > max {
            Err(Error::SymbolOutOfAlphabet { symbol, max })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for NetworkParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.r == 0 {
            write!(f, "Γ_{}({})", self.delta, self.dee)
        } else {
            write!(f, "Γ_{}({},−{})", self.delta, self.dee, self.r)
        }
    }
}

/// A D-permutation: `D` pairwise distinct nonzero symbols.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    len: u8,
    syms: [u8; MAX_LEN],
}

impl Vertex {
    pub fn from_symbols(symbols: &[u8]) -> Result<Self> {
        if symbols.is_empty() || symbols.len() > MAX_LEN {
            return Err(Error::InvalidVertex(format!(
                "length {} outside 1..={MAX_LEN}",
                symbols.len()
            )));
        }
        let mut seen = [false; 256];
        for &s in symbols {
            if s == 0 {
                return Err(Error::InvalidVertex(
                    "symbol 0 is not in the alphabet".into(),
                ));
            }
            if std::mem::replace(&mut seen[s as usize], true) {
                return Err(Error::InvalidVertex(format!("symbol {s} repeated")));
            }
        }
        Ok(Self::from_distinct(symbols))
    }

    /// Caller guarantees distinct nonzero symbols and a valid length.
    pub(crate) fn from_distinct(symbols: &[u8]) -> Self {
        let mut syms = [0u8; MAX_LEN];
        syms[..symbols.len()].copy_from_slice(symbols);
        Self {
            len: symbols.len() as u8,
            syms,
        }
    }

    pub fn as_slice(&self) -> &[u8] {
        &self.syms[..self.len as usize]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, u8> {
        self.as_slice().iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn first(&self) -> u8 {
        self.syms[0]
    }

    pub fn last(&self) -> u8 {
        self.syms[self.len as usize - 1]
    }

    /// Zero-based position of `symbol`, if present.
    pub fn position(&self, symbol: u8) -> Option<usize> {
        self.as_slice().iter().position(|&s| s == symbol)
    }

    pub fn contains(&self, symbol: u8) -> bool {
        self.position(symbol).is_some()
    }

    pub fn to_text(&self, hyphenated: bool) -> String {
        let parts: Vec<String> = self.iter().map(|s| s.to_string()).collect();
        if hyphenated {
            parts.join("-")
        } else {
            parts.concat()
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(self.iter().any(|&s| s > 9)))
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Vertex({self})")
    }
}

impl FromStr for Vertex {
    type Err = Error;

    /// Accepts `"5214"` (one digit per symbol) and `"10-3-1-2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let symbols: Vec<u8> = if s.contains('-') {
            s.split('-')
                .map(|p| {
                    p.parse::<u8>()
                        .map_err(|_| Error::InvalidVertex(format!("bad symbol {p:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::InvalidVertex(format!("bad symbol {c:?} in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Vertex::from_symbols(&symbols)
    }
}

/// The arc-generating operation that leads from one vertex to the next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArcOp {
    /// `R_k`: move the k-th symbol (one-based) to the front.
    Rotation(usize),
    /// `S_y`: prepend a symbol absent from the vertex, dropping the last one.
    Shift(u8),
}

impl ArcOp {
    pub fn kind(&self) -> &'static str {
        match self {
            ArcOp::Rotation(_) => "rotation",
            ArcOp::Shift(_) => "shift",
        }
    }
}

impl fmt::Display for ArcOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcOp::Rotation(k) => write!(f, "R{k}"),
            ArcOp::Shift(y) => write!(f, "S{y}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Arc {
    pub src: Vertex,
    pub dst: Vertex,
    pub op: ArcOp,
}

/// The standard origin `1 2 ⋯ D`.
pub fn standard_origin(params: &NetworkParams) -> Vertex {
    let syms: Vec<u8> = (1..=params.dee as u8).collect();
    Vertex::from_distinct(&syms)
}

/// `R_k(x) = x_k x_1 ⋯ x_{k−1} x_{k+1} ⋯ x_D`.
pub fn rotate(x: &Vertex, k: usize) -> Result<Vertex> {
    if k < 2 || k > x.len() {
        return Err(Error::IndexOutOfRange { k, len: x.len() });
    }
    let mut out = *x;
    out.syms[..k].rotate_right(1);
    Ok(out)
}

/// `S_y(x) = y x_1 ⋯ x_{D−1}`.
pub fn shift(x: &Vertex, y: u8, params: &NetworkParams) -> Result<Vertex> {
    params.check_symbol(y)?;
    if x.contains(y) {
        return Err(Error::SymbolPresent {
            symbol: y,
            vertex: *x,
        });
    }
    Ok(shift_unchecked(x, y))
}

fn shift_unchecked(x: &Vertex, y: u8) -> Vertex {
    let mut out = *x;
    let n = x.len();
    out.syms.copy_within(0..n - 1, 1);
    out.syms[0] = y;
    out
}

/// `i ∘ x`: bring `i` to the front by a rotation when it occurs in `x`,
/// otherwise shift it in. `x_1 ∘ x = x`.
pub fn compose(i: u8, x: &Vertex, params: &NetworkParams) -> Result<Vertex> {
    params.check_symbol(i)?;
    Ok(compose_unchecked(i, x))
}

pub(crate) fn compose_unchecked(i: u8, x: &Vertex) -> Vertex {
    match x.position(i) {
        Some(0) => *x,
        Some(p) => {
            let mut out = *x;
            out.syms[..=p].rotate_right(1);
            out
        }
        None => shift_unchecked(x, i),
    }
}

/// The operation `i ∘ x` performs, or `None` when `i = x_1`.
pub fn compose_op(i: u8, x: &Vertex) -> Option<ArcOp> {
    match x.position(i) {
        Some(0) => None,
        Some(p) => Some(ArcOp::Rotation(p + 1)),
        None => Some(ArcOp::Shift(i)),
    }
}

/// Whether `z` may lead the next vertex in Γ_Δ(D,−r), i.e. it lies outside
/// the dead angle and inside the alphabet.
pub(crate) fn can_lead(x: &Vertex, z: u8, params: &NetworkParams) -> bool {
    z >= 1 && z <= params.max_symbol() && !x.as_slice()[..=params.r].contains(&z)
}

/// Out-arcs of `x` in Γ_Δ(D,−r): rotations `R_k` for `r+2 ≤ k ≤ D` in
/// increasing `k`, then shifts in increasing symbol order.
pub fn out_arcs(x: &Vertex, params: &NetworkParams) -> Vec<Arc> {
    let mut arcs = Vec::with_capacity(params.out_degree());
    for k in params.r + 2..=x.len() {
        let mut dst = *x;
        dst.syms[..k].rotate_right(1);
        arcs.push(Arc {
            src: *x,
            dst,
            op: ArcOp::Rotation(k),
        });
    }
    for y in 1..=params.max_symbol() {
        if !x.contains(y) {
            arcs.push(Arc {
                src: *x,
                dst: shift_unchecked(x, y),
                op: ArcOp::Shift(y),
            });
        }
    }
    arcs
}

pub fn out_neighbors(x: &Vertex, params: &NetworkParams) -> Vec<Vertex> {
    out_arcs(x, params).into_iter().map(|a| a.dst).collect()
}

/// The operation realizing the arc `src → dst` in Γ_Δ(D,−r), if that arc exists.
pub fn arc_op(src: &Vertex, dst: &Vertex, params: &NetworkParams) -> Option<ArcOp> {
    let z = dst.first();
    if !can_lead(src, z, params) {
        return None;
    }
    let op = compose_op(z, src)?;
    (compose_unchecked(z, src) == *dst).then_some(op)
}

/// `Y_j` for the standard origin `Y = 1 2 ⋯ D`: `2 3 ⋯ j 1 (j+1) ⋯ D` for
/// `2 ≤ j ≤ D` and `2 3 ⋯ D j` for `j > D`. `Y_1` is the origin itself.
pub fn origin_in_neighbor(j: usize, dee: usize) -> Vertex {
    let mut syms: Vec<u8> = Vec::with_capacity(dee);
    if j <= 1 {
        syms.extend(1..=dee as u8);
    } else if j <= dee {
        syms.extend(2..=j as u8);
        syms.push(1);
        syms.extend(j as u8 + 1..=dee as u8);
    } else {
        syms.extend(2..=dee as u8);
        syms.push(j as u8);
    }
    Vertex::from_distinct(&syms)
}

/// In-neighbors of `y` in Γ_Δ(D), listed as `Y_2, …, Y_{Δ+1}` after
/// conjugating by the relabeling that sends `y` to the standard origin.
pub fn in_neighbors(y: &Vertex, params: &NetworkParams) -> Result<Vec<Vertex>> {
    if params.r != 0 {
        return Err(Error::ParameterDomain(
            "in-neighbor lists are only provided for r = 0".into(),
        ));
    }
    params.check_vertex(y)?;
    let back = Relabeling::normalizing(y, params).inverse();
    Ok((2..=params.delta + 1)
        .map(|j| back.apply(&origin_in_neighbor(j, params.dee)))
        .collect())
}

/// The dead angle `x_1 ⋯ x_{r+1}` of `x` in Γ_Δ(D,−r).
pub fn dead_angle(x: &Vertex, r: usize) -> Result<&[u8]> {
    if r >= x.len() {
        return Err(Error::IndexOutOfRange {
            k: r + 1,
            len: x.len(),
        });
    }
    Ok(&x.as_slice()[..=r])
}

/// `(Δ+1)·Δ·⋯·(Δ+2−D)`.
pub fn vertex_count(params: &NetworkParams) -> u64 {
    let n = params.delta as u64 + 1;
    (0..params.dee as u64).map(|i| n - i).product()
}

/// A permutation of the alphabet `1..=n`, applied symbol-wise to vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    // images[s] = σ(s); index 0 unused
    images: Vec<u8>,
}

impl Relabeling {
    /// `images[s − 1]` is the image of symbol `s`.
    pub fn new(images: &[u8]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &s in images {
            let s = s as usize;
            if s == 0 || s > n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::NonBijective(n));
            }
        }
        let mut table = Vec::with_capacity(n + 1);
        table.push(0);
        table.extend_from_slice(images);
        Ok(Self { images: table })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..=n as u8).collect(),
        }
    }

    /// The relabeling with `σ(y_j) = j` that maps `y` onto the standard
    /// origin; symbols absent from `y` go to `D+1, D+2, …` in increasing order.
    pub fn normalizing(y: &Vertex, params: &NetworkParams) -> Self {
        let n = params.delta + 1;
        let mut images = vec![0u8; n + 1];
        for (j, &s) in y.iter().enumerate() {
            images[s as usize] = j as u8 + 1;
        }
        let absent = images.iter_mut().skip(1).filter(|i| **i == 0);
        for (next, image) in (y.len() as u8 + 1..).zip(absent) {
            *image = next;
        }
        Self { images }
    }

    pub fn alphabet_size(&self) -> usize {
        self.images.len() - 1
    }

    pub fn image(&self, s: u8) -> u8 {
        self.images[s as usize]
    }

    pub fn apply(&self, x: &Vertex) -> Vertex {
        let mut out = *x;
        for s in out.syms[..x.len()].iter_mut() {
            *s = self.images[*s as usize];
        }
        out
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.images.len()];
        for (s, &t) in self.images.iter().enumerate().skip(1) {
            inv[t as usize] = s as u8;
        }
        Self { images: inv }
    }
}

pub fn relabel(x: &Vertex, sigma: &Relabeling) -> Vertex {
    sigma.apply(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Vertex {
        s.parse().unwrap()
    }

    fn p(delta: usize, dee: usize, r: usize) -> NetworkParams {
        NetworkParams::new(delta, dee, r).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(NetworkParams::new(3, 4, 0).is_err());
        assert!(NetworkParams::new(4, 1, 0).is_err());
        assert!(NetworkParams::new(4, 4, 4).is_err());
        assert!(NetworkParams::new(4, 4, 3).is_ok());
        assert_eq!(p(4, 4, 1).out_degree(), 3);
    }

    #[test]
    fn origin() {
        assert_eq!(standard_origin(&p(4, 4, 0)), v("1234"));
        assert_eq!(standard_origin(&p(5, 4, 0)), v("1234"));
        assert_eq!(standard_origin(&p(7, 5, 0)), v("12345"));
    }

    #[test]
    fn rotations() {
        assert_eq!(rotate(&v("1234"), 4).unwrap(), v("4123"));
        assert_eq!(rotate(&v("1234"), 2).unwrap(), v("2134"));
        assert_eq!(rotate(&v("47285136"), 4).unwrap(), v("84725136"));
        assert!(matches!(
            rotate(&v("1234"), 1),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            rotate(&v("1234"), 5),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn shifts() {
        let g = p(4, 4, 0);
        assert_eq!(shift(&v("1234"), 5, &g).unwrap(), v("5123"));
        assert_eq!(shift(&v("4123"), 5, &g).unwrap(), v("5412"));
        assert!(matches!(
            shift(&v("1234"), 4, &g),
            Err(Error::SymbolPresent { .. })
        ));
        assert!(matches!(
            shift(&v("1234"), 6, &g),
            Err(Error::SymbolOutOfAlphabet { .. })
        ));
    }

    #[test]
    fn compose_cases() {
        let g = p(5, 4, 0);
        assert_eq!(compose(1, &v("1234"), &g).unwrap(), v("1234"));
        assert_eq!(compose(4, &v("1325"), &g).unwrap(), v("4132"));
        assert_eq!(compose(6, &v("1325"), &g).unwrap(), v("6132"));
        assert!(compose(7, &v("1325"), &g).is_err());
    }

    #[test]
    fn neighbor_lists() {
        let mut n = out_neighbors(&v("1234"), &p(4, 4, 0));
        n.sort();
        assert_eq!(n, vec![v("2134"), v("3124"), v("4123"), v("5123")]);
        let mut n = out_neighbors(&v("1234"), &p(4, 4, 1));
        n.sort();
        assert_eq!(n, vec![v("3124"), v("4123"), v("5123")]);
    }

    #[test]
    fn in_neighbor_lists() {
        let m = in_neighbors(&v("1234"), &p(5, 4, 0)).unwrap();
        assert_eq!(m.len(), 5);
        assert!(m.contains(&v("2134")));
        assert!(m.contains(&v("2346")));
        assert_eq!(in_neighbors(&v("1234"), &p(4, 4, 0)).unwrap().len(), 4);
        assert!(in_neighbors(&v("1234"), &p(4, 4, 1)).is_err());
    }

    #[test]
    fn dead_angles() {
        assert_eq!(dead_angle(&v("1234"), 0).unwrap(), &[1]);
        assert_eq!(dead_angle(&v("1234"), 1).unwrap(), &[1, 2]);
        assert!(dead_angle(&v("1234"), 4).is_err());
    }

    #[test]
    fn relabelings() {
        let id = Relabeling::identity(5);
        assert_eq!(relabel(&v("1234"), &id), v("1234"));
        assert!(Relabeling::new(&[1, 1, 2]).is_err());
        assert!(Relabeling::new(&[1, 4, 2]).is_err());
        let g = p(5, 4, 0);
        let y = v("5214");
        let sigma = Relabeling::normalizing(&y, &g);
        assert_eq!(sigma.apply(&y), v("1234"));
        assert_eq!(sigma.inverse().apply(&v("1234")), y);
        // 3 and 6 are absent from y and go to 5, 6 in order
        assert_eq!(sigma.image(3), 5);
        assert_eq!(sigma.image(6), 6);
    }

    #[test]
    fn counts() {
        assert_eq!(vertex_count(&p(4, 4, 0)), 120);
        assert_eq!(vertex_count(&p(5, 4, 0)), 360);
        assert_eq!(vertex_count(&p(2, 2, 0)), 6);
    }

    #[test]
    fn parse_and_format() {
        let g = p(10, 4, 0);
        let x = g.parse_vertex("10-3-1-2").unwrap();
        assert_eq!(g.format_vertex(&x), "10-3-1-2");
        assert_eq!(p(4, 4, 0).format_vertex(&v("5214")), "5214");
        assert_eq!(g.format_vertex(&v("5214")), "5-2-1-4");
        assert!("1123".parse::<Vertex>().is_err());
        assert!("1203".parse::<Vertex>().is_err());
        assert!(p(4, 4, 0).parse_vertex("12345").is_err());
        assert!(p(4, 4, 0).parse_vertex("1236").is_err());
    }

    #[test]
    fn arc_ops_identify_arcs() {
        let g = p(4, 4, 1);
        assert_eq!(arc_op(&v("1234"), &v("4123"), &g), Some(ArcOp::Rotation(4)));
        assert_eq!(arc_op(&v("1234"), &v("5123"), &g), Some(ArcOp::Shift(5)));
        assert_eq!(arc_op(&v("1234"), &v("2134"), &g), None);
        assert_eq!(
            arc_op(&v("1234"), &v("2134"), &p(4, 4, 0)),
            Some(ArcOp::Rotation(2))
        );
        assert_eq!(arc_op(&v("1234"), &v("5124"), &g), None);
    }
}
