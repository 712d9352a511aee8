//! Indecomposable objects of the orbit category as oriented edges of the
//! n-gon, the AR-quiver Γ(n), and Hom/Ext vanishing.
//!
//! Hom and Ext are each available through independent formulations
//! ([`HomStrategy`], [`ExtStrategy`]) which must agree; [`OrbitCategory`]
//! tabulates one of them for the enumeration code.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::cyclic::{Polygon, Vertex};
use crate::error::{invalid, Result};

/// An oriented edge `[s, t]` of the n-gon; a loop when `s = t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arc {
    n: u8,
    s: u8,
    t: u8,
}

impl Arc {
    /// Arc from 1-based labels.
    pub fn new(n: usize, s: usize, t: usize) -> Result<Arc> {
        let p = Polygon::new(n)?;
        let s = p.vertex(s)?;
        let t = p.vertex(t)?;
        Ok(Arc::raw(p, s.index(), t.index()))
    }

    /// Arc from 0-based indices. Indices are reduced mod n.
    #[inline]
    pub fn raw(p: Polygon, s: u8, t: u8) -> Arc {
        let n = p.n() as u8;
        Arc {
            n,
            s: s % n,
            t: t % n,
        }
    }

    /// Parses `"i,j"` (1-based).
    pub fn parse(n: usize, text: &str) -> Result<Arc> {
        let mut parts = text.trim().split(',');
        let (Some(a), Some(b), None) = (parts.next(), parts.next(), parts.next()) else {
            return invalid(format!("expected an arc as \"i,j\", got {text:?}"));
        };
        let a: usize = a
            .trim()
            .parse()
            .map_err(|_| crate::Error::InvalidInput(format!("bad vertex in {text:?}")))?;
        let b: usize = b
            .trim()
            .parse()
            .map_err(|_| crate::Error::InvalidInput(format!("bad vertex in {text:?}")))?;
        Arc::new(n, a, b)
    }

    #[inline]
    pub fn polygon(self) -> Polygon {
        Polygon::new(self.n as usize).expect("arc carries a valid polygon")
    }

    #[inline]
    pub fn n(self) -> usize {
        self.n as usize
    }

    /// 0-based source.
    #[inline]
    pub fn s(self) -> u8 {
        self.s
    }

    /// 0-based target.
    #[inline]
    pub fn t(self) -> u8 {
        self.t
    }

    pub fn source(self) -> Vertex {
        self.polygon().vertex(self.s as usize + 1).unwrap()
    }

    pub fn target(self) -> Vertex {
        self.polygon().vertex(self.t as usize + 1).unwrap()
    }

    #[inline]
    pub fn is_loop(self) -> bool {
        self.s == self.t
    }

    /// Dense index `s * n + t`, in `0..n²`.
    #[inline]
    pub fn index(self) -> usize {
        self.s as usize * self.n() + self.t as usize
    }

    pub fn from_index(p: Polygon, index: usize) -> Arc {
        let n = p.n();
        Arc::raw(p, (index / n) as u8, (index % n) as u8)
    }

    /// `[i, j] ↦ [i - k, j - k]`.
    pub fn rotate(self, k: isize) -> Arc {
        let p = self.polygon();
        Arc::raw(p, p.shift(self.s, -k), p.shift(self.t, -k))
    }

    /// The AR-translate, a one-step anticlockwise rotation.
    pub fn tau(self) -> Arc {
        self.rotate(1)
    }

    pub fn tau_inverse(self) -> Arc {
        self.rotate(-1)
    }

    /// Whether `v` (0-based) is an endpoint.
    pub fn touches(self, v: u8) -> bool {
        self.s == v || self.t == v
    }

    /// Every arc of `P_n`, loops included, in canonical `(s, t)` order.
    pub fn all(p: Polygon) -> impl Iterator<Item = Arc> {
        let n = p.n();
        (0..n * n).map(move |i| Arc::from_index(p, i))
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.s + 1, self.t + 1)
    }
}

fn same_polygon(x: Arc, y: Arc) -> Result<()> {
    if x.n != y.n {
        return invalid(format!(
            "arcs {x} and {y} live in polygons of sizes {} and {}",
            x.n, y.n
        ));
    }
    Ok(())
}

/// Whether two chords properly cross in the interior of the disk. Loops
/// never cross anything.
pub fn cross(x: Arc, y: Arc) -> bool {
    if x.n != y.n || x.is_loop() || y.is_loop() {
        return false;
    }
    let ends = [x.s, y.t, x.t, y.s];
    for i in 0..4 {
        for j in i + 1..4 {
            if ends[i] == ends[j] {
                return false;
            }
        }
    }
    let p = x.polygon();
    p.cw(&[x.s, y.t, x.t, y.s]) || p.cw(&[x.s, y.s, x.t, y.t])
}

/// `[i, j] ↦ [i - k, j - k]`.
pub fn rotate(x: Arc, k: isize) -> Arc {
    x.rotate(k)
}

pub fn tau(x: Arc) -> Arc {
    x.tau()
}

/// The stable translation quiver Γ(n).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationQuiver {
    pub n: usize,
    pub vertices: Vec<Arc>,
    pub arrows: Vec<(Arc, Arc)>,
    pub translation: BTreeMap<Arc, Arc>,
}

impl TranslationQuiver {
    pub fn successors(&self, x: Arc) -> Vec<Arc> {
        self.arrows
            .iter()
            .filter(|(a, _)| *a == x)
            .map(|&(_, b)| b)
            .collect()
    }

    pub fn predecessors(&self, x: Arc) -> Vec<Arc> {
        self.arrows
            .iter()
            .filter(|(_, b)| *b == x)
            .map(|&(a, _)| a)
            .collect()
    }

    /// The τ-orbit label of an arc: `t - s mod n`. Orbits form a line
    /// `1, 2, ..., n-1, 0`.
    pub fn orbit(x: Arc) -> usize {
        x.polygon().dist(x.s, x.t)
    }
}

/// Arrows of Γ(n) leaving `x`.
pub fn ar_successors(x: Arc) -> Vec<Arc> {
    let p = x.polygon();
    let mut out = Vec::with_capacity(2);
    // [i,j] -> [i+1,j] for j != i+1
    if x.t != p.succ(x.s) {
        out.push(Arc::raw(p, p.succ(x.s), x.t));
    }
    // [i,j] -> [i,j+1] for i != j
    if x.s != x.t {
        out.push(Arc::raw(p, x.s, p.succ(x.t)));
    }
    out
}

/// Builds Γ(n).
pub fn ar_quiver(n: usize) -> Result<TranslationQuiver> {
    let p = Polygon::new(n)?;
    let vertices: Vec<Arc> = Arc::all(p).collect();
    let arrows = vertices
        .iter()
        .flat_map(|&x| ar_successors(x).into_iter().map(move |y| (x, y)))
        .collect();
    let translation = vertices.iter().map(|&x| (x, x.tau())).collect();
    Ok(TranslationQuiver {
        n,
        vertices,
        arrows,
        translation,
    })
}

/// The Hom-hammocks of an arc: everything it maps to (`forward`) and
/// everything mapping to it (`backward`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hammock {
    pub base: Arc,
    pub forward: BTreeSet<Arc>,
    pub backward: BTreeSet<Arc>,
}

impl Hammock {
    pub fn forward_corners(&self) -> [Arc; 4] {
        let x = self.base;
        let p = x.polygon();
        let (i, j) = (x.s, x.t);
        [
            x,
            Arc::raw(p, i, i),
            Arc::raw(p, p.pred(j), j),
            Arc::raw(p, p.pred(j), i),
        ]
    }

    pub fn backward_corners(&self) -> [Arc; 4] {
        let x = self.base;
        let p = x.polygon();
        let (i, j) = (x.s, x.t);
        [
            Arc::raw(p, j, p.succ(i)),
            Arc::raw(p, j, j),
            Arc::raw(p, i, p.succ(i)),
            x,
        ]
    }
}

/// Closed clockwise interval `a..=b` of vertices.
fn interval(p: Polygon, a: u8, b: u8) -> impl Iterator<Item = u8> {
    (0..=p.dist(a, b) as isize).map(move |k| p.shift(a, k))
}

pub fn hammock(x: Arc) -> Hammock {
    let p = x.polygon();
    let (i, j) = (x.s, x.t);
    let mut forward = BTreeSet::new();
    for a in interval(p, i, p.pred(j)) {
        for b in interval(p, j, i) {
            forward.insert(Arc::raw(p, a, b));
        }
    }
    let mut backward = BTreeSet::new();
    for a in interval(p, j, i) {
        for b in interval(p, p.succ(i), j) {
            backward.insert(Arc::raw(p, a, b));
        }
    }
    Hammock {
        base: x,
        forward,
        backward,
    }
}

/// How to decide `Hom(X, Y) ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HomStrategy {
    /// `Y` lies in the forward rectangle of `X`.
    RectForward,
    /// `X` lies in the backward rectangle of `Y`.
    RectBackward,
    /// Chord configurations around the circle.
    Geometric,
}

impl HomStrategy {
    pub const ALL: [HomStrategy; 3] = [
        HomStrategy::RectForward,
        HomStrategy::RectBackward,
        HomStrategy::Geometric,
    ];
}

/// How to decide `Ext(X, Y) ≠ 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtStrategy {
    /// Conditions on `Y` read off the coordinates of `X`.
    Coordinate,
    /// Conditions on `X` read off the coordinates of `Y`.
    CoordinateDual,
    /// Crossing and shared-endpoint configurations.
    Geometric,
}

impl ExtStrategy {
    pub const ALL: [ExtStrategy; 3] = [
        ExtStrategy::Coordinate,
        ExtStrategy::CoordinateDual,
        ExtStrategy::Geometric,
    ];
}

#[inline]
pub(crate) fn hom_rect_forward(x: Arc, y: Arc) -> bool {
    let p = x.polygon();
    let (i, j) = (x.s, x.t);
    p.between(i, y.s, p.pred(j)) && p.between(j, y.t, i)
}

#[inline]
pub(crate) fn hom_rect_backward(x: Arc, y: Arc) -> bool {
    let p = y.polygon();
    let (i, j) = (y.s, y.t);
    p.between(j, x.s, i) && p.between(p.succ(i), x.t, j)
}

pub(crate) fn hom_geometric(x: Arc, y: Arc) -> bool {
    if x == y {
        return true;
    }
    let p = x.polygon();
    let distinct = [x.s, y.s, x.t, y.t];
    let pairwise_distinct = (0..4).all(|i| (i + 1..4).all(|j| distinct[i] != distinct[j]));
    // two chords, endpoints interleaved s(X), s(Y), t(X), t(Y)
    if !x.is_loop() && !y.is_loop() && pairwise_distinct && p.cw(&[x.s, y.s, x.t, y.t]) {
        return true;
    }
    // common source; a loop X only maps to arcs ending at it, handled below
    if x.s == y.s && !x.is_loop() && p.cw(&[y.s, x.t, y.t]) {
        return true;
    }
    // common target; a loop Y only receives arcs starting at it, handled below
    if x.t == y.t && !y.is_loop() && p.cw(&[x.s, y.s, x.t]) {
        return true;
    }
    x.s == y.t && p.cw(&[x.t, x.s, y.s])
}

#[inline]
pub(crate) fn ext_coordinate(x: Arc, y: Arc) -> bool {
    let p = x.polygon();
    let (i, j) = (x.s, x.t);
    p.between(p.pred(j), y.s, p.pred(i)) && p.between(i, y.t, p.pred(j))
}

#[inline]
pub(crate) fn ext_coordinate_dual(x: Arc, y: Arc) -> bool {
    let p = y.polygon();
    let (i, j) = (y.s, y.t);
    p.between(p.succ(i), x.s, j) && p.between(p.succ(j), x.t, p.succ(i))
}

pub(crate) fn ext_geometric(x: Arc, y: Arc) -> bool {
    let p = x.polygon();
    if x.is_loop() {
        // a loop [i,i] only extends arcs starting at i - 1
        return y.s == p.pred(x.s);
    }
    let distinct = [x.s, y.t, x.t, y.s];
    let pairwise_distinct = (0..4).all(|i| (i + 1..4).all(|j| distinct[i] != distinct[j]));
    if pairwise_distinct && p.cw(&[x.s, y.t, x.t, y.s]) {
        return true;
    }
    if y.t == x.s && p.cw(&[x.t, y.s, p.pred(x.s)]) {
        return true;
    }
    if y.s == x.t && p.cw(&[x.s, y.t, p.pred(x.t)]) {
        return true;
    }
    // the chord form degenerates when X = [i, i+1]; Y must also end on the
    // clockwise side from s(X) to s(Y)
    y.s == p.pred(x.t) && y.t != x.t && !cross(x, y) && p.cw(&[x.s, y.t, y.s])
}

/// `X ⊕ Y` fails to be rigid, read off the chord picture directly.
pub fn pair_not_rigid_geometric(x: Arc, y: Arc) -> bool {
    let one_way = |x: Arc, y: Arc| {
        let p = x.polygon();
        if cross(x, y) {
            return true;
        }
        if y.t == p.succ(x.s) && p.cw(&[y.t, y.s, x.t]) {
            return true;
        }
        if y.s == p.pred(x.t) && p.cw(&[x.s, y.t, y.s]) {
            return true;
        }
        x != y && !x.is_loop() && !y.is_loop() && (x.t == y.s || x.s == y.t)
    };
    one_way(x, y) || one_way(y, x)
}

pub fn hom_nonzero(x: Arc, y: Arc, strategy: HomStrategy) -> Result<bool> {
    same_polygon(x, y)?;
    Ok(match strategy {
        HomStrategy::RectForward => hom_rect_forward(x, y),
        HomStrategy::RectBackward => hom_rect_backward(x, y),
        HomStrategy::Geometric => hom_geometric(x, y),
    })
}

/// Hom spaces between indecomposables are at most one-dimensional.
pub fn hom_dim(x: Arc, y: Arc) -> Result<usize> {
    Ok(hom_nonzero(x, y, HomStrategy::RectForward)? as usize)
}

pub fn ext_nonzero(x: Arc, y: Arc, strategy: ExtStrategy) -> Result<bool> {
    same_polygon(x, y)?;
    Ok(match strategy {
        ExtStrategy::Coordinate => ext_coordinate(x, y),
        ExtStrategy::CoordinateDual => ext_coordinate_dual(x, y),
        ExtStrategy::Geometric => ext_geometric(x, y),
    })
}

/// Dense Hom/Ext tables for one polygon, plus per-arc conflict masks used by
/// the enumerators. Requires `n ≤ 11` so that all `n²` arcs fit in a `u128`.
#[derive(Clone, Debug)]
pub struct OrbitCategory {
    polygon: Polygon,
    hom: Vec<bool>,
    ext: Vec<bool>,
    conflict: Vec<u128>,
    hom_link: Vec<u128>,
}

/// Largest n for which [`OrbitCategory`] tables fit in 128-bit masks.
pub const TABLE_MAX_N: usize = 11;

impl OrbitCategory {
    pub fn new(n: usize) -> Result<Self> {
        let polygon = Polygon::new(n)?;
        if n > TABLE_MAX_N {
            return Err(crate::Error::ResourceLimit(format!(
                "dense tables support n <= {TABLE_MAX_N}, got {n}"
            )));
        }
        let m = n * n;
        let arcs: Vec<Arc> = Arc::all(polygon).collect();
        let mut hom = vec![false; m * m];
        let mut ext = vec![false; m * m];
        for (a, &x) in arcs.iter().enumerate() {
            for (b, &y) in arcs.iter().enumerate() {
                hom[a * m + b] = hom_rect_forward(x, y);
                ext[a * m + b] = ext_coordinate(x, y);
            }
        }
        let mut conflict = vec![0u128; m];
        let mut hom_link = vec![0u128; m];
        for a in 0..m {
            for b in 0..m {
                if ext[a * m + b] || ext[b * m + a] {
                    conflict[a] |= 1 << b;
                }
                if a != b && (hom[a * m + b] || hom[b * m + a]) {
                    hom_link[a] |= 1 << b;
                }
            }
        }
        Ok(OrbitCategory {
            polygon,
            hom,
            ext,
            conflict,
            hom_link,
        })
    }

    #[inline]
    pub fn polygon(&self) -> Polygon {
        self.polygon
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.polygon.n()
    }

    #[inline]
    pub fn arc_count(&self) -> usize {
        self.n() * self.n()
    }

    #[inline]
    pub fn hom(&self, x: Arc, y: Arc) -> bool {
        self.hom[x.index() * self.arc_count() + y.index()]
    }

    #[inline]
    pub fn ext(&self, x: Arc, y: Arc) -> bool {
        self.ext[x.index() * self.arc_count() + y.index()]
    }

    /// Arcs `Y` with `Ext(X,Y) ≠ 0` or `Ext(Y,X) ≠ 0`, as a mask over arc indices.
    #[inline]
    pub fn conflict_mask(&self, x: usize) -> u128 {
        self.conflict[x]
    }

    /// Arcs `Y ≠ X` with a nonzero Hom in either direction.
    #[inline]
    pub fn hom_mask(&self, x: usize) -> u128 {
        self.hom_link[x]
    }

    pub fn arc(&self, index: usize) -> Arc {
        Arc::from_index(self.polygon, index)
    }

    pub fn full_mask(&self) -> u128 {
        let m = self.arc_count();
        if m == 128 {
            u128::MAX
        } else {
            (1u128 << m) - 1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(n: usize, s: usize, t: usize) -> Arc {
        Arc::new(n, s, t).unwrap()
    }

    #[test]
    fn rotation_and_tau() {
        assert_eq!(rotate(arc(5, 1, 3), 0), arc(5, 1, 3));
        assert_eq!(rotate(arc(5, 1, 3), 1), arc(5, 5, 2));
        assert_eq!(tau(arc(5, 1, 3)), arc(5, 5, 2));
        assert_eq!(tau(arc(4, 1, 1)), arc(4, 4, 4));
        let x = arc(7, 2, 6);
        assert_eq!(rotate(x, 7), x);
        let mut y = x;
        for _ in 0..7 {
            y = tau(y);
        }
        assert_eq!(y, x);
    }

    #[test]
    fn crossing_examples() {
        assert!(cross(arc(5, 1, 3), arc(5, 2, 4)));
        assert!(!cross(arc(5, 1, 3), arc(5, 1, 4)));
        assert!(!cross(arc(5, 1, 2), arc(5, 3, 4)));
        assert!(!cross(arc(5, 1, 1), arc(5, 2, 4)));
    }

    #[test]
    fn ar_quiver_shape() {
        let q = ar_quiver(5).unwrap();
        assert_eq!(q.vertices.len(), 25);
        assert_eq!(ar_successors(arc(5, 1, 2)), vec![arc(5, 1, 3)]);
        assert!(ar_quiver(2).is_err());
    }

    #[test]
    fn hom_examples() {
        for s in HomStrategy::ALL {
            assert!(hom_nonzero(arc(5, 1, 3), arc(5, 1, 3), s).unwrap());
            assert!(hom_nonzero(arc(5, 1, 3), arc(5, 2, 1), s).unwrap());
            assert!(!hom_nonzero(arc(5, 1, 2), arc(5, 3, 4), s).unwrap());
        }
        assert_eq!(hom_dim(arc(5, 1, 3), arc(5, 1, 3)).unwrap(), 1);
        assert_eq!(hom_dim(arc(5, 1, 2), arc(5, 3, 4)).unwrap(), 0);
        assert_eq!(hom_dim(arc(5, 1, 3), arc(5, 2, 1)).unwrap(), 1);
        assert!(hom_nonzero(arc(5, 1, 3), arc(6, 1, 3), HomStrategy::Geometric).is_err());
    }

    #[test]
    fn ext_examples() {
        for s in ExtStrategy::ALL {
            assert!(ext_nonzero(arc(5, 2, 2), arc(5, 1, 4), s).unwrap());
            assert!(ext_nonzero(arc(5, 1, 3), arc(5, 4, 2), s).unwrap());
        }
        assert!(ext_nonzero(arc(5, 1, 3), arc(4, 4, 2), ExtStrategy::Coordinate).is_err());
    }

    #[test]
    fn hammock_of_short_chord() {
        let h = hammock(arc(5, 1, 3));
        let corners: BTreeSet<Arc> = h.forward_corners().into_iter().collect();
        let expected: BTreeSet<Arc> = [arc(5, 1, 3), arc(5, 1, 1), arc(5, 2, 3), arc(5, 2, 1)]
            .into_iter()
            .collect();
        assert_eq!(corners, expected);
        assert!(corners.iter().all(|c| h.forward.contains(c)));
        assert_eq!(h.forward.len(), 8);
        assert!(h.forward.contains(&h.base));
        assert!(h.backward.contains(&h.base));
        for c in h.backward_corners() {
            assert!(h.backward.contains(&c));
        }
    }

    #[test]
    fn table_matches_direct() {
        let cat = OrbitCategory::new(5).unwrap();
        let p = cat.polygon();
        for x in Arc::all(p) {
            for y in Arc::all(p) {
                assert_eq!(cat.hom(x, y), hom_rect_forward(x, y));
                assert_eq!(cat.ext(x, y), ext_coordinate(x, y));
            }
        }
        assert!(OrbitCategory::new(12).is_err());
    }
}
