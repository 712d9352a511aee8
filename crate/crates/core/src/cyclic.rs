//! Cyclic arithmetic on the vertices of the n-gon.
//!
//! Vertices are stored 0-based (`0..n`) and printed 1-based. The clockwise
//! order predicate uses closed-interval semantics: repeated entries are
//! allowed in place, so `C(a, a, c)` always holds while `C(a, b, a)` holds
//! only for `b = a`.

use std::fmt;

use crate::error::{invalid, Result};

/// Smallest polygon for which the geometric model is set up.
pub const MIN_N: usize = 3;

/// Largest polygon representable (vertex indices are `u8`).
pub const MAX_N: usize = 255;

/// The ambient polygon `P_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polygon {
    n: u8,
}

impl Polygon {
    pub fn new(n: usize) -> Result<Self> {
        if n < MIN_N {
            return invalid(format!("polygon size must be at least {MIN_N}, got {n}"));
        }
        if n > MAX_N {
            return invalid(format!("polygon size must be at most {MAX_N}, got {n}"));
        }
        Ok(Polygon { n: n as u8 })
    }

    #[inline]
    pub fn n(self) -> usize {
        self.n as usize
    }

    /// Vertex from its 1-based label.
    pub fn vertex(self, label: usize) -> Result<Vertex> {
        if label == 0 || label > self.n() {
            return invalid(format!("vertex {label} outside 1..={}", self.n));
        }
        Ok(Vertex {
            index: (label - 1) as u8,
            n: self.n,
        })
    }

    /// Clockwise distance from `a` to `b`, in `0..n`.
    #[inline]
    pub fn dist(self, a: u8, b: u8) -> usize {
        let n = self.n();
        (b as usize + n - a as usize) % n
    }

    #[inline]
    pub fn shift(self, a: u8, k: isize) -> u8 {
        (a as isize + k).rem_euclid(self.n as isize) as u8
    }

    #[inline]
    pub fn succ(self, a: u8) -> u8 {
        self.shift(a, 1)
    }

    #[inline]
    pub fn pred(self, a: u8) -> u8 {
        self.shift(a, -1)
    }

    /// `C(a, b, c)`: `b` lies on the closed clockwise arc from `a` to `c`.
    #[inline]
    pub fn between(self, a: u8, b: u8, c: u8) -> bool {
        self.dist(a, b) <= self.dist(a, c)
    }

    /// `C(i_1, ..., i_k)` on raw indices: the entries are met in order on a
    /// clockwise walk starting at `i_1` that does not complete a revolution.
    pub fn cw(self, entries: &[u8]) -> bool {
        let total: usize = entries
            .windows(2)
            .map(|w| self.dist(w[0], w[1]))
            .sum();
        total < self.n()
    }

    pub fn vertices(self) -> impl Iterator<Item = u8> {
        0..self.n
    }
}

/// A polygon vertex together with its ambient size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    index: u8,
    n: u8,
}

impl Vertex {
    pub fn polygon(self) -> Polygon {
        Polygon { n: self.n }
    }

    pub fn index(self) -> u8 {
        self.index
    }

    pub fn label(self) -> usize {
        self.index as usize + 1
    }

    pub fn succ(self) -> Vertex {
        Vertex {
            index: self.polygon().succ(self.index),
            n: self.n,
        }
    }

    pub fn pred(self) -> Vertex {
        Vertex {
            index: self.polygon().pred(self.index),
            n: self.n,
        }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

/// The clockwise-order predicate on a tuple of vertices.
pub fn cw_contains(tuple: &[Vertex]) -> Result<bool> {
    if tuple.len() < 2 {
        return invalid("cyclic tuple needs at least two entries");
    }
    let polygon = tuple[0].polygon();
    if tuple.iter().any(|v| v.n != polygon.n) {
        return invalid("cyclic tuple mixes polygon sizes");
    }
    let raw: Vec<u8> = tuple.iter().map(|v| v.index).collect();
    Ok(polygon.cw(&raw))
}
