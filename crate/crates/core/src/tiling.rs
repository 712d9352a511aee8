//! Faces of a loop-free maximal rigid object, their tile types, and the
//! loop rules that rebuild maximal rigid objects from tilings.
//!
//! The planar graph has the polygon edges plus every chord of the object; a
//! chord `[i, i+1]` or `[i+1, i]` lies on a polygon edge. Faces are traced
//! with darts: the polygon edge `i → i+1` is a dart of the interior face on
//! its side, and each diagonal contributes both of its darts.

use std::collections::BTreeMap;
use std::fmt;

use crate::cyclic::Polygon;
use crate::error::{invalid, Error, Result};
use crate::orbit::{cross, Arc};
use crate::rigid::{is_maximal_rigid, ArcSet, VertexRole};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TileKind {
    A,
    B,
    C,
    D,
    E1,
    E2,
}

impl TileKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TileKind::A => "A",
            TileKind::B => "B",
            TileKind::C => "C",
            TileKind::D => "D",
            TileKind::E1 => "E1",
            TileKind::E2 => "E2",
        }
    }
}

impl fmt::Display for TileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One side of a face, traversed in face order.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Polygon edge `from → from+1` carrying no arc.
    Open,
    Arc(Arc),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dart {
    pub from: u8,
    pub to: u8,
    pub side: Side,
}

/// A face of the chord diagram, as its closed boundary walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn vertices(&self) -> Vec<u8> {
        self.darts.iter().map(|d| d.from).collect()
    }

    pub fn arcs(&self) -> Vec<Arc> {
        self.darts
            .iter()
            .filter_map(|d| match d.side {
                Side::Arc(a) => Some(a),
                Side::Open => None,
            })
            .collect()
    }

    pub fn open_edges(&self) -> usize {
        self.darts.iter().filter(|d| d.side == Side::Open).count()
    }
}

/// The faces of a loop-free noncrossing arc set, plus the face on the
/// interior side of every dart.
#[derive(Clone, Debug)]
pub struct FaceMap {
    pub n: usize,
    pub faces: Vec<Face>,
    dart_face: BTreeMap<(u8, u8), usize>,
}

impl FaceMap {
    /// Face lying to the right of `from → to`, if that dart is interior.
    pub fn face_of_dart(&self, from: u8, to: u8) -> Option<usize> {
        self.dart_face.get(&(from, to)).copied()
    }
}

pub fn decompose_faces(set: &ArcSet) -> Result<FaceMap> {
    let p = set.polygon();
    let n = p.n();
    if let Some(l) = set.loops().next() {
        return invalid(format!("face decomposition needs a loop-free set, found loop {l}"));
    }
    let arcs: Vec<Arc> = set.iter().collect();
    for (k, &a) in arcs.iter().enumerate() {
        for &b in &arcs[k + 1..] {
            if cross(a, b) {
                return invalid(format!("arcs {a} and {b} cross"));
            }
            if a.s() == b.t() && a.t() == b.s() {
                return invalid(format!("arcs {a} and {b} are the same chord"));
            }
        }
    }
    let mut edge_arc: BTreeMap<(u8, u8), Arc> = BTreeMap::new();
    let mut neighbours: Vec<Vec<u8>> = (0..n as u8)
        .map(|v| vec![p.pred(v), p.succ(v)])
        .collect();
    for &a in &arcs {
        edge_arc.insert((a.s(), a.t()), a);
        edge_arc.insert((a.t(), a.s()), a);
        if !is_polygon_edge(p, a.s(), a.t()) {
            neighbours[a.s() as usize].push(a.t());
            neighbours[a.t() as usize].push(a.s());
        }
    }

    let mut darts: Vec<(u8, u8)> = p.vertices().map(|v| (v, p.succ(v))).collect();
    for &a in &arcs {
        if !is_polygon_edge(p, a.s(), a.t()) {
            darts.push((a.s(), a.t()));
            darts.push((a.t(), a.s()));
        }
    }

    let next = |u: u8, v: u8| -> u8 {
        let back = p.dist(v, u);
        *neighbours[v as usize]
            .iter()
            .filter(|&&w| w != u && p.dist(v, w) < back)
            .max_by_key(|&&w| p.dist(v, w))
            .expect("polygon edge is always available")
    };

    let mut dart_face = BTreeMap::new();
    let mut faces = Vec::new();
    for &start in &darts {
        if dart_face.contains_key(&start) {
            continue;
        }
        let id = faces.len();
        let mut walk = Vec::new();
        let (mut u, mut v) = start;
        loop {
            dart_face.insert((u, v), id);
            let side = match edge_arc.get(&(u, v)) {
                Some(&a) => Side::Arc(a),
                None => Side::Open,
            };
            walk.push(Dart { from: u, to: v, side });
            let w = next(u, v);
            (u, v) = (v, w);
            if (u, v) == start {
                break;
            }
        }
        faces.push(Face { darts: walk });
    }
    Ok(FaceMap {
        n,
        faces,
        dart_face,
    })
}

fn is_polygon_edge(p: Polygon, a: u8, b: u8) -> bool {
    p.succ(a) == b || p.succ(b) == a
}

/// A classified face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tile {
    pub kind: TileKind,
    /// Bounding arcs in boundary order.
    pub arcs: Vec<Arc>,
    /// Clockwise run `(i, k)` of polygon edges carrying no arcs.
    pub open_boundary: Option<(u8, u8)>,
    pub isolated: Option<u8>,
}

/// Classifies one face of a loop-free arc set.
pub fn classify_tile(set: &ArcSet, face: &Face) -> Result<Tile> {
    let p = set.polygon();
    let fail = |why: String| -> Result<Tile> {
        Err(Error::Classification(format!(
            "face on vertices {}: {why}",
            labels(&face.vertices())
        )))
    };
    let darts = &face.darts;
    let m = darts.len();
    let open = face.open_edges();

    if open == 0 {
        let arcs = face.arcs();
        if arcs.len() != 4 {
            return fail(format!("closed face with {} arcs", arcs.len()));
        }
        // alternating: each corner is the source of both or the sink of both
        for k in 0..4 {
            let (a, b) = (arcs[k], arcs[(k + 1) % 4]);
            let v = darts[(k + 1) % 4].from;
            let src = (a.s() == v, b.s() == v);
            if src.0 != src.1 {
                return fail(format!("corner {} is neither a double source nor a double sink", v + 1));
            }
        }
        if let Some(a) = arcs.iter().find(|a| p.succ(a.s()) == a.t()) {
            return fail(format!("4-cycle contains the boundary arc {a}"));
        }
        return Ok(Tile {
            kind: TileKind::D,
            arcs,
            open_boundary: None,
            isolated: None,
        });
    }
    if open == m {
        return fail("face has no arcs".into());
    }

    // rotate so the walk starts with the open run
    let first = (0..m)
        .find(|&k| darts[k].side == Side::Open && darts[(k + m - 1) % m].side != Side::Open)
        .unwrap();
    let walk: Vec<Dart> = (0..m).map(|k| darts[(first + k) % m]).collect();
    let run = walk.iter().take_while(|d| d.side == Side::Open).count();
    if run != open {
        return fail("more than one open boundary".into());
    }
    if run > 2 {
        return fail(format!("open boundary of length {run}"));
    }
    let i = walk[0].from;
    let k = walk[run - 1].to;
    let isolated = if run == 2 {
        let mid = walk[0].to;
        if !set.is_isolated(mid) {
            return fail(format!("vertex {} inside the open boundary is not isolated", mid + 1));
        }
        Some(mid)
    } else {
        None
    };
    let arcs: Vec<Arc> = walk[run..]
        .iter()
        .map(|d| match d.side {
            Side::Arc(a) => a,
            Side::Open => unreachable!(),
        })
        .collect();
    let corners: Vec<u8> = walk[run..].iter().map(|d| d.from).collect();
    let open_boundary = Some((i, k));
    let kind = match arcs.len() {
        1 => {
            let a = arcs[0];
            if run != 2 {
                return fail("single arc closing a short open boundary".into());
            }
            if a.s() == i {
                TileKind::E1
            } else {
                TileKind::E2
            }
        }
        2 => {
            let m = corners[1];
            let (a, b) = (arcs[0], arcs[1]);
            if a.s() == m && b.s() == m {
                TileKind::A
            } else if a.t() == m && b.t() == m {
                TileKind::B
            } else {
                return fail(format!("middle vertex {} has mixed orientation", m + 1));
            }
        }
        3 => {
            // walk: p+1 -> k -> l -> p, open edge (p, p+1)
            let (pp, q) = (i, k);
            let (kk, l) = (corners[1], corners[2]);
            let expect = [
                Arc::raw(p, q, kk),
                Arc::raw(p, l, kk),
                Arc::raw(p, l, pp),
            ];
            if run != 1 || arcs != expect {
                return fail("three arcs not in the C pattern".into());
            }
            if kk != p.shift(pp, 2) && l != p.pred(pp) {
                return fail("C pattern with neither short side".into());
            }
            TileKind::C
        }
        r => return fail(format!("{r} arcs around an open boundary")),
    };
    Ok(Tile {
        kind,
        arcs,
        open_boundary,
        isolated,
    })
}

fn labels(vs: &[u8]) -> String {
    vs.iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// A loop-free arc set with all of its faces classified.
#[derive(Clone, Debug)]
pub struct Tiling {
    pub set: ArcSet,
    pub faces: FaceMap,
    /// Parallel to `faces.faces`.
    pub tiles: Vec<Tile>,
    pub isolated: Vec<u8>,
}

impl Tiling {
    pub fn n(&self) -> usize {
        self.set.n()
    }

    pub fn has_kind(&self, kind: TileKind) -> bool {
        self.tiles.iter().any(|t| t.kind == kind)
    }
}

/// Outcome of [`validate_tiling`]: the tiling when valid, otherwise every
/// problem found.
#[derive(Clone, Debug)]
pub struct TilingReport {
    pub tiling: Option<Tiling>,
    pub diagnostics: Vec<String>,
}

impl TilingReport {
    pub fn is_valid(&self) -> bool {
        self.diagnostics.is_empty()
    }
}

pub fn validate_tiling(set: &ArcSet) -> TilingReport {
    let fail = |diagnostics| TilingReport {
        tiling: None,
        diagnostics,
    };
    let faces = match decompose_faces(set) {
        Ok(f) => f,
        Err(e) => return fail(vec![e.to_string()]),
    };
    let mut diagnostics = Vec::new();
    let mut tiles = Vec::new();
    for face in &faces.faces {
        match classify_tile(set, face) {
            Ok(t) => tiles.push(t),
            Err(e) => diagnostics.push(e.to_string()),
        }
    }
    diagnostics.extend(isolated_violations(set));
    if !diagnostics.is_empty() {
        return fail(diagnostics);
    }
    TilingReport {
        tiling: Some(Tiling {
            set: set.clone(),
            faces,
            tiles,
            isolated: set.isolated_vertices(),
        }),
        diagnostics,
    }
}

/// Conditions on the neighbourhood of every isolated vertex `i`: `i-2` is a
/// sink or isolated, `i+2` a source or isolated, and `i±1`, `i±3` are not
/// isolated.
pub fn isolated_violations(set: &ArcSet) -> Vec<String> {
    let p = set.polygon();
    let mut out = Vec::new();
    for i in set.isolated_vertices() {
        let at = |k: isize| set.role(p.shift(i, k));
        if !matches!(at(-2), VertexRole::Sink | VertexRole::Isolated) {
            out.push(format!("isolated vertex {}: {} is not a sink", i + 1, p.shift(i, -2) + 1));
        }
        if !matches!(at(2), VertexRole::Source | VertexRole::Isolated) {
            out.push(format!("isolated vertex {}: {} is not a source", i + 1, p.shift(i, 2) + 1));
        }
        for k in [-3, -1, 1, 3] {
            if at(k) == VertexRole::Isolated {
                out.push(format!(
                    "isolated vertices {} and {} are too close",
                    i + 1,
                    p.shift(i, k) + 1
                ));
            }
        }
    }
    out
}

/// Removes the loops of a maximal rigid object.
pub fn strip_loops(set: &ArcSet) -> Result<ArcSet> {
    if !is_maximal_rigid(set) {
        return invalid(format!("{set} is not maximal rigid"));
    }
    Ok(set.without_loops())
}

/// Vertices that receive a loop under the first loop rule.
pub fn loop_vertices(set: &ArcSet) -> Vec<u8> {
    let p = set.polygon();
    p.vertices()
        .filter(|&i| {
            let at = |k: isize| set.role(p.shift(i, k));
            at(0) != VertexRole::Isolated
                && matches!(at(-1), VertexRole::Sink | VertexRole::Isolated)
                && matches!(at(1), VertexRole::Source | VertexRole::Isolated)
                && at(-2) != VertexRole::Isolated
                && at(2) != VertexRole::Isolated
        })
        .collect()
}

/// All maximal rigid objects with loop-free part `set`: loops at the
/// vertices chosen by the first rule, then for each adjacent pair of loops
/// at a sink `v` and a source `v+1`, one of the two is dropped.
pub fn attach_loops(set: &ArcSet) -> Result<Vec<ArcSet>> {
    let report = validate_tiling(set);
    if !report.is_valid() {
        return invalid(format!(
            "{set} is not a tiling: {}",
            report.diagnostics.join("; ")
        ));
    }
    let p = set.polygon();
    let loops = loop_vertices(set);
    let has = |v: u8| loops.contains(&v);
    if let Some(&v) = loops
        .iter()
        .find(|&&v| has(p.succ(v)) && has(p.shift(v, 2)))
    {
        return Err(Error::Classification(format!(
            "loops at three consecutive vertices starting at {}",
            v + 1
        )));
    }
    let conflicts: Vec<u8> = loops
        .iter()
        .copied()
        .filter(|&v| {
            has(p.succ(v))
                && set.role(v) == VertexRole::Sink
                && set.role(p.succ(v)) == VertexRole::Source
        })
        .collect();
    let mut out = Vec::new();
    for choice in 0u32..1 << conflicts.len() {
        let mut keep = loops.clone();
        for (k, &v) in conflicts.iter().enumerate() {
            let drop = if choice >> k & 1 == 1 { p.succ(v) } else { v };
            keep.retain(|&x| x != drop);
        }
        out.push(ArcSet::new(
            p.n(),
            set.iter().chain(keep.iter().map(|&v| Arc::raw(p, v, v))),
        )?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}
