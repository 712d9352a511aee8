//! Quivers with length-2 zero relations presenting endomorphism algebras of
//! maximal rigid objects, and the combinatorial tests run on them.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{invalid, Error, Result};
use crate::orbit::{hom_dim, Arc};
use crate::rigid::{enumerate_maximal_rigid_with_limit, is_maximal_rigid, ArcSet, VertexRole, DEFAULT_MAX_N};
use crate::tiling::validate_tiling;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuiverArrow {
    pub from: usize,
    pub to: usize,
    /// Face of the tiling the arrow lives in; `None` for abstract quivers.
    pub tile: Option<usize>,
}

/// A finite quiver with monomial relations of length 2. A relation `(a, b)`
/// says that arrow `a` followed by arrow `b` composes to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverPresentation {
    pub vertex_count: usize,
    /// Arc labels of the vertices; empty for abstract quivers.
    pub labels: Vec<Arc>,
    pub arrows: Vec<QuiverArrow>,
    pub relations: Vec<(usize, usize)>,
}

impl QuiverPresentation {
    /// Abstract quiver from arrows `(from, to)` and relations given as paths
    /// `(u, v, w)`. Relation paths must name a unique pair of arrows.
    pub fn new(
        vertex_count: usize,
        arrows: &[(usize, usize)],
        relations: &[(usize, usize, usize)],
    ) -> Result<Self> {
        if let Some(&(u, v)) = arrows
            .iter()
            .find(|&&(u, v)| u >= vertex_count || v >= vertex_count)
        {
            return invalid(format!("arrow {u} -> {v} leaves the vertex range"));
        }
        let arrows: Vec<QuiverArrow> = arrows
            .iter()
            .map(|&(from, to)| QuiverArrow {
                from,
                to,
                tile: None,
            })
            .collect();
        let find = |u: usize, v: usize| -> Result<usize> {
            let hits: Vec<usize> = (0..arrows.len())
                .filter(|&k| arrows[k].from == u && arrows[k].to == v)
                .collect();
            match hits[..] {
                [k] => Ok(k),
                [] => invalid(format!("relation uses missing arrow {u} -> {v}")),
                _ => invalid(format!("relation through parallel arrows {u} -> {v}")),
            }
        };
        let relations = relations
            .iter()
            .map(|&(u, v, w)| Ok((find(u, v)?, find(v, w)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(QuiverPresentation {
            vertex_count,
            labels: Vec::new(),
            arrows,
            relations,
        })
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.to == v).count()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.from == v).count()
    }

    /// Number of arrow ends at `v`; equals the number of neighbours on a tree.
    pub fn valency(&self, v: usize) -> usize {
        self.in_degree(v) + self.out_degree(v)
    }

    pub fn has_loops(&self) -> bool {
        self.arrows.iter().any(|a| a.from == a.to)
    }

    pub fn has_parallel_arrows(&self) -> bool {
        let pairs: BTreeSet<(usize, usize)> = self.arrows.iter().map(|a| (a.from, a.to)).collect();
        pairs.len() != self.arrows.len()
    }

    /// Relations as vertex paths `(u, v, w)`.
    pub fn relation_paths(&self) -> Vec<(usize, usize, usize)> {
        self.relations
            .iter()
            .map(|&(a, b)| (self.arrows[a].from, self.arrows[a].to, self.arrows[b].to))
            .collect()
    }

    pub fn is_relation(&self, first: usize, second: usize) -> bool {
        self.relations.contains(&(first, second))
    }

    fn vertex_name(&self, v: usize) -> String {
        match self.labels.get(v) {
            Some(a) => format!("{v} [{a}]"),
            None => v.to_string(),
        }
    }

    /// Number of relation-avoiding paths from `i` to `j` (the trivial path
    /// included when `i = j`). Fails if some relation-avoiding path has a
    /// repeated state, which makes the counts infinite.
    pub fn path_counts(&self) -> Result<Vec<Vec<usize>>> {
        let v = self.vertex_count;
        let mut counts = vec![vec![0usize; v]; v];
        let limit = self.arrows.len() + 1;
        for start in 0..v {
            counts[start][start] += 1;
            // (last arrow, depth)
            let mut stack: Vec<(usize, usize)> = self
                .arrows
                .iter()
                .enumerate()
                .filter(|(_, a)| a.from == start)
                .map(|(k, _)| (k, 1))
                .collect();
            while let Some((last, depth)) = stack.pop() {
                if depth > limit {
                    return Err(Error::InvalidInput(format!(
                        "relation-free cycle through vertex {}",
                        self.vertex_name(start)
                    )));
                }
                let end = self.arrows[last].to;
                counts[start][end] += 1;
                for (k, a) in self.arrows.iter().enumerate() {
                    if a.from == end && !self.is_relation(last, k) {
                        stack.push((k, depth + 1));
                    }
                }
            }
        }
        Ok(counts)
    }
}

impl fmt::Display for QuiverPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|a| format!("{}->{}", a.from, a.to))
            .collect();
        let rels: Vec<String> = self
            .relation_paths()
            .iter()
            .map(|(u, v, w)| format!("{u}->{v}->{w}"))
            .collect();
        write!(
            f,
            "{} vertices; arrows {}; relations {}",
            self.vertex_count,
            arrows.join(" "),
            rels.join(" ")
        )
    }
}

fn far_end(a: Arc, x: u8) -> u8 {
    if a.s() == x {
        a.t()
    } else {
        a.s()
    }
}

/// The quiver with relations of the endomorphism algebra of a maximal rigid
/// object. Vertices follow the sorted arc order of `set`.
pub fn endo_quiver(set: &ArcSet) -> Result<QuiverPresentation> {
    if !is_maximal_rigid(set) {
        return invalid(format!("{set} is not maximal rigid"));
    }
    let report = validate_tiling(&set.without_loops());
    let tiling = report.tiling.ok_or_else(|| {
        Error::Classification(format!(
            "{set} does not give a tiling: {}",
            report.diagnostics.join("; ")
        ))
    })?;
    let faces = &tiling.faces;
    let p = set.polygon();
    let labels: Vec<Arc> = set.arcs().to_vec();
    let index = |a: Arc| labels.binary_search(&a).unwrap();

    let mut arrows = Vec::new();
    for x in p.vertices() {
        let mut around: Vec<Arc> = set.non_loops().filter(|a| a.touches(x)).collect();
        around.sort_by_key(|&a| p.dist(x, far_end(a, x)));
        for w in around.windows(2) {
            arrows.push(QuiverArrow {
                from: index(w[0]),
                to: index(w[1]),
                tile: faces.face_of_dart(x, far_end(w[0], x)),
            });
        }
        if set.has_loop(x) {
            let lp = index(Arc::raw(p, x, x));
            // an arc along the polygon edge next to the loop leaves the loop
            // in its own sliver between that arc and the boundary
            let sliver = Some(faces.faces.len() + x as usize);
            match (set.role(x), around.first(), around.last()) {
                (VertexRole::Source, _, Some(&last)) => arrows.push(QuiverArrow {
                    from: index(last),
                    to: lp,
                    tile: if last.t() == p.pred(x) {
                        sliver
                    } else {
                        faces.face_of_dart(p.pred(x), x)
                    },
                }),
                (VertexRole::Sink, Some(&first), _) => arrows.push(QuiverArrow {
                    from: lp,
                    to: index(first),
                    tile: if first.s() == p.succ(x) {
                        sliver
                    } else {
                        faces.face_of_dart(x, p.succ(x))
                    },
                }),
                _ => {
                    return Err(Error::Classification(format!(
                        "loop at {} has no arcs to attach to",
                        x + 1
                    )))
                }
            }
        }
    }
    arrows.sort();
    let mut relations = Vec::new();
    for (i, a) in arrows.iter().enumerate() {
        for (j, b) in arrows.iter().enumerate() {
            if a.to == b.from && a.tile.is_some() && a.tile == b.tile {
                relations.push((i, j));
            }
        }
    }
    Ok(QuiverPresentation {
        vertex_count: labels.len(),
        labels,
        arrows,
        relations,
    })
}

/// Targets of the arrows leaving one summand, read off from the arcs of the
/// object.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ApproxData {
    pub summand: Arc,
    /// First `[a, x]` with `x` clockwise after `b`, up to `x = a`.
    pub e1: Option<Arc>,
    /// First `[y, b]` with `y` clockwise after `a`, up to `y = b - 1`.
    pub e2: Option<Arc>,
}

impl ApproxData {
    pub fn targets(&self) -> impl Iterator<Item = Arc> {
        self.e1.into_iter().chain(self.e2)
    }
}

pub fn approximation(set: &ArcSet, summand: Arc) -> Result<ApproxData> {
    if !set.contains(summand) {
        return invalid(format!("{summand} is not a summand of {set}"));
    }
    let p = set.polygon();
    let (a, b) = (summand.s(), summand.t());
    let e1 = (1..=p.dist(b, a) as isize)
        .map(|k| Arc::raw(p, a, p.shift(b, k)))
        .find(|&c| c != summand && set.contains(c));
    let e2 = (1..=p.dist(a, p.pred(b)) as isize)
        .map(|k| Arc::raw(p, p.shift(a, k), b))
        .find(|&c| c != summand && set.contains(c));
    Ok(ApproxData { summand, e1, e2 })
}

/// Result of [`happel_check`]; `witness` names the first failed condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HappelReport {
    pub witness: Option<String>,
}

impl HappelReport {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

/// Combinatorial criterion for iterated tilted algebras of type A: tree,
/// length-2 relations, valency at most 4, and the local shapes at 3- and
/// 4-valent vertices.
pub fn happel_check(q: &QuiverPresentation) -> HappelReport {
    let fail = |w: String| HappelReport { witness: Some(w) };
    let v = q.vertex_count;

    // tree: connected with v - 1 edges, loops and parallel arrows count
    let mut parent: Vec<usize> = (0..v).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for a in &q.arrows {
        let (r1, r2) = (find(&mut parent, a.from), find(&mut parent, a.to));
        if r1 == r2 {
            return fail(format!(
                "not a tree: arrow {} -> {} closes a cycle",
                q.vertex_name(a.from),
                q.vertex_name(a.to)
            ));
        }
        parent[r1] = r2;
    }
    if v > 0 && q.arrows.len() != v - 1 {
        return fail(format!("not a tree: {} components", v - q.arrows.len()));
    }

    for &(a, b) in &q.relations {
        if q.arrows[a].to != q.arrows[b].from {
            return fail(format!("relation on non-composable arrows {a}, {b}"));
        }
    }

    for x in 0..v {
        let (inn, out) = (q.in_degree(x), q.out_degree(x));
        let through: Vec<(usize, usize)> = q
            .relations
            .iter()
            .copied()
            .filter(|&(a, _)| q.arrows[a].to == x)
            .collect();
        match inn + out {
            0..=2 => {}
            3 => {
                if !matches!((inn, out), (2, 1) | (1, 2)) {
                    return fail(format!(
                        "vertex {} has {inn} incoming and {out} outgoing arrows",
                        q.vertex_name(x)
                    ));
                }
                if through.len() != 1 {
                    return fail(format!(
                        "3-valent vertex {} carries {} relations",
                        q.vertex_name(x),
                        through.len()
                    ));
                }
            }
            4 => {
                if (inn, out) != (2, 2) {
                    return fail(format!(
                        "vertex {} has {inn} incoming and {out} outgoing arrows",
                        q.vertex_name(x)
                    ));
                }
                let ins: BTreeSet<usize> = through.iter().map(|r| r.0).collect();
                let outs: BTreeSet<usize> = through.iter().map(|r| r.1).collect();
                if through.len() != 2 || ins.len() != 2 || outs.len() != 2 {
                    return fail(format!(
                        "4-valent vertex {} does not pair its arrows by two relations",
                        q.vertex_name(x)
                    ));
                }
            }
            k => {
                return fail(format!("vertex {} has {k} neighbours", q.vertex_name(x)));
            }
        }
    }
    HappelReport { witness: None }
}

/// Isomorphism of quivers with relations: a vertex bijection carrying the
/// arrow multiset and the relation paths onto each other.
pub fn isomorphic(p: &QuiverPresentation, q: &QuiverPresentation) -> bool {
    if p.vertex_count != q.vertex_count
        || p.arrows.len() != q.arrows.len()
        || p.relations.len() != q.relations.len()
    {
        return false;
    }
    let n = p.vertex_count;
    let sig = |x: &QuiverPresentation, v: usize| (x.in_degree(v), x.out_degree(v));
    let mut psig: Vec<_> = (0..n).map(|v| sig(p, v)).collect();
    let mut qsig: Vec<_> = (0..n).map(|v| sig(q, v)).collect();
    psig.sort();
    qsig.sort();
    if psig != qsig {
        return false;
    }
    let count = |x: &QuiverPresentation| {
        let mut m = vec![vec![0usize; n]; n];
        for a in &x.arrows {
            m[a.from][a.to] += 1;
        }
        m
    };
    let (pm, qm) = (count(p), count(q));
    let qrel: BTreeSet<(usize, usize, usize)> = q.relation_paths().into_iter().collect();
    let prel = p.relation_paths();

    // all bijections respecting arrows; relations are checked per candidate
    let mut found = false;
    search_all(n, &pm, &qm, p, q, &mut |map| {
        let mapped: BTreeSet<(usize, usize, usize)> = prel
            .iter()
            .map(|&(u, v, w)| (map[u], map[v], map[w]))
            .collect();
        if mapped == qrel {
            found = true;
        }
        found
    });
    found
}

/// Calls `visit` on every vertex bijection preserving arrow counts until it
/// returns true.
fn search_all(
    n: usize,
    pm: &[Vec<usize>],
    qm: &[Vec<usize>],
    p: &QuiverPresentation,
    q: &QuiverPresentation,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    fn rec(
        v: usize,
        n: usize,
        pm: &[Vec<usize>],
        qm: &[Vec<usize>],
        p: &QuiverPresentation,
        q: &QuiverPresentation,
        map: &mut Vec<usize>,
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if v == n {
            return visit(map);
        }
        for w in 0..n {
            if used[w]
                || p.in_degree(v) != q.in_degree(w)
                || p.out_degree(v) != q.out_degree(w)
                || pm[v][v] != qm[w][w]
                || !(0..v).all(|u| pm[u][v] == qm[map[u]][w] && pm[v][u] == qm[w][map[u]])
            {
                continue;
            }
            map.push(w);
            used[w] = true;
            if rec(v + 1, n, pm, qm, p, q, map, used, visit) {
                return true;
            }
            map.pop();
            used[w] = false;
        }
        false
    }
    rec(0, n, pm, qm, p, q, &mut Vec::new(), &mut vec![false; n], visit)
}

/// All maximal rigid objects with `3 ≤ n ≤ n_max` whose quiver with
/// relations is isomorphic to `pattern`.
pub fn realizable(pattern: &QuiverPresentation, n_max: usize) -> Result<Vec<(usize, ArcSet)>> {
    realizable_with_limit(pattern, n_max, DEFAULT_MAX_N)
}

pub fn realizable_with_limit(
    pattern: &QuiverPresentation,
    n_max: usize,
    guard: usize,
) -> Result<Vec<(usize, ArcSet)>> {
    if n_max > guard {
        return Err(Error::ResourceLimit(format!(
            "realizability search guard is n <= {guard}, requested {n_max}"
        )));
    }
    let mut out = Vec::new();
    if pattern.has_loops() {
        return Ok(out);
    }
    for n in 3..=n_max {
        for t in enumerate_maximal_rigid_with_limit(n, false, guard)? {
            if t.len() != pattern.vertex_count {
                continue;
            }
            if isomorphic(&endo_quiver(&t)?, pattern) {
                out.push((n, t));
            }
        }
    }
    Ok(out)
}

/// Isomorphism-invariant key: the lexicographically least encoding over all
/// vertex relabellings. Only for quivers with at most 8 vertices.
pub fn canonical_key(q: &QuiverPresentation) -> Result<Vec<usize>> {
    let n = q.vertex_count;
    if n > 8 {
        return invalid(format!("canonical key supports at most 8 vertices, got {n}"));
    }
    let arrows: Vec<(usize, usize)> = q.arrows.iter().map(|a| (a.from, a.to)).collect();
    let rels = q.relation_paths();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<usize>> = None;
    loop {
        let mut a: Vec<(usize, usize)> = arrows.iter().map(|&(u, v)| (perm[u], perm[v])).collect();
        let mut r: Vec<(usize, usize, usize)> =
            rels.iter().map(|&(u, v, w)| (perm[u], perm[v], perm[w])).collect();
        a.sort();
        r.sort();
        let mut key = vec![n, a.len(), r.len()];
        key.extend(a.iter().flat_map(|&(u, v)| [u, v]));
        key.extend(r.iter().flat_map(|&(u, v, w)| [u, v, w]));
        if best.as_ref().is_none_or(|b| key < *b) {
            best = Some(key);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(best.unwrap_or_else(|| vec![0, 0, 0]))
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every quiver with relations on at most `max_vertices` vertices passing
/// [`happel_check`], one per isomorphism class.
pub fn happel_patterns(max_vertices: usize) -> Result<Vec<QuiverPresentation>> {
    if max_vertices > 8 {
        return invalid("pattern generation supports at most 8 vertices");
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for v in 1..=max_vertices {
        for tree in unlabelled_trees(v)? {
            let e = tree.len();
            for orient in 0u32..1 << e {
                let arrows: Vec<(usize, usize)> = tree
                    .iter()
                    .enumerate()
                    .map(|(k, &(a, b))| if orient >> k & 1 == 1 { (b, a) } else { (a, b) })
                    .collect();
                let composable: Vec<(usize, usize, usize)> = arrows
                    .iter()
                    .flat_map(|&(u, x)| {
                        arrows
                            .iter()
                            .filter(move |&&(y, _)| y == x)
                            .map(move |&(_, w)| (u, x, w))
                    })
                    .collect();
                for pick in 0u64..1 << composable.len() {
                    let rels: Vec<(usize, usize, usize)> = (0..composable.len())
                        .filter(|&k| pick >> k & 1 == 1)
                        .map(|k| composable[k])
                        .collect();
                    let q = QuiverPresentation::new(v, &arrows, &rels)?;
                    if !happel_check(&q).holds() {
                        continue;
                    }
                    if seen.insert(canonical_key(&q)?) {
                        out.push(q);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Trees on `v` vertices up to isomorphism, as edge lists.
fn unlabelled_trees(v: usize) -> Result<Vec<Vec<(usize, usize)>>> {
    if v == 1 {
        return Ok(vec![vec![]]);
    }
    if v == 2 {
        return Ok(vec![vec![(0, 1)]]);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let total = v.pow((v - 2) as u32);
    for code in 0..total {
        let mut seq = Vec::with_capacity(v - 2);
        let mut c = code;
        for _ in 0..v - 2 {
            seq.push(c % v);
            c /= v;
        }
        let edges = prufer_decode(v, &seq);
        let q = QuiverPresentation::new(v, &edges, &[])?;
        // undirected key: orient each edge from smaller to larger label
        let mut best: Option<Vec<(usize, usize)>> = None;
        let mut perm: Vec<usize> = (0..v).collect();
        loop {
            let mut e: Vec<(usize, usize)> = q
                .arrows
                .iter()
                .map(|a| {
                    let (x, y) = (perm[a.from], perm[a.to]);
                    (x.min(y), x.max(y))
                })
                .collect();
            e.sort();
            if best.as_ref().is_none_or(|b| e < *b) {
                best = Some(e);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        if seen.insert(best.unwrap()) {
            out.push(edges);
        }
    }
    Ok(out)
}

fn prufer_decode(v: usize, seq: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; v];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::with_capacity(v - 1);
    for &s in seq {
        let leaf = (0..v).find(|&x| degree[x] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..v).filter(|&x| degree[x] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Relation-avoiding path counts compared with Hom dimensions between
/// summands; returns the mismatching pairs.
pub fn path_count_mismatches(set: &ArcSet, q: &QuiverPresentation) -> Result<Vec<(Arc, Arc)>> {
    let counts = q.path_counts()?;
    let arcs = set.arcs();
    let mut bad = Vec::new();
    for (i, &x) in arcs.iter().enumerate() {
        for (j, &y) in arcs.iter().enumerate() {
            if counts[i][j] != hom_dim(x, y)? {
                bad.push((x, y));
            }
        }
    }
    Ok(bad)
}
