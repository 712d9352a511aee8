//! Rigid objects as sets of arcs, and the enumerators built on them.
//!
//! Maximal rigid objects are exactly the maximal cliques of the
//! "pairwise Ext-free" graph on the `n²` arcs (every single arc is rigid), so
//! enumeration is a Bron–Kerbosch search over 128-bit arc masks. The same
//! search over the "pairwise Hom-free" graph yields Hom-configurations.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::cyclic::Polygon;
use crate::error::{invalid, Error, Result};
use crate::orbit::{self, ar_successors, cross, Arc, OrbitCategory, TABLE_MAX_N};

/// Default largest n the enumerators accept.
pub const DEFAULT_MAX_N: usize = 10;

/// A basic object: a set of distinct arcs, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ArcSet {
    n: u8,
    arcs: Vec<Arc>,
}

/// Role of a polygon vertex in an arc set. Sources and sinks are decided by
/// the non-loop arcs; a vertex touched only by a loop is `LoopOnly`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexRole {
    Isolated,
    Source,
    Sink,
    Mixed,
    LoopOnly,
}

impl ArcSet {
    pub fn new(n: usize, arcs: impl IntoIterator<Item = Arc>) -> Result<ArcSet> {
        let p = Polygon::new(n)?;
        let mut v: Vec<Arc> = arcs.into_iter().collect();
        if let Some(bad) = v.iter().find(|a| a.n() != p.n()) {
            return invalid(format!("arc {bad} does not live in a {n}-gon"));
        }
        v.sort();
        v.dedup();
        Ok(ArcSet { n: n as u8, arcs: v })
    }

    pub fn empty(n: usize) -> Result<ArcSet> {
        ArcSet::new(n, [])
    }

    /// Parses `"a,b;c,d;..."` with 1-based labels. An empty string is the
    /// empty set.
    pub fn parse(n: usize, text: &str) -> Result<ArcSet> {
        let arcs = text
            .split(';')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Arc::parse(n, s))
            .collect::<Result<Vec<_>>>()?;
        ArcSet::new(n, arcs)
    }

    pub(crate) fn from_sorted(p: Polygon, arcs: Vec<Arc>) -> ArcSet {
        ArcSet {
            n: p.n() as u8,
            arcs,
        }
    }

    pub fn from_mask(p: Polygon, mask: u128) -> ArcSet {
        let arcs = (0..p.n() * p.n())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| Arc::from_index(p, i))
            .collect();
        ArcSet::from_sorted(p, arcs)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn polygon(&self) -> Polygon {
        Polygon::new(self.n()).unwrap()
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    pub fn contains(&self, a: Arc) -> bool {
        self.arcs.binary_search(&a).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Arc> + '_ {
        self.arcs.iter().copied()
    }

    pub fn loops(&self) -> impl Iterator<Item = Arc> + '_ {
        self.iter().filter(|a| a.is_loop())
    }

    pub fn non_loops(&self) -> impl Iterator<Item = Arc> + '_ {
        self.iter().filter(|a| !a.is_loop())
    }

    pub fn has_loop(&self, v: u8) -> bool {
        self.contains(Arc::raw(self.polygon(), v, v))
    }

    pub fn without_loops(&self) -> ArcSet {
        ArcSet::from_sorted(self.polygon(), self.non_loops().collect())
    }

    pub fn with(&self, a: Arc) -> ArcSet {
        let mut arcs = self.arcs.clone();
        if let Err(pos) = arcs.binary_search(&a) {
            arcs.insert(pos, a);
        }
        ArcSet::from_sorted(self.polygon(), arcs)
    }

    pub fn rotate(&self, k: isize) -> ArcSet {
        let mut arcs: Vec<Arc> = self.iter().map(|a| a.rotate(k)).collect();
        arcs.sort();
        ArcSet::from_sorted(self.polygon(), arcs)
    }

    /// Bitmask over arc indices. Only meaningful for `n ≤ 11`.
    pub fn mask(&self) -> u128 {
        self.iter().fold(0u128, |m, a| m | 1 << a.index())
    }

    pub fn role(&self, v: u8) -> VertexRole {
        let mut out = false;
        let mut inc = false;
        let mut looped = false;
        for a in self.iter() {
            if a.is_loop() {
                looped |= a.s() == v;
            } else {
                out |= a.s() == v;
                inc |= a.t() == v;
            }
        }
        match (out, inc, looped) {
            (false, false, false) => VertexRole::Isolated,
            (false, false, true) => VertexRole::LoopOnly,
            (true, false, _) => VertexRole::Source,
            (false, true, _) => VertexRole::Sink,
            (true, true, _) => VertexRole::Mixed,
        }
    }

    pub fn is_isolated(&self, v: u8) -> bool {
        self.role(v) == VertexRole::Isolated
    }

    pub fn isolated_vertices(&self) -> Vec<u8> {
        self.polygon()
            .vertices()
            .filter(|&v| self.is_isolated(v))
            .collect()
    }
}

impl fmt::Display for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, a) in self.arcs.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Pairwise (and self) Ext-vanishing.
pub fn is_rigid(set: &ArcSet) -> bool {
    let arcs = set.arcs();
    arcs.iter()
        .all(|&x| arcs.iter().all(|&y| !orbit::ext_coordinate(x, y)))
}

/// Rigid, and every arc outside the set breaks rigidity when added.
pub fn is_maximal_rigid(set: &ArcSet) -> bool {
    is_rigid(set)
        && Arc::all(set.polygon())
            .filter(|a| !set.contains(*a))
            .all(|a| !rigid_with(set, a))
}

fn rigid_with(set: &ArcSet, a: Arc) -> bool {
    !orbit::ext_coordinate(a, a)
        && set
            .iter()
            .all(|x| !orbit::ext_coordinate(a, x) && !orbit::ext_coordinate(x, a))
}

/// Loop-free, rigid, and no non-loop arc between two distinct vertices that
/// are non-isolated in `set` can be added keeping rigidity.
pub fn is_loop_free_maximal_rigid(set: &ArcSet) -> bool {
    if set.loops().next().is_some() || !is_rigid(set) {
        return false;
    }
    let p = set.polygon();
    Arc::all(p)
        .filter(|a| !a.is_loop() && !set.contains(*a))
        .filter(|a| !set.is_isolated(a.s()) && !set.is_isolated(a.t()))
        .all(|a| !rigid_with(set, a))
}

/// Pairwise Hom-free (identity excluded) and maximal with that property.
pub fn is_maximal_hom_free(set: &ArcSet) -> bool {
    let hom_free = |x: Arc, y: Arc| !orbit::hom_rect_forward(x, y) && !orbit::hom_rect_forward(y, x);
    let arcs = set.arcs();
    let pairwise = arcs
        .iter()
        .enumerate()
        .all(|(i, &x)| arcs[i + 1..].iter().all(|&y| hom_free(x, y)));
    pairwise
        && Arc::all(set.polygon())
            .filter(|a| !set.contains(*a))
            .all(|a| !arcs.iter().all(|&x| hom_free(a, x)))
}

fn check_limit(n: usize, max_n: usize) -> Result<Polygon> {
    let p = Polygon::new(n)?;
    let cap = max_n.min(TABLE_MAX_N);
    if n > cap {
        return Err(Error::ResourceLimit(format!(
            "enumeration guard is n <= {cap}, requested n = {n}"
        )));
    }
    Ok(p)
}

/// All maximal cliques of the graph on `candidates` with adjacency `adj`.
fn maximal_cliques(candidates: u128, adj: &[u128]) -> Vec<u128> {
    fn expand(r: u128, mut p: u128, mut x: u128, adj: &[u128], out: &mut Vec<u128>) {
        if p == 0 {
            if x == 0 {
                out.push(r);
            }
            return;
        }
        let pivot = bits(p | x)
            .max_by_key(|&u| (p & adj[u]).count_ones())
            .unwrap();
        let mut branch = p & !adj[pivot];
        while branch != 0 {
            let v = branch.trailing_zeros() as usize;
            let bit = 1u128 << v;
            expand(r | bit, p & adj[v], x & adj[v], adj, out);
            p &= !bit;
            x |= bit;
            branch &= !bit;
        }
    }

    // split the top level across threads; each branch carries its own P/X
    let mut p = candidates;
    let mut x = 0u128;
    let mut branches = Vec::new();
    let pivot = bits(p).max_by_key(|&u| (p & adj[u]).count_ones());
    let Some(pivot) = pivot else {
        return vec![0];
    };
    let mut branch = p & !adj[pivot];
    while branch != 0 {
        let v = branch.trailing_zeros() as usize;
        let bit = 1u128 << v;
        branches.push((bit, p & adj[v], x & adj[v]));
        p &= !bit;
        x |= bit;
        branch &= !bit;
    }
    branches
        .into_par_iter()
        .flat_map_iter(|(r, p, x)| {
            let mut out = Vec::new();
            expand(r, p, x, adj, &mut out);
            out
        })
        .collect()
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn compatibility(cat: &OrbitCategory) -> (u128, Vec<u128>) {
    let m = cat.arc_count();
    let mut usable = 0u128;
    let adj: Vec<u128> = (0..m)
        .map(|a| {
            if cat.conflict_mask(a) >> a & 1 == 0 {
                usable |= 1 << a;
            }
            cat.full_mask() & !cat.conflict_mask(a) & !(1u128 << a)
        })
        .collect();
    (usable, adj)
}

fn to_sorted_sets(p: Polygon, masks: Vec<u128>) -> Vec<ArcSet> {
    let mut sets: Vec<ArcSet> = masks.into_iter().map(|m| ArcSet::from_mask(p, m)).collect();
    sets.sort();
    sets.dedup();
    sets
}

/// Maximal rigid objects (`loop_free = false`) or loop-free maximal rigid
/// objects in the sense of [`is_loop_free_maximal_rigid`] (`loop_free =
/// true`), canonically sorted. Uses [`DEFAULT_MAX_N`] as the guard.
pub fn enumerate_maximal_rigid(n: usize, loop_free: bool) -> Result<Vec<ArcSet>> {
    enumerate_maximal_rigid_with_limit(n, loop_free, DEFAULT_MAX_N)
}

pub fn enumerate_maximal_rigid_with_limit(
    n: usize,
    loop_free: bool,
    max_n: usize,
) -> Result<Vec<ArcSet>> {
    let p = check_limit(n, max_n)?;
    let cat = OrbitCategory::new(n)?;
    let (usable, adj) = compatibility(&cat);
    if !loop_free {
        return Ok(to_sorted_sets(p, maximal_cliques(usable, &adj)));
    }
    // Group by the set of non-isolated vertices: for a fixed support V the
    // condition is maximality among arcs with both ends in V.
    let masks: Vec<u128> = (0u32..1 << n)
        .into_par_iter()
        .flat_map_iter(|support| {
            let inside = Arc::all(p)
                .filter(|a| !a.is_loop() && support >> a.s() & 1 == 1 && support >> a.t() & 1 == 1)
                .fold(0u128, |m, a| m | 1 << a.index());
            maximal_cliques(inside & usable, &adj)
                .into_iter()
                .filter(move |&clique| support_of(p, clique) == support)
        })
        .collect();
    Ok(to_sorted_sets(p, masks))
}

fn support_of(p: Polygon, mask: u128) -> u32 {
    bits(mask).fold(0u32, |acc, i| {
        let a = Arc::from_index(p, i);
        acc | 1 << a.s() | 1 << a.t()
    })
}

/// All maximal Hom-free sets (Hom-configurations), canonically sorted.
pub fn enumerate_hom_configurations(n: usize) -> Result<Vec<ArcSet>> {
    enumerate_hom_configurations_with_limit(n, DEFAULT_MAX_N)
}

pub fn enumerate_hom_configurations_with_limit(n: usize, max_n: usize) -> Result<Vec<ArcSet>> {
    let p = check_limit(n, max_n)?;
    let cat = OrbitCategory::new(n)?;
    let m = cat.arc_count();
    let adj: Vec<u128> = (0..m)
        .map(|a| cat.full_mask() & !cat.hom_mask(a) & !(1u128 << a))
        .collect();
    Ok(to_sorted_sets(p, maximal_cliques(cat.full_mask(), &adj)))
}

/// A partition of `{1, ..., n}` whose blocks pairwise do not cross.
/// Blocks are stored 0-based, each sorted, ordered by their minima.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NoncrossingPartition {
    n: usize,
    blocks: Vec<Vec<u8>>,
}

impl NoncrossingPartition {
    /// From 0-based blocks; checks covering, disjointness and noncrossing.
    pub fn new(n: usize, blocks: Vec<Vec<u8>>) -> Result<Self> {
        let mut blocks: Vec<Vec<u8>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort();
                b
            })
            .collect();
        if blocks.iter().any(|b| b.is_empty()) {
            return invalid("partition has an empty block");
        }
        blocks.sort();
        let mut seen = vec![false; n];
        for &x in blocks.iter().flatten() {
            let slot = seen
                .get_mut(x as usize)
                .ok_or_else(|| Error::InvalidInput(format!("element {} outside 1..={n}", x + 1)))?;
            if *slot {
                return invalid(format!("element {} appears twice", x + 1));
            }
            *slot = true;
        }
        if seen.iter().any(|s| !s) {
            return invalid("partition does not cover 1..n");
        }
        let part = NoncrossingPartition { n, blocks };
        if !part.blocks_noncrossing() {
            return invalid(format!("partition {part} has crossing blocks"));
        }
        Ok(part)
    }

    /// Parses `"1 2 3|4 5|6"`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let blocks = text
            .split('|')
            .map(|b| {
                b.split_whitespace()
                    .map(|x| match x.parse::<usize>() {
                        Ok(v) if v >= 1 && v <= n => Ok((v - 1) as u8),
                        _ => invalid(format!("bad element {x:?} for n = {n}")),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        NoncrossingPartition::new(n, blocks)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    fn blocks_noncrossing(&self) -> bool {
        let mut owner = vec![0usize; self.n];
        for (k, b) in self.blocks.iter().enumerate() {
            for &x in b {
                owner[x as usize] = k;
            }
        }
        // a < b < c < d with a, c in one block and b, d in another
        for a in 0..self.n {
            for b in a + 1..self.n {
                if owner[b] == owner[a] {
                    continue;
                }
                for c in b + 1..self.n {
                    if owner[c] != owner[a] {
                        continue;
                    }
                    if (c + 1..self.n).any(|d| owner[d] == owner[b]) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for NoncrossingPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str("|")?;
            }
            for (j, x) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
        }
        Ok(())
    }
}

/// All noncrossing partitions of `{1, ..., n}`, canonically sorted.
///
/// The block containing the first remaining element splits the rest into
/// independent gaps.
pub fn enumerate_nc_partitions(n: usize) -> Result<Vec<NoncrossingPartition>> {
    if n == 0 {
        return invalid("noncrossing partitions need n >= 1");
    }
    fn rec(elems: &[u8]) -> Vec<Vec<Vec<u8>>> {
        let Some((&first, rest)) = elems.split_first() else {
            return vec![vec![]];
        };
        let mut out = Vec::new();
        // choose the remaining members of first's block as a subset of rest;
        // the gaps between chosen members are partitioned independently
        let k = rest.len();
        for choice in 0u32..1 << k {
            let mut block = vec![first];
            let mut gaps: Vec<Vec<u8>> = vec![Vec::new()];
            for (i, &e) in rest.iter().enumerate() {
                if choice >> i & 1 == 1 {
                    block.push(e);
                    gaps.push(Vec::new());
                } else {
                    gaps.last_mut().unwrap().push(e);
                }
            }
            let mut partial: Vec<Vec<Vec<u8>>> = vec![vec![block]];
            for gap in &gaps {
                let sub = rec(gap);
                partial = partial
                    .into_iter()
                    .flat_map(|p| {
                        sub.iter().map(move |s| {
                            let mut q = p.clone();
                            q.extend(s.iter().cloned());
                            q
                        })
                    })
                    .collect();
            }
            out.extend(partial);
        }
        out
    }
    let elems: Vec<u8> = (0..n as u8).collect();
    let mut parts: Vec<NoncrossingPartition> = rec(&elems)
        .into_iter()
        .map(|blocks| NoncrossingPartition::new(n, blocks))
        .collect::<Result<_>>()?;
    parts.sort();
    Ok(parts)
}

/// Each `k` in block `{k_1 < ... < k_s}` with `k = k_r` becomes the arc
/// `[k_r, k_{r+1}]`, indices taken cyclically within the block.
pub fn riedtmann(part: &NoncrossingPartition) -> Result<ArcSet> {
    let p = Polygon::new(part.n())?;
    let arcs = part.blocks().iter().flat_map(|b| {
        (0..b.len()).map(move |r| Arc::raw(p, b[r], b[(r + 1) % b.len()]))
    });
    ArcSet::new(p.n(), arcs)
}

/// Inverse of [`riedtmann`] on Hom-configurations: blocks are the cycles of
/// the map `s ↦ t`.
pub fn riedtmann_inv(set: &ArcSet) -> Result<NoncrossingPartition> {
    if !is_maximal_hom_free(set) {
        return invalid(format!("{set} is not a maximal Hom-free set"));
    }
    let n = set.n();
    let mut next: Vec<Option<u8>> = vec![None; n];
    for a in set.iter() {
        if next[a.s() as usize].replace(a.t()).is_some() {
            return invalid(format!("vertex {} is the source of two arcs", a.s() + 1));
        }
    }
    let mut seen = vec![false; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut block = Vec::new();
        let mut v = start;
        while !seen[v] {
            seen[v] = true;
            block.push(v as u8);
            v = next[v].ok_or_else(|| {
                Error::InvalidInput(format!("vertex {} is not a source", v + 1))
            })? as usize;
        }
        if v != start {
            return invalid("successor map is not a permutation");
        }
        blocks.push(block);
    }
    let part = NoncrossingPartition::new(n, blocks)?;
    if riedtmann(&part)? != *set {
        return invalid(format!("{set} is not in the image of the bijection"));
    }
    Ok(part)
}

/// Meets each τ-orbit of Γ(n) once, and for every arrow `x → y` of Γ(n)
/// with `x` in the set, `y` or `τy` is in the set.
pub fn is_section(set: &ArcSet) -> bool {
    let n = set.n();
    let mut hits = vec![0usize; n];
    for a in set.iter() {
        hits[orbit::TranslationQuiver::orbit(a)] += 1;
    }
    if hits.iter().any(|&h| h != 1) {
        return false;
    }
    set.iter().all(|x| {
        ar_successors(x)
            .into_iter()
            .all(|y| set.contains(y) || set.contains(y.tau()))
    })
}

/// Every section of Γ(n): a start `[i, i+1]` and, orbit by orbit along
/// `1, 2, ..., n-1, 0`, a choice between the successor and its τ-translate.
pub fn enumerate_sections(n: usize) -> Result<Vec<ArcSet>> {
    let p = Polygon::new(n)?;
    let mut out = Vec::new();
    for i in p.vertices() {
        for choice in 0u32..1 << (n - 1) {
            let mut cur = Arc::raw(p, i, p.succ(i));
            let mut arcs = vec![cur];
            for step in 0..n - 1 {
                let up = Arc::raw(p, cur.s(), p.succ(cur.t()));
                cur = if choice >> step & 1 == 1 { up.tau() } else { up };
                arcs.push(cur);
            }
            let set = ArcSet::new(n, arcs)?;
            debug_assert!(is_section(&set));
            out.push(set);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Noncrossing spanning trees with sources `1..=r` and sinks `r+1..=r+s`,
/// every arc running from a source to a sink. Found by backtracking over the
/// `r·s` candidate arcs.
pub fn chain_trees(r: usize, s: usize) -> Result<Vec<ArcSet>> {
    if r == 0 || s == 0 {
        return invalid("chain trees need r >= 1 and s >= 1");
    }
    let n = r + s;
    let p = Polygon::new(n)?;
    let candidates: Vec<Arc> = (0..r as u8)
        .flat_map(|a| (r as u8..n as u8).map(move |b| Arc::raw(p, a, b)))
        .collect();

    fn find(parent: &[usize], mut v: usize) -> usize {
        while parent[v] != v {
            v = parent[v];
        }
        v
    }

    fn rec(
        p: Polygon,
        candidates: &[Arc],
        at: usize,
        chosen: &mut Vec<Arc>,
        parent: &mut Vec<usize>,
        out: &mut Vec<ArcSet>,
    ) {
        let need = p.n() - 1 - chosen.len();
        if need == 0 {
            out.push(ArcSet::new(p.n(), chosen.iter().copied()).unwrap());
            return;
        }
        if candidates.len() - at < need {
            return;
        }
        let a = candidates[at];
        let (ra, rb) = (find(parent, a.s() as usize), find(parent, a.t() as usize));
        if ra != rb && chosen.iter().all(|&c| !cross(c, a)) {
            let saved = parent.clone();
            parent[ra] = rb;
            chosen.push(a);
            rec(p, candidates, at + 1, chosen, parent, out);
            chosen.pop();
            *parent = saved;
        }
        rec(p, candidates, at + 1, chosen, parent, out);
    }

    let mut out = Vec::new();
    let mut parent: Vec<usize> = (0..n).collect();
    rec(p, &candidates, 0, &mut Vec::new(), &mut parent, &mut out);
    out.sort();
    Ok(out)
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Maximal rigid objects whose loop-free part is a chain tree on `(r, s)`,
/// with loops placed by the loop rules (one object, or two when both end
/// loops are possible).
pub fn chain_tree_objects(r: usize, s: usize) -> Result<Vec<ArcSet>> {
    let mut out = Vec::new();
    for tree in chain_trees(r, s)? {
        out.extend(crate::tiling::attach_loops(&tree)?);
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Sorted, deduplicated union of arc sets.
pub fn canonical_union(sets: impl IntoIterator<Item = ArcSet>) -> Vec<ArcSet> {
    let set: BTreeSet<ArcSet> = sets.into_iter().collect();
    set.into_iter().collect()
}
