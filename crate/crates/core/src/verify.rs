//! Exhaustive checks at a fixed polygon size. Each check reports the first
//! counterexample it meets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::cyclic::Polygon;
use crate::endo::{
    approximation, canonical_key, endo_quiver, happel_check, happel_patterns,
    path_count_mismatches, QuiverPresentation,
};
use crate::error::Result;
use crate::orbit::{
    cross, ext_nonzero, hom_nonzero, Arc, ExtStrategy, HomStrategy,
};
use crate::rigid::{
    binomial, chain_tree_objects, chain_trees, enumerate_hom_configurations,
    enumerate_maximal_rigid_with_limit, enumerate_nc_partitions, is_loop_free_maximal_rigid,
    is_maximal_hom_free, is_maximal_rigid, is_section, riedtmann, riedtmann_inv, ArcSet,
    VertexRole,
};
use crate::tiling::{attach_loops, validate_tiling, TileKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, failure: Option<String>, ok_detail: String) -> Check {
        match failure {
            None => Check {
                name: name.into(),
                passed: true,
                detail: ok_detail,
            },
            Some(detail) => Check {
                name: name.into(),
                passed: false,
                detail,
            },
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.name, self.detail)
    }
}

/// Every check at size `n`, using `max_n` as the enumeration guard.
pub fn verify(n: usize, max_n: usize) -> Result<Vec<Check>> {
    let all = enumerate_maximal_rigid_with_limit(n, false, max_n)?;
    let loop_free = enumerate_maximal_rigid_with_limit(n, true, max_n)?;
    let mut checks = vec![
        strategy_agreement(n)?,
        classification_theorem(&all, &loop_free),
    ];
    checks.extend(structure(n, &all));
    checks.push(riedtmann_bijection(n)?);
    checks.push(endo_soundness(&all));
    checks.push(happel_equivalence(&all));
    checks.push(chain_tree_family(n)?);
    Ok(checks)
}

/// Hom and Ext computed three ways agree on every pair of arcs.
pub fn strategy_agreement(n: usize) -> Result<Check> {
    let p = Polygon::new(n)?;
    let arcs: Vec<Arc> = Arc::all(p).collect();
    let bad = arcs.par_iter().find_map_any(|&x| {
        arcs.iter().find_map(|&y| {
            let h: Vec<bool> = HomStrategy::ALL
                .iter()
                .map(|&s| hom_nonzero(x, y, s).unwrap())
                .collect();
            let e: Vec<bool> = ExtStrategy::ALL
                .iter()
                .map(|&s| ext_nonzero(x, y, s).unwrap())
                .collect();
            if h.iter().any(|&v| v != h[0]) {
                Some(format!("Hom({x}, {y}) disagrees: {h:?}"))
            } else if e.iter().any(|&v| v != e[0]) {
                Some(format!("Ext({x}, {y}) disagrees: {e:?}"))
            } else {
                None
            }
        })
    });
    Ok(Check::new(
        format!("n={n} hom/ext formulations agree"),
        bad,
        format!("{} pairs", arcs.len() * arcs.len()),
    ))
}

/// Maximal rigid objects equal the loop completions of the valid tilings.
pub fn classification_theorem(all: &[ArcSet], loop_free: &[ArcSet]) -> Check {
    let n = all.first().map_or(0, ArcSet::n);
    let generated: Result<BTreeSet<ArcSet>> = loop_free
        .par_iter()
        .filter(|t| validate_tiling(t).is_valid())
        .map(attach_loops)
        .collect::<Result<Vec<_>>>()
        .map(|v| v.into_iter().flatten().collect());
    let name = format!("n={n} maximal rigid = tilings with loops");
    let generated = match generated {
        Ok(g) => g,
        Err(e) => return Check::new(name, Some(e.to_string()), String::new()),
    };
    let brute: BTreeSet<ArcSet> = all.iter().cloned().collect();
    let failure = if let Some(x) = brute.difference(&generated).next() {
        Some(format!("{x} is maximal rigid but not generated"))
    } else {
        generated
            .difference(&brute)
            .next()
            .map(|x| format!("{x} is generated but not maximal rigid"))
    };
    Check::new(name, failure, format!("{} objects", brute.len()))
}

/// Structural facts about every maximal rigid object.
pub fn structure(n: usize, all: &[ArcSet]) -> Vec<Check> {
    let first = |pred: &(dyn Fn(&ArcSet) -> Option<String> + Sync)| {
        all.par_iter().find_map_first(|t| pred(t).map(|w| format!("{t}: {w}")))
    };
    let count = format!("{} objects", all.len());
    let mut out = Vec::new();
    out.push(Check::new(
        format!("n={n} bipartite and noncrossing"),
        first(&|t| bipartite_noncrossing(t)),
        count.clone(),
    ));
    out.push(Check::new(
        format!("n={n} isolated vertices are flanked by loops"),
        first(&|t| isolated_iff_flanking_loops(t)),
        count.clone(),
    ));
    out.push(Check::new(
        format!("n={n} loop placement rule"),
        first(&|t| loop_rule(t)),
        count.clone(),
    ));
    out.push(Check::new(
        format!("n={n} non-isolated part connected"),
        first(&|t| connected(t)),
        count.clone(),
    ));
    out.push(Check::new(
        format!("n={n} cycles have length four and avoid [i,i+1]"),
        first(&|t| cycle_facts(&t.without_loops())),
        count.clone(),
    ));
    out.push(Check::new(
        format!("n={n} stripping loops leaves a loop-free maximal rigid object"),
        first(&|t| (!is_loop_free_maximal_rigid(&t.without_loops())).then(|| "fails".into())),
        count.clone(),
    ));
    let min = all.iter().map(ArcSet::len).min().unwrap_or(0);
    let bound = if min + 1 < n {
        Some(format!("an object has {min} < n-1 summands"))
    } else {
        None
    };
    out.push(Check::new(
        format!("n={n} at least n-1 summands"),
        bound,
        format!("minimum {min}"),
    ));
    let attained = (min + 1 != n).then(|| format!("minimum is {min}, not n-1 = {}", n - 1));
    out.push(Check::new(
        format!("n={n} n-1 summands attained"),
        attained,
        format!("minimum {min}"),
    ));
    out
}

fn bipartite_noncrossing(t: &ArcSet) -> Option<String> {
    let p = t.polygon();
    if let Some(v) = p.vertices().find(|&v| t.role(v) == VertexRole::Mixed) {
        return Some(format!("vertex {} is both a source and a sink", v + 1));
    }
    let arcs: Vec<Arc> = t.non_loops().collect();
    for (k, &a) in arcs.iter().enumerate() {
        if let Some(&b) = arcs[k + 1..].iter().find(|&&b| cross(a, b)) {
            return Some(format!("{a} crosses {b}"));
        }
    }
    None
}

fn isolated_iff_flanking_loops(t: &ArcSet) -> Option<String> {
    let p = t.polygon();
    p.vertices()
        .find(|&i| t.is_isolated(i) != (t.has_loop(p.succ(i)) && t.has_loop(p.pred(i))))
        .map(|i| format!("vertex {}", i + 1))
}

fn loop_rule(t: &ArcSet) -> Option<String> {
    let p = t.polygon();
    p.vertices()
        .find(|&i| {
            let (next, prev) = (p.succ(i), p.pred(i));
            let next_ok = (t.role(next) == VertexRole::Source && !t.has_loop(next))
                || t.is_isolated(next);
            let prev_ok =
                (t.role(prev) == VertexRole::Sink && !t.has_loop(prev)) || t.is_isolated(prev);
            t.has_loop(i) != (next_ok && prev_ok)
        })
        .map(|i| format!("vertex {}", i + 1))
}

fn connected(t: &ArcSet) -> Option<String> {
    let p = t.polygon();
    let live: Vec<u8> = p.vertices().filter(|&v| !t.is_isolated(v)).collect();
    let &start = live.first()?;
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for a in t.non_loops().filter(|a| a.touches(v)) {
            let w = if a.s() == v { a.t() } else { a.s() };
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    live.iter()
        .find(|v| !seen.contains(v))
        .map(|v| format!("vertex {} is cut off", v + 1))
}

/// Every induced cycle has length 4 and no cycle uses an arc `[i, i+1]`.
pub fn cycle_facts(t: &ArcSet) -> Option<String> {
    let p = t.polygon();
    let n = p.n();
    let mut adj = vec![BTreeSet::new(); n];
    for a in t.non_loops() {
        adj[a.s() as usize].insert(a.t() as usize);
        adj[a.t() as usize].insert(a.s() as usize);
    }
    let mut cycles = Vec::new();
    // simple cycles with minimum vertex `root`, each found in both directions
    fn walk(root: usize, v: usize, path: &mut Vec<usize>, adj: &[BTreeSet<usize>], out: &mut Vec<Vec<usize>>) {
        for &w in &adj[v] {
            if w == root && path.len() >= 3 {
                out.push(path.clone());
            } else if w > root && !path.contains(&w) {
                path.push(w);
                walk(root, w, path, adj, out);
                path.pop();
            }
        }
    }
    for root in 0..n {
        walk(root, root, &mut vec![root], &adj, &mut cycles);
    }
    for c in &cycles {
        let len = c.len();
        for k in 0..len {
            let (u, v) = (c[k] as u8, c[(k + 1) % len] as u8);
            let a = if t.contains(Arc::raw(p, u, v)) {
                Arc::raw(p, u, v)
            } else {
                Arc::raw(p, v, u)
            };
            if p.succ(a.s()) == a.t() {
                return Some(format!("cycle {} uses {a}", cycle_label(c)));
            }
        }
        let chordless = (0..len).all(|i| {
            (i + 2..len).all(|j| (i == 0 && j == len - 1) || !adj[c[i]].contains(&c[j]))
        });
        if chordless && len != 4 {
            return Some(format!("induced cycle {} has length {len}", cycle_label(c)));
        }
    }
    None
}

fn cycle_label(c: &[usize]) -> String {
    c.iter()
        .map(|v| (v + 1).to_string())
        .collect::<Vec<_>>()
        .join("-")
}

pub fn catalan(n: u64) -> u64 {
    binomial(2 * n, n) / (n + 1)
}

/// Noncrossing partitions and Hom-configurations are both counted by the
/// Catalan number and matched by the Riedtmann map.
pub fn riedtmann_bijection(n: usize) -> Result<Check> {
    let parts = enumerate_nc_partitions(n)?;
    let configs = enumerate_hom_configurations(n)?;
    let cat = catalan(n as u64) as usize;
    let mut failure = None;
    if parts.len() != cat || configs.len() != cat {
        failure = Some(format!(
            "{} partitions, {} configurations, Catalan {cat}",
            parts.len(),
            configs.len()
        ));
    }
    if failure.is_none() {
        let mut image = BTreeSet::new();
        for part in &parts {
            let s = riedtmann(part)?;
            if !is_maximal_hom_free(&s) || riedtmann_inv(&s)? != *part {
                failure = Some(format!("partition {part} does not round-trip"));
                break;
            }
            image.insert(s);
        }
        let configs: BTreeSet<ArcSet> = configs.into_iter().collect();
        if failure.is_none() && image != configs {
            failure = Some("image differs from the Hom-configurations".into());
        }
    }
    Ok(Check::new(
        format!("n={n} Riedtmann bijection"),
        failure,
        format!("{cat} partitions"),
    ))
}

/// Path counts against Hom, approximation arrows against the quiver rule,
/// relation soundness and minimality, and degree bounds.
pub fn endo_soundness(all: &[ArcSet]) -> Check {
    let n = all.first().map_or(0, ArcSet::n);
    let failure = all.par_iter().find_map_first(|t| {
        endo_problem(t).map(|w| format!("{t}: {w}"))
    });
    Check::new(
        format!("n={n} endomorphism quivers match Hom"),
        failure,
        format!("{} objects", all.len()),
    )
}

fn endo_problem(t: &ArcSet) -> Option<String> {
    let q = match endo_quiver(t) {
        Ok(q) => q,
        Err(e) => return Some(e.to_string()),
    };
    match path_count_mismatches(t, &q) {
        Ok(bad) if !bad.is_empty() => {
            return Some(format!("path count differs from Hom at {} -> {}", bad[0].0, bad[0].1))
        }
        Err(e) => return Some(e.to_string()),
        Ok(_) => {}
    }
    let arcs = t.arcs();
    for (i, &a) in arcs.iter().enumerate() {
        let d = approximation(t, a).ok()?;
        let mut want: Vec<usize> = d
            .targets()
            .map(|x| arcs.binary_search(&x).unwrap())
            .collect();
        let mut got: Vec<usize> = q.arrows.iter().filter(|r| r.from == i).map(|r| r.to).collect();
        want.sort();
        got.sort();
        if want != got {
            return Some(format!("arrows out of {a} differ from its approximation"));
        }
        if q.in_degree(i) > 2 || q.out_degree(i) > 2 {
            return Some(format!("{a} has degree above 2"));
        }
    }
    for (k, a) in q.arrows.iter().enumerate() {
        for (l, b) in q.arrows.iter().enumerate() {
            if a.to != b.from {
                continue;
            }
            let hom = hom_nonzero(arcs[a.from], arcs[b.to], HomStrategy::RectForward).ok()?;
            if q.is_relation(k, l) == hom {
                let (x, y, z) = (arcs[a.from], arcs[a.to], arcs[b.to]);
                return Some(if hom {
                    format!("relation {x} -> {y} -> {z} has nonzero Hom")
                } else {
                    format!("composite {x} -> {y} -> {z} vanishes but is not a relation")
                });
            }
        }
    }
    None
}

/// The quiver satisfies the iterated tilted criterion exactly when the
/// tiling has no D tile.
pub fn happel_equivalence(all: &[ArcSet]) -> Check {
    let n = all.first().map_or(0, ArcSet::n);
    let failure = all.par_iter().find_map_first(|t| {
        let q = endo_quiver(t).ok()?;
        let has_d = validate_tiling(&t.without_loops())
            .tiling
            .map(|x| x.has_kind(TileKind::D))?;
        let report = happel_check(&q);
        (report.holds() == has_d).then(|| {
            format!(
                "{t}: D tile {has_d}, criterion {}",
                report.witness.unwrap_or_else(|| "holds".into())
            )
        })
    });
    let with_d = all
        .par_iter()
        .filter(|t| {
            validate_tiling(&t.without_loops())
                .tiling
                .is_some_and(|x| x.has_kind(TileKind::D))
        })
        .count();
    Check::new(
        format!("n={n} iterated tilted iff no D tile"),
        failure,
        format!("{} objects, {with_d} with a D tile", all.len()),
    )
}

fn has_forbidden_pair(s: &ArcSet) -> bool {
    let p = s.polygon();
    p.vertices().any(|i| {
        let j = p.succ(i);
        s.contains(Arc::raw(p, i, j))
            && (s.contains(Arc::raw(p, i, i)) || s.contains(Arc::raw(p, j, j)))
    })
}

/// Chain-tree counts, maximality, and the section correspondence for every
/// split `r + s = n`.
pub fn chain_tree_family(n: usize) -> Result<Check> {
    let mut failure = None;
    let mut objects = BTreeSet::new();
    for r in 1..n {
        let s = n - r;
        let trees = chain_trees(r, s)?.len() as u64;
        let expected = binomial((r + s - 2) as u64, (r - 1) as u64);
        if trees != expected {
            failure.get_or_insert(format!("r={r} s={s}: {trees} trees, binomial {expected}"));
        }
        for t in chain_tree_objects(r, s)? {
            if !is_maximal_rigid(&t) {
                failure.get_or_insert(format!("{t} is not maximal rigid"));
            }
            if !is_section(&t) || has_forbidden_pair(&t) {
                failure.get_or_insert(format!("{t} is not an admissible section"));
            }
            for k in 0..n as isize {
                objects.insert(t.rotate(k));
            }
        }
    }
    let sections: BTreeSet<ArcSet> = crate::rigid::enumerate_sections(n)?
        .into_iter()
        .filter(|s| !has_forbidden_pair(s))
        .collect();
    if failure.is_none() && sections != objects {
        failure = Some(format!(
            "{} admissible sections, {} rotated chain-tree objects",
            sections.len(),
            objects.len()
        ));
    }
    Ok(Check::new(
        format!("n={n} chain trees and sections"),
        failure,
        format!("{} admissible sections", sections.len()),
    ))
}

/// Row of the realizability table.
#[derive(Clone, Debug)]
pub struct PatternRow {
    pub pattern: QuiverPresentation,
    pub realized_by: Option<ArcSet>,
}

/// Happel-valid patterns on at most `max_vertices` vertices with a
/// 4-valent vertex, each with a realizing maximal rigid object of size
/// `n ≤ n_max` if one exists.
pub fn four_valent_patterns(
    max_vertices: usize,
    n_max: usize,
    guard: usize,
) -> Result<Vec<PatternRow>> {
    let patterns: Vec<QuiverPresentation> = happel_patterns(max_vertices)?
        .into_iter()
        .filter(|q| (0..q.vertex_count).any(|v| q.valency(v) == 4))
        .collect();
    let mut seen: BTreeMap<Vec<usize>, ArcSet> = BTreeMap::new();
    for n in 3..=n_max {
        let all = enumerate_maximal_rigid_with_limit(n, false, guard)?;
        let keys: Vec<(Vec<usize>, ArcSet)> = all
            .into_par_iter()
            .filter(|t| t.len() <= max_vertices)
            .map(|t| Ok((canonical_key(&endo_quiver(&t)?)?, t)))
            .collect::<Result<_>>()?;
        for (k, t) in keys {
            seen.entry(k).or_insert(t);
        }
    }
    patterns
        .into_iter()
        .map(|pattern| {
            let key = canonical_key(&pattern)?;
            Ok(PatternRow {
                realized_by: seen.get(&key).cloned(),
                pattern,
            })
        })
        .collect()
}
