use std::collections::BTreeSet;

use orbitcat::cyclic::Polygon;
use orbitcat::orbit::{ar_successors, cross, ext_nonzero, tau, Arc, ExtStrategy, TranslationQuiver};
use orbitcat::rigid::{
    binomial, chain_tree_objects, chain_trees, enumerate_hom_configurations,
    enumerate_maximal_rigid, enumerate_maximal_rigid_with_limit, enumerate_nc_partitions,
    enumerate_sections, is_maximal_hom_free, is_maximal_rigid, is_rigid, is_section, riedtmann,
    riedtmann_inv, ArcSet, NoncrossingPartition,
};
use orbitcat::Error;
use proptest::prelude::*;

/// Pairwise Ext conflicts as bitmasks, computed with the geometric
/// formulation (the enumerator tabulates the coordinate one).
fn conflicts(p: Polygon, loops: bool) -> (Vec<Arc>, Vec<u64>) {
    let arcs: Vec<Arc> = Arc::all(p).filter(|a| loops || !a.is_loop()).collect();
    let ext = |x, y| ext_nonzero(x, y, ExtStrategy::Geometric).unwrap();
    let masks = arcs
        .iter()
        .map(|&x| {
            arcs.iter()
                .enumerate()
                .filter(|&(_, &y)| ext(x, y) || ext(y, x))
                .fold(0u64, |m, (j, _)| m | 1 << j)
        })
        .collect();
    (arcs, masks)
}

/// Every rigid subset, by include/exclude recursion.
fn rigid_subsets(conf: &[u64]) -> Vec<u64> {
    fn rec(i: usize, chosen: u64, blocked: u64, conf: &[u64], out: &mut Vec<u64>) {
        if i == conf.len() {
            out.push(chosen);
            return;
        }
        rec(i + 1, chosen, blocked, conf, out);
        if blocked >> i & 1 == 0 && conf[i] >> i & 1 == 0 {
            rec(i + 1, chosen | 1 << i, blocked | conf[i], conf, out);
        }
    }
    let mut out = Vec::new();
    rec(0, 0, 0, conf, &mut out);
    out
}

fn to_set(p: Polygon, arcs: &[Arc], mask: u64) -> ArcSet {
    ArcSet::new(
        p.n(),
        (0..arcs.len()).filter(|&i| mask >> i & 1 == 1).map(|i| arcs[i]),
    )
    .unwrap()
}

fn dfs_maximal_rigid(n: usize) -> BTreeSet<ArcSet> {
    let p = Polygon::new(n).unwrap();
    let (arcs, conf) = conflicts(p, true);
    let blocked = |m: u64| (0..arcs.len()).fold(0u64, |b, i| if m >> i & 1 == 1 { b | conf[i] } else { b });
    rigid_subsets(&conf)
        .into_iter()
        .filter(|&m| {
            let b = blocked(m);
            (0..arcs.len()).all(|i| m >> i & 1 == 1 || b >> i & 1 == 1 || conf[i] >> i & 1 == 1)
        })
        .map(|m| to_set(p, &arcs, m))
        .collect()
}

fn dfs_loop_free(n: usize) -> BTreeSet<ArcSet> {
    let p = Polygon::new(n).unwrap();
    let (arcs, conf) = conflicts(p, false);
    rigid_subsets(&conf)
        .into_iter()
        .filter(|&m| {
            let live: u32 = (0..arcs.len())
                .filter(|&i| m >> i & 1 == 1)
                .fold(0, |acc, i| acc | 1 << arcs[i].s() | 1 << arcs[i].t());
            (0..arcs.len()).all(|i| {
                let a = arcs[i];
                m >> i & 1 == 1
                    || live >> a.s() & 1 == 0
                    || live >> a.t() & 1 == 0
                    || (0..arcs.len()).any(|j| m >> j & 1 == 1 && conf[i] >> j & 1 == 1)
            })
        })
        .map(|m| to_set(p, &arcs, m))
        .collect()
}

#[test]
fn maximal_rigid_matches_dfs_oracle() {
    for n in 3..=6 {
        let fast: BTreeSet<ArcSet> = enumerate_maximal_rigid(n, false).unwrap().into_iter().collect();
        assert_eq!(fast, dfs_maximal_rigid(n), "n={n}");
    }
}

#[test]
fn loop_free_matches_dfs_oracle() {
    for n in 3..=6 {
        let fast: BTreeSet<ArcSet> = enumerate_maximal_rigid(n, true).unwrap().into_iter().collect();
        assert_eq!(fast, dfs_loop_free(n), "n={n}");
    }
}

#[test]
fn frozen_counts() {
    let counts: Vec<usize> = (3..=8)
        .map(|n| enumerate_maximal_rigid(n, false).unwrap().len())
        .collect();
    assert_eq!(counts, [6, 32, 130, 474, 1876, 7432]);
    let loop_free: Vec<usize> = (3..=8)
        .map(|n| enumerate_maximal_rigid(n, true).unwrap().len())
        .collect();
    assert_eq!(loop_free, [13, 57, 251, 1096, 4838, 21885]);
}

#[test]
fn enumeration_is_sorted_and_maximal() {
    for n in 3..=7 {
        let all = enumerate_maximal_rigid(n, false).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(is_maximal_rigid));
    }
}

#[test]
fn enumeration_guards() {
    assert!(matches!(enumerate_maximal_rigid(2, false), Err(Error::InvalidInput(_))));
    assert!(matches!(enumerate_maximal_rigid(11, false), Err(Error::ResourceLimit(_))));
    assert!(matches!(
        enumerate_maximal_rigid_with_limit(12, false, 20),
        Err(Error::ResourceLimit(_))
    ));
    assert!(matches!(
        enumerate_maximal_rigid_with_limit(6, true, 5),
        Err(Error::ResourceLimit(_))
    ));
}

#[test]
fn singletons_are_not_maximal() {
    for n in 3..=8 {
        for a in Arc::all(Polygon::new(n).unwrap()) {
            let s = ArcSet::new(n, [a]).unwrap();
            assert!(is_rigid(&s));
            assert!(!is_maximal_rigid(&s), "{a} at n={n}");
        }
    }
}

/// Restricted growth strings, kept when no two blocks interleave.
fn brute_nc_partitions(n: usize) -> BTreeSet<Vec<Vec<u8>>> {
    let mut out = BTreeSet::new();
    let mut rgs = vec![0usize; n];
    loop {
        let crossing = (0..n).any(|a| {
            (a + 1..n).any(|b| {
                (b + 1..n).any(|c| {
                    (c + 1..n).any(|d| rgs[a] == rgs[c] && rgs[b] == rgs[d] && rgs[a] != rgs[b])
                })
            })
        });
        if !crossing {
            let k = rgs.iter().max().unwrap() + 1;
            let blocks: Vec<Vec<u8>> = (0..k)
                .map(|b| (0..n).filter(|&i| rgs[i] == b).map(|i| i as u8).collect())
                .collect();
            out.insert(blocks);
        }
        // next restricted growth string
        let mut i = n - 1;
        loop {
            let cap = rgs[..i].iter().max().map_or(0, |m| m + 1);
            if i > 0 && rgs[i] < cap {
                rgs[i] += 1;
                for r in &mut rgs[i + 1..] {
                    *r = 0;
                }
                break;
            }
            if i == 0 {
                return out;
            }
            i -= 1;
        }
    }
}

#[test]
fn nc_partitions_match_brute_force() {
    assert_eq!(enumerate_nc_partitions(3).unwrap().len(), 5);
    assert_eq!(enumerate_nc_partitions(4).unwrap().len(), 14);
    for n in 1..=7 {
        let fast: BTreeSet<Vec<Vec<u8>>> = enumerate_nc_partitions(n)
            .unwrap()
            .into_iter()
            .map(|p| p.blocks().to_vec())
            .collect();
        assert_eq!(fast, brute_nc_partitions(n), "n={n}");
    }
}

#[test]
fn partition_parsing() {
    let p = NoncrossingPartition::parse(6, "1 2 3|4 5|6").unwrap();
    assert_eq!(p.to_string(), "1 2 3|4 5|6");
    assert!(NoncrossingPartition::parse(4, "1 3|2 4").is_err());
    assert!(NoncrossingPartition::parse(4, "1 2|3").is_err());
    assert!(NoncrossingPartition::parse(4, "1 2|2 3 4").is_err());
    assert!(NoncrossingPartition::parse(4, "1 2|3 9").is_err());
}

#[test]
fn riedtmann_on_hexagon() {
    let p = NoncrossingPartition::parse(6, "1 2 3|4 5|6").unwrap();
    let s = riedtmann(&p).unwrap();
    assert_eq!(s, ArcSet::parse(6, "1,2;2,3;3,1;4,5;5,4;6,6").unwrap());
    assert!(is_maximal_hom_free(&s));
    assert_eq!(riedtmann_inv(&s).unwrap(), p);
}

#[test]
fn hom_configurations_are_catalan_and_invert() {
    let catalan = [5, 14, 42, 132, 429];
    for (n, &c) in (3..=7).zip(&catalan) {
        let configs = enumerate_hom_configurations(n).unwrap();
        assert_eq!(configs.len(), c, "n={n}");
        for s in &configs {
            assert_eq!(s.len(), n, "{s}");
            let part = riedtmann_inv(s).unwrap();
            assert_eq!(riedtmann(&part).unwrap(), *s);
        }
    }
    assert!(riedtmann_inv(&ArcSet::parse(4, "1,2").unwrap()).is_err());
}

fn section_oracle(n: usize) -> BTreeSet<ArcSet> {
    let p = Polygon::new(n).unwrap();
    let by_orbit: Vec<Vec<Arc>> = (0..n)
        .map(|d| Arc::all(p).filter(|&a| TranslationQuiver::orbit(a) == d).collect())
        .collect();
    let mut out = BTreeSet::new();
    let total = n.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let arcs: Vec<Arc> = by_orbit
            .iter()
            .map(|o| {
                let a = o[c % n];
                c /= n;
                a
            })
            .collect();
        let closed = arcs.iter().all(|&x| {
            ar_successors(x)
                .into_iter()
                .all(|y| arcs.contains(&y) || arcs.contains(&tau(y)))
        });
        if closed {
            out.insert(ArcSet::new(n, arcs).unwrap());
        }
    }
    out
}

#[test]
fn sections_match_oracle() {
    for n in 3..=6 {
        let fast = enumerate_sections(n).unwrap();
        assert_eq!(fast.len(), n << (n - 1));
        assert!(fast.iter().all(is_section));
        assert_eq!(fast.into_iter().collect::<BTreeSet<_>>(), section_oracle(n), "n={n}");
    }
}

fn brute_chain_trees(r: usize, s: usize) -> usize {
    let n = r + s;
    let p = Polygon::new(n).unwrap();
    let cand: Vec<Arc> = (0..r as u8)
        .flat_map(|a| (r as u8..n as u8).map(move |b| Arc::raw(p, a, b)))
        .collect();
    (0u32..1 << cand.len())
        .filter(|m| m.count_ones() as usize == n - 1)
        .filter(|&m| {
            let chosen: Vec<Arc> = (0..cand.len()).filter(|&i| m >> i & 1 == 1).map(|i| cand[i]).collect();
            let noncrossing = chosen
                .iter()
                .enumerate()
                .all(|(i, &a)| chosen[i + 1..].iter().all(|&b| !cross(a, b)));
            let mut comp: Vec<usize> = (0..n).collect();
            for a in &chosen {
                let (x, y) = (comp[a.s() as usize], comp[a.t() as usize]);
                for c in comp.iter_mut() {
                    if *c == x {
                        *c = y;
                    }
                }
            }
            noncrossing && comp.iter().all(|&c| c == comp[0])
        })
        .count()
}

#[test]
fn chain_tree_counts() {
    for n in 3..=10 {
        for r in 1..n {
            let s = n - r;
            let got = chain_trees(r, s).unwrap().len() as u64;
            assert_eq!(got, binomial(n as u64 - 2, r as u64 - 1), "r={r} s={s}");
            if r * s <= 12 {
                assert_eq!(got as usize, brute_chain_trees(r, s), "r={r} s={s}");
            }
        }
    }
    assert!(chain_trees(0, 3).is_err());
}

#[test]
fn chain_tree_objects_are_maximal_sections() {
    for n in 3..=7 {
        for r in 1..n {
            for t in chain_tree_objects(r, n - r).unwrap() {
                assert!(is_maximal_rigid(&t), "{t}");
                assert!(is_section(&t), "{t}");
            }
        }
    }
}

#[test]
fn arcset_text() {
    let s = ArcSet::parse(5, "1,3; 1,5;4,5").unwrap();
    assert_eq!(s.to_string(), "1,3;1,5;4,5");
    assert_eq!(ArcSet::parse(5, "").unwrap(), ArcSet::empty(5).unwrap());
    assert!(ArcSet::parse(5, "1,6").is_err());
    assert!(ArcSet::parse(5, "1;3").is_err());
}

fn max_rigid_strategy() -> impl Strategy<Value = ArcSet> {
    (3usize..=7).prop_flat_map(|n| {
        let all = enumerate_maximal_rigid(n, false).unwrap();
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn maximal_rigid_is_rotation_invariant(t in max_rigid_strategy(), k in -8isize..8) {
        prop_assert!(is_maximal_rigid(&t.rotate(k)));
    }

    #[test]
    fn removing_a_summand_breaks_maximality(t in max_rigid_strategy(), pick in 0usize..64) {
        let drop = t.arcs()[pick % t.len()];
        let rest = ArcSet::new(t.n(), t.iter().filter(|&a| a != drop)).unwrap();
        prop_assert!(is_rigid(&rest));
        prop_assert!(!is_maximal_rigid(&rest));
    }
}
