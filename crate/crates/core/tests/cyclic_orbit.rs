use orbitcat::cyclic::{cw_contains, Polygon, Vertex};
use orbitcat::orbit::{
    ar_quiver, ar_successors, cross, ext_nonzero, hammock, hom_dim, hom_nonzero, rotate, tau, Arc,
    ExtStrategy, HomStrategy,
};
use proptest::prelude::*;

/// Walks clockwise from the first entry, one step at a time, and consumes
/// entries as they are met. Repeated entries are consumed in place.
fn walk_oracle(n: usize, tuple: &[usize]) -> bool {
    let mut want = 1;
    let mut pos = tuple[0];
    while want < tuple.len() && tuple[want] == pos {
        want += 1;
    }
    for _ in 0..n - 1 {
        pos = pos % n + 1;
        while want < tuple.len() && tuple[want] == pos {
            want += 1;
        }
    }
    want == tuple.len()
}

fn vertices(n: usize, labels: &[usize]) -> Vec<Vertex> {
    let p = Polygon::new(n).unwrap();
    labels.iter().map(|&l| p.vertex(l).unwrap()).collect()
}

fn arc(n: usize, s: usize, t: usize) -> Arc {
    Arc::new(n, s, t).unwrap()
}

fn all_tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..=n).map(move |v| {
                    let mut u = t.clone();
                    u.push(v);
                    u
                })
            })
            .collect();
    }
    out
}

#[test]
fn cw_matches_walk_oracle() {
    for n in 3..=8 {
        for len in 2..=5 {
            for t in all_tuples(n, len) {
                assert_eq!(
                    cw_contains(&vertices(n, &t)).unwrap(),
                    walk_oracle(n, &t),
                    "n={n} {t:?}"
                );
            }
        }
    }
}

#[test]
fn cw_examples() {
    assert!(cw_contains(&vertices(5, &[1, 2, 3])).unwrap());
    assert!(!cw_contains(&vertices(5, &[1, 3, 2])).unwrap());
    assert!(cw_contains(&vertices(5, &[2, 4, 5])).unwrap());
    assert!(!walk_oracle(5, &[1, 3, 2]));
}

#[test]
fn triple_decomposition() {
    // a tuple holds iff its consecutive triples hold and the walk closes in
    // one revolution
    for n in 3..=8 {
        let p = Polygon::new(n).unwrap();
        for len in 3..=5 {
            for t in all_tuples(n, len) {
                let raw: Vec<u8> = t.iter().map(|&v| (v - 1) as u8).collect();
                let triples = raw.windows(3).all(|w| p.cw(w));
                let total: usize = raw.windows(2).map(|w| p.dist(w[0], w[1])).sum();
                assert_eq!(p.cw(&raw), triples && total < n, "n={n} {t:?}");
            }
        }
    }
}

#[test]
fn cross_examples() {
    assert!(cross(arc(5, 1, 3), arc(5, 2, 4)));
    assert!(!cross(arc(5, 1, 3), arc(5, 1, 4)));
    assert!(!cross(arc(5, 1, 2), arc(5, 3, 4)));
    assert!(!cross(arc(5, 2, 2), arc(5, 1, 3)));
}

#[test]
fn rotation_examples() {
    assert_eq!(rotate(arc(5, 1, 3), 0), arc(5, 1, 3));
    assert_eq!(rotate(arc(5, 1, 3), 1), arc(5, 5, 2));
    assert_eq!(rotate(arc(5, 1, 3), 5), arc(5, 1, 3));
    assert_eq!(tau(arc(5, 1, 3)), arc(5, 5, 2));
    assert_eq!(tau(arc(4, 1, 1)), arc(4, 4, 4));
    let x = arc(7, 2, 6);
    assert_eq!((0..7).fold(x, |a, _| tau(a)), x);
    assert_eq!(x.tau().tau_inverse(), x);
}

#[test]
fn quiver_shape() {
    let g = ar_quiver(5).unwrap();
    assert_eq!(g.vertices.len(), 25);
    assert_eq!(g.successors(arc(5, 1, 2)), vec![arc(5, 1, 3)]);
    for n in 3..=8 {
        let g = ar_quiver(n).unwrap();
        assert_eq!(g.vertices.len(), n * n);
        for &x in &g.vertices {
            let k = g.successors(x).len();
            assert!((1..=2).contains(&k), "{x} has {k} successors");
            assert_eq!(g.translation[&x], x.rotate(1));
        }
    }
    assert!(ar_quiver(2).is_err());
}

#[test]
fn mesh_property() {
    for n in 3..=9 {
        let g = ar_quiver(n).unwrap();
        for &x in &g.vertices {
            let mut pred = g.predecessors(x);
            let mut succ = g.successors(tau(x));
            pred.sort();
            succ.sort();
            assert_eq!(pred, succ, "mesh at {x}, n={n}");
        }
    }
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
    assert!(ext_nonzero(arc(5, 1, 3), arc(4, 1, 3), ExtStrategy::Coordinate).is_err());
}

#[test]
fn arcs_are_rigid() {
    for n in 3..=8 {
        for x in Arc::all(Polygon::new(n).unwrap()) {
            for s in ExtStrategy::ALL {
                assert!(!ext_nonzero(x, x, s).unwrap(), "Ext({x},{x}) at n={n}");
            }
        }
    }
}

#[test]
fn loop_and_short_arc_ext() {
    for n in 3..=10 {
        let p = Polygon::new(n).unwrap();
        for i in p.vertices() {
            let lp = Arc::raw(p, i, i);
            let short = Arc::raw(p, i, p.succ(i));
            for y in Arc::all(p) {
                let ext = |a, b| ext_nonzero(a, b, ExtStrategy::Coordinate).unwrap();
                assert_eq!(ext(lp, y), y.s() == p.pred(i), "{lp} {y}");
                assert_eq!(ext(y, lp), y.t() == p.succ(i), "{y} {lp}");
                assert_eq!(ext(short, y), y.t() == i, "{short} {y}");
                assert_eq!(ext(y, short), y.s() == p.succ(i), "{y} {short}");
            }
        }
    }
}

#[test]
fn hammock_of_short_chord() {
    let x = arc(5, 1, 3);
    let h = hammock(x);
    assert_eq!(h.forward.len(), 8);
    assert!(h.forward.contains(&x) && h.backward.contains(&x));
    let corners = h.forward_corners();
    for c in [arc(5, 1, 3), arc(5, 1, 1), arc(5, 2, 3), arc(5, 2, 1)] {
        assert!(corners.contains(&c));
        assert!(h.forward.contains(&c));
    }
    for c in h.backward_corners() {
        assert!(h.backward.contains(&c));
    }
}

#[test]
fn successors_stay_in_neighbouring_orbits() {
    for n in 3..=7 {
        for x in Arc::all(Polygon::new(n).unwrap()) {
            let d = x.polygon().dist(x.s(), x.t());
            for y in ar_successors(x) {
                let e = y.polygon().dist(y.s(), y.t());
                assert!(e == (d + 1) % n || e == (d + n - 1) % n, "{x} -> {y}");
            }
        }
    }
}

fn arc_strategy() -> impl Strategy<Value = Arc> {
    (3usize..=12).prop_flat_map(|n| (Just(n), 1..=n, 1..=n).prop_map(|(n, s, t)| arc(n, s, t)))
}

fn arc_pair() -> impl Strategy<Value = (Arc, Arc)> {
    (3usize..=12).prop_flat_map(|n| {
        (1..=n, 1..=n, 1..=n, 1..=n).prop_map(move |(a, b, c, d)| (arc(n, a, b), arc(n, c, d)))
    })
}

proptest! {
    #[test]
    fn cw_is_rotation_equivariant(n in 3usize..=12, t in prop::collection::vec(0usize..12, 2..6), k in 0usize..12) {
        let p = Polygon::new(n).unwrap();
        let raw: Vec<u8> = t.iter().map(|&v| (v % n) as u8).collect();
        let shifted: Vec<u8> = raw.iter().map(|&v| p.shift(v, k as isize)).collect();
        prop_assert_eq!(p.cw(&raw), p.cw(&shifted));
    }

    #[test]
    fn cross_is_symmetric_and_rotation_invariant((x, y) in arc_pair(), k in -12isize..12) {
        prop_assert_eq!(cross(x, y), cross(y, x));
        prop_assert_eq!(cross(rotate(x, k), rotate(y, k)), cross(x, y));
    }

    #[test]
    fn hom_ext_are_tau_equivariant((x, y) in arc_pair()) {
        for s in HomStrategy::ALL {
            prop_assert_eq!(hom_nonzero(x, y, s).unwrap(), hom_nonzero(tau(x), tau(y), s).unwrap());
        }
        for s in ExtStrategy::ALL {
            prop_assert_eq!(ext_nonzero(x, y, s).unwrap(), ext_nonzero(tau(x), tau(y), s).unwrap());
        }
    }

    #[test]
    fn arc_text_round_trips(x in arc_strategy()) {
        prop_assert_eq!(Arc::parse(x.n(), &x.to_string()).unwrap(), x);
    }
}
