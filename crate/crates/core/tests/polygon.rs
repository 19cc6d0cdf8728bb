use std::collections::BTreeSet;

use ecluster::compat_core::e_compatible;
use ecluster::ordered_line::Ladder;
use ecluster::polygon_an::{
    all_diagonals, diagonals_cross, embed_diagonal, enumerate_triangulations, flip, flip_graph, Diagonal,
    Triangulation,
};
use proptest::prelude::*;

/// Crossing by the cyclic-order test on vertex positions: the endpoints of
/// one diagonal separate those of the other.
fn separates(d: &Diagonal, e: &Diagonal) -> bool {
    let inside = |v: i64| d.i < v && v < d.j;
    let shared = d.i == e.i || d.i == e.j || d.j == e.i || d.j == e.j;
    !shared && inside(e.i) != inside(e.j)
}

/// Every set of n pairwise non-crossing diagonals, by subset search.
fn brute_force_triangulations(n: i64) -> BTreeSet<BTreeSet<Diagonal>> {
    let ds = all_diagonals(n);
    let mut out = BTreeSet::new();
    let total = 1u64 << ds.len();
    for mask in 0..total {
        if mask.count_ones() as i64 != n {
            continue;
        }
        let chosen: Vec<&Diagonal> = (0..ds.len()).filter(|k| mask >> k & 1 == 1).map(|k| &ds[k]).collect();
        let ok = chosen.iter().enumerate().all(|(a, d)| chosen[a + 1..].iter().all(|e| !separates(d, e)));
        if ok {
            out.insert(chosen.into_iter().copied().collect());
        }
    }
    out
}

#[test]
fn enumeration_matches_subset_search() {
    for (n, count) in [(1, 2), (2, 5), (3, 14), (4, 42)] {
        let got: BTreeSet<BTreeSet<Diagonal>> = enumerate_triangulations(n).into_iter().map(|t| t.diagonals).collect();
        let want = brute_force_triangulations(n);
        assert_eq!(want.len(), count);
        assert_eq!(got, want);
        assert_eq!(flip_graph(n).nodes.len(), count);
    }
}

#[test]
fn crossing_is_incompatibility_of_images() {
    let l = Ladder::default();
    for n in 1..=10 {
        let ds = all_diagonals(n);
        for d in &ds {
            for e in &ds {
                assert_eq!(diagonals_cross(d, e), separates(d, e));
                assert_eq!(diagonals_cross(d, e), !e_compatible(&embed_diagonal(&l, d), &embed_diagonal(&l, e)), "{d} {e}");
            }
        }
    }
}

#[test]
fn embedding_is_injective() {
    let l = Ladder::default();
    let ds = all_diagonals(10);
    let images: BTreeSet<_> = ds.iter().map(|d| embed_diagonal(&l, d)).collect();
    assert_eq!(images.len(), ds.len());
}

#[test]
fn flip_graph_is_regular_and_connected() {
    for n in 1..=5 {
        let g = flip_graph(n);
        assert!(g.is_connected());
        assert!(g.degrees().iter().all(|&k| k == n as usize));
    }
}

proptest! {
    #[test]
    fn flips_are_involutions(n in 1i64..7, pick in any::<prop::sample::Index>(), which in any::<prop::sample::Index>()) {
        let all = enumerate_triangulations(n);
        let t = pick.get(&all);
        let ds: Vec<_> = t.diagonals.iter().copied().collect();
        let d = which.get(&ds);
        let (u, e) = flip(t, d).unwrap();
        prop_assert!(!u.contains(d) && u.contains(&e) && diagonals_cross(d, &e));
        prop_assert_eq!(&flip(&u, &e).unwrap().0, t);
        prop_assert_eq!(Triangulation::parse(n, &t.to_string()).unwrap(), t.clone());
    }
}
