use std::collections::BTreeSet;

use ecluster::cluster_sets::{verify_window, ValueRange};
use ecluster::compat_core::e_compatible;
use ecluster::infinity_gon::{
    arcs_cross, embed_arc, embed_arc_set, embed_arc_set_core, fountain_extras, fountain_report, no_skip_check,
    random_fountain, random_zigzag, Arc, ArcSetDescription, FountainReport, InfinityGonError, LeftTail, RightTail,
};
use ecluster::ordered_line::{rat, IntervalObject as I, Ladder};
use rand::SeedableRng;

fn arc(i: i64, j: i64) -> Arc {
    Arc::new(i, j).unwrap()
}

fn fountain_at_zero_and_one() -> ArcSetDescription {
    ArcSetDescription {
        finite: BTreeSet::new(),
        left_tails: [LeftTail { m: 0, i0: -2 }].into(),
        right_tails: [RightTail { n: 1, j0: 3 }].into(),
    }
}

#[test]
fn crossing_is_incompatibility_of_images() {
    let l = Ladder::default();
    let arcs: Vec<Arc> = (-12..=12).flat_map(|i| (i + 2..=12).map(move |j| arc(i, j))).collect();
    for a in &arcs {
        for b in &arcs {
            // Crossing by interleaving of the four endpoints.
            let interleave = (a.i < b.i && b.i < a.j && a.j < b.j) || (b.i < a.i && a.i < b.j && b.j < a.j);
            assert_eq!(arcs_cross(a, b), interleave);
            assert_eq!(interleave, !e_compatible(&embed_arc(&l, a), &embed_arc(&l, b)));
        }
    }
}

#[test]
fn fountain_needs_exactly_three_extras() {
    let l = Ladder::default();
    let a = fountain_at_zero_and_one();
    assert_eq!(fountain_report(&a).unwrap(), FountainReport::Fountain { m: 0, n: 1 });
    let extras: BTreeSet<I> = fountain_extras(&l, 0, 1).into_iter().collect();
    let want: BTreeSet<I> =
        [I::open(rat(0, 1), l.value(0)), I::open(rat(0, 1), l.value(1)), I::open(l.value(1), rat(1, 1))].into();
    assert_eq!(extras, want);
    let full = embed_arc_set(&l, &a).unwrap();
    assert!(verify_window(&full, &ValueRange::everything(), 1500, 4).passed());
    let core = embed_arc_set_core(&l, &a);
    let r = verify_window(&core, &ValueRange::everything(), 1500, 4);
    assert!(!r.passed());
    for x in &want {
        assert!(!core.member(x) && core.incompatible_witness(x).is_none(), "{x}");
    }
}

#[test]
fn unpaired_tails_are_malformed() {
    let a = ArcSetDescription { left_tails: [LeftTail { m: 0, i0: -2 }].into(), ..Default::default() };
    assert!(matches!(fountain_report(&a), Err(InfinityGonError::MalformedDescription(_))));
    let b = ArcSetDescription { right_tails: [RightTail { n: 0, j0: 2 }].into(), ..Default::default() };
    assert!(matches!(fountain_report(&b), Err(InfinityGonError::MalformedDescription(_))));
}

#[test]
fn no_skip_vertex_implies_fountain() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(21);
    for k in 0..400 {
        let b = 3 + k % 5;
        let a = if k % 2 == 0 { random_fountain(&mut rng, b) } else { random_zigzag(&mut rng, b) };
        a.validate().unwrap();
        let (lo, hi) = a.span();
        if (lo + 1..hi).any(|l| no_skip_check(&a, l)) {
            assert!(matches!(fountain_report(&a).unwrap(), FountainReport::Fountain { .. }), "{a:?}");
        }
    }
}
