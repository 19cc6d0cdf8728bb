use ecluster::cluster_sets::{build_projective_cluster, membership_disagreements, ValueRange};
use ecluster::mutation_engine::{mutate, MutationError};
use ecluster::ordered_line::{rat, ExtendedRational, IntervalObject as I, Ladder};
use ecluster::polygon_an::{embed_diagonal, embed_triangulation, enumerate_triangulations, flip};
use proptest::prelude::*;

fn window() -> ValueRange {
    ValueRange::open(ExtendedRational::Finite(rat(-2, 1)), ExtendedRational::Finite(rat(3, 1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn open_projectives_exchange_with_singletons(p in -40i64..40, q in 1i64..9) {
        let b = rat(p, q);
        let t = build_projective_cluster();
        let r = mutate(&t, &I::projective_open(b.clone())).unwrap();
        prop_assert_eq!(&r.added, &I::singleton(b.clone()));
        prop_assert_eq!(&r.middle, &vec![I::projective(b.clone())]);
        let back = mutate(&r.new_cluster, &r.added).unwrap();
        prop_assert_eq!(&back.added, &I::projective_open(b.clone()));
        prop_assert!(membership_disagreements(&back.new_cluster, &t, &ValueRange::everything(), 400, 1).is_empty());
        prop_assert_eq!(mutate(&t, &I::projective(b.clone())), Err(MutationError::NotMutable(I::projective(b).to_string())));
    }
}

#[test]
fn polygon_mutations_match_flips_and_invert() {
    let l = Ladder::default();
    for n in 1..=3 {
        for t in enumerate_triangulations(n) {
            let c = embed_triangulation(&l, &t);
            for d in &t.diagonals {
                let (t2, e) = flip(&t, d).unwrap();
                let r = mutate(&c, &embed_diagonal(&l, d)).unwrap();
                assert_eq!(r.added, embed_diagonal(&l, &e), "{t} at {d}");
                for m in &r.middle {
                    assert!(c.member(m), "middle {m}");
                }
                let back = mutate(&r.new_cluster, &r.added).unwrap();
                assert_eq!(back.added, r.removed);
                assert!(membership_disagreements(&back.new_cluster, &c, &window(), 200, 2).is_empty());
                let direct = embed_triangulation(&l, &t2);
                assert!(membership_disagreements(&direct, &r.new_cluster, &window(), 200, 3).is_empty());
            }
        }
    }
}

#[test]
fn frozen_elements_and_non_members() {
    let t = build_projective_cluster();
    assert!(matches!(mutate(&t, &I::full_line()), Err(MutationError::NotMutable(_))));
    assert!(matches!(mutate(&t, &I::open(rat(0, 1), rat(1, 1))), Err(MutationError::NotMember(_))));
}
