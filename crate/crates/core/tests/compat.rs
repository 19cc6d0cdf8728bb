use ecluster::compat_core::{
    e_compatible, e_compatible_euler, e_compatible_geometric, exchange_for_pair, ext_direction, ExtDirection,
};
use ecluster::ordered_line::{int, IntervalObject as I};
use proptest::prelude::*;

mod common;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn euler_and_geometric_agree(v in common::arb_interval(), w in common::arb_interval()) {
        prop_assert_eq!(e_compatible_euler(&v, &w), e_compatible_geometric(&v, &w));
    }

    #[test]
    fn compatibility_is_symmetric(v in common::arb_interval(), w in common::arb_interval()) {
        prop_assert_eq!(e_compatible(&v, &w), e_compatible(&w, &v));
        prop_assert_eq!(e_compatible_euler(&v, &w), e_compatible_euler(&w, &v));
    }

    #[test]
    fn every_interval_is_self_compatible(v in common::arb_interval()) {
        prop_assert!(e_compatible_euler(&v, &v));
        prop_assert!(e_compatible_geometric(&v, &v));
    }

    #[test]
    fn exchange_middles_are_pointwise_sound(v in common::arb_interval(), w in common::arb_interval()) {
        let dir = ext_direction(&v, &w);
        prop_assert_eq!(dir == ExtDirection::None, e_compatible(&v, &w));
        if let Ok(x) = exchange_for_pair(&v, &w) {
            prop_assert!(x.middle.len() == 1 || x.middle.len() == 2);
            for t in common::sample_points(&[&v, &w], 100) {
                let ends = x.sub.dim_at(&t) + x.quotient.dim_at(&t);
                let mid: usize = x.middle.iter().map(|m| m.dim_at(&t)).sum();
                prop_assert_eq!(ends, mid, "at {}", t);
            }
        }
    }
}

#[test]
fn adjacency_regression() {
    let open_left = I::open(int(0), int(1));
    let open_right = I::open(int(1), int(2));
    assert!(e_compatible(&open_left, &open_right));
    assert!(!e_compatible(&I::open_closed(int(0), int(1)), &open_right));
    let x = exchange_for_pair(&I::open_closed(int(0), int(1)), &open_right).unwrap();
    assert_eq!(x.middle, vec![I::open(int(0), int(2))]);
}

#[test]
fn all_closure_pairs_are_exercised() {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let mut seen = [[false; 4]; 4];
    let mut infinite = false;
    for _ in 0..5000 {
        let (v, w) = (common::random_interval(&mut rng), common::random_interval(&mut rng));
        seen[common::closure_kind(&v)][common::closure_kind(&w)] = true;
        infinite |= !v.left.value.is_finite() || !w.right.value.is_finite();
        assert_eq!(e_compatible_euler(&v, &w), e_compatible_geometric(&v, &w));
    }
    assert!(seen.iter().flatten().all(|s| *s));
    assert!(infinite);
}
