use ecluster::cluster_sets::{build_projective_cluster, build_t_infinity, build_t_n, verify_window, ClusterDescription, ValueRange};
use ecluster::compat_core::e_compatible_geometric;
use ecluster::ordered_line::{IntervalObject as I, Ladder};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

mod common;

fn draw<R: rand::Rng>(c: &ClusterDescription, rng: &mut R) -> I {
    loop {
        let f = c.families.choose(rng).unwrap();
        if let Some(m) = f.sample(&c.ladder, rng) {
            if c.member(&m) {
                return m;
            }
        }
    }
}

fn builders() -> Vec<ClusterDescription> {
    let l = Ladder::default();
    vec![build_projective_cluster(), build_t_infinity(&l), build_t_n(&l, 2), build_t_n(&l, 4)]
}

#[test]
fn builders_are_pairwise_compatible() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    for c in builders() {
        for _ in 0..2500 {
            let (a, b) = (draw(&c, &mut rng), draw(&c, &mut rng));
            assert!(e_compatible_geometric(&a, &b), "{a} and {b}");
        }
    }
}

#[test]
fn projective_cluster_is_maximal() {
    let r = verify_window(&build_projective_cluster(), &ValueRange::everything(), 3000, 9);
    assert!(r.passed());
}

#[test]
fn t_infinity_misses_long_ladder_arcs() {
    let l = Ladder::default();
    let t = build_t_infinity(&l);
    let long = I::open(l.value(1), l.value(3));
    assert!(!t.member(&long));
    assert_eq!(t.incompatible_witness(&long), None);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn member_and_witness_exclude_each_other(m in common::arb_interval(), which in 0usize..4) {
        let c = &builders()[which];
        let w = c.incompatible_witness(&m);
        if c.member(&m) {
            prop_assert_eq!(&w, &None);
        }
        if let Some(w) = w {
            prop_assert!(c.member(&w));
            prop_assert!(!e_compatible_geometric(&m, &w));
        }
    }

    #[test]
    fn description_json_round_trips(which in 0usize..4) {
        let c = &builders()[which];
        let js = serde_json::to_string(c).unwrap();
        prop_assert_eq!(&serde_json::from_str::<ClusterDescription>(&js).unwrap(), c);
    }
}
