use ecluster::ordered_line::{rat, DoubledPoint, IntervalObject, Ladder, Rung, Side};
use proptest::prelude::*;

mod common;

fn arb_point() -> impl Strategy<Value = DoubledPoint> {
    (-9i64..=9, any::<bool>()).prop_filter_map("closed infinity", |(c, plus)| {
        DoubledPoint::new(common::endpoint(c), if plus { Side::Plus } else { Side::Minus }).ok()
    })
}

proptest! {
    #[test]
    fn doubled_point_order_is_total(a in arb_point(), b in arb_point(), c in arb_point()) {
        let relations = [a < b, a == b, a > b].iter().filter(|x| **x).count();
        prop_assert_eq!(relations, 1);
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
    }

    #[test]
    fn value_dominates_side(a in arb_point(), b in arb_point()) {
        if a.value < b.value {
            prop_assert!(a < b);
        }
    }

    #[test]
    fn ladder_is_increasing_and_locatable(i in -60i64..60, lo in -5i64..5, width in 1i64..7) {
        let l = Ladder::new(rat(lo, 1), rat(lo + width, 2)).unwrap_or_default();
        prop_assert!(l.value(i) < l.value(i + 1));
        prop_assert_eq!(l.locate(&l.value(i)), Rung::Index(i));
        prop_assert_eq!(l.index_of(&l.value(i)), Some(i));
    }

    #[test]
    fn dyadic_refinement_is_coherent(i in -20i64..20, j in 0i64..8, l in 3u32..6) {
        let ladder = Ladder::default();
        if let (Ok(p), Ok(q)) = (ladder.dyadic_point(i, j, l), ladder.dyadic_point(i, 2 * j, l + 1)) {
            prop_assert_eq!(p, q);
        }
    }

    #[test]
    fn interval_text_round_trips(v in common::arb_interval()) {
        let back: IntervalObject = v.to_string().parse().unwrap();
        prop_assert_eq!(&back, &v);
        let js = serde_json::to_string(&v).unwrap();
        prop_assert_eq!(serde_json::from_str::<IntervalObject>(&js).unwrap(), v);
    }
}

#[test]
fn default_ladder_values() {
    let l = Ladder::default();
    let got: Vec<_> = (1..=5).map(|i| l.value(i)).collect();
    // 2^i / (2^i + 1), computed directly.
    let want: Vec<_> = (1..=5).map(|i| rat(1 << i, (1 << i) + 1)).collect();
    assert_eq!(got, want);
    assert_eq!(l.value(0), rat(1, 2));
    assert_eq!(l.value(-1), rat(1, 3));
}
