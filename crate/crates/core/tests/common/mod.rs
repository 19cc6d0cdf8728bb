#![allow(dead_code)]

use ecluster::ordered_line::{rat, DoubledPoint, ExtendedRational, IntervalObject, Rational, Side};
use proptest::prelude::*;
use rand::Rng;

/// Endpoint codes: `-9` is `-inf`, `9` is `+inf`, anything else is `k/4`.
pub fn endpoint(code: i64) -> ExtendedRational {
    match code {
        c if c <= -9 => ExtendedRational::NegInf,
        c if c >= 9 => ExtendedRational::PosInf,
        c => ExtendedRational::Finite(rat(c, 4)),
    }
}

/// The interval with the given endpoint codes and closedness, if it is one.
pub fn interval_from(a: i64, b: i64, left_closed: bool, right_closed: bool) -> Option<IntervalObject> {
    let (a, b) = (a.min(b), a.max(b));
    let left = DoubledPoint::new(endpoint(a), if left_closed { Side::Minus } else { Side::Plus }).ok()?;
    let right = DoubledPoint::new(endpoint(b), if right_closed { Side::Plus } else { Side::Minus }).ok()?;
    IntervalObject::new(left, right).ok()
}

pub fn arb_interval() -> impl Strategy<Value = IntervalObject> {
    (-9i64..=9, -9i64..=9, any::<bool>(), any::<bool>()).prop_filter_map("not an interval", |(a, b, l, r)| interval_from(a, b, l, r))
}

pub fn random_interval<R: Rng>(rng: &mut R) -> IntervalObject {
    loop {
        let (a, b) = (rng.gen_range(-9..=9), rng.gen_range(-9..=9));
        if let Some(v) = interval_from(a, b, rng.gen(), rng.gen()) {
            return v;
        }
    }
}

/// Closure type of an interval as a number in 0..4.
pub fn closure_kind(v: &IntervalObject) -> usize {
    (v.left_closed() as usize) * 2 + v.right_closed() as usize
}

/// Real sample points for pointwise checks: every endpoint, midpoints
/// between consecutive ones, and points beyond the extremes.
pub fn sample_points(intervals: &[&IntervalObject], want: usize) -> Vec<Rational> {
    let mut vals: Vec<Rational> = intervals
        .iter()
        .flat_map(|v| [v.left.value.finite().cloned(), v.right.value.finite().cloned()])
        .flatten()
        .collect();
    vals.sort();
    vals.dedup();
    let mut out = vals.clone();
    for w in vals.windows(2) {
        out.push((&w[0] + &w[1]) * rat(1, 2));
    }
    let lo = vals.first().cloned().unwrap_or_else(|| rat(0, 1));
    let hi = vals.last().cloned().unwrap_or_else(|| rat(0, 1));
    let mut k = 1;
    while out.len() < want {
        out.push(&lo - rat(k, 3));
        out.push(&hi + rat(k, 3));
        if vals.len() >= 2 {
            out.push(&vals[0] + (&vals[1] - &vals[0]) * rat(1, k + 2));
        }
        k += 1;
    }
    out
}
