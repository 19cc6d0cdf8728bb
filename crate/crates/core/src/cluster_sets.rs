//! Intensional descriptions of (possibly uncountable) E-compatible sets:
//! membership, incompatibility witnesses, incident elements and randomized
//! maximality checks on a window.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::compat_core::e_compatible;
use crate::ordered_line::{
    ceil_rational, dyadic_level, floor_log2, floor_rational, int, is_dyadic, pow2_rational, rat,
    rational_string, take_indices, clamp_lower, clamp_upper, DoubledPoint, ExtendedRational,
    IndexBound, IntervalObject, Ladder, Rational, Rung, Side,
};

type I = IntervalObject;
type Ext = ExtendedRational;

/// Coordinates the description's endpoints live in. `Angle` relabels the
/// line by `t -> (2/pi) atan t`, so finite values are restricted to `(-1, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize, Default)]
#[serde(rename_all = "camelCase")]
pub enum Chart {
    #[default]
    Real,
    Angle,
}

/// A set of values with independent closedness at each end.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ValueRange {
    pub lo: Ext,
    pub lo_closed: bool,
    pub hi: Ext,
    pub hi_closed: bool,
}

impl ValueRange {
    pub fn new(lo: Ext, lo_closed: bool, hi: Ext, hi_closed: bool) -> Self {
        ValueRange { lo, lo_closed, hi, hi_closed }
    }

    pub fn open(lo: Ext, hi: Ext) -> Self {
        ValueRange::new(lo, false, hi, false)
    }

    pub fn point(v: Ext) -> Self {
        ValueRange::new(v.clone(), true, v, true)
    }

    pub fn everything() -> Self {
        ValueRange::open(Ext::NegInf, Ext::PosInf)
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi || (self.lo == self.hi && !(self.lo_closed && self.hi_closed))
    }

    pub fn contains(&self, v: &Ext) -> bool {
        let above = if self.lo_closed { v >= &self.lo } else { v > &self.lo };
        let below = if self.hi_closed { v <= &self.hi } else { v < &self.hi };
        above && below
    }

    pub fn intersect(&self, other: &ValueRange) -> ValueRange {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            std::cmp::Ordering::Greater => (self.lo.clone(), self.lo_closed),
            std::cmp::Ordering::Less => (other.lo.clone(), other.lo_closed),
            std::cmp::Ordering::Equal => (self.lo.clone(), self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            std::cmp::Ordering::Less => (self.hi.clone(), self.hi_closed),
            std::cmp::Ordering::Greater => (other.hi.clone(), other.hi_closed),
            std::cmp::Ordering::Equal => (self.hi.clone(), self.hi_closed && other.hi_closed),
        };
        ValueRange { lo, lo_closed, hi, hi_closed }
    }

    /// Up to `limit` distinct values of the range, closed ends first.
    pub fn sample(&self, limit: usize) -> Vec<Ext> {
        let mut out: Vec<Ext> = vec![];
        if self.is_empty() || limit == 0 {
            return out;
        }
        if self.lo_closed {
            out.push(self.lo.clone());
        }
        if self.hi_closed && self.hi != self.lo {
            out.push(self.hi.clone());
        }
        if self.lo == self.hi {
            out.truncate(limit);
            return out;
        }
        let want = limit.saturating_sub(out.len());
        for k in 1..=want as i64 {
            let v = match (&self.lo, &self.hi) {
                (Ext::Finite(a), Ext::Finite(b)) => a + (b - a) * rat(k, want as i64 + 1),
                (Ext::Finite(a), _) => a + int(k),
                (_, Ext::Finite(b)) => b - int(k),
                _ => int(if k % 2 == 1 { (k - 1) / 2 } else { -(k / 2) }),
            };
            out.push(Ext::Finite(v));
        }
        out.truncate(limit);
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum FanSide {
    /// `{M_(a_i, a_apex) : i <= bound}`
    Left,
    /// `{M_(a_apex, a_j) : j >= bound}`
    Right,
}

/// The dyadic grid of the rung `[lo, hi]`, used to exclude singletons.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Grid {
    #[serde(with = "rational_string")]
    pub lo: Rational,
    #[serde(with = "rational_string")]
    pub hi: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Family {
    Finite {
        elements: Vec<I>,
    },
    /// Open dyadic cells of `(lo, hi)` at every level, singletons at
    /// non-grid points, and optionally `P_{hi)}`.
    #[serde(rename_all = "camelCase")]
    DyadicRung {
        #[serde(with = "rational_string")]
        lo: Rational,
        #[serde(with = "rational_string")]
        hi: Rational,
        right_projective: bool,
    },
    Singletons {
        range: ValueRange,
        #[serde(default, with = "crate::ordered_line::rational_vec")]
        excluded: Vec<Rational>,
        #[serde(default)]
        grid: Option<Grid>,
    },
    /// Dyadic rung families on every `(a_i, a_{i+1})` of the ladder.
    LadderRungs,
    /// Rungs `(i, i+1)` outside the ladder limits with the open projectives
    /// `P_{i)}` at integers outside the limits.
    IntegerRungs,
    Fan {
        apex: i64,
        side: FanSide,
        bound: i64,
    },
    AllProjectives,
    /// Intervals with one endpoint fixed and the other sweeping a range of
    /// values on a fixed side.
    #[serde(rename_all = "camelCase")]
    Sweep {
        fixed: DoubledPoint,
        fixed_is_left: bool,
        moving_side: Side,
        range: ValueRange,
    },
}

fn incompatible(a: &I, b: &I) -> bool {
    !e_compatible(a, b)
}

fn push_unique(out: &mut Vec<I>, x: I) {
    if !out.contains(&x) {
        out.push(x);
    }
}

/// Normalized coordinate of `q` in the rung `[lo, hi]`.
fn norm(lo: &Rational, hi: &Rational, q: &Rational) -> Rational {
    (q - lo) / (hi - lo)
}

fn denorm(lo: &Rational, hi: &Rational, u: &Rational) -> Rational {
    lo + u * (hi - lo)
}

fn bits_for_gap(gap: &Rational) -> i64 {
    if gap <= &Rational::zero() {
        0
    } else {
        (floor_log2(&(Rational::one() / gap)) + 1).max(0)
    }
}

fn rung_cell(lo: &Rational, hi: &Rational, c: &Rational, d: &Rational) -> I {
    I::open(denorm(lo, hi, c), denorm(lo, hi, d))
}

fn is_rung_cell(lo: &Rational, hi: &Rational, m: &I) -> bool {
    if m.left.side != Side::Plus || m.right.side != Side::Minus {
        return false;
    }
    let (Some(l), Some(r)) = (m.left.finite_value(), m.right.finite_value()) else {
        return false;
    };
    let u = norm(lo, hi, l);
    let v = norm(lo, hi, r);
    if u < Rational::zero() || v > Rational::one() || u >= v {
        return false;
    }
    let w = &v - &u;
    if !w.numer().is_one() || !is_dyadic(&w) {
        return false;
    }
    (u / w).is_integer()
}

fn is_rung_singleton(lo: &Rational, hi: &Rational, m: &I) -> bool {
    if !m.is_singleton() {
        return false;
    }
    let Some(x) = m.left.finite_value() else { return false };
    x > lo && x < hi && !is_dyadic(&norm(lo, hi, x))
}

fn rung_contains(lo: &Rational, hi: &Rational, right_projective: bool, m: &I) -> bool {
    if right_projective && *m == I::projective_open(hi.clone()) {
        return true;
    }
    is_rung_singleton(lo, hi, m) || is_rung_cell(lo, hi, m)
}

/// Members of the dyadic rung `(lo, hi)` incompatible with `m`, up to about
/// `limit` of each shape.
fn rung_witnesses(lo: &Rational, hi: &Rational, right_projective: bool, m: &I, limit: usize) -> Vec<I> {
    let mut out = vec![];
    let span = |p: &DoubledPoint| p.finite_value().map(|v| norm(lo, hi, v));
    let u_opt = span(&m.left);
    let v_opt = span(&m.right);
    let r_norm = match &m.right.value {
        Ext::PosInf => int(2),
        Ext::NegInf => int(-1),
        Ext::Finite(r) => norm(lo, hi, r),
    };
    let l_norm = match &m.left.value {
        Ext::NegInf => int(-1),
        Ext::PosInf => int(2),
        Ext::Finite(l) => norm(lo, hi, l),
    };
    // Cells (c, d] around the left endpoint: the cell is the subobject.
    if let Some(u) = &u_opt {
        if u > &Rational::zero() && u <= &Rational::one() {
            let base = dyadic_level(u).map(|x| x as i64).unwrap_or(0);
            let gap = r_norm.clone().min(int(1)) - u;
            let kcap = base + bits_for_gap(&gap) + limit as i64 + 4;
            let mut found = 0;
            for k in 0..=kcap {
                let scale = pow2_rational(k);
                let j = ceil_rational(&(u * &scale)) - BigInt::one();
                let c = BigRational::from_integer(j) / &scale;
                let d = &c + Rational::one() / &scale;
                let cell = rung_cell(lo, hi, &c, &d);
                if incompatible(m, &cell) {
                    let before = out.len();
                    push_unique(&mut out, cell);
                    if out.len() > before {
                        found += 1;
                    }
                    if found >= limit {
                        break;
                    }
                }
            }
        }
    }
    // Cells [c, d) around the right endpoint: the query is the subobject.
    if let Some(v) = &v_opt {
        if v >= &Rational::zero() && v < &Rational::one() {
            let base = dyadic_level(v).map(|x| x as i64).unwrap_or(0);
            let gap = v - l_norm.clone().max(int(0));
            let kcap = base + bits_for_gap(&gap) + limit as i64 + 4;
            let mut found = 0;
            for k in 0..=kcap {
                let scale = pow2_rational(k);
                let j = floor_rational(&(v * &scale));
                let c = BigRational::from_integer(j) / &scale;
                let d = &c + Rational::one() / &scale;
                let cell = rung_cell(lo, hi, &c, &d);
                if incompatible(m, &cell) {
                    let before = out.len();
                    push_unique(&mut out, cell);
                    if out.len() > before {
                        found += 1;
                    }
                    if found >= limit {
                        break;
                    }
                }
            }
        }
    }
    if m.left.side == Side::Plus {
        if let Some(x) = m.left.finite_value() {
            let s = I::singleton(x.clone());
            if is_rung_singleton(lo, hi, &s) {
                push_unique(&mut out, s);
            }
        }
    }
    if m.right.side == Side::Minus {
        if let Some(x) = m.right.finite_value() {
            let s = I::singleton(x.clone());
            if is_rung_singleton(lo, hi, &s) {
                push_unique(&mut out, s);
            }
        }
    }
    if right_projective {
        let p = I::projective_open(hi.clone());
        if incompatible(m, &p) {
            push_unique(&mut out, p);
        }
    }
    out
}

/// Cells of the rung sharing an endpoint with `m`, enough of them to bracket
/// the opposite endpoint of `m`.
fn rung_incident(lo: &Rational, hi: &Rational, right_projective: bool, m: &I) -> Vec<I> {
    let mut out = vec![];
    // Cells starting exactly at m.left.
    if m.left.side == Side::Plus {
        if let Some(l) = m.left.finite_value() {
            let u = norm(lo, hi, l);
            if u >= Rational::zero() && u < Rational::one() {
                if let Some(base) = dyadic_level(&u) {
                    let anchor = match &m.right.value {
                        Ext::Finite(r) => norm(lo, hi, r),
                        _ => int(2),
                    };
                    let gap = &anchor - &u;
                    let kcap = base as i64 + bits_for_gap(&gap) + 3;
                    for k in base as i64..=kcap.min(base as i64 + 64) {
                        let d = &u + pow2_rational(-k);
                        out.push(rung_cell(lo, hi, &u, &d));
                    }
                }
            }
        }
    }
    // Cells ending exactly at m.right.
    if m.right.side == Side::Minus {
        if let Some(r) = m.right.finite_value() {
            let v = norm(lo, hi, r);
            if v > Rational::zero() && v <= Rational::one() {
                if let Some(base) = dyadic_level(&v) {
                    let anchor = match &m.left.value {
                        Ext::Finite(l) => norm(lo, hi, l),
                        _ => int(-1),
                    };
                    let gap = &v - &anchor;
                    let kcap = base as i64 + bits_for_gap(&gap) + 3;
                    for k in base as i64..=kcap.min(base as i64 + 64) {
                        let c = &v - pow2_rational(-k);
                        out.push(rung_cell(lo, hi, &c, &v));
                    }
                }
            }
        }
    }
    for p in [&m.left, &m.right] {
        if let Some(x) = p.finite_value() {
            let s = I::singleton(x.clone());
            if is_rung_singleton(lo, hi, &s) {
                out.push(s);
            }
        }
    }
    if right_projective {
        let p = I::projective_open(hi.clone());
        if p.left == m.left || p.right == m.right {
            out.push(p);
        }
    }
    out
}

fn rung_sample<R: Rng>(lo: &Rational, hi: &Rational, right_projective: bool, rng: &mut R) -> I {
    let roll = rng.gen_range(0..10);
    if right_projective && roll == 0 {
        return I::projective_open(hi.clone());
    }
    if roll < 4 {
        // Non-dyadic interior point: odd multiple over 3 * 2^k.
        let k = rng.gen_range(0..6u32);
        let den = 3 * (1i64 << k);
        loop {
            let num = rng.gen_range(1..den);
            if num % 3 != 0 {
                return I::singleton(denorm(lo, hi, &rat(num, den)));
            }
        }
    }
    let k = rng.gen_range(0..7u32);
    let j = rng.gen_range(0..(1i64 << k));
    let c = rat(j, 1 << k);
    let d = rat(j + 1, 1 << k);
    rung_cell(lo, hi, &c, &d)
}

/// Rungs of the ladder whose closed range contains `q`.
fn ladder_rungs_at(ladder: &Ladder, q: &Ext) -> Vec<i64> {
    let Ext::Finite(q) = q else { return vec![] };
    match ladder.locate(q) {
        Rung::Outside => vec![],
        Rung::Index(p) => {
            if ladder.value(p) == *q {
                vec![p - 1, p]
            } else {
                vec![p]
            }
        }
    }
}

fn integer_rung_allowed(ladder: &Ladder, i: &BigInt) -> bool {
    let lo = BigRational::from_integer(i.clone());
    let hi = &lo + Rational::one();
    hi <= ladder.lower || lo >= ladder.upper
}

fn integer_projective_allowed(ladder: &Ladder, i: &BigInt) -> bool {
    let v = BigRational::from_integer(i.clone());
    v <= ladder.lower || v >= ladder.upper
}

fn integer_rungs_at(ladder: &Ladder, q: &Ext) -> Vec<BigInt> {
    let Ext::Finite(q) = q else { return vec![] };
    let f = floor_rational(q);
    let mut v = vec![];
    if q.is_integer() {
        v.push(&f - BigInt::one());
    }
    v.push(f);
    v.into_iter().filter(|i| integer_rung_allowed(ladder, i)).collect()
}

/// Values `b` with `(b, side)` strictly/weakly above or below given cuts.
fn cut_constraint(side: Side, bound: &DoubledPoint, above: bool, strict: bool) -> ValueRange {
    // (b,s) > (p,sp): b > p, or b = p and s > sp.
    let closed = match (above, strict) {
        (true, true) => side > bound.side,
        (true, false) => side >= bound.side,
        (false, true) => side < bound.side,
        (false, false) => side <= bound.side,
    };
    if above {
        ValueRange::new(bound.value.clone(), closed, Ext::PosInf, true)
    } else {
        ValueRange::new(Ext::NegInf, true, bound.value.clone(), closed)
    }
}

/// Sweep elements incompatible with `m`.
fn sweep_witnesses(fixed: &DoubledPoint, fixed_is_left: bool, side: Side, range: &ValueRange, m: &I, limit: usize) -> Vec<I> {
    let mut ranges = vec![];
    if fixed_is_left {
        // X sub: F < L <= (b,s) < R
        if fixed < &m.left {
            ranges.push(
                cut_constraint(side, &m.left, true, false)
                    .intersect(&cut_constraint(side, &m.right, false, true)),
            );
        }
        // m sub: L < F <= R < (b,s)
        if &m.left < fixed && fixed <= &m.right {
            ranges.push(cut_constraint(side, &m.right, true, true));
        }
    } else {
        // X sub: (b,s) < L <= F < R
        if &m.left <= fixed && fixed < &m.right {
            ranges.push(cut_constraint(side, &m.left, false, true));
        }
        // m sub: L < (b,s) <= R < F
        if &m.right < fixed {
            ranges.push(
                cut_constraint(side, &m.left, true, true)
                    .intersect(&cut_constraint(side, &m.right, false, false)),
            );
        }
    }
    let mut out = vec![];
    for r in ranges {
        // Infinite closed ends can fail to form a point, so oversample.
        for v in r.intersect(range).sample(limit + 2) {
            let Ok(p) = DoubledPoint::new(v, side) else { continue };
            let x = if fixed_is_left { I::new(fixed.clone(), p) } else { I::new(p, fixed.clone()) };
            if let Ok(x) = x {
                if incompatible(m, &x) {
                    push_unique(&mut out, x);
                }
            }
        }
    }
    out
}

fn sweep_contains(fixed: &DoubledPoint, fixed_is_left: bool, side: Side, range: &ValueRange, m: &I) -> bool {
    let (f, mv) = if fixed_is_left { (&m.left, &m.right) } else { (&m.right, &m.left) };
    f == fixed && mv.side == side && range.contains(&mv.value)
}

impl Family {
    /// Rough relative cost of a witness search, used to try cheap families first.
    fn search_cost(&self) -> u8 {
        match self {
            Family::Finite { .. } | Family::Singletons { .. } => 0,
            Family::Fan { .. } | Family::AllProjectives | Family::Sweep { .. } => 1,
            Family::DyadicRung { .. } => 2,
            Family::LadderRungs | Family::IntegerRungs => 3,
        }
    }

    pub fn contains(&self, ladder: &Ladder, m: &I) -> bool {
        match self {
            Family::Finite { elements } => elements.contains(m),
            Family::DyadicRung { lo, hi, right_projective } => rung_contains(lo, hi, *right_projective, m),
            Family::Singletons { range, excluded, grid } => {
                if !m.is_singleton() {
                    return false;
                }
                let Some(x) = m.left.finite_value() else { return false };
                range.contains(&m.left.value)
                    && !excluded.contains(x)
                    && !grid.as_ref().is_some_and(|g| {
                        x >= &g.lo && x <= &g.hi && is_dyadic(&norm(&g.lo, &g.hi, x))
                    })
            }
            Family::LadderRungs => {
                let Some(l) = m.left.finite_value() else { return false };
                match ladder.locate(l) {
                    Rung::Outside => false,
                    Rung::Index(p) => {
                        let (lo, hi) = (ladder.value(p), ladder.value(p + 1));
                        if m.is_singleton() && *l == lo {
                            return false;
                        }
                        rung_contains(&lo, &hi, false, m)
                    }
                }
            }
            Family::IntegerRungs => {
                if m.left.is_neg_inf() {
                    if m.right.side != Side::Minus {
                        return false;
                    }
                    return match m.right.finite_value() {
                        Some(v) if v.is_integer() => integer_projective_allowed(ladder, &v.to_integer()),
                        _ => false,
                    };
                }
                let Some(l) = m.left.finite_value() else { return false };
                let i = floor_rational(l);
                if !integer_rung_allowed(ladder, &i) {
                    return false;
                }
                let lo = BigRational::from_integer(i);
                let hi = &lo + Rational::one();
                if m.is_singleton() && *l == lo {
                    return false;
                }
                rung_contains(&lo, &hi, false, m)
            }
            Family::Fan { apex, side, bound } => {
                if m.left.side != Side::Plus || m.right.side != Side::Minus {
                    return false;
                }
                let (Some(l), Some(r)) = (m.left.finite_value(), m.right.finite_value()) else {
                    return false;
                };
                let apex_v = ladder.value(*apex);
                match side {
                    FanSide::Left => {
                        *r == apex_v && ladder.index_of(l).is_some_and(|i| i <= *bound && i < *apex)
                    }
                    FanSide::Right => {
                        *l == apex_v && ladder.index_of(r).is_some_and(|j| j >= *bound && j > *apex)
                    }
                }
            }
            Family::AllProjectives => m.left.is_neg_inf(),
            Family::Sweep { fixed, fixed_is_left, moving_side, range } => {
                sweep_contains(fixed, *fixed_is_left, *moving_side, range, m)
            }
        }
    }

    /// Distinct members incompatible with `m`; at least `limit` of them
    /// whenever that many exist.
    pub fn witnesses(&self, ladder: &Ladder, m: &I, limit: usize) -> Vec<I> {
        match self {
            Family::Finite { elements } => {
                elements.iter().filter(|x| incompatible(m, x)).take(limit).cloned().collect()
            }
            Family::DyadicRung { lo, hi, right_projective } => rung_witnesses(lo, hi, *right_projective, m, limit),
            Family::Singletons { .. } => {
                let mut out = vec![];
                if m.left.side == Side::Plus {
                    if let Some(x) = m.left.finite_value() {
                        let s = I::singleton(x.clone());
                        if self.contains(ladder, &s) {
                            out.push(s);
                        }
                    }
                }
                if m.right.side == Side::Minus {
                    if let Some(x) = m.right.finite_value() {
                        let s = I::singleton(x.clone());
                        if self.contains(ladder, &s) {
                            push_unique(&mut out, s);
                        }
                    }
                }
                out
            }
            Family::LadderRungs => {
                let mut idx: BTreeSet<i64> = BTreeSet::new();
                idx.extend(ladder_rungs_at(ladder, &m.left.value));
                idx.extend(ladder_rungs_at(ladder, &m.right.value));
                let mut out = vec![];
                for i in idx {
                    let (lo, hi) = (ladder.value(i), ladder.value(i + 1));
                    for x in rung_witnesses(&lo, &hi, false, m, limit) {
                        push_unique(&mut out, x);
                    }
                }
                out
            }
            Family::IntegerRungs => {
                let mut idx: BTreeSet<BigInt> = BTreeSet::new();
                idx.extend(integer_rungs_at(ladder, &m.left.value));
                idx.extend(integer_rungs_at(ladder, &m.right.value));
                let mut out = vec![];
                for i in idx {
                    let lo = BigRational::from_integer(i);
                    let hi = &lo + Rational::one();
                    for x in rung_witnesses(&lo, &hi, false, m, limit) {
                        push_unique(&mut out, x);
                    }
                }
                // Open projectives P_{i)} with L <= (i,-) < R.
                if let Some(l) = m.left.finite_value() {
                    let mut i = ceil_rational(l);
                    if BigRational::from_integer(i.clone()) == *l && m.left.side == Side::Plus {
                        i += 1;
                    }
                    let mut found = 0;
                    let mut skipped = 0u64;
                    loop {
                        let p = DoubledPoint::minus(BigRational::from_integer(i.clone()));
                        if p >= m.right || found >= limit || skipped > 1_000_000 {
                            break;
                        }
                        if integer_projective_allowed(ladder, &i) {
                            let x = I::projective_open(BigRational::from_integer(i.clone()));
                            if incompatible(m, &x) {
                                push_unique(&mut out, x);
                                found += 1;
                            }
                        } else {
                            skipped += 1;
                        }
                        i += 1;
                    }
                }
                out
            }
            Family::Fan { apex, side, bound } => fan_witnesses(ladder, *apex, *side, *bound, m, limit),
            Family::AllProjectives => {
                let fixed = DoubledPoint::neg_inf();
                let all = ValueRange::everything();
                let mut out = sweep_witnesses(&fixed, true, Side::Plus, &all, m, limit);
                for x in sweep_witnesses(&fixed, true, Side::Minus, &all, m, limit) {
                    push_unique(&mut out, x);
                }
                let full = I::full_line();
                if incompatible(m, &full) {
                    push_unique(&mut out, full);
                }
                out
            }
            Family::Sweep { fixed, fixed_is_left, moving_side, range } => {
                sweep_witnesses(fixed, *fixed_is_left, *moving_side, range, m, limit)
            }
        }
    }

    /// A finite set of members sharing an endpoint with `m`, including the
    /// nearest ones on either side of the opposite endpoint.
    pub fn incident(&self, ladder: &Ladder, m: &I) -> Vec<I> {
        match self {
            Family::Finite { elements } => elements
                .iter()
                .filter(|x| x.left == m.left || x.right == m.right || x.left == m.right || x.right == m.left)
                .cloned()
                .collect(),
            Family::DyadicRung { lo, hi, right_projective } => rung_incident(lo, hi, *right_projective, m),
            Family::Singletons { .. } => [&m.left, &m.right]
                .iter()
                .filter_map(|p| p.finite_value())
                .map(|x| I::singleton(x.clone()))
                .filter(|s| self.contains(ladder, s))
                .collect(),
            Family::LadderRungs => {
                let mut idx: BTreeSet<i64> = BTreeSet::new();
                idx.extend(ladder_rungs_at(ladder, &m.left.value));
                idx.extend(ladder_rungs_at(ladder, &m.right.value));
                let mut out = vec![];
                for i in idx {
                    out.extend(rung_incident(&ladder.value(i), &ladder.value(i + 1), false, m));
                }
                out.retain(|x| self.contains(ladder, x));
                out
            }
            Family::IntegerRungs => {
                let mut idx: BTreeSet<BigInt> = BTreeSet::new();
                idx.extend(integer_rungs_at(ladder, &m.left.value));
                idx.extend(integer_rungs_at(ladder, &m.right.value));
                let mut out = vec![];
                for i in idx {
                    let lo = BigRational::from_integer(i);
                    let hi = &lo + Rational::one();
                    out.extend(rung_incident(&lo, &hi, false, m));
                }
                // Open projectives nearest the right endpoint.
                if let Some(r) = m.right.finite_value() {
                    let f = floor_rational(r);
                    for k in -2i64..=2 {
                        let i = &f + BigInt::from(k);
                        if integer_projective_allowed(ladder, &i) {
                            out.push(I::projective_open(BigRational::from_integer(i)));
                        }
                    }
                }
                if let Some(l) = m.left.finite_value() {
                    let f = floor_rational(l);
                    for k in -1i64..=1 {
                        let i = &f + BigInt::from(k);
                        if integer_projective_allowed(ladder, &i) {
                            out.push(I::projective_open(BigRational::from_integer(i)));
                        }
                    }
                }
                out
            }
            Family::Fan { apex, side, bound } => fan_incident(ladder, *apex, *side, *bound, m),
            Family::AllProjectives => {
                let mut pts = vec![m.right.clone(), m.left.clone(), DoubledPoint::pos_inf()];
                pts.extend(m.right.flipped());
                pts.extend(m.left.flipped());
                pts.into_iter()
                    .filter_map(|p| I::new(DoubledPoint::neg_inf(), p).ok())
                    .collect()
            }
            Family::Sweep { fixed, fixed_is_left, moving_side, range } => {
                let mut out = vec![];
                let mut values: Vec<Ext> = vec![m.left.value.clone(), m.right.value.clone()];
                if range.lo_closed {
                    values.push(range.lo.clone());
                }
                if range.hi_closed {
                    values.push(range.hi.clone());
                }
                for v in values {
                    if !range.contains(&v) {
                        continue;
                    }
                    let Ok(p) = DoubledPoint::new(v, *moving_side) else { continue };
                    let x = if *fixed_is_left { I::new(fixed.clone(), p) } else { I::new(p, fixed.clone()) };
                    if let Ok(x) = x {
                        out.push(x);
                    }
                }
                out
            }
        }
    }

    /// Values worth probing near this family.
    pub fn critical_values(&self, ladder: &Ladder, window: &ValueRange) -> Vec<Rational> {
        let mut out = vec![];
        let push_ext = |v: &Ext, out: &mut Vec<Rational>| {
            if let Ext::Finite(q) = v {
                out.push(q.clone());
            }
        };
        match self {
            Family::Finite { elements } => {
                for e in elements {
                    push_ext(&e.left.value, &mut out);
                    push_ext(&e.right.value, &mut out);
                }
            }
            Family::DyadicRung { lo, hi, .. } => dyadic_grid(lo, hi, 6, &mut out),
            Family::Singletons { range, excluded, grid } => {
                push_ext(&range.lo, &mut out);
                push_ext(&range.hi, &mut out);
                out.extend(excluded.iter().cloned());
                if let Some(g) = grid {
                    dyadic_grid(&g.lo, &g.hi, 4, &mut out);
                }
            }
            Family::LadderRungs => {
                out.push(ladder.lower.clone());
                out.push(ladder.upper.clone());
                for i in -20..=20 {
                    out.push(ladder.value(i));
                }
                for i in -6..=6 {
                    let (lo, hi) = (ladder.value(i), ladder.value(i + 1));
                    let meets = ValueRange::new(Ext::Finite(lo.clone()), true, Ext::Finite(hi.clone()), true);
                    if !meets.intersect(window).is_empty() {
                        dyadic_grid(&lo, &hi, 6, &mut out);
                    }
                }
            }
            Family::IntegerRungs => {
                let (lo, hi) = window_span(window, ladder);
                let mut i = floor_rational(&lo);
                let top = ceil_rational(&hi);
                while i <= top {
                    if integer_rung_allowed(ladder, &i) {
                        let a = BigRational::from_integer(i.clone());
                        dyadic_grid(&a, &(&a + Rational::one()), 4, &mut out);
                    } else {
                        out.push(BigRational::from_integer(i.clone()));
                    }
                    i += 1;
                }
            }
            Family::Fan { apex, bound, .. } => {
                for i in (bound.min(apex) - 6)..=(bound.max(apex) + 6) {
                    out.push(ladder.value(i));
                }
            }
            Family::AllProjectives => {}
            Family::Sweep { fixed, range, .. } => {
                push_ext(&fixed.value, &mut out);
                push_ext(&range.lo, &mut out);
                push_ext(&range.hi, &mut out);
            }
        }
        out
    }

    /// A random member, for spot checks of pairwise compatibility.
    pub fn sample<R: Rng>(&self, ladder: &Ladder, rng: &mut R) -> Option<I> {
        match self {
            Family::Finite { elements } => elements.choose(rng).cloned(),
            Family::DyadicRung { lo, hi, right_projective } => Some(rung_sample(lo, hi, *right_projective, rng)),
            Family::Singletons { range, .. } => {
                for _ in 0..20 {
                    let vals = range.sample(7);
                    let v = vals.choose(rng)?.clone();
                    let Ext::Finite(x) = v else { continue };
                    let x = x + rat(1, 3 * (1 << rng.gen_range(3..8)));
                    let s = I::singleton(x);
                    if self.contains(ladder, &s) {
                        return Some(s);
                    }
                }
                None
            }
            Family::LadderRungs => {
                let i = rng.gen_range(-10..10);
                Some(rung_sample(&ladder.value(i), &ladder.value(i + 1), false, rng))
            }
            Family::IntegerRungs => {
                let lo = floor_rational(&ladder.lower);
                let hi = ceil_rational(&ladder.upper);
                let off = BigInt::from(rng.gen_range(0..5));
                let i = if rng.gen_bool(0.5) { lo - BigInt::one() - off } else { hi + off };
                if rng.gen_bool(0.2) {
                    let j = if integer_projective_allowed(ladder, &i) { i } else { i + 1 };
                    return Some(I::projective_open(BigRational::from_integer(j)));
                }
                let a = BigRational::from_integer(i);
                Some(rung_sample(&a, &(&a + Rational::one()), false, rng))
            }
            Family::Fan { apex, side, bound } => {
                let k = rng.gen_range(0..12);
                let (i, j) = match side {
                    FanSide::Left => ((*bound).min(apex - 1) - k, *apex),
                    FanSide::Right => (*apex, (*bound).max(apex + 1) + k),
                };
                Some(I::open(ladder.value(i), ladder.value(j)))
            }
            Family::AllProjectives => {
                if rng.gen_bool(0.1) {
                    return Some(I::full_line());
                }
                let q = rat(rng.gen_range(-40..40), rng.gen_range(1..8));
                Some(if rng.gen_bool(0.5) { I::projective(q) } else { I::projective_open(q) })
            }
            Family::Sweep { fixed, fixed_is_left, moving_side, range } => {
                let vals = range.sample(9);
                let v = vals.choose(rng)?.clone();
                let p = DoubledPoint::new(v, *moving_side).ok()?;
                if *fixed_is_left {
                    I::new(fixed.clone(), p).ok()
                } else {
                    I::new(p, fixed.clone()).ok()
                }
            }
        }
    }
}

fn window_span(window: &ValueRange, ladder: &Ladder) -> (Rational, Rational) {
    let lo = match &window.lo {
        Ext::Finite(q) => q.clone(),
        _ => &ladder.lower - int(12),
    };
    let hi = match &window.hi {
        Ext::Finite(q) => q.clone(),
        _ => &ladder.upper + int(12),
    };
    (lo, hi)
}

fn dyadic_grid(lo: &Rational, hi: &Rational, depth: u32, out: &mut Vec<Rational>) {
    let den = 1i64 << depth;
    for j in 0..=den {
        out.push(denorm(lo, hi, &rat(j, den)));
    }
    // A few non-grid points.
    for (n, d) in [(1, 3), (2, 3), (1, 5), (5, 9)] {
        out.push(denorm(lo, hi, &rat(n, d)));
    }
}

fn fan_witnesses(ladder: &Ladder, apex: i64, side: FanSide, bound: i64, m: &I, limit: usize) -> Vec<I> {
    let apex_v = ladder.value(apex);
    let mut out = vec![];
    let emit = |lo: IndexBound, hi: IndexBound, out: &mut Vec<I>| {
        for idx in take_indices(lo, hi, limit) {
            let x = match side {
                FanSide::Left => I::open(ladder.value(idx), apex_v.clone()),
                FanSide::Right => I::open(apex_v.clone(), ladder.value(idx)),
            };
            if incompatible(m, &x) {
                push_unique(out, x);
            }
        }
    };
    let apex_minus = DoubledPoint::minus(apex_v.clone());
    let apex_plus = DoubledPoint::plus(apex_v.clone());
    let l = &m.left.value;
    let r = &m.right.value;
    match side {
        FanSide::Left => {
            let cap = bound.min(apex - 1);
            // X sub: a_i < l, with L <= (apex,-) < R.
            if m.left <= apex_minus && apex_minus < m.right {
                let hi = clamp_upper(ladder.last_index_below(l, false), cap);
                emit(IndexBound::Unbounded, hi, &mut out);
            }
            // m sub: L < (a_i,+) <= R < (apex,-).
            if m.right < apex_minus {
                let lo = ladder.first_index_above(l, m.left.side == Side::Minus);
                let hi = clamp_upper(ladder.last_index_below(r, m.right.side == Side::Plus), cap);
                emit(lo, hi, &mut out);
            }
        }
        FanSide::Right => {
            let cap = bound.max(apex + 1);
            // X sub: (apex,+) < L <= (a_j,-) < R.
            if apex_plus < m.left {
                let lo = clamp_lower(ladder.first_index_above(l, m.left.side == Side::Minus), cap);
                let hi = ladder.last_index_below(r, m.right.side == Side::Plus);
                emit(lo, hi, &mut out);
            }
            // m sub: L < (apex,+) <= R < (a_j,-).
            if m.left < apex_plus && apex_plus <= m.right {
                let lo = clamp_lower(ladder.first_index_above(r, false), cap);
                emit(lo, IndexBound::Unbounded, &mut out);
            }
        }
    }
    out
}

fn fan_incident(ladder: &Ladder, apex: i64, side: FanSide, bound: i64, m: &I) -> Vec<I> {
    let apex_v = ladder.value(apex);
    let mut idx = vec![];
    match side {
        FanSide::Left => {
            let cap = bound.min(apex - 1);
            if m.right == DoubledPoint::minus(apex_v.clone()) {
                for b in [ladder.last_index_below(&m.left.value, true), ladder.first_index_above(&m.left.value, true)] {
                    match b {
                        IndexBound::At(i) => idx.extend([i - 1, i, i + 1]),
                        IndexBound::Unbounded => idx.push(cap),
                        IndexBound::Empty => {}
                    }
                }
                idx.push(cap);
            }
            if let Some(i) = m.left.finite_value().and_then(|l| ladder.index_of(l)) {
                idx.push(i);
            }
            idx.retain(|&i| i <= cap);
            idx.into_iter().map(|i| I::open(ladder.value(i), apex_v.clone())).collect()
        }
        FanSide::Right => {
            let cap = bound.max(apex + 1);
            if m.left == DoubledPoint::plus(apex_v.clone()) {
                for b in [ladder.last_index_below(&m.right.value, true), ladder.first_index_above(&m.right.value, true)] {
                    match b {
                        IndexBound::At(i) => idx.extend([i - 1, i, i + 1]),
                        IndexBound::Unbounded => idx.push(cap),
                        IndexBound::Empty => {}
                    }
                }
                idx.push(cap);
            }
            if let Some(j) = m.right.finite_value().and_then(|r| ladder.index_of(r)) {
                idx.push(j);
            }
            idx.retain(|&j| j >= cap);
            idx.into_iter().map(|j| I::open(apex_v.clone(), ladder.value(j))).collect()
        }
    }
}

/// A symbolic E-compatible set: the union of its families, with a finite
/// diff applied on top.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClusterDescription {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    #[serde(default)]
    pub chart: Chart,
    #[serde(default)]
    pub ladder: Ladder,
    pub families: Vec<Family>,
    #[serde(default)]
    pub removed: Vec<I>,
    #[serde(default)]
    pub added: Vec<I>,
}

fn schema_version() -> u32 {
    1
}

impl ClusterDescription {
    pub fn new(ladder: Ladder, families: Vec<Family>) -> Self {
        ClusterDescription { schema_version: 1, chart: Chart::Real, ladder, families, removed: vec![], added: vec![] }
    }

    pub fn with_chart(mut self, chart: Chart) -> Self {
        self.chart = chart;
        self
    }

    fn in_base(&self, m: &I) -> bool {
        self.families.iter().any(|f| f.contains(&self.ladder, m))
    }

    pub fn member(&self, m: &I) -> bool {
        self.added.contains(m) || (!self.removed.contains(m) && self.in_base(m))
    }

    pub fn incompatible_witness(&self, m: &I) -> Option<I> {
        self.witness_excluding(m, &[])
    }

    /// A witness that is not one of `skip`.
    pub fn witness_excluding(&self, m: &I, skip: &[I]) -> Option<I> {
        for a in &self.added {
            if !skip.contains(a) && incompatible(m, a) {
                return Some(a.clone());
            }
        }
        let limit = self.removed.len() + skip.len() + 1;
        let mut order: Vec<&Family> = self.families.iter().collect();
        order.sort_by_key(|f| f.search_cost());
        for f in order {
            for w in f.witnesses(&self.ladder, m, limit) {
                if !self.removed.contains(&w) && !skip.contains(&w) {
                    return Some(w);
                }
            }
        }
        None
    }

    /// Members sharing an endpoint with `m`.
    pub fn incident(&self, m: &I) -> Vec<I> {
        let mut out: Vec<I> = vec![];
        for f in &self.families {
            for x in f.incident(&self.ladder, m) {
                if !self.removed.contains(&x) {
                    out.push(x);
                }
            }
        }
        for a in &self.added {
            if a.left == m.left || a.right == m.right || a.left == m.right || a.right == m.left {
                out.push(a.clone());
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Applies `removed -> added` to the diff, cancelling against earlier entries.
    pub fn exchanged(&self, removed: &I, added: &I) -> ClusterDescription {
        let mut next = self.clone();
        if let Some(pos) = next.added.iter().position(|x| x == removed) {
            next.added.remove(pos);
        } else if !next.removed.contains(removed) {
            next.removed.push(removed.clone());
        }
        if let Some(pos) = next.removed.iter().position(|x| x == added) {
            next.removed.remove(pos);
        } else if !next.in_base(added) && !next.added.contains(added) {
            next.added.push(added.clone());
        }
        next
    }

    pub fn critical_values(&self, window: &ValueRange) -> Vec<Rational> {
        let mut vals: Vec<Rational> = vec![];
        for f in &self.families {
            vals.extend(f.critical_values(&self.ladder, window));
        }
        for e in self.removed.iter().chain(self.added.iter()) {
            vals.extend(e.left.finite_value().cloned());
            vals.extend(e.right.finite_value().cloned());
        }
        if self.chart == Chart::Angle {
            for k in -15..=15 {
                vals.push(rat(k, 16));
            }
        } else {
            let (lo, hi) = window_span(window, &self.ladder);
            let mut i = floor_rational(&lo);
            while BigRational::from_integer(i.clone()) <= hi {
                vals.push(BigRational::from_integer(i.clone()));
                i += 1;
            }
        }
        vals.retain(|v| window.contains(&Ext::Finite(v.clone())) && self.chart_admits(v));
        vals.sort();
        vals.dedup();
        // Midpoints and thirds between neighbours produce non-grid values.
        let mut extra = vec![];
        for w in vals.windows(2) {
            let d = &w[1] - &w[0];
            extra.push(&w[0] + &d * rat(1, 2));
            extra.push(&w[0] + &d * rat(1, 3));
        }
        vals.extend(extra);
        vals.sort();
        vals.dedup();
        vals
    }

    /// A coarse subset of the critical values: ladder points, integers and
    /// explicit endpoints. Arcs between these are the likeliest gaps.
    pub fn anchor_values(&self, window: &ValueRange) -> Vec<Rational> {
        let mut vals: Vec<Rational> = vec![];
        let mut explicit: Vec<&I> = self.removed.iter().chain(self.added.iter()).collect();
        for f in &self.families {
            match f {
                Family::Finite { elements } => explicit.extend(elements.iter()),
                Family::Sweep { fixed, .. } => vals.extend(fixed.finite_value().cloned()),
                _ => {}
            }
        }
        for e in explicit {
            vals.extend(e.left.finite_value().cloned());
            vals.extend(e.right.finite_value().cloned());
        }
        match self.chart {
            Chart::Angle => vals.extend((-8..=8).map(|k| rat(k, 8))),
            Chart::Real => {
                vals.push(self.ladder.lower.clone());
                vals.push(self.ladder.upper.clone());
                vals.extend((-12..=12).map(|i| self.ladder.value(i)));
                let (lo, hi) = window_span(window, &self.ladder);
                let mut i = floor_rational(&lo);
                while BigRational::from_integer(i.clone()) <= hi {
                    vals.push(BigRational::from_integer(i.clone()));
                    i += 1;
                }
            }
        }
        vals.retain(|v| window.contains(&Ext::Finite(v.clone())) && self.chart_admits(v));
        vals.sort();
        vals.dedup();
        vals
    }

    fn chart_admits(&self, v: &Rational) -> bool {
        match self.chart {
            Chart::Real => true,
            Chart::Angle => v > &int(-1) && v < &int(1),
        }
    }
}

pub fn build_projective_cluster() -> ClusterDescription {
    ClusterDescription::new(Ladder::default(), vec![Family::AllProjectives])
}

pub fn build_t_infinity(ladder: &Ladder) -> ClusterDescription {
    ClusterDescription::new(
        ladder.clone(),
        vec![
            Family::LadderRungs,
            Family::IntegerRungs,
            Family::Finite {
                elements: vec![I::open(ladder.lower.clone(), ladder.upper.clone()), I::full_line()],
            },
        ],
    )
}

/// The fan structure at `a_1` around the `(n+3)`-gon.
pub fn build_t_n(ladder: &Ladder, n: i64) -> ClusterDescription {
    assert!(n >= 1, "T_n needs n >= 1");
    let mut t = build_t_infinity(ladder);
    let a1 = ladder.value(1);
    t.families.push(Family::Fan { apex: 1, side: FanSide::Left, bound: -1 });
    t.families.push(Family::Fan { apex: 1, side: FanSide::Right, bound: n + 3 });
    t.families.push(Family::Finite {
        elements: vec![I::open(ladder.lower.clone(), a1.clone()), I::open(a1, ladder.upper.clone())],
    });
    t
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub samples: usize,
    pub members: usize,
    pub witnessed: usize,
    pub failure_count: usize,
    /// Compatible non-members, capped.
    pub failures: Vec<I>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// Draws candidate intervals with endpoints from the critical values of `t`.
pub struct CandidateSampler {
    values: Vec<Ext>,
    anchors: Vec<Ext>,
    rng: ChaCha8Rng,
    /// Position in the sweep of open intervals between anchors, as
    /// (distance in the anchor list, left index).
    sweep: (usize, usize),
}

fn with_infinities(vals: Vec<Rational>) -> Vec<Ext> {
    let mut out = vec![Ext::NegInf];
    out.extend(vals.into_iter().map(Ext::Finite));
    out.push(Ext::PosInf);
    out
}

impl CandidateSampler {
    pub fn new(t: &ClusterDescription, window: &ValueRange, seed: u64) -> Self {
        Self::from_values(t.critical_values(window), t.anchor_values(window), seed)
    }

    pub fn from_values(vals: Vec<Rational>, anchors: Vec<Rational>, seed: u64) -> Self {
        CandidateSampler {
            values: with_infinities(vals),
            anchors: with_infinities(anchors),
            rng: ChaCha8Rng::seed_from_u64(seed),
            sweep: (1, 0),
        }
    }

    /// Starts the anchor sweep again from the shortest intervals.
    pub fn restart_sweep(&mut self) {
        self.sweep = (1, 0);
    }

    /// The next open interval between two anchors, nearest neighbours first.
    pub fn next_sweep(&mut self) -> Option<I> {
        let n = self.anchors.len();
        loop {
            let (d, i) = self.sweep;
            if d >= n {
                return None;
            }
            if i + d >= n {
                self.sweep = (d + 1, 0);
                continue;
            }
            self.sweep = (d, i + 1);
            let l = DoubledPoint::new(self.anchors[i].clone(), Side::Plus);
            let r = DoubledPoint::new(self.anchors[i + d].clone(), Side::Minus);
            if let (Ok(l), Ok(r)) = (l, r) {
                if let Ok(m) = I::new(l, r) {
                    return Some(m);
                }
            }
        }
    }

    pub fn values(&self) -> &[Ext] {
        &self.values
    }

    pub fn next_candidate(&mut self) -> I {
        if self.rng.gen_bool(0.3) {
            return self.anchor_candidate();
        }
        let n = self.values.len();
        loop {
            let i = self.rng.gen_range(0..n);
            if self.rng.gen_bool(0.15) {
                if let Ext::Finite(x) = &self.values[i] {
                    return I::singleton(x.clone());
                }
                continue;
            }
            let j = if self.rng.gen_bool(0.5) {
                let off = self.rng.gen_range(1..6) as i64 * if self.rng.gen_bool(0.5) { 1 } else { -1 };
                let j = i as i64 + off;
                if j < 0 || j >= n as i64 {
                    continue;
                }
                j as usize
            } else {
                self.rng.gen_range(0..n)
            };
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            let ls = if self.rng.gen_bool(0.5) { Side::Minus } else { Side::Plus };
            let rs = if self.rng.gen_bool(0.5) { Side::Minus } else { Side::Plus };
            let (Ok(l), Ok(r)) = (
                DoubledPoint::new(self.values[a].clone(), ls),
                DoubledPoint::new(self.values[b].clone(), rs),
            ) else {
                continue;
            };
            if let Ok(m) = I::new(l, r) {
                return m;
            }
        }
    }

    fn anchor_candidate(&mut self) -> I {
        let n = self.anchors.len();
        loop {
            let a = self.rng.gen_range(0..n);
            let b = self.rng.gen_range(0..n);
            let (a, b) = (a.min(b), a.max(b));
            let ls = if self.rng.gen_bool(0.6) { Side::Plus } else { Side::Minus };
            let rs = if self.rng.gen_bool(0.6) { Side::Minus } else { Side::Plus };
            let (Ok(l), Ok(r)) = (
                DoubledPoint::new(self.anchors[a].clone(), ls),
                DoubledPoint::new(self.anchors[b].clone(), rs),
            ) else {
                continue;
            };
            if let Ok(m) = I::new(l, r) {
                return m;
            }
        }
    }
}

/// Checks that sampled intervals near `window` are members or have a witness.
pub fn verify_window(t: &ClusterDescription, window: &ValueRange, budget: usize, seed: u64) -> VerifyReport {
    let mut sampler = CandidateSampler::new(t, window, seed);
    verify_with_sampler(t, &mut sampler, budget)
}

/// As [`verify_window`], drawing from a sampler that may be shared between
/// clusters with the same critical values.
pub fn verify_with_sampler(t: &ClusterDescription, sampler: &mut CandidateSampler, budget: usize) -> VerifyReport {
    let mut report = VerifyReport { samples: 0, members: 0, witnessed: 0, failure_count: 0, failures: vec![] };
    sampler.restart_sweep();
    for k in 0..budget {
        let swept = if k < budget / 2 { sampler.next_sweep() } else { None };
        let m = swept.unwrap_or_else(|| sampler.next_candidate());
        report.samples += 1;
        if t.member(&m) {
            report.members += 1;
        } else if t.incompatible_witness(&m).is_some() {
            report.witnessed += 1;
        } else {
            report.failure_count += 1;
            if report.failures.len() < 50 && !report.failures.contains(&m) {
                report.failures.push(m);
            }
        }
    }
    report
}

/// Intervals on which the two descriptions disagree about membership:
/// all explicit diff/finite elements plus `budget` sampled candidates.
pub fn membership_disagreements(
    a: &ClusterDescription,
    b: &ClusterDescription,
    window: &ValueRange,
    budget: usize,
    seed: u64,
) -> Vec<I> {
    let merge = |x: Vec<Rational>, y: Vec<Rational>| {
        let mut v = x;
        v.extend(y);
        v.sort();
        v.dedup();
        v
    };
    let vals = merge(a.critical_values(window), b.critical_values(window));
    let anchors = merge(a.anchor_values(window), b.anchor_values(window));
    let mut sampler = CandidateSampler::from_values(vals, anchors, seed);
    let mut probes: Vec<I> = vec![];
    for d in [a, b] {
        probes.extend(d.removed.iter().cloned());
        probes.extend(d.added.iter().cloned());
        for f in &d.families {
            if let Family::Finite { elements } = f {
                probes.extend(elements.iter().cloned());
            }
        }
    }
    for _ in 0..budget {
        probes.push(sampler.next_candidate());
    }
    let mut out = vec![];
    for m in probes {
        if a.member(&m) != b.member(&m) && !out.contains(&m) {
            out.push(m);
        }
    }
    out
}
