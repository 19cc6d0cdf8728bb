//! Objects of the continuous cluster category C_pi, their compatibility, the
//! coordinate bijection onto open intervals, and the induced E-clusters.
//!
//! Coordinates are in units of pi. Images are described in the angle chart,
//! where a real endpoint `t` is recorded as `(2/pi) atan t`; the image of
//! `M(x, y)` is the open interval from `x - 1` to `y` in that chart, with
//! `x = 0` sent to `-inf`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cluster_sets::{Chart, ClusterDescription, Family, ValueRange};
use crate::ordered_line::{
    int, rat, rational_string, rational_to_f64, DoubledPoint, ExtendedRational, IntervalObject, Rational, Side,
};

type I = IntervalObject;
type Ext = ExtendedRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CpiError {
    #[error("M({x}, {y}) is outside the fundamental domain")]
    OutsideDomain { x: String, y: String },
    #[error("need a < b, got a = {a}, b = {b}")]
    DomainError { a: String, b: String },
    #[error("{0} is not in the angle chart image of C_pi")]
    NotAnImage(String),
    #[error("segment {0} leaves the fundamental domain")]
    BadSegment(String),
    #[error("M({x}, {y}) is not a listed object of the oracle")]
    NotMember { x: String, y: String },
    #[error("M({x}, {y}) is not mutable in this cluster")]
    NotMutable { x: String, y: String },
    #[error("M({x}, {y}) has several replacements")]
    AmbiguousExchange { x: String, y: String },
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct CPiObject {
    #[serde(with = "rational_string")]
    pub x: Rational,
    #[serde(with = "rational_string")]
    pub y: Rational,
}

impl CPiObject {
    pub fn new(x: Rational, y: Rational) -> Result<Self, CpiError> {
        let o = CPiObject { x, y };
        if o.in_domain() {
            Ok(o)
        } else {
            Err(CpiError::OutsideDomain { x: o.x.to_string(), y: o.y.to_string() })
        }
    }

    /// `x >= 0`, `y < 1` and `|x - y| < 1`.
    pub fn in_domain(&self) -> bool {
        self.x >= Rational::zero() && self.y < Rational::one() && (&self.x - &self.y).abs() < Rational::one()
    }

    /// The suspension `M(x, y) -> M(y + 1, x + 1)`.
    pub fn shift(&self) -> CPiObject {
        CPiObject { x: &self.y + int(1), y: &self.x + int(1) }
    }

    pub fn unshift(&self) -> CPiObject {
        CPiObject { x: &self.y - int(1), y: &self.x - int(1) }
    }

    pub fn shifted(&self, n: i64) -> CPiObject {
        let mut o = self.clone();
        for _ in 0..n.abs() {
            o = if n > 0 { o.shift() } else { o.unshift() };
        }
        o
    }
}

/// Compatibility in the N_R cluster structure: the two objects are
/// incompatible exactly when one crosses into the other's open rectangle.
pub fn nr_incompatible(u: &CPiObject, v: &CPiObject) -> bool {
    let forward = |p: &CPiObject, q: &CPiObject| p.x < q.x && q.x < &p.y + int(1) && p.y < q.y;
    forward(u, v) || forward(v, u)
}

/// Half-open Hom support rectangle in the strip of width `r`.
pub fn dpi_hom_nonzero(a: &CPiObject, b: &CPiObject, r: &Rational) -> bool {
    a.x <= b.x && b.x < &a.y + r && a.y <= b.y && b.y < &a.x + r
}

fn strict_hom(a: &CPiObject, b: &CPiObject) -> bool {
    a.x < b.x && b.x < &a.y + int(1) && a.y < b.y && b.y < &a.x + int(1)
}

/// Incompatibility found by searching shifts of `v` for an open rectangle
/// with corner `u`.
pub fn nr_incompatible_direct(u: &CPiObject, v: &CPiObject) -> bool {
    (-2..=2).any(|n| strict_hom(u, &v.shifted(n)))
}

/// The shift offsets at which [`nr_incompatible_direct`] finds a rectangle.
pub fn rectangle_offsets(u: &CPiObject, v: &CPiObject, range: std::ops::RangeInclusive<i64>) -> Vec<i64> {
    range.filter(|&n| strict_hom(u, &v.shifted(n))).collect()
}

/// Real endpoints `(a, b)` of the image, with `a = -inf` when `x = 0`.
pub fn f_map(u: &CPiObject) -> (f64, f64) {
    let a = if u.x.is_zero() { f64::NEG_INFINITY } else { ((rational_to_f64(&u.x) - 1.0) * FRAC_PI_2).tan() };
    (a, (rational_to_f64(&u.y) * FRAC_PI_2).tan())
}

/// The image as an open interval in the angle chart.
pub fn f_map_symbolic(u: &CPiObject) -> I {
    let left = if u.x.is_zero() { DoubledPoint::neg_inf() } else { DoubledPoint::plus(&u.x - int(1)) };
    I { left, right: DoubledPoint::minus(u.y.clone()) }
}

/// Recovers `(x, y)` from real endpoints.
pub fn f_inverse(a: f64, b: f64) -> Result<(f64, f64), CpiError> {
    if !(a < b) || b.is_infinite() {
        return Err(CpiError::DomainError { a: a.to_string(), b: b.to_string() });
    }
    let alpha = b.atan() + a.atan() + FRAC_PI_2;
    let beta = b.atan() - a.atan() - FRAC_PI_2;
    Ok(((alpha - beta) / PI, (alpha + beta) / PI))
}

/// Exact inverse of [`f_map_symbolic`].
pub fn f_inverse_symbolic(m: &I) -> Result<CPiObject, CpiError> {
    let bad = || CpiError::NotAnImage(m.to_string());
    if m.right.side != Side::Minus {
        return Err(bad());
    }
    let y = m.right.finite_value().ok_or_else(bad)?.clone();
    let x = if m.left.is_neg_inf() {
        int(0)
    } else if m.left.side == Side::Plus {
        m.left.finite_value().ok_or_else(bad)? + int(1)
    } else {
        return Err(bad());
    };
    CPiObject::new(x, y).map_err(|_| bad())
}

fn chart_to_real(v: &Ext) -> f64 {
    match v {
        Ext::NegInf => f64::NEG_INFINITY,
        Ext::PosInf => f64::INFINITY,
        Ext::Finite(q) => (rational_to_f64(q) * FRAC_PI_2).tan(),
    }
}

/// Real endpoints of an angle-chart interval, for display.
pub fn chart_interval_to_real(m: &I) -> (f64, f64) {
    (chart_to_real(&m.left.value), chart_to_real(&m.right.value))
}

/// One piece of an N_R cluster description.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum OraclePiece {
    Object {
        #[serde(flatten)]
        object: CPiObject,
    },
    /// `{M(x, y) : y in range}`
    Vertical {
        #[serde(with = "rational_string")]
        x: Rational,
        y: ValueRange,
    },
    /// `{M(x, y) : x in range}`
    Horizontal {
        #[serde(with = "rational_string")]
        y: Rational,
        x: ValueRange,
    },
}

/// An N_R cluster given by finitely many objects and segments.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ClusterOracleNR {
    pub pieces: Vec<OraclePiece>,
}

/// A family of images in the angle chart: a point, or one endpoint fixed and
/// the other sweeping a range.
#[derive(Clone, Debug)]
enum ImagePiece {
    Point { a: Ext, b: Rational },
    FixedLeft { a: Ext, b: ValueRange },
    FixedRight { b: Rational, a: ValueRange },
}

fn fin(q: Rational) -> Ext {
    Ext::Finite(q)
}

fn shift_range(r: &ValueRange, by: &Rational) -> ValueRange {
    let mv = |v: &Ext| match v {
        Ext::Finite(q) => fin(q + by),
        other => other.clone(),
    };
    ValueRange::new(mv(&r.lo), r.lo_closed, mv(&r.hi), r.hi_closed)
}

fn within(r: &ValueRange, lo: &Rational, hi: &Rational) -> bool {
    let inner = ValueRange::open(fin(lo.clone()), fin(hi.clone()));
    r.intersect(&inner) == *r
}

impl ClusterOracleNR {
    pub fn new(pieces: Vec<OraclePiece>) -> Result<Self, CpiError> {
        let o = ClusterOracleNR { pieces };
        o.validate()?;
        Ok(o)
    }

    pub fn validate(&self) -> Result<(), CpiError> {
        for p in &self.pieces {
            match p {
                OraclePiece::Object { object } => {
                    CPiObject::new(object.x.clone(), object.y.clone())?;
                }
                OraclePiece::Vertical { x, y } => {
                    let hi = (x + int(1)).min(int(1));
                    let ok = *x >= Rational::zero() && !y.is_empty() && within(y, &(x - int(1)), &hi);
                    if !ok {
                        return Err(CpiError::BadSegment(format!("x = {x}")));
                    }
                }
                OraclePiece::Horizontal { y, x } => {
                    let lo_ok = x.lo >= fin(int(0));
                    let ok = *y < Rational::one()
                        && !x.is_empty()
                        && lo_ok
                        && (within(x, &(y - int(1)), &(y + int(1)))
                            || (x.lo == fin(int(0)) && within(&ValueRange { lo_closed: false, ..x.clone() }, &(y - int(1)), &(y + int(1)))));
                    if !ok {
                        return Err(CpiError::BadSegment(format!("y = {y}")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> Vec<CPiObject> {
        self.pieces
            .iter()
            .filter_map(|p| match p {
                OraclePiece::Object { object } => Some(object.clone()),
                _ => None,
            })
            .collect()
    }

    pub fn contains(&self, u: &CPiObject) -> bool {
        self.pieces.iter().any(|p| match p {
            OraclePiece::Object { object } => object == u,
            OraclePiece::Vertical { x, y } => *x == u.x && y.contains(&fin(u.y.clone())),
            OraclePiece::Horizontal { y, x } => *y == u.y && x.contains(&fin(u.x.clone())),
        })
    }

    /// Whether some described object other than `skip` is incompatible with `v`.
    pub fn conflicts(&self, v: &CPiObject, skip: Option<&CPiObject>) -> bool {
        let one = int(1);
        self.pieces.iter().any(|p| match p {
            OraclePiece::Object { object } => Some(object) != skip && nr_incompatible(v, object),
            OraclePiece::Vertical { x, y } => {
                // v before w: v.x < x < v.y + 1 and w.y > v.y.
                let ahead = v.x < *x && *x < &v.y + &one && !y.intersect(&ValueRange::open(fin(v.y.clone()), Ext::PosInf)).is_empty();
                // w before v: x < v.x and w.y in (v.x - 1, v.y).
                let behind = *x < v.x && !y.intersect(&ValueRange::open(fin(&v.x - &one), fin(v.y.clone()))).is_empty();
                ahead || behind
            }
            OraclePiece::Horizontal { y, x } => {
                let ahead = *y > v.y && !x.intersect(&ValueRange::open(fin(v.x.clone()), fin(&v.y + &one))).is_empty();
                let behind = *y > &v.x - &one && *y < v.y && !x.intersect(&ValueRange::open(Ext::NegInf, fin(v.x.clone()))).is_empty();
                ahead || behind
            }
        })
    }

    fn images(&self) -> Vec<ImagePiece> {
        let one = int(1);
        let mut out = vec![];
        for p in &self.pieces {
            match p {
                OraclePiece::Object { object } => {
                    let a = if object.x.is_zero() { Ext::NegInf } else { fin(&object.x - &one) };
                    out.push(ImagePiece::Point { a, b: object.y.clone() });
                }
                OraclePiece::Vertical { x, y } => {
                    let a = if x.is_zero() { Ext::NegInf } else { fin(x - &one) };
                    out.push(ImagePiece::FixedLeft { a, b: y.clone() });
                }
                OraclePiece::Horizontal { y, x } => {
                    let mut range = shift_range(x, &-one.clone());
                    if x.lo == fin(int(0)) && x.lo_closed {
                        out.push(ImagePiece::Point { a: Ext::NegInf, b: y.clone() });
                        range.lo_closed = false;
                    }
                    if !range.is_empty() {
                        out.push(ImagePiece::FixedRight { b: y.clone(), a: range });
                    }
                }
            }
        }
        out
    }
}

/// Incidence queries on a set of image pieces.
struct Incidence<'a> {
    pieces: &'a [ImagePiece],
}

impl Incidence<'_> {
    fn starts_at(&self, z: &Ext) -> bool {
        self.pieces.iter().any(|p| match p {
            ImagePiece::Point { a, .. } | ImagePiece::FixedLeft { a, .. } => a == z,
            ImagePiece::FixedRight { a, .. } => a.contains(z),
        })
    }

    fn ends_at(&self, z: &Ext) -> bool {
        self.pieces.iter().any(|p| match p {
            ImagePiece::Point { b, .. } | ImagePiece::FixedRight { b, .. } => fin(b.clone()) == *z,
            ImagePiece::FixedLeft { b, .. } => b.contains(z),
        })
    }

    /// Some image `(a, b')` with `b' > b`.
    fn reaches_past(&self, a: &Ext, b: &Rational) -> bool {
        let above = ValueRange::open(fin(b.clone()), Ext::PosInf);
        self.pieces.iter().any(|p| match p {
            ImagePiece::Point { a: a2, b: b2 } => a2 == a && b2 > b,
            ImagePiece::FixedLeft { a: a2, b: r } => a2 == a && !r.intersect(&above).is_empty(),
            ImagePiece::FixedRight { b: b2, a: r } => b2 > b && r.contains(a),
        })
    }

    /// Some image `(a', b)` with `a' < a`.
    fn starts_before(&self, a: &Ext, b: &Rational) -> bool {
        let below = ValueRange::new(Ext::NegInf, true, a.clone(), false);
        let bx = fin(b.clone());
        self.pieces.iter().any(|p| match p {
            ImagePiece::Point { a: a2, b: b2 } => b2 == b && a2 < a,
            ImagePiece::FixedLeft { a: a2, b: r } => a2 < a && r.contains(&bx),
            ImagePiece::FixedRight { b: b2, a: r } => b2 == b && !r.intersect(&below).is_empty(),
        })
    }

    fn left_satisfactory(&self, a: &Ext, b: &Rational) -> bool {
        *a == Ext::NegInf || self.ends_at(a) || self.reaches_past(a, b)
    }

    fn right_satisfactory(&self, a: &Ext, b: &Rational) -> bool {
        self.starts_at(&fin(b.clone())) || self.starts_before(a, b)
    }

    fn all_values(&self) -> Vec<Rational> {
        let mut out = vec![];
        let ext = |v: &Ext, out: &mut Vec<Rational>| {
            if let Ext::Finite(q) = v {
                out.push(q.clone());
            }
        };
        for p in self.pieces {
            match p {
                ImagePiece::Point { a, b } => {
                    ext(a, &mut out);
                    out.push(b.clone());
                }
                ImagePiece::FixedLeft { a, b } => {
                    ext(a, &mut out);
                    ext(&b.lo, &mut out);
                    ext(&b.hi, &mut out);
                }
                ImagePiece::FixedRight { b, a } => {
                    out.push(b.clone());
                    ext(&a.lo, &mut out);
                    ext(&a.hi, &mut out);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Which of the closed completions of an open image `(a, b)` are added.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Completion {
    None,
    RightClosed,
    LeftClosed,
    Both,
}

fn completion(left_ok: bool, right_ok: bool) -> Completion {
    match (left_ok, right_ok) {
        (true, true) => Completion::None,
        (true, false) => Completion::RightClosed,
        (false, true) => Completion::LeftClosed,
        (false, false) => Completion::Both,
    }
}

/// `(left side, right side)` pairs for the intervals a completion adds.
fn completion_sides(c: Completion) -> Vec<(Side, Side)> {
    match c {
        Completion::None => vec![],
        Completion::RightClosed => vec![(Side::Plus, Side::Plus)],
        Completion::LeftClosed => vec![(Side::Minus, Side::Minus)],
        Completion::Both => vec![(Side::Minus, Side::Plus), (Side::Minus, Side::Minus)],
    }
}

/// Splits `r` into its breakpoints and the open stretches between them,
/// each with a representative value.
fn pieces_of(r: &ValueRange, breaks: &[Rational]) -> Vec<(ValueRange, Rational)> {
    let (Ext::Finite(lo), Ext::Finite(hi)) = (&r.lo, &r.hi) else {
        return vec![];
    };
    let mut cuts: Vec<Rational> = vec![lo.clone()];
    cuts.extend(breaks.iter().filter(|q| *q > lo && *q < hi).cloned());
    cuts.push(hi.clone());
    let mut out = vec![];
    for (k, w) in cuts.windows(2).enumerate() {
        let p = &w[0];
        if k == 0 && r.lo_closed || k > 0 {
            out.push((ValueRange::point(fin(p.clone())), p.clone()));
        }
        let mid = (&w[0] + &w[1]) * rat(1, 2);
        out.push((ValueRange::open(fin(w[0].clone()), fin(w[1].clone())), mid));
    }
    if r.hi_closed && hi > lo {
        out.push((ValueRange::point(fin(hi.clone())), hi.clone()));
    }
    if lo == hi && r.lo_closed && r.hi_closed {
        out.push((ValueRange::point(fin(lo.clone())), lo.clone()));
    }
    out
}

fn merge_ranges(mut rs: Vec<ValueRange>) -> Vec<ValueRange> {
    rs.retain(|r| !r.is_empty());
    rs.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
    let mut out: Vec<ValueRange> = vec![];
    for r in rs {
        if let Some(last) = out.last_mut() {
            let touches = r.lo < last.hi || (r.lo == last.hi && (r.lo_closed || last.hi_closed));
            if touches {
                if r.hi > last.hi || (r.hi == last.hi && r.hi_closed) {
                    last.hi = r.hi.clone();
                    last.hi_closed = r.hi_closed || (r.hi == last.hi && last.hi_closed);
                }
                continue;
            }
        }
        out.push(r);
    }
    out
}

/// The part of `universe` not covered by `covered`.
fn complement_within(covered: Vec<ValueRange>, universe: &ValueRange) -> Vec<ValueRange> {
    let mut out = vec![];
    let mut cur_lo = universe.lo.clone();
    let mut cur_closed = universe.lo_closed;
    for r in merge_ranges(covered) {
        let gap = ValueRange::new(cur_lo.clone(), cur_closed, r.lo.clone(), !r.lo_closed).intersect(universe);
        if !gap.is_empty() {
            out.push(gap);
        }
        cur_lo = r.hi.clone();
        cur_closed = !r.hi_closed;
    }
    let gap = ValueRange::new(cur_lo, cur_closed, universe.hi.clone(), universe.hi_closed).intersect(universe);
    if !gap.is_empty() {
        out.push(gap);
    }
    out
}

fn make_interval(a: &Ext, sa: Side, b: &Rational, sb: Side) -> Option<I> {
    let l = DoubledPoint::new(a.clone(), sa).ok()?;
    I::new(l, DoubledPoint::at(b.clone(), sb)).ok()
}

/// The E-cluster induced by an N_R cluster, in the angle chart.
pub fn build_ter(oracle: &ClusterOracleNR) -> Result<ClusterDescription, CpiError> {
    oracle.validate()?;
    let images = oracle.images();
    let inc = Incidence { pieces: &images };
    let mut finite = vec![I::full_line()];
    let mut families = vec![];

    // Images.
    for p in &images {
        match p {
            ImagePiece::Point { a, b } => finite.extend(make_interval(a, Side::Plus, b, Side::Minus)),
            ImagePiece::FixedLeft { a, b } => families.push(Family::Sweep {
                fixed: DoubledPoint::new(a.clone(), Side::Plus).expect("left end"),
                fixed_is_left: true,
                moving_side: Side::Minus,
                range: b.clone(),
            }),
            ImagePiece::FixedRight { b, a } => families.push(Family::Sweep {
                fixed: DoubledPoint::minus(b.clone()),
                fixed_is_left: false,
                moving_side: Side::Plus,
                range: a.clone(),
            }),
        }
    }

    // Singletons away from every image endpoint.
    let mut covered = vec![];
    for p in &images {
        match p {
            ImagePiece::Point { a, b } => {
                covered.push(ValueRange::point(a.clone()));
                covered.push(ValueRange::point(fin(b.clone())));
            }
            ImagePiece::FixedLeft { a, b } => {
                covered.push(ValueRange::point(a.clone()));
                covered.push(b.clone());
            }
            ImagePiece::FixedRight { b, a } => {
                covered.push(ValueRange::point(fin(b.clone())));
                covered.push(a.clone());
            }
        }
    }
    let line = ValueRange::open(fin(int(-1)), fin(int(1)));
    for gap in complement_within(covered, &line) {
        families.push(Family::Singletons { range: gap, excluded: vec![], grid: None });
    }

    // The largest open projective, if attained, is completed by an injective.
    let mut top: Option<Rational> = None;
    for p in &images {
        let cand = match p {
            ImagePiece::Point { a: Ext::NegInf, b } => Some(b.clone()),
            ImagePiece::FixedLeft { a: Ext::NegInf, b } if b.hi_closed => b.hi.finite().cloned(),
            _ => None,
        };
        if let Some(c) = cand {
            top = Some(top.map_or(c.clone(), |t: Rational| t.max(c)));
        }
    }
    let sup_unattained = images.iter().any(|p| match p {
        ImagePiece::FixedLeft { a: Ext::NegInf, b } => !b.hi_closed && top.as_ref().is_some_and(|t| b.hi > fin(t.clone())),
        _ => false,
    });
    let top = if sup_unattained { None } else { top };
    if let Some(t) = &top {
        finite.push(I::new(DoubledPoint::plus(t.clone()), DoubledPoint::pos_inf()).expect("injective"));
    }
    let skip_tau = |a: &Ext, b: &Rational| *a == Ext::NegInf && top.as_ref() == Some(b);

    // Closed completions.
    let breaks = inc.all_values();
    for p in &images {
        match p {
            ImagePiece::Point { a, b } => {
                if skip_tau(a, b) {
                    continue;
                }
                let c = completion(inc.left_satisfactory(a, b), inc.right_satisfactory(a, b));
                for (sa, sb) in completion_sides(c) {
                    finite.extend(make_interval(a, sa, b, sb));
                }
            }
            ImagePiece::FixedLeft { a, b: range } => {
                for (piece, rep) in pieces_of(range, &breaks) {
                    if piece.lo == piece.hi && skip_tau(a, &rep) {
                        continue;
                    }
                    let c = completion(inc.left_satisfactory(a, &rep), inc.right_satisfactory(a, &rep));
                    for (sa, sb) in completion_sides(c) {
                        let Ok(fixed) = DoubledPoint::new(a.clone(), sa) else { continue };
                        families.push(Family::Sweep { fixed, fixed_is_left: true, moving_side: sb, range: piece.clone() });
                    }
                }
            }
            ImagePiece::FixedRight { b, a: range } => {
                for (piece, rep) in pieces_of(range, &breaks) {
                    let a = fin(rep);
                    let c = completion(inc.left_satisfactory(&a, b), inc.right_satisfactory(&a, b));
                    for (sa, sb) in completion_sides(c) {
                        families.push(Family::Sweep {
                            fixed: DoubledPoint::at(b.clone(), sb),
                            fixed_is_left: false,
                            moving_side: sa,
                            range: piece.clone(),
                        });
                    }
                }
            }
        }
    }

    families.insert(0, Family::Finite { elements: finite });
    Ok(ClusterDescription::new(Default::default(), families).with_chart(Chart::Angle))
}

/// The window of the angle chart covered by every oracle.
pub fn chart_window() -> ValueRange {
    ValueRange::open(fin(int(-1)), fin(int(1)))
}

/// Mutation of a listed object inside the N_R cluster, by search over
/// coordinates already present in the description.
pub fn nr_mutate(oracle: &ClusterOracleNR, u: &CPiObject) -> Result<(ClusterOracleNR, CPiObject), CpiError> {
    let pos = oracle
        .pieces
        .iter()
        .position(|p| matches!(p, OraclePiece::Object { object } if object == u))
        .ok_or_else(|| CpiError::NotMember { x: u.x.to_string(), y: u.y.to_string() })?;
    let mut xs = vec![];
    let mut ys = vec![];
    let ends = |r: &ValueRange, out: &mut Vec<Rational>| {
        out.extend(r.lo.finite().cloned());
        out.extend(r.hi.finite().cloned());
    };
    for p in &oracle.pieces {
        match p {
            OraclePiece::Object { object } => {
                xs.push(object.x.clone());
                ys.push(object.y.clone());
            }
            OraclePiece::Vertical { x, y } => {
                xs.push(x.clone());
                ends(y, &mut ys);
            }
            OraclePiece::Horizontal { y, x } => {
                ys.push(y.clone());
                ends(x, &mut xs);
            }
        }
    }
    // Corners of a rectangle through u may also sit on the other axis.
    let (xs0, ys0) = (xs.clone(), ys.clone());
    xs.extend(ys0.iter().map(|y| y + int(1)));
    ys.extend(xs0.iter().map(|x| x - int(1)));
    xs.sort();
    xs.dedup();
    ys.sort();
    ys.dedup();
    let mut survivors = vec![];
    for x in &xs {
        for y in &ys {
            let Ok(v) = CPiObject::new(x.clone(), y.clone()) else { continue };
            if nr_incompatible(u, &v) && !oracle.conflicts(&v, Some(u)) && !survivors.contains(&v) {
                survivors.push(v);
            }
        }
    }
    match survivors.len() {
        0 => Err(CpiError::NotMutable { x: u.x.to_string(), y: u.y.to_string() }),
        1 => {
            let v = survivors.pop().expect("one survivor");
            let mut next = oracle.clone();
            next.pieces[pos] = OraclePiece::Object { object: v.clone() };
            Ok((next, v))
        }
        _ => Err(CpiError::AmbiguousExchange { x: u.x.to_string(), y: u.y.to_string() }),
    }
}

/// `{M(0, y) : -1 < y < 1}`, whose image is the projective cluster.
pub fn vertical_line_oracle() -> ClusterOracleNR {
    ClusterOracleNR {
        pieces: vec![OraclePiece::Vertical { x: int(0), y: ValueRange::open(fin(int(-1)), fin(int(1))) }],
    }
}

/// Fans through the chart points `p1 < p2 < p3 < p4`, with the diagonals
/// from `p1` to `p3` and `p4` and the open projective ending at `p4`.
pub fn quad_oracle(p: [Rational; 4]) -> ClusterOracleNR {
    let [p1, p2, p3, p4] = p;
    let one = int(1);
    let vertical = |a: &Rational, lo: &Rational, hi: Ext, hi_closed: bool| OraclePiece::Vertical {
        x: a + &one,
        y: ValueRange::new(fin(lo.clone()), false, hi, hi_closed),
    };
    ClusterOracleNR {
        pieces: vec![
            OraclePiece::Horizontal { y: p1.clone(), x: ValueRange::new(fin(int(0)), true, fin(&p1 + &one), false) },
            vertical(&p1, &p1, fin(p2.clone()), true),
            vertical(&p2, &p2, fin(p3.clone()), true),
            vertical(&p3, &p3, fin(p4.clone()), true),
            vertical(&p4, &p4, fin(int(1)), false),
            OraclePiece::Object { object: CPiObject { x: &p1 + &one, y: p3.clone() } },
            OraclePiece::Object { object: CPiObject { x: &p1 + &one, y: p4.clone() } },
            OraclePiece::Object { object: CPiObject { x: int(0), y: p4.clone() } },
        ],
    }
}
