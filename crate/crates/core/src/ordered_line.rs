//! Exact coordinates on the extended real line, doubled points, interval
//! objects and the integer-indexed ladder `a_i`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LineError {
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),
    #[error("cannot parse interval from {0:?}")]
    BadInterval(String),
    #[error("invalid interval: left {0} is not below right {1}")]
    EmptyInterval(String, String),
    #[error("infinite endpoint with closed side")]
    ClosedInfinity,
    #[error("dyadic index out of range: j={j}, l={l}")]
    DyadicRange { j: i64, l: u32 },
    #[error("ladder limits must satisfy lower < upper")]
    BadLadder,
}

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn parse_rational(s: &str) -> Result<Rational, LineError> {
    let t = s.trim();
    let bad = || LineError::BadRational(s.to_string());
    if let Some((p, q)) = t.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let neg = whole.starts_with('-');
        let w = if whole.is_empty() || whole == "-" {
            BigInt::zero()
        } else {
            BigInt::from_str(whole).map_err(|_| bad())?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let f = BigInt::from_str(frac).map_err(|_| bad())?;
        let den = num_traits::pow(BigInt::from(10), frac.len());
        let f = BigRational::new(f, den);
        let w = BigRational::from_integer(w);
        return Ok(if neg { w - f } else { w + f });
    }
    BigInt::from_str(t)
        .map(BigRational::from_integer)
        .map_err(|_| bad())
}

pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let raw = RawNumber::deserialize(d)?;
        raw.into_rational().map_err(serde::de::Error::custom)
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    pub(crate) enum RawNumber {
        Int(i64),
        Text(String),
    }

    impl RawNumber {
        pub(crate) fn into_rational(self) -> Result<Rational, LineError> {
            match self {
                RawNumber::Int(n) => Ok(int(n)),
                RawNumber::Text(t) => parse_rational(&t),
            }
        }
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(format_rational).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let raw = Vec::<rational_string::RawNumber>::deserialize(d)?;
        raw.into_iter()
            .map(|r| r.into_rational().map_err(serde::de::Error::custom))
            .collect()
    }
}

/// A rational number or one of the two infinities.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum ExtendedRational {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtendedRational {
    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtendedRational::Finite(q) => Some(q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedRational::Finite(_))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtendedRational::NegInf => f64::NEG_INFINITY,
            ExtendedRational::PosInf => f64::INFINITY,
            ExtendedRational::Finite(q) => rational_to_f64(q),
        }
    }
}

impl From<Rational> for ExtendedRational {
    fn from(q: Rational) -> Self {
        ExtendedRational::Finite(q)
    }
}

impl fmt::Display for ExtendedRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedRational::NegInf => write!(f, "-inf"),
            ExtendedRational::PosInf => write!(f, "+inf"),
            ExtendedRational::Finite(q) => write!(f, "{}", q),
        }
    }
}

impl FromStr for ExtendedRational {
    type Err = LineError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "-inf" | "-∞" | "-infinity" => Ok(ExtendedRational::NegInf),
            "+inf" | "inf" | "+∞" | "∞" | "+infinity" | "infinity" => Ok(ExtendedRational::PosInf),
            t => parse_rational(t).map(ExtendedRational::Finite),
        }
    }
}

impl Serialize for ExtendedRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtendedRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = rational_string::RawNumber::deserialize(d)?;
        match raw {
            rational_string::RawNumber::Int(n) => Ok(ExtendedRational::Finite(int(n))),
            rational_string::RawNumber::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

pub fn rational_to_f64(q: &Rational) -> f64 {
    // Scale huge numerators/denominators down before converting.
    let n = q.numer().to_f64();
    let d = q.denom().to_f64();
    match (n, d) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000) as usize;
            let n = (q.numer() >> shift).to_f64().unwrap_or(0.0);
            let d = (q.denom() >> shift).to_f64().unwrap_or(1.0);
            n / d
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Side::Minus => "-",
            Side::Plus => "+",
        }
    }
}

impl Serialize for Side {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl<'de> Deserialize<'de> for Side {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let t = String::deserialize(d)?;
        match t.as_str() {
            "-" | "minus" | "MINUS" => Ok(Side::Minus),
            "+" | "plus" | "PLUS" => Ok(Side::Plus),
            other => Err(serde::de::Error::custom(format!("bad side {other:?}"))),
        }
    }
}

/// A cut of the line: `(v, -)` sits just below `v`, `(v, +)` just above.
/// Ordered by value first, then `Minus < Plus`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct DoubledPoint {
    pub value: ExtendedRational,
    pub side: Side,
}

impl DoubledPoint {
    pub fn new(value: ExtendedRational, side: Side) -> Result<Self, LineError> {
        match (&value, side) {
            (ExtendedRational::NegInf, Side::Minus) | (ExtendedRational::PosInf, Side::Plus) => {
                Err(LineError::ClosedInfinity)
            }
            _ => Ok(DoubledPoint { value, side }),
        }
    }

    pub fn neg_inf() -> Self {
        DoubledPoint { value: ExtendedRational::NegInf, side: Side::Plus }
    }

    pub fn pos_inf() -> Self {
        DoubledPoint { value: ExtendedRational::PosInf, side: Side::Minus }
    }

    pub fn minus(q: Rational) -> Self {
        DoubledPoint { value: ExtendedRational::Finite(q), side: Side::Minus }
    }

    pub fn plus(q: Rational) -> Self {
        DoubledPoint { value: ExtendedRational::Finite(q), side: Side::Plus }
    }

    pub fn at(q: Rational, side: Side) -> Self {
        DoubledPoint { value: ExtendedRational::Finite(q), side }
    }

    pub fn finite_value(&self) -> Option<&Rational> {
        self.value.finite()
    }

    /// Same value, other side. Not defined at the infinities.
    pub fn flipped(&self) -> Option<Self> {
        DoubledPoint::new(self.value.clone(), self.side.flip()).ok()
    }

    pub fn is_neg_inf(&self) -> bool {
        self.value == ExtendedRational::NegInf
    }

    pub fn is_pos_inf(&self) -> bool {
        self.value == ExtendedRational::PosInf
    }
}

impl<'de> Deserialize<'de> for DoubledPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            value: ExtendedRational,
            side: Side,
        }
        let raw = Raw::deserialize(d)?;
        DoubledPoint::new(raw.value, raw.side).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for DoubledPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.value, self.side.symbol())
    }
}

pub fn compare(p: &DoubledPoint, q: &DoubledPoint) -> Ordering {
    p.cmp(q)
}

/// An interval indecomposable, stored as a pair of cuts with `left < right`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct IntervalObject {
    pub left: DoubledPoint,
    pub right: DoubledPoint,
}

impl<'de> Deserialize<'de> for IntervalObject {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Cuts { left: DoubledPoint, right: DoubledPoint },
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Cuts { left, right } => {
                IntervalObject::new(left, right).map_err(serde::de::Error::custom)
            }
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

impl IntervalObject {
    pub fn new(left: DoubledPoint, right: DoubledPoint) -> Result<Self, LineError> {
        if left < right {
            Ok(IntervalObject { left, right })
        } else {
            Err(LineError::EmptyInterval(left.to_string(), right.to_string()))
        }
    }

    /// Builds from endpoint values and closedness flags.
    pub fn from_ends(
        a: ExtendedRational,
        a_closed: bool,
        b: ExtendedRational,
        b_closed: bool,
    ) -> Result<Self, LineError> {
        let l = DoubledPoint::new(a, if a_closed { Side::Minus } else { Side::Plus })?;
        let r = DoubledPoint::new(b, if b_closed { Side::Plus } else { Side::Minus })?;
        IntervalObject::new(l, r)
    }

    pub fn open(a: Rational, b: Rational) -> Self {
        IntervalObject::new(DoubledPoint::plus(a), DoubledPoint::minus(b)).expect("open interval")
    }

    pub fn closed(a: Rational, b: Rational) -> Self {
        IntervalObject::new(DoubledPoint::minus(a), DoubledPoint::plus(b)).expect("closed interval")
    }

    pub fn closed_open(a: Rational, b: Rational) -> Self {
        IntervalObject::new(DoubledPoint::minus(a), DoubledPoint::minus(b)).expect("interval")
    }

    pub fn open_closed(a: Rational, b: Rational) -> Self {
        IntervalObject::new(DoubledPoint::plus(a), DoubledPoint::plus(b)).expect("interval")
    }

    pub fn singleton(x: Rational) -> Self {
        IntervalObject { left: DoubledPoint::minus(x.clone()), right: DoubledPoint::plus(x) }
    }

    /// `P_a`, support `(-inf, a]`.
    pub fn projective(a: Rational) -> Self {
        IntervalObject { left: DoubledPoint::neg_inf(), right: DoubledPoint::plus(a) }
    }

    /// `P_{a)}`, support `(-inf, a)`.
    pub fn projective_open(a: Rational) -> Self {
        IntervalObject { left: DoubledPoint::neg_inf(), right: DoubledPoint::minus(a) }
    }

    /// `P_{+inf}`, the whole line.
    pub fn full_line() -> Self {
        IntervalObject { left: DoubledPoint::neg_inf(), right: DoubledPoint::pos_inf() }
    }

    /// `I_{(b}`, support `(b, +inf)`.
    pub fn injective_open(b: Rational) -> Self {
        IntervalObject { left: DoubledPoint::plus(b), right: DoubledPoint::pos_inf() }
    }

    pub fn is_singleton(&self) -> bool {
        self.left.value == self.right.value
    }

    pub fn left_closed(&self) -> bool {
        self.left.side == Side::Minus
    }

    pub fn right_closed(&self) -> bool {
        self.right.side == Side::Plus
    }

    /// Whether the real point `t` lies in the support.
    pub fn contains_value(&self, t: &Rational) -> bool {
        let lo = DoubledPoint::minus(t.clone());
        let hi = DoubledPoint::plus(t.clone());
        self.left <= lo && hi <= self.right
    }

    pub fn dim_at(&self, t: &Rational) -> usize {
        usize::from(self.contains_value(t))
    }
}

impl fmt::Display for IntervalObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_singleton() {
            return write!(f, "M_{{{}}}", self.left.value);
        }
        let lb = if self.left_closed() { '[' } else { '(' };
        let rb = if self.right_closed() { ']' } else { ')' };
        write!(f, "{}{},{}{}", lb, self.left.value, self.right.value, rb)
    }
}

impl FromStr for IntervalObject {
    type Err = LineError;

    /// Accepts `(a,b]`-style brackets, `{x}`, `M_{x}`, `M_{(a,b)}`,
    /// `P_a`, `P_a)`, `P_{a)}`, `P_+inf`, `I_(b` and `I_{(b}`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || LineError::BadInterval(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.starts_with('{') && t.contains("\"left\"") {
            return Err(bad());
        }
        if let Some(rest) = t.strip_prefix("P_") {
            let body = strip_braces(rest);
            if let Some(v) = body.strip_suffix(')') {
                let v: ExtendedRational = v.parse().map_err(|_| bad())?;
                return match v {
                    ExtendedRational::Finite(q) => Ok(IntervalObject::projective_open(q)),
                    ExtendedRational::PosInf => Ok(IntervalObject::full_line()),
                    ExtendedRational::NegInf => Err(bad()),
                };
            }
            let v: ExtendedRational = body.parse().map_err(|_| bad())?;
            return match v {
                ExtendedRational::Finite(q) => Ok(IntervalObject::projective(q)),
                ExtendedRational::PosInf => Ok(IntervalObject::full_line()),
                ExtendedRational::NegInf => Err(bad()),
            };
        }
        if let Some(rest) = t.strip_prefix("I_") {
            let body = strip_braces(rest);
            let (closed, v) = if let Some(v) = body.strip_prefix('(') {
                (false, v)
            } else if let Some(v) = body.strip_prefix('[') {
                (true, v)
            } else {
                (true, body)
            };
            let v: ExtendedRational = v.parse().map_err(|_| bad())?;
            return IntervalObject::from_ends(v, closed, ExtendedRational::PosInf, false);
        }
        let t = match t.strip_prefix("M_") {
            Some(rest) => {
                let body = strip_braces(rest);
                if body.starts_with('(') || body.starts_with('[') || body.starts_with('{') {
                    body
                } else {
                    let x = parse_rational(body).map_err(|_| bad())?;
                    return Ok(IntervalObject::singleton(x));
                }
            }
            None => &t,
        };
        if let Some(inner) = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            let x = parse_rational(inner).map_err(|_| bad())?;
            return Ok(IntervalObject::singleton(x));
        }
        let mut chars = t.chars();
        let lb = chars.next().ok_or_else(bad)?;
        let rb = t.chars().last().ok_or_else(bad)?;
        if t.len() < 2 {
            return Err(bad());
        }
        let inner = &t[1..t.len() - 1];
        let (a, b) = inner.split_once(',').ok_or_else(bad)?;
        let a_closed = match lb {
            '[' => true,
            '(' => false,
            _ => return Err(bad()),
        };
        let b_closed = match rb {
            ']' => true,
            ')' => false,
            _ => return Err(bad()),
        };
        let a: ExtendedRational = a.parse().map_err(|_| bad())?;
        let b: ExtendedRational = b.parse().map_err(|_| bad())?;
        IntervalObject::from_ends(a, a_closed, b, b_closed)
    }
}

fn strip_braces(s: &str) -> &str {
    s.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(s)
}

/// Result of locating a rational against the ladder.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Rung {
    Index(i64),
    Outside,
}

/// The ladder `a_i = lower + (upper - lower) * 2^i / (2^i + 1)`, strictly
/// increasing with limits `lower` and `upper`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Ladder {
    #[serde(with = "rational_string")]
    pub lower: Rational,
    #[serde(with = "rational_string")]
    pub upper: Rational,
}

impl Default for Ladder {
    fn default() -> Self {
        Ladder { lower: int(0), upper: int(1) }
    }
}

fn pow2(k: u64) -> BigInt {
    BigInt::one() << k
}

/// 2^i / (2^i + 1) for any integer i.
fn unit_ladder(i: i64) -> Rational {
    if i >= 0 {
        let p = pow2(i as u64);
        BigRational::new(p.clone(), p + 1)
    } else {
        let p = pow2(i.unsigned_abs());
        BigRational::new(BigInt::one(), p + 1)
    }
}

/// Floor of log2 of a positive rational.
pub fn floor_log2(r: &Rational) -> i64 {
    debug_assert!(r.is_positive());
    let mut k = r.numer().bits() as i64 - r.denom().bits() as i64;
    loop {
        let p = pow2_rational(k);
        if &p > r {
            k -= 1;
            continue;
        }
        if &(p * int(2)) <= r {
            k += 1;
            continue;
        }
        return k;
    }
}

pub fn pow2_rational(k: i64) -> Rational {
    if k >= 0 {
        BigRational::from_integer(pow2(k as u64))
    } else {
        BigRational::new(BigInt::one(), pow2(k.unsigned_abs()))
    }
}

impl Ladder {
    pub fn new(lower: Rational, upper: Rational) -> Result<Self, LineError> {
        if lower < upper {
            Ok(Ladder { lower, upper })
        } else {
            Err(LineError::BadLadder)
        }
    }

    pub fn width(&self) -> Rational {
        &self.upper - &self.lower
    }

    pub fn value(&self, i: i64) -> Rational {
        &self.lower + self.width() * unit_ladder(i)
    }

    pub fn lower_limit(&self) -> &Rational {
        &self.lower
    }

    pub fn upper_limit(&self) -> &Rational {
        &self.upper
    }

    pub fn dyadic_point(&self, i: i64, j: i64, l: u32) -> Result<Rational, LineError> {
        if l > 62 || j < 0 || j > (1i64 << l) {
            return Err(LineError::DyadicRange { j, l });
        }
        let a = self.value(i);
        let b = self.value(i + 1);
        let frac = BigRational::new(BigInt::from(j), pow2(l as u64));
        Ok(&a + frac * (b - &a))
    }

    /// The `i` with `a_i <= q < a_{i+1}`, or `Outside` when `q` is not
    /// strictly between the limits.
    pub fn locate(&self, q: &Rational) -> Rung {
        if q <= &self.lower || q >= &self.upper {
            return Rung::Outside;
        }
        let s = (q - &self.lower) / self.width();
        // a_i <= q  <=>  2^i <= s / (1 - s)
        let r = &s / (int(1) - &s);
        Rung::Index(floor_log2(&r))
    }

    /// Smallest index whose value is `> q` (or `>= q` when `inclusive`).
    pub fn first_index_above(&self, q: &ExtendedRational, inclusive: bool) -> IndexBound {
        match q {
            ExtendedRational::NegInf => IndexBound::Unbounded,
            ExtendedRational::PosInf => IndexBound::Empty,
            ExtendedRational::Finite(q) => {
                if q <= &self.lower {
                    return IndexBound::Unbounded;
                }
                if q >= &self.upper {
                    return IndexBound::Empty;
                }
                let Rung::Index(p) = self.locate(q) else { unreachable!() };
                if inclusive && self.value(p) == *q {
                    IndexBound::At(p)
                } else {
                    IndexBound::At(p + 1)
                }
            }
        }
    }

    /// Largest index whose value is `< q` (or `<= q` when `inclusive`).
    pub fn last_index_below(&self, q: &ExtendedRational, inclusive: bool) -> IndexBound {
        match q {
            ExtendedRational::NegInf => IndexBound::Empty,
            ExtendedRational::PosInf => IndexBound::Unbounded,
            ExtendedRational::Finite(q) => {
                if q <= &self.lower {
                    return IndexBound::Empty;
                }
                if q >= &self.upper {
                    return IndexBound::Unbounded;
                }
                let Rung::Index(p) = self.locate(q) else { unreachable!() };
                if !inclusive && self.value(p) == *q {
                    IndexBound::At(p - 1)
                } else {
                    IndexBound::At(p)
                }
            }
        }
    }

    /// Ladder index of `q` if `q` is exactly a ladder value.
    pub fn index_of(&self, q: &Rational) -> Option<i64> {
        match self.locate(q) {
            Rung::Index(i) if self.value(i) == *q => Some(i),
            _ => None,
        }
    }
}

/// One end of an integer index range.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IndexBound {
    Unbounded,
    At(i64),
    Empty,
}

/// Up to `limit` integers in `[lo, hi]`, walking from a finite end.
pub fn take_indices(lo: IndexBound, hi: IndexBound, limit: usize) -> Vec<i64> {
    use IndexBound::*;
    match (lo, hi) {
        (Empty, _) | (_, Empty) => vec![],
        (At(a), At(b)) => (a..=b).take(limit).collect(),
        (At(a), Unbounded) => (a..).take(limit).collect(),
        (Unbounded, At(b)) => (0..limit as i64).map(|k| b - k).collect(),
        (Unbounded, Unbounded) => {
            let mut v = vec![];
            let mut k = 0i64;
            while v.len() < limit {
                v.push(k);
                if v.len() < limit && k != 0 {
                    v.push(-k);
                }
                k += 1;
            }
            v
        }
    }
}

pub fn clamp_upper(b: IndexBound, cap: i64) -> IndexBound {
    match b {
        IndexBound::Unbounded => IndexBound::At(cap),
        IndexBound::At(x) => IndexBound::At(x.min(cap)),
        IndexBound::Empty => IndexBound::Empty,
    }
}

pub fn clamp_lower(b: IndexBound, cap: i64) -> IndexBound {
    match b {
        IndexBound::Unbounded => IndexBound::At(cap),
        IndexBound::At(x) => IndexBound::At(x.max(cap)),
        IndexBound::Empty => IndexBound::Empty,
    }
}

/// Whether the denominator of `q` is a power of two.
pub fn is_dyadic(q: &Rational) -> bool {
    let d = q.denom();
    d.is_positive() && (d & (d - BigInt::one())).is_zero()
}

/// Exponent of the (power-of-two) denominator of a dyadic rational.
pub fn dyadic_level(q: &Rational) -> Option<u64> {
    if is_dyadic(q) {
        Some(q.denom().bits() - 1)
    } else {
        None
    }
}

pub fn floor_rational(q: &Rational) -> BigInt {
    q.numer().div_floor(q.denom())
}

pub fn ceil_rational(q: &Rational) -> BigInt {
    -((-q.numer()).div_floor(q.denom()))
}
