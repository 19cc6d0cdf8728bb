//! Arcs of the infinity-gon, arc sets given as finite parts plus infinite
//! tails, fountain detection, and the embedding into E-clusters.

use std::collections::BTreeSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cluster_sets::{build_t_infinity, ClusterDescription, FanSide, Family};
use crate::ordered_line::{IntervalObject, Ladder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InfinityGonError {
    #[error("({0},{1}) is not an arc: endpoints must satisfy j - i >= 2")]
    InvalidArc(i64, i64),
    #[error("malformed arc set: {0}")]
    MalformedDescription(String),
    #[error("{0} belongs to an infinite tail; only finite arcs can be mutated here")]
    TailArc(Arc),
    #[error("{0} is not in the arc set")]
    NotMember(Arc),
    #[error("{0} is not mutable in this arc set")]
    NotMutable(Arc),
    #[error("{at} has several replacements ({})", candidates.join(", "))]
    AmbiguousExchange { at: Arc, candidates: Vec<String> },
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Arc {
    pub i: i64,
    pub j: i64,
}

impl Arc {
    pub fn new(i: i64, j: i64) -> Result<Self, InfinityGonError> {
        if j - i >= 2 {
            Ok(Arc { i, j })
        } else {
            Err(InfinityGonError::InvalidArc(i, j))
        }
    }
}

impl TryFrom<(i64, i64)> for Arc {
    type Error = InfinityGonError;

    fn try_from((i, j): (i64, i64)) -> Result<Self, Self::Error> {
        Arc::new(i, j)
    }
}

impl From<Arc> for (i64, i64) {
    fn from(a: Arc) -> Self {
        (a.i, a.j)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.i, self.j)
    }
}

pub fn arcs_cross(a: &Arc, b: &Arc) -> bool {
    (a.i < b.i && b.i < a.j && a.j < b.j) || (b.i < a.i && a.i < b.j && b.j < a.j)
}

/// `{i-m : i <= i0}`
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct LeftTail {
    pub m: i64,
    pub i0: i64,
}

/// `{n-j : j >= j0}`
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct RightTail {
    pub n: i64,
    pub j0: i64,
}

impl TryFrom<(i64, i64)> for LeftTail {
    type Error = InfinityGonError;

    fn try_from((m, i0): (i64, i64)) -> Result<Self, Self::Error> {
        if i0 <= m - 2 {
            Ok(LeftTail { m, i0 })
        } else {
            Err(InfinityGonError::MalformedDescription(format!("left tail at {m} must start at or below {}", m - 2)))
        }
    }
}

impl From<LeftTail> for (i64, i64) {
    fn from(t: LeftTail) -> Self {
        (t.m, t.i0)
    }
}

impl TryFrom<(i64, i64)> for RightTail {
    type Error = InfinityGonError;

    fn try_from((n, j0): (i64, i64)) -> Result<Self, Self::Error> {
        if j0 >= n + 2 {
            Ok(RightTail { n, j0 })
        } else {
            Err(InfinityGonError::MalformedDescription(format!("right tail at {n} must start at or above {}", n + 2)))
        }
    }
}

impl From<RightTail> for (i64, i64) {
    fn from(t: RightTail) -> Self {
        (t.n, t.j0)
    }
}

impl LeftTail {
    pub fn contains(&self, a: &Arc) -> bool {
        a.j == self.m && a.i <= self.i0
    }

    /// Whether some arc of the tail crosses `a`.
    pub fn crosses(&self, a: &Arc) -> bool {
        (a.i < self.m && self.m < a.j) || (a.i + 1 <= (a.j - 1).min(self.i0) && a.j < self.m)
    }
}

impl RightTail {
    pub fn contains(&self, a: &Arc) -> bool {
        a.i == self.n && a.j >= self.j0
    }

    pub fn crosses(&self, a: &Arc) -> bool {
        (a.i < self.n && self.n < a.j) || ((a.i + 1).max(self.j0) <= a.j - 1 && self.n < a.i)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FountainReport {
    LocallyFinite,
    Fountain { m: i64, n: i64 },
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ArcSetDescription {
    #[serde(default)]
    pub finite: BTreeSet<Arc>,
    #[serde(default)]
    pub left_tails: BTreeSet<LeftTail>,
    #[serde(default)]
    pub right_tails: BTreeSet<RightTail>,
}

impl ArcSetDescription {
    pub fn contains(&self, a: &Arc) -> bool {
        self.finite.contains(a)
            || self.left_tails.iter().any(|t| t.contains(a))
            || self.right_tails.iter().any(|t| t.contains(a))
    }

    /// Whether `a` crosses a described arc other than `skip`.
    pub fn crosses(&self, a: &Arc, skip: Option<&Arc>) -> bool {
        self.finite.iter().any(|b| Some(b) != skip && arcs_cross(a, b))
            || self.left_tails.iter().any(|t| t.crosses(a))
            || self.right_tails.iter().any(|t| t.crosses(a))
    }

    /// Rejects sets with crossing arcs.
    pub fn validate(&self) -> Result<(), InfinityGonError> {
        let v: Vec<&Arc> = self.finite.iter().collect();
        for (k, a) in v.iter().enumerate() {
            for b in &v[k + 1..] {
                if arcs_cross(a, b) {
                    return Err(InfinityGonError::MalformedDescription(format!("arcs {a} and {b} cross")));
                }
            }
            if self.left_tails.iter().any(|t| t.crosses(a)) || self.right_tails.iter().any(|t| t.crosses(a)) {
                return Err(InfinityGonError::MalformedDescription(format!("arc {a} crosses a tail")));
            }
        }
        for l in &self.left_tails {
            for r in &self.right_tails {
                if r.n < l.m {
                    return Err(InfinityGonError::MalformedDescription(format!(
                        "tails at {} and {} cross",
                        l.m, r.n
                    )));
                }
            }
        }
        Ok(())
    }

    /// Described arcs with both endpoints in `[lo, hi]`.
    pub fn arcs_in(&self, lo: i64, hi: i64) -> Vec<Arc> {
        let mut out: BTreeSet<Arc> = self.finite.iter().filter(|a| a.i >= lo && a.j <= hi).copied().collect();
        for t in &self.left_tails {
            if t.m <= hi {
                out.extend((lo..=t.i0.min(t.m - 2)).map(|i| Arc { i, j: t.m }));
            }
        }
        for t in &self.right_tails {
            if t.n >= lo {
                out.extend((t.j0.max(t.n + 2)..=hi).map(|j| Arc { i: t.n, j }));
            }
        }
        out.into_iter().collect()
    }

    /// Arcs in `[lo, hi]` outside the set and crossing none of it.
    pub fn gaps_in(&self, lo: i64, hi: i64) -> Vec<Arc> {
        let mut out = vec![];
        for i in lo..=hi {
            for j in i + 2..=hi {
                let a = Arc { i, j };
                if !self.contains(&a) && !self.crosses(&a, None) {
                    out.push(a);
                }
            }
        }
        out
    }

    /// Smallest and largest vertex touched by the explicit data.
    pub fn span(&self) -> (i64, i64) {
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for a in &self.finite {
            lo = lo.min(a.i);
            hi = hi.max(a.j);
        }
        for t in &self.left_tails {
            lo = lo.min(t.i0);
            hi = hi.max(t.m);
        }
        for t in &self.right_tails {
            lo = lo.min(t.n);
            hi = hi.max(t.j0);
        }
        if lo > hi {
            (0, 0)
        } else {
            (lo, hi)
        }
    }
}

pub fn fountain_report(a: &ArcSetDescription) -> Result<FountainReport, InfinityGonError> {
    let lefts: BTreeSet<i64> = a.left_tails.iter().map(|t| t.m).collect();
    let rights: BTreeSet<i64> = a.right_tails.iter().map(|t| t.n).collect();
    if lefts.len() > 1 {
        return Err(InfinityGonError::MalformedDescription(format!("left fountains at several vertices {lefts:?}")));
    }
    if rights.len() > 1 {
        return Err(InfinityGonError::MalformedDescription(format!("right fountains at several vertices {rights:?}")));
    }
    match (lefts.first(), rights.first()) {
        (None, None) => Ok(FountainReport::LocallyFinite),
        (Some(&m), Some(&n)) if m <= n => Ok(FountainReport::Fountain { m, n }),
        (Some(m), Some(n)) => Err(InfinityGonError::MalformedDescription(format!(
            "left fountain at {m} lies right of the right fountain at {n}"
        ))),
        (Some(m), None) => Err(InfinityGonError::MalformedDescription(format!("left fountain at {m} has no right fountain"))),
        (None, Some(n)) => Err(InfinityGonError::MalformedDescription(format!("right fountain at {n} has no left fountain"))),
    }
}

/// Whether no described arc passes strictly over the vertex `l`.
pub fn no_skip_check(a: &ArcSetDescription, l: i64) -> bool {
    a.finite.iter().all(|x| x.i >= l || x.j <= l)
        && a.left_tails.iter().all(|t| t.m <= l)
        && a.right_tails.iter().all(|t| t.n >= l)
}

pub fn embed_arc(ladder: &Ladder, a: &Arc) -> IntervalObject {
    IntervalObject::open(ladder.value(a.i), ladder.value(a.j))
}

/// T_inf with the embedded arcs, before any fountain completion.
pub fn embed_arc_set_core(ladder: &Ladder, a: &ArcSetDescription) -> ClusterDescription {
    let mut c = build_t_infinity(ladder);
    c.families.push(Family::Finite { elements: a.finite.iter().map(|x| embed_arc(ladder, x)).collect() });
    for t in &a.left_tails {
        c.families.push(Family::Fan { apex: t.m, side: FanSide::Left, bound: t.i0 });
    }
    for t in &a.right_tails {
        c.families.push(Family::Fan { apex: t.n, side: FanSide::Right, bound: t.j0 });
    }
    c
}

/// The three intervals completing a fountain at `(m, n)`.
pub fn fountain_extras(ladder: &Ladder, m: i64, n: i64) -> Vec<IntervalObject> {
    let mut v = vec![
        IntervalObject::open(ladder.lower.clone(), ladder.value(m)),
        IntervalObject::open(ladder.lower.clone(), ladder.value(n)),
        IntervalObject::open(ladder.value(n), ladder.upper.clone()),
    ];
    v.dedup();
    v
}

pub fn embed_arc_set(ladder: &Ladder, a: &ArcSetDescription) -> Result<ClusterDescription, InfinityGonError> {
    let report = fountain_report(a)?;
    let mut c = embed_arc_set_core(ladder, a);
    if let FountainReport::Fountain { m, n } = report {
        c.families.push(Family::Finite { elements: fountain_extras(ladder, m, n) });
    }
    Ok(c)
}

/// Exchanges the finite arc `a` for the unique other arc completing the set.
pub fn mutate_arc(set: &ArcSetDescription, a: &Arc) -> Result<(ArcSetDescription, Arc), InfinityGonError> {
    if !set.finite.contains(a) {
        if set.contains(a) {
            return Err(InfinityGonError::TailArc(*a));
        }
        return Err(InfinityGonError::NotMember(*a));
    }
    let (lo, hi) = set.span();
    let (lo, hi) = (lo.min(a.i) - 2, hi.max(a.j) + 2);
    let mut survivors = vec![];
    for i in lo..=hi {
        for j in i + 2..=hi {
            let b = Arc { i, j };
            if arcs_cross(a, &b) && !set.contains(&b) && !set.crosses(&b, Some(a)) {
                survivors.push(b);
            }
        }
    }
    match survivors.len() {
        0 => Err(InfinityGonError::NotMutable(*a)),
        1 => {
            let b = survivors[0];
            let mut next = set.clone();
            next.finite.remove(a);
            next.finite.insert(b);
            Ok((next, b))
        }
        _ => Err(InfinityGonError::AmbiguousExchange {
            at: *a,
            candidates: survivors.iter().map(Arc::to_string).collect(),
        }),
    }
}

fn random_triangulation<R: Rng>(rng: &mut R, lo: i64, hi: i64, out: &mut BTreeSet<Arc>) {
    if hi - lo < 2 {
        return;
    }
    let k = rng.gen_range(lo + 1..hi);
    if k - lo >= 2 {
        out.insert(Arc { i: lo, j: k });
    }
    if hi - k >= 2 {
        out.insert(Arc { i: k, j: hi });
    }
    random_triangulation(rng, lo, k, out);
    random_triangulation(rng, k, hi, out);
}

/// A maximal arc set with a fountain at `(m, n)`, `-b <= m <= n <= b`.
pub fn random_fountain<R: Rng>(rng: &mut R, b: i64) -> ArcSetDescription {
    let m = rng.gen_range(-b..=b);
    let n = rng.gen_range(m..=b);
    let mut finite = BTreeSet::new();
    if n - m >= 2 {
        finite.insert(Arc { i: m, j: n });
    }
    random_triangulation(rng, m, n, &mut finite);
    ArcSetDescription {
        finite,
        left_tails: [LeftTail { m, i0: m - 2 }].into(),
        right_tails: [RightTail { n, j0: n + 2 }].into(),
    }
}

/// A finite zig-zag: starting from an ear, each step widens the current arc
/// by one vertex on a random side until it reaches `-b..b`.
pub fn random_zigzag<R: Rng>(rng: &mut R, b: i64) -> ArcSetDescription {
    let start = rng.gen_range(-b..=b - 2);
    let (mut i, mut j) = (start, start + 2);
    let mut steps: Vec<bool> = std::iter::repeat(true).take((i + b) as usize).collect();
    steps.extend(std::iter::repeat(false).take((b - j) as usize));
    steps.shuffle(rng);
    let mut finite = BTreeSet::from([Arc { i, j }]);
    for left in steps {
        if left {
            i -= 1;
        } else {
            j += 1;
        }
        finite.insert(Arc { i, j });
    }
    ArcSetDescription { finite, ..Default::default() }
}
