//! Triangulations of the (n+3)-gon, diagonal flips, the flip graph, and the
//! embedding of polygon clusters as E-clusters on the ladder.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cluster_sets::{build_t_n, ClusterDescription, Family};
use crate::ordered_line::{IntervalObject, Ladder};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolygonError {
    #[error("{0} is not a diagonal of the {1}-gon")]
    InvalidDiagonal(Diagonal, i64),
    #[error("cannot parse diagonal {0:?}; expected i-j")]
    BadDiagonal(String),
    #[error("diagonals {0} and {1} cross")]
    Crossing(Diagonal, Diagonal),
    #[error("a triangulation of the {gon}-gon has {want} diagonals, got {got}")]
    WrongSize { gon: i64, want: usize, got: usize },
    #[error("{0} is not in the triangulation")]
    NotInTriangulation(Diagonal),
    #[error("n must be at least 1, got {0}")]
    BadRank(i64),
}

/// The diagonal `i-j` with `i < j`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(from = "(i64, i64)", into = "(i64, i64)")]
pub struct Diagonal {
    pub i: i64,
    pub j: i64,
}

impl From<(i64, i64)> for Diagonal {
    fn from((a, b): (i64, i64)) -> Self {
        Diagonal { i: a.min(b), j: a.max(b) }
    }
}

impl From<Diagonal> for (i64, i64) {
    fn from(d: Diagonal) -> Self {
        (d.i, d.j)
    }
}

impl fmt::Display for Diagonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.i, self.j)
    }
}

impl FromStr for Diagonal {
    type Err = PolygonError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || PolygonError::BadDiagonal(s.to_string());
        let (a, b) = s.trim().split_once('-').ok_or_else(bad)?;
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        Ok(Diagonal::from((a, b)))
    }
}

impl Diagonal {
    pub fn new(n: i64, i: i64, j: i64) -> Result<Self, PolygonError> {
        let d = Diagonal::from((i, j));
        d.check(n)?;
        Ok(d)
    }

    fn check(&self, n: i64) -> Result<(), PolygonError> {
        let gon = n + 3;
        let ok = self.i >= 1 && self.j <= gon && self.j - self.i >= 2 && !(self.i == 1 && self.j == gon);
        if ok {
            Ok(())
        } else {
            Err(PolygonError::InvalidDiagonal(*self, gon))
        }
    }
}

pub fn diagonals_cross(d1: &Diagonal, d2: &Diagonal) -> bool {
    (d1.i < d2.i && d2.i < d1.j && d1.j < d2.j) || (d2.i < d1.i && d1.i < d2.j && d2.j < d1.j)
}

/// Every diagonal of the (n+3)-gon.
pub fn all_diagonals(n: i64) -> Vec<Diagonal> {
    let gon = n + 3;
    let mut out = vec![];
    for i in 1..=gon {
        for j in i + 2..=gon {
            if !(i == 1 && j == gon) {
                out.push(Diagonal { i, j });
            }
        }
    }
    out
}

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Triangulation {
    pub n: i64,
    pub diagonals: BTreeSet<Diagonal>,
}

impl Triangulation {
    pub fn new(n: i64, diagonals: impl IntoIterator<Item = Diagonal>) -> Result<Self, PolygonError> {
        if n < 1 {
            return Err(PolygonError::BadRank(n));
        }
        let diagonals: BTreeSet<Diagonal> = diagonals.into_iter().collect();
        for d in &diagonals {
            d.check(n)?;
        }
        let v: Vec<&Diagonal> = diagonals.iter().collect();
        for (k, a) in v.iter().enumerate() {
            for b in &v[k + 1..] {
                if diagonals_cross(a, b) {
                    return Err(PolygonError::Crossing(**a, **b));
                }
            }
        }
        if diagonals.len() != n as usize {
            return Err(PolygonError::WrongSize { gon: n + 3, want: n as usize, got: diagonals.len() });
        }
        Ok(Triangulation { n, diagonals })
    }

    /// The fan at vertex 1: `1-3, 1-4, ..., 1-(n+2)`.
    pub fn fan(n: i64) -> Result<Self, PolygonError> {
        Triangulation::new(n, (3..=n + 2).map(|j| Diagonal { i: 1, j }))
    }

    pub fn parse(n: i64, text: &str) -> Result<Self, PolygonError> {
        let ds = text
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(str::parse)
            .collect::<Result<Vec<Diagonal>, _>>()?;
        Triangulation::new(n, ds)
    }

    pub fn contains(&self, d: &Diagonal) -> bool {
        self.diagonals.contains(d)
    }

    fn compatible_with_rest(&self, removed: &Diagonal, d: &Diagonal) -> bool {
        self.diagonals.iter().filter(|e| *e != removed).all(|e| e != d && !diagonals_cross(e, d))
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.diagonals.iter().map(Diagonal::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Replaces `d` by the unique other diagonal completing `t \ {d}`.
pub fn flip(t: &Triangulation, d: &Diagonal) -> Result<(Triangulation, Diagonal), PolygonError> {
    if !t.contains(d) {
        return Err(PolygonError::NotInTriangulation(*d));
    }
    let replacement = all_diagonals(t.n)
        .into_iter()
        .find(|e| e != d && t.compatible_with_rest(d, e))
        .expect("every diagonal of a triangulation flips");
    let mut diagonals = t.diagonals.clone();
    diagonals.remove(d);
    diagonals.insert(replacement);
    Ok((Triangulation { n: t.n, diagonals }, replacement))
}

fn triangulate(lo: i64, hi: i64) -> Vec<Vec<Diagonal>> {
    if hi - lo < 2 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for k in lo + 1..hi {
        let left = triangulate(lo, k);
        let right = triangulate(k, hi);
        for l in &left {
            for r in &right {
                let mut v = l.clone();
                v.extend(r.iter().copied());
                if k - lo >= 2 {
                    v.push(Diagonal { i: lo, j: k });
                }
                if hi - k >= 2 {
                    v.push(Diagonal { i: k, j: hi });
                }
                out.push(v);
            }
        }
    }
    out
}

/// All triangulations of the (n+3)-gon.
pub fn enumerate_triangulations(n: i64) -> Vec<Triangulation> {
    triangulate(1, n + 3)
        .into_iter()
        .map(|ds| Triangulation { n, diagonals: ds.into_iter().collect() })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlipGraph {
    pub nodes: Vec<Triangulation>,
    pub edges: Vec<(usize, usize)>,
}

impl FlipGraph {
    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut adj = vec![vec![]; self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; self.nodes.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.nodes.len()];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }
}

pub fn flip_graph(n: i64) -> FlipGraph {
    let nodes = enumerate_triangulations(n);
    let index: HashMap<&Triangulation, usize> = nodes.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let mut edges = vec![];
    for (a, t) in nodes.iter().enumerate() {
        for d in &t.diagonals {
            let (u, _) = flip(t, d).expect("diagonal belongs to t");
            let b = index[&u];
            if a < b {
                edges.push((a, b));
            }
        }
    }
    FlipGraph { nodes, edges }
}

pub fn embed_diagonal(ladder: &Ladder, d: &Diagonal) -> IntervalObject {
    IntervalObject::open(ladder.value(d.i), ladder.value(d.j))
}

pub fn embed_triangulation(ladder: &Ladder, t: &Triangulation) -> ClusterDescription {
    let mut c = build_t_n(ladder, t.n);
    c.families.push(Family::Finite { elements: t.diagonals.iter().map(|d| embed_diagonal(ladder, d)).collect() });
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordered_line::rat;

    fn d(s: &str) -> Diagonal {
        s.parse().unwrap()
    }

    #[test]
    fn crossing_examples() {
        assert!(diagonals_cross(&d("1-3"), &d("2-4")));
        assert!(!diagonals_cross(&d("1-3"), &d("1-4")));
        assert!(!diagonals_cross(&d("1-3"), &d("3-5")));
    }

    #[test]
    fn validation() {
        assert!(Diagonal::new(2, 1, 5).is_err());
        assert!(Diagonal::new(2, 2, 3).is_err());
        assert!(Diagonal::new(2, 2, 5).is_ok());
        assert!(matches!(Triangulation::parse(2, "1-3,2-4"), Err(PolygonError::Crossing(..))));
        assert!(matches!(Triangulation::parse(2, "1-3"), Err(PolygonError::WrongSize { .. })));
    }

    #[test]
    fn pentagon_flips() {
        let t = Triangulation::parse(2, "1-3,1-4").unwrap();
        assert_eq!(flip(&t, &d("1-3")).unwrap().1, d("2-4"));
        assert_eq!(flip(&t, &d("1-4")).unwrap().1, d("3-5"));
        let (u, e) = flip(&t, &d("1-3")).unwrap();
        assert_eq!(flip(&u, &e).unwrap().0, t);
    }

    #[test]
    fn embedding_examples() {
        let l = Ladder::default();
        assert_eq!(embed_diagonal(&l, &d("1-3")), IntervalObject::open(rat(2, 3), rat(8, 9)));
        assert_eq!(embed_diagonal(&l, &d("2-4")), IntervalObject::open(rat(4, 5), rat(16, 17)));
        let c = embed_triangulation(&l, &Triangulation::parse(2, "1-3,1-4").unwrap());
        assert!(c.member(&IntervalObject::open(rat(2, 3), rat(8, 9))));
        assert!(c.member(&IntervalObject::open(rat(2, 3), rat(16, 17))));
    }

    #[test]
    fn small_flip_graphs() {
        for (n, count) in [(1, 2), (2, 5), (3, 14), (4, 42)] {
            let g = flip_graph(n);
            assert_eq!(g.nodes.len(), count);
            assert!(g.is_connected());
            assert!(g.degrees().iter().all(|&k| k == n as usize));
        }
    }

    #[test]
    fn json_shape() {
        let t = Triangulation::fan(2).unwrap();
        let js = serde_json::to_string(&t).unwrap();
        assert_eq!(js, r#"{"n":2,"diagonals":[[1,3],[1,4]]}"#);
    }
}
