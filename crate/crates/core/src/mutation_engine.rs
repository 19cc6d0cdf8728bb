//! Mutation of symbolically described clusters: local candidate generation
//! from incident endpoints, filtering by witness search, and the exchange
//! triangle of the unique survivor.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cluster_sets::ClusterDescription;
use crate::compat_core::{e_compatible, exchange_for_pair};
use crate::ordered_line::{DoubledPoint, IntervalObject};

type I = IntervalObject;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MutationError {
    #[error("{0} is not a member of the cluster")]
    NotMember(String),
    #[error("{0} is not mutable: no replacement is compatible with the rest of the cluster")]
    NotMutable(String),
    #[error("{at} has several replacements ({})", candidates.join(", "))]
    AmbiguousExchange { at: String, candidates: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MutationResult {
    pub removed: I,
    pub added: I,
    pub middle: Vec<I>,
    pub new_cluster: ClusterDescription,
}

fn point_pool(t: &ClusterDescription, v: &I) -> Vec<DoubledPoint> {
    let mut pts = vec![DoubledPoint::neg_inf(), DoubledPoint::pos_inf()];
    let push = |p: &DoubledPoint, pts: &mut Vec<DoubledPoint>| {
        pts.push(p.clone());
        pts.extend(p.flipped());
    };
    push(&v.left, &mut pts);
    push(&v.right, &mut pts);
    for x in t.incident(v) {
        push(&x.left, &mut pts);
        push(&x.right, &mut pts);
    }
    pts.sort();
    pts.dedup();
    pts
}

/// Intervals over the incident point pool of `v` that are incompatible with `v`.
pub fn candidate_replacements(t: &ClusterDescription, v: &I) -> Vec<I> {
    let pts = point_pool(t, v);
    let mut out = vec![];
    for (a, l) in pts.iter().enumerate() {
        for r in &pts[a + 1..] {
            let w = I { left: l.clone(), right: r.clone() };
            if !e_compatible(v, &w) {
                out.push(w);
            }
        }
    }
    out
}

/// Candidates compatible with every member of the cluster other than `v`.
pub fn surviving_replacements(t: &ClusterDescription, v: &I) -> Vec<I> {
    let skip = [v.clone()];
    candidate_replacements(t, v)
        .into_iter()
        .filter(|w| t.witness_excluding(w, &skip).is_none())
        .collect()
}

pub fn mutate(t: &ClusterDescription, v: &I) -> Result<MutationResult, MutationError> {
    if !t.member(v) {
        return Err(MutationError::NotMember(v.to_string()));
    }
    let mut survivors = surviving_replacements(t, v);
    match survivors.len() {
        0 => Err(MutationError::NotMutable(v.to_string())),
        1 => {
            let w = survivors.pop().expect("one survivor");
            let ext = exchange_for_pair(v, &w).expect("candidates are incompatible with v");
            Ok(MutationResult {
                removed: v.clone(),
                new_cluster: t.exchanged(v, &w),
                added: w,
                middle: ext.middle,
            })
        }
        _ => Err(MutationError::AmbiguousExchange {
            at: v.to_string(),
            candidates: survivors.iter().map(|w| w.to_string()).collect(),
        }),
    }
}

pub fn is_mutable(t: &ClusterDescription, v: &I) -> bool {
    mutate(t, v).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cluster_sets::{build_projective_cluster, build_t_n, Family};
    use crate::ordered_line::Ladder;

    fn iv(s: &str) -> I {
        s.parse().unwrap()
    }

    #[test]
    fn open_projective_mutates_to_singleton() {
        let p = build_projective_cluster();
        let r = mutate(&p, &iv("P_1)")).unwrap();
        assert_eq!(r.added, iv("{1}"));
        assert_eq!(r.middle, vec![iv("P_1")]);
        assert!(r.new_cluster.member(&iv("{1}")));
        assert!(!r.new_cluster.member(&iv("P_1)")));
        let back = mutate(&r.new_cluster, &iv("{1}")).unwrap();
        assert_eq!(back.added, iv("P_1)"));
        assert_eq!(back.new_cluster.removed, vec![]);
        assert_eq!(back.new_cluster.added, vec![]);
    }

    #[test]
    fn closed_projectives_are_frozen() {
        let p = build_projective_cluster();
        assert_eq!(mutate(&p, &iv("P_1")), Err(MutationError::NotMutable(iv("P_1").to_string())));
        assert!(!is_mutable(&p, &I::full_line()));
        assert!(is_mutable(&p, &iv("P_1)")));
        assert!(matches!(mutate(&p, &iv("{1}")), Err(MutationError::NotMember(_))));
    }

    #[test]
    fn pentagon_flip() {
        let l = Ladder::default();
        let mut t = build_t_n(&l, 2);
        let d13 = I::open(l.value(1), l.value(3));
        let d14 = I::open(l.value(1), l.value(4));
        t.families.push(Family::Finite { elements: vec![d13.clone(), d14] });
        assert!(candidate_replacements(&t, &d13).contains(&I::open(l.value(2), l.value(4))));
        let r = mutate(&t, &d13).unwrap();
        assert_eq!(r.added, I::open(l.value(2), l.value(4)));
    }
}
