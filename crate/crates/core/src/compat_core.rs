//! Ext detection between interval objects, E-compatibility by Euler pairing
//! of g-vectors and by endpoint geometry, and exchange middles.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordered_line::{DoubledPoint, ExtendedRational, IntervalObject};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompatError {
    #[error("{0} and {1} are compatible, so there is no extension between them")]
    NotAnExtension(String, String),
}

/// `[P_top] - [P_bottom]`, where `P_p` is the projective supported below the cut `p`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct GVector {
    pub top: DoubledPoint,
    pub bottom: DoubledPoint,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ExtDirection {
    None,
    VSub,
    WSub,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExtWitness {
    pub sub: IntervalObject,
    pub quotient: IntervalObject,
    pub middle: Vec<IntervalObject>,
}

pub fn g_vector(v: &IntervalObject) -> GVector {
    GVector { top: v.right.clone(), bottom: v.left.clone() }
}

/// Whether `Hom(P_p, P_q)` is nonzero in the sense of the inclusion `P_q ⊆ P_p`.
pub fn hom_proj_nonzero(p: &DoubledPoint, q: &DoubledPoint) -> bool {
    q <= p
}

/// `dim Hom(P_p, P_q)` as a map out of `P_p`: nonzero iff `P_p` embeds in `P_q`.
fn hom_dim(p: &DoubledPoint, q: &DoubledPoint) -> i64 {
    i64::from(hom_proj_nonzero(q, p))
}

/// Bilinear extension of `dim Hom` between projective classes.
pub fn euler_pairing(g: &GVector, h: &GVector) -> i64 {
    hom_dim(&g.top, &h.top) - hom_dim(&g.top, &h.bottom) - hom_dim(&g.bottom, &h.top)
        + hom_dim(&g.bottom, &h.bottom)
}

pub fn e_compatible_euler(v: &IntervalObject, w: &IntervalObject) -> bool {
    let gv = g_vector(v);
    let gw = g_vector(w);
    euler_pairing(&gv, &gw) >= 0 && euler_pairing(&gw, &gv) >= 0
}

/// `a` starts strictly first and `b` starts inside `a` (closed at `a.right`)
/// while ending strictly after it.
fn overlaps_forward(a: &IntervalObject, b: &IntervalObject) -> bool {
    a.left < b.left && b.left <= a.right && a.right < b.right
}

pub fn e_compatible_geometric(v: &IntervalObject, w: &IntervalObject) -> bool {
    !(overlaps_forward(v, w) || overlaps_forward(w, v))
}

pub fn e_compatible(v: &IntervalObject, w: &IntervalObject) -> bool {
    e_compatible_geometric(v, w)
}

pub fn ext_direction(v: &IntervalObject, w: &IntervalObject) -> ExtDirection {
    if overlaps_forward(v, w) {
        ExtDirection::VSub
    } else if overlaps_forward(w, v) {
        ExtDirection::WSub
    } else {
        ExtDirection::None
    }
}

pub fn exchange_middle(sub: &IntervalObject, quot: &IntervalObject) -> Result<ExtWitness, CompatError> {
    if !overlaps_forward(sub, quot) {
        return Err(CompatError::NotAnExtension(sub.to_string(), quot.to_string()));
    }
    let outer = IntervalObject { left: sub.left.clone(), right: quot.right.clone() };
    let mut middle = vec![outer];
    if quot.left < sub.right {
        middle.push(IntervalObject { left: quot.left.clone(), right: sub.right.clone() });
    }
    Ok(ExtWitness { sub: sub.clone(), quotient: quot.clone(), middle })
}

/// The exchange triangle for an incompatible pair, in whichever direction it exists.
pub fn exchange_for_pair(v: &IntervalObject, w: &IntervalObject) -> Result<ExtWitness, CompatError> {
    match ext_direction(v, w) {
        ExtDirection::VSub => exchange_middle(v, w),
        ExtDirection::WSub => exchange_middle(w, v),
        ExtDirection::None => Err(CompatError::NotAnExtension(v.to_string(), w.to_string())),
    }
}

pub fn is_degenerate(v: &IntervalObject) -> bool {
    v.is_singleton()
        || (v.left.value == ExtendedRational::NegInf && v.right.value == ExtendedRational::PosInf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordered_line::{int, IntervalObject as I};

    fn iv(s: &str) -> I {
        s.parse().unwrap()
    }

    #[test]
    fn g_vectors() {
        let g = g_vector(&iv("(0,2)"));
        assert_eq!(g.top, DoubledPoint::minus(int(2)));
        assert_eq!(g.bottom, DoubledPoint::plus(int(0)));
        let g = g_vector(&iv("P_3"));
        assert_eq!(g.top, DoubledPoint::plus(int(3)));
        assert_eq!(g.bottom, DoubledPoint::neg_inf());
        let g = g_vector(&iv("{1}"));
        assert_eq!(g.top, DoubledPoint::plus(int(1)));
        assert_eq!(g.bottom, DoubledPoint::minus(int(1)));
    }

    #[test]
    fn projective_homs() {
        assert!(hom_proj_nonzero(&DoubledPoint::minus(int(2)), &DoubledPoint::plus(int(1))));
        assert!(!hom_proj_nonzero(&DoubledPoint::minus(int(1)), &DoubledPoint::plus(int(1))));
        let p = DoubledPoint::plus(int(4));
        assert!(hom_proj_nonzero(&p, &p));
    }

    #[test]
    fn pairing_examples() {
        let g = g_vector(&iv("(0,2)"));
        let h = g_vector(&iv("(1,3)"));
        assert_eq!(euler_pairing(&h, &g), -1);
        assert_eq!(euler_pairing(&g, &g), 1);
        let k = g_vector(&iv("(2,4)"));
        assert_eq!(euler_pairing(&g, &k), 0);
        assert_eq!(euler_pairing(&k, &g), 0);
    }

    #[test]
    fn compatibility_examples() {
        assert!(!e_compatible_euler(&iv("(0,2)"), &iv("(1,3)")));
        assert!(e_compatible_euler(&iv("(0,2)"), &iv("(0,2)")));
        assert!(e_compatible_euler(&iv("P_1"), &iv("P_5")));
        assert!(e_compatible_euler(&iv("P_1)"), &iv("P_1")));
        assert!(!e_compatible_geometric(&iv("(0,2]"), &iv("(2,4)")));
        assert!(e_compatible_geometric(&iv("{1}"), &iv("(0,2)")));
        assert!(!e_compatible_geometric(&iv("{1}"), &iv("(0,1)")));
        assert!(e_compatible_geometric(&iv("(0,1)"), &iv("(1,2)")));
    }

    #[test]
    fn directions_and_middles() {
        assert_eq!(ext_direction(&iv("(0,2)"), &iv("(1,3)")), ExtDirection::VSub);
        assert_eq!(ext_direction(&iv("(0,2]"), &iv("(2,4)")), ExtDirection::VSub);
        assert_eq!(ext_direction(&iv("{1}"), &iv("(0,2)")), ExtDirection::None);
        assert_eq!(ext_direction(&iv("(1,3)"), &iv("(0,2)")), ExtDirection::WSub);
        let w = exchange_middle(&iv("(0,2)"), &iv("(1,3)")).unwrap();
        assert_eq!(w.middle, vec![iv("(0,3)"), iv("(1,2)")]);
        let w = exchange_middle(&iv("(0,2]"), &iv("(2,4)")).unwrap();
        assert_eq!(w.middle, vec![iv("(0,4)")]);
        let w = exchange_middle(&iv("P_1)"), &iv("{1}")).unwrap();
        assert_eq!(w.middle, vec![iv("P_1")]);
        assert!(exchange_middle(&iv("{1}"), &iv("(0,2)")).is_err());
    }

    #[test]
    fn degeneracy() {
        assert!(is_degenerate(&iv("{3}")));
        assert!(is_degenerate(&iv("(-inf,+inf)")));
        assert!(!is_degenerate(&iv("(0,2)")));
        assert!(!is_degenerate(&iv("P_2")));
    }
}
