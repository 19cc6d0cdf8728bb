//! Coordinates in the AR-space of the bounded derived category for the
//! straight orientation, the lambda functions bounding its regions, the
//! derived classification of continuous type A quivers, and an SVG view of
//! the strip.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cluster_sets::Chart;
use crate::cpi_bridge::CPiObject;
use crate::ordered_line::{rational_string, ExtendedRational, IntervalObject, Rational};

/// Distance from the boundary of the strip below which a point counts as degenerate.
pub const DEGENERACY_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ArSpaceError {
    #[error("point with beta = {beta} lies on the boundary of the strip and has no G-coordinates")]
    DegenerateObject { beta: f64 },
    #[error("sinks and sources must be strictly increasing and alternate: {0}")]
    BadQuiver(String),
}

/// `lambda(2 n pi + w)` is `w - pi/2` on `[0, pi]` and `3 pi/2 - w` on `[pi, 2 pi]`.
pub fn lambda(z: f64) -> f64 {
    let w = z.rem_euclid(2.0 * PI);
    if w <= PI {
        w - FRAC_PI_2
    } else {
        -w + 3.0 * FRAC_PI_2
    }
}

/// The lambda function `x -> lambda(x - kappa)`.
pub fn lambda_shifted(kappa: f64, x: f64) -> f64 {
    lambda(x - kappa)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ARPoint {
    pub alpha: f64,
    pub beta: f64,
    pub position: u8,
}

impl ARPoint {
    /// The image under the shift functor: `(alpha + pi, -beta)`.
    pub fn shift(self) -> ARPoint {
        ARPoint { alpha: self.alpha + PI, beta: -self.beta, ..self }
    }

    pub fn unshift(self) -> ARPoint {
        ARPoint { alpha: self.alpha - PI, beta: -self.beta, ..self }
    }

    pub fn shifted(self, n: i64) -> ARPoint {
        (0..n.abs()).fold(self, |p, _| if n > 0 { p.shift() } else { p.unshift() })
    }

    pub fn is_degenerate(&self) -> bool {
        (self.beta.abs() - FRAC_PI_2).abs() <= DEGENERACY_TOLERANCE
    }
}

/// Position in the diamond of four objects sharing a point of the AR-space.
pub fn position(v: &IntervalObject) -> u8 {
    match (v.left_closed(), v.right_closed()) {
        (true, false) => 1,
        (true, true) => 2,
        (false, false) => 3,
        (false, true) => 4,
    }
}

fn endpoint_angle(v: &ExtendedRational, chart: Chart) -> f64 {
    match (v, chart) {
        (ExtendedRational::NegInf, _) => -FRAC_PI_2,
        (ExtendedRational::PosInf, _) => FRAC_PI_2,
        (ExtendedRational::Finite(_), Chart::Real) => v.to_f64().atan(),
        (ExtendedRational::Finite(_), Chart::Angle) => v.to_f64() * FRAC_PI_2,
    }
}

/// The point of `V[shift]` for an interval written in the given chart.
pub fn gamma_b_in_chart(v: &IntervalObject, chart: Chart, shift: i64) -> ARPoint {
    let ta = endpoint_angle(&v.left.value, chart);
    let tb = endpoint_angle(&v.right.value, chart);
    let p = ARPoint { alpha: tb + ta + FRAC_PI_2, beta: tb - ta - FRAC_PI_2, position: position(v) };
    p.shifted(shift)
}

/// The point of `V[shift]` for an interval with real endpoints.
pub fn gamma_b(v: &IntervalObject, shift: i64) -> ARPoint {
    gamma_b_in_chart(v, Chart::Real, shift)
}

/// Coordinates `(x, y)` of `M(x, y)` in units of pi, as floats.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CPiPoint {
    pub x: f64,
    pub y: f64,
}

/// `G(alpha, beta) = M((alpha - beta)/pi, (alpha + beta)/pi)`.
pub fn g_coordinate_map(p: &ARPoint) -> Result<CPiPoint, ArSpaceError> {
    if p.beta.abs() >= FRAC_PI_2 - DEGENERACY_TOLERANCE {
        return Err(ArSpaceError::DegenerateObject { beta: p.beta });
    }
    Ok(CPiPoint { x: (p.alpha - p.beta) / PI, y: (p.alpha + p.beta) / PI })
}

/// The AR point of a C_pi object, inverse to [`g_coordinate_map`].
pub fn cpi_point(u: &CPiObject) -> ARPoint {
    let (x, y) = (crate::ordered_line::rational_to_f64(&u.x), crate::ordered_line::rational_to_f64(&u.y));
    ARPoint { alpha: (x + y) * FRAC_PI_2, beta: (y - x) * FRAC_PI_2, position: 3 }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Turn {
    Sink,
    Source,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TurningPoint {
    #[serde(with = "rational_string")]
    pub at: Rational,
    pub kind: Turn,
}

/// Which end of the line the sinks and sources stop at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundedSide {
    Below,
    Above,
}

/// Orientation data of a continuous type A quiver: its sinks and sources.
/// Infinite sets are recorded by a finite seed and a tag for the unbounded
/// direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum QuiverSpec {
    FiniteSs {
        points: Vec<TurningPoint>,
    },
    HalfBounded {
        bounded: BoundedSide,
        seed: Vec<TurningPoint>,
    },
    UnboundedBoth {
        seed: Vec<TurningPoint>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum DerivedClass {
    ClassFinite,
    ClassHalfBounded,
    ClassUnbounded,
}

fn check_alternating(points: &[TurningPoint]) -> Result<(), ArSpaceError> {
    for w in points.windows(2) {
        if w[0].at >= w[1].at || w[0].kind == w[1].kind {
            return Err(ArSpaceError::BadQuiver(format!("{} then {}", w[0].at, w[1].at)));
        }
    }
    Ok(())
}

impl QuiverSpec {
    /// The straight orientation: no sinks or sources.
    pub fn straight() -> Self {
        QuiverSpec::FiniteSs { points: vec![] }
    }

    pub fn validate(&self) -> Result<(), ArSpaceError> {
        match self {
            QuiverSpec::FiniteSs { points } => check_alternating(points),
            QuiverSpec::HalfBounded { seed, .. } | QuiverSpec::UnboundedBoth { seed } => check_alternating(seed),
        }
    }
}

pub fn classify_derived(q: &QuiverSpec) -> DerivedClass {
    match q {
        QuiverSpec::FiniteSs { .. } => DerivedClass::ClassFinite,
        QuiverSpec::HalfBounded { .. } => DerivedClass::ClassHalfBounded,
        QuiverSpec::UnboundedBoth { .. } => DerivedClass::ClassUnbounded,
    }
}

pub fn derived_equivalent(a: &QuiverSpec, b: &QuiverSpec) -> bool {
    classify_derived(a) == classify_derived(b)
}

/// One labelled object to draw on the strip.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StripMark {
    pub label: String,
    pub point: ARPoint,
    #[serde(default)]
    pub highlight: bool,
}

/// Draws the strip `[alpha_lo, alpha_hi] x [-pi/2, pi/2]` with the given
/// marks. Highlighted marks are joined in order by a closed outline.
pub fn strip_svg(marks: &[StripMark], alpha_lo: f64, alpha_hi: f64) -> String {
    let (w, h, pad) = (800.0_f64, 240.0_f64, 30.0_f64);
    let span = (alpha_hi - alpha_lo).max(1e-9);
    let sx = |a: f64| pad + (a - alpha_lo) / span * (w - 2.0 * pad);
    let sy = |b: f64| pad + (FRAC_PI_2 - b) / PI * (h - 2.0 * pad);
    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#);
    for b in [FRAC_PI_2, -FRAC_PI_2] {
        let _ = writeln!(s, r##"<line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#888"/>"##, sx(alpha_lo), sy(b), sx(alpha_hi), sy(b));
    }
    let mut k = (alpha_lo / PI).floor() as i64;
    while (k as f64) * PI <= alpha_hi {
        let kappa = k as f64 * PI;
        let steps = 64;
        let pts: Vec<String> = (0..=steps)
            .map(|i| {
                let a = alpha_lo + span * i as f64 / steps as f64;
                format!("{:.2},{:.2}", sx(a), sy(lambda_shifted(0.0, a - kappa)))
            })
            .collect();
        if k.rem_euclid(2) == 0 {
            let _ = writeln!(s, r##"<polyline points="{}" fill="none" stroke="#bbb" stroke-dasharray="4 3"/>"##, pts.join(" "));
        }
        k += 1;
    }
    let outline: Vec<String> =
        marks.iter().filter(|m| m.highlight).map(|m| format!("{:.2},{:.2}", sx(m.point.alpha), sy(m.point.beta))).collect();
    if outline.len() >= 2 {
        let _ = writeln!(s, r##"<polygon points="{}" fill="#fdd" fill-opacity="0.5" stroke="#c33"/>"##, outline.join(" "));
    }
    for m in marks {
        let (x, y) = (sx(m.point.alpha), sy(m.point.beta));
        let fill = if m.highlight { "#c33" } else { "#000" };
        let _ = writeln!(s, r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{fill}" data-position="{}"/>"#, m.point.position);
        let _ = writeln!(s, r#"<text x="{:.2}" y="{:.2}" font-size="10">{}</text>"#, x + 4.0, y - 4.0, escape(&m.label));
    }
    s.push_str("</svg>\n");
    s
}

fn escape(t: &str) -> String {
    t.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
