//! Operations shared by the command line and the HTTP server. Every public
//! function returns the JSON document that both front ends emit.

use std::path::Path;

use ecluster::ar_space::{self, ARPoint, QuiverSpec, StripMark};
use ecluster::cluster_sets::{
    build_projective_cluster, build_t_infinity, build_t_n, verify_window, Chart, ClusterDescription, Family,
    ValueRange,
};
use ecluster::compat_core::{e_compatible, exchange_for_pair, ext_direction, ExtDirection};
use ecluster::cpi_bridge::{self, CPiObject, ClusterOracleNR};
use ecluster::infinity_gon::{self, Arc, ArcSetDescription};
use ecluster::mutation_engine;
use ecluster::ordered_line::{parse_rational, ExtendedRational, IntervalObject, Ladder};
use ecluster::polygon_an::{self, Diagonal, Triangulation};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::WbError;

pub const SCHEMA_VERSION: u32 = 1;

/// Settings shared by every command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Config {
    pub seed: u64,
    pub budget: usize,
    pub window: ValueRange,
    pub ladder: Ladder,
}

impl Default for Config {
    fn default() -> Self {
        Config { seed: 0, budget: 2000, window: ValueRange::everything(), ladder: Ladder::default() }
    }
}

/// Adds `schemaVersion` to a serialized document.
pub fn envelope<T: Serialize>(body: &T) -> Result<Value, WbError> {
    let mut v = serde_json::to_value(body).map_err(|e| WbError::Io(e.to_string()))?;
    if let Value::Object(map) = &mut v {
        map.insert("schemaVersion".into(), json!(SCHEMA_VERSION));
    }
    Ok(v)
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, WbError> {
    let text = std::fs::read_to_string(path).map_err(|e| WbError::input(format!("{}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

/// An interval given inline (`(0,1]`, `P_2)`, ...) or as a JSON file.
pub fn parse_interval(arg: &str) -> Result<IntervalObject, WbError> {
    if arg.ends_with(".json") {
        return read_json(Path::new(arg));
    }
    Ok(arg.parse()?)
}

pub fn parse_window(arg: &str) -> Result<ValueRange, WbError> {
    let (a, b) = arg.split_once(',').ok_or_else(|| WbError::input(format!("window {arg:?} must be a,b")))?;
    let a: ExtendedRational = a.trim().parse()?;
    let b: ExtendedRational = b.trim().parse()?;
    if a >= b {
        return Err(WbError::input(format!("window {arg:?} is empty")));
    }
    Ok(ValueRange::open(a, b))
}

pub fn parse_arc(arg: &str) -> Result<Arc, WbError> {
    let t = arg.trim().trim_start_matches('(').trim_end_matches(')');
    let (i, j) = t.split_once(',').ok_or_else(|| WbError::input(format!("arc {arg:?} must be i,j")))?;
    let i: i64 = i.trim().parse().map_err(|_| WbError::input(format!("bad arc {arg:?}")))?;
    let j: i64 = j.trim().parse().map_err(|_| WbError::input(format!("bad arc {arg:?}")))?;
    Ok(Arc::new(i, j)?)
}

pub fn parse_cpi(arg: &str) -> Result<CPiObject, WbError> {
    let t = arg.trim().trim_start_matches("M(").trim_start_matches('(').trim_end_matches(')');
    let (x, y) = t.split_once(',').ok_or_else(|| WbError::input(format!("object {arg:?} must be x,y")))?;
    Ok(CPiObject::new(parse_rational(x.trim())?, parse_rational(y.trim())?)?)
}

fn arc_text(a: &Arc) -> String {
    format!("({},{})", a.i, a.j)
}

fn strings(v: &[IntervalObject]) -> Vec<String> {
    v.iter().map(IntervalObject::to_string).collect()
}

pub fn compat(a: &IntervalObject, b: &IntervalObject) -> Result<Value, WbError> {
    let direction = match ext_direction(a, b) {
        ExtDirection::None => "NONE",
        ExtDirection::VSub => "A_SUB",
        ExtDirection::WSub => "B_SUB",
    };
    let middle = exchange_for_pair(a, b).map(|w| strings(&w.middle)).unwrap_or_default();
    envelope(&json!({ "compatible": e_compatible(a, b), "extDirection": direction, "middle": middle }))
}

pub fn build_cluster(name: &str, n: Option<i64>, ladder: &Ladder) -> Result<ClusterDescription, WbError> {
    match name {
        "projectives" => Ok(build_projective_cluster()),
        "t-infinity" => Ok(build_t_infinity(ladder)),
        "t-n" => {
            let n = n.ok_or_else(|| WbError::input("t-n needs --n"))?;
            if n < 1 {
                return Err(WbError::input("n must be at least 1"));
            }
            Ok(build_t_n(ladder, n))
        }
        other => Err(WbError::input(format!("unknown cluster {other:?}; expected projectives, t-infinity or t-n"))),
    }
}

pub fn verify(c: &ClusterDescription, cfg: &Config) -> Result<Value, WbError> {
    let report = verify_window(c, &cfg.window, cfg.budget, cfg.seed);
    let mut v = envelope(&report)?;
    v["passed"] = json!(report.passed());
    v["failures"] = json!(strings(&report.failures));
    Ok(v)
}

pub fn member(c: &ClusterDescription, at: &IntervalObject) -> Result<Value, WbError> {
    envelope(&json!({ "at": at.to_string(), "member": c.member(at) }))
}

pub fn witness(c: &ClusterDescription, at: &IntervalObject) -> Result<Value, WbError> {
    let w = c.incompatible_witness(at);
    envelope(&json!({ "at": at.to_string(), "member": c.member(at), "witness": w.map(|w| w.to_string()) }))
}

/// The object a session explores.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Explorable {
    Polygon { triangulation: Triangulation },
    Cluster { cluster: ClusterDescription },
    Infgon { arcs: ArcSetDescription },
}

/// What a single mutation changed, in the object's own terms and as
/// intervals on the line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MutationView {
    pub removed: String,
    pub added: String,
    pub embedded_removed: String,
    pub embedded_added: String,
    /// Middle terms of the exchange triangle.
    pub middle: Vec<String>,
    /// AR-space points of removed, middle terms and added, in that order.
    pub rectangle: Vec<ARPoint>,
}

fn exchange_view(
    removed: String,
    added: String,
    v: &IntervalObject,
    w: &IntervalObject,
    chart: Chart,
) -> MutationView {
    let middle = exchange_for_pair(v, w).map(|x| x.middle).unwrap_or_default();
    let mut rectangle = vec![ar_space::gamma_b_in_chart(v, chart, 0)];
    rectangle.extend(middle.iter().map(|m| ar_space::gamma_b_in_chart(m, chart, 0)));
    rectangle.push(ar_space::gamma_b_in_chart(w, chart, 0));
    MutationView {
        removed,
        added,
        embedded_removed: v.to_string(),
        embedded_added: w.to_string(),
        middle: strings(&middle),
        rectangle,
    }
}

impl Explorable {
    /// Mutates at the element named by `at`.
    pub fn mutate(&self, at: &str, ladder: &Ladder) -> Result<(Explorable, MutationView), WbError> {
        match self {
            Explorable::Polygon { triangulation } => {
                let d: Diagonal = at.parse()?;
                let (t, e) = polygon_an::flip(triangulation, &d)?;
                let v = polygon_an::embed_diagonal(ladder, &d);
                let w = polygon_an::embed_diagonal(ladder, &e);
                let view = exchange_view(d.to_string(), e.to_string(), &v, &w, Chart::Real);
                Ok((Explorable::Polygon { triangulation: t }, view))
            }
            Explorable::Cluster { cluster } => {
                let v = parse_interval(at)?;
                let r = mutation_engine::mutate(cluster, &v)?;
                let view = MutationView {
                    removed: r.removed.to_string(),
                    added: r.added.to_string(),
                    ..exchange_view(String::new(), String::new(), &r.removed, &r.added, cluster.chart)
                };
                Ok((Explorable::Cluster { cluster: r.new_cluster }, view))
            }
            Explorable::Infgon { arcs } => {
                let a = parse_arc(at)?;
                let (next, b) = infinity_gon::mutate_arc(arcs, &a)?;
                let v = infinity_gon::embed_arc(ladder, &a);
                let w = infinity_gon::embed_arc(ladder, &b);
                let view = exchange_view(arc_text(&a), arc_text(&b), &v, &w, Chart::Real);
                Ok((Explorable::Infgon { arcs: next }, view))
            }
        }
    }

    /// The E-cluster this object stands for.
    pub fn embedding(&self, ladder: &Ladder) -> Result<ClusterDescription, WbError> {
        match self {
            Explorable::Polygon { triangulation } => Ok(polygon_an::embed_triangulation(ladder, triangulation)),
            Explorable::Cluster { cluster } => Ok(cluster.clone()),
            Explorable::Infgon { arcs } => Ok(infinity_gon::embed_arc_set(ladder, arcs)?),
        }
    }
}

/// The mutation document: the change plus the new object.
pub fn mutation_document(next: &Explorable, view: &MutationView) -> Result<Value, WbError> {
    let mut v = envelope(view)?;
    v["current"] = serde_json::to_value(next)?;
    Ok(v)
}

pub fn mutate_cluster(c: &ClusterDescription, at: &str, ladder: &Ladder) -> Result<Value, WbError> {
    let (next, view) = Explorable::Cluster { cluster: c.clone() }.mutate(at, ladder)?;
    mutation_document(&next, &view)
}

pub fn polygon_enumerate(n: i64) -> Result<Value, WbError> {
    if n < 1 {
        return Err(WbError::input("n must be at least 1"));
    }
    let g = polygon_an::flip_graph(n);
    let list: Vec<String> = g.nodes.iter().map(Triangulation::to_string).collect();
    envelope(&json!({
        "n": n,
        "count": g.nodes.len(),
        "flipEdges": g.edges.len(),
        "connected": g.is_connected(),
        "triangulations": list,
    }))
}

pub fn polygon_state(t: &Triangulation) -> Result<Value, WbError> {
    envelope(&json!({ "n": t.n, "triangulation": t.to_string(), "diagonals": t.diagonals }))
}

pub fn infgon_report(a: &ArcSetDescription, ladder: &Ladder) -> Result<Value, WbError> {
    a.validate()?;
    let report = infinity_gon::fountain_report(a)?;
    let extras = match report {
        infinity_gon::FountainReport::Fountain { m, n } => strings(&infinity_gon::fountain_extras(ladder, m, n)),
        infinity_gon::FountainReport::LocallyFinite => vec![],
    };
    envelope(&json!({ "report": report, "extras": extras }))
}

pub fn cpi_compat(u: &CPiObject, v: &CPiObject) -> Result<Value, WbError> {
    let (fu, fv) = (cpi_bridge::f_map_symbolic(u), cpi_bridge::f_map_symbolic(v));
    envelope(&json!({
        "nrIncompatible": cpi_bridge::nr_incompatible(u, v),
        "nrIncompatibleDirect": cpi_bridge::nr_incompatible_direct(u, v),
        "imageIncompatible": !e_compatible(&fu, &fv),
        "images": [fu.to_string(), fv.to_string()],
    }))
}

pub fn cpi_fmap(u: &CPiObject) -> Result<Value, WbError> {
    let (a, b) = cpi_bridge::f_map(u);
    let finite = |x: f64| if x.is_finite() { json!(x) } else { json!(if x > 0.0 { "+inf" } else { "-inf" }) };
    envelope(&json!({ "a": finite(a), "b": finite(b), "angleChart": cpi_bridge::f_map_symbolic(u).to_string() }))
}

pub fn cpi_mutate(o: &ClusterOracleNR, u: &CPiObject) -> Result<Value, WbError> {
    let (next, v) = cpi_bridge::nr_mutate(o, u)?;
    envelope(&json!({ "removed": u, "added": v, "oracle": next }))
}

pub fn arspace_gamma(v: &IntervalObject, shift: i64, chart: Chart) -> Result<Value, WbError> {
    let p = ar_space::gamma_b_in_chart(v, chart, shift);
    let g = ar_space::g_coordinate_map(&p).ok();
    envelope(&json!({ "interval": v.to_string(), "shift": shift, "point": p, "degenerate": p.is_degenerate(), "g": g }))
}

pub fn arspace_classify(q: &QuiverSpec) -> Result<Value, WbError> {
    q.validate().map_err(WbError::input)?;
    envelope(&json!({ "class": ar_space::classify_derived(q) }))
}

/// Explicitly listed elements of a description, for drawing.
pub fn listed_elements(c: &ClusterDescription) -> Vec<IntervalObject> {
    let mut out: Vec<IntervalObject> = c
        .families
        .iter()
        .filter_map(|f| match f {
            Family::Finite { elements } => Some(elements.clone()),
            _ => None,
        })
        .flatten()
        .filter(|m| !c.removed.contains(m))
        .collect();
    out.extend(c.added.iter().cloned());
    out.sort();
    out.dedup();
    out
}

pub fn strip_svg(c: &ClusterDescription, last: Option<&MutationView>) -> String {
    let mut marks: Vec<StripMark> = listed_elements(c)
        .iter()
        .map(|m| StripMark { label: m.to_string(), point: ar_space::gamma_b_in_chart(m, c.chart, 0), highlight: false })
        .collect();
    if let Some(view) = last {
        let mut labels = vec![view.embedded_removed.clone()];
        labels.extend(view.middle.iter().cloned());
        labels.push(view.embedded_added.clone());
        for (label, point) in labels.into_iter().zip(&view.rectangle) {
            marks.push(StripMark { label, point: *point, highlight: true });
        }
    }
    ar_space::strip_svg(&marks, -std::f64::consts::FRAC_PI_2, 1.5 * std::f64::consts::PI)
}
