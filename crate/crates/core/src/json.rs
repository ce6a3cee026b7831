//! JSON forms of types, curves, reports and curve specifications.
//!
//! Rationals are written as `"p/q"` strings so nothing is lost. Objects are
//! emitted with sorted keys, which makes output byte-stable.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::enumeration::{AuditReport, CountReport, LegConvention};
use crate::error::{Error, Result};
use crate::lattice::{LatticePoint, LatticePolygon};
use crate::rational::{format_q, parse_q, QPoint, Q};
use crate::strata::PointConfiguration;
use crate::tropical::{CombinatorialType, ParamTropicalCurve};
use crate::valued::{parse_point, PointOnLine, RationalCurveSpec, Scalar, ValuedScalar};

fn lattice(p: LatticePoint) -> Value {
    json!([p.x, p.y])
}

fn qpoint(p: &QPoint) -> Value {
    json!([format_q(&p.x), format_q(&p.y)])
}

pub fn type_to_json(t: &CombinatorialType) -> Value {
    type_with_metric(t, None, None)
}

pub fn curve_to_json(c: &ParamTropicalCurve) -> Value {
    type_with_metric(&c.ty, Some(&c.lengths), Some(&c.positions))
}

fn type_with_metric(t: &CombinatorialType, lengths: Option<&[Q]>, positions: Option<&[QPoint]>) -> Value {
    let vertices: Vec<Value> =
        t.weights.iter().enumerate().map(|(i, w)| json!({ "index": i, "weight": w })).collect();
    let edges: Vec<Value> = t
        .graph
        .edges
        .iter()
        .zip(&t.edge_slopes)
        .enumerate()
        .map(|(i, (&(a, b), &s))| {
            let mut e = json!({ "index": i, "endpoints": [a, b], "slope": lattice(s) });
            if let Some(l) = lengths {
                e["length"] = json!(format_q(&l[i]));
            }
            e
        })
        .collect();
    let legs: Vec<Value> = t
        .graph
        .legs
        .iter()
        .zip(&t.leg_slopes)
        .enumerate()
        .map(|(i, (&a, &s))| json!({ "index": i, "anchor": a, "slope": lattice(s) }))
        .collect();
    let mut out = json!({ "vertices": vertices, "edges": edges, "legs": legs });
    if let Some(p) = positions {
        out["positions"] = Value::Array(p.iter().map(qpoint).collect());
    }
    out
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| Error::Parse(format!("missing field {key:?}")))
}

fn as_usize(v: &Value) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("expected an index, got {v}")))
}

fn as_lattice(v: &Value) -> Result<LatticePoint> {
    match v.as_array().map(|a| a.as_slice()) {
        Some([x, y]) => match (x.as_i64(), y.as_i64()) {
            (Some(x), Some(y)) => Ok(LatticePoint::new(x, y)),
            _ => Err(Error::Parse(format!("expected integer pair, got {v}"))),
        },
        _ => Err(Error::Parse(format!("expected integer pair, got {v}"))),
    }
}

fn as_q(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s),
        Value::Number(n) => n.as_i64().map(crate::rational::q_int).ok_or_else(|| Error::Parse(format!("bad number {n}"))),
        _ => Err(Error::Parse(format!("expected a rational, got {v}"))),
    }
}

fn as_array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{what} must be an array")))
}

/// Reads a type written by [`type_to_json`] or [`curve_to_json`].
pub fn type_from_json(v: &Value) -> Result<CombinatorialType> {
    let vertices = as_array(field(v, "vertices")?, "vertices")?;
    let weights = vertices
        .iter()
        .map(|x| {
            field(x, "weight")?
                .as_u64()
                .and_then(|w| u32::try_from(w).ok())
                .ok_or_else(|| Error::Parse("weight must be a small non-negative integer".into()))
        })
        .collect::<Result<Vec<u32>>>()?;
    let mut edges = Vec::new();
    for e in as_array(field(v, "edges")?, "edges")? {
        let ends = as_array(field(e, "endpoints")?, "endpoints")?;
        if ends.len() != 2 {
            return Err(Error::Parse("an edge has two endpoints".into()));
        }
        edges.push((as_usize(&ends[0])?, as_usize(&ends[1])?, as_lattice(field(e, "slope")?)?));
    }
    let mut legs = Vec::new();
    for l in as_array(field(v, "legs")?, "legs")? {
        legs.push((as_usize(field(l, "anchor")?)?, as_lattice(field(l, "slope")?)?));
    }
    let mut t = CombinatorialType::weightless(weights.len(), edges, legs)?;
    t.weights = weights;
    Ok(t)
}

/// Reads a curve written by [`curve_to_json`] and checks it.
pub fn curve_from_json(v: &Value) -> Result<ParamTropicalCurve> {
    let ty = type_from_json(v)?;
    let lengths = as_array(field(v, "edges")?, "edges")?
        .iter()
        .map(|e| as_q(field(e, "length")?))
        .collect::<Result<Vec<_>>>()?;
    let positions = as_array(field(v, "positions")?, "positions")?
        .iter()
        .map(|p| match p.as_array().map(|a| a.as_slice()) {
            Some([x, y]) => Ok(QPoint::new(as_q(x)?, as_q(y)?)),
            _ => Err(Error::Parse(format!("expected a point, got {p}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    ParamTropicalCurve::new(ty, lengths, positions)
}

pub fn configuration_to_json(q: &PointConfiguration) -> Value {
    json!({ "seed": q.seed, "points": q.points.iter().map(qpoint).collect::<Vec<_>>() })
}

pub fn count_report_to_json(r: &CountReport) -> Value {
    let per_type: Vec<Value> = r
        .per_type
        .iter()
        .map(|t| {
            json!({
                "id": t.id,
                "multiplicity": t.multiplicity,
                "solutions": t.solutions,
                "automorphisms": t.automorphisms,
                "components": t.components,
                "curve": curve_to_json(&t.curve),
            })
        })
        .collect();
    json!({
        "total": r.total.to_string(),
        "point_conditions": r.point_conditions,
        "leg_convention": match r.leg_convention {
            LegConvention::Unordered => "unordered",
            LegConvention::Ordered => "ordered",
        },
        "resample_attempts": r.resample_attempts,
        "configuration": configuration_to_json(&r.configuration),
        "per_type": per_type,
    })
}

pub fn audit_report_to_json(r: &AuditReport) -> Value {
    json!({
        "genus": r.genus,
        "points": r.points,
        "skeletons": r.skeletons,
        "superabundant": r.superabundant,
        "marked_types_checked": r.marked_types_checked,
        "exhaustive": r.exhaustive,
        "max_dimension": r.max_dimension,
        "max_evaluation_rank": r.max_evaluation_rank,
        "point_checks": r.point_checks,
        "violations": r.violations,
        "passed": r.passed(),
    })
}

pub fn polygon_to_json(p: &LatticePolygon) -> Value {
    json!(p.vertices().iter().map(|&v| lattice(v)).collect::<Vec<_>>())
}

/// A curve specification as read from a file: the polygon as
/// `"x,y;x,y;..."` or a list of pairs, one list of points per side (each
/// `"inf"` or an expression in `s`) and the character on `e_1`, `e_2`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecFile {
    polygon: PolygonField,
    side_points: Vec<Vec<String>>,
    #[serde(default)]
    character: Option<[String; 2]>,
    #[serde(default)]
    marks: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum PolygonField {
    Inline(String),
    Pairs(Vec<[i64; 2]>),
}

type SpecWithMarks<T> = (RationalCurveSpec<T>, Vec<PointOnLine<T>>);

fn spec_from_json<T: Scalar>(text: &str, parse: impl Fn(&str) -> Result<T>, one: T) -> Result<SpecWithMarks<T>> {
    let file: SpecFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let polygon = match file.polygon {
        PolygonField::Inline(s) => LatticePolygon::parse_inline(&s)?,
        PolygonField::Pairs(p) => {
            LatticePolygon::new(&p.iter().map(|&[x, y]| LatticePoint::new(x, y)).collect::<Vec<_>>())?
        }
    };
    let side_points = file
        .side_points
        .iter()
        .map(|side| side.iter().map(|s| parse_point(s, &parse)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let character = match file.character {
        Some([a, b]) => [parse(&a)?, parse(&b)?],
        None => [one.clone(), one],
    };
    let marks = file.marks.iter().map(|s| parse_point(s, &parse)).collect::<Result<Vec<_>>>()?;
    Ok((RationalCurveSpec::new(polygon, side_points, character)?, marks))
}

/// Parses a specification over valued scalars, with its extra marked points.
pub fn valued_spec_from_json(text: &str) -> Result<SpecWithMarks<ValuedScalar>> {
    spec_from_json(text, ValuedScalar::parse, ValuedScalar::one())
}

/// Parses a specification with rational points, e.g. for non-immersion
/// checks. Values are written `"p/q"` or as integers.
pub fn rational_spec_from_json(text: &str) -> Result<SpecWithMarks<Q>> {
    spec_from_json(text, parse_q, crate::rational::q_int(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::{count_curves, CountRequest};
    use crate::valued::tropicalize_rational;

    #[test]
    fn curves_round_trip() {
        let report = count_curves(&CountRequest::new(LatticePolygon::degree_triangle(2).unwrap(), 0)).unwrap();
        let c = &report.per_type[0].curve;
        let v = curve_to_json(c);
        assert_eq!(&curve_from_json(&v).unwrap(), c);
        let text = serde_json::to_string(&v).unwrap();
        assert!(text.contains("\"length\":\""));
        assert_eq!(type_from_json(&type_to_json(&c.ty)).unwrap(), c.ty);
    }

    #[test]
    fn report_is_byte_stable() {
        let req = CountRequest::new(LatticePolygon::degree_triangle(3).unwrap(), 0);
        let a = serde_json::to_string(&count_report_to_json(&count_curves(&req).unwrap())).unwrap();
        let b = serde_json::to_string(&count_report_to_json(&count_curves(&req).unwrap())).unwrap();
        assert_eq!(a, b);
        let v: Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["total"], "12");
        assert_eq!(v["point_conditions"], 8);
    }

    #[test]
    fn spec_files() {
        let text = r#"{"polygon": "0,0;1,0;0,1", "side_points": [["inf"], ["0"], ["s"]], "marks": ["1"]}"#;
        let (spec, marks) = valued_spec_from_json(text).unwrap();
        let curve = tropicalize_rational(&spec, &marks).unwrap();
        assert_eq!(curve.ty.num_vertices(), 2);
        let bad = r#"{"polygon": [[0,0],[1,0],[0,1]], "side_points": [["0"], ["0"], ["s"]]}"#;
        assert!(valued_spec_from_json(bad).is_err());
        assert!(valued_spec_from_json("{").is_err());
        let text = r#"{"polygon": "0,0;2,1;1,2", "side_points": [["0"], ["1"], ["inf"]]}"#;
        let (spec, _) = rational_spec_from_json(text).unwrap();
        assert_eq!(spec, crate::valued::cuspidal_triangle_spec());
    }

    #[test]
    fn malformed_curves_are_rejected() {
        assert!(type_from_json(&json!({"vertices": []})).is_err());
        let v = json!({
            "vertices": [{"index": 0, "weight": 0}, {"index": 1, "weight": 0}],
            "edges": [{"index": 0, "endpoints": [0, 1], "slope": [1, 0], "length": "2/1"}],
            "legs": [],
            "positions": [["0/1", "0/1"], ["1/1", "0/1"]],
        });
        // The edge relation fails: length 2 along (1,0) lands at x = 2.
        assert!(curve_from_json(&v).is_err());
    }
}
