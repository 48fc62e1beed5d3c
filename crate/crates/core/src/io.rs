//! JSON encodings for polytopes, fans and Fine-interior reports.
//!
//! Coordinates are integers or rationals written as `"p/q"` strings.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::fine::FineData;
use crate::lattice::{fmt_rat, parse_rat, Int, MVector, NVector, Rat};
use crate::polytope::{convex_hull, Polytope};

fn parse_coord(v: &Value) -> Result<Rat> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rat::from_integer(Int::from(i))),
            None => parse_rat(&n.to_string()),
        },
        Value::String(s) => parse_rat(s),
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

fn parse_point(v: &Value) -> Result<MVector> {
    let coords = v.as_array().ok_or_else(|| Error::Parse(format!("expected a point, got {v}")))?;
    Ok(MVector::new(coords.iter().map(parse_coord).collect::<Result<_>>()?))
}

fn parse_int(v: &Value) -> Result<Int> {
    let r = parse_coord(v)?;
    if !r.is_integer() {
        return Err(Error::Parse(format!("expected an integer, got {v}")));
    }
    Ok(r.to_integer())
}

fn rat_json(x: &Rat) -> Value {
    if x.is_integer() {
        int_json(&x.to_integer())
    } else {
        Value::String(fmt_rat(x))
    }
}

fn int_json(x: &Int) -> Value {
    i64::try_from(x).map(Value::from).unwrap_or_else(|_| Value::String(x.to_string()))
}

pub fn point_json(p: &MVector) -> Value {
    Value::Array(p.coords().iter().map(rat_json).collect())
}

pub fn ray_json(r: &NVector) -> Value {
    Value::Array(r.coords().iter().map(int_json).collect())
}

/// Reads `{"vertices": [[x,y,z], ...]}`; the polytope is the hull of the
/// listed points, which need not all be vertices.
pub fn polytope_from_json(v: &Value) -> Result<Polytope> {
    let pts = v
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"vertices\" array".into()))?;
    let pts: Vec<MVector> = pts.iter().map(parse_point).collect::<Result<_>>()?;
    let dim = pts.first().map(MVector::dim).ok_or_else(|| Error::Parse("no vertices".into()))?;
    if let Some(p) = pts.iter().find(|p| p.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
    }
    Ok(convex_hull(&pts))
}

pub fn parse_polytope(text: &str) -> Result<Polytope> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    polytope_from_json(&v)
}

pub fn polytope_to_json(p: &Polytope) -> Value {
    json!({
        "vertices": p.vertices().iter().map(point_json).collect::<Vec<_>>(),
        "facets": p.facets().iter().map(|h| json!({
            "normal": ray_json(&h.normal),
            "level": fmt_rat(&h.level),
        })).collect::<Vec<_>>(),
    })
}

pub fn fan_to_json(f: &Fan) -> Value {
    json!({
        "rays": f.rays().iter().map(ray_json).collect::<Vec<_>>(),
        "max_cones": f.max_cones(),
    })
}

pub fn fan_from_json(v: &Value) -> Result<Fan> {
    let rays = v.get("rays").and_then(Value::as_array).ok_or_else(|| Error::Parse("missing \"rays\"".into()))?;
    let rays: Vec<NVector> = rays
        .iter()
        .map(|r| {
            let c = r.as_array().ok_or_else(|| Error::Parse(format!("bad ray {r}")))?;
            Ok(NVector::new(c.iter().map(parse_int).collect::<Result<_>>()?))
        })
        .collect::<Result<_>>()?;
    let dim = rays.first().map(NVector::dim).unwrap_or(0);
    let cones = v
        .get("max_cones")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"max_cones\"".into()))?;
    let mut max_cones = Vec::new();
    for c in cones {
        let ix = c.as_array().ok_or_else(|| Error::Parse(format!("bad cone {c}")))?;
        let ix: Vec<usize> = ix
            .iter()
            .map(|i| i.as_u64().map(|i| i as usize).filter(|&i| i < rays.len()))
            .collect::<Option<_>>()
            .ok_or_else(|| Error::Parse(format!("bad ray index in {c}")))?;
        max_cones.push(ix);
    }
    Ok(Fan::new(dim, rays, max_cones))
}

/// `{"fine_interior", "support", "canonical_closure", "index_m"}`.
pub fn fine_interior_report(delta: &Polytope) -> Result<Value> {
    let fine = crate::fine::fine_interior(delta)?;
    if fine.is_empty() {
        return Ok(json!({
            "fine_interior": polytope_to_json(&fine.polytope),
            "support": Value::Null,
            "canonical_closure": Value::Null,
            "index_m": Value::Null,
        }));
    }
    let data = FineData::new(delta)?;
    Ok(json!({
        "fine_interior": polytope_to_json(&data.fine.polytope),
        "support": data.support.iter().map(ray_json).collect::<Vec<_>>(),
        "canonical_closure": polytope_to_json(&data.closure),
        "index_m": int_json(&data.index_m()),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::normal_fan;
    use crate::lattice::rat;

    #[test]
    fn rational_vertices_round_trip() {
        let p = parse_polytope(r#"{"vertices": [[0,0,0], [1,"1/3",0], [1,"2/3",0], ["1","1/2","-1/2"]]}"#).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert!(p.vertices().contains(&MVector::new(vec![rat(1, 1), rat(1, 2), rat(-1, 2)])));
        let back = polytope_from_json(&polytope_to_json(&p)).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn malformed_input() {
        assert!(matches!(parse_polytope("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_polytope(r#"{"points": []}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_polytope(r#"{"vertices": [[0,0],[1,"x"]]}"#), Err(Error::Parse(_))));
        assert!(matches!(parse_polytope(r#"{"vertices": [[0,0],[1,0,0]]}"#), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn fan_round_trip() {
        let cube = Polytope::from_vertices(&[[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 0], [1, 0, 1], [0, 1, 1], [1, 1, 1]]);
        let f = normal_fan(&cube).unwrap();
        assert_eq!(fan_from_json(&fan_to_json(&f)).unwrap(), f);
    }

    #[test]
    fn octahedron_report() {
        let o = Polytope::from_vertices(&[[1, 0, 0], [-1, 0, 0], [0, 1, 0], [0, -1, 0], [0, 0, 1], [0, 0, -1]]);
        let r = fine_interior_report(&o).unwrap();
        assert_eq!(r["index_m"], json!(1));
        assert_eq!(r["fine_interior"]["vertices"], json!([[0, 0, 0]]));
    }
}
