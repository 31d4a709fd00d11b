use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::{Cylinder, PeriodicDirectionData, SaddleConnection, Segment};
use crate::numfield::Fe;
use crate::surface::Vec2;
use crate::{Error, Result};

fn v2(v: &Vec2) -> Value {
    json!([v.x.to_string(), v.y.to_string()])
}

fn fes(xs: &[Fe]) -> Value {
    Value::Array(xs.iter().map(|x| Value::String(x.to_string())).collect())
}

fn offsets(m: &BTreeMap<usize, Vec2>) -> Value {
    Value::Object(m.iter().map(|(k, v)| (k.to_string(), v2(v))).collect())
}

pub(crate) fn data_to_json(d: &PeriodicDirectionData) -> Value {
    let saddles: Vec<Value> = d
        .saddles
        .iter()
        .map(|s| {
            json!({
                "label": s.label,
                "holonomy": v2(&s.holonomy),
                "length_squared": s.holonomy.norm2().to_string(),
                "start": [s.start.0, s.start.1],
                "end": [s.end.0, s.end.1],
                "from_cone": s.from_cone,
                "to_cone": s.to_cone,
                "segments": s.segments.iter().map(|g| json!([g.polygon, v2(&g.from), v2(&g.to)])).collect::<Vec<_>>(),
            })
        })
        .collect();
    let cylinders: Vec<Value> = d
        .cylinders
        .iter()
        .map(|c| {
            json!({
                "bottom": c.bottom,
                "top": c.top,
                "mark_bottom": c.mark_bottom(),
                "mark_top": c.mark_top(),
                "width": v2(&c.width),
                "height": c.height.to_string(),
                "twist": v2(&c.twist),
                "bottom_offsets": offsets(&c.bottom_offsets),
                "top_offsets": offsets(&c.top_offsets),
            })
        })
        .collect();
    let m = d.normalizing_matrix().ok();
    json!({
        "direction": v2(&d.direction),
        "n0": d.n0,
        "saddles": saddles,
        "cylinders": cylinders,
        "lengths_squared": fes(&d.lengths_squared()),
        "heights": fes(&d.heights()),
        "normalized_twists": fes(&d.normalized_twists()),
        "normalized_twist_squares": fes(&d.normalized_twist_squares()),
        "normalized_twists_mod1": fes(&d.normalized_twists_mod1()),
        "normalizing_matrix": m.map(|m| json!([[m.a.to_string(), m.b.to_string()], [m.c.to_string(), m.d.to_string()]])),
    })
}

fn get<'a>(v: &'a Value, k: &str) -> Result<&'a Value> {
    v.get(k).ok_or_else(|| Error::Parse(format!("missing field {k}")))
}

fn fe(v: &Value) -> Result<Fe> {
    crate::surface::fe_from_json(v)
}

fn vec2(v: &Value) -> Result<Vec2> {
    crate::surface::vec_from_json(v)
}

fn usize_of(v: &Value) -> Result<usize> {
    v.as_u64().map(|x| x as usize).ok_or_else(|| Error::Parse(format!("expected an index, got {v}")))
}

fn list(v: &Value) -> Result<&Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("expected an array, got {v}")))
}

fn pair(v: &Value) -> Result<(usize, usize)> {
    match list(v)?.as_slice() {
        [a, b] => Ok((usize_of(a)?, usize_of(b)?)),
        _ => Err(Error::Parse("expected an index pair".into())),
    }
}

fn offsets_from(v: &Value) -> Result<BTreeMap<usize, Vec2>> {
    let obj = v.as_object().ok_or_else(|| Error::Parse("expected an offset map".into()))?;
    obj.iter()
        .map(|(k, x)| Ok((k.parse::<usize>().map_err(|e| Error::Parse(e.to_string()))?, vec2(x)?)))
        .collect()
}

pub(crate) fn data_from_json(v: &Value) -> Result<PeriodicDirectionData> {
    let labels = |x: &Value| -> Result<Vec<usize>> { list(x)?.iter().map(usize_of).collect() };
    let saddles = list(get(v, "saddles")?)?
        .iter()
        .map(|s| {
            let segments = list(get(s, "segments")?)?
                .iter()
                .map(|g| match list(g)?.as_slice() {
                    [p, a, b] => Ok(Segment { polygon: usize_of(p)?, from: vec2(a)?, to: vec2(b)? }),
                    _ => Err(Error::Parse("bad segment".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SaddleConnection {
                label: usize_of(get(s, "label")?)?,
                holonomy: vec2(get(s, "holonomy")?)?,
                start: pair(get(s, "start")?)?,
                end: pair(get(s, "end")?)?,
                from_cone: usize_of(get(s, "from_cone")?)?,
                to_cone: usize_of(get(s, "to_cone")?)?,
                segments,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let cylinders = list(get(v, "cylinders")?)?
        .iter()
        .map(|c| {
            Ok(Cylinder {
                bottom: labels(get(c, "bottom")?)?,
                top: labels(get(c, "top")?)?,
                width: vec2(get(c, "width")?)?,
                height: fe(get(c, "height")?)?,
                twist: vec2(get(c, "twist")?)?,
                bottom_offsets: offsets_from(get(c, "bottom_offsets")?)?,
                top_offsets: offsets_from(get(c, "top_offsets")?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let n0 = get(v, "n0")?.as_i64().ok_or_else(|| Error::Parse("n0 must be an integer".into()))?;
    Ok(PeriodicDirectionData { direction: vec2(get(v, "direction")?)?, saddles, cylinders, n0 })
}

impl PeriodicDirectionData {
    pub fn from_json(v: &Value) -> Result<Self> {
        data_from_json(v)
    }
}
