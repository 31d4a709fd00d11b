use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::{json, Value};

use super::{Corner, Polygon, TranslationSurface, Vec2};
use crate::numfield::Fe;
use crate::{Error, Result};

/// Extra geometry drawn on top of the polygon layout.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SvgOverlay {
    /// Segments in surface coordinates, each with a CSS color.
    pub segments: Vec<(Vec2, Vec2, String)>,
    pub points: Vec<(Vec2, String)>,
    /// Named polylines such as saddle connections, colored in order.
    pub connections: Vec<(String, Vec<(Vec2, Vec2)>)>,
}

fn corner_json(c: &Corner) -> Value {
    json!([c.0, c.1])
}

fn vec_json(v: &Vec2) -> Value {
    json!([v.x.to_string(), v.y.to_string()])
}

pub(crate) fn fe_from_json(v: &Value) -> Result<Fe> {
    match v {
        Value::String(s) => s.parse(),
        Value::Number(n) => n.to_string().parse(),
        _ => Err(Error::Parse(format!("expected a field element, got {v}"))),
    }
}

pub(crate) fn vec_from_json(v: &Value) -> Result<Vec2> {
    match v.as_array().map(Vec::as_slice) {
        Some([x, y]) => Ok(Vec2::new(fe_from_json(x)?, fe_from_json(y)?)),
        _ => Err(Error::Parse(format!("expected a pair, got {v}"))),
    }
}

fn corner_from_json(v: &Value) -> Result<Corner> {
    match v.as_array().map(Vec::as_slice) {
        Some([p, i]) => match (p.as_u64(), i.as_u64()) {
            (Some(p), Some(i)) => Ok((p as usize, i as usize)),
            _ => Err(Error::Parse(format!("bad index pair {v}"))),
        },
        _ => Err(Error::Parse(format!("expected an index pair, got {v}"))),
    }
}

pub(crate) fn surface_to_json(s: &TranslationSurface) -> Value {
    let polygons: Vec<Value> =
        s.polygons.iter().map(|p| Value::Array(p.vertices.iter().map(vec_json).collect())).collect();
    let mut pairings = Vec::new();
    for (p, row) in s.pairing.iter().enumerate() {
        for (i, &e) in row.iter().enumerate() {
            if (p, i) < e {
                pairings.push(json!([corner_json(&(p, i)), corner_json(&e)]));
            }
        }
    }
    let marked: Vec<Value> = s.marked.iter().map(corner_json).collect();
    let labels: serde_json::Map<String, Value> =
        s.labels.iter().map(|(k, v)| (k.clone(), Value::Array(v.iter().map(corner_json).collect()))).collect();
    json!({ "polygons": polygons, "pairings": pairings, "marked": marked, "labels": labels })
}

pub(crate) fn surface_from_json(v: &Value) -> Result<TranslationSurface> {
    let field = |k: &str| v.get(k).ok_or_else(|| Error::Parse(format!("missing field {k}")));
    let arr = |x: &Value| x.as_array().cloned().ok_or_else(|| Error::Parse(format!("expected an array, got {x}")));
    let polygons = arr(field("polygons")?)?
        .iter()
        .map(|p| arr(p)?.iter().map(vec_from_json).collect::<Result<Vec<_>>>().map(Polygon::new))
        .collect::<Result<Vec<_>>>()?;
    let mut pairing: Vec<Vec<Option<Corner>>> = polygons.iter().map(|p| vec![None; p.len()]).collect();
    for pr in arr(field("pairings")?)? {
        let pr = arr(&pr)?;
        let [a, b] = pr.as_slice() else {
            return Err(Error::Parse("pairing must have two edges".into()));
        };
        let (a, b) = (corner_from_json(a)?, corner_from_json(b)?);
        for (x, y) in [(a, b), (b, a)] {
            let slot = pairing
                .get_mut(x.0)
                .and_then(|r| r.get_mut(x.1))
                .ok_or_else(|| Error::Parse(format!("edge {x:?} out of range")))?;
            *slot = Some(y);
        }
    }
    let pairing = pairing
        .into_iter()
        .map(|r| r.into_iter().collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Parse("unpaired edge".into()))?;
    let marked: BTreeSet<Corner> = match v.get("marked") {
        Some(m) => arr(m)?.iter().map(corner_from_json).collect::<Result<_>>()?,
        None => BTreeSet::new(),
    };
    let mut labels = BTreeMap::new();
    if let Some(obj) = v.get("labels").and_then(Value::as_object) {
        for (k, cs) in obj {
            labels.insert(k.clone(), arr(cs)?.iter().map(corner_from_json).collect::<Result<Vec<_>>>()?);
        }
    }
    TranslationSurface::new(polygons, pairing, marked, labels)
}

const PALETTE: [&str; 6] = ["#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn num(x: f64) -> String {
    let s = format!("{x:.9}");
    if s == "-0.000000000" { "0.000000000".into() } else { s }
}

pub(crate) fn surface_to_svg(s: &TranslationSurface, overlay: &SvgOverlay) -> String {
    let pts: Vec<(f64, f64)> = s
        .polygons
        .iter()
        .flat_map(|p| p.vertices.iter().map(Vec2::to_f64))
        .chain(overlay.segments.iter().flat_map(|(a, b, _)| [a.to_f64(), b.to_f64()]))
        .chain(overlay.connections.iter().flat_map(|(_, segs)| segs.iter().flat_map(|(a, b)| [a.to_f64(), b.to_f64()])))
        .collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in &pts {
        x0 = x0.min(x);
        y0 = y0.min(y);
        x1 = x1.max(x);
        y1 = y1.max(y);
    }
    let pad = 0.05 * (x1 - x0).max(y1 - y0).max(1e-9);
    let scale = 400.0 / (x1 - x0 + 2.0 * pad).max(y1 - y0 + 2.0 * pad);
    let map = |(x, y): (f64, f64)| ((x - x0 + pad) * scale, (y1 + pad - y) * scale);
    let (w, h) = ((x1 - x0 + 2.0 * pad) * scale, (y1 - y0 + 2.0 * pad) * scale);
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{}" height="{}" viewBox="0 0 {} {}">"#,
        num(w),
        num(h),
        num(w),
        num(h)
    );
    for (pi, p) in s.polygons.iter().enumerate() {
        let d: Vec<String> = p
            .vertices
            .iter()
            .map(|v| {
                let (x, y) = map(v.to_f64());
                format!("{},{}", num(x), num(y))
            })
            .collect();
        let _ = writeln!(
            out,
            r##"<polygon id="poly{pi}" points="{}" fill="#eef3fa" stroke="#333333" stroke-width="0.8"/>"##,
            d.join(" ")
        );
    }
    for (a, b, color) in &overlay.segments {
        let (ax, ay) = map(a.to_f64());
        let (bx, by) = map(b.to_f64());
        let _ = writeln!(
            out,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="1.2"/>"#,
            num(ax),
            num(ay),
            num(bx),
            num(by)
        );
    }
    for (k, (name, segs)) in overlay.connections.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let _ = writeln!(out, r#"<g class="connection" id="{name}" stroke="{color}" stroke-width="1.2">"#);
        for (a, b) in segs {
            let (ax, ay) = map(a.to_f64());
            let (bx, by) = map(b.to_f64());
            let _ = writeln!(out, r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#, num(ax), num(ay), num(bx), num(by));
        }
        let _ = writeln!(out, "</g>");
    }
    for (k, &pt) in s.singular_points().iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let _ = writeln!(out, r#"<g class="cone" id="cone{k}" fill="{color}">"#);
        for &c in &s.points()[pt].corners {
            let (x, y) = map(s.vertex(c).to_f64());
            let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="3"/>"#, num(x), num(y));
        }
        let _ = writeln!(out, "</g>");
    }
    for (v, color) in &overlay.points {
        let (x, y) = map(v.to_f64());
        let _ = writeln!(out, r#"<circle cx="{}" cy="{}" r="2" fill="{color}"/>"#, num(x), num(y));
    }
    for (name, cs) in &s.labels {
        if let Some(&c) = cs.first() {
            let (x, y) = map(s.vertex(c).to_f64());
            let _ = writeln!(out, r#"<text x="{}" y="{}" font-size="9">{name}</text>"#, num(x + 4.0), num(y - 4.0));
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::super::build_ay;
    use super::*;

    #[test]
    fn json_round_trip() {
        let s = build_ay();
        let back = TranslationSurface::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn svg_is_deterministic() {
        let s = build_ay();
        let a = s.to_svg(&SvgOverlay::default());
        assert_eq!(a, s.to_svg(&SvgOverlay::default()));
        assert_eq!(a.matches(r#"class="cone""#).count(), 2);
    }
}
