use std::collections::{BTreeMap, BTreeSet};

use super::{Polygon, TranslationSurface, Vec2};
use crate::numfield::Fe;
use crate::{Error, Result};

/// One cylinder of a completely periodic direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderSpec {
    /// Saddle labels along the bottom boundary, in the order met moving along the direction.
    pub bottom: Vec<usize>,
    pub top: Vec<usize>,
    pub mark_bottom: usize,
    pub mark_top: usize,
    /// Vertical height.
    pub height: Fe,
    /// Vector along the direction from the point straight above the marked
    /// bottom origin to the marked top origin.
    pub twist: Vec2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CylinderSurfaceSpec {
    pub direction: Vec2,
    /// Holonomy of saddle connection i + 1.
    pub saddles: Vec<Vec2>,
    pub cylinders: Vec<CylinderSpec>,
}

/// Stacks one parallelogram per cylinder and glues saddles bottom to top.
/// The origin of saddle i is labeled "g{i}".
pub fn build_from_cylinders(spec: &CylinderSurfaceSpec) -> Result<TranslationSurface> {
    let k = spec.saddles.len();
    let incons = |m: &str| Err(Error::InconsistentCombinatorics(m.to_string()));
    let theta = &spec.direction;
    if theta.x.sign() <= 0 {
        return Err(Error::DegenerateDirection);
    }
    let mut seen_b = vec![0usize; k];
    let mut seen_t = vec![0usize; k];
    for c in &spec.cylinders {
        for &l in &c.bottom {
            if l == 0 || l > k {
                return incons("bottom label out of range");
            }
            seen_b[l - 1] += 1;
        }
        for &l in &c.top {
            if l == 0 || l > k {
                return incons("top label out of range");
            }
            seen_t[l - 1] += 1;
        }
        if !c.bottom.contains(&c.mark_bottom) || !c.top.contains(&c.mark_top) {
            return incons("marked label not in its cycle");
        }
    }
    if seen_b.iter().chain(&seen_t).any(|&n| n != 1) {
        return incons("each label must appear once among bottoms and once among tops");
    }
    for (i, s) in spec.saddles.iter().enumerate() {
        match s.ratio_to(theta) {
            Some(l) if l.is_positive() => {}
            Some(_) => return Err(Error::NonPositiveParameter(format!("saddle {} points backwards", i + 1))),
            None => return incons("saddle not parallel to the direction"),
        }
    }
    let hol = |l: usize| &spec.saddles[l - 1];
    let sum = |ls: &[usize]| ls.iter().fold(Vec2::zero(), |acc, &l| &acc + hol(l));

    let mut polygons = Vec::new();
    // (polygon, edge) of each saddle on bottoms and tops.
    let mut bottom_edge = vec![(0, 0); k];
    let mut top_edge = vec![(0, 0); k];
    let mut side_edges = Vec::new();
    let mut offset = Fe::zero();
    for (ci, c) in spec.cylinders.iter().enumerate() {
        if !c.height.is_positive() {
            return Err(Error::NonPositiveParameter(format!("height of cylinder {}", ci + 1)));
        }
        match c.twist.ratio_to(theta) {
            Some(_) => {}
            None => return incons("twist not parallel to the direction"),
        }
        let w = sum(&c.bottom);
        if w != sum(&c.top) {
            return incons("bottom and top widths differ");
        }
        let rot = |cyc: &[usize], m: usize| {
            let s = cyc.iter().position(|&l| l == m).unwrap();
            cyc[s..].iter().chain(&cyc[..s]).copied().collect::<Vec<_>>()
        };
        let bottom = rot(&c.bottom, c.mark_bottom);
        let top = rot(&c.top, c.mark_top);
        let b0 = Vec2::new(offset.clone(), Fe::zero());
        let t0 = &(&b0 + &Vec2::new(Fe::zero(), c.height.clone())) + &c.twist;
        let p = polygons.len();
        let mut vs = Vec::new();
        let mut cur = b0.clone();
        for &l in &bottom {
            bottom_edge[l - 1] = (p, vs.len());
            vs.push(cur.clone());
            cur = &cur + hol(l);
        }
        let right = vs.len();
        vs.push(cur);
        let tops: Vec<Vec2> = top
            .iter()
            .scan(t0.clone(), |acc, &l| {
                let here = acc.clone();
                *acc = &*acc + hol(l);
                Some(here)
            })
            .collect();
        let t_end = &t0 + &w;
        vs.push(t_end);
        // Top edges run backwards: edge from origin(l) + γ_l down to origin(l).
        for (j, &l) in top.iter().enumerate().rev() {
            top_edge[l - 1] = (p, vs.len() - 1);
            vs.push(tops[j].clone());
        }
        let left = vs.len() - 1;
        side_edges.push(((p, right), (p, left)));
        polygons.push(Polygon::new(vs));
        let span = [&b0, &t0].iter().map(|v| v.x.clone()).min().unwrap();
        let reach = [&b0 + &w, &t0 + &w].iter().map(|v| v.x.clone()).max().unwrap();
        offset = &offset + &(&(&reach - &span) + &Fe::one());
    }
    let mut pairing: Vec<Vec<(usize, usize)>> = polygons.iter().map(|p| vec![(0, 0); p.len()]).collect();
    for l in 0..k {
        let (b, t) = (bottom_edge[l], top_edge[l]);
        pairing[b.0][b.1] = t;
        pairing[t.0][t.1] = b;
    }
    for (r, l) in side_edges {
        pairing[r.0][r.1] = l;
        pairing[l.0][l.1] = r;
    }
    let marked: BTreeSet<(usize, usize)> =
        polygons.iter().enumerate().flat_map(|(p, poly)| (0..poly.len()).map(move |i| (p, i))).collect();
    let labels: BTreeMap<String, Vec<(usize, usize)>> =
        (0..k).map(|l| (format!("g{}", l + 1), vec![bottom_edge[l]])).collect();
    TranslationSurface::new(polygons, pairing, marked, labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus_spec() -> CylinderSurfaceSpec {
        CylinderSurfaceSpec {
            direction: Vec2::from_ints(1, 0),
            saddles: vec![Vec2::from_ints(1, 0)],
            cylinders: vec![CylinderSpec {
                bottom: vec![1],
                top: vec![1],
                mark_bottom: 1,
                mark_top: 1,
                height: Fe::one(),
                twist: Vec2::zero(),
            }],
        }
    }

    #[test]
    fn square_torus() {
        let s = build_from_cylinders(&torus_spec()).unwrap();
        assert_eq!(s.genus(), 1);
        assert_eq!(s.cone_angles(), vec![1]);
        assert_eq!(s.area(), Fe::one());
    }

    #[test]
    fn bad_inputs() {
        let mut spec = torus_spec();
        spec.cylinders[0].top = vec![1, 1];
        assert!(matches!(build_from_cylinders(&spec), Err(Error::InconsistentCombinatorics(_))));
        let mut spec = torus_spec();
        spec.cylinders[0].height = Fe::int(-1);
        assert!(matches!(build_from_cylinders(&spec), Err(Error::NonPositiveParameter(_))));
    }
}
