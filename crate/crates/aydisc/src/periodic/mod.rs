//! Separatrix tracing and cylinder decompositions in completely periodic directions.

mod json;

use std::collections::BTreeMap;

use crate::numfield::Fe;
use crate::surface::{Corner, CylinderSpec, CylinderSurfaceSpec, Matrix2, TranslationSurface, Vec2};
use crate::{Error, Result};

pub const DEFAULT_MAX_STEPS: usize = 4096;

/// A straight segment inside one polygon, in that polygon's coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub polygon: usize,
    pub from: Vec2,
    pub to: Vec2,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaddleConnection {
    pub label: usize,
    pub holonomy: Vec2,
    /// Outgoing corner at the origin.
    pub start: Corner,
    /// Corner of the polygon in which the connection arrives.
    pub end: Corner,
    pub from_cone: usize,
    pub to_cone: usize,
    pub segments: Vec<Segment>,
}

/// How separatrices receive their integer labels.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Labeling {
    /// Named labels if the surface carries "P1".. or "g1"..; otherwise `Ordered`.
    #[default]
    Auto,
    /// Label i is the separatrix leaving the point named `{prefix}{i}`.
    Named(String),
    /// Cones by smallest vertex, then counterclockwise from the lowest corner there.
    Ordered,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub enum Marking {
    /// Smallest label of each cycle.
    #[default]
    Smallest,
    /// (bottom, top) mark of each cylinder, cylinders in sorted order.
    Explicit(Vec<(usize, usize)>),
}

impl Marking {
    /// Markings used by the tables for the slopes 1−α² and 3+α².
    pub fn preset(name: &str) -> Result<Self> {
        match name {
            "appendix-a1" | "a1" => Ok(Marking::Explicit(vec![(3, 2), (4, 6), (1, 3)])),
            "appendix-a2" | "a2" => Ok(Marking::Explicit(vec![(5, 4), (3, 2), (6, 5)])),
            "smallest" | "default" => Ok(Marking::Smallest),
            _ => Err(Error::InvalidMarking(format!("unknown preset {name}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cylinder {
    /// Bottom cycle in the order met along the direction, starting at the mark.
    pub bottom: Vec<usize>,
    pub top: Vec<usize>,
    pub width: Vec2,
    /// Vertical height.
    pub height: Fe,
    /// Twist vector v: from the point above the bottom mark's origin to the top mark's origin, reduced into [0, w).
    pub twist: Vec2,
    /// Along-direction offset of every bottom origin, relative to a fixed origin on the bottom.
    bottom_offsets: BTreeMap<usize, Vec2>,
    /// Along-direction offset of every top origin minus the vertical height, same origin.
    top_offsets: BTreeMap<usize, Vec2>,
}

impl Cylinder {
    pub fn mark_bottom(&self) -> usize {
        self.bottom[0]
    }

    pub fn mark_top(&self) -> usize {
        self.top[0]
    }

    pub fn area(&self) -> Fe {
        &self.width.x * &self.height
    }

    /// Origin of bottom saddle l as a multiple of the width.
    pub fn bottom_position(&self, l: usize) -> Option<Fe> {
        self.bottom_offsets.get(&l)?.ratio_to(&self.width)
    }

    /// Origin of top saddle l as a multiple of the width, measured below the top.
    pub fn top_position(&self, l: usize) -> Option<Fe> {
        self.top_offsets.get(&l)?.ratio_to(&self.width)
    }

    fn remark(&mut self, mb: usize, mt: usize) -> Result<()> {
        let rot = |cyc: &[usize], m: usize| -> Option<Vec<usize>> {
            let s = cyc.iter().position(|&l| l == m)?;
            Some(cyc[s..].iter().chain(&cyc[..s]).copied().collect())
        };
        self.bottom = rot(&self.bottom, mb).ok_or_else(|| Error::InvalidMarking(format!("{mb} not on this bottom")))?;
        self.top = rot(&self.top, mt).ok_or_else(|| Error::InvalidMarking(format!("{mt} not on this top")))?;
        let v = &self.top_offsets[&mt] - &self.bottom_offsets[&mb];
        let mu = v.ratio_to(&self.width).expect("offsets lie along the direction");
        self.twist = self.width.scale(&mu.fract());
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicDirectionData {
    pub direction: Vec2,
    pub saddles: Vec<SaddleConnection>,
    /// Sorted by decreasing height, then decreasing |w|², then smallest bottom label.
    pub cylinders: Vec<Cylinder>,
    pub n0: i64,
}

impl PeriodicDirectionData {
    pub fn lengths_squared(&self) -> Vec<Fe> {
        self.saddles.iter().map(|s| s.holonomy.norm2()).collect()
    }

    pub fn heights(&self) -> Vec<Fe> {
        self.cylinders.iter().map(|c| c.height.clone()).collect()
    }

    pub fn bottom_cycles(&self) -> Vec<Vec<usize>> {
        self.cylinders.iter().map(|c| c.bottom.clone()).collect()
    }

    pub fn top_cycles(&self) -> Vec<Vec<usize>> {
        self.cylinders.iter().map(|c| c.top.clone()).collect()
    }

    pub fn marking(&self) -> Vec<(usize, usize)> {
        self.cylinders.iter().map(|c| (c.mark_bottom(), c.mark_top())).collect()
    }

    /// π_b: label ↦ successor on its bottom cycle (index l−1).
    pub fn bottom_permutation(&self) -> Vec<usize> {
        cycles_to_perm(&self.bottom_cycles(), self.saddles.len())
    }

    pub fn top_permutation(&self) -> Vec<usize> {
        cycles_to_perm(&self.top_cycles(), self.saddles.len())
    }

    pub fn with_marking(&self, marking: &Marking) -> Result<Self> {
        let mut out = self.clone();
        apply_marking(&mut out.cylinders, marking)?;
        Ok(out)
    }

    pub fn with_n0(&self, n0: i64) -> Self {
        Self { n0, ..self.clone() }
    }

    /// t_i = v_i − (h_i/h_r)(v_r + n0·w_r), as the ratio τ_i = t_i / w_i.
    pub fn normalized_twists_wrt(&self, reference: usize, n0: i64) -> Vec<Fe> {
        let r = &self.cylinders[reference];
        let base = &r.twist + &r.width.scale(&Fe::int(n0));
        self.cylinders
            .iter()
            .map(|c| {
                let k = &c.height / &r.height;
                let t = &c.twist - &base.scale(&k);
                t.ratio_to(&c.width).expect("twists lie along the direction")
            })
            .collect()
    }

    /// τ_i for every cylinder except the first, raw (not reduced mod 1).
    pub fn normalized_twists(&self) -> Vec<Fe> {
        self.normalized_twists_wrt(0, self.n0).into_iter().skip(1).collect()
    }

    pub fn normalized_twist_squares(&self) -> Vec<Fe> {
        self.normalized_twists().iter().map(Fe::square).collect()
    }

    /// τ_i mod 1, the affine invariant.
    pub fn normalized_twists_mod1(&self) -> Vec<Fe> {
        self.normalized_twists().iter().map(Fe::fract).collect()
    }

    /// M⁻¹ = [w_r | (0, h_r) + v_r + n0·w_r].
    pub fn frame_wrt(&self, reference: usize, n0: i64) -> Matrix2 {
        let r = &self.cylinders[reference];
        let tau = &(&Vec2::new(Fe::zero(), r.height.clone()) + &r.twist) + &r.width.scale(&Fe::int(n0));
        Matrix2::from_columns(&r.width, &tau)
    }

    pub fn normalizing_matrix(&self) -> Result<Matrix2> {
        self.frame_wrt(0, self.n0).inv().map_err(|_| Error::SingularFrame)
    }

    pub fn to_cylinder_spec(&self) -> CylinderSurfaceSpec {
        CylinderSurfaceSpec {
            direction: self.direction.clone(),
            saddles: self.saddles.iter().map(|s| s.holonomy.clone()).collect(),
            cylinders: self
                .cylinders
                .iter()
                .map(|c| CylinderSpec {
                    bottom: c.bottom.clone(),
                    top: c.top.clone(),
                    mark_bottom: c.mark_bottom(),
                    mark_top: c.mark_top(),
                    height: c.height.clone(),
                    twist: c.twist.clone(),
                })
                .collect(),
        }
    }

    /// Saddle connections γ₁..γₖ as an SVG overlay.
    pub fn overlay(&self) -> crate::surface::SvgOverlay {
        let mut o = crate::surface::SvgOverlay::default();
        for c in &self.saddles {
            let segs = c.segments.iter().map(|s| (s.from.clone(), s.to.clone())).collect();
            o.connections.push((format!("gamma{}", c.label), segs));
        }
        o
    }

    pub fn to_json(&self) -> serde_json::Value {
        json::data_to_json(self)
    }
}

fn cycles_to_perm(cycles: &[Vec<usize>], k: usize) -> Vec<usize> {
    let mut p = vec![0; k];
    for c in cycles {
        for (i, &l) in c.iter().enumerate() {
            p[l - 1] = c[(i + 1) % c.len()];
        }
    }
    p
}

fn apply_marking(cyls: &mut [Cylinder], marking: &Marking) -> Result<()> {
    match marking {
        Marking::Smallest => {
            for c in cyls.iter_mut() {
                let mb = *c.bottom.iter().min().unwrap();
                let mt = *c.top.iter().min().unwrap();
                c.remark(mb, mt)?;
            }
        }
        Marking::Explicit(m) => {
            if m.len() != cyls.len() {
                return Err(Error::InvalidMarking(format!("{} marks for {} cylinders", m.len(), cyls.len())));
            }
            for (c, &(mb, mt)) in cyls.iter_mut().zip(m) {
                c.remark(mb, mt)?;
            }
        }
    }
    Ok(())
}

enum Exit {
    Vertex(usize),
    Edge(usize),
}

/// Moves from `pos` inside polygon p along d to the boundary.
fn step(s: &TranslationSurface, p: usize, pos: &Vec2, d: &Vec2) -> Result<(Fe, Exit)> {
    let poly = &s.polygons[p];
    let n = poly.len();
    let mut best: Option<(Fe, usize)> = None;
    for j in 0..n {
        let e = poly.edge(j);
        let c = e.cross(d);
        if !c.is_negative() {
            continue;
        }
        let t = &e.cross(&(pos - poly.vertex(j))) / &(-&c);
        if t.is_positive() && best.as_ref().is_none_or(|(b, _)| &t < b) {
            best = Some((t, j));
        }
    }
    let (t, _) = best.ok_or_else(|| Error::Internal("ray does not leave its polygon".into()))?;
    let dd = d.norm2();
    let reach = &t * &dd;
    let mut hit: Option<(Fe, usize)> = None;
    for k in 0..n {
        let r = poly.vertex(k) - pos;
        if r.is_zero() || !d.cross(&r).is_zero() {
            continue;
        }
        let a = d.dot(&r);
        if a.is_positive() && a <= reach && hit.as_ref().is_none_or(|(b, _)| &a < b) {
            hit = Some((a, k));
        }
    }
    if let Some((a, k)) = hit {
        return Ok((&a / &dd, Exit::Vertex(k)));
    }
    // Collinear edges share the exit line; take the one containing the exit point.
    let q_pt = pos + &d.scale(&t);
    for j in 0..n {
        let e = poly.edge(j);
        let r = &q_pt - poly.vertex(j);
        if e.cross(&r).is_zero() && r.dot(&e).is_positive() && r.dot(&e) < e.norm2() {
            return Ok((t, Exit::Edge(j)));
        }
    }
    Err(Error::Internal("exit point lies on no edge".into()))
}

/// The corner of the point at `c` whose sector contains d.
fn corner_towards(s: &TranslationSurface, c: Corner, d: &Vec2) -> Result<Corner> {
    let pt = &s.points()[s.point_of(c)];
    pt.corners
        .iter()
        .copied()
        .find(|&x| s.in_sector(x, d))
        .ok_or_else(|| Error::Internal("no corner contains the direction".into()))
}

fn cross_edge(s: &TranslationSurface, p: usize, j: usize, q_pt: &Vec2) -> (usize, Vec2) {
    let (q, m) = s.partner((p, j));
    let shift = s.polygons[q].vertex(m + 1) - s.polygons[p].vertex(j);
    (q, q_pt + &shift)
}

struct Trace {
    holonomy: Vec2,
    end: Corner,
    segments: Vec<Segment>,
}

fn trace_from(s: &TranslationSurface, start: Corner, d: &Vec2, max_steps: usize) -> Result<Option<Trace>> {
    let mut p = start.0;
    let mut pos = s.vertex(start).clone();
    let mut total = Fe::zero();
    let mut segments = Vec::new();
    for _ in 0..max_steps {
        let (t, exit) = step(s, p, &pos, d)?;
        let q_pt = &pos + &d.scale(&t);
        segments.push(Segment { polygon: p, from: pos.clone(), to: q_pt.clone() });
        total += &t;
        match exit {
            Exit::Vertex(k) => {
                if s.is_singular((p, k)) {
                    return Ok(Some(Trace { holonomy: d.scale(&total), end: (p, k), segments }));
                }
                let c = corner_towards(s, (p, k), d)?;
                p = c.0;
                pos = s.vertex(c).clone();
            }
            Exit::Edge(j) => {
                let (q, np) = cross_edge(s, p, j, &q_pt);
                p = q;
                pos = np;
            }
        }
    }
    Ok(None)
}

/// Outgoing corners in direction θ with their labels, ordered by label.
fn separatrix_starts(s: &TranslationSurface, theta: &Vec2, labeling: &Labeling) -> Result<Vec<Corner>> {
    let ordered = || -> Vec<Corner> {
        let mut out = Vec::new();
        for pt in s.singular_points() {
            let low = s.smallest_vertex(pt);
            let corners = &s.points()[pt].corners;
            let first = corners.iter().filter(|&&c| *s.vertex(c) == low).min().copied().unwrap();
            let mut c = first;
            for _ in 0..corners.len() {
                if s.in_sector(c, theta) {
                    out.push(c);
                }
                c = s.next_corner(c);
            }
        }
        out
    };
    let named = |prefix: &str| -> Result<Vec<Corner>> {
        let mut out = Vec::new();
        for i in 1.. {
            let Some(cs) = s.labels.get(&format!("{prefix}{i}")) else { break };
            let hits: Vec<Corner> = cs.iter().copied().filter(|&c| s.in_sector(c, theta)).collect();
            match hits.as_slice() {
                [c] => out.push(*c),
                _ => return Err(Error::Precondition(format!("label {prefix}{i} has {} outgoing separatrices", hits.len()))),
            }
        }
        Ok(out)
    };
    let all = ordered();
    let chosen = match labeling {
        Labeling::Ordered => all.clone(),
        Labeling::Named(p) => named(p)?,
        Labeling::Auto => {
            if s.labels.contains_key("P1") {
                named("P")?
            } else if s.labels.contains_key("g1") {
                named("g")?
            } else {
                all.clone()
            }
        }
    };
    let mut a = all.clone();
    let mut b = chosen.clone();
    a.sort();
    b.sort();
    if a != b {
        return Err(Error::Precondition("labels do not cover the separatrices exactly once".into()));
    }
    Ok(chosen)
}

/// Follows every separatrix in direction θ.
pub fn trace_separatrices(
    s: &TranslationSurface,
    theta: &Vec2,
    max_steps: usize,
    labeling: &Labeling,
) -> Result<Vec<SaddleConnection>> {
    let (out, total) = trace_saddle_connections(s, theta, max_steps, labeling)?;
    if out.len() < total {
        return Err(Error::NotDetectedPeriodic { traced: out.len(), total });
    }
    Ok(out)
}

/// The separatrices in direction θ that close within the bound, with the total count.
pub fn trace_saddle_connections(
    s: &TranslationSurface,
    theta: &Vec2,
    max_steps: usize,
    labeling: &Labeling,
) -> Result<(Vec<SaddleConnection>, usize)> {
    if theta.is_zero() {
        return Err(Error::DegenerateDirection);
    }
    if max_steps == 0 {
        return Err(Error::Precondition("max_steps must be positive".into()));
    }
    let starts = separatrix_starts(s, theta, labeling)?;
    let mut out = Vec::new();
    for (i, &c) in starts.iter().enumerate() {
        if let Some(tr) = trace_from(s, c, theta, max_steps)? {
            out.push(SaddleConnection {
                label: i + 1,
                holonomy: tr.holonomy,
                start: c,
                end: tr.end,
                from_cone: s.point_of(c),
                to_cone: s.point_of(tr.end),
                segments: tr.segments,
            });
        }
    }
    Ok((out, starts.len()))
}

fn walk_cycles(succ: &[usize]) -> Vec<Vec<usize>> {
    let k = succ.len();
    let mut seen = vec![false; k];
    let mut out = Vec::new();
    for l in 1..=k {
        if seen[l - 1] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = l;
        while !seen[x - 1] {
            seen[x - 1] = true;
            cyc.push(x);
            x = succ[x - 1];
        }
        out.push(cyc);
    }
    out
}

fn offsets(cycle: &[usize], hol: &[Vec2]) -> BTreeMap<usize, Vec2> {
    let mut acc = Vec2::zero();
    let mut out = BTreeMap::new();
    for &l in cycle {
        out.insert(l, acc.clone());
        acc = &acc + &hol[l - 1];
    }
    out
}

/// Where a transverse ray from the origin of a bottom saddle first meets a saddle.
struct Crossing {
    label: usize,
    /// Developed displacement from the origin to the hit point.
    displacement: Vec2,
    /// Hit point minus the hit saddle's origin.
    along: Vec2,
}

fn shoot(
    s: &TranslationSurface,
    saddles: &[SaddleConnection],
    by_polygon: &[Vec<(usize, usize)>],
    origin: Corner,
    d: &Vec2,
    max_steps: usize,
) -> Result<Option<Crossing>> {
    let mut c = origin;
    let n = s.points()[s.point_of(origin)].corners.len();
    let mut found = false;
    for _ in 0..n {
        if s.in_sector(c, d) {
            found = true;
            break;
        }
        c = s.next_corner(c);
    }
    if !found {
        return Err(Error::Internal("transverse ray has no starting corner".into()));
    }
    let mut p = c.0;
    let mut pos = s.vertex(c).clone();
    let mut total = Fe::zero();
    for stepno in 0..max_steps {
        let (t, exit) = step(s, p, &pos, d)?;
        let r = d.scale(&t);
        let mut best: Option<(Fe, Fe, usize, usize)> = None;
        for &(l, si) in &by_polygon[p] {
            let seg = &saddles[l - 1].segments[si];
            let sv = &seg.to - &seg.from;
            let den = r.cross(&sv);
            if den.is_zero() {
                continue;
            }
            let w = &seg.from - &pos;
            let a = &w.cross(&sv) / &den;
            let u = &w.cross(&r) / &den;
            let one = Fe::one();
            let ahead = if stepno == 0 { a.is_positive() } else { !a.is_negative() };
            if ahead && a <= one && !u.is_negative() && u <= one && best.as_ref().is_none_or(|b| a < b.0) {
                best = Some((a, u, l, si));
            }
        }
        if let Some((a, u, l, si)) = best {
            let sc = &saddles[l - 1];
            let last = sc.segments.len() - 1;
            if (u.is_zero() && si == 0) || (u == Fe::one() && si == last) {
                return Ok(None);
            }
            let seg = &sc.segments[si];
            let mut along = (&seg.to - &seg.from).scale(&u);
            for prev in &sc.segments[..si] {
                along = &along + &(&prev.to - &prev.from);
            }
            total += &(&t * &a);
            return Ok(Some(Crossing { label: l, displacement: d.scale(&total), along }));
        }
        total += &t;
        let q_pt = &pos + &r;
        match exit {
            Exit::Vertex(k) => {
                if s.is_singular((p, k)) {
                    return Ok(None);
                }
                let c = corner_towards(s, (p, k), d)?;
                p = c.0;
                pos = s.vertex(c).clone();
            }
            Exit::Edge(j) => {
                let (q, np) = cross_edge(s, p, j, &q_pt);
                p = q;
                pos = np;
            }
        }
    }
    Err(Error::Internal("transverse ray did not reach a saddle connection".into()))
}

fn transverse_candidates(theta: &Vec2) -> impl Iterator<Item = Vec2> + '_ {
    let rot = Vec2::new(-&theta.y, theta.x.clone());
    (0..24).map(move |k| {
        let skew = crate::numfield::qf(if k % 2 == 0 { k } else { -k }, 2 * k + 7);
        &rot + &theta.scale(&Fe::from_q(skew))
    })
}

/// Cuts S into cylinders along the saddle connections in direction θ.
pub fn decompose(
    s: &TranslationSurface,
    theta: &Vec2,
    marking: &Marking,
    n0: i64,
    labeling: &Labeling,
    max_steps: usize,
) -> Result<PeriodicDirectionData> {
    if !theta.x.is_positive() {
        return Err(Error::DegenerateDirection);
    }
    let saddles = trace_separatrices(s, theta, max_steps, labeling)?;
    let k = saddles.len();
    let start_label: BTreeMap<Corner, usize> = saddles.iter().map(|sc| (sc.start, sc.label)).collect();
    let back = -theta;
    let mut next_bottom = vec![0; k];
    let mut next_top = vec![0; k];
    for sc in &saddles {
        let arr = if s.in_sector(sc.end, &back) { sc.end } else { s.next_corner(sc.end) };
        let walk = |f: &dyn Fn(Corner) -> Corner| -> Result<usize> {
            let mut c = arr;
            for _ in 0..=s.points()[s.point_of(arr)].corners.len() {
                if let Some(&l) = start_label.get(&c) {
                    return Ok(l);
                }
                c = f(c);
            }
            Err(Error::Internal("no outgoing separatrix around an arrival point".into()))
        };
        next_bottom[sc.label - 1] = walk(&|c| s.prev_corner(c))?;
        next_top[sc.label - 1] = walk(&|c| s.next_corner(c))?;
    }
    let bottoms = walk_cycles(&next_bottom);
    let tops = walk_cycles(&next_top);
    if bottoms.len() != tops.len() {
        return Err(Error::Internal("bottom and top cycle counts differ".into()));
    }
    let hol: Vec<Vec2> = saddles.iter().map(|sc| sc.holonomy.clone()).collect();
    let mut by_polygon: Vec<Vec<(usize, usize)>> = vec![Vec::new(); s.polygons.len()];
    for sc in &saddles {
        for (i, seg) in sc.segments.iter().enumerate() {
            by_polygon[seg.polygon].push((sc.label, i));
        }
    }
    let mut top_of = BTreeMap::new();
    for (ti, t) in tops.iter().enumerate() {
        for &l in t {
            top_of.insert(l, ti);
        }
    }
    let mut cylinders = Vec::new();
    let mut used = vec![false; tops.len()];
    for bottom in &bottoms {
        let a = bottom[0];
        let origin = saddles[a - 1].start;
        let mut crossing = None;
        for d in transverse_candidates(theta) {
            if let Some(c) = shoot(s, &saddles, &by_polygon, origin, &d, max_steps)? {
                crossing = Some(c);
                break;
            }
        }
        let cr = crossing.ok_or_else(|| Error::Internal("every transverse ray hit a cone point".into()))?;
        let ti = top_of[&cr.label];
        if used[ti] {
            return Err(Error::Internal("two bottoms reach the same top".into()));
        }
        used[ti] = true;
        let top = tops[ti].clone();
        let dsp = &cr.displacement;
        let height = &dsp.y - &(&(&dsp.x * &theta.y) / &theta.x);
        let width = bottom.iter().fold(Vec2::zero(), |acc, &l| &acc + &hol[l - 1]);
        let top_pos = offsets(&top, &hol);
        let lift = Vec2::new(Fe::zero(), height.clone());
        let top_start = &(&(dsp - &cr.along) - &top_pos[&cr.label]) - &lift;
        let top_offsets = top_pos.iter().map(|(&l, v)| (l, v + &top_start)).collect();
        cylinders.push(Cylinder {
            bottom: bottom.clone(),
            top,
            width,
            height,
            twist: Vec2::zero(),
            bottom_offsets: offsets(bottom, &hol),
            top_offsets,
        });
    }
    cylinders.sort_by(|x, y| {
        y.height
            .cmp(&x.height)
            .then_with(|| y.width.norm2().cmp(&x.width.norm2()))
            .then_with(|| x.bottom.iter().min().cmp(&y.bottom.iter().min()))
    });
    let mut area = Fe::zero();
    for c in &cylinders {
        area += &c.area();
    }
    if area != s.area() {
        return Err(Error::Internal(format!("cylinder areas sum to {area}, surface area is {}", s.area())));
    }
    apply_marking(&mut cylinders, marking)?;
    Ok(PeriodicDirectionData { direction: theta.clone(), saddles, cylinders, n0 })
}

/// `decompose` with the default labeling and step bound.
pub fn decompose_default(s: &TranslationSurface, theta: &Vec2, marking: &Marking, n0: i64) -> Result<PeriodicDirectionData> {
    decompose(s, theta, marking, n0, &Labeling::Auto, DEFAULT_MAX_STEPS)
}

/// Direction (1, slope).
pub fn slope_direction(slope: &Fe) -> Vec2 {
    Vec2::new(Fe::one(), slope.clone())
}

/// Projective normal form: divide by the last entry.
pub fn projectivize(v: &[Fe]) -> Option<Vec<Fe>> {
    let last = v.last()?;
    if last.is_zero() {
        return None;
    }
    Some(v.iter().map(|x| x / last).collect())
}

/// Whether two vectors are proportional, tested through all 2×2 minors.
pub fn projectively_equal(a: &[Fe], b: &[Fe]) -> bool {
    a.len() == b.len()
        && a.iter().any(|x| !x.is_zero())
        && b.iter().any(|x| !x.is_zero())
        && (0..a.len()).all(|i| (i + 1..a.len()).all(|j| &a[i] * &b[j] == &a[j] * &b[i]))
}

#[cfg(test)]
mod tests;
