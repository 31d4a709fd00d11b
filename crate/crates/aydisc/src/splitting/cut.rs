//! Cutting a surface along saddle connections and developing the components.

use std::collections::VecDeque;

use crate::numfield::Fe;
use crate::periodic::SaddleConnection;
use crate::surface::{TranslationSurface, Vec2};
use crate::{Error, Result};

use super::lattice::{z_basis, Lattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Tag {
    /// Part of edge i of the original polygon.
    Orig(usize),
    /// Segment `seg` of connection `conn`; the piece lies to its left iff `left`.
    Chord { conn: usize, seg: usize, left: bool },
}

#[derive(Clone, Debug)]
pub(crate) struct Piece {
    pub polygon: usize,
    pub verts: Vec<Vec2>,
    pub tags: Vec<Tag>,
}

impl Piece {
    fn area(&self) -> Fe {
        let n = self.verts.len();
        let mut acc = Fe::zero();
        for i in 0..n {
            acc += &self.verts[i].cross(&self.verts[(i + 1) % n]);
        }
        acc.scale(&crate::numfield::qf(1, 2))
    }

    /// Strict interior test by crossing number.
    fn contains(&self, pt: &Vec2) -> bool {
        let n = self.verts.len();
        let mut inside = false;
        for i in 0..n {
            let (a, b) = (&self.verts[i], &self.verts[(i + 1) % n]);
            if (a.y > pt.y) != (b.y > pt.y) {
                // x-coordinate of the edge at height pt.y, compared without division.
                let lhs = &(&pt.x - &a.x) * &(&b.y - &a.y);
                let rhs = &(&b.x - &a.x) * &(&pt.y - &a.y);
                let right_of = if b.y > a.y { lhs < rhs } else { lhs > rhs };
                if right_of {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Index of the vertex at p, inserting it into the edge that contains it.
    fn insert(&mut self, p: &Vec2) -> Option<usize> {
        if let Some(i) = self.verts.iter().position(|v| v == p) {
            return Some(i);
        }
        let n = self.verts.len();
        for i in 0..n {
            let (a, b) = (&self.verts[i], &self.verts[(i + 1) % n]);
            let (e, r) = (b - a, p - a);
            if e.cross(&r).is_zero() && r.dot(&e).is_positive() && r.dot(&e) < e.norm2() {
                self.verts.insert(i + 1, p.clone());
                let t = self.tags[i];
                self.tags.insert(i + 1, t);
                return Some(i + 1);
            }
        }
        None
    }
}

pub(crate) struct Component {
    pub area: Fe,
    /// Periods of the cut component.
    pub periods: Vec<Vec2>,
    /// Chord sides on the boundary: (connection, left), developed start point.
    pub sides: Vec<((usize, bool), Vec2)>,
}

pub(crate) struct Cut {
    pub components: Vec<Component>,
}

pub(crate) fn cut_along(s: &TranslationSurface, conns: &[SaddleConnection]) -> Result<Cut> {
    let mut pieces: Vec<Piece> = s
        .polygons
        .iter()
        .enumerate()
        .map(|(p, poly)| Piece { polygon: p, verts: poly.vertices.clone(), tags: (0..poly.len()).map(Tag::Orig).collect() })
        .collect();
    let half = Fe::from_q(crate::numfield::qf(1, 2));
    for (k, c) in conns.iter().enumerate() {
        for (j, seg) in c.segments.iter().enumerate() {
            let mid = (&seg.from + &seg.to).scale(&half);
            let idx = (0..pieces.len())
                .find(|&i| pieces[i].polygon == seg.polygon && pieces[i].contains(&mid))
                .ok_or_else(|| Error::NotA2T2CDirection("connection runs along a polygon edge".into()))?;
            let mut pc = pieces.swap_remove(idx);
            let off = || Error::Internal("segment endpoint off the polygon boundary".into());
            pc.insert(&seg.from).ok_or_else(off)?;
            let ib = pc.insert(&seg.to).ok_or_else(off)?;
            let ia = pc.verts.iter().position(|v| *v == seg.from).expect("inserted");
            let n = pc.verts.len();
            let walk = |from: usize, to: usize| -> (Vec<Vec2>, Vec<Tag>) {
                let mut vs = Vec::new();
                let mut ts = Vec::new();
                let mut i = from;
                while i != to {
                    vs.push(pc.verts[i].clone());
                    ts.push(pc.tags[i]);
                    i = (i + 1) % n;
                }
                vs.push(pc.verts[to].clone());
                (vs, ts)
            };
            // A → B along the boundary, then back along the chord B → A: right of the chord.
            let (v1, mut t1) = walk(ia, ib);
            t1.push(Tag::Chord { conn: k, seg: j, left: false });
            let (v2, mut t2) = walk(ib, ia);
            t2.push(Tag::Chord { conn: k, seg: j, left: true });
            debug_assert!(v1.len() >= 3 && v2.len() >= 3);
            pieces.push(Piece { polygon: pc.polygon, verts: v1, tags: t1 });
            pieces.push(Piece { polygon: pc.polygon, verts: v2, tags: t2 });
        }
    }
    pieces.sort_by(|a, b| (a.polygon, &a.verts).cmp(&(b.polygon, &b.verts)));

    // Adjacency across original edges: (piece, piece, shift) with x ↦ x + shift.
    let mut adj: Vec<Vec<(usize, Vec2)>> = vec![Vec::new(); pieces.len()];
    for (a, pa) in pieces.iter().enumerate() {
        for (ea, ta) in pa.tags.iter().enumerate() {
            let Tag::Orig(i) = *ta else { continue };
            let (q, k) = s.partner((pa.polygon, i));
            let shift = s.vertex((q, (k + 1) % s.polygons[q].len())) - s.vertex((pa.polygon, i));
            let dir = s.edge_vector((pa.polygon, i));
            let sa = &pa.verts[ea];
            let sb = &pa.verts[(ea + 1) % pa.verts.len()];
            let (lo, hi) = (sa.dot(&dir), sb.dot(&dir));
            for (b, pb) in pieces.iter().enumerate() {
                if pb.polygon != q {
                    continue;
                }
                for (eb, tb) in pb.tags.iter().enumerate() {
                    if *tb != Tag::Orig(k) {
                        continue;
                    }
                    let c = &pb.verts[eb] - &shift;
                    let d = &pb.verts[(eb + 1) % pb.verts.len()] - &shift;
                    let (lo2, hi2) = (d.dot(&dir), c.dot(&dir));
                    let l = if lo > lo2 { &lo } else { &lo2 };
                    let h = if hi < hi2 { &hi } else { &hi2 };
                    if l < h {
                        adj[a].push((b, shift.clone()));
                    }
                }
            }
        }
    }

    let mut comp_of = vec![usize::MAX; pieces.len()];
    let mut offset = vec![Vec2::zero(); pieces.len()];
    let mut components = Vec::new();
    for root in 0..pieces.len() {
        if comp_of[root] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = Vec::new();
        let mut queue = VecDeque::from([root]);
        comp_of[root] = id;
        while let Some(a) = queue.pop_front() {
            members.push(a);
            for (b, shift) in &adj[a] {
                if comp_of[*b] == usize::MAX {
                    comp_of[*b] = id;
                    offset[*b] = &offset[a] - shift;
                    queue.push_back(*b);
                }
            }
        }
        let mut periods = Vec::new();
        let mut area = Fe::zero();
        let mut sides = Vec::new();
        for &a in &members {
            area += &pieces[a].area();
            for (b, shift) in &adj[a] {
                let per = &(&offset[a] - shift) - &offset[*b];
                if !per.is_zero() {
                    periods.push(per);
                }
            }
            for t in &pieces[a].tags {
                if let Tag::Chord { conn, seg: 0, left } = *t {
                    sides.push(((conn, left), &conns[conn].segments[0].from + &offset[a]));
                }
            }
        }
        sides.sort_by_key(|x| x.0);
        components.push(Component { area, periods: z_basis(&periods), sides });
    }
    Ok(Cut { components })
}

impl Component {
    /// Lattice of the closed torus obtained by gluing the two boundary sides.
    pub fn reglued(&self) -> Result<Lattice> {
        let [(_, a), (_, b)] = self.sides.as_slice() else {
            return Err(Error::NotA2T2CDirection(format!("component with {} boundary sides", self.sides.len())));
        };
        let mut ps = self.periods.clone();
        ps.push(b - a);
        Lattice::from_periods(&ps)
    }
}
