//! The genus-3 Arnoux-Yoccoz surface.
//!
//! Three rectangles side by side over [0, 2]: widths 2α, 2α², 2α³ and heights
//! 2, 2α + 2α², 2α. Vertical slits rise from the bottom at α − α³, α + α² and
//! 1 + α. The top is glued to the bottom by the interval exchange
//! f(x) = S(x) + 1 mod 2, where S swaps the two halves of each rectangle base.
//!
//! Vertical boundary pieces are glued by translation. Right-hand sides
//! (the region lies to their left) are concatenated in the order
//! F1, S3L, F2, S1L, F3, S2L and matched by length against left-hand sides
//! taken in the order S1R, S2R, E0, S3R:
//!   F1  = x = 2α,        y ∈ [2α + 2α², 2]
//!   F2  = x = 2α + 2α²,  y ∈ [2α, 2α + 2α²]
//!   F3  = x = 2,         y ∈ [0, 2α]
//!   E0  = x = 0,         y ∈ [0, 2]
//!   SkL, SkR = left and right sides of slit k.
//! This reproduces both tables of cylinder data that pin the construction.
//! The polygons are the vertical strips between consecutive cut abscissae,
//! with edges subdivided wherever a gluing needs a vertex.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::{Polygon, TranslationSurface, Vec2};
use crate::numfield::Fe;

fn fe(a: i64, b: i64, c: i64) -> Fe {
    Fe::from_ints(a, b, c)
}

struct Layout {
    /// Rectangle (start, height), by increasing start.
    rects: Vec<(Fe, Fe, Fe)>,
    slits: Vec<(Fe, Fe)>,
}

impl Layout {
    fn new() -> Self {
        let a = Fe::alpha();
        let a2 = a.square();
        let a3 = a.pow(3);
        let a4 = a.pow(4);
        let two = Fe::int(2);
        let rects = vec![
            (Fe::zero(), &two * &a, two.clone()),
            (&two * &a, &two * &(&a + &a2), &two * &(&a + &a2)),
            (&two * &(&a + &a2), two.clone(), &two * &a),
        ];
        let slits = vec![(&a - &a3, &a + &a3), (&a + &a2, &Fe::one() + &a2), (&Fe::one() + &a, &a2 + &a4)];
        Self { rects, slits }
    }

    fn height(&self, x: &Fe) -> Fe {
        self.rects.iter().find(|(s, e, _)| s <= x && x < e).map(|r| r.2.clone()).expect("x in [0,2)")
    }

    fn iet(&self, x: &Fe) -> Fe {
        let (s, e, _) = self.rects.iter().find(|(s, e, _)| s <= x && x < e).expect("x in [0,2)");
        let half = (e - s).scale(&crate::numfield::qf(1, 2));
        let swapped = if x < &(s + &half) { x + &half } else { x - &half };
        let y = swapped + Fe::one();
        if y >= Fe::int(2) {
            y - Fe::int(2)
        } else {
            y
        }
    }

    /// Breakpoints of the exchange: rectangle starts, midpoints and the preimage of 1.
    fn iet_breaks(&self) -> Vec<Fe> {
        let mut b: BTreeSet<Fe> = BTreeSet::new();
        for (s, e, _) in &self.rects {
            b.insert(s.clone());
            b.insert((s + e).scale(&crate::numfield::qf(1, 2)));
        }
        b.insert(fe(1, -1, 0));
        b.into_iter().collect()
    }
}

/// One vertical gluing: right side of strip `from` over [y0, y1] onto the left
/// side of strip `to` starting at height z0.
struct SideGlue {
    from: usize,
    y0: Fe,
    y1: Fe,
    to: usize,
    z0: Fe,
}

pub fn build_ay() -> TranslationSurface {
    let lay = Layout::new();
    let a = Fe::alpha();
    let two = Fe::int(2);
    let mut cuts: BTreeSet<Fe> = [Fe::zero(), two.clone()].into_iter().collect();
    for (s, _, _) in &lay.rects {
        cuts.insert(s.clone());
    }
    for (x, _) in &lay.slits {
        cuts.insert(x.clone());
    }
    let xs: Vec<Fe> = cuts.into_iter().collect();
    let ncol = xs.len() - 1;
    let heights: Vec<Fe> = (0..ncol).map(|i| lay.height(&xs[i])).collect();
    let strip_left_of = |x: &Fe| (0..ncol).find(|&i| &xs[i + 1] == x).expect("cut");
    let strip_right_of = |x: &Fe| (0..ncol).find(|&i| &xs[i] == x).expect("cut");
    let slit_height = |x: &Fe| lay.slits.iter().find(|(sx, _)| sx == x).map(|s| s.1.clone());

    let mut glues = Vec::new();
    for i in 0..ncol - 1 {
        let lo = slit_height(&xs[i + 1]).unwrap_or_else(Fe::zero);
        let hi = heights[i].clone().min(heights[i + 1].clone());
        if lo < hi {
            glues.push(SideGlue { from: i, y0: lo.clone(), y1: hi, to: i + 1, z0: lo });
        }
    }
    let a2 = a.square();
    let s = &lay.slits;
    let right_sides = [
        (&two * &a, &two * &(&a + &a2), two.clone()),
        (s[2].0.clone(), Fe::zero(), s[2].1.clone()),
        (&two * &(&a + &a2), &two * &a, &two * &(&a + &a2)),
        (s[0].0.clone(), Fe::zero(), s[0].1.clone()),
        (two.clone(), Fe::zero(), &two * &a),
        (s[1].0.clone(), Fe::zero(), s[1].1.clone()),
    ];
    let left_sides = [
        (s[0].0.clone(), Fe::zero(), s[0].1.clone()),
        (s[1].0.clone(), Fe::zero(), s[1].1.clone()),
        (Fe::zero(), Fe::zero(), two.clone()),
        (s[2].0.clone(), Fe::zero(), s[2].1.clone()),
    ];
    let cumulative = |sides: &[(Fe, Fe, Fe)]| {
        let mut acc = Fe::zero();
        let mut out = Vec::new();
        for (x, y0, y1) in sides {
            let len = y1 - y0;
            out.push((acc.clone(), &acc + &len, x.clone(), y0.clone()));
            acc = &acc + &len;
        }
        out
    };
    let cr = cumulative(&right_sides);
    let cl = cumulative(&left_sides);
    let marks: BTreeSet<Fe> = cr.iter().chain(cl.iter()).flat_map(|c| [c.0.clone(), c.1.clone()]).collect();
    let marks: Vec<Fe> = marks.into_iter().collect();
    for w in marks.windows(2) {
        let r = cr.iter().find(|c| c.0 <= w[0] && w[1] <= c.1).expect("right coverage");
        let l = cl.iter().find(|c| c.0 <= w[0] && w[1] <= c.1).expect("left coverage");
        glues.push(SideGlue {
            from: strip_left_of(&r.2),
            y0: &r.3 + &(&w[0] - &r.0),
            y1: &r.3 + &(&w[1] - &r.0),
            to: strip_right_of(&l.2),
            z0: &l.3 + &(&w[0] - &l.0),
        });
    }

    // Side subdivision points, closed under the gluings.
    let mut rpts: Vec<BTreeSet<Fe>> = heights.iter().map(|h| [Fe::zero(), h.clone()].into_iter().collect()).collect();
    let mut lpts = rpts.clone();
    for g in &glues {
        rpts[g.from].insert(g.y0.clone());
        rpts[g.from].insert(g.y1.clone());
        lpts[g.to].insert(g.z0.clone());
        lpts[g.to].insert(&g.z0 + &(&g.y1 - &g.y0));
    }
    loop {
        let mut changed = false;
        for g in &glues {
            let d = &g.z0 - &g.y0;
            let inner: Vec<Fe> = rpts[g.from].iter().filter(|y| &g.y0 < y && y < &&g.y1).cloned().collect();
            for y in inner {
                changed |= lpts[g.to].insert(&y + &d);
            }
            let z1 = &g.z0 + &(&g.y1 - &g.y0);
            let inner: Vec<Fe> = lpts[g.to].iter().filter(|z| &g.z0 < z && z < &&z1).cloned().collect();
            for z in inner {
                changed |= rpts[g.from].insert(&z - &d);
            }
        }
        if !changed {
            break;
        }
    }

    // Top pieces: split at exchange breakpoints and at preimages of the cuts.
    let breaks = lay.iet_breaks();
    let mut ends = breaks.clone();
    ends.push(two.clone());
    let shifts: Vec<Fe> = breaks.iter().map(|t| &lay.iet(t) - t).collect();
    let mut tops: BTreeSet<Fe> = xs.iter().cloned().collect();
    tops.extend(breaks.iter().cloned());
    for (i, sh) in shifts.iter().enumerate() {
        for y in &xs {
            let x = y - sh;
            if breaks[i] < x && x < ends[i + 1] {
                tops.insert(x);
            }
        }
    }
    let tops: Vec<Fe> = tops.into_iter().collect();
    let mut bottoms: BTreeSet<Fe> = xs.iter().cloned().collect();
    for t in &tops[..tops.len() - 1] {
        bottoms.insert(lay.iet(t));
    }

    let mut polygons = Vec::new();
    for i in 0..ncol {
        let (xl, xr, h) = (&xs[i], &xs[i + 1], &heights[i]);
        let mut vs = Vec::new();
        let bot: Vec<&Fe> = bottoms.iter().filter(|b| xl <= *b && *b <= xr).collect();
        for b in &bot[..bot.len() - 1] {
            vs.push(Vec2::new((*b).clone(), Fe::zero()));
        }
        let rp: Vec<&Fe> = rpts[i].iter().collect();
        for y in &rp[..rp.len() - 1] {
            vs.push(Vec2::new(xr.clone(), (*y).clone()));
        }
        let tp: Vec<&Fe> = tops.iter().filter(|t| xl <= *t && *t <= xr).rev().collect();
        for t in &tp[..tp.len() - 1] {
            vs.push(Vec2::new((*t).clone(), h.clone()));
        }
        let lp: Vec<&Fe> = lpts[i].iter().rev().collect();
        for y in &lp[..lp.len() - 1] {
            vs.push(Vec2::new(xl.clone(), (*y).clone()));
        }
        polygons.push(Polygon::new(vs));
    }

    let mut edge_at: HashMap<(usize, Vec2, Vec2), usize> = HashMap::new();
    for (p, poly) in polygons.iter().enumerate() {
        for k in 0..poly.len() {
            edge_at.insert((p, poly.vertex(k).clone(), poly.vertex(k + 1).clone()), k);
        }
    }
    let mut pairing: Vec<Vec<(usize, usize)>> = polygons.iter().map(|p| vec![(usize::MAX, 0); p.len()]).collect();
    for (p, poly) in polygons.iter().enumerate() {
        for k in 0..poly.len() {
            let (s, e) = (poly.vertex(k), poly.vertex(k + 1));
            let partner = if s.y.is_zero() && e.y.is_zero() {
                // Bottom edge: the top piece whose exchange image starts at s.
                let len = &e.x - &s.x;
                let t0 = tops[..tops.len() - 1].iter().find(|t| lay.iet(t) == s.x).expect("top piece");
                let t1 = t0 + &len;
                let q = (0..ncol).find(|&q| &xs[q] <= t0 && t1 <= xs[q + 1]).expect("strip");
                let hq = &heights[q];
                Some((q, Vec2::new(t1, hq.clone()), Vec2::new(t0.clone(), hq.clone())))
            } else if s.x == xs[p + 1] && e.x == xs[p + 1] {
                let g = glues.iter().find(|g| g.from == p && g.y0 <= s.y && e.y <= g.y1).expect("side glue");
                let d = &g.z0 - &g.y0;
                let xl = xs[g.to].clone();
                Some((g.to, Vec2::new(xl.clone(), &e.y + &d), Vec2::new(xl, &s.y + &d)))
            } else {
                None
            };
            if let Some((q, a, b)) = partner {
                let j = edge_at[&(q, a, b)];
                pairing[p][k] = (q, j);
                pairing[q][j] = (p, k);
            }
        }
    }

    let mut labels = BTreeMap::new();
    let named = [
        ("P1", Vec2::new(fe(-1, 2, 0), Fe::zero())),
        ("P2", Vec2::new(Fe::one(), Fe::zero())),
        ("P3", Vec2::new(fe(-1, 2, 2), Fe::zero())),
        ("P4", Vec2::new(s[0].0.clone(), s[0].1.clone())),
        ("P5", Vec2::new(s[1].0.clone(), s[1].1.clone())),
        ("P6", Vec2::new(s[2].0.clone(), s[2].1.clone())),
    ];
    for (name, pt) in named {
        let corners: Vec<(usize, usize)> = polygons
            .iter()
            .enumerate()
            .flat_map(|(p, poly)| (0..poly.len()).filter(|&k| poly.vertex(k) == &pt).map(move |k| (p, k)))
            .collect();
        labels.insert(name.to_string(), corners);
    }
    TranslationSurface::new(polygons, pairing, BTreeSet::new(), labels).expect("the construction is a valid surface")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_cone_points_of_angle_six_pi() {
        let s = build_ay();
        assert_eq!(s.cone_angles(), vec![3, 3]);
        assert_eq!(s.genus(), 3);
        assert_eq!(s.area(), fe(-4, 16, -4));
    }

    #[test]
    fn labels_sit_on_the_cone_points() {
        let s = build_ay();
        let sing = s.singular_points();
        for (name, corners) in &s.labels {
            assert!(!corners.is_empty(), "{name}");
            let pt = s.point_of(corners[0]);
            assert!(sing.contains(&pt), "{name}");
            assert!(corners.iter().all(|&c| s.point_of(c) == pt));
        }
        assert_eq!(s.point_of(s.labels["P1"][0]), s.point_of(s.labels["P3"][0]));
        assert_eq!(s.point_of(s.labels["P4"][0]), s.point_of(s.labels["P6"][0]));
        assert_ne!(s.point_of(s.labels["P1"][0]), s.point_of(s.labels["P4"][0]));
    }

    #[test]
    fn exchange_is_the_stated_permutation() {
        let lay = Layout::new();
        let breaks = lay.iet_breaks();
        let mut images: Vec<(Fe, usize)> = breaks.iter().enumerate().map(|(i, t)| (lay.iet(t), i)).collect();
        images.sort();
        let order: Vec<usize> = images.iter().map(|(_, j)| j + 1).collect();
        assert_eq!(order, vec![2, 5, 4, 7, 6, 3, 1]);
    }
}
