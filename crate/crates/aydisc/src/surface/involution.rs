//! Affine automorphisms with derivative −Id, found through a periodic direction.
//!
//! In a completely periodic direction such a map sends each cylinder to one of
//! equal width and height by s ↦ c − s along the core and height ↦ h − height,
//! exchanging bottoms and tops. The search tries every constant c allowed by
//! the first bottom saddle.

use std::collections::BTreeMap;

use super::{TranslationSurface, Vec2};
use crate::numfield::Fe;
use crate::periodic::{decompose, Labeling, Marking, PeriodicDirectionData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Involution {
    pub exists: bool,
    pub fixed_points: usize,
    /// Direction in which the search was decided.
    pub direction: Option<Vec2>,
}

const SEARCH_STEPS: usize = 400;

fn congruent(x: &Fe, y: &Fe) -> bool {
    (x - y).fract().is_zero()
}

/// Candidate directions: polygon edges, then chords between singular vertices.
fn candidate_directions(s: &TranslationSurface) -> Vec<Vec2> {
    let mut out: Vec<Vec2> = Vec::new();
    let mut push = |v: Vec2| {
        let v = if v.x.is_negative() || (v.x.is_zero() && v.y.is_negative()) { -&v } else { v };
        if v.x.is_positive() && !out.iter().any(|u| u.is_parallel(&v)) {
            out.push(v);
        }
    };
    for poly in &s.polygons {
        for i in 0..poly.len() {
            push(poly.edge(i));
        }
    }
    for (p, poly) in s.polygons.iter().enumerate() {
        let n = poly.len();
        for i in 0..n {
            for j in i + 2..n {
                if s.is_singular((p, i)) && s.is_singular((p, j)) {
                    push(poly.vertex(j) - poly.vertex(i));
                }
            }
        }
    }
    out
}

pub fn find_involution(s: &TranslationSurface) -> Involution {
    for theta in candidate_directions(s) {
        if let Some(found) = search(s, &theta) {
            return found;
        }
    }
    Involution { exists: false, fixed_points: 0, direction: None }
}

/// Decides in direction θ; `exists: false` if θ is not detected periodic.
pub fn find_involution_in(s: &TranslationSurface, theta: &Vec2) -> Involution {
    search(s, theta).unwrap_or(Involution { exists: false, fixed_points: 0, direction: None })
}

fn search(s: &TranslationSurface, theta: &Vec2) -> Option<Involution> {
    let d = decompose(s, theta, &Marking::Smallest, 0, &Labeling::Ordered, SEARCH_STEPS).ok()?;
    let none = Involution { exists: false, fixed_points: 0, direction: Some(theta.clone()) };
    Some(match involution_in(&d) {
        Some(n) => Involution { exists: true, fixed_points: n, direction: Some(theta.clone()) },
        None => none,
    })
}

/// Cylinder pairing σ and the constant c of each cylinder, tried exhaustively.
fn involution_in(d: &PeriodicDirectionData) -> Option<usize> {
    let p = d.cylinders.len();
    let partners: Vec<Vec<usize>> = (0..p)
        .map(|i| {
            let a = &d.cylinders[i];
            (0..p).filter(|&j| d.cylinders[j].width == a.width && d.cylinders[j].height == a.height).collect()
        })
        .collect();
    let mut best = None;
    let mut sigma = vec![usize::MAX; p];
    assign(d, &partners, &mut sigma, 0, &mut best);
    best
}

fn assign(d: &PeriodicDirectionData, partners: &[Vec<usize>], sigma: &mut Vec<usize>, i: usize, best: &mut Option<usize>) {
    if best.is_some() {
        return;
    }
    if i == sigma.len() {
        *best = check_sigma(d, sigma);
        return;
    }
    if sigma[i] != usize::MAX {
        assign(d, partners, sigma, i + 1, best);
        return;
    }
    for &j in &partners[i] {
        if sigma[j] != usize::MAX {
            continue;
        }
        sigma[i] = j;
        sigma[j] = i;
        assign(d, partners, sigma, i + 1, best);
        sigma[i] = usize::MAX;
        sigma[j] = usize::MAX;
    }
}

/// ρ on the bottom saddles of cylinder i for the constant c, if it is consistent.
fn rho_for(d: &PeriodicDirectionData, i: usize, j: usize, c: &Fe) -> Option<Vec<(usize, usize)>> {
    let (ci, cj) = (&d.cylinders[i], &d.cylinders[j]);
    let len = |l: usize| d.saddles[l - 1].holonomy.ratio_to(&ci.width).expect("parallel");
    let mut out = Vec::new();
    for &a in &ci.bottom {
        let target = c - &ci.bottom_position(a)?;
        let b = cj.top.iter().copied().find(|&b| {
            d.saddles[b - 1].holonomy == d.saddles[a - 1].holonomy
                && congruent(&(&cj.top_position(b).unwrap() + &len(b)), &target)
        })?;
        out.push((a, b));
    }
    Some(out)
}

fn check_sigma(d: &PeriodicDirectionData, sigma: &[usize]) -> Option<usize> {
    let p = sigma.len();
    // Constants per cylinder; a pair i ↔ j shares one constant.
    let options: Vec<Vec<Fe>> = (0..p)
        .map(|i| {
            let (ci, cj) = (&d.cylinders[i], &d.cylinders[sigma[i]]);
            let a1 = ci.bottom[0];
            let len = |l: usize| d.saddles[l - 1].holonomy.ratio_to(&ci.width).expect("parallel");
            cj.top
                .iter()
                .filter(|&&b| d.saddles[b - 1].holonomy == d.saddles[a1 - 1].holonomy)
                .map(|&b| (&(&cj.top_position(b).unwrap() + &len(b)) + &ci.bottom_position(a1).unwrap()).fract())
                .collect()
        })
        .collect();
    let mut cs: Vec<Option<Fe>> = vec![None; p];
    try_constants(d, sigma, &options, &mut cs, 0)
}

fn try_constants(
    d: &PeriodicDirectionData,
    sigma: &[usize],
    options: &[Vec<Fe>],
    cs: &mut Vec<Option<Fe>>,
    i: usize,
) -> Option<usize> {
    if i == sigma.len() {
        return evaluate(d, sigma, cs);
    }
    if cs[i].is_some() {
        return try_constants(d, sigma, options, cs, i + 1);
    }
    for c in &options[i] {
        let j = sigma[i];
        cs[i] = Some(c.clone());
        cs[j] = Some(c.clone());
        if let Some(n) = try_constants(d, sigma, options, cs, i + 1) {
            return Some(n);
        }
        cs[i] = None;
        cs[j] = None;
    }
    None
}

fn evaluate(d: &PeriodicDirectionData, sigma: &[usize], cs: &[Option<Fe>]) -> Option<usize> {
    let k = d.saddles.len();
    let mut rho = vec![0; k];
    for i in 0..sigma.len() {
        for (a, b) in rho_for(d, i, sigma[i], cs[i].as_ref()?)? {
            rho[a - 1] = b;
        }
    }
    if (1..=k).any(|a| rho[rho[a - 1] - 1] != a) {
        return None;
    }
    let mut cone_map: BTreeMap<usize, usize> = BTreeMap::new();
    for a in 1..=k {
        let sa = &d.saddles[a - 1];
        let sb = &d.saddles[rho[a - 1] - 1];
        for (x, y) in [(sa.from_cone, sb.to_cone), (sa.to_cone, sb.from_cone)] {
            if *cone_map.entry(x).or_insert(y) != y {
                return None;
            }
        }
    }
    let invariant = (0..sigma.len()).filter(|&i| sigma[i] == i).count();
    let fixed_saddles = (1..=k).filter(|&a| rho[a - 1] == a).count();
    let fixed_cones = cone_map.iter().filter(|(x, y)| x == y).count();
    Some(2 * invariant + fixed_saddles + fixed_cones)
}

#[cfg(test)]
mod tests {
    use super::super::tests_support::unit_torus;
    use super::super::{build_ay, build_from_cylinders};
    use super::*;
    use crate::periodic::{decompose_default, slope_direction};

    #[test]
    fn ay_has_eight_fixed_points() {
        let f = find_involution(&build_ay());
        assert!(f.exists);
        assert_eq!(f.fixed_points, 8);
    }

    #[test]
    fn torus_has_four() {
        let f = find_involution(&unit_torus());
        assert_eq!((f.exists, f.fixed_points), (true, 4));
    }

    #[test]
    fn cylinder_rebuild_keeps_symmetry() {
        let theta = slope_direction(&Fe::from_ints(1, 0, -1));
        let d = decompose_default(&build_ay(), &theta, &Marking::preset("appendix-a1").unwrap(), 0).unwrap();
        let s = build_from_cylinders(&d.to_cylinder_spec()).unwrap();
        assert_eq!(find_involution_in(&s, &theta).fixed_points, 8);
    }

    /// Torus with three marked points stacked in equal horizontal cylinders.
    fn three_point_torus(twists: [Fe; 3]) -> TranslationSurface {
        use super::super::{CylinderSpec, CylinderSurfaceSpec};
        let cyl = |b: usize, t: usize, tw: &Fe| CylinderSpec {
            bottom: vec![b],
            top: vec![t],
            mark_bottom: b,
            mark_top: t,
            height: Fe::one(),
            twist: Vec2::new(tw.clone(), Fe::zero()),
        };
        let spec = CylinderSurfaceSpec {
            direction: Vec2::from_ints(1, 0),
            saddles: vec![Vec2::from_ints(1, 0); 3],
            cylinders: vec![cyl(1, 2, &twists[0]), cyl(2, 3, &twists[1]), cyl(3, 1, &twists[2])],
        };
        build_from_cylinders(&spec).unwrap()
    }

    #[test]
    fn perturbed_twist_breaks_symmetry() {
        let third = Fe::from_q(crate::numfield::qf(1, 3));
        let f = find_involution(&three_point_torus([Fe::zero(), third.clone(), third.clone()]));
        assert!(f.exists);
        let bumped = &third + &Fe::from_q(crate::numfield::qf(1, 7));
        let f = find_involution(&three_point_torus([Fe::zero(), bumped, third]));
        assert_eq!((f.exists, f.fixed_points), (false, 0));
    }
}
