//! Translation surfaces as convex polygons in ℚ(α)² glued by translations.

mod ay;
mod cylinders;
mod geometry;
mod involution;
mod io;
pub(crate) use io::{fe_from_json, vec_from_json};
mod stratum;

use std::collections::{BTreeMap, BTreeSet};

pub use ay::build_ay;
pub use cylinders::{build_from_cylinders, CylinderSpec, CylinderSurfaceSpec};
pub use geometry::{Matrix2, Vec2};
pub use involution::{find_involution, find_involution_in, Involution};
pub use io::SvgOverlay;
pub use stratum::{spin_parity, stratum_dim, StratumSignature};

use crate::numfield::Fe;
use crate::{Error, Result};

/// (polygon, vertex index); the corner at that vertex.
pub type Corner = (usize, usize);
/// (polygon, edge index); edge i runs from vertex i to vertex i+1.
pub type Edge = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon {
    pub vertices: Vec<Vec2>,
}

impl Polygon {
    pub fn new(vertices: Vec<Vec2>) -> Self {
        Self { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn vertex(&self, i: usize) -> &Vec2 {
        &self.vertices[i % self.len()]
    }

    pub fn edge(&self, i: usize) -> Vec2 {
        self.vertex(i + 1) - self.vertex(i)
    }

    pub fn area(&self) -> Fe {
        let n = self.len();
        let mut acc = Fe::zero();
        for i in 0..n {
            acc += &self.vertex(i).cross(self.vertex(i + 1));
        }
        acc.scale(&crate::numfield::qf(1, 2))
    }

    /// Convex with counterclockwise orientation; straight angles allowed.
    pub fn is_convex(&self) -> bool {
        let n = self.len();
        n >= 3
            && (0..n).all(|i| !self.edge(i).is_zero() && self.edge(i).cross(&self.edge(i + 1)).sign() >= 0)
            && self.area().is_positive()
    }
}

/// An equivalence class of polygon corners (a point of the surface).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConePoint {
    /// Corners in counterclockwise order around the point.
    pub corners: Vec<Corner>,
    /// Total angle divided by 2π.
    pub angle: usize,
    /// Whether the point is a cone point of excess angle or explicitly marked.
    pub singular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslationSurface {
    pub polygons: Vec<Polygon>,
    /// pairing[p][i] is the edge glued to edge (p, i).
    pub pairing: Vec<Vec<Edge>>,
    /// Corners whose points count as singular regardless of angle.
    pub marked: BTreeSet<Corner>,
    /// Named points, each given by all corners realizing it in the polygon picture.
    pub labels: BTreeMap<String, Vec<Corner>>,
    points: Vec<ConePoint>,
    corner_point: Vec<Vec<usize>>,
}

impl TranslationSurface {
    pub fn new(
        polygons: Vec<Polygon>,
        pairing: Vec<Vec<Edge>>,
        marked: BTreeSet<Corner>,
        labels: BTreeMap<String, Vec<Corner>>,
    ) -> Result<Self> {
        let mut s = Self { polygons, pairing, marked, labels, points: Vec::new(), corner_point: Vec::new() };
        s.check_gluing()?;
        s.compute_points();
        s.check_gauss_bonnet()?;
        Ok(s)
    }

    fn check_gluing(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Precondition(m));
        if self.pairing.len() != self.polygons.len() {
            return bad("pairing table size".into());
        }
        for (p, poly) in self.polygons.iter().enumerate() {
            if !poly.is_convex() {
                return bad(format!("polygon {p} is not convex and counterclockwise"));
            }
            if self.pairing[p].len() != poly.len() {
                return bad(format!("pairing of polygon {p} has wrong length"));
            }
            for i in 0..poly.len() {
                let (q, k) = self.pairing[p][i];
                if q >= self.polygons.len() || k >= self.polygons[q].len() || self.pairing[q][k] != (p, i) || (q, k) == (p, i) {
                    return bad(format!("edge ({p},{i}) is not paired by an involution"));
                }
                if self.polygons[q].edge(k) != -&poly.edge(i) {
                    return bad(format!("edge ({p},{i}) and ({q},{k}) are not opposite translates"));
                }
            }
        }
        for &(p, i) in self.marked.iter().chain(self.labels.values().flatten()) {
            if p >= self.polygons.len() || i >= self.polygons[p].len() {
                return bad(format!("corner ({p},{i}) does not exist"));
            }
        }
        Ok(())
    }

    fn compute_points(&mut self) {
        let mut corner_point: Vec<Vec<usize>> = self.polygons.iter().map(|p| vec![usize::MAX; p.len()]).collect();
        let mut points = Vec::new();
        let east = Vec2::from_ints(1, 0);
        for p in 0..self.polygons.len() {
            for i in 0..self.polygons[p].len() {
                if corner_point[p][i] != usize::MAX {
                    continue;
                }
                let mut corners = Vec::new();
                let mut c = (p, i);
                while corner_point[c.0][c.1] == usize::MAX {
                    corner_point[c.0][c.1] = points.len();
                    corners.push(c);
                    c = self.next_corner(c);
                }
                let angle = corners.iter().filter(|&&c| self.in_sector(c, &east)).count();
                let singular = angle != 1 || corners.iter().any(|c| self.marked.contains(c));
                points.push(ConePoint { corners, angle, singular });
            }
        }
        self.points = points;
        self.corner_point = corner_point;
    }

    fn check_gauss_bonnet(&self) -> Result<()> {
        let chi = self.euler_characteristic();
        let excess: i64 = self.points.iter().map(|pt| pt.angle as i64 - 1).sum();
        if chi % 2 != 0 || excess != -chi {
            return Err(Error::Precondition(format!("Gauss-Bonnet fails: chi {chi}, excess {excess}")));
        }
        Ok(())
    }

    pub fn euler_characteristic(&self) -> i64 {
        let e: usize = self.polygons.iter().map(Polygon::len).sum();
        self.points.len() as i64 - (e / 2) as i64 + self.polygons.len() as i64
    }

    pub fn genus(&self) -> i64 {
        (2 - self.euler_characteristic()) / 2
    }

    pub fn area(&self) -> Fe {
        let mut acc = Fe::zero();
        for p in &self.polygons {
            acc += &p.area();
        }
        acc
    }

    pub fn vertex(&self, c: Corner) -> &Vec2 {
        self.polygons[c.0].vertex(c.1)
    }

    pub fn edge_vector(&self, e: Edge) -> Vec2 {
        self.polygons[e.0].edge(e.1)
    }

    pub fn partner(&self, e: Edge) -> Edge {
        self.pairing[e.0][e.1]
    }

    /// The corner following `c` counterclockwise around its point.
    pub fn next_corner(&self, c: Corner) -> Corner {
        let n = self.polygons[c.0].len();
        self.partner((c.0, (c.1 + n - 1) % n))
    }

    /// The corner preceding `c` counterclockwise around its point.
    pub fn prev_corner(&self, c: Corner) -> Corner {
        let (q, k) = self.partner(c);
        (q, (k + 1) % self.polygons[q].len())
    }

    /// Whether direction d lies in the half-open sector [outgoing edge, reversed incoming edge).
    pub fn in_sector(&self, c: Corner, d: &Vec2) -> bool {
        let poly = &self.polygons[c.0];
        let n = poly.len();
        let u1 = poly.edge(c.1);
        let u2 = -&poly.edge(c.1 + n - 1);
        geometry::in_half_open_sector(&u1, &u2, d)
    }

    pub fn points(&self) -> &[ConePoint] {
        &self.points
    }

    pub fn point_of(&self, c: Corner) -> usize {
        self.corner_point[c.0][c.1]
    }

    pub fn is_singular(&self, c: Corner) -> bool {
        self.points[self.point_of(c)].singular
    }

    /// Indices of singular points ordered by their lexicographically smallest vertex.
    pub fn singular_points(&self) -> Vec<usize> {
        let mut idx: Vec<usize> = (0..self.points.len()).filter(|&i| self.points[i].singular).collect();
        idx.sort_by_key(|&i| self.smallest_vertex(i));
        idx
    }

    pub fn smallest_vertex(&self, point: usize) -> Vec2 {
        self.points[point].corners.iter().map(|&c| self.vertex(c).clone()).min().expect("nonempty class")
    }

    /// Cone angles (in units of 2π) of the singular points, in `singular_points` order.
    pub fn cone_angles(&self) -> Vec<usize> {
        self.singular_points().iter().map(|&i| self.points[i].angle).collect()
    }

    /// The image under a linear map. Orientation-reversing maps reverse every polygon.
    pub fn apply_matrix(&self, m: &Matrix2) -> Result<Self> {
        let det = m.det();
        if det.is_zero() {
            return Err(Error::SingularMatrix);
        }
        if det.is_positive() {
            let polygons = self
                .polygons
                .iter()
                .map(|p| Polygon::new(p.vertices.iter().map(|v| m.apply(v)).collect()))
                .collect();
            return Self::new(polygons, self.pairing.clone(), self.marked.clone(), self.labels.clone());
        }
        // Reversal: new vertex j is old vertex −j, new edge j is old edge −j−1.
        let lens: Vec<usize> = self.polygons.iter().map(Polygon::len).collect();
        let vmap = |(p, i): Corner| (p, (lens[p] - i) % lens[p]);
        let emap = |(p, i): Edge| (p, lens[p] - 1 - i);
        let polygons = self
            .polygons
            .iter()
            .map(|p| {
                let n = p.len();
                Polygon::new((0..n).map(|j| m.apply(p.vertex((n - j) % n))).collect())
            })
            .collect();
        let mut pairing: Vec<Vec<Edge>> = lens.iter().map(|&n| vec![(0, 0); n]).collect();
        for (p, row) in self.pairing.iter().enumerate() {
            for (i, &e) in row.iter().enumerate() {
                let (np, ni) = emap((p, i));
                pairing[np][ni] = emap(e);
            }
        }
        let marked = self.marked.iter().map(|&c| vmap(c)).collect();
        let labels = self.labels.iter().map(|(k, v)| (k.clone(), v.iter().map(|&c| vmap(c)).collect())).collect();
        Self::new(polygons, pairing, marked, labels)
    }

    /// Vertices of all polygons translated by one vector per polygon.
    pub fn translate_polygons(&self, shifts: &[Vec2]) -> Result<Self> {
        let polygons = self
            .polygons
            .iter()
            .zip(shifts)
            .map(|(p, s)| Polygon::new(p.vertices.iter().map(|v| v + s).collect()))
            .collect();
        Self::new(polygons, self.pairing.clone(), self.marked.clone(), self.labels.clone())
    }

    pub fn to_json(&self) -> serde_json::Value {
        io::surface_to_json(self)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        io::surface_from_json(v)
    }

    pub fn to_svg(&self, overlay: &SvgOverlay) -> String {
        io::surface_to_svg(self, overlay)
    }
}

#[cfg(test)]
pub(crate) mod tests_support {
    use super::*;

    pub(crate) fn unit_torus() -> TranslationSurface {
        let sq = Polygon::new(vec![
            Vec2::from_ints(0, 0),
            Vec2::from_ints(1, 0),
            Vec2::from_ints(1, 1),
            Vec2::from_ints(0, 1),
        ]);
        let marked = [(0, 0)].into_iter().collect();
        TranslationSurface::new(vec![sq], vec![vec![(0, 2), (0, 3), (0, 0), (0, 1)]], marked, BTreeMap::new())
            .unwrap()
    }
}
