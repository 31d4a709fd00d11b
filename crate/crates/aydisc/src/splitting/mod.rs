//! Splittings into two slit tori and two cylinders along four homologous
//! saddle connections, and the arithmetic around the resulting lattices.

mod cut;
mod lattice;
mod lie;
mod twisted;

pub use lattice::{ratner_hypotheses, sqrt_extension_distinct, sqrt_fields_distinct_over_q, z_basis, Lattice, RatnerReport};
pub use lie::{lie_bracket_checks, LieCheck};
pub use twisted::{
    build_twisted_family, eta_jacobian_check, eta_jacobian_check_with, twisted_instance_checks, EtaReport, SymVec,
    TwistedFamily, TwistedReport,
};

use serde_json::{json, Value};

use crate::numfield::Fe;
use crate::periodic::{decompose_default, slope_direction, trace_saddle_connections, Labeling, Marking, SaddleConnection};
use crate::polyalg::{eisenstein_check, factorize, IrreducibilityCertificate, RationalPolynomial};
use crate::surface::{build_ay, Matrix2, SvgOverlay, TranslationSurface, Vec2};
use crate::{Error, Result};

pub const DEFAULT_MAX_STEPS: usize = 2048;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitCylinder {
    /// Indices (1-based, into `saddles`) of the two bounding connections.
    pub boundary: [usize; 2],
    /// Lattice of the torus obtained by gluing the two boundary circles.
    pub lattice: Lattice,
    pub area: Fe,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitTorus {
    /// Indices of the two slit sides that are glued back together.
    pub slits: [usize; 2],
    pub lattice: Lattice,
    pub area: Fe,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Splitting2T2C {
    pub direction: Vec2,
    /// β₁..β₄: β₁, β₂ bound T₁; β₂, β₃ bound C₁; β₃, β₄ bound T₂; β₄, β₁ bound C₂.
    pub saddles: Vec<SaddleConnection>,
    pub cylinders: [SplitCylinder; 2],
    /// T₁ is the torus of larger area.
    pub tori: [SplitTorus; 2],
    pub surface_area: Fe,
}

enum Kind {
    Cylinder,
    Torus,
}

pub fn split_2t2c(s: &TranslationSurface, xi: &Vec2, max_steps: usize) -> Result<Splitting2T2C> {
    let bad = |m: String| Error::NotA2T2CDirection(m);
    let (conns, total) = trace_saddle_connections(s, xi, max_steps, &Labeling::Ordered)?;
    if conns.len() != 4 || conns.len() == total {
        return Err(bad(format!("{} of {total} separatrices are saddle connections", conns.len())));
    }
    if conns.iter().any(|c| c.holonomy != conns[0].holonomy) {
        return Err(bad("saddle connections are not homologous".into()));
    }
    let beta = conns[0].holonomy.clone();
    let cut = cut::cut_along(s, &conns)?;
    if cut.components.len() != 4 {
        return Err(bad(format!("{} components after cutting", cut.components.len())));
    }
    let mut parts = Vec::new();
    for c in &cut.components {
        let ends: Vec<usize> = c.sides.iter().map(|((k, _), _)| *k).collect();
        if ends.len() != 2 || ends[0] == ends[1] {
            return Err(bad("a component is not bounded by two distinct connections".into()));
        }
        let kind = match c.periods.as_slice() {
            [p] if p.is_parallel(&beta) => Kind::Cylinder,
            [_, _] => Kind::Torus,
            _ => return Err(bad("a component is neither a cylinder nor a slit torus".into())),
        };
        parts.push((kind, [ends[0], ends[1]], c.reglued()?, c.area.clone()));
    }
    let area_sum = parts.iter().fold(Fe::zero(), |acc, p| &acc + &p.3);
    if area_sum != s.area() {
        return Err(Error::Internal("component areas do not add up".into()));
    }
    let (mut cyl, mut tor): (Vec<_>, Vec<_>) = parts.into_iter().partition(|p| matches!(p.0, Kind::Cylinder));
    if cyl.len() != 2 || tor.len() != 2 {
        return Err(bad(format!("{} cylinders and {} tori", cyl.len(), tor.len())));
    }
    tor.sort_by(|a, b| b.3.cmp(&a.3));
    // C₁: the cylinder meeting T₁ in the connection of smaller trace index.
    let t1 = tor[0].1;
    let meets = |c: &[usize; 2], k: usize| c.contains(&k);
    let b2 = *t1.iter().min().unwrap();
    let b1 = *t1.iter().max().unwrap();
    if !meets(&cyl[0].1, b2) {
        cyl.swap(0, 1);
    }
    let other = |pair: &[usize; 2], k: usize| if pair[0] == k { pair[1] } else { pair[0] };
    let b3 = other(&cyl[0].1, b2);
    let b4 = other(&cyl[1].1, b1);
    let chain_ok = meets(&cyl[0].1, b2) && meets(&cyl[1].1, b1) && meets(&tor[1].1, b3) && meets(&tor[1].1, b4);
    if !chain_ok || b3 == b4 {
        return Err(bad("pieces are not arranged cyclically".into()));
    }
    if cyl[0].3 != cyl[1].3 {
        return Err(bad("the two cylinders have different areas".into()));
    }
    let order = [b1, b2, b3, b4];
    let idx = |k: usize| order.iter().position(|&o| o == k).unwrap() + 1;
    let relabel = |p: [usize; 2]| {
        let mut v = [idx(p[0]), idx(p[1])];
        v.sort();
        v
    };
    let mk_cyl = |p: &(Kind, [usize; 2], Lattice, Fe)| SplitCylinder { boundary: relabel(p.1), lattice: p.2.clone(), area: p.3.clone() };
    let mk_tor = |p: &(Kind, [usize; 2], Lattice, Fe)| SplitTorus { slits: relabel(p.1), lattice: p.2.clone(), area: p.3.clone() };
    Ok(Splitting2T2C {
        direction: xi.clone(),
        saddles: order.iter().map(|&k| conns[k].clone()).collect(),
        cylinders: [mk_cyl(&cyl[0]), mk_cyl(&cyl[1])],
        tori: [mk_tor(&tor[0]), mk_tor(&tor[1])],
        surface_area: s.area(),
    })
}

impl Splitting2T2C {
    /// Normalized twists c/a of the two torus lattices.
    pub fn torus_twists(&self) -> Result<[Fe; 2]> {
        Ok([self.tori[0].lattice.normalized_twist()?, self.tori[1].lattice.normalized_twist()?])
    }

    pub fn overlay(&self) -> SvgOverlay {
        let mut o = SvgOverlay::default();
        for (i, c) in self.saddles.iter().enumerate() {
            let segs = c.segments.iter().map(|s| (s.from.clone(), s.to.clone())).collect();
            o.connections.push((format!("beta{}", i + 1), segs));
        }
        o
    }

    pub fn to_json(&self) -> Value {
        let v = |x: &Vec2| json!([x.x.to_string(), x.y.to_string()]);
        let lat = |l: &Lattice| json!([v(&l.g1), v(&l.g2)]);
        let twists = self.torus_twists().ok();
        json!({
            "direction": v(&self.direction),
            "beta": v(&self.saddles[0].holonomy),
            "surface_area": self.surface_area.to_string(),
            "cylinders": self.cylinders.iter().map(|c| json!({
                "boundary": c.boundary, "area": c.area.to_string(), "lattice": lat(&c.lattice),
            })).collect::<Vec<_>>(),
            "tori": self.tori.iter().enumerate().map(|(i, t)| json!({
                "slits": t.slits, "area": t.area.to_string(), "lattice": lat(&t.lattice),
                "normalized_twist": twists.as_ref().map(|w| w[i].to_string()),
            })).collect::<Vec<_>>(),
        })
    }
}

/// The AY surface with the 2T2C direction horizontal and θ = 1 − α² vertical.
#[derive(Clone, Debug)]
pub struct AdjustedSurface {
    pub surface: TranslationSurface,
    /// Linear map from AY coordinates.
    pub matrix: Matrix2,
    /// Image of γ₂.
    pub gamma2: Vec2,
    pub beta: Vec2,
    /// Vertical lengths |γ′₂|, |γ′₃|, |γ′₆|.
    pub g2: Fe,
    pub g3: Fe,
    pub g6: Fe,
    /// Crossing vectors (bottom mark to top mark) of the small and medium θ-cylinders.
    pub h_s: Vec2,
    pub h_m: Vec2,
}

pub fn ay_xi() -> Vec2 {
    slope_direction(&Fe::from_ints(0, 1, 1))
}

pub fn ay_theta() -> Vec2 {
    slope_direction(&Fe::from_ints(1, 0, -1))
}

/// β ↦ (1, 0) and γ₂ ↦ (0, ±1), the sign chosen to keep the orientation.
pub fn adjusted_ay() -> Result<AdjustedSurface> {
    let ay = build_ay();
    let split = split_2t2c(&ay, &ay_xi(), DEFAULT_MAX_STEPS)?;
    let d = decompose_default(&ay, &ay_theta(), &Marking::preset("appendix-a1")?, 0)?;
    let beta = split.saddles[0].holonomy.clone();
    let g2 = d.saddles[1].holonomy.clone();
    let frame = Matrix2::from_columns(&beta, &g2);
    let frame = if frame.det().is_negative() { Matrix2::from_columns(&beta, &-&g2) } else { frame };
    let m = frame.inv()?;
    let surface = ay.apply_matrix(&m)?;
    let vlen = |l: usize| m.apply(&d.saddles[l - 1].holonomy).y.abs();
    let crossing = |i: usize| {
        let c = &d.cylinders[i];
        m.apply(&(&Vec2::new(Fe::zero(), c.height.clone()) + &c.twist))
    };
    Ok(AdjustedSurface {
        surface,
        gamma2: m.apply(&g2),
        beta: m.apply(&beta),
        g2: vlen(2),
        g3: vlen(3),
        g6: vlen(6),
        h_s: crossing(2),
        h_m: crossing(1),
        matrix: m,
    })
}

/// Certificates for Q(X) = X⁶ + X⁴ + X² − 1 and S(X) = X⁶ − 5X⁴ + 19X² − 7.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCertificates {
    pub q: RationalPolynomial,
    pub q_eisenstein_2_shift_1: bool,
    pub s: RationalPolynomial,
    pub s_certificate: Option<IrreducibilityCertificate>,
}

pub fn extension_certificates() -> Result<ExtensionCertificates> {
    let q = crate::polyalg::minpoly_of_sqrt(&Fe::alpha())?;
    let s = crate::polyalg::minpoly_of_sqrt(&Fe::from_ints(1, 0, -2))?;
    let f = factorize(&s);
    Ok(ExtensionCertificates {
        q_eisenstein_2_shift_1: eisenstein_check(&q, 2, 1)?,
        s_certificate: f.is_irreducible().then(|| f.factors[0].certificate.clone()),
        q,
        s,
    })
}

#[cfg(test)]
mod tests;
