//! The family of twisted splittings Λ″ᵢ(u₁, u₂) and its area map.

use crate::numfield::Fe;
use crate::polyalg::{bivar_jacobian as jacobian, BivarPoly, BivarRatFunc};
use crate::surface::{Matrix2, Vec2};
use crate::{Error, Result};

use super::lattice::{ratner_hypotheses, Lattice, RatnerReport};
use super::AdjustedSurface;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymVec {
    pub x: BivarPoly,
    pub y: BivarPoly,
}

impl SymVec {
    fn constant(v: &Vec2) -> Self {
        SymVec { x: BivarPoly::constant(v.x.clone()), y: BivarPoly::constant(v.y.clone()) }
    }

    fn add(&self, o: &SymVec) -> SymVec {
        SymVec { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn cross(&self, o: &SymVec) -> BivarPoly {
        &(&self.x * &o.y) - &(&self.y * &o.x)
    }

    pub fn eval(&self, u1: &Fe, u2: &Fe) -> Vec2 {
        Vec2::new(self.x.eval(u1, u2), self.y.eval(u1, u2))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedFamily {
    pub g2: Fe,
    pub g3: Fe,
    pub g6: Fe,
    pub beta1: Fe,
    pub h_s: Vec2,
    pub h_m: Vec2,
    pub v: SymVec,
    /// Generators of Λ″₁, Λ″₂, Λ″₃.
    pub lattices: [[SymVec; 2]; 3],
    /// ψ = (det(Λ″₁), −det(Λ″₂)) in the generator order above, and area(C″₁).
    /// |ψᵢ| = area(T″ᵢ); the signs are those of the displayed expansions.
    pub areas: [BivarPoly; 3],
}

pub fn build_twisted_family(adj: &AdjustedSurface) -> TwistedFamily {
    TwistedFamily::new(&adj.g2, &adj.g3, &adj.g6, &adj.beta.x, &adj.h_s, &adj.h_m)
}

impl TwistedFamily {
    pub fn new(g2: &Fe, g3: &Fe, g6: &Fe, beta1: &Fe, h_s: &Vec2, h_m: &Vec2) -> Self {
        let (u1, u2) = (BivarPoly::u1(), BivarPoly::u2());
        let c = |x: &Fe| BivarPoly::constant(x.clone());
        let two = Fe::int(2);
        let v = SymVec {
            x: &(&(&u2 * &c(&(&two * g2))) + &(&u1 * &c(g3))) + &c(beta1),
            y: c(&(&(&(&two * g2) + g6) + g3)),
        };
        let l1 = [
            SymVec { x: &u1 * &c(g3), y: c(g3) },
            v.add(&SymVec { x: &c(&h_s.x) + &(&u1 * &c(&h_s.y)), y: c(&h_s.y) }),
        ];
        let l2 = [SymVec::constant(&Vec2::new(Fe::zero(), g6.clone())), v.add(&SymVec::constant(h_m))];
        let l3 = [SymVec { x: &u2 * &c(g2), y: c(g2) }, v.clone()];
        let c3 = l3[0].cross(&l3[1]);
        let c3 = if c3.eval(&Fe::zero(), &Fe::zero()).is_negative() { -&c3 } else { c3 };
        let areas = [l1[0].cross(&l1[1]), l2[1].cross(&l2[0]), c3];
        TwistedFamily {
            g2: g2.clone(),
            g3: g3.clone(),
            g6: g6.clone(),
            beta1: beta1.clone(),
            h_s: h_s.clone(),
            h_m: h_m.clone(),
            v,
            lattices: [l1, l2, l3],
            areas,
        }
    }

    pub fn specialize(&self, u1: &Fe, u2: &Fe) -> Result<([Lattice; 3], Vec2)> {
        let mk = |l: &[SymVec; 2]| Lattice::new(l[0].eval(u1, u2), l[1].eval(u1, u2));
        let ls = [mk(&self.lattices[0])?, mk(&self.lattices[1])?, mk(&self.lattices[2])?];
        Ok((ls, self.v.eval(u1, u2)))
    }

    /// The displayed expansions u₁|γ′₃|V_y − |γ′₃|(V_x + (h′_s)_x) and |γ′₆|(V_x + (h′_m)_x).
    pub fn displayed_areas(&self) -> [BivarPoly; 2] {
        let c = |x: &Fe| BivarPoly::constant(x.clone());
        let g3 = c(&self.g3);
        let t1 = &(&(&BivarPoly::u1() * &g3) * &self.v.y) - &(&g3 * &(&self.v.x + &c(&self.h_s.x)));
        let t2 = &c(&self.g6) * &(&self.v.x + &c(&self.h_m.x));
        [t1, t2]
    }

    /// Jacobian of ψ = (area T″₁, area T″₂).
    pub fn jacobian_psi(&self) -> BivarPoly {
        jacobian(&self.areas[0], &self.areas[1])
    }

    /// 2|γ′₃||γ′₂||γ′₆|V_y.
    pub fn expected_jacobian(&self) -> Fe {
        let vy = self.v.y.as_constant().expect("V_y is constant");
        &(&(&(&Fe::int(2) * &self.g3) * &self.g2) * &self.g6) * &vy
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaReport {
    pub holds: bool,
    pub at_origin: Option<Fe>,
}

/// η(x, y) = (c·x/(1 − x − y), c·y/(1 − x − y)) against 4/(1 − x − y)³.
pub fn eta_jacobian_check_with(c: i64) -> EtaReport {
    let x = BivarPoly::u1();
    let y = BivarPoly::u2();
    let den = &(&BivarPoly::constant(Fe::one()) - &x) - &y;
    let k = BivarPoly::constant(Fe::int(c));
    let f = BivarRatFunc::new(&k * &x, den.clone());
    let g = BivarRatFunc::new(&k * &y, den.clone());
    let jac = BivarRatFunc::jacobian(&f, &g);
    let want = BivarRatFunc::new(BivarPoly::constant(Fe::int(4)), den.pow(3));
    EtaReport { holds: jac.same_as(&want), at_origin: jac.eval(&Fe::zero(), &Fe::zero()) }
}

pub fn eta_jacobian_check() -> EtaReport {
    eta_jacobian_check_with(2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistedReport {
    pub u1: Fe,
    pub u2: Fe,
    pub v: Vec2,
    /// Λ″₁, Λ″₂ contain a vector parallel to V.
    pub parallel: [bool; 2],
    pub areas: [Fe; 2],
    /// Hypotheses after the unimodular map sending V to (1, 0).
    pub field: RatnerReport,
}

impl TwistedReport {
    pub fn passes(&self) -> bool {
        !self.parallel[0] && !self.parallel[1] && self.field.distinct_extensions
    }
}

pub fn twisted_instance_checks(family: &TwistedFamily, u1: &Fe, u2: &Fe) -> Result<TwistedReport> {
    let (ls, v) = family.specialize(u1, u2).map_err(|_| Error::DegenerateInstance("singular lattice".into()))?;
    if v.x.is_zero() {
        return Err(Error::DegenerateInstance("V is vertical".into()));
    }
    // det 1, V ↦ (1, 0), verticals stay vertical.
    let vi = v.x.inv()?;
    let b = Matrix2::new(vi, Fe::zero(), -&v.y, v.x.clone());
    let l1 = ls[0].map(|g| b.apply(g))?;
    let l2 = ls[1].map(|g| b.apply(g))?;
    Ok(TwistedReport {
        u1: u1.clone(),
        u2: u2.clone(),
        parallel: [ls[0].has_vector_parallel_to(&v), ls[1].has_vector_parallel_to(&v)],
        areas: [ls[0].area(), ls[1].area()],
        field: ratner_hypotheses(&l1, &l2)?,
        v,
    })
}
