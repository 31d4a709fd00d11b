//! Affine diffeomorphisms between periodic directions from matching invariants.

use std::ops::RangeInclusive;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::numfield::Fe;
use crate::periodic::{projectively_equal, Marking, PeriodicDirectionData};
use crate::polyalg::{eigenvalue_minpoly, RationalPolynomial};
use crate::surface::{Matrix2, Vec2};
use crate::{Error, Result};

pub const DEFAULT_N0_RANGE: RangeInclusive<i64> = -8..=8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classification {
    PseudoAnosov,
    Parabolic,
    Elliptic,
}

impl Classification {
    pub fn as_str(&self) -> &'static str {
        match self {
            Classification::PseudoAnosov => "pseudo-anosov",
            Classification::Parabolic => "parabolic",
            Classification::Elliptic => "elliptic",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifyReport {
    pub classification: Classification,
    pub trace: Fe,
    /// Minimal polynomial of the eigenvalue of largest modulus, signed like the trace.
    pub expansion_minpoly: Option<RationalPolynomial>,
    pub degree: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineCandidate {
    /// pi1[i − 1] is the image of saddle label i.
    pub pi1: Vec<usize>,
    /// pi2[i] is the image of cylinder i (0-based, sorted order).
    pub pi2: Vec<usize>,
    pub n0: i64,
    pub df: Matrix2,
    pub classification: Classification,
    pub expansion_minpoly: Option<RationalPolynomial>,
}

impl AffineCandidate {
    pub fn to_json(&self) -> Value {
        let m = &self.df;
        json!({
            "pi1": self.pi1,
            "pi2": self.pi2.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "n0": self.n0,
            "Df": [[m.a.to_string(), m.b.to_string()], [m.c.to_string(), m.d.to_string()]],
            "trace": m.trace().to_string(),
            "minpoly": self.expansion_minpoly.as_ref().map(|p| p.to_string()),
            "classification": self.classification.as_str(),
        })
    }
}

pub fn classify(df: &Matrix2) -> Result<ClassifyReport> {
    if df.det() != Fe::one() {
        return Err(Error::NonUnimodular);
    }
    let trace = df.trace();
    let disc = &trace.square() - &Fe::int(4);
    let classification = match disc.sign() {
        1 => Classification::PseudoAnosov,
        0 => Classification::Parabolic,
        _ => Classification::Elliptic,
    };
    let (expansion_minpoly, degree) = if classification == Classification::PseudoAnosov {
        let p = eigenvalue_minpoly(&trace, &Fe::one())?;
        let d = p.degree();
        (Some(p), d)
    } else {
        (None, None)
    };
    Ok(ClassifyReport { classification, trace, expansion_minpoly, degree })
}

/// Coefficients (−c, a − d, b) of det(Df·v, v) as a form in v = (x, y).
pub fn eigendirection_form(m: &Matrix2) -> [Fe; 3] {
    [-&m.c, &m.a - &m.d, m.b.clone()]
}

/// Whether v is an eigendirection of m.
pub fn is_eigendirection(m: &Matrix2, v: &Vec2) -> bool {
    m.apply(v).cross(v).is_zero()
}

/// Two hyperbolic maps share a power iff their eigendirection pairs coincide.
pub fn share_power(a: &Matrix2, b: &Matrix2) -> Result<bool> {
    for m in [a, b] {
        if classify(m)?.classification != Classification::PseudoAnosov {
            return Err(Error::NotHyperbolic);
        }
    }
    Ok(projectively_equal(&eigendirection_form(a), &eigendirection_form(b)))
}

/// diag(α, α⁻¹).
pub fn dphi() -> Matrix2 {
    let a = Fe::alpha();
    let ai = a.inv().expect("alpha is nonzero");
    Matrix2::new(a, Fe::zero(), Fe::zero(), ai)
}

fn rotations(c: &[usize]) -> Vec<Vec<usize>> {
    (0..c.len()).map(|s| c[s..].iter().chain(&c[..s]).copied().collect()).collect()
}

fn same_cycle(a: &[usize], b: &[usize]) -> bool {
    a.len() == b.len() && rotations(b).iter().any(|r| r == a)
}

/// All (π₁, π₂, n₀′) matching combinatorics, projective L² and H, and twists mod 1.
pub fn match_directions(
    d1: &PeriodicDirectionData,
    d2: &PeriodicDirectionData,
    n0_range: RangeInclusive<i64>,
) -> Result<Vec<AffineCandidate>> {
    let p = d1.cylinders.len();
    let k = d1.saddles.len();
    if p != d2.cylinders.len() || k != d2.saddles.len() {
        return Ok(Vec::new());
    }
    let l1 = d1.lengths_squared();
    let l2 = d2.lengths_squared();
    let h1 = d1.heights();
    let h2 = d2.heights();
    let tau1 = d1.normalized_twists_wrt(0, d1.n0);
    let m1 = d1.frame_wrt(0, d1.n0).inv().map_err(|_| Error::SingularFrame)?;
    let mut out = Vec::new();
    for pi2 in (0..p).permutations(p) {
        let shapes_match = (0..p).all(|i| {
            let (a, b) = (&d1.cylinders[i], &d2.cylinders[pi2[i]]);
            a.top.len() == b.top.len() && a.bottom.len() == b.bottom.len()
        });
        if !shapes_match {
            continue;
        }
        let h2p: Vec<Fe> = pi2.iter().map(|&j| h2[j].clone()).collect();
        if !projectively_equal(&h1, &h2p) {
            continue;
        }
        let choices: Vec<Vec<Vec<usize>>> = (0..p).map(|i| rotations(&d2.cylinders[pi2[i]].top)).collect();
        for pick in choices.iter().multi_cartesian_product() {
            let mut pi1 = vec![0; k];
            for (i, img) in pick.iter().enumerate() {
                for (&l, &m) in d1.cylinders[i].top.iter().zip(img.iter()) {
                    pi1[l - 1] = m;
                }
            }
            let bottoms_ok = (0..p).all(|i| {
                let img: Vec<usize> = d1.cylinders[i].bottom.iter().map(|&l| pi1[l - 1]).collect();
                same_cycle(&img, &d2.cylinders[pi2[i]].bottom)
            });
            if !bottoms_ok {
                continue;
            }
            let l2p: Vec<Fe> = (0..k).map(|i| l2[pi1[i] - 1].clone()).collect();
            if !projectively_equal(&l1, &l2p) {
                continue;
            }
            let mut marks = vec![(0, 0); p];
            for (i, c) in d1.cylinders.iter().enumerate() {
                marks[pi2[i]] = (pi1[c.mark_bottom() - 1], pi1[c.mark_top() - 1]);
            }
            let d2m = d2.with_marking(&Marking::Explicit(marks))?;
            for n0 in n0_range.clone() {
                let tau2 = d2m.normalized_twists_wrt(pi2[0], n0);
                if !(1..p).all(|i| tau1[i].fract() == tau2[pi2[i]].fract()) {
                    continue;
                }
                let df = d2m.frame_wrt(pi2[0], n0).mul(&m1);
                if df.det() != Fe::one() {
                    continue;
                }
                let maps_saddles =
                    d1.saddles.iter().all(|s| df.apply(&s.holonomy) == d2.saddles[pi1[s.label - 1] - 1].holonomy);
                if !maps_saddles {
                    continue;
                }
                let rep = classify(&df)?;
                out.push(AffineCandidate {
                    pi1: pi1.clone(),
                    pi2: pi2.clone(),
                    n0,
                    df,
                    classification: rep.classification,
                    expansion_minpoly: rep.expansion_minpoly,
                });
            }
        }
    }
    out.sort_by(|a, b| (a.n0, &a.pi1, &a.pi2).cmp(&(b.n0, &b.pi1, &b.pi2)));
    Ok(out)
}

/// Re-checks a certificate against two decompositions.
pub fn verify_candidate(d1: &PeriodicDirectionData, d2: &PeriodicDirectionData, c: &AffineCandidate) -> Result<bool> {
    let found = match_directions(d1, d2, c.n0..=c.n0)?;
    Ok(found.iter().any(|f| f.pi1 == c.pi1 && f.pi2 == c.pi2 && f.df == c.df))
}

#[cfg(test)]
mod tests;
