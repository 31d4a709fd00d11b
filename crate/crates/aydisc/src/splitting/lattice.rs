//! Rank-two lattices in ℚ(α)² and the arithmetic tests on pairs of them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numfield::{is_square, Fe, Q};
use crate::surface::Vec2;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    pub g1: Vec2,
    pub g2: Vec2,
}

impl Lattice {
    pub fn new(g1: Vec2, g2: Vec2) -> Result<Self> {
        if g1.cross(&g2).is_zero() {
            return Err(Error::DegenerateInstance("lattice generators are parallel".into()));
        }
        Ok(Self { g1, g2 })
    }

    /// Z-span of a family of vectors; fails unless it has rank two.
    pub fn from_periods(vs: &[Vec2]) -> Result<Self> {
        let basis = z_basis(vs);
        match basis.as_slice() {
            [a, b] => Self::new(a.clone(), b.clone()),
            _ => Err(Error::DegenerateInstance(format!("period group has rank {}", basis.len()))),
        }
    }

    pub fn det(&self) -> Fe {
        self.g1.cross(&self.g2)
    }

    pub fn area(&self) -> Fe {
        self.det().abs()
    }

    /// Integer coordinates of v in the basis, if v belongs to the lattice.
    pub fn coordinates(&self, v: &Vec2) -> Option<(BigInt, BigInt)> {
        let d = self.det();
        let m = (&v.cross(&self.g2) / &d).as_rational()?.clone();
        let n = (&self.g1.cross(v) / &d).as_rational()?.clone();
        (m.is_integer() && n.is_integer()).then(|| (m.to_integer(), n.to_integer()))
    }

    pub fn contains(&self, v: &Vec2) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn same_as(&self, o: &Lattice) -> bool {
        o.contains(&self.g1) && o.contains(&self.g2) && self.area() == o.area()
    }

    /// Whether some nonzero lattice vector is parallel to v.
    pub fn has_vector_parallel_to(&self, v: &Vec2) -> bool {
        let d1 = self.g1.cross(v);
        let d2 = self.g2.cross(v);
        d1.is_zero() || d2.is_zero() || (&d1 / &d2).is_rational()
    }

    pub fn has_horizontal_vector(&self) -> bool {
        self.has_vector_parallel_to(&Vec2::from_ints(1, 0))
    }

    /// Basis ⟨(0, a), (b, c)⟩ with a, b > 0 and 0 ≤ c < a.
    pub fn normal_form(&self) -> Result<Lattice> {
        let (g1, g2) = (&self.g1, &self.g2);
        let (m, n) = if g2.x.is_zero() {
            (BigInt::zero(), BigInt::one())
        } else {
            let r = (&g1.x / &g2.x).as_rational().ok_or(Error::NotNormalizable)?.clone();
            (r.denom().clone(), -r.numer().clone())
        };
        let ext = m.extended_gcd(&n);
        debug_assert!(ext.gcd.is_one());
        let comb = |a: &BigInt, b: &BigInt| &g1.scale(&Fe::from_q(Q::from(a.clone()))) + &g2.scale(&Fe::from_q(Q::from(b.clone())));
        let mut vert = comb(&m, &n);
        // det [[m, n], [−y, x]] = m·x + n·y = 1.
        let mut w = comb(&-ext.y, &ext.x);
        if vert.y.is_negative() {
            vert = -&vert;
        }
        if w.x.is_negative() {
            w = -&w;
        }
        let k = (&w.y / &vert.y).floor();
        let w = &w - &vert.scale(&Fe::from_q(Q::from(k)));
        Lattice::new(vert, w)
    }

    /// First return of the rightward horizontal flow to the vertical circle,
    /// measured upward as a fraction of its length: fract(−c/a).
    pub fn normalized_twist(&self) -> Result<Fe> {
        let nf = self.normal_form()?;
        Ok((-&(&nf.g2.y / &nf.g1.y)).fract())
    }

    pub fn map(&self, f: impl Fn(&Vec2) -> Vec2) -> Result<Lattice> {
        Lattice::new(f(&self.g1), f(&self.g2))
    }
}

/// Z-basis of the subgroup of ℚ(α)² ≅ ℚ⁶ spanned by vs (row echelon over Z).
pub fn z_basis(vs: &[Vec2]) -> Vec<Vec2> {
    let den = vs.iter().fold(BigInt::one(), |acc, v| acc.lcm(&v.x.denom_lcm()).lcm(&v.y.denom_lcm()));
    let dq = Q::from(den.clone());
    let mut rows: Vec<Vec<BigInt>> = vs
        .iter()
        .map(|v| {
            v.x.coeffs().iter().chain(v.y.coeffs()).map(|c| (c * &dq).to_integer()).collect()
        })
        .filter(|r: &Vec<BigInt>| r.iter().any(|c| !c.is_zero()))
        .collect();
    let mut basis = Vec::new();
    for col in 0..6 {
        loop {
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][col].is_zero()).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by(|&i, &j| rows[i][col].abs().cmp(&rows[j][col].abs()));
            let piv = nz[0];
            for &i in &nz[1..] {
                let f = &rows[i][col] / &rows[piv][col];
                let sub: Vec<BigInt> = rows[piv].iter().map(|c| c * &f).collect();
                for (x, s) in rows[i].iter_mut().zip(sub) {
                    *x -= s;
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i][col].is_zero()) {
            basis.push(rows.swap_remove(i));
        }
        rows.retain(|r| r.iter().any(|c| !c.is_zero()));
    }
    basis
        .into_iter()
        .map(|r| {
            let f = |k: usize| Fe::new(Q::new(r[k].clone(), den.clone()), Q::new(r[k + 1].clone(), den.clone()), Q::new(r[k + 2].clone(), den.clone()));
            Vec2::new(f(0), f(3))
        })
        .collect()
}

/// True iff neither x nor y nor xy is a square in ℚ(α), i.e. ℚ(α)(√x) ≠ ℚ(α)(√y)
/// are two quadratic extensions.
pub fn sqrt_extension_distinct(x: &Fe, y: &Fe) -> Result<bool> {
    if !x.is_positive() || !y.is_positive() {
        return Err(Error::NonPositive);
    }
    Ok(!is_square(x).0 && !is_square(y).0 && !is_square(&(x * y)).0)
}

/// ℚ(√x) ≠ ℚ(√y) as subfields of ℝ, for positive x, y ∈ ℚ(α).
pub fn sqrt_fields_distinct_over_q(x: &Fe, y: &Fe) -> Result<bool> {
    if !x.is_positive() || !y.is_positive() {
        return Err(Error::NonPositive);
    }
    let square = |z: &Fe| is_square(z).0;
    Ok(match (x.is_rational(), y.is_rational()) {
        // Both fields contain ℚ(α); they agree iff the Kummer classes agree.
        (false, false) => !square(&(x * y)),
        // A field of degree ≤ 2 against one containing a cubic field.
        (true, false) | (false, true) => true,
        (true, true) => match (square(x), square(y)) {
            (true, true) => false,
            (false, false) => !square(&(x * y)),
            _ => true,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatnerReport {
    pub no_horizontal: [bool; 2],
    /// √area ∉ ℚ(α).
    pub sqrt_area_irrational: [bool; 2],
    /// Kummer test over ℚ(α) on the two areas.
    pub distinct_extensions: bool,
    /// ℚ(A₁) ≠ ℚ(A₂) over ℚ.
    pub distinct_fields_over_q: bool,
    /// c/a of each normal form, when one exists.
    pub slopes: [Option<Fe>; 2],
}

impl RatnerReport {
    pub fn holds(&self) -> bool {
        self.no_horizontal.iter().all(|&b| b) && self.distinct_extensions
    }
}

pub fn ratner_hypotheses(l1: &Lattice, l2: &Lattice) -> Result<RatnerReport> {
    let nf = [l1.normal_form(), l2.normal_form()];
    let slopes = [0, 1].map(|i| nf[i].as_ref().ok().map(|n| &n.g2.y / &n.g1.y));
    // Without a vertical vector the direct scan decides.
    let no_horizontal = [0, 1].map(|i| match &slopes[i] {
        Some(s) => !s.is_rational(),
        None => ![l1, l2][i].has_horizontal_vector(),
    });
    let (a1, a2) = (l1.area(), l2.area());
    Ok(RatnerReport {
        no_horizontal,
        sqrt_area_irrational: [!is_square(&a1).0, !is_square(&a2).0],
        distinct_extensions: sqrt_extension_distinct(&a1, &a2)?,
        distinct_fields_over_q: sqrt_fields_distinct_over_q(&a1, &a2)?,
        slopes,
    })
}
