use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::numfield::Fe;

/// Sparse polynomial in (u₁, u₂) with coefficients in ℚ(α).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Fe>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Fe) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Fe, i: u32, j: u32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        Self { terms }
    }

    pub fn u1() -> Self {
        Self::monomial(Fe::one(), 1, 0)
    }

    pub fn u2() -> Self {
        Self::monomial(Fe::one(), 0, 1)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Fe)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Fe {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    /// The constant value if the polynomial has degree ≤ 0.
    pub fn as_constant(&self) -> Option<Fe> {
        match self.total_degree() {
            None => Some(Fe::zero()),
            Some(0) => Some(self.coeff(0, 0)),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Fe) -> Self {
        let mut out = Self::zero();
        for (k, v) in &self.terms {
            out.insert_add(*k, v * c);
        }
        out
    }

    fn insert_add(&mut self, k: (u32, u32), v: Fe) {
        let e = self.terms.entry(k).or_default();
        *e += &v;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn d_u1(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.insert_add((i - 1, j), c.scale(&crate::numfield::q(i as i64)));
            }
        }
        out
    }

    pub fn d_u2(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.insert_add((i, j - 1), c.scale(&crate::numfield::q(j as i64)));
            }
        }
        out
    }

    pub fn eval(&self, u1: &Fe, u2: &Fe) -> Fe {
        let mut acc = Fe::zero();
        for (&(i, j), c) in &self.terms {
            acc += &(c * &u1.pow(i) * u2.pow(j));
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(Fe::one());
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

/// ∂f/∂u₁·∂g/∂u₂ − ∂f/∂u₂·∂g/∂u₁.
pub fn jacobian(f: &BivarPoly, g: &BivarPoly) -> BivarPoly {
    &(&f.d_u1() * &g.d_u2()) - &(&f.d_u2() * &g.d_u1())
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, o: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.insert_add(*k, v.clone());
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, o: &BivarPoly) -> BivarPoly {
        self + &(-o)
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly { terms: self.terms.iter().map(|(k, v)| (*k, -v)).collect() }
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, o: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                out.insert_add((i + k, j + l), a * b);
            }
        }
        out
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(i, j), c)| {
                let mut s = format!("({c})");
                if i > 0 {
                    s.push_str(&format!("*u1^{i}"));
                }
                if j > 0 {
                    s.push_str(&format!("*u2^{j}"));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Quotient num/den of bivariate polynomials, kept unreduced; equality is by
/// cross-multiplication.
#[derive(Clone, Debug)]
pub struct BivarRatFunc {
    pub num: BivarPoly,
    pub den: BivarPoly,
}

impl BivarRatFunc {
    pub fn new(num: BivarPoly, den: BivarPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        Self { num, den }
    }

    pub fn d_u1(&self) -> Self {
        let num = &(&self.num.d_u1() * &self.den) - &(&self.num * &self.den.d_u1());
        Self::new(num, &self.den * &self.den)
    }

    pub fn d_u2(&self) -> Self {
        let num = &(&self.num.d_u2() * &self.den) - &(&self.num * &self.den.d_u2());
        Self::new(num, &self.den * &self.den)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let num = &(&self.num * &o.den) - &(&o.num * &self.den);
        Self::new(num, &self.den * &o.den)
    }

    pub fn same_as(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }

    pub fn eval(&self, u1: &Fe, u2: &Fe) -> Option<Fe> {
        self.num.eval(u1, u2).checked_div(&self.den.eval(u1, u2)).ok()
    }

    /// Jacobian determinant of the map (f, g).
    pub fn jacobian(f: &Self, g: &Self) -> Self {
        f.d_u1().mul(&g.d_u2()).sub(&f.d_u2().mul(&g.d_u1()))
    }
}
