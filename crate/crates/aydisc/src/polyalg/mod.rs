//! Univariate polynomials over Q, irreducibility certificates, resultants and
//! the small bivariate layer used for area functions.

mod bivar;
mod factor;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::numfield::{q, Fe, Q};
use crate::{Error, Result};

pub use bivar::{jacobian as bivar_jacobian, BivarPoly, BivarRatFunc};
pub use factor::{factorize, verify_certificate, Factor, Factorization, IrreducibilityCertificate};

/// Dense polynomial, constant term first, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct RationalPolynomial {
    coeffs: Vec<Q>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| q(x)).collect())
    }

    pub fn from_bigints(c: &[BigInt]) -> Self {
        Self::new(c.iter().map(|x| Q::from_integer(x.clone())).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The monomial X.
    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lc(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, r: &Q) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * r).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Q::one() / self.lc()))
    }

    pub fn eval(&self, x: &Q) -> Q {
        self.coeffs.iter().rev().fold(Q::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_fe(&self, x: &Fe) -> Fe {
        self.coeffs
            .iter()
            .rev()
            .fold(Fe::zero(), |acc, c| &(&acc * x) + &Fe::from_q(c.clone()))
    }

    /// Interval enclosure of p on [lo, hi] by naive interval Horner.
    pub fn eval_interval(&self, lo: &Q, hi: &Q) -> (Q, Q) {
        let mut acc = (Q::zero(), Q::zero());
        for c in self.coeffs.iter().rev() {
            let prods = [&acc.0 * lo, &acc.0 * hi, &acc.1 * lo, &acc.1 * hi];
            let mn = prods.iter().min().unwrap().clone();
            let mx = prods.iter().max().unwrap().clone();
            acc = (mn + c, mx + c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * q(i as i64))
                .collect(),
        )
    }

    /// p(q(X)).
    pub fn compose(&self, inner: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Self::constant(c.clone());
        }
        acc
    }

    /// p(X + c).
    pub fn shift(&self, c: &Q) -> Self {
        self.compose(&Self::new(vec![c.clone(), Q::one()]))
    }

    /// p(X²).
    pub fn compose_x_squared(&self) -> Self {
        let mut out = vec![Q::zero(); 2 * self.coeffs.len().max(1) - 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[2 * i] = c.clone();
        }
        Self::new(out)
    }

    /// p(−X).
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn divmod(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let lc = d.lc();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quo = vec![Q::zero(); rem.len() - dd];
        for i in (0..quo.len()).rev() {
            let c = &rem[i + dd] / &lc;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quo[i] = c;
        }
        rem.truncate(dd);
        Ok((Self::new(quo), Self::new(rem)))
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.divmod(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Product of the distinct monic irreducible factors.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return Self::one();
        }
        let g = self.gcd(&self.derivative());
        self.divmod(&g).expect("nonzero gcd").0.monic()
    }

    /// Yun's algorithm: monic squarefree parts with multiplicities.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let d = f.derivative();
        let mut a = f.gcd(&d);
        let mut b = f.divmod(&a).unwrap().0;
        let mut c = d.divmod(&a).unwrap().0;
        let mut dd = &c - &b.derivative();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            a = b.gcd(&dd);
            b = b.divmod(&a).unwrap().0;
            c = dd.divmod(&a).unwrap().0;
            dd = &c - &b.derivative();
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.monic(), i));
            }
            i += 1;
        }
        out
    }

    /// Content-free integer coefficients with positive leading term, and the
    /// rational factor r with self = r · primitive.
    pub fn primitive_part(&self) -> (Q, Vec<BigInt>) {
        if self.is_zero() {
            return (Q::zero(), Vec::new());
        }
        let den = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &den).to_integer()).collect();
        let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
        (Q::new(g, den), prim)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl<'a> Add<&'a RationalPolynomial> for &'a RationalPolynomial {
    type Output = RationalPolynomial;
    fn add(self, o: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a RationalPolynomial> for &'a RationalPolynomial {
    type Output = RationalPolynomial;
    fn sub(self, o: &RationalPolynomial) -> RationalPolynomial {
        let n = self.coeffs.len().max(o.coeffs.len());
        RationalPolynomial::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a RationalPolynomial> for &'a RationalPolynomial {
    type Output = RationalPolynomial;
    fn mul(self, o: &RationalPolynomial) -> RationalPolynomial {
        if self.is_zero() || o.is_zero() {
            return RationalPolynomial::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        RationalPolynomial::new(out)
    }
}

impl Neg for &RationalPolynomial {
    type Output = RationalPolynomial;
    fn neg(self) -> RationalPolynomial {
        self.scale(&q(-1))
    }
}

impl fmt::Display for RationalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let unit = mag.is_one() && i > 0;
            if !unit {
                write!(f, "{mag}")?;
            }
            match (i, unit) {
                (0, _) => {}
                (1, true) => write!(f, "X")?,
                (1, false) => write!(f, "*X")?,
                (_, true) => write!(f, "X^{i}")?,
                (_, false) => write!(f, "*X^{i}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for RationalPolynomial {
    type Err = Error;

    /// Parses "c0 + c1*X + ... + ck*X^k" (any term order, `X` or `x`).
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let compact = compact.replace('x', "X");
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in compact.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut out: Vec<Q> = Vec::new();
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(&t)),
            };
            let bad = || Error::Parse(format!("bad polynomial term `{t}`"));
            let (coef, pow) = match body.find('X') {
                Some(pos) => {
                    let cpart = body[..pos].trim_end_matches('*');
                    let ppart = &body[pos + 1..];
                    let pow = if ppart.is_empty() {
                        1
                    } else {
                        ppart.strip_prefix('^').and_then(|e| e.parse::<usize>().ok()).ok_or_else(bad)?
                    };
                    let coef = if cpart.is_empty() { Q::one() } else { parse_q(cpart).ok_or_else(bad)? };
                    (coef, pow)
                }
                None => (parse_q(body).ok_or_else(bad)?, 0),
            };
            if out.len() <= pow {
                out.resize(pow + 1, Q::zero());
            }
            out[pow] += if neg { -coef } else { coef };
        }
        Ok(RationalPolynomial::new(out))
    }
}

fn parse_q(s: &str) -> Option<Q> {
    match s.split_once('/') {
        Some((n, d)) => {
            let d: BigInt = d.parse().ok()?;
            let n: BigInt = n.parse().ok()?;
            (!d.is_zero()).then(|| Q::new(n, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

// ---------------------------------------------------------------------------
// Determinants, resultants

/// Determinant by fraction-carrying Gaussian elimination.
pub fn determinant(mut m: Vec<Vec<Q>>) -> Q {
    let n = m.len();
    let mut det = Q::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Q::zero();
        };
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let f = &m[r][col] / &p;
            for k in col..n {
                let t = &f * &m[col][k];
                m[r][k] -= t;
            }
        }
    }
    det
}

/// Sylvester-matrix resultant.
pub fn resultant(p: &RationalPolynomial, r: &RationalPolynomial) -> Result<Q> {
    let (Some(m), Some(n)) = (p.degree(), r.degree()) else {
        return Err(Error::Precondition("resultant of the zero polynomial".into()));
    };
    if m == 0 {
        return Ok(p.lc().pow(n as i32));
    }
    if n == 0 {
        return Ok(r.lc().pow(m as i32));
    }
    let size = m + n;
    let mut mat = vec![vec![Q::zero(); size]; size];
    for i in 0..n {
        for (j, c) in p.coeffs().iter().rev().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in r.coeffs().iter().rev().enumerate() {
            mat[n + i][i + j] = c.clone();
        }
    }
    Ok(determinant(mat))
}

/// Lagrange interpolation through (xᵢ, yᵢ).
pub fn interpolate(points: &[(Q, Q)]) -> RationalPolynomial {
    let mut acc = RationalPolynomial::zero();
    for (i, (xi, yi)) in points.iter().enumerate() {
        let mut basis = RationalPolynomial::one();
        let mut denom = Q::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i != j {
                basis = &basis * &RationalPolynomial::new(vec![-xj.clone(), Q::one()]);
                denom *= xi - xj;
            }
        }
        acc = &acc + &basis.scale(&(yi / denom));
    }
    acc
}

fn alpha_minpoly() -> RationalPolynomial {
    RationalPolynomial::from_ints(&[-1, 1, 1, 1])
}

fn lift(x: &Fe) -> RationalPolynomial {
    RationalPolynomial::new(x.coeffs().to_vec())
}

/// Res_Y(m_α(Y), X² − T(Y)X + D(Y)) as a polynomial in X, by evaluation at
/// seven integer points and interpolation.
pub fn charpoly_norm(trace: &Fe, det: &Fe) -> RationalPolynomial {
    let (t, d) = (lift(trace), lift(det));
    let points: Vec<(Q, Q)> = (0..7)
        .map(|k| {
            let x = q(k - 3);
            let inner = &(&RationalPolynomial::constant(&x * &x) - &t.scale(&x)) + &d;
            let r = if inner.is_zero() {
                Q::zero()
            } else {
                resultant(&alpha_minpoly(), &inner).expect("nonzero inputs")
            };
            (x, r)
        })
        .collect();
    interpolate(&points)
}

/// An element u + v√Δ of Q(α)(√Δ); only used for exact root tests.
#[derive(Clone, Debug)]
pub(crate) struct QuadExt {
    pub u: Fe,
    pub v: Fe,
}

impl QuadExt {
    fn mul(&self, o: &QuadExt, delta: &Fe) -> QuadExt {
        QuadExt {
            u: &(&self.u * &o.u) + &(&(&self.v * &o.v) * delta),
            v: &(&self.u * &o.v) + &(&self.v * &o.u),
        }
    }

    fn eval_poly(p: &RationalPolynomial, x: &QuadExt, delta: &Fe) -> QuadExt {
        let mut acc = QuadExt { u: Fe::zero(), v: Fe::zero() };
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(x, delta);
            acc.u += &Fe::from_q(c.clone());
        }
        acc
    }
}

/// Minimal polynomial over Q of the eigenvalue λ of X² − tX + d with |λ| > 1
/// (the larger root in absolute value, keeping its sign).
pub fn eigenvalue_minpoly(trace: &Fe, det: &Fe) -> Result<RationalPolynomial> {
    if det.is_zero() {
        return Err(Error::Precondition("eigenvalue_minpoly needs det != 0".into()));
    }
    let norm = charpoly_norm(trace, det);
    let sqf = norm.squarefree_part();
    let factors = factorize(&sqf);
    if factors.factors.len() == 1 {
        return Ok(factors.factors[0].poly.monic());
    }
    // λ = (t ± √Δ)/2 with the sign of t; exact membership test for each factor.
    let delta = &trace.square() - &det.scale(&q(4));
    let half = crate::numfield::qf(1, 2);
    let sgn = if trace.is_negative() { -1 } else { 1 };
    let (is_sq, root) = crate::numfield::is_square(&delta);
    for f in &factors.factors {
        let vanishes = if is_sq {
            let r = root.clone().unwrap();
            let lam = (trace + &r.scale(&q(sgn))).scale(&half);
            f.poly.eval_fe(&lam).is_zero()
        } else {
            let lam = QuadExt { u: trace.scale(&half), v: Fe::from_q(half.clone() * q(sgn)) };
            let val = QuadExt::eval_poly(&f.poly, &lam, &delta);
            val.u.is_zero() && val.v.is_zero()
        };
        if vanishes {
            return Ok(f.poly.monic());
        }
    }
    Err(Error::Internal("no factor of the norm vanishes at the eigenvalue".into()))
}

/// Minimal polynomial over Q of the positive square root of x > 0.
pub fn minpoly_of_sqrt(x: &Fe) -> Result<RationalPolynomial> {
    match x.sign() {
        0 => return Err(Error::ZeroElement),
        -1 => return Err(Error::NegativeElement),
        _ => {}
    }
    let lifted = x.minpoly().compose_x_squared();
    let factors = factorize(&lifted);
    if factors.factors.len() == 1 {
        return Ok(factors.factors[0].poly.monic());
    }
    let (ok, root) = crate::numfield::is_square(x);
    let root = root.filter(|_| ok).ok_or_else(|| {
        Error::Internal("reducible lift without a square root in the field".into())
    })?;
    factors
        .factors
        .iter()
        .find(|f| f.poly.eval_fe(&root).is_zero())
        .map(|f| f.poly.monic())
        .ok_or_else(|| Error::Internal("no factor vanishes at the square root".into()))
}

/// Eisenstein's criterion at `prime` for p(X + shift), after clearing denominators.
pub fn eisenstein_check(p: &RationalPolynomial, prime: u64, shift: i64) -> Result<bool> {
    let Some(deg) = p.degree() else {
        return Err(Error::NotIntegral);
    };
    if deg == 0 {
        return Ok(false);
    }
    let (_, ints) = p.shift(&q(shift)).primitive_part();
    let pr = BigInt::from(prime);
    let lead_ok = !(&ints[deg] % &pr).is_zero();
    let middle_ok = ints[..deg].iter().all(|c| (c % &pr).is_zero());
    let const_ok = !(&ints[0] % (&pr * &pr)).is_zero();
    Ok(lead_ok && middle_ok && const_ok)
}
