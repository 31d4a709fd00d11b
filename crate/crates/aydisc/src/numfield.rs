//! Arithmetic in the cubic field Q(α), α the real root of X³+X²+X−1.
//!
//! Elements are stored in the basis {1, α, α²} with reduced rational
//! coordinates, so equality is structural. Ordering goes through the real
//! embedding, decided by interval evaluation on a shrinking isolating
//! interval for α.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::polyalg::{self, RationalPolynomial};
use crate::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// a + bα + cα².
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Fe {
    c: [Q; 3],
}

impl Fe {
    pub fn new(a: Q, b: Q, c: Q) -> Self {
        Fe { c: [a, b, c] }
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Self {
        Fe::new(q(a), q(b), q(c))
    }

    pub fn from_q(a: Q) -> Self {
        Fe::new(a, Q::zero(), Q::zero())
    }

    pub fn int(n: i64) -> Self {
        Fe::from_ints(n, 0, 0)
    }

    pub fn zero() -> Self {
        Fe::default()
    }

    pub fn one() -> Self {
        Fe::int(1)
    }

    pub fn alpha() -> Self {
        Fe::from_ints(0, 1, 0)
    }

    pub fn coeffs(&self) -> &[Q; 3] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn is_rational(&self) -> bool {
        self.c[1].is_zero() && self.c[2].is_zero()
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.is_rational().then(|| &self.c[0])
    }

    pub fn scale(&self, r: &Q) -> Fe {
        Fe::new(&self.c[0] * r, &self.c[1] * r, &self.c[2] * r)
    }

    pub fn square(&self) -> Fe {
        self * self
    }

    pub fn pow(&self, mut e: u32) -> Fe {
        let mut base = self.clone();
        let mut acc = Fe::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    /// Matrix of multiplication by self on the basis {1, α, α²}; column j is self·αʲ.
    fn mul_matrix(&self) -> [[Q; 3]; 3] {
        let cols = [self.clone(), self * &Fe::alpha(), self * &Fe::from_ints(0, 0, 1)];
        let mut m: [[Q; 3]; 3] = Default::default();
        for (j, col) in cols.iter().enumerate() {
            for i in 0..3 {
                m[i][j] = col.c[i].clone();
            }
        }
        m
    }

    pub fn inv(&self) -> Result<Fe> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let m = self.mul_matrix();
        let sol = solve3(m, [Q::one(), Q::zero(), Q::zero()]).ok_or(Error::DivisionByZero)?;
        let [a, b, c] = sol;
        Ok(Fe::new(a, b, c))
    }

    pub fn checked_div(&self, other: &Fe) -> Result<Fe> {
        Ok(self * &other.inv()?)
    }

    pub fn sign(&self) -> i8 {
        sign(self)
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Fe {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Greatest integer not exceeding the real value.
    pub fn floor(&self) -> BigInt {
        let approx = self.to_f64().floor();
        let mut n = BigInt::from(approx as i64);
        while (self - &Fe::from_q(Q::from_integer(n.clone()))).is_negative() {
            n -= 1;
        }
        while !(self - &Fe::from_q(Q::from_integer(&n + 1))).is_negative() {
            n += 1;
        }
        n
    }

    /// self − ⌊self⌋, in [0, 1).
    pub fn fract(&self) -> Fe {
        self - &Fe::from_q(Q::from_integer(self.floor()))
    }

    pub fn to_f64(&self) -> f64 {
        let a = alpha_f64();
        let f = |r: &Q| r.to_f64().unwrap_or(f64::NAN);
        f(&self.c[0]) + f(&self.c[1]) * a + f(&self.c[2]) * a * a
    }

    pub fn minpoly(&self) -> RationalPolynomial {
        minpoly(self)
    }

    /// Lexicographic denominator for clearing: lcm of coordinate denominators.
    pub fn denom_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.c.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
    }
}

pub fn alpha_f64() -> f64 {
    0.543_689_012_692_076_4
}

fn reduce(raw: [Q; 5]) -> Fe {
    // α³ = 1 − α − α², α⁴ = 2α − 1.
    let [r0, r1, r2, r3, r4] = raw;
    Fe::new(&r0 + &r3 - &r4, &r1 - &r3 + &r4 * q(2), r2 - r3)
}

impl<'a> Add<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn add(self, o: &Fe) -> Fe {
        Fe::new(&self.c[0] + &o.c[0], &self.c[1] + &o.c[1], &self.c[2] + &o.c[2])
    }
}

impl<'a> Sub<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn sub(self, o: &Fe) -> Fe {
        Fe::new(&self.c[0] - &o.c[0], &self.c[1] - &o.c[1], &self.c[2] - &o.c[2])
    }
}

impl<'a> Mul<&'a Fe> for &'a Fe {
    type Output = Fe;
    fn mul(self, o: &Fe) -> Fe {
        let (x, y) = (&self.c, &o.c);
        let mut raw: [Q; 5] = Default::default();
        for i in 0..3 {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if !y[j].is_zero() {
                    raw[i + j] += &x[i] * &y[j];
                }
            }
        }
        reduce(raw)
    }
}

impl Neg for &Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        Fe::new(-&self.c[0], -&self.c[1], -&self.c[2])
    }
}

impl Neg for Fe {
    type Output = Fe;
    fn neg(self) -> Fe {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<Fe> for Fe {
            type Output = Fe;
            fn $f(self, o: Fe) -> Fe {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a Fe> for Fe {
            type Output = Fe;
            fn $f(self, o: &Fe) -> Fe {
                (&self).$f(o)
            }
        }
        impl<'a> $tr<Fe> for &'a Fe {
            type Output = Fe;
            fn $f(self, o: Fe) -> Fe {
                self.$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<'a> Div<&'a Fe> for &'a Fe {
    type Output = Fe;
    /// Panics on division by zero; use [`Fe::checked_div`] where zero is possible.
    fn div(self, o: &Fe) -> Fe {
        self.checked_div(o).expect("division by zero in Q(alpha)")
    }
}
forward_owned!(Div, div);

impl AddAssign<&Fe> for Fe {
    fn add_assign(&mut self, o: &Fe) {
        for i in 0..3 {
            self.c[i] += &o.c[i];
        }
    }
}

impl SubAssign<&Fe> for Fe {
    fn sub_assign(&mut self, o: &Fe) {
        for i in 0..3 {
            self.c[i] -= &o.c[i];
        }
    }
}

impl PartialOrd for Fe {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fe {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

/// Gaussian elimination on a 3×3 rational system; `None` if singular.
pub(crate) fn solve3(mut m: [[Q; 3]; 3], mut rhs: [Q; 3]) -> Option<[Q; 3]> {
    for col in 0..3 {
        let piv = (col..3).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let p = m[col][col].clone();
        for r in 0..3 {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &p;
                for k in col..3 {
                    let t = &f * &m[col][k];
                    m[r][k] -= t;
                }
                let t = &f * &rhs[col];
                rhs[r] -= t;
            }
        }
    }
    Some([&rhs[0] / &m[0][0], &rhs[1] / &m[1][1], &rhs[2] / &m[2][2]])
}

// ---------------------------------------------------------------------------
// Real embedding

/// An isolating interval [lo, hi] for α.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingInterval {
    pub lo: Q,
    pub hi: Q,
}

impl EmbeddingInterval {
    pub fn initial() -> Self {
        EmbeddingInterval { lo: qf(1, 2), hi: qf(5, 9) }
    }

    fn defining(x: &Q) -> Q {
        x * x * x + x * x + x - q(1)
    }

    /// One bisection step; the defining polynomial is increasing on the interval.
    pub fn bisect(&self) -> Self {
        let mid = (&self.lo + &self.hi) / q(2);
        let v = Self::defining(&mid);
        if v.is_zero() {
            unreachable!("alpha is irrational");
        } else if v.is_negative() {
            EmbeddingInterval { lo: mid, hi: self.hi.clone() }
        } else {
            EmbeddingInterval { lo: self.lo.clone(), hi: mid }
        }
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    /// Interval enclosure of the value of `x`.
    pub fn enclose(&self, x: &Fe) -> (Q, Q) {
        let [a, b, c] = &x.c;
        let (lo, hi) = (&self.lo, &self.hi);
        let (lo2, hi2) = (lo * lo, hi * hi);
        let span = |k: &Q, l: &Q, h: &Q| -> (Q, Q) {
            if k.is_negative() {
                (k * h, k * l)
            } else {
                (k * l, k * h)
            }
        };
        let (b0, b1) = span(b, lo, hi);
        let (c0, c1) = span(c, &lo2, &hi2);
        (a + b0 + c0, a + b1 + c1)
    }
}

/// Cached refinements at depths 24, 48, 96, ... bisections. The cache only
/// avoids recomputation; every level is a valid isolating interval.
fn level(k: usize) -> EmbeddingInterval {
    static CACHE: OnceLock<Mutex<Vec<EmbeddingInterval>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(Vec::new()));
    let mut levels = cache.lock().unwrap_or_else(|e| e.into_inner());
    while levels.len() <= k {
        let (mut iv, steps) = match levels.last() {
            None => (EmbeddingInterval::initial(), 24),
            Some(last) => (last.clone(), 24usize << (levels.len() - 1)),
        };
        for _ in 0..steps {
            iv = iv.bisect();
        }
        levels.push(iv);
    }
    levels[k].clone()
}

/// An isolating interval of width at most 2^-bits.
pub fn alpha_interval(bits: u32) -> EmbeddingInterval {
    let mut k = 0;
    while 24usize << k < bits as usize + 8 {
        k += 1;
    }
    level(k)
}

pub fn sign(x: &Fe) -> i8 {
    if x.is_zero() {
        return 0;
    }
    if let Some(r) = x.as_rational() {
        return if r.is_positive() { 1 } else { -1 };
    }
    // Floating filter: accept the f64 sign when it clears the rounding error by a wide margin.
    let f = |r: &Q| r.to_f64().unwrap_or(f64::NAN);
    let scale = f(&x.c[0]).abs() + f(&x.c[1]).abs() + f(&x.c[2]).abs();
    let approx = x.to_f64();
    if scale.is_finite() && approx.is_finite() && approx.abs() > 1e-9 * scale {
        return if approx > 0.0 { 1 } else { -1 };
    }
    let mut k = 0;
    loop {
        let (lo, hi) = level(k).enclose(x);
        if lo.is_positive() {
            return 1;
        }
        if hi.is_negative() {
            return -1;
        }
        k += 1;
    }
}

// ---------------------------------------------------------------------------
// Algebraic predicates

pub fn minpoly(x: &Fe) -> RationalPolynomial {
    if let Some(r) = x.as_rational() {
        return RationalPolynomial::new(vec![-r.clone(), Q::one()]);
    }
    // x³ = c0 + c1 x + c2 x², solved in the basis {1, α, α²}.
    let x2 = x.square();
    let x3 = &x2 * x;
    let mut m: [[Q; 3]; 3] = Default::default();
    for i in 0..3 {
        m[i][0] = if i == 0 { Q::one() } else { Q::zero() };
        m[i][1] = x.c[i].clone();
        m[i][2] = x2.c[i].clone();
    }
    let [c0, c1, c2] = solve3(m, x3.c.clone()).expect("irrational element has degree 3");
    RationalPolynomial::new(vec![-c0, -c1, -c2, Q::one()])
}

fn rational_sqrt(r: &Q) -> Option<Q> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Q::new(sn, sd))
}

/// Decides whether x is a square in Q(α); the witness root is the positive one.
///
/// Rational x: a quadratic subfield cannot sit inside a cubic field, so x is a
/// square in Q(α) iff it is a rational square. Cubic x: x is a square iff
/// minpoly(x)(X²) has an irreducible cubic factor g; then a root y of g with
/// y² = x satisfies y(x + g₁) = −(g₂x + g₀).
pub fn is_square(x: &Fe) -> (bool, Option<Fe>) {
    if x.is_zero() {
        return (true, Some(Fe::zero()));
    }
    if x.is_negative() {
        return (false, None);
    }
    if let Some(r) = x.as_rational() {
        return match rational_sqrt(r) {
            Some(s) => (true, Some(Fe::from_q(s))),
            None => (false, None),
        };
    }
    let lifted = minpoly(x).compose_x_squared();
    let factors = polyalg::factorize(&lifted);
    let Some(g) = factors.factors.iter().map(|f| &f.poly).find(|g| g.degree() == Some(3)) else {
        return (false, None);
    };
    let g = g.monic();
    let co = g.coeffs();
    let num = -(x.scale(&co[2]) + Fe::from_q(co[0].clone()));
    let den = x + &Fe::from_q(co[1].clone());
    let y = &num / &den;
    debug_assert_eq!(y.square(), *x);
    (true, Some(y.abs()))
}

// ---------------------------------------------------------------------------
// Text form "a+b*x+c*x^2"

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, r) in self.c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let mag = r.abs();
            if first {
                if r.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if r.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*x")?,
                _ => write!(f, "{mag}*x^2")?,
            }
        }
        Ok(())
    }
}

fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Q::new(n, d))
    } else {
        Ok(Q::from_integer(s.parse().map_err(|_| bad())?))
    }
}

impl FromStr for Fe {
    type Err = Error;

    /// Accepts sums of terms `r`, `r*x`, `r*x^2`, `x`, `x^2` (also `a`/`alpha`
    /// for the generator), or a comma triple `a,b,c`.
    fn from_str(s: &str) -> Result<Fe> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty field element".into()));
        }
        if compact.contains(',') {
            let parts: Vec<&str> = compact.split(',').collect();
            if parts.len() != 3 {
                return Err(Error::Parse(format!("expected a,b,c in `{s}`")));
            }
            return Ok(Fe::new(
                parse_rational(parts[0])?,
                parse_rational(parts[1])?,
                parse_rational(parts[2])?,
            ));
        }
        let normalized = compact.replace("alpha", "x");
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in normalized.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut out: [Q; 3] = Default::default();
        for t in terms {
            let (neg, body) = match t.strip_prefix('-') {
                Some(b) => (true, b),
                None => (false, t.strip_prefix('+').unwrap_or(&t)),
            };
            let (coef, power) = if let Some(pos) = body.find('x') {
                let coef_part = body[..pos].trim_end_matches('*');
                let pow_part = &body[pos + 1..];
                let power = match pow_part {
                    "" => 1,
                    p => p
                        .strip_prefix('^')
                        .and_then(|e| e.parse::<usize>().ok())
                        .ok_or_else(|| Error::Parse(format!("bad power in `{t}`")))?,
                };
                let coef = if coef_part.is_empty() { Q::one() } else { parse_rational(coef_part)? };
                (coef, power)
            } else {
                (parse_rational(body)?, 0)
            };
            let coef = if neg { -coef } else { coef };
            if power > 2 {
                let term = Fe::alpha().pow(power as u32).scale(&coef);
                for i in 0..3 {
                    out[i] += &term.c[i];
                }
            } else {
                out[power] += coef;
            }
        }
        let [a, b, c] = out;
        Ok(Fe::new(a, b, c))
    }
}
