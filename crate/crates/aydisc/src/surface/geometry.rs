use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::numfield::Fe;
use crate::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vec2 {
    pub x: Fe,
    pub y: Fe,
}

impl Vec2 {
    pub fn new(x: Fe, y: Fe) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(Fe::int(x), Fe::int(y))
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn scale(&self, c: &Fe) -> Vec2 {
        Vec2::new(&self.x * c, &self.y * c)
    }

    pub fn cross(&self, o: &Vec2) -> Fe {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn dot(&self, o: &Vec2) -> Fe {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn norm2(&self) -> Fe {
        self.dot(self)
    }

    pub fn is_parallel(&self, o: &Vec2) -> bool {
        self.cross(o).is_zero()
    }

    /// λ with self = λ·d, if self is parallel to the nonzero vector d.
    pub fn ratio_to(&self, d: &Vec2) -> Option<Fe> {
        if !self.is_parallel(d) {
            return None;
        }
        if !d.x.is_zero() {
            Some(&self.x / &d.x)
        } else {
            Some(&self.y / &d.y)
        }
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64(), self.y.to_f64())
    }
}

impl Add for &Vec2 {
    type Output = Vec2;
    fn add(self, o: &Vec2) -> Vec2 {
        Vec2::new(&self.x + &o.x, &self.y + &o.y)
    }
}

impl Sub for &Vec2 {
    type Output = Vec2;
    fn sub(self, o: &Vec2) -> Vec2 {
        Vec2::new(&self.x - &o.x, &self.y - &o.y)
    }
}

impl Neg for &Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-&self.x, -&self.y)
    }
}

impl fmt::Display for Vec2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// d ∈ [u1, u2) for a convex sector swept counterclockwise from u1 to u2.
pub(crate) fn in_half_open_sector(u1: &Vec2, u2: &Vec2, d: &Vec2) -> bool {
    let c1 = u1.cross(d).sign();
    (c1 == 0 && u1.dot(d).is_positive()) || (c1 > 0 && d.cross(u2).is_positive())
}

/// [[a, b], [c, d]] acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub d: Fe,
}

impl Matrix2 {
    pub fn new(a: Fe, b: Fe, c: Fe, d: Fe) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(Fe::one(), Fe::zero(), Fe::zero(), Fe::one())
    }

    pub fn from_columns(u: &Vec2, v: &Vec2) -> Self {
        Self::new(u.x.clone(), v.x.clone(), u.y.clone(), v.y.clone())
    }

    pub fn column(&self, i: usize) -> Vec2 {
        match i {
            0 => Vec2::new(self.a.clone(), self.c.clone()),
            _ => Vec2::new(self.b.clone(), self.d.clone()),
        }
    }

    pub fn det(&self) -> Fe {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> Fe {
        &self.a + &self.d
    }

    pub fn transpose(&self) -> Self {
        Self::new(self.a.clone(), self.c.clone(), self.b.clone(), self.d.clone())
    }

    pub fn inv(&self) -> Result<Self> {
        let det = self.det();
        let k = det.inv().map_err(|_| Error::SingularMatrix)?;
        Ok(Self::new(&self.d * &k, -&self.b * &k, -&self.c * &k, &self.a * &k))
    }

    pub fn mul(&self, o: &Matrix2) -> Matrix2 {
        Matrix2::new(
            &self.a * &o.a + &self.b * &o.c,
            &self.a * &o.b + &self.b * &o.d,
            &self.c * &o.a + &self.d * &o.c,
            &self.c * &o.b + &self.d * &o.d,
        )
    }

    pub fn scale(&self, k: &Fe) -> Matrix2 {
        Matrix2::new(&self.a * k, &self.b * k, &self.c * k, &self.d * k)
    }

    pub fn pow(&self, n: u32) -> Matrix2 {
        (0..n).fold(Matrix2::identity(), |acc, _| acc.mul(self))
    }

    pub fn apply(&self, v: &Vec2) -> Vec2 {
        Vec2::new(&self.a * &v.x + &self.b * &v.y, &self.c * &v.x + &self.d * &v.y)
    }

    pub fn entries(&self) -> [&Fe; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sectors() {
        let e = Vec2::from_ints(1, 0);
        let n = Vec2::from_ints(0, 1);
        let w = Vec2::from_ints(-1, 0);
        assert!(in_half_open_sector(&e, &n, &e));
        assert!(!in_half_open_sector(&e, &n, &n));
        assert!(in_half_open_sector(&e, &w, &n));
        assert!(!in_half_open_sector(&e, &w, &w));
        assert!(!in_half_open_sector(&e, &n, &Vec2::from_ints(1, -1)));
    }

    #[test]
    fn matrix_algebra() {
        let m = Matrix2::new(Fe::int(2), Fe::int(1), Fe::int(1), Fe::int(1));
        assert_eq!(m.mul(&m.inv().unwrap()), Matrix2::identity());
        assert_eq!(m.det(), Fe::one());
        assert_eq!(m.apply(&Vec2::from_ints(1, 0)), m.column(0));
    }
}
