//! Bracket identities in 𝔰𝔩₂ and in (𝔫₁⊕𝔞₁⊕𝔲₁)⊕(𝔫₂⊕𝔞₂⊕𝔲₂)⊕𝔫₃, with the
//! coefficients α₁..α₇ kept symbolic as Laurent monomials.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::numfield::{q, Q};

type Mono = [i32; 7];

/// Laurent polynomial over ℚ in α₁..α₇.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct LPoly(BTreeMap<Mono, Q>);

impl LPoly {
    fn constant(c: Q) -> Self {
        Self::term(c, [0; 7])
    }

    fn term(c: Q, m: Mono) -> Self {
        let mut t = BTreeMap::new();
        if !c.is_zero() {
            t.insert(m, c);
        }
        LPoly(t)
    }

    /// α₇/αᵢ.
    fn ratio(i: usize) -> Self {
        let mut m = [0; 7];
        m[6] += 1;
        m[i - 1] -= 1;
        Self::term(Q::one(), m)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn add(&self, o: &Self) -> Self {
        let mut t = self.0.clone();
        for (m, c) in &o.0 {
            let e = t.entry(*m).or_insert_with(Q::zero);
            *e += c;
            if e.is_zero() {
                t.remove(m);
            }
        }
        LPoly(t)
    }

    fn neg(&self) -> Self {
        LPoly(self.0.iter().map(|(m, c)| (*m, -c)).collect())
    }

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    fn mul(&self, o: &Self) -> Self {
        let mut acc = LPoly::default();
        for (m1, c1) in &self.0 {
            for (m2, c2) in &o.0 {
                let mut m = *m1;
                for k in 0..7 {
                    m[k] += m2[k];
                }
                acc = acc.add(&Self::term(c1 * c2, m));
            }
        }
        acc
    }

    /// A single nonzero term: nonvanishing whenever every αᵢ is nonzero.
    fn is_unit_monomial(&self) -> bool {
        self.0.len() == 1
    }
}

impl fmt::Display for LPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(m, c)| {
                let mut s = c.to_string();
                for (k, e) in m.iter().enumerate().filter(|(_, e)| **e != 0) {
                    s.push_str(&if *e == 1 { format!("*a{}", k + 1) } else { format!("*a{}^{}", k + 1, e) });
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

type M2 = [[LPoly; 2]; 2];

fn m2_mul(a: &M2, b: &M2) -> M2 {
    let e = |i: usize, j: usize| a[i][0].mul(&b[0][j]).add(&a[i][1].mul(&b[1][j]));
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn m2_sub(a: &M2, b: &M2) -> M2 {
    let e = |i: usize, j: usize| a[i][j].sub(&b[i][j]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn m2_scale(a: &M2, k: &LPoly) -> M2 {
    let e = |i: usize, j: usize| a[i][j].mul(k);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

fn generator(kind: usize) -> M2 {
    let z = LPoly::default;
    let o = || LPoly::constant(Q::one());
    match kind {
        0 => [[z(), o()], [z(), z()]],
        1 => [[o(), z()], [z(), LPoly::constant(q(-1))]],
        _ => [[z(), z()], [o(), z()]],
    }
}

/// Element of the seven-dimensional algebra as three 2×2 blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
struct El([M2; 3]);

impl El {
    fn zero() -> Self {
        let z = || [[LPoly::default(), LPoly::default()], [LPoly::default(), LPoly::default()]];
        El([z(), z(), z()])
    }

    /// e₁..e₆ are (n, a, u) in the two 𝔰𝔩₂ blocks; e₇ is n in the third.
    fn basis(i: usize) -> Self {
        let mut e = El::zero();
        let (block, kind) = if i == 7 { (2, 0) } else { ((i - 1) / 3, (i - 1) % 3) };
        e.0[block] = generator(kind);
        e
    }

    fn scale(&self, k: &LPoly) -> Self {
        El([m2_scale(&self.0[0], k), m2_scale(&self.0[1], k), m2_scale(&self.0[2], k)])
    }

    fn sub(&self, o: &Self) -> Self {
        El([m2_sub(&self.0[0], &o.0[0]), m2_sub(&self.0[1], &o.0[1]), m2_sub(&self.0[2], &o.0[2])])
    }

    fn bracket(&self, o: &Self) -> Self {
        let c = |k: usize| m2_sub(&m2_mul(&self.0[k], &o.0[k]), &m2_mul(&o.0[k], &self.0[k]));
        El([c(0), c(1), c(2)])
    }

    /// Coordinates in e₁..e₇, if the element lies in the span.
    fn coords(&self) -> Option<Vec<LPoly>> {
        let mut out = Vec::new();
        for b in &self.0[..2] {
            if !b[1][1].add(&b[0][0]).is_zero() {
                return None;
            }
            out.extend([b[0][1].clone(), b[0][0].clone(), b[1][0].clone()]);
        }
        let n = &self.0[2];
        if !(n[0][0].is_zero() && n[1][0].is_zero() && n[1][1].is_zero()) {
            return None;
        }
        out.push(n[0][1].clone());
        Some(out)
    }

    /// The coefficient c with self = c·eᵢ, if any.
    fn multiple_of(&self, i: usize) -> Option<LPoly> {
        let cs = self.coords()?;
        cs.iter().enumerate().all(|(k, c)| k + 1 == i || c.is_zero()).then(|| cs[i - 1].clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieCheck {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

fn check(out: &mut Vec<LieCheck>, name: String, holds: bool, detail: String) {
    out.push(LieCheck { name, holds, detail });
}

pub fn lie_bracket_checks() -> Vec<LieCheck> {
    let mut out = Vec::new();
    let (n, a, u) = (El::basis(1), El::basis(2), El::basis(3));
    let two = LPoly::constant(q(2));
    check(&mut out, "[n,a] = -2n".into(), n.bracket(&a) == n.scale(&two.neg()), String::new());
    check(&mut out, "[n,u] = a".into(), n.bracket(&u) == a, String::new());
    check(&mut out, "[a,u] = -2u".into(), a.bracket(&u) == u.scale(&two.neg()), String::new());
    let e7 = El::basis(7);
    let commute = (1..=6).all(|i| e7.bracket(&El::basis(i)) == El::zero());
    check(&mut out, "[e7,e_i] = 0 for i <= 6".into(), commute, String::new());

    // bᵢ = eᵢ if αᵢ = 0, else (α₇/αᵢ)eᵢ − e₇; α₇ ≠ 0 throughout.
    let b = |i: usize, vanishes: bool| if vanishes { El::basis(i) } else { El::basis(i).scale(&LPoly::ratio(i)).sub(&e7) };
    for (base, label) in [(0usize, "first"), (3, "second")] {
        let (i, j, k) = (base + 1, base + 2, base + 3);
        let mut all = true;
        let mut generic = String::new();
        for mask in 0..8u8 {
            let z = |bit: u8| mask & (1 << bit) != 0;
            let (bi, bj, bk) = (b(i, z(0)), b(j, z(1)), b(k, z(2)));
            for (x, y, target) in [(&bi, &bk, j), (&bi, &bj, i), (&bk, &bj, k)] {
                let m = x.bracket(y).multiple_of(target);
                let ok = m.as_ref().is_some_and(LPoly::is_unit_monomial);
                all &= ok;
                if mask == 0 {
                    generic.push_str(&format!("e{target}: {}; ", m.map(|c| c.to_string()).unwrap_or_default()));
                }
            }
        }
        check(&mut out, format!("{label} block brackets are nonzero multiples"), all, generic.trim_end().to_string());
    }
    let b1 = b(1, false);
    let m = b1.bracket(&b(3, false)).multiple_of(2);
    let want = LPoly::term(Q::one(), [-1, 0, -1, 0, 0, 0, 2]);
    check(&mut out, "[b1,b3] = a7^2/(a1 a3) e2".into(), m.as_ref() == Some(&want), want.to_string());
    let recovered = El::basis(1).scale(&LPoly::ratio(1)).sub(&b1) == e7;
    check(&mut out, "e7 = (a7/a1) e1 - b1".into(), recovered, String::new());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_identities_hold() {
        let r = lie_bracket_checks();
        assert_eq!(r.len(), 8);
        for c in &r {
            assert!(c.holds, "{c:?}");
        }
    }

    #[test]
    fn a_wrong_identity_is_caught() {
        let (n, a) = (El::basis(1), El::basis(2));
        assert_ne!(n.bracket(&a), n.scale(&LPoly::constant(q(2))));
        assert!(El::basis(1).bracket(&El::basis(4)).multiple_of(1).unwrap().is_zero());
    }
}
