//! Factorization over Q with irreducibility certificates.
//!
//! Pipeline per squarefree part: rational roots, then a search for a prime
//! modulo which the polynomial stays irreducible (Berlekamp), then Hensel
//! lifting and factor recombination below a Mignotte-type coefficient bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::RationalPolynomial;
use crate::numfield::Q;

const PRIMES: [u64; 25] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IrreducibilityCertificate {
    Linear,
    Eisenstein { prime: u64, shift: i64 },
    ModP { prime: u64 },
    /// No rational root and no product of a proper subset of the p-adic factors
    /// (lifted to p^exponent) yields an integer factor.
    FactorCombination { prime: u64, exponent: u32, local_degrees: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factor {
    /// Primitive integer polynomial with positive leading coefficient.
    pub poly: RationalPolynomial,
    pub multiplicity: usize,
    pub certificate: IrreducibilityCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    /// Rational unit u with p = u · Π fᵢ^mᵢ.
    pub unit: Q,
    pub factors: Vec<Factor>,
}

impl Factorization {
    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].multiplicity == 1
    }

    pub fn product(&self) -> RationalPolynomial {
        let mut acc = RationalPolynomial::constant(self.unit.clone());
        for f in &self.factors {
            for _ in 0..f.multiplicity {
                acc = &acc * &f.poly;
            }
        }
        acc
    }
}

pub fn factorize(p: &RationalPolynomial) -> Factorization {
    assert!(!p.is_zero(), "factorize requires a nonzero polynomial");
    let mut factors = Vec::new();
    for (part, mult) in p.squarefree_decomposition() {
        let (_, ints) = part.primitive_part();
        for (f, cert) in factor_squarefree(&ints) {
            factors.push(Factor { poly: RationalPolynomial::from_bigints(&f), multiplicity: mult, certificate: cert });
        }
    }
    factors.sort_by(|a, b| {
        let key = |f: &Factor| f.poly.degree().unwrap_or(0);
        key(a).cmp(&key(b)).then_with(|| a.poly.coeffs().cmp(b.poly.coeffs()))
    });
    let mut prod = RationalPolynomial::one();
    for f in &factors {
        for _ in 0..f.multiplicity {
            prod = &prod * &f.poly;
        }
    }
    let unit = p.lc() / prod.lc();
    Factorization { unit, factors }
}

/// Independent re-check of a certificate against `poly`.
pub fn verify_certificate(poly: &RationalPolynomial, cert: &IrreducibilityCertificate) -> bool {
    let (_, f) = poly.primitive_part();
    let deg = f.len().saturating_sub(1);
    match cert {
        IrreducibilityCertificate::Linear => deg == 1,
        IrreducibilityCertificate::Eisenstein { prime, shift } => {
            super::eisenstein_check(poly, *prime, *shift).unwrap_or(false)
        }
        IrreducibilityCertificate::ModP { prime } => {
            let p = *prime;
            let lc_ok = !(&f[deg] % BigInt::from(p)).is_zero();
            lc_ok && rabin_irreducible(&reduce_mod(&f, p), p)
        }
        IrreducibilityCertificate::FactorCombination { prime, exponent, local_degrees } => {
            let p = *prime;
            if deg < 2 || rational_root(&f).is_some() {
                return false;
            }
            let fp = reduce_mod(&f, p);
            if (&f[deg] % BigInt::from(p)).is_zero() || !is_squarefree_mod(&fp, p) {
                return false;
            }
            let local = berlekamp(&monic_mod(&fp, p), p);
            let mut degs: Vec<usize> = local.iter().map(|g| g.len() - 1).collect();
            let mut expect = local_degrees.clone();
            degs.sort_unstable();
            expect.sort_unstable();
            if degs != expect {
                return false;
            }
            let k = (*exponent).max(lift_exponent(&f, p));
            let lifted = hensel_lift(&f, &local, p, k);
            let modulus = BigInt::from(p).pow(k);
            recombine(&f, &lifted, &modulus).len() == 1
        }
    }
}

// ---------------------------------------------------------------------------
// Over Z

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let small = n.to_u64().filter(|&v| v < 1_000_000_000_000)?;
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= small {
        if small % d == 0 {
            out.push(BigInt::from(d));
            if d * d != small {
                out.push(BigInt::from(small / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn eval_int(f: &[BigInt], num: &BigInt, den: &BigInt) -> BigInt {
    // den^deg · f(num/den)
    let deg = f.len() - 1;
    let mut acc = BigInt::zero();
    let mut den_pow = BigInt::one();
    let mut terms = Vec::with_capacity(f.len());
    for _ in 0..=deg {
        terms.push(den_pow.clone());
        den_pow *= den;
    }
    for (i, c) in f.iter().enumerate().rev() {
        acc = acc * num + c * &terms[deg - i];
    }
    acc
}

/// A rational root (num, den) if one exists and the divisor search is feasible.
fn rational_root(f: &[BigInt]) -> Option<(BigInt, BigInt)> {
    if f[0].is_zero() {
        return Some((BigInt::zero(), BigInt::one()));
    }
    let nums = divisors(&f[0])?;
    let dens = divisors(f.last().unwrap())?;
    for d in &dens {
        for n in &nums {
            if !n.gcd(d).is_one() {
                continue;
            }
            for s in [n.clone(), -n] {
                if eval_int(f, &s, d).is_zero() {
                    return Some((s, d.clone()));
                }
            }
        }
    }
    None
}

fn exact_div_int(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let (n, m) = (f.len(), g.len());
    if m > n {
        return None;
    }
    let mut rem = f.to_vec();
    let mut quo = vec![BigInt::zero(); n - m + 1];
    let lc = g.last().unwrap();
    for i in (0..quo.len()).rev() {
        let (c, r) = rem[i + m - 1].div_rem(lc);
        if !r.is_zero() {
            return None;
        }
        for (j, gc) in g.iter().enumerate() {
            rem[i + j] -= &c * gc;
        }
        quo[i] = c;
    }
    rem.iter().all(Zero::is_zero).then_some(quo)
}

fn primitive(f: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = f.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if f.last().unwrap().is_negative() {
        g = -g;
    }
    f.into_iter().map(|c| c / &g).collect()
}

fn factor_squarefree(f: &[BigInt]) -> Vec<(Vec<BigInt>, IrreducibilityCertificate)> {
    let mut out = Vec::new();
    let mut cur = f.to_vec();
    while cur.len() > 2 {
        match rational_root(&cur) {
            Some((n, d)) => {
                let lin = vec![-n, d];
                cur = exact_div_int(&cur, &lin).expect("root gives a factor");
                out.push((lin, IrreducibilityCertificate::Linear));
            }
            None => break,
        }
    }
    match cur.len() {
        0 | 1 => return out,
        2 => {
            out.push((primitive(cur), IrreducibilityCertificate::Linear));
            return out;
        }
        _ => {}
    }
    let Some((p, local)) = choose_prime(&cur) else {
        out.push((cur, IrreducibilityCertificate::FactorCombination { prime: 0, exponent: 0, local_degrees: vec![] }));
        return out;
    };
    if local.len() == 1 {
        out.push((cur, IrreducibilityCertificate::ModP { prime: p }));
        return out;
    }
    let k = lift_exponent(&cur, p);
    let lifted = hensel_lift(&cur, &local, p, k);
    let modulus = BigInt::from(p).pow(k);
    for (g, degs) in recombine_with_degrees(&cur, &lifted, &modulus, &local) {
        let cert = if g.len() == 2 {
            IrreducibilityCertificate::Linear
        } else if degs.len() == 1 {
            IrreducibilityCertificate::ModP { prime: p }
        } else {
            IrreducibilityCertificate::FactorCombination { prime: p, exponent: k, local_degrees: degs }
        };
        out.push((g, cert));
    }
    out
}

/// Among small good primes, the one with the fewest local factors.
fn choose_prime(f: &[BigInt]) -> Option<(u64, Vec<Vec<u64>>)> {
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for &p in PRIMES.iter() {
        if (f.last().unwrap() % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_mod(f, p);
        if !is_squarefree_mod(&fp, p) {
            continue;
        }
        let local = berlekamp(&monic_mod(&fp, p), p);
        let better = best.as_ref().is_none_or(|(_, b)| local.len() < b.len());
        if better {
            best = Some((p, local));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
        tried += 1;
        if tried >= 8 {
            break;
        }
    }
    best
}

fn norm2_ceil(f: &[BigInt]) -> BigInt {
    let s: BigInt = f.iter().map(|c| c * c).sum();
    let r = s.sqrt();
    if &r * &r == s {
        r
    } else {
        r + 1
    }
}

/// Smallest k with p^k > 2 · |lc| · 2^deg · ‖f‖₂.
fn lift_exponent(f: &[BigInt], p: u64) -> u32 {
    let deg = f.len() - 1;
    let bound = BigInt::from(2) * f.last().unwrap().abs() * (BigInt::one() << deg) * norm2_ceil(f);
    let pb = BigInt::from(p);
    let mut k = 1;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    k
}

fn symmetric_mod(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn mul_mod_big(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    mul_int(a, b).into_iter().map(|c| c.mod_floor(m)).collect()
}

fn recombine(f: &[BigInt], lifted: &[Vec<BigInt>], modulus: &BigInt) -> Vec<Vec<BigInt>> {
    let dummy: Vec<Vec<u64>> = lifted.iter().map(|g| vec![0; g.len()]).collect();
    recombine_with_degrees(f, lifted, modulus, &dummy).into_iter().map(|(g, _)| g).collect()
}

/// Zassenhaus recombination; subsets are tried in increasing size so every
/// factor found is irreducible.
fn recombine_with_degrees(
    f: &[BigInt],
    lifted: &[Vec<BigInt>],
    modulus: &BigInt,
    local: &[Vec<u64>],
) -> Vec<(Vec<BigInt>, Vec<usize>)> {
    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut cur = f.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = false;
        for subset in combinations(remaining.len(), size) {
            let chosen: Vec<usize> = subset.iter().map(|&i| remaining[i]).collect();
            let lc = cur.last().unwrap().clone();
            let mut g = vec![lc.clone()];
            for &i in &chosen {
                g = mul_mod_big(&g, &lifted[i], modulus);
            }
            let g: Vec<BigInt> = g.iter().map(|c| symmetric_mod(c, modulus)).collect();
            let g = primitive(g);
            if let Some(quo) = exact_div_int(&cur, &g) {
                let degs = chosen.iter().map(|&i| local[i].len() - 1).collect();
                out.push((g, degs));
                cur = quo;
                remaining.retain(|i| !chosen.contains(i));
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if cur.len() > 1 {
        let degs = remaining.iter().map(|&i| local[i].len() - 1).collect();
        out.push((primitive(cur), degs));
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + n - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting

fn to_big(g: &[u64]) -> Vec<BigInt> {
    g.iter().map(|&c| BigInt::from(c)).collect()
}

fn from_big_mod(g: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    trim(g.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

/// Lifts f ≡ lc · Π gᵢ (mod p), gᵢ monic, to monic factors mod p^k.
fn hensel_lift(f: &[BigInt], local: &[Vec<u64>], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let modulus = BigInt::from(p).pow(k);
    let fk: Vec<BigInt> = f.iter().map(|c| c.mod_floor(&modulus)).collect();
    lift_all(&fk, local, p, k)
}

fn lift_all(f: &[BigInt], local: &[Vec<u64>], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let modulus = BigInt::from(p).pow(k);
    if local.len() == 1 {
        let inv = BigInt::from(inv_mod(from_big_mod(&[f.last().unwrap().clone()], p)[0], p));
        let inv = lift_inverse(f.last().unwrap(), &inv, p, k);
        return vec![f.iter().map(|c| (c * &inv).mod_floor(&modulus)).collect()];
    }
    let g = local[0].clone();
    let lc = from_big_mod(&[f.last().unwrap().clone()], p)[0];
    let mut h = vec![lc];
    for l in &local[1..] {
        h = mul_mod(&h, l, p);
    }
    let (gk, hk) = lift_pair(f, &g, &h, p, k);
    let mut out = vec![gk];
    out.extend(lift_all(&hk, &local[1..], p, k));
    out
}

/// Inverse of a modulo p^k from an inverse modulo p (Newton iteration).
fn lift_inverse(a: &BigInt, inv_p: &BigInt, p: u64, k: u32) -> BigInt {
    let modulus = BigInt::from(p).pow(k);
    let mut x = inv_p.clone();
    let mut reached = 1;
    while reached < k {
        x = (&x * (BigInt::from(2) - a * &x)).mod_floor(&modulus);
        reached *= 2;
    }
    x.mod_floor(&modulus)
}

/// Linear Hensel lifting of f ≡ g·h (mod p), g monic, to mod p^k.
fn lift_pair(f: &[BigInt], g: &[u64], h: &[u64], p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (_, s, t) = ext_gcd_mod(g, h, p);
    let modulus = BigInt::from(p).pow(k);
    let mut gk = to_big(g);
    let mut hk = to_big(h);
    *hk.last_mut().unwrap() = f.last().unwrap().mod_floor(&modulus);
    let mut pj = BigInt::from(p);
    for _ in 1..k {
        let prod = mul_int(&gk, &hk);
        let n = f.len().max(prod.len());
        let pj1 = &pj * BigInt::from(p);
        let diff: Vec<BigInt> = (0..n)
            .map(|i| {
                let a = f.get(i).cloned().unwrap_or_default();
                let b = prod.get(i).cloned().unwrap_or_default();
                (a - b).mod_floor(&pj1)
            })
            .collect();
        let e: Vec<BigInt> = diff.iter().map(|c| c / &pj).collect();
        let e = from_big_mod(&e, p);
        let te = mul_mod(&t, &e, p);
        let (quo, dg) = divrem_mod(&te, g, p);
        let dh = add_mod(&mul_mod(&s, &e, p), &mul_mod(&quo, h, p), p);
        for (i, c) in dg.iter().enumerate() {
            gk[i] = (&gk[i] + &pj * BigInt::from(*c)).mod_floor(&modulus);
        }
        for (i, c) in dh.iter().enumerate() {
            if i >= hk.len() {
                hk.resize(i + 1, BigInt::zero());
            }
            hk[i] = (&hk[i] + &pj * BigInt::from(*c)).mod_floor(&modulus);
        }
        pj = pj1;
    }
    (gk, hk)
}

// ---------------------------------------------------------------------------
// Polynomials over F_p (dense, constant first, trimmed)

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn reduce_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    from_big_mod(f, p)
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, p);
        }
        b = mulmod(b, b, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

fn add_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)) % p).collect())
}

fn sub_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).unwrap_or(&0) + p - b.get(i).unwrap_or(&0)) % p).collect())
}

fn mul_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

fn scale_mod(a: &[u64], c: u64, p: u64) -> Vec<u64> {
    trim(a.iter().map(|&x| mulmod(x, c, p)).collect())
}

fn divrem_mod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    let inv = inv_mod(*b.last().unwrap(), p);
    let mut rem = a.to_vec();
    if rem.len() <= db {
        return (Vec::new(), trim(rem));
    }
    let mut quo = vec![0u64; rem.len() - db];
    for i in (0..quo.len()).rev() {
        let c = mulmod(rem[i + db], inv, p);
        if c == 0 {
            continue;
        }
        for (j, &bc) in b.iter().enumerate() {
            rem[i + j] = (rem[i + j] + p - mulmod(c, bc, p)) % p;
        }
        quo[i] = c;
    }
    rem.truncate(db);
    (trim(quo), trim(rem))
}

fn monic_mod(a: &[u64], p: u64) -> Vec<u64> {
    match a.last() {
        None => Vec::new(),
        Some(&lc) => scale_mod(a, inv_mod(lc, p), p),
    }
}

fn gcd_mod(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
    while !y.is_empty() {
        let (_, r) = divrem_mod(&x, &y, p);
        x = y;
        y = r;
    }
    monic_mod(&x, p)
}

/// (d, s, t) with s·a + t·b = d = gcd (monic).
fn ext_gcd_mod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (qt, r) = divrem_mod(&r0, &r1, p);
        let s = sub_mod(&s0, &mul_mod(&qt, &s1, p), p);
        let t = sub_mod(&t0, &mul_mod(&qt, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = inv_mod(*r0.last().unwrap(), p);
    (scale_mod(&r0, inv, p), scale_mod(&s0, inv, p), scale_mod(&t0, inv, p))
}

fn derivative_mod(a: &[u64], p: u64) -> Vec<u64> {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect())
}

fn is_squarefree_mod(f: &[u64], p: u64) -> bool {
    let d = derivative_mod(f, p);
    !d.is_empty() && gcd_mod(f, &d, p).len() == 1
}

fn powmod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = divrem_mod(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divrem_mod(&mul_mod(&acc, &b, p), m, p).1;
        }
        b = divrem_mod(&mul_mod(&b, &b, p), m, p).1;
        e >>= 1;
    }
    acc
}

/// x^(p^j) mod f by repeated p-th powering.
fn frobenius_iter(f: &[u64], p: u64, j: usize) -> Vec<u64> {
    let mut x = vec![0u64, 1];
    for _ in 0..j {
        x = powmod_poly(&x, p, f, p);
    }
    x
}

/// Rabin's test: f of degree n is irreducible over F_p iff x^(p^n) ≡ x and
/// gcd(x^(p^(n/r)) − x, f) = 1 for every prime r | n.
fn rabin_irreducible(f: &[u64], p: u64) -> bool {
    let f = monic_mod(f, p);
    let n = f.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    if sub_mod(&frobenius_iter(&f, p, n), &x, p) != Vec::<u64>::new() {
        return false;
    }
    let mut m = n;
    let mut r = 2;
    let mut prime_divs = Vec::new();
    while m > 1 {
        if m.is_multiple_of(r) {
            prime_divs.push(r);
            while m.is_multiple_of(r) {
                m /= r;
            }
        }
        r += 1;
    }
    prime_divs.iter().all(|&r| {
        let h = sub_mod(&frobenius_iter(&f, p, n / r), &x, p);
        gcd_mod(&f, &h, p).len() == 1
    })
}

/// Berlekamp factorization of a monic squarefree polynomial over F_p.
fn berlekamp(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // Rows of Q − I: x^(ip) mod f.
    let xp = powmod_poly(&[0, 1], p, f, p);
    let mut rows = Vec::with_capacity(n);
    let mut cur = vec![1u64];
    for i in 0..n {
        let mut row = cur.clone();
        row.resize(n, 0);
        row[i] = (row[i] + p - 1) % p;
        rows.push(row);
        cur = divrem_mod(&mul_mod(&cur, &xp, p), f, p).1;
    }
    let kernel = left_kernel(&rows, p);
    let r = kernel.len();
    let mut factors = vec![f.to_vec()];
    if r == 1 {
        return factors;
    }
    for v in kernel.iter().skip(1) {
        let v = trim(v.clone());
        for s in 0..p {
            if factors.len() == r {
                break;
            }
            let vs = sub_mod(&v, &[s], p);
            let mut next = Vec::new();
            for h in factors {
                if h.len() <= 2 {
                    next.push(h);
                    continue;
                }
                let g = gcd_mod(&h, &vs, p);
                if g.len() > 1 && g.len() < h.len() {
                    let other = monic_mod(&divrem_mod(&h, &g, p).0, p);
                    next.push(g);
                    next.push(other);
                } else {
                    next.push(h);
                }
            }
            factors = next;
        }
        if factors.len() == r {
            break;
        }
    }
    factors.sort();
    factors
}

/// Basis of {v : v · M = 0}; the first vector is (1, 0, …, 0).
fn left_kernel(rows: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = rows.len();
    // Transpose so the left kernel of M is the right kernel of Mᵀ.
    let mut m: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|i| rows[i][j]).collect()).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..n).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for k in 0..n {
            m[r][k] = mulmod(m[r][k], inv, p);
        }
        for i in 0..n {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for k in 0..n {
                    m[i][k] = (m[i][k] + p - mulmod(f, m[r][k], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free {
        let mut v = vec![0u64; n];
        v[fc] = 1;
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = (p - m[row][fc]) % p;
        }
        basis.push(v);
    }
    basis.sort_by_key(|v| trim(v.clone()).len());
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> RationalPolynomial {
        RationalPolynomial::from_ints(c)
    }

    #[test]
    fn known_irreducibles() {
        for f in [p(&[-7, 0, 19, 0, -5, 0, 1]), p(&[1, 114, -409, 604, -409, 114, 1]), p(&[-1, 0, 1, 0, 1, 0, 1])] {
            let fz = factorize(&f);
            assert!(fz.is_irreducible(), "{f}");
            assert!(verify_certificate(&fz.factors[0].poly, &fz.factors[0].certificate));
        }
    }

    #[test]
    fn splits() {
        let fz = factorize(&p(&[-1, 0, 1]));
        assert_eq!(fz.factors.iter().map(|f| f.poly.clone()).collect::<Vec<_>>(), vec![p(&[-1, 1]), p(&[1, 1])]);
        // X⁴ + 1 is reducible modulo every prime.
        let fz = factorize(&p(&[1, 0, 0, 0, 1]));
        assert!(fz.is_irreducible());
        assert!(matches!(fz.factors[0].certificate, IrreducibilityCertificate::FactorCombination { .. }));
        assert!(verify_certificate(&fz.factors[0].poly, &fz.factors[0].certificate));
        let prod = &p(&[1, 0, 0, 0, 1]) * &p(&[-2, 0, 0, 1]);
        let fz = factorize(&(&prod * &p(&[3, 1])).scale(&crate::numfield::qf(-2, 3)));
        assert_eq!(fz.product(), (&prod * &p(&[3, 1])).scale(&crate::numfield::qf(-2, 3)));
        assert_eq!(fz.factors.len(), 3);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // (X² − 2 − 3)² − 24 = X⁴ − 10X² + 1, minimal polynomial of √2 + √3.
        let f = p(&[1, 0, -10, 0, 1]);
        let fz = factorize(&f);
        assert!(fz.is_irreducible());
        // It splits as a product of conjugate quadratics in Q(√2)[X] but not over Q.
        let g = &p(&[-1, 0, 1]) * &p(&[1, 0, -10, 0, 1]);
        assert_eq!(factorize(&g).factors.len(), 3);
    }

    #[test]
    fn berlekamp_counts() {
        // X^4 + 1 mod 3 splits into two quadratics.
        let f = vec![1u64, 0, 0, 0, 1];
        let fs = berlekamp(&f, 3);
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|g| g.len() == 3));
        assert!(rabin_irreducible(&[1, 1, 1], 2));
        assert!(!rabin_irreducible(&[1, 0, 1], 2));
    }

    #[test]
    fn combinations_enumerate() {
        assert_eq!(combinations(4, 2).len(), 6);
        assert_eq!(combinations(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(combinations(5, 1).len(), 5);
    }
}
