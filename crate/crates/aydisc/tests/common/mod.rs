//! Strategies and property checks shared by the property tests and the acceptance gate.
#![allow(dead_code)]

use std::sync::OnceLock;

use aydisc::numfield::{qf, Fe, Q};
use aydisc::periodic::{decompose_default, projectively_equal, slope_direction, Marking, PeriodicDirectionData};
use aydisc::polyalg::factorize;
use aydisc::surface::{build_ay, build_from_cylinders, Matrix2};
use aydisc::RationalPolynomial;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type Check = std::result::Result<(), TestCaseError>;

fn small_q() -> impl Strategy<Value = Q> {
    (-30i64..=30, 1i64..=12).prop_map(|(n, d)| qf(n, d))
}

pub fn fe_strategy() -> impl Strategy<Value = Fe> {
    (small_q(), small_q(), small_q()).prop_map(|(a, b, c)| Fe::new(a, b, c))
}

pub fn triples() -> impl Strategy<Value = (Fe, Fe, Fe)> {
    (fe_strategy(), fe_strategy(), fe_strategy())
}

pub fn field_axioms(x: &Fe, y: &Fe, z: &Fe) -> Check {
    prop_assert_eq!(x + y, y + x);
    prop_assert_eq!(x * y, y * x);
    prop_assert_eq!(&(x + y) + z, x + &(y + z));
    prop_assert_eq!(&(x * y) * z, x * &(y * z));
    prop_assert_eq!(x * &(y + z), &(x * y) + &(x * z));
    prop_assert_eq!(x + &Fe::zero(), x.clone());
    prop_assert_eq!(x * &Fe::one(), x.clone());
    prop_assert!((x + &(-x)).is_zero());
    if x.is_zero() {
        prop_assert!(x.inv().is_err());
    } else {
        prop_assert_eq!(x * &x.inv().unwrap(), Fe::one());
    }
    // The real embedding is an ordered-field map.
    let d = x - y;
    let approx = x.to_f64() - y.to_f64();
    if approx.abs() > 1e-9 {
        prop_assert_eq!(d.sign() as f64, approx.signum());
    }
    if !d.is_zero() {
        prop_assert_eq!((&d * &d).sign(), 1);
    }
    Ok(())
}

/// Kronecker-style oracle: rational roots, then quadratic factors through
/// values at three nonroots. Exponential, valid for degree ≤ 4.
pub fn oracle_is_irreducible(p: &RationalPolynomial) -> bool {
    let n = p.degree().expect("nonzero");
    if n <= 1 {
        return true;
    }
    let (_, ints) = p.primitive_part();
    let to_i = |b: &num_bigint::BigInt| i64::try_from(b).unwrap();
    let lead = to_i(ints.last().unwrap()).abs();
    let c0 = to_i(&ints[0]).abs();
    if c0 == 0 {
        return false;
    }
    for num in divisors(c0) {
        for den in divisors(lead) {
            for s in [1, -1] {
                if p.eval(&qf(s * num, den)).is_zero() {
                    return false;
                }
            }
        }
    }
    if n <= 3 {
        return true;
    }
    let xs = [0i64, 1, -1];
    let vals: Vec<i64> = xs.iter().map(|&x| eval_int(&ints, x)).collect();
    let ds: Vec<Vec<i64>> = vals.iter().map(|&v| divisors(v.abs()).into_iter().flat_map(|d| [d, -d]).collect()).collect();
    for &a in &ds[0] {
        for &b in &ds[1] {
            for &c in &ds[2] {
                let g = aydisc::polyalg::interpolate(&[(qf(0, 1), qf(a, 1)), (qf(1, 1), qf(b, 1)), (qf(-1, 1), qf(c, 1))]);
                if g.degree() == Some(2) && naive_divides(&g, p) {
                    return false;
                }
            }
        }
    }
    true
}

fn eval_int(c: &[num_bigint::BigInt], x: i64) -> i64 {
    c.iter().rev().fold(0i64, |acc, k| acc * x + i64::try_from(k).unwrap())
}

fn divisors(n: i64) -> Vec<i64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Schoolbook long division, independent of the library's `divmod`.
fn naive_divides(d: &RationalPolynomial, p: &RationalPolynomial) -> bool {
    let dc = d.coeffs().to_vec();
    let mut r = p.coeffs().to_vec();
    let m = dc.len() - 1;
    while r.len() > m {
        let k = r.len() - 1;
        let f = &r[k] / &dc[m];
        for i in 0..=m {
            let t = &f * &dc[i];
            r[k - m + i] -= t;
        }
        r.pop();
    }
    r.iter().all(Zero::is_zero)
}

pub fn poly_strategy() -> impl Strategy<Value = RationalPolynomial> {
    poly_of_degree(1..=4)
}

pub fn poly_of_degree(deg: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = RationalPolynomial> {
    deg.prop_flat_map(|n| (prop::collection::vec(-6i64..=6, n), prop::sample::select(vec![-3i64, -2, -1, 1, 2, 3])))
        .prop_map(|(mut c, lead)| {
            c.push(lead);
            RationalPolynomial::from_ints(&c)
        })
}

pub fn factorization_matches_oracle(p: &RationalPolynomial) -> Check {
    let f = factorize(p);
    prop_assert_eq!(&f.product(), p);
    prop_assert_eq!(f.is_irreducible(), oracle_is_irreducible(p));
    for factor in &f.factors {
        prop_assert!(oracle_is_irreducible(&factor.poly), "{:?}", factor.poly);
        prop_assert!(factor.poly.lc().is_positive());
    }
    Ok(())
}

pub fn product_is_reducible(a: &RationalPolynomial, b: &RationalPolynomial) -> Check {
    let p = a * b;
    prop_assert!(!factorize(&p).is_irreducible());
    prop_assert!(!oracle_is_irreducible(&p));
    Ok(())
}

/// Decompositions of the AY surface in slopes 1−α² and 3+α².
pub fn base_directions() -> &'static [(PeriodicDirectionData, Marking); 2] {
    static BASE: OnceLock<[(PeriodicDirectionData, Marking); 2]> = OnceLock::new();
    BASE.get_or_init(|| {
        [("1,0,-1", "a1"), ("3,0,1", "a2")].map(|(s, m)| {
            let m = Marking::preset(m).unwrap();
            (decompose_default(&build_ay(), &slope_direction(&s.parse().unwrap()), &m, 0).unwrap(), m)
        })
    })
}

fn twist_mod_width(d: &PeriodicDirectionData) -> Vec<Fe> {
    d.cylinders.iter().map(|c| c.twist.ratio_to(&c.width).unwrap().fract()).collect()
}

pub type RoundTripCase = (usize, Vec<(i64, i64)>, Vec<(i64, i64)>);

pub fn round_trip_cases() -> impl Strategy<Value = RoundTripCase> {
    (0usize..2, prop::collection::vec((1i64..=9, 1i64..=9), 3), prop::collection::vec((0i64..=20, 1i64..=7), 3))
}

/// Rebuild from rescaled heights and shifted twists, then decompose again.
pub fn round_trip((which, heights, shifts): &RoundTripCase) -> Check {
    let base = &base_directions()[*which].0;
    let mut d = base.clone();
    for (i, c) in d.cylinders.iter_mut().enumerate() {
        c.height = c.height.scale(&qf(heights[i].0, heights[i].1));
        c.twist = &c.twist + &c.width.scale(&Fe::from_q(qf(shifts[i].0, shifts[i].1)));
    }
    d.cylinders.sort_by(|x, y| y.height.cmp(&x.height).then_with(|| y.width.norm2().cmp(&x.width.norm2())));
    let s = build_from_cylinders(&d.to_cylinder_spec()).unwrap();
    let e = decompose_default(&s, &d.direction, &Marking::Explicit(d.marking()), 0).unwrap();
    prop_assert_eq!(e.lengths_squared(), d.lengths_squared());
    prop_assert_eq!(e.heights(), d.heights());
    prop_assert_eq!(e.bottom_cycles(), d.bottom_cycles());
    prop_assert_eq!(e.top_cycles(), d.top_cycles());
    prop_assert_eq!(twist_mod_width(&e), twist_mod_width(&d));
    let area = d.cylinders.iter().fold(Fe::zero(), |acc, c| &acc + &c.area());
    prop_assert_eq!(s.area(), area);
    Ok(())
}

fn fe_small() -> impl Strategy<Value = Fe> {
    (-3i64..=3, -3i64..=3, -3i64..=3, 1i64..=4).prop_map(|(a, b, c, d)| Fe::new(qf(a, d), qf(b, d), qf(c, d)))
}

fn elementary() -> impl Strategy<Value = Matrix2> {
    prop_oneof![
        fe_small().prop_map(|s| Matrix2::new(Fe::one(), s, Fe::zero(), Fe::one())),
        fe_small().prop_map(|t| Matrix2::new(Fe::one(), Fe::zero(), t, Fe::one())),
        (-3i32..=3).prop_map(|k| {
            let a = if k >= 0 { Fe::alpha() } else { Fe::alpha().inv().unwrap() };
            let u = a.pow(k.unsigned_abs());
            let ui = u.inv().unwrap();
            Matrix2::new(u, Fe::zero(), Fe::zero(), ui)
        }),
    ]
}

/// Products of shears and diagonal units: det 1 over ℚ(α).
pub fn sl2() -> impl Strategy<Value = Matrix2> {
    prop::collection::vec(elementary(), 1..=4).prop_map(|ms| ms.iter().fold(Matrix2::identity(), |acc, m| acc.mul(m)))
}

/// (𝒢, L², H) of A·S in direction A·θ agree with those of S in θ; twists agree up to the choice of n₀.
pub fn projective_invariance(a: &Matrix2, which: usize) -> Check {
    prop_assert_eq!(a.det(), Fe::one());
    let (d, marking) = &base_directions()[which];
    let b = if a.apply(&d.direction).x.is_positive() { a.clone() } else { a.scale(&Fe::int(-1)) };
    let s = build_ay().apply_matrix(&b).unwrap();
    let e = decompose_default(&s, &b.apply(&d.direction), marking, 0).unwrap();
    prop_assert_eq!(e.bottom_cycles(), d.bottom_cycles());
    prop_assert_eq!(e.top_cycles(), d.top_cycles());
    prop_assert_eq!(e.marking(), d.marking());
    prop_assert!(projectively_equal(&e.lengths_squared(), &d.lengths_squared()));
    prop_assert!(projectively_equal(&e.heights(), &d.heights()));
    let mod1 = |x: &PeriodicDirectionData, n0| x.normalized_twists_wrt(0, n0).iter().map(Fe::fract).collect::<Vec<_>>();
    prop_assert!((-6..=6).any(|n0| mod1(&e, n0) == mod1(d, 0)));
    Ok(())
}
