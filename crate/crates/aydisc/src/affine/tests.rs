use super::*;
use crate::periodic::{decompose_default, slope_direction};
use crate::surface::build_ay;

fn fe(a: i64, b: i64, c: i64) -> Fe {
    Fe::from_ints(a, b, c)
}

fn dphi_tilde() -> Matrix2 {
    Matrix2::new(fe(23, 18, 12), fe(-29, -24, -16), fe(74, 62, 40), fe(-95, -80, -52))
}

fn decomp(slope: Fe, preset: &str, n0: i64) -> PeriodicDirectionData {
    decompose_default(&build_ay(), &slope_direction(&slope), &Marking::preset(preset).unwrap(), n0).unwrap()
}

#[test]
fn finds_the_second_pseudo_anosov() {
    let d1 = decomp(fe(1, 0, -1), "appendix-a1", 0);
    let d2 = decomp(fe(3, 0, 1), "appendix-a2", -1);
    let found = match_directions(&d1, &d2, -5..=5).unwrap();
    let hit = found.iter().find(|c| c.pi1 == vec![6, 4, 5, 3, 1, 2] && c.n0 == -1).expect("candidate");
    assert_eq!(hit.pi2, vec![0, 1, 2]);
    assert_eq!(hit.df, dphi_tilde());
    assert_eq!(hit.classification, Classification::PseudoAnosov);
    assert_eq!(hit.df.apply(&Vec2::new(fe(3, 2, 1), fe(2, 2, 0))), Vec2::new(fe(9, 8, 5), fe(30, 26, 16)));
    assert_eq!(hit.df.apply(&Vec2::new(fe(1, 0, -1), fe(2, -2, 0))), Vec2::new(fe(-9, -10, -9), fe(-34, -30, -20)));
    assert!(verify_candidate(&d1, &d2, hit).unwrap());
}

#[test]
fn same_direction_contains_identity() {
    let d = decomp(fe(1, 0, -1), "appendix-a1", 0);
    let found = match_directions(&d, &d, -2..=2).unwrap();
    assert!(found.iter().any(|c| c.df == Matrix2::identity() && c.pi1 == vec![1, 2, 3, 4, 5, 6]));
    assert!(found.iter().all(|c| c.df.det() == Fe::one()));
}

#[test]
fn rescaled_direction_gives_phi_avatar() {
    let d1 = decomp(fe(1, 0, -1), "appendix-a1", 0);
    let s2 = &fe(1, 0, -1) / &Fe::alpha().square();
    let d2 = decompose_default(&build_ay(), &slope_direction(&s2), &Marking::Smallest, 0).unwrap();
    let found = match_directions(&d1, &d2, DEFAULT_N0_RANGE).unwrap();
    let t = fe(1, 2, 1);
    assert!(found.iter().any(|c| c.df.trace() == t || c.df.trace() == -&t), "{found:?}");
    let phi = dphi();
    for s in &d1.saddles {
        let img = phi.apply(&s.holonomy);
        assert!(d2.saddles.iter().any(|x| x.holonomy == img));
    }
}

#[test]
fn classification() {
    let r = classify(&dphi_tilde()).unwrap();
    assert_eq!(r.classification, Classification::PseudoAnosov);
    assert_eq!(r.expansion_minpoly.unwrap(), RationalPolynomial::from_ints(&[1, 114, -409, 604, -409, 114, 1]));
    assert_eq!(r.degree, Some(6));
    let r = classify(&dphi()).unwrap();
    assert_eq!(r.expansion_minpoly.unwrap(), RationalPolynomial::from_ints(&[-1, -1, -1, 1]));
    let shear = Matrix2::new(Fe::one(), Fe::one(), Fe::zero(), Fe::one());
    assert_eq!(classify(&shear).unwrap().classification, Classification::Parabolic);
    assert_eq!(classify(&shear.scale(&Fe::int(2))), Err(Error::NonUnimodular));
}

#[test]
fn powers_and_foliations() {
    let a = dphi_tilde();
    assert!(!share_power(&dphi(), &a).unwrap());
    assert!(share_power(&a, &a.mul(&a)).unwrap());
    let sh = Matrix2::new(Fe::one(), Fe::int(1), Fe::zero(), Fe::one());
    let conj = sh.mul(&a).mul(&sh.inv().unwrap());
    assert!(!share_power(&a, &conj).unwrap());
    assert!(!is_eigendirection(&a, &Vec2::from_ints(1, 0)));
    assert!(!is_eigendirection(&a, &Vec2::from_ints(0, 1)));
    let shear = Matrix2::new(Fe::one(), Fe::one(), Fe::zero(), Fe::one());
    assert_eq!(share_power(&a, &shear), Err(Error::NotHyperbolic));
}
