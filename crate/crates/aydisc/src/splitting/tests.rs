use super::*;
use crate::numfield::qf;

fn fe(a: i64, b: i64, c: i64) -> Fe {
    Fe::from_ints(a, b, c)
}

fn ay_split() -> Splitting2T2C {
    split_2t2c(&build_ay(), &ay_xi(), DEFAULT_MAX_STEPS).unwrap()
}

#[test]
fn slope_alpha_plus_alpha_squared() {
    let s = ay_split();
    assert_eq!(s.saddles.len(), 4);
    assert!(s.saddles.iter().all(|b| b.holonomy == s.saddles[0].holonomy));
    assert_eq!(s.tori[0].area, fe(0, 4, 0));
    assert_eq!(s.tori[1].area, fe(-8, 12, 8));
    assert_eq!(s.cylinders[0].area, s.cylinders[1].area);
    let total = [&s.tori[0].area, &s.tori[1].area, &s.cylinders[0].area, &s.cylinders[1].area]
        .into_iter()
        .fold(Fe::zero(), |acc, a| &acc + a);
    assert_eq!(total, build_ay().area());
    assert_eq!([s.tori[0].slits, s.cylinders[0].boundary, s.tori[1].slits, s.cylinders[1].boundary], [
        [1, 2],
        [2, 3],
        [3, 4],
        [1, 4]
    ]);
    for t in &s.tori {
        assert_eq!(t.lattice.area(), t.area);
        assert!(!t.lattice.contains(&s.saddles[0].holonomy));
    }
    for c in &s.cylinders {
        assert!(c.lattice.contains(&s.saddles[0].holonomy));
    }
}

#[test]
fn completely_periodic_direction_is_rejected() {
    let r = split_2t2c(&build_ay(), &ay_theta(), DEFAULT_MAX_STEPS);
    assert!(matches!(r, Err(Error::NotA2T2CDirection(_))), "{r:?}");
}

fn adjusted_split() -> (AdjustedSurface, Splitting2T2C) {
    let adj = adjusted_ay().unwrap();
    let s = split_2t2c(&adj.surface, &Vec2::from_ints(1, 0), DEFAULT_MAX_STEPS).unwrap();
    (adj, s)
}

#[test]
fn adjusted_horizontal_splitting() {
    let (adj, s) = adjusted_split();
    assert_eq!(adj.beta, Vec2::from_ints(1, 0));
    assert_eq!(adj.gamma2, Vec2::from_ints(0, -1));
    assert_eq!((adj.g2.clone(), adj.g3.clone(), adj.g6.clone()), (Fe::one(), fe(5, 4, 3), fe(1, 2, 1)));
    let ay = ay_split();
    let k = &s.tori[0].area / &ay.tori[0].area;
    assert_eq!(&s.tori[1].area / &ay.tori[1].area, k);
    assert_eq!(k, adj.matrix.det());
    let [t1, t2] = s.torus_twists().unwrap();
    assert_eq!(t1, Fe::new(qf(1, 2), qf(0, 1), qf(-1, 2)));
    assert_eq!(t2, Fe::new(qf(3, 2), qf(-1, 1), qf(-1, 2)));
    assert!(!t1.is_rational() && !t2.is_rational());
    let l1 = Lattice::new(Vec2::new(Fe::zero(), adj.g3.clone()), &adj.beta + &adj.h_s).unwrap();
    let l2 = Lattice::new(Vec2::new(Fe::zero(), adj.g6.clone()), &adj.beta + &adj.h_m).unwrap();
    assert!(s.tori[0].lattice.same_as(&l1));
    assert!(s.tori[1].lattice.same_as(&l2));
}

#[test]
fn hyperelliptic_condition_on_adjusted_surface() {
    let adj = adjusted_ay().unwrap();
    let d = decompose_default(&build_ay(), &ay_theta(), &Marking::preset("appendix-a1").unwrap(), 0).unwrap();
    let img = |l: usize| adj.matrix.apply(&d.saddles[l - 1].holonomy);
    assert_eq!(img(2), img(5));
    assert_eq!(img(2), adj.gamma2);
}

#[test]
fn ratner_on_adjusted_tori() {
    let (_, s) = adjusted_split();
    let (l1, l2) = (&s.tori[0].lattice, &s.tori[1].lattice);
    let r = ratner_hypotheses(l1, l2).unwrap();
    assert_eq!(r.no_horizontal, [true, true]);
    assert_eq!(r.sqrt_area_irrational, [true, true]);
    assert!(r.distinct_extensions && r.distinct_fields_over_q && r.holds());
    assert!(!ratner_hypotheses(l1, l1).unwrap().distinct_extensions);
    let nine = Fe::int(3);
    let scaled = l2.map(|g| g.scale(&nine)).unwrap();
    let r2 = ratner_hypotheses(l1, &scaled).unwrap();
    assert_eq!((r2.no_horizontal, r2.sqrt_area_irrational, r2.distinct_extensions), (r.no_horizontal, r.sqrt_area_irrational, r.distinct_extensions));
}

#[test]
fn twisted_family_at_origin() {
    let (adj, s) = adjusted_split();
    let fam = build_twisted_family(&adj);
    let z = Fe::zero();
    let (ls, v) = fam.specialize(&z, &z).unwrap();
    let vy = &(&(&Fe::int(2) * &adj.g2) + &adj.g6) + &adj.g3;
    assert_eq!(v, Vec2::new(Fe::one(), vy.clone()));
    assert!(ls[2].same_as(&Lattice::new(Vec2::new(Fe::zero(), adj.g2.clone()), v.clone()).unwrap()));
    assert_eq!(ls[0].area(), s.tori[0].area);
    assert_eq!(ls[1].area(), s.tori[1].area);
    assert_eq!(ls[2].area(), s.cylinders[0].area);
    let [d1, d2] = fam.displayed_areas();
    assert_eq!(d1, fam.areas[0]);
    assert_eq!(d2, fam.areas[1]);
    let j = fam.jacobian_psi();
    assert_eq!(j.as_constant(), Some(fam.expected_jacobian()));
    assert!(fam.expected_jacobian().is_positive());
    // The twisted splitting at (0, 0) is the splitting in direction V(0, 0).
    let g = split_2t2c(&adj.surface, &v, DEFAULT_MAX_STEPS).unwrap();
    assert!(g.tori[0].lattice.same_as(&ls[0]));
    assert!(g.tori[1].lattice.same_as(&ls[1]));
    assert!(g.cylinders[0].lattice.same_as(&ls[2]));
}

#[test]
fn twisted_instances() {
    let adj = adjusted_ay().unwrap();
    let fam = build_twisted_family(&adj);
    let r = twisted_instance_checks(&fam, &Fe::zero(), &Fe::zero()).unwrap();
    assert_eq!(r.parallel, [false, false]);
    assert!(r.field.distinct_extensions && r.passes());
    let r = twisted_instance_checks(&fam, &Fe::from_q(qf(1, 7)), &Fe::from_q(qf(1, 11))).unwrap();
    assert_eq!(r.areas[0], fam.areas[0].eval(&r.u1, &r.u2).abs());
    // g₁ ∥ V: choose γ′₃ so that (u₁|γ′₃|, |γ′₃|) is a multiple of V at (1, 0).
    let mut bad = fam.clone();
    bad.lattices[0][0] = bad.v.clone();
    bad.lattices[0][1] = SymVec { x: crate::polyalg::BivarPoly::constant(Fe::one()), y: crate::polyalg::BivarPoly::zero() };
    let r = twisted_instance_checks(&bad, &Fe::zero(), &Fe::zero()).unwrap();
    assert!(r.parallel[0] && !r.passes());
}

#[test]
fn eta() {
    let r = eta_jacobian_check();
    assert!(r.holds);
    assert_eq!(r.at_origin, Some(Fe::int(4)));
    assert!(!eta_jacobian_check_with(3).holds);
}

#[test]
fn extension_polynomials() {
    let c = extension_certificates().unwrap();
    assert_eq!(c.q, RationalPolynomial::from_ints(&[-1, 0, 1, 0, 1, 0, 1]));
    assert!(c.q_eisenstein_2_shift_1);
    assert_eq!(c.s, RationalPolynomial::from_ints(&[-7, 0, 19, 0, -5, 0, 1]));
    assert!(c.s_certificate.is_some());
    assert!(sqrt_extension_distinct(&fe(0, 4, 0), &fe(-8, 12, 8)).unwrap());
}

#[test]
fn rational_points_away_from_the_origin_can_be_exceptional() {
    let adj = adjusted_ay().unwrap();
    let fam = build_twisted_family(&adj);
    let (z, h) = (Fe::zero(), Fe::from_q(qf(1, 2)));
    let r = twisted_instance_checks(&fam, &z, &h).unwrap();
    assert_eq!(r.parallel, [true, true]);
    let r = twisted_instance_checks(&fam, &h, &z).unwrap();
    assert!(!r.field.distinct_extensions);
    assert!(matches!(twisted_instance_checks(&fam, &h, &h), Err(Error::DegenerateInstance(_))));
    for (a, b) in [(1, 7), (1, 11), (2, 21), (1, 50)] {
        let u = Fe::from_q(qf(a, b));
        assert!(twisted_instance_checks(&fam, &u, &u).unwrap().passes());
    }
}
