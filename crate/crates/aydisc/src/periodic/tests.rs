use super::*;
use crate::surface::build_ay;

fn fe(a: i64, b: i64, c: i64) -> Fe {
    Fe::from_ints(a, b, c)
}

fn a1() -> PeriodicDirectionData {
    decompose_default(&build_ay(), &slope_direction(&fe(1, 0, -1)), &Marking::preset("appendix-a1").unwrap(), 0)
        .unwrap()
}

fn a2() -> PeriodicDirectionData {
    decompose_default(&build_ay(), &slope_direction(&fe(3, 0, 1)), &Marking::preset("appendix-a2").unwrap(), -1)
        .unwrap()
}

#[test]
fn slope_one_minus_alpha_squared() {
    let d = a1();
    let l2 = [fe(16, 18, 10), fe(4, -6, -1), fe(16, 18, 10), fe(4, -6, 6), fe(4, -6, -1), fe(4, -6, 6)];
    assert_eq!(d.lengths_squared(), l2);
    assert_eq!(d.heights(), vec![fe(2, -4, 2), fe(-2, 2, 4), fe(-2, 6, -4)]);
    assert_eq!(d.top_cycles(), vec![vec![2, 4, 5, 1], vec![6], vec![3]]);
    assert_eq!(d.bottom_cycles(), vec![vec![3, 2, 6, 5], vec![4], vec![1]]);
    assert_eq!(d.normalized_twist_squares(), vec![fe(0, 0, 0), fe(1, -2, 1)]);
    let c = &d.cylinders[0];
    assert_eq!(c.width, Vec2::new(fe(4, 4, 2), fe(2, 4, 2)));
    assert_eq!(c.twist, Vec2::new(fe(1, 0, -1), fe(0, 2, -2)));
    let minv = d.normalizing_matrix().unwrap().inv().unwrap();
    assert_eq!(minv.column(0), Vec2::new(fe(4, 4, 2), fe(2, 4, 2)));
    assert_eq!(minv.column(1), Vec2::new(fe(1, 0, -1), fe(2, -2, 0)));
    let small = &d.cylinders[2];
    let t = d.normalized_twists()[1].clone();
    assert_eq!(&t.square() * &small.width.norm2(), fe(4, 8, -8));
}

#[test]
fn slope_three_plus_alpha_squared() {
    let d = a2();
    let g = fe(26, 20, 11);
    let big = fe(144, 114, 74);
    let five = fe(1612, 1354, 878);
    assert_eq!(d.lengths_squared(), vec![g.clone(), big.clone(), big, g, five.clone(), five]);
    assert_eq!(d.heights(), vec![fe(-6, 8, 6), fe(-2, 6, -4), fe(10, -14, -8)]);
    assert_eq!(d.top_cycles(), vec![vec![4, 3, 1, 6], vec![2], vec![5]]);
    assert_eq!(d.bottom_cycles(), vec![vec![5, 4, 2, 1], vec![3], vec![6]]);
    assert_eq!(d.normalized_twists()[0], Fe::int(3));
    assert_eq!(d.normalized_twist_squares(), vec![Fe::int(9), fe(1, -2, 1)]);
    let minv = d.normalizing_matrix().unwrap().inv().unwrap();
    assert_eq!(minv.column(0), Vec2::new(fe(14, 12, 8), fe(46, 40, 26)));
    let tau = minv.column(1);
    assert_eq!(&tau.y / &tau.x, &fe(367, 252, 175) / &Fe::int(169));
}

#[test]
fn projective_heights_agree() {
    let want = vec![fe(3, 3, 2), fe(2, 2, 1), Fe::one()];
    assert_eq!(projectivize(&a1().heights()).unwrap(), want);
    assert_eq!(projectivize(&a2().heights()).unwrap(), want);
}

#[test]
fn areas_add_up_and_holonomy_is_exact() {
    for d in [a1(), a2()] {
        let mut area = Fe::zero();
        for c in &d.cylinders {
            area += &c.area();
        }
        assert_eq!(area, build_ay().area());
        for s in &d.saddles {
            let sum = s.segments.iter().fold(Vec2::zero(), |acc, g| &acc + &(&g.to - &g.from));
            assert_eq!(sum, s.holonomy);
        }
    }
}

#[test]
fn torus_slope_one() {
    let t = crate::surface::tests_support::unit_torus();
    let seps = trace_separatrices(&t, &Vec2::from_ints(1, 1), 10, &Labeling::Auto).unwrap();
    assert_eq!(seps.len(), 1);
    assert_eq!(seps[0].holonomy, Vec2::from_ints(1, 1));
    let d = decompose_default(&t, &Vec2::from_ints(1, 0), &Marking::Smallest, 0).unwrap();
    assert_eq!(d.normalizing_matrix().unwrap(), Matrix2::identity());
}

#[test]
fn json_round_trip() {
    let d = a1();
    assert_eq!(PeriodicDirectionData::from_json(&d.to_json()).unwrap(), d);
}

#[test]
fn round_trip_through_cylinders() {
    let d = a1();
    let s = crate::surface::build_from_cylinders(&d.to_cylinder_spec()).unwrap();
    let e = decompose_default(&s, &d.direction, &Marking::Explicit(d.marking()), 0).unwrap();
    assert_eq!(e.lengths_squared(), d.lengths_squared());
    assert_eq!(e.heights(), d.heights());
    assert_eq!(e.bottom_cycles(), d.bottom_cycles());
    assert_eq!(e.top_cycles(), d.top_cycles());
    assert_eq!(e.normalized_twists(), d.normalized_twists());
}

#[test]
fn bad_marking() {
    let r = decompose_default(&build_ay(), &slope_direction(&fe(1, 0, -1)), &Marking::Explicit(vec![(1, 1)]), 0);
    assert!(matches!(r, Err(Error::InvalidMarking(_))));
}

