//! Acceptance gate: one line per criterion, exact comparisons throughout.
//!
//! Exit status is 0 when every failing sub-check is listed in `KNOWN_RED` and
//! every listed sub-check does fail. Known discrepancies are printed, never skipped.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use aydisc::affine::{classify, dphi, is_eigendirection, match_directions, share_power, Classification, DEFAULT_N0_RANGE};
use aydisc::numfield::{qf, Fe};
use aydisc::periodic::{decompose_default, slope_direction, Marking, PeriodicDirectionData};
use aydisc::polyalg::{eisenstein_check, factorize, verify_certificate};
use aydisc::report::{printed_convention, printed_m, printed_m_prime};
use aydisc::splitting::{
    adjusted_ay, ay_xi, build_twisted_family, eta_jacobian_check, extension_certificates, lie_bracket_checks,
    split_2t2c, sqrt_extension_distinct, DEFAULT_MAX_STEPS,
};
use aydisc::surface::{build_ay, find_involution, spin_parity, stratum_dim, Matrix2, StratumSignature, Vec2};
use aydisc::RationalPolynomial;
use proptest::strategy::Strategy;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

/// (criterion, sub-check): the printed second torus twist on the adjusted surface
/// is not reproduced; see README "Known discrepancy".
const KNOWN_RED: &[(usize, &str)] = &[(8, "adjusted_twist_T2")];

fn fe(a: i64, b: i64, c: i64) -> Fe {
    Fe::from_ints(a, b, c)
}

struct Criterion {
    n: usize,
    title: &'static str,
    tolerance: &'static str,
    subs: Vec<(String, bool, String)>,
    note: String,
}

impl Criterion {
    fn new(n: usize, title: &'static str, tolerance: &'static str) -> Self {
        Criterion { n, title, tolerance, subs: Vec::new(), note: String::new() }
    }

    fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.subs.push((name.to_string(), ok, detail.into()));
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, name: &str, want: &T, got: &T) {
        let detail = if want == got { String::new() } else { format!("want {want:?}, got {got:?}") };
        self.check(name, want == got, detail);
    }

    fn error(&mut self, name: &str, e: impl std::fmt::Display) {
        self.check(name, false, format!("error: {e}"));
    }

    fn failed(&self) -> Vec<&(String, bool, String)> {
        self.subs.iter().filter(|s| !s.1).collect()
    }
}

fn decompose(slope: Fe, marking: &str, n0: i64) -> aydisc::Result<PeriodicDirectionData> {
    decompose_default(&build_ay(), &slope_direction(&slope), &Marking::preset(marking)?, n0)
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::new(1, "golden table, slope 1-a^2", "exact FieldElement equality");
    let d = match decompose(fe(1, 0, -1), "a1", 0) {
        Ok(d) => d,
        Err(e) => {
            c.error("decompose", e);
            return c;
        }
    };
    let l2 = vec![fe(16, 18, 10), fe(4, -6, -1), fe(16, 18, 10), fe(4, -6, 6), fe(4, -6, -1), fe(4, -6, 6)];
    c.eq("lengths_squared", &l2, &d.lengths_squared());
    c.eq("heights", &vec![fe(2, -4, 2), fe(-2, 2, 4), fe(-2, 6, -4)], &d.heights());
    c.eq("top_cycles", &vec![vec![2, 4, 5, 1], vec![6], vec![3]], &d.top_cycles());
    c.eq("bottom_cycles", &vec![vec![3, 2, 6, 5], vec![4], vec![1]], &d.bottom_cycles());
    c.eq("twist_squares", &vec![Fe::zero(), fe(1, -2, 1)], &d.normalized_twist_squares());
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::new(2, "golden table, slope 3+a^2, n0' = -1", "exact FieldElement equality");
    let d = match decompose(fe(3, 0, 1), "a2", -1) {
        Ok(d) => d,
        Err(e) => {
            c.error("decompose", e);
            return c;
        }
    };
    let (g, big, five) = (fe(26, 20, 11), fe(144, 114, 74), fe(1612, 1354, 878));
    c.eq("lengths_squared", &vec![g.clone(), big.clone(), big, g, five.clone(), five], &d.lengths_squared());
    c.eq("heights", &vec![fe(-6, 8, 6), fe(-2, 6, -4), fe(10, -14, -8)], &d.heights());
    let tau = d.normalized_twists();
    c.eq("t_m = 3 w_m", &Fe::int(3), &tau[0]);
    c.eq("T_s^2", &fe(1, -2, 1), &tau[1].square());
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::new(3, "normalizing frames M^-1, M'^-1", "exact; printed M, M' up to transpose/inverse");
    let (Ok(d1), Ok(d2)) = (decompose(fe(1, 0, -1), "a1", 0), decompose(fe(3, 0, 1), "a2", -1)) else {
        c.error("decompose", "failed");
        return c;
    };
    let (Ok(m1), Ok(m2)) = (d1.normalizing_matrix(), d2.normalizing_matrix()) else {
        c.error("normalizing_matrix", "singular frame");
        return c;
    };
    let (i1, i2) = (m1.inv().unwrap(), m2.inv().unwrap());
    c.eq("M^-1 col 0", &Vec2::new(fe(4, 4, 2), fe(2, 4, 2)), &i1.column(0));
    c.eq("M^-1 col 1", &Vec2::new(fe(1, 0, -1), fe(2, -2, 0)), &i1.column(1));
    c.eq("M'^-1 col 0", &Vec2::new(fe(14, 12, 8), fe(46, 40, 26)), &i2.column(0));
    let col = i2.column(1);
    c.eq("M'^-1 col 1 slope", &(&fe(367, 252, 175) / &Fe::int(169)), &(&col.y / &col.x));
    let conv = [printed_convention(&m1, &printed_m()), printed_convention(&m2, &printed_m_prime())];
    c.check("printed M", conv[0].is_some(), "no convention matches");
    c.check("printed M'", conv[1].is_some(), "no convention matches");
    c.note = format!("printed M matches as {}, printed M' as {}", conv[0].unwrap_or("none"), conv[1].unwrap_or("none"));
    c
}

fn dphi_tilde() -> Matrix2 {
    Matrix2::new(fe(23, 18, 12), fe(-29, -24, -16), fe(74, 62, 40), fe(-95, -80, -52))
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::new(4, "second affine derivative", "exact");
    let (Ok(d1), Ok(d2)) = (decompose(fe(1, 0, -1), "a1", 0), decompose(fe(3, 0, 1), "smallest", 0)) else {
        c.error("decompose", "failed");
        return c;
    };
    let dt = dphi_tilde();
    match match_directions(&d1, &d2, DEFAULT_N0_RANGE) {
        Ok(found) => {
            let hit = found.iter().find(|h| h.df == dt);
            c.check("matching yields the derivative", hit.is_some(), format!("{} candidates, none equal", found.len()));
            if let Some(h) = hit {
                let g3 = &d1.saddles[2].holonomy;
                let want = &d2.saddles[h.pi1[2] - 1].holonomy;
                c.eq("Df gamma_3 = gamma'_{pi(3)}", want, &dt.apply(g3));
                c.eq("pi(3)", &5, &h.pi1[2]);
            }
        }
        Err(e) => c.error("match_directions", e),
    }
    c.eq("det", &Fe::one(), &dt.det());
    c.check("|trace| > 2", dt.trace().abs() > Fe::int(2), dt.trace().to_string());
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::new(5, "expansion factor minimal polynomial", "exact");
    let want = RationalPolynomial::from_ints(&[1, 114, -409, 604, -409, 114, 1]);
    match classify(&dphi_tilde()) {
        Ok(r) => {
            c.eq("class", &Classification::PseudoAnosov, &r.classification);
            c.eq("minpoly", &Some(want.clone()), &r.expansion_minpoly);
            c.eq("degree over Q", &Some(6), &r.degree);
        }
        Err(e) => c.error("classify", e),
    }
    let f = factorize(&want);
    c.check("certified irreducible", f.is_irreducible() && verify_certificate(&want, &f.factors[0].certificate), format!("{:?}", f.factors));
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::new(6, "non-commutation", "exact");
    let dt = dphi_tilde();
    match share_power(&dphi(), &dt) {
        Ok(s) => c.eq("share_power", &false, &s),
        Err(e) => c.error("share_power", e),
    }
    c.check("(1,0) not an eigendirection", !is_eigendirection(&dt, &Vec2::from_ints(1, 0)), "");
    c.check("(0,1) not an eigendirection", !is_eigendirection(&dt, &Vec2::from_ints(0, 1)), "");
    c
}

fn sig(text: &str, quadratic: bool) -> StratumSignature {
    let mut s: StratumSignature = text.parse().unwrap();
    s.quadratic = quadratic;
    s
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::new(7, "spin and stratum arithmetic", "exact");
    let q = sig("1,1,-1x6", true);
    c.eq("spin Q(1,1,-1^6)", &Ok(1), &spin_parity(&q).map_err(|e| e.to_string()));
    c.eq("dim Q(1,1,-1^6)", &Ok(6), &stratum_dim(&q).map_err(|e| e.to_string()));
    c.eq("dim Q(1,1,1,1)", &Ok(6), &stratum_dim(&sig("1,1,1,1", true)).map_err(|e| e.to_string()));
    c.eq("dim H(2,2)", &Ok(7), &stratum_dim(&sig("2,2", false)).map_err(|e| e.to_string()));
    let inv = find_involution(&build_ay());
    c.eq("involution", &(true, 8), &(inv.exists, inv.fixed_points));
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::new(8, "2T2C splitting and extension certificates", "exact");
    let ay = build_ay();
    match split_2t2c(&ay, &ay_xi(), DEFAULT_MAX_STEPS) {
        Ok(s) => {
            c.eq("saddle connections", &4, &s.saddles.len());
            c.check("equal holonomy", s.saddles.iter().all(|b| b.holonomy == s.saddles[0].holonomy), "");
            c.eq("area T1", &fe(0, 4, 0), &s.tori[0].area);
            c.eq("area T2", &fe(-8, 12, 8), &s.tori[1].area);
        }
        Err(e) => c.error("split", e),
    }
    let twists = adjusted_ay().and_then(|adj| split_2t2c(&adj.surface, &Vec2::from_ints(1, 0), DEFAULT_MAX_STEPS)?.torus_twists());
    match twists {
        Ok([t1, t2]) => {
            let a = Fe::alpha();
            let ai = a.inv().unwrap();
            let printed_t2 = &(&Fe::from_q(qf(10, 11)) - &ai.scale(&qf(5, 11))) + &ai.square().scale(&qf(3, 11));
            c.eq("adjusted_twist_T1", &fe(1, 0, -1).scale(&qf(1, 2)), &t1);
            c.check("adjusted_twist_T2", t2 == printed_t2, format!("want {printed_t2}, got {t2}"));
            c.check("twists irrational", !t1.is_rational() && !t2.is_rational(), format!("{t1}, {t2}"));
        }
        Err(e) => c.error("adjusted twists", e),
    }
    match extension_certificates() {
        Ok(ec) => {
            let q = RationalPolynomial::from_ints(&[-1, 0, 1, 0, 1, 0, 1]);
            c.eq("Q", &q, &ec.q);
            c.eq("Q Eisenstein at 2, shift 1", &Ok(true), &eisenstein_check(&q, 2, 1).map_err(|e| e.to_string()));
            let s = RationalPolynomial::from_ints(&[-7, 0, 19, 0, -5, 0, 1]);
            c.eq("S", &s, &ec.s);
            c.check("S certified irreducible", ec.s_certificate.as_ref().is_some_and(|k| verify_certificate(&s, k)), "");
        }
        Err(e) => c.error("extension", e),
    }
    c.eq("sqrt extensions distinct", &Ok(true), &sqrt_extension_distinct(&fe(0, 4, 0), &fe(-8, 12, 8)).map_err(|e| e.to_string()));
    c
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::new(9, "area map Jacobians", "exact symbolic equality");
    match adjusted_ay() {
        Ok(adj) => {
            let fam = build_twisted_family(&adj);
            // 2 |g'2| |g'3| |g'6| V_y with the adjusted-surface lengths.
            let (g2, g3, g6, vy) = (Fe::one(), fe(5, 4, 3), fe(1, 2, 1), fe(8, 6, 4));
            let want = &(&(&Fe::int(2) * &g2) * &(&g3 * &g6)) * &vy;
            c.eq("Jacobian(psi)", &Some(want), &fam.jacobian_psi().as_constant());
        }
        Err(e) => c.error("adjusted surface", e),
    }
    let eta = eta_jacobian_check();
    c.check("Jacobian(eta) = 4/(1-x-y)^3", eta.holds, "");
    c.eq("Jacobian(eta)(0,0)", &Some(Fe::int(4)), &eta.at_origin);
    c
}

fn criterion_10() -> Criterion {
    let mut c = Criterion::new(10, "Lie bracket identities", "exact symbolic equality");
    let checks = lie_bracket_checks();
    for want in ["[n,a] = -2n", "[n,u] = a", "[a,u] = -2u"] {
        c.check(want, checks.iter().any(|k| k.name == want), "missing");
    }
    for k in &checks {
        c.check(&k.name, k.holds, k.detail.clone());
    }
    c
}

fn run<S: Strategy>(c: &mut Criterion, name: &str, cases: u32, strategy: S, test: impl Fn(S::Value) -> common::Check) {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    match runner.run(&strategy, test) {
        Ok(()) => c.check(&format!("{name} ({cases})"), true, ""),
        Err(e) => c.check(&format!("{name} ({cases})"), false, e.to_string()),
    }
}

fn criterion_11() -> Criterion {
    let mut c = Criterion::new(11, "property suites", "zero failures");
    run(&mut c, "field axioms", 10_000, common::triples(), |(x, y, z)| common::field_axioms(&x, &y, &z));
    run(&mut c, "factorization vs oracle", 2_000, common::poly_strategy(), |p| common::factorization_matches_oracle(&p));
    run(&mut c, "reducible products", 500, (common::poly_of_degree(1..=2), common::poly_of_degree(1..=2)), |(a, b)| {
        common::product_is_reducible(&a, &b)
    });
    run(&mut c, "cylinder round trip", 48, common::round_trip_cases(), |case| common::round_trip(&case));
    run(&mut c, "projective invariance", 100, (common::sl2(), 0usize..2), |(a, w)| common::projective_invariance(&a, w));
    c
}

fn main() -> ExitCode {
    let all: [fn() -> Criterion; 11] = [
        criterion_1,
        criterion_2,
        criterion_3,
        criterion_4,
        criterion_5,
        criterion_6,
        criterion_7,
        criterion_8,
        criterion_9,
        criterion_10,
        criterion_11,
    ];
    let mut unexpected = Vec::new();
    let mut known = Vec::new();
    for f in all {
        let start = Instant::now();
        let c = f();
        let failed = c.failed();
        let status = if failed.is_empty() { "PASS" } else { "FAIL" };
        let mut line = format!(
            "criterion {:>2} [{status}] {} ({}/{} sub-checks; tolerance: {}; {:.1}s)",
            c.n,
            c.title,
            c.subs.len() - failed.len(),
            c.subs.len(),
            c.tolerance,
            start.elapsed().as_secs_f64()
        );
        for (name, _, detail) in &failed {
            line.push_str(&format!(" | {name}: {detail}"));
            if KNOWN_RED.contains(&(c.n, name.as_str())) {
                known.push((c.n, name.clone()));
            } else {
                unexpected.push(format!("criterion {} / {name}", c.n));
            }
        }
        if !c.note.is_empty() {
            line.push_str(&format!(" | note: {}", c.note));
        }
        println!("{line}");
    }
    for &(n, name) in KNOWN_RED {
        if known.iter().any(|(m, k)| *m == n && k == name) {
            println!("known discrepancy: criterion {n} / {name} stays red (documented in README)");
        } else {
            unexpected.push(format!("criterion {n} / {name} was expected to fail but passed; update KNOWN_RED"));
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all criteria pass except the documented discrepancies");
        ExitCode::SUCCESS
    } else {
        for u in &unexpected {
            println!("unexpected: {u}");
        }
        ExitCode::FAILURE
    }
}
