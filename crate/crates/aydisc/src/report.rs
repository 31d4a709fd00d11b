//! Named pass/fail checks and the golden-table verification pipeline.

use std::fmt::Display;

use serde_json::{json, Value};

use crate::affine::{classify, is_eigendirection, match_directions, share_power, Classification};
use crate::numfield::{qf, Fe};
use crate::periodic::{decompose_default, slope_direction, Marking, PeriodicDirectionData};
use crate::polyalg::{factorize, verify_certificate, RationalPolynomial};
use crate::splitting::{
    adjusted_ay, ay_xi, build_twisted_family, eta_jacobian_check, extension_certificates, lie_bracket_checks,
    ratner_hypotheses, split_2t2c, sqrt_extension_distinct, twisted_instance_checks, Lattice, DEFAULT_MAX_STEPS,
};
use crate::surface::{build_ay, Matrix2, Vec2};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        match s {
            "pass" => Ok(Status::Pass),
            "fail" => Ok(Status::Fail),
            "skipped" => Ok(Status::Skipped),
            _ => Err(Error::Parse(format!("unknown status `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub anchor: String,
    pub status: Status,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn push(&mut self, id: &str, anchor: &str, ok: bool, expected: String, actual: String) {
        debug_assert!(self.checks.iter().all(|c| c.id != id), "duplicate check id {id}");
        let status = if ok { Status::Pass } else { Status::Fail };
        self.checks.push(Check { id: id.into(), anchor: anchor.into(), status, expected, actual });
    }

    pub fn check_eq<T: PartialEq + Display>(&mut self, id: &str, anchor: &str, expected: &T, actual: &T) {
        self.push(id, anchor, expected == actual, expected.to_string(), actual.to_string());
    }

    pub fn skip(&mut self, id: &str, anchor: &str, expected: String, why: &str) {
        self.checks.push(Check { id: id.into(), anchor: anchor.into(), status: Status::Skipped, expected, actual: why.into() });
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "all_pass": self.all_pass(),
            "checks": self.checks.iter().map(|c| json!({
                "id": c.id, "anchor": c.anchor, "status": c.status.as_str(),
                "expected": c.expected, "actual": c.actual,
            })).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = || Error::Parse("malformed verification report".into());
        let s = |c: &Value, k: &str| c.get(k).and_then(Value::as_str).map(str::to_string).ok_or_else(bad);
        let mut checks = Vec::new();
        for c in v.get("checks").and_then(Value::as_array).ok_or_else(bad)? {
            checks.push(Check {
                id: s(c, "id")?,
                anchor: s(c, "anchor")?,
                status: Status::parse(&s(c, "status")?)?,
                expected: s(c, "expected")?,
                actual: s(c, "actual")?,
            });
        }
        Ok(Self { checks })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&format!("[{}] {}", c.status.as_str(), c.id));
            if c.status != Status::Pass {
                out.push_str(&format!("\n    expected: {}\n    actual:   {}", c.expected, c.actual));
            }
            out.push('\n');
        }
        let passed = self.checks.iter().filter(|c| c.status == Status::Pass).count();
        out.push_str(&format!("{passed}/{} checks passed\n", self.checks.len()));
        out
    }
}

fn fe(a: i64, b: i64, c: i64) -> Fe {
    Fe::from_ints(a, b, c)
}

fn fe_list(v: &[Fe]) -> String {
    format!("[{}]", v.iter().map(Fe::to_string).collect::<Vec<_>>().join(", "))
}

fn cycles(v: &[Vec<usize>]) -> String {
    v.iter().map(|c| format!("({})", c.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))).collect()
}

fn vec2(v: &Vec2) -> String {
    format!("({}, {})", v.x, v.y)
}

fn matrix(m: &Matrix2) -> String {
    format!("[[{}, {}], [{}, {}]]", m.a, m.b, m.c, m.d)
}

pub fn slope_a1() -> Fe {
    fe(1, 0, -1)
}

pub fn slope_a2() -> Fe {
    fe(3, 0, 1)
}

pub fn decompose_a1() -> Result<PeriodicDirectionData> {
    decompose_default(&build_ay(), &slope_direction(&slope_a1()), &Marking::preset("appendix-a1")?, 0)
}

pub fn decompose_a2() -> Result<PeriodicDirectionData> {
    decompose_default(&build_ay(), &slope_direction(&slope_a2()), &Marking::preset("appendix-a2")?, -1)
}

pub fn dphi_tilde() -> Matrix2 {
    Matrix2::new(fe(23, 18, 12), fe(-29, -24, -16), fe(74, 62, 40), fe(-95, -80, -52))
}

/// The printed normalizing matrices, each with an overall factor 1/4.
fn printed(entries: [Fe; 4]) -> Matrix2 {
    let k = Fe::from_q(qf(1, 4));
    let [a, b, c, d] = entries;
    Matrix2::new(&a * &k, &b * &k, &c * &k, &d * &k)
}

pub fn printed_m() -> Matrix2 {
    printed([fe(1, 0, 1), fe(-4, -4, -2), fe(-1, 0, 0), fe(6, 5, 3)])
}

pub fn printed_m_prime() -> Matrix2 {
    printed([fe(-49, -42, -27), fe(-66, -56, -36), fe(14, 14, 9), fe(20, 17, 11)])
}

/// Which of M, Mᵀ, M⁻ᵀ of a computed normalizing matrix equals the printed one.
pub fn printed_convention(computed: &Matrix2, shown: &Matrix2) -> Option<&'static str> {
    if computed == shown {
        return Some("identical");
    }
    if &computed.transpose() == shown {
        return Some("transpose");
    }
    let it = computed.inv().ok()?.transpose();
    if &it == shown {
        return Some("inverse transpose");
    }
    if &it.inv().ok()? == shown {
        return Some("inverse");
    }
    None
}

#[derive(Clone, Debug, Default)]
pub struct AppendixOptions {
    /// Shift the small θ-cylinder twist by a seventh of its width before the twist check.
    pub perturb_twist: bool,
    pub n0_range: Option<std::ops::RangeInclusive<i64>>,
}

fn table_a1(r: &mut VerificationReport, d: &PeriodicDirectionData, twists: &PeriodicDirectionData) -> Result<()> {
    let anchor = "theta = 1-a^2 table";
    let l2 = vec![fe(16, 18, 10), fe(4, -6, -1), fe(16, 18, 10), fe(4, -6, 6), fe(4, -6, -1), fe(4, -6, 6)];
    r.push("a1.lengths_squared", anchor, d.lengths_squared() == l2, fe_list(&l2), fe_list(&d.lengths_squared()));
    let h = vec![fe(2, -4, 2), fe(-2, 2, 4), fe(-2, 6, -4)];
    r.push("a1.heights", anchor, d.heights() == h, fe_list(&h), fe_list(&d.heights()));
    let top = vec![vec![2, 4, 5, 1], vec![6], vec![3]];
    r.push("a1.top_cycles", anchor, d.top_cycles() == top, cycles(&top), cycles(&d.top_cycles()));
    let bot = vec![vec![3, 2, 6, 5], vec![4], vec![1]];
    r.push("a1.bottom_cycles", anchor, d.bottom_cycles() == bot, cycles(&bot), cycles(&d.bottom_cycles()));
    let tw = vec![Fe::zero(), fe(1, -2, 1)];
    let got = twists.normalized_twist_squares();
    r.push("a1.twist_squares", anchor, got == tw, fe_list(&tw), fe_list(&got));
    let m = d.normalizing_matrix()?;
    let minv = m.inv()?;
    let c0 = Vec2::new(fe(4, 4, 2), fe(2, 4, 2));
    let c1 = Vec2::new(fe(1, 0, -1), fe(2, -2, 0));
    r.push("a1.minv_col0", "normalizing matrix M", minv.column(0) == c0, vec2(&c0), vec2(&minv.column(0)));
    r.push("a1.minv_col1", "normalizing matrix M", minv.column(1) == c1, vec2(&c1), vec2(&minv.column(1)));
    let slope = minv.column(1).ratio_slope();
    r.check_eq("a1.theta_perp", "normalizing matrix M", &fe(1, 0, 1), &slope);
    let conv = printed_convention(&m, &printed_m());
    r.push("a1.printed_m", "normalizing matrix M", conv.is_some(), matrix(&printed_m()), format!("{} ({})", matrix(&m), conv.unwrap_or("no match")));
    Ok(())
}

fn table_a2(r: &mut VerificationReport, d: &PeriodicDirectionData) -> Result<()> {
    let anchor = "theta' = 3+a^2 table";
    let (g, big, five) = (fe(26, 20, 11), fe(144, 114, 74), fe(1612, 1354, 878));
    let l2 = vec![g.clone(), big.clone(), big, g, five.clone(), five];
    r.push("a2.lengths_squared", anchor, d.lengths_squared() == l2, fe_list(&l2), fe_list(&d.lengths_squared()));
    let h = vec![fe(-6, 8, 6), fe(-2, 6, -4), fe(10, -14, -8)];
    r.push("a2.heights", anchor, d.heights() == h, fe_list(&h), fe_list(&d.heights()));
    let top = vec![vec![4, 3, 1, 6], vec![2], vec![5]];
    r.push("a2.top_cycles", anchor, d.top_cycles() == top, cycles(&top), cycles(&d.top_cycles()));
    let bot = vec![vec![5, 4, 2, 1], vec![3], vec![6]];
    r.push("a2.bottom_cycles", anchor, d.bottom_cycles() == bot, cycles(&bot), cycles(&d.bottom_cycles()));
    let tau = d.normalized_twists();
    r.check_eq("a2.t_m_over_w_m", anchor, &Fe::int(3), &tau[0]);
    let sq = d.normalized_twist_squares();
    r.check_eq("a2.T_s_squared", anchor, &fe(1, -2, 1), &sq[1]);
    let m = d.normalizing_matrix()?;
    let minv = m.inv()?;
    let c0 = Vec2::new(fe(14, 12, 8), fe(46, 40, 26));
    r.push("a2.minv_col0", "normalizing matrix M'", minv.column(0) == c0, vec2(&c0), vec2(&minv.column(0)));
    let want = &fe(367, 252, 175) / &Fe::int(169);
    r.check_eq("a2.theta_perp", "normalizing matrix M'", &want, &minv.column(1).ratio_slope());
    let conv = printed_convention(&m, &printed_m_prime());
    r.push("a2.printed_m", "normalizing matrix M'", conv.is_some(), matrix(&printed_m_prime()), format!("{} ({})", matrix(&m), conv.unwrap_or("no match")));
    Ok(())
}

fn pseudo_anosov(r: &mut VerificationReport, d1: &PeriodicDirectionData, d2: &PeriodicDirectionData, opts: &AppendixOptions) -> Result<()> {
    let anchor = "second pseudo-Anosov";
    let range = opts.n0_range.clone().unwrap_or(crate::affine::DEFAULT_N0_RANGE);
    let found = match_directions(d1, d2, range)?;
    let pi1 = vec![6, 4, 5, 3, 1, 2];
    let hit = found.iter().find(|c| c.pi1 == pi1 && c.n0 == -1);
    r.push("match.candidate", anchor, hit.is_some(), "pi1 = [6, 4, 5, 3, 1, 2], n0' = -1".into(), format!("{} candidates", found.len()));
    let dt = dphi_tilde();
    let Some(hit) = hit else {
        r.skip("match.dphi_tilde", anchor, matrix(&dt), "no candidate");
        return Ok(());
    };
    r.push("match.dphi_tilde", anchor, hit.df == dt, matrix(&dt), matrix(&hit.df));
    let m_prod = d2.normalizing_matrix()?.inv()?.mul(&d1.normalizing_matrix()?);
    r.push("match.m_prime_inv_m", anchor, m_prod == dt, matrix(&dt), matrix(&m_prod));
    r.check_eq("dphi_tilde.det", anchor, &Fe::one(), &dt.det());
    let tr = dt.trace();
    r.push("dphi_tilde.trace", anchor, tr.abs() > Fe::int(2), "|trace| > 2".into(), tr.to_string());
    let g3 = &d1.saddles[2].holonomy;
    let g5p = &d2.saddles[4].holonomy;
    r.push("dphi_tilde.gamma3", anchor, &dt.apply(g3) == g5p, vec2(g5p), vec2(&dt.apply(g3)));
    let rep = classify(&dt)?;
    r.push("dphi_tilde.class", anchor, rep.classification == Classification::PseudoAnosov, "pseudo-anosov".into(), rep.classification.as_str().into());
    let mp = RationalPolynomial::from_ints(&[1, 114, -409, 604, -409, 114, 1]);
    let got = rep.expansion_minpoly.clone().unwrap_or_else(RationalPolynomial::zero);
    r.check_eq("dphi_tilde.minpoly", anchor, &mp, &got);
    let f = factorize(&got);
    let cert = f.is_irreducible() && verify_certificate(&got, &f.factors[0].certificate);
    r.push("dphi_tilde.irreducible", anchor, cert, "certified irreducible".into(), format!("{} factor(s)", f.factors.len()));
    r.push("dphi_tilde.degree", anchor, rep.degree == Some(6), "6".into(), format!("{:?}", rep.degree));
    let share = share_power(&crate::affine::dphi(), &dt)?;
    r.push("noncommutation.share_power", anchor, !share, "false".into(), share.to_string());
    let axes = [Vec2::from_ints(1, 0), Vec2::from_ints(0, 1)].iter().any(|v| is_eigendirection(&dt, v));
    r.push("noncommutation.axes", anchor, !axes, "neither axis is an eigendirection".into(), if axes { "an axis is an eigendirection" } else { "neither" }.into());
    Ok(())
}

pub fn verify_appendix(opts: &AppendixOptions) -> Result<VerificationReport> {
    let d1 = decompose_a1()?;
    let d2 = decompose_a2()?;
    let mut twists = d1.clone();
    if opts.perturb_twist {
        let c = twists.cylinders.last_mut().ok_or_else(|| Error::Internal("no cylinders".into()))?;
        c.twist = &c.twist + &c.width.scale(&Fe::from_q(qf(1, 7)));
    }
    let mut r = VerificationReport::default();
    table_a1(&mut r, &d1, &twists)?;
    table_a2(&mut r, &d2)?;
    pseudo_anosov(&mut r, &d1, &d2, opts)?;
    Ok(r)
}

/// The twist of T′₂ as printed: 10/11 − 5/(11α) + 3/(11α²).
pub fn printed_t2_twist() -> Result<Fe> {
    let a = Fe::alpha();
    let k = |n: i64| Fe::from_q(qf(n, 11));
    Ok(&(&k(10) - &(&k(5) * &a.inv()?)) + &(&k(3) * &a.square().inv()?))
}

fn lattice_json(l: &Lattice) -> Value {
    json!([[l.g1.x.to_string(), l.g1.y.to_string()], [l.g2.x.to_string(), l.g2.y.to_string()]])
}

/// Grid points (i/4n, j/4n) for 0 ≤ i, j < n: an n × n sample of [0, 1/4)².
pub fn grid_points(n: usize) -> Vec<(Fe, Fe)> {
    let n = n as i64;
    let d = 4 * n;
    (0..n).flat_map(|i| (0..n).map(move |j| (Fe::from_q(qf(i, d)), Fe::from_q(qf(j, d))))).collect()
}

/// Splitting, twists, certificates, Jacobians and bracket identities; plus
/// the twisted-family instance checks on an n × n grid.
pub fn ratner_check(grid: usize) -> Result<(VerificationReport, Value)> {
    let mut r = VerificationReport::default();
    let ay = build_ay();
    let split = split_2t2c(&ay, &ay_xi(), DEFAULT_MAX_STEPS)?;
    let anchor = "2T2C splitting";
    let beta = &split.saddles[0].holonomy;
    r.push("split.connections", anchor, split.saddles.len() == 4, "4".into(), split.saddles.len().to_string());
    let homologous = split.saddles.iter().all(|b| &b.holonomy == beta);
    r.push("split.equal_holonomy", anchor, homologous, "equal".into(), vec2(beta));
    r.check_eq("split.area_T1", anchor, &fe(0, 4, 0), &split.tori[0].area);
    r.check_eq("split.area_T2", anchor, &fe(-8, 12, 8), &split.tori[1].area);
    r.check_eq("split.cylinder_areas", anchor, &split.cylinders[0].area, &split.cylinders[1].area);

    let adj = adjusted_ay()?;
    let hsplit = split_2t2c(&adj.surface, &Vec2::from_ints(1, 0), DEFAULT_MAX_STEPS)?;
    let anchor = "adjusted surface";
    let [t1, t2] = hsplit.torus_twists()?;
    r.check_eq("adjusted.twist_T1", anchor, &Fe::new(qf(1, 2), qf(0, 1), qf(-1, 2)), &t1);
    r.check_eq("adjusted.twist_T2", anchor, &printed_t2_twist()?, &t2);
    r.push("adjusted.twists_irrational", anchor, !t1.is_rational() && !t2.is_rational(), "both irrational".into(), format!("{t1}, {t2}"));
    let d = decompose_a1()?;
    let (g2, g5) = (adj.matrix.apply(&d.saddles[1].holonomy), adj.matrix.apply(&d.saddles[4].holonomy));
    r.push("adjusted.gamma2_eq_gamma5", anchor, g2 == g5, vec2(&g2), vec2(&g5));
    let rh = ratner_hypotheses(&hsplit.tori[0].lattice, &hsplit.tori[1].lattice)?;
    let anchor = "Ratner hypotheses";
    r.push("ratner.no_horizontal", anchor, rh.no_horizontal == [true; 2], "[true, true]".into(), format!("{:?}", rh.no_horizontal));
    r.push("ratner.sqrt_area_irrational", anchor, rh.sqrt_area_irrational == [true; 2], "[true, true]".into(), format!("{:?}", rh.sqrt_area_irrational));
    r.push("ratner.distinct_extensions", anchor, rh.distinct_extensions, "true".into(), rh.distinct_extensions.to_string());
    r.push("ratner.distinct_fields_over_q", anchor, rh.distinct_fields_over_q, "true".into(), rh.distinct_fields_over_q.to_string());

    let ec = extension_certificates()?;
    let anchor = "extension claim";
    r.check_eq("extension.q", anchor, &RationalPolynomial::from_ints(&[-1, 0, 1, 0, 1, 0, 1]), &ec.q);
    r.push("extension.q_eisenstein", anchor, ec.q_eisenstein_2_shift_1, "Eisenstein at 2 after X -> X+1".into(), ec.q_eisenstein_2_shift_1.to_string());
    r.check_eq("extension.s", anchor, &RationalPolynomial::from_ints(&[-7, 0, 19, 0, -5, 0, 1]), &ec.s);
    let s_ok = ec.s_certificate.as_ref().is_some_and(|c| verify_certificate(&ec.s, c));
    r.push("extension.s_irreducible", anchor, s_ok, "certified irreducible".into(), format!("{:?}", ec.s_certificate));
    let dist = sqrt_extension_distinct(&fe(0, 4, 0), &fe(-8, 12, 8))?;
    r.push("extension.distinct", anchor, dist, "true".into(), dist.to_string());

    let fam = build_twisted_family(&adj);
    let anchor = "area map Jacobians";
    let j = fam.jacobian_psi();
    let want = fam.expected_jacobian();
    r.push("jacobian.psi", anchor, j.as_constant().as_ref() == Some(&want) && !want.is_zero(), want.to_string(), j.to_string());
    let eta = eta_jacobian_check();
    r.push("jacobian.eta", anchor, eta.holds, "4/(1-x-y)^3".into(), format!("holds = {}", eta.holds));
    for c in lie_bracket_checks() {
        let id = format!("lie.{}", c.name);
        r.push(&id, "bracket identities", c.holds, c.name.clone(), if c.detail.is_empty() { c.holds.to_string() } else { c.detail.clone() });
    }

    let mut instances = Vec::new();
    let mut violations = 0;
    for (u1, u2) in grid_points(grid) {
        let entry = match twisted_instance_checks(&fam, &u1, &u2) {
            Ok(t) => {
                violations += usize::from(!t.passes());
                json!({"u1": u1.to_string(), "u2": u2.to_string(), "passes": t.passes(), "parallel": t.parallel,
                       "areas": [t.areas[0].to_string(), t.areas[1].to_string()],
                       "distinct_extensions": t.field.distinct_extensions})
            }
            Err(e) => {
                violations += 1;
                json!({"u1": u1.to_string(), "u2": u2.to_string(), "passes": false, "error": e.to_string()})
            }
        };
        instances.push(entry);
    }
    if grid > 0 {
        r.push("twisted.grid", "twisted family instances", violations == 0, "0 violations".into(), format!("{violations} of {}", instances.len()));
    }
    let details = json!({
        "splitting": split.to_json(),
        "adjusted_splitting": hsplit.to_json(),
        "adjusted_tori": [lattice_json(&hsplit.tori[0].lattice), lattice_json(&hsplit.tori[1].lattice)],
        "certificates": {
            "q": ec.q.to_string(), "q_eisenstein_2_shift_1": ec.q_eisenstein_2_shift_1,
            "s": ec.s.to_string(), "s_certificate": ec.s_certificate.as_ref().map(|c| format!("{c:?}")),
        },
        "jacobian_psi": j.to_string(),
        "areas_psi": [fam.areas[0].to_string(), fam.areas[1].to_string()],
        "grid": {"n": grid, "instances": instances},
    });
    Ok((r, details))
}

trait RatioSlope {
    fn ratio_slope(&self) -> Fe;
}

impl RatioSlope for Vec2 {
    fn ratio_slope(&self) -> Fe {
        self.y.checked_div(&self.x).unwrap_or_else(|_| Fe::zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_run_passes() {
        let r = verify_appendix(&AppendixOptions::default()).unwrap();
        assert!(r.all_pass(), "{}", r.to_text());
        let mut ids: Vec<&str> = r.checks.iter().map(|c| c.id.as_str()).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), r.checks.len());
    }

    #[test]
    fn perturbed_twist_fails_only_the_twist_check() {
        let r = verify_appendix(&AppendixOptions { perturb_twist: true, ..Default::default() }).unwrap();
        let failed: Vec<&str> = r.failures().map(|c| c.id.as_str()).collect();
        assert_eq!(failed, ["a1.twist_squares"]);
    }

    #[test]
    fn ratner_report_flags_only_the_printed_t2_twist() {
        let (r, details) = ratner_check(5).unwrap();
        let failed: Vec<&str> = r.failures().map(|c| c.id.as_str()).collect();
        assert_eq!(failed, ["adjusted.twist_T2"]);
        assert_eq!(details["grid"]["instances"].as_array().unwrap().len(), 25);
    }

    #[test]
    fn json_round_trip() {
        let mut r = VerificationReport::default();
        r.check_eq("x", "here", &Fe::alpha(), &Fe::alpha());
        r.skip("y", "there", "1".into(), "skipped on purpose");
        assert_eq!(VerificationReport::from_json(&r.to_json()).unwrap(), r);
    }
}
