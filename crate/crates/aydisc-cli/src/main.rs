use std::fs;
use std::io::Write;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use aydisc::affine::{classify, match_directions, verify_candidate, AffineCandidate, DEFAULT_N0_RANGE};
use aydisc::periodic::{decompose, slope_direction, Labeling, Marking, PeriodicDirectionData, DEFAULT_MAX_STEPS};
use aydisc::polyalg::minpoly_of_sqrt;
use aydisc::report::{ratner_check, verify_appendix, AppendixOptions};
use aydisc::splitting::{ay_xi, split_2t2c};
use aydisc::surface::{build_ay, spin_parity, stratum_dim, Matrix2, StratumSignature, SvgOverlay, TranslationSurface, Vec2};
use aydisc::{Error, Fe};

#[derive(Parser)]
#[command(name = "aydisc", version, about = "Exact computations on the Arnoux-Yoccoz surface over Q(alpha)")]
struct Cli {
    /// Polygon crossings allowed per separatrix.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: usize,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Recompute the golden tables, normalizing matrices and the second pseudo-Anosov.
    VerifyAppendix {
        #[arg(long)]
        json: bool,
        /// Test mode: perturb one twist before the twist check.
        #[arg(long)]
        perturb_twist: bool,
    },
    /// Write an SVG of the surface, a periodic direction, or the 2T2C splitting.
    Render {
        #[arg(value_enum)]
        target: RenderTarget,
        #[command(flatten)]
        dir: DirectionArgs,
        #[arg(long, short)]
        out: PathBuf,
    },
    /// Spin parity of a stratum, e.g. "1,1,-1x6".
    Spin {
        signature: String,
        /// Read the signature as an Abelian stratum.
        #[arg(long)]
        abelian: bool,
        #[arg(long)]
        json: bool,
    },
    /// Complex dimension of a stratum.
    Dim {
        #[arg(long, conflicts_with = "abelian", required_unless_present = "abelian")]
        quadratic: Option<String>,
        #[arg(long)]
        abelian: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Minimal polynomial over Q of the square root of a field element.
    MinpolySqrt {
        element: String,
        #[arg(long)]
        json: bool,
    },
    /// Affine diffeomorphisms between periodic directions
    #[command(subcommand)]
    Affine(AffineCmd),
    /// Checks behind the density argument
    #[command(subcommand)]
    Ratner(RatnerCmd),
    /// Periodic directions of the AY surface
    #[command(subcommand)]
    Direction(DirectionCmd),
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderTarget {
    Surface,
    Direction,
    Splitting,
}

#[derive(Args, Clone)]
struct DirectionArgs {
    /// Slope a+b*x+c*x^2 or a,b,c; the direction is (1, slope).
    #[arg(long, allow_hyphen_values = true)]
    slope: Option<String>,
    /// Use the vertical direction instead of a slope.
    #[arg(long, conflicts_with = "slope")]
    vertical: bool,
}

#[derive(Args, Clone)]
struct PairArgs {
    #[arg(long, allow_hyphen_values = true)]
    from_slope: String,
    #[arg(long, allow_hyphen_values = true)]
    to_slope: String,
    #[arg(long, default_value = "smallest")]
    from_marking: String,
    #[arg(long, default_value = "smallest")]
    to_marking: String,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    from_n0: i64,
}

#[derive(Subcommand)]
enum AffineCmd {
    /// Search for affine diffeomorphisms mapping one periodic direction to another.
    Search {
        #[command(flatten)]
        pair: PairArgs,
        /// Range lo:hi for n0'.
        #[arg(long, allow_hyphen_values = true)]
        n0_range: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Re-check a certificate emitted by `affine search --json`.
    Verify {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        certificate: PathBuf,
    },
}

#[derive(Subcommand)]
enum RatnerCmd {
    /// Splitting data, twists, certificates, Jacobians, bracket identities and grid instances.
    Check {
        #[arg(long, default_value_t = 4)]
        grid: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand)]
enum DirectionCmd {
    /// Cylinder decomposition of the AY surface in a completely periodic direction.
    Decompose {
        #[command(flatten)]
        dir: DirectionArgs,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n0: i64,
        #[arg(long, default_value = "smallest")]
        marking: String,
        #[arg(long, conflicts_with_all = ["table", "svg"])]
        json: bool,
        /// Plain-text table (the default).
        #[arg(long, conflicts_with = "svg")]
        table: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

enum Failure {
    Usage(String),
    Check(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::InvalidMarking(_) | Error::InvalidSignature(_) => Failure::Usage(e.to_string()),
            _ => Failure::Precondition(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn parse_fe(s: &str) -> Result<Fe, Failure> {
    s.parse().map_err(|e: Error| Failure::Usage(e.to_string()))
}

/// Stdout writes that tolerate a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn print_json(v: &Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("serializable")));
}

fn write_file(path: &PathBuf, body: &str) -> Outcome {
    fs::write(path, body).map_err(|e| Failure::Precondition(format!("cannot write {}: {e}", path.display())))
}

/// Quarter turn sending the vertical to the horizontal.
fn quarter_turn() -> Matrix2 {
    Matrix2::new(Fe::zero(), Fe::one(), -&Fe::one(), Fe::zero())
}

/// Surface and direction to trace; vertical directions are turned to horizontal first.
fn resolve_direction(d: &DirectionArgs, default: Option<Vec2>) -> Result<(TranslationSurface, Vec2), Failure> {
    let ay = build_ay();
    if d.vertical {
        return Ok((ay.apply_matrix(&quarter_turn())?, Vec2::from_ints(1, 0)));
    }
    match (&d.slope, default) {
        (Some(s), _) => Ok((ay, slope_direction(&parse_fe(s)?))),
        (None, Some(v)) => Ok((ay, v)),
        (None, None) => Err(Failure::Usage("--slope or --vertical is required".into())),
    }
}

fn decompose_with(s: &TranslationSurface, theta: &Vec2, marking: &str, n0: i64, max_steps: usize) -> Result<PeriodicDirectionData, Failure> {
    Ok(decompose(s, theta, &Marking::preset(marking)?, n0, &Labeling::Auto, max_steps)?)
}

fn table(d: &PeriodicDirectionData) -> String {
    let mut out = format!("direction ({}, {})\n", d.direction.x, d.direction.y);
    for s in &d.saddles {
        out.push_str(&format!("gamma{}  |gamma|^2 = {}\n", s.label, s.holonomy.norm2()));
    }
    let twists = d.normalized_twists();
    for (i, c) in d.cylinders.iter().enumerate() {
        let cyc = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ");
        out.push_str(&format!(
            "C{}  height = {}  |w|^2 = {}  bottom = ({})  top = ({})",
            i + 1,
            c.height,
            c.width.norm2(),
            cyc(&c.bottom),
            cyc(&c.top)
        ));
        if i > 0 {
            out.push_str(&format!("  tau = {}", twists[i - 1]));
        }
        out.push('\n');
    }
    out
}

fn parse_range(s: &str) -> Result<RangeInclusive<i64>, Failure> {
    let bad = || Failure::Usage(format!("expected lo:hi, got `{s}`"));
    let (lo, hi) = s.split_once(':').ok_or_else(bad)?;
    let (lo, hi): (i64, i64) = (lo.trim().parse().map_err(|_| bad())?, hi.trim().parse().map_err(|_| bad())?);
    if lo > hi {
        return Err(bad());
    }
    Ok(lo..=hi)
}

fn pair_data(p: &PairArgs, n0: i64, max_steps: usize) -> Result<(PeriodicDirectionData, PeriodicDirectionData), Failure> {
    let ay = build_ay();
    let d1 = decompose_with(&ay, &slope_direction(&parse_fe(&p.from_slope)?), &p.from_marking, p.from_n0, max_steps)?;
    let d2 = decompose_with(&ay, &slope_direction(&parse_fe(&p.to_slope)?), &p.to_marking, n0, max_steps)?;
    Ok((d1, d2))
}

fn candidate_from_json(v: &Value) -> Result<AffineCandidate, Failure> {
    let bad = |what: &str| Failure::Usage(format!("certificate: missing or malformed `{what}`"));
    let ints = |k: &str| -> Result<Vec<usize>, Failure> {
        v.get(k)
            .and_then(Value::as_array)
            .ok_or_else(|| bad(k))?
            .iter()
            .map(|x| x.as_u64().map(|n| n as usize).ok_or_else(|| bad(k)))
            .collect()
    };
    let pi1 = ints("pi1")?;
    let pi2: Vec<usize> = ints("pi2")?.into_iter().map(|i| i.saturating_sub(1)).collect();
    let n0 = v.get("n0").and_then(Value::as_i64).ok_or_else(|| bad("n0"))?;
    let entry = |i: usize, j: usize| -> Result<Fe, Failure> {
        let s = v.get("Df").and_then(|m| m.get(i)).and_then(|r| r.get(j)).and_then(Value::as_str).ok_or_else(|| bad("Df"))?;
        parse_fe(s)
    };
    let df = Matrix2::new(entry(0, 0)?, entry(0, 1)?, entry(1, 0)?, entry(1, 1)?);
    let rep = classify(&df)?;
    Ok(AffineCandidate { pi1, pi2, n0, df, classification: rep.classification, expansion_minpoly: rep.expansion_minpoly })
}

fn run(cli: Cli) -> Outcome {
    let max_steps = cli.max_steps;
    if max_steps == 0 {
        return Err(Failure::Usage("--max-steps must be at least 1".into()));
    }
    match cli.cmd {
        Cmd::VerifyAppendix { json, perturb_twist } => {
            let rep = verify_appendix(&AppendixOptions { perturb_twist, ..Default::default() })?;
            if json {
                print_json(&rep.to_json());
            } else {
                emit(&rep.to_text());
            }
            if !rep.all_pass() {
                return Err(Failure::Check(format!("{} check(s) failed", rep.failures().count())));
            }
        }
        Cmd::Render { target, dir, out } => {
            let svg = match target {
                RenderTarget::Surface => build_ay().to_svg(&SvgOverlay::default()),
                RenderTarget::Direction => {
                    let (s, theta) = resolve_direction(&dir, None)?;
                    let d = decompose_with(&s, &theta, "smallest", 0, max_steps)?;
                    s.to_svg(&d.overlay())
                }
                RenderTarget::Splitting => {
                    let (s, xi) = resolve_direction(&dir, Some(ay_xi()))?;
                    s.to_svg(&split_2t2c(&s, &xi, max_steps)?.overlay())
                }
            };
            write_file(&out, &svg)?;
        }
        Cmd::Spin { signature, abelian, json } => {
            let mut sig: StratumSignature = signature.parse()?;
            sig.quadratic = !abelian;
            let p = spin_parity(&sig)?;
            if json {
                print_json(&json!({"stratum": sig.to_string(), "spin_parity": p}));
            } else {
                emit(&format!("{p}\n"));
            }
        }
        Cmd::Dim { quadratic, abelian, json } => {
            let (text, quad) = match (quadratic, abelian) {
                (Some(q), _) => (q, true),
                (None, Some(a)) => (a, false),
                (None, None) => return Err(Failure::Usage("--quadratic or --abelian is required".into())),
            };
            let mut sig: StratumSignature = text.parse()?;
            sig.quadratic = quad;
            let d = stratum_dim(&sig)?;
            if json {
                print_json(&json!({"stratum": sig.to_string(), "dim": d}));
            } else {
                emit(&format!("{d}\n"));
            }
        }
        Cmd::MinpolySqrt { element, json } => {
            let x = parse_fe(&element)?;
            let p = minpoly_of_sqrt(&x)?;
            if json {
                let cs: Vec<String> = p.coeffs().iter().map(|c| c.to_string()).collect();
                print_json(&json!({"element": x.to_string(), "minpoly": p.to_string(), "coefficients": cs}));
            } else {
                emit(&format!("{p}\n"));
            }
        }
        Cmd::Affine(AffineCmd::Search { pair, n0_range, json }) => {
            let range = n0_range.as_deref().map(parse_range).transpose()?.unwrap_or(DEFAULT_N0_RANGE);
            let (d1, d2) = pair_data(&pair, 0, max_steps)?;
            let found = match_directions(&d1, &d2, range)?;
            if json {
                print_json(&Value::Array(found.iter().map(AffineCandidate::to_json).collect()));
            } else {
                for c in &found {
                    let m = &c.df;
                    emit(&format!(
                        "pi1 = {:?}  pi2 = {:?}  n0' = {}  Df = [[{}, {}], [{}, {}]]  {}\n",
                        c.pi1,
                        c.pi2.iter().map(|i| i + 1).collect::<Vec<_>>(),
                        c.n0,
                        m.a,
                        m.b,
                        m.c,
                        m.d,
                        c.classification.as_str()
                    ));
                }
                emit(&format!("{} candidate(s)\n", found.len()));
            }
        }
        Cmd::Affine(AffineCmd::Verify { pair, certificate }) => {
            let text = fs::read_to_string(&certificate)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", certificate.display())))?;
            let v: Value = serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("certificate is not JSON: {e}")))?;
            let items = match v {
                Value::Array(a) => a,
                other => vec![other],
            };
            if items.is_empty() {
                return Err(Failure::Usage("certificate list is empty".into()));
            }
            let mut bad = 0;
            for item in &items {
                let c = candidate_from_json(item)?;
                let (d1, d2) = pair_data(&pair, c.n0, max_steps)?;
                let ok = verify_candidate(&d1, &d2, &c)?;
                bad += usize::from(!ok);
                emit(&format!("[{}] pi1 = {:?} n0' = {}\n", if ok { "pass" } else { "fail" }, c.pi1, c.n0));
            }
            if bad > 0 {
                return Err(Failure::Check(format!("{bad} certificate(s) rejected")));
            }
        }
        Cmd::Ratner(RatnerCmd::Check { grid, json }) => {
            let (rep, details) = ratner_check(grid)?;
            if json {
                print_json(&json!({"report": rep.to_json(), "details": details}));
            } else {
                emit(&rep.to_text());
            }
            if !rep.all_pass() {
                return Err(Failure::Check(format!("{} check(s) failed", rep.failures().count())));
            }
        }
        Cmd::Direction(DirectionCmd::Decompose { dir, n0, marking, json, table: _, svg }) => {
            let (s, theta) = resolve_direction(&dir, None)?;
            let d = decompose_with(&s, &theta, &marking, n0, max_steps)?;
            if let Some(path) = svg {
                write_file(&path, &s.to_svg(&d.overlay()))?;
            } else if json {
                print_json(&d.to_json());
            } else {
                emit(&table(&d));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(m)) => {
            eprintln!("check failed: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(m)) => {
            eprintln!("precondition violated: {m}");
            ExitCode::from(3)
        }
    }
}
