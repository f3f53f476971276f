//! Command-line interface for ACT map analysis.
//!
//! Subcommands: `schur`, `equilibria`, `region`, `boundary`, `box`,
//! `orbit`, `horseshoe`, `ai-continue`, `scan`, `section`, `lyapunov`.
//!
//! Every subcommand accepts `--config <file>` with a JSON document whose
//! keys mirror the flags (plus a mandatory `"command"` tag); explicit flags
//! override file values. Data outputs are CSV (comma-separated, `.`
//! decimal point, LF line endings) with a `#`-prefixed parameter line
//! followed by a column-name line, or JSON (UTF-8). Exit codes: 0 on
//! success, 1 on domain errors, 2 on usage errors.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use act_core::anti_integrable::{
    self as ai, ContinuationOptions, Route, RouteSpec, WitnessReport,
};
use act_core::equilibria::{
    self, boundary_classify, corner_points,
    resonance_parameters, BoundaryKind, FamilyParams, RegionKind,
};
use act_core::horseshoe::{
    classify_case, enumerate_periodic, hyperbolicity_margins, strip_geometry, NewtonOptions,
};
use act_core::map::{iterate, nonwandering_box, MapParams};
use act_core::scan::{
    bifurcation_diagram, capture_orbit, lyapunov, poincare_section, rotation_number_estimate,
    Axis, CrossingDirection, ScanConfig, SectionConfig, SeedSpec, SweepParam,
};
use act_core::schur::{
    bifurcation_values, cubic_roots, stable_interval, BifurcationKind, MonicCubic,
};
use act_core::{State64};

#[derive(Parser)]
#[command(
    name = "act",
    about = "Analysis toolkit for the Arneodo-Coullet-Tresser family of 3D polynomial maps",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Schur stability of a monic cubic l^3 + A l^2 + B l + D.
    Schur(SchurArgs),
    /// Fixed points and symmetric period-2 points in closed form.
    Equilibria(EquilibriaArgs),
    /// Rasterize a stability region over the (e, c) plane.
    Region(RegionArgs),
    /// Classified stability-region boundary curves over a range of e.
    Boundary(BoundaryArgs),
    /// The box bounding the nonwandering set.
    #[command(name = "box")]
    BoxCmd(BoxArgs),
    /// Iterate an orbit with escape detection.
    Orbit(OrbitArgs),
    /// Horseshoe verification: case, geometry, margins, orbit counts.
    Horseshoe(HorseshoeArgs),
    /// Anti-integrable continuation of symbolic periodic orbits.
    #[command(name = "ai-continue")]
    AiContinue(AiArgs),
    /// Bifurcation diagram over a parameter sweep.
    Scan(ScanArgs),
    /// Poincare section of an orbit.
    Section(SectionArgs),
    /// Lyapunov exponents along an orbit.
    Lyapunov(LyapunovArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum, Deserialize, PartialEq)]
#[serde(rename_all = "kebab-case")]
enum KindArg {
    Trivial,
    Nontrivial,
    Symmetric,
}

impl From<KindArg> for RegionKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Trivial => RegionKind::Trivial,
            KindArg::Nontrivial => RegionKind::Nontrivial,
            KindArg::Symmetric => RegionKind::Symmetric,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, Deserialize, PartialEq)]
#[serde(rename_all = "kebab-case")]
enum AxisArg {
    X,
    Y,
    Z,
}

impl From<AxisArg> for Axis {
    fn from(a: AxisArg) -> Self {
        match a {
            AxisArg::X => Axis::X,
            AxisArg::Y => Axis::Y,
            AxisArg::Z => Axis::Z,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, Deserialize, PartialEq)]
#[serde(rename_all = "kebab-case")]
enum DirectionArg {
    Positive,
    Negative,
    Both,
}

impl From<DirectionArg> for CrossingDirection {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Positive => CrossingDirection::Positive,
            DirectionArg::Negative => CrossingDirection::Negative,
            DirectionArg::Both => CrossingDirection::Both,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum, Deserialize, PartialEq)]
#[serde(rename_all = "kebab-case")]
enum RouteArg {
    C,
    B,
}

#[derive(Clone, Copy, Debug, ValueEnum, Deserialize, PartialEq)]
#[serde(rename_all = "kebab-case")]
enum SweepArg {
    C,
    E,
}

/// Map parameters shared by most subcommands; every field optional so the
/// config file can supply it.
#[derive(Args, Debug, Default, Clone)]
struct ParamFlags {
    #[arg(long)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    e: Option<f64>,
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct ParamsConfig {
    a: Option<f64>,
    b: Option<f64>,
    c: Option<f64>,
    d: Option<f64>,
    e: Option<f64>,
    k: Option<u32>,
}

fn pick<T: Copy>(flag: Option<T>, file: Option<T>) -> Option<T> {
    flag.or(file)
}

fn require<T: Copy>(v: Option<T>, name: &str) -> Result<T> {
    v.with_context(|| format!("missing required parameter --{name} (flag or config)"))
}

fn load_config<C: for<'de> Deserialize<'de>>(path: &Option<PathBuf>, command: &str) -> Result<C>
where
    C: Default + ConfigTag,
{
    match path {
        None => Ok(C::default()),
        Some(p) => {
            let text = fs::read_to_string(p)
                .with_context(|| format!("cannot read config {}", p.display()))?;
            let cfg: C = serde_json::from_str(&text)
                .with_context(|| format!("invalid config {}", p.display()))?;
            if let Some(tag) = cfg.command_tag() {
                if tag != command {
                    bail!("config is for command '{tag}', not '{command}'");
                }
            }
            Ok(cfg)
        }
    }
}

trait ConfigTag {
    fn command_tag(&self) -> Option<&str>;
}

macro_rules! impl_config_tag {
    ($t:ty) => {
        impl ConfigTag for $t {
            fn command_tag(&self) -> Option<&str> {
                self.command.as_deref()
            }
        }
    };
}


/// Compact float formatting for CSV data: plain decimal in the readable
/// range, scientific notation outside it.
fn fnum(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else if v.is_finite() && (1e-5..1e15).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Writer to the chosen output target.
fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>> {
    Ok(match path {
        None => Box::new(BufWriter::new(io::stdout())),
        Some(p) => Box::new(BufWriter::new(
            fs::File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
    })
}

fn params_header(p: &MapParams<f64>) -> String {
    format!(
        "a={} b={} c={} d={} e={} k={}",
        p.a, p.b, p.c, p.d, p.e, p.k
    )
}

fn kind_name(kind: BoundaryKind) -> &'static str {
    match kind {
        BoundaryKind::HopfPair => "hopf_pair",
        BoundaryKind::EigenMinusOne => "eigen_minus_one",
        BoundaryKind::EigenPlusOne => "eigen_plus_one",
    }
}

fn region_name(kind: RegionKind) -> &'static str {
    match kind {
        RegionKind::Trivial => "trivial",
        RegionKind::Nontrivial => "nontrivial",
        RegionKind::Symmetric => "symmetric",
    }
}

// ---------------------------------------------------------------- schur --

#[derive(Args, Debug)]
struct SchurArgs {
    /// Quadratic coefficient A.
    #[arg(long = "A", allow_hyphen_values = true)]
    a2: Option<f64>,
    /// Linear coefficient B.
    #[arg(long = "B", allow_hyphen_values = true)]
    a1: Option<f64>,
    /// Constant coefficient D.
    #[arg(long = "D", allow_hyphen_values = true)]
    a0: Option<f64>,
    /// Print only the stable interval of the family B + beta.
    #[arg(long)]
    interval: bool,
    /// Print only the root triple.
    #[arg(long)]
    roots: bool,
    /// Print only the three bifurcation values.
    #[arg(long)]
    bif_values: bool,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct SchurConfig {
    command: Option<String>,
    #[serde(rename = "A")]
    a2: Option<f64>,
    #[serde(rename = "B")]
    a1: Option<f64>,
    #[serde(rename = "D")]
    a0: Option<f64>,
}
impl_config_tag!(SchurConfig);

fn fmt_interval(lo: f64, hi: f64) -> String {
    format!("({lo}, {hi})")
}

fn run_schur(args: SchurArgs) -> Result<()> {
    let cfg: SchurConfig = load_config(&args.config, "schur")?;
    let q = MonicCubic::new(
        require(pick(args.a2, cfg.a2), "A")?,
        require(pick(args.a1, cfg.a1), "B")?,
        require(pick(args.a0, cfg.a0), "D")?,
    );
    let mut out = open_output(&args.output)?;
    if args.interval {
        match stable_interval(&q) {
            Some(iv) => writeln!(out, "{}", fmt_interval(iv.lo, iv.hi))?,
            None => writeln!(out, "empty")?,
        }
        return Ok(());
    }
    if args.roots {
        for r in cubic_roots(&q) {
            writeln!(out, "{} {}", r.re, r.im)?;
        }
        return Ok(());
    }
    if args.bif_values {
        for v in bifurcation_values(&q) {
            let name = match v.kind {
                BifurcationKind::RootAtPlusOne => "root_at_plus_one",
                BifurcationKind::RootAtMinusOne => "root_at_minus_one",
                BifurcationKind::UnitComplexPair => "unit_complex_pair",
            };
            writeln!(out, "{} {}", v.beta, name)?;
        }
        return Ok(());
    }
    let report = serde_json::json!({
        "coefficients": { "A": q.a2, "B": q.a1, "D": q.a0 },
        "stable": q.is_stable(),
        "alpha_hat": q.alpha_hat(),
        "stable_interval": stable_interval(&q).map(|iv| [iv.lo, iv.hi]),
        "roots": cubic_roots(&q).iter().map(|r| [r.re, r.im]).collect::<Vec<_>>(),
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(())
}

// ----------------------------------------------------------- equilibria --

#[derive(Args, Debug)]
struct EquilibriaArgs {
    #[command(flatten)]
    params: ParamFlags,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct EquilibriaConfig {
    command: Option<String>,
    #[serde(flatten)]
    params: ParamsConfig,
}
impl_config_tag!(EquilibriaConfig);

fn merge_params(flags: &ParamFlags, file: &ParamsConfig) -> Result<MapParams<f64>> {
    let p = MapParams::new(
        require(pick(flags.a, file.a), "a")?,
        require(pick(flags.b, file.b), "b")?,
        require(pick(flags.c, file.c), "c")?,
        require(pick(flags.d, file.d), "d")?,
        require(pick(flags.e, file.e), "e")?,
        require(pick(flags.k, file.k), "k")?,
    )?;
    Ok(p)
}

fn run_equilibria(args: EquilibriaArgs) -> Result<()> {
    let cfg: EquilibriaConfig = load_config(&args.config, "equilibria")?;
    let p = merge_params(&args.params, &cfg.params)?;
    let set = equilibria::equilibria(&p);
    let p2 = equilibria::symmetric_period2(&p);
    let mut out = open_output(&args.output)?;
    let report = serde_json::json!({
        "params": p,
        "origin": set.origin,
        "nontrivial": set.nontrivial,
        "radicand": set.radicand,
        "degenerate": set.degenerate,
        "period2": {
            "points": p2.points,
            "radicand": p2.radicand,
            "degenerate": p2.degenerate,
        },
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(())
}

// --------------------------------------------------------------- region --

#[derive(Args, Debug)]
struct RegionArgs {
    #[command(flatten)]
    params: ParamFlags,
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Grid resolution per axis.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    e_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    e_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    c_max: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct RegionConfig {
    command: Option<String>,
    #[serde(flatten)]
    params: ParamsConfig,
    kind: Option<KindArg>,
    grid: Option<usize>,
    e_min: Option<f64>,
    e_max: Option<f64>,
    c_min: Option<f64>,
    c_max: Option<f64>,
}
impl_config_tag!(RegionConfig);

/// Default plot window: the admissible strip in e (slightly inflated) and
/// the span of the boundary curves in c.
fn default_region_window(fam: &FamilyParams<f64>, kind: RegionKind) -> ((f64, f64), (f64, f64)) {
    let r2 = fam.a * fam.a + fam.b * fam.b;
    let e_half = 1.05 / r2;
    let curves = equilibria::RegionCurves {
        a: fam.a,
        b: fam.b,
    };
    let mut c_lo = f64::INFINITY;
    let mut c_hi = f64::NEG_INFINITY;
    let steps = 400;
    for i in 0..=steps {
        let e = -e_half + 2.0 * e_half * i as f64 / steps as f64;
        for u in [curves.c1(e), -curves.c1(e), curves.c_minus1(e), curves.c_hat(e)] {
            let c = u / (-fam.b);
            c_lo = c_lo.min(c);
            c_hi = c_hi.max(c);
        }
    }
    let pad = 0.1 * (c_hi - c_lo).max(1.0);
    let _ = kind;
    ((-e_half, e_half), (c_lo - pad, c_hi + pad))
}

fn run_region(args: RegionArgs) -> Result<()> {
    let cfg: RegionConfig = load_config(&args.config, "region")?;
    let fam = FamilyParams {
        a: require(pick(args.params.a, cfg.params.a), "a")?,
        b: require(pick(args.params.b, cfg.params.b), "b")?,
        d: require(pick(args.params.d, cfg.params.d), "d")?,
        k: require(pick(args.params.k, cfg.params.k), "k")?,
    };
    let kind: RegionKind = require(pick(args.kind, cfg.kind), "kind")?.into();
    let grid = pick(args.grid, cfg.grid).unwrap_or(200);
    let (de, dc) = default_region_window(&fam, kind);
    let e_range = (
        pick(args.e_min, cfg.e_min).unwrap_or(de.0),
        pick(args.e_max, cfg.e_max).unwrap_or(de.1),
    );
    let c_range = (
        pick(args.c_min, cfg.c_min).unwrap_or(dc.0),
        pick(args.c_max, cfg.c_max).unwrap_or(dc.1),
    );
    let cells = equilibria::raster(&fam, kind, e_range, c_range, grid, grid);
    let mut out = open_output(&args.output)?;
    writeln!(
        out,
        "# act region a={} b={} d={} k={} kind={} grid={} e=[{},{}] c=[{},{}]",
        fam.a,
        fam.b,
        fam.d,
        fam.k,
        region_name(kind),
        grid,
        e_range.0,
        e_range.1,
        c_range.0,
        c_range.1
    )?;
    writeln!(out, "e,c,member,kind")?;
    for cell in cells {
        writeln!(
            out,
            "{},{},{},{}",
            cell.e,
            cell.c,
            u8::from(cell.member),
            region_name(kind)
        )?;
    }
    Ok(())
}

// ------------------------------------------------------------- boundary --

#[derive(Args, Debug)]
struct BoundaryArgs {
    #[command(flatten)]
    params: ParamFlags,
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    #[arg(long, allow_hyphen_values = true)]
    e_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    e_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Classification tolerance on the eigenvalue signature.
    #[arg(long)]
    tol: Option<f64>,
    /// Emit corner points and resonance parameters as JSON instead.
    #[arg(long)]
    corners: bool,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct BoundaryConfig {
    command: Option<String>,
    #[serde(flatten)]
    params: ParamsConfig,
    kind: Option<KindArg>,
    e_min: Option<f64>,
    e_max: Option<f64>,
    steps: Option<usize>,
    tol: Option<f64>,
}
impl_config_tag!(BoundaryConfig);

fn run_boundary(args: BoundaryArgs) -> Result<()> {
    let cfg: BoundaryConfig = load_config(&args.config, "boundary")?;
    let a = require(pick(args.params.a, cfg.params.a), "a")?;
    let b = require(pick(args.params.b, cfg.params.b), "b")?;
    if args.corners {
        let corners = corner_points(a, b)?;
        let resonances = resonance_parameters(a, b).ok();
        let mut out = open_output(&args.output)?;
        let report = serde_json::json!({
            "corners": corners,
            "resonances": resonances,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        return Ok(());
    }
    let fam = FamilyParams {
        a,
        b,
        d: require(pick(args.params.d, cfg.params.d), "d")?,
        k: require(pick(args.params.k, cfg.params.k), "k")?,
    };
    let kind: RegionKind = require(pick(args.kind, cfg.kind), "kind")?.into();
    let r2 = fam.a * fam.a + fam.b * fam.b;
    let e_min = pick(args.e_min, cfg.e_min).unwrap_or(-0.999 / r2);
    let e_max = pick(args.e_max, cfg.e_max).unwrap_or(0.999 / r2);
    let steps = pick(args.steps, cfg.steps).unwrap_or(200);
    let tol = pick(args.tol, cfg.tol).unwrap_or(1e-8);

    let mut out = open_output(&args.output)?;
    writeln!(
        out,
        "# act boundary a={} b={} d={} k={} kind={} e=[{},{}] steps={} tol={:e}",
        fam.a,
        fam.b,
        fam.d,
        fam.k,
        region_name(kind),
        e_min,
        e_max,
        steps,
        tol
    )?;
    writeln!(out, "e,c,kind")?;
    for i in 0..=steps {
        let e = e_min + (e_max - e_min) * i as f64 / steps as f64;
        match boundary_classify(&fam, e, kind, tol) {
            Ok(points) => {
                for pt in points {
                    writeln!(out, "{},{},{}", pt.e, pt.c, kind_name(pt.kind))?;
                }
            }
            Err(act_core::Error::EmptyRegion(_)) | Err(act_core::Error::StripViolation) => {}
            Err(err) => return Err(err.into()),
        }
    }
    Ok(())
}

// ------------------------------------------------------------------ box --

#[derive(Args, Debug)]
struct BoxArgs {
    #[command(flatten)]
    params: ParamFlags,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct BoxConfig {
    command: Option<String>,
    #[serde(flatten)]
    params: ParamsConfig,
}
impl_config_tag!(BoxConfig);

fn run_box(args: BoxArgs) -> Result<()> {
    let cfg: BoxConfig = load_config(&args.config, "box")?;
    let p = merge_params(&args.params, &cfg.params)?;
    let bx = nonwandering_box(&p);
    let mut out = open_output(&args.output)?;
    let report = serde_json::json!({
        "params": p,
        "x_max": bx.x_max,
        "y_max": bx.y_max,
        "z_max": bx.z_max,
    });
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(())
}

// ---------------------------------------------------------------- orbit --

#[derive(Args, Debug)]
struct OrbitArgs {
    #[command(flatten)]
    params: ParamFlags,
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    y0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    z0: Option<f64>,
    #[arg(short = 'n', long)]
    n: Option<usize>,
    /// Escape-box inflation factor.
    #[arg(long)]
    inflation: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct OrbitConfig {
    command: Option<String>,
    #[serde(flatten)]
    params: ParamsConfig,
    x0: Option<f64>,
    y0: Option<f64>,
    z0: Option<f64>,
    n: Option<usize>,
    inflation: Option<f64>,
}
impl_config_tag!(OrbitConfig);

fn run_orbit(args: OrbitArgs) -> Result<()> {
    let cfg: OrbitConfig = load_config(&args.config, "orbit")?;
    let p = merge_params(&args.params, &cfg.params)?;
    let s0 = State64::new(
        require(pick(args.x0, cfg.x0), "x0")?,
        require(pick(args.y0, cfg.y0), "y0")?,
        require(pick(args.z0, cfg.z0), "z0")?,
    );
    let n = pick(args.n, cfg.n).unwrap_or(1000);
    let inflation = pick(args.inflation, cfg.inflation).unwrap_or(10.0);
    let bx = nonwandering_box(&p);
    let r = iterate(&p, &s0, n, &bx, inflation);
    let mut out = open_output(&args.output)?;
    writeln!(
        out,
        "# act orbit {} x0={} y0={} z0={} n={} inflation={} escaped={} escape_index={}",
        params_header(&p),
        s0.x,
        s0.y,
        s0.z,
        n,
        inflation,
        r.escaped,
        r.escape_index.map_or("-".into(), |i| i.to_string())
    )?;
    writeln!(out, "n,x,y,z")?;
    for (i, s) in r.states.iter().enumerate() {
        writeln!(out, "{},{},{},{}", i, fnum(s.x), fnum(s.y), fnum(s.z))?;
    }
    Ok(())
}

// ------------------------------------------------------------ horseshoe --

#[derive(Args, Debug)]
struct HorseshoeArgs {
    #[command(flatten)]
    params: ParamFlags,
    /// Largest period to enumerate.
    #[arg(short = 'n', long)]
    n: Option<usize>,
    /// Slab inflation fraction for the hyperbolicity sup-norms.
    #[arg(long)]
    inflation: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct HorseshoeConfig {
    command: Option<String>,
    #[serde(flatten)]
    params: ParamsConfig,
    n: Option<usize>,
    inflation: Option<f64>,
}
impl_config_tag!(HorseshoeConfig);

fn run_horseshoe(args: HorseshoeArgs) -> Result<()> {
    let cfg: HorseshoeConfig = load_config(&args.config, "horseshoe")?;
    let p = MapParams::new(
        pick(args.params.a, cfg.params.a).unwrap_or(0.0),
        require(pick(args.params.b, cfg.params.b), "b")?,
        require(pick(args.params.c, cfg.params.c), "c")?,
        require(pick(args.params.d, cfg.params.d), "d")?,
        pick(args.params.e, cfg.params.e).unwrap_or(0.0),
        require(pick(args.params.k, cfg.params.k), "k")?,
    )?;
    let n_max = pick(args.n, cfg.n).unwrap_or(6).min(8);
    let inflation = pick(args.inflation, cfg.inflation).unwrap_or(1e-3);

    let case = classify_case(&p);
    let mut report = serde_json::json!({
        "params": p,
        "case": case,
    });
    if case.holds() {
        let geo = strip_geometry(&p)?;
        let margins = hyperbolicity_margins(&p, &geo, inflation);
        let opts = NewtonOptions::default();
        let mut counts = Vec::new();
        let mut failures = Vec::new();
        for n in 1..=n_max {
            let en = enumerate_periodic(&p, &geo, n, &opts);
            counts.push(serde_json::json!({
                "period": n,
                "expected": en.expected,
                "found": en.orbits.len(),
                "complete": en.complete(),
            }));
            for f in en.failures {
                failures.push(serde_json::json!({
                    "period": n,
                    "word": f.word,
                    "reason": f.reason,
                }));
            }
        }
        report["geometry"] = serde_json::to_value(&geo)?;
        report["margins"] = serde_json::to_value(margins)?;
        report["counts"] = serde_json::Value::Array(counts);
        report["failures"] = serde_json::Value::Array(failures);
    }
    let mut out = open_output(&args.output)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
    Ok(())
}

// ---------------------------------------------------------- ai-continue --

#[derive(Args, Debug)]
struct AiArgs {
    #[arg(long, value_enum)]
    route: Option<RouteArg>,
    /// Route ratio (c/d for the c route, b/d for the b route).
    #[arg(long, allow_hyphen_values = true)]
    ratio: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// Fixed b (c route only).
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    /// Fixed c (b route only).
    #[arg(long, allow_hyphen_values = true)]
    c: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    e: Option<f64>,
    /// Continue a single word, e.g. --word 121.
    #[arg(long)]
    word: Option<String>,
    /// Run the full witness up to this period.
    #[arg(long)]
    n_max: Option<usize>,
    /// Largest admissible |lambda|.
    #[arg(long)]
    lambda_ceiling: Option<f64>,
    /// Dump all continued orbits to this CSV file.
    #[arg(long)]
    orbits_csv: Option<PathBuf>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct AiConfig {
    command: Option<String>,
    route: Option<RouteArg>,
    ratio: Option<f64>,
    lambda: Option<f64>,
    k: Option<u32>,
    a: Option<f64>,
    b: Option<f64>,
    c: Option<f64>,
    e: Option<f64>,
    word: Option<String>,
    n_max: Option<usize>,
    lambda_ceiling: Option<f64>,
}
impl_config_tag!(AiConfig);

fn parse_word(s: &str) -> Result<Vec<u8>> {
    s.chars()
        .map(|ch| {
            ch.to_digit(10)
                .map(|d| d as u8)
                .with_context(|| format!("invalid symbol '{ch}' in word"))
        })
        .collect()
}

fn run_ai(args: AiArgs) -> Result<()> {
    let cfg: AiConfig = load_config(&args.config, "ai-continue")?;
    let route_arg = require(pick(args.route, cfg.route), "route")?;
    let ratio = require(pick(args.ratio, cfg.ratio), "ratio")?;
    let lambda = require(pick(args.lambda, cfg.lambda), "lambda")?;
    let k = require(pick(args.k, cfg.k), "k")?;
    let a = pick(args.a, cfg.a).unwrap_or(0.0);
    let e = pick(args.e, cfg.e).unwrap_or(0.0);
    let route = match route_arg {
        RouteArg::C => RouteSpec::CRoute {
            ratio,
            lambda,
            a,
            b: require(pick(args.b, cfg.b), "b")?,
            e,
        },
        RouteArg::B => RouteSpec::BRoute {
            ratio,
            lambda,
            a,
            c: require(pick(args.c, cfg.c), "c")?,
            e,
        },
    };
    let mut opts = ContinuationOptions::default();
    if let Some(ceiling) = pick(args.lambda_ceiling, cfg.lambda_ceiling) {
        opts.lambda_ceiling = ceiling;
    }
    let p = route.map_params(k)?;

    let word_arg = args.word.clone().or(cfg.word);
    let mut out = open_output(&args.output)?;
    let mut orbit_rows: Vec<(String, Vec<State64>)> = Vec::new();

    if let Some(word_text) = word_arg {
        let word = parse_word(&word_text)?;
        let window = ai::continue_orbit(&word, &route, k, &opts)?;
        let orbit = ai::lift_orbit(&window, &p, opts.lift_tol)?;
        let report = serde_json::json!({
            "route": route_name(route.route()),
            "params": p,
            "word": word,
            "window": window.values,
            "orbit": orbit,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        orbit_rows.push((word_text, orbit));
    } else {
        let n_max = pick(args.n_max, cfg.n_max).unwrap_or(4).min(6);
        let report: WitnessReport<f64> = ai::conjugacy_witness(&route, k, n_max, &opts)?;
        for (word, window) in &report.windows {
            let orbit = ai::lift_orbit(window, &p, opts.lift_tol)?;
            orbit_rows.push((word.iter().map(|s| s.to_string()).collect(), orbit));
        }
        let json = serde_json::json!({
            "route": route_name(route.route()),
            "params": p,
            "counts": report.counts,
            "failures": report.failures,
            "ok": report.ok,
        });
        writeln!(out, "{}", serde_json::to_string_pretty(&json)?)?;
        if !report.ok {
            bail!("conjugacy witness failed");
        }
    }

    if let Some(path) = &args.orbits_csv {
        let mut csv = BufWriter::new(fs::File::create(path)?);
        writeln!(csv, "# act ai-continue {} lambda={}", params_header(&p), lambda)?;
        writeln!(csv, "word,n,x,y,z")?;
        for (word, orbit) in &orbit_rows {
            for (i, s) in orbit.iter().enumerate() {
                writeln!(csv, "{},{},{},{},{}", word, i, fnum(s.x), fnum(s.y), fnum(s.z))?;
            }
        }
    }
    Ok(())
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::C => "c",
        Route::B => "b",
    }
}

// ----------------------------------------------------------------- scan --

#[derive(Args, Debug)]
struct ScanArgs {
    #[command(flatten)]
    params: ParamFlags,
    #[arg(long, value_enum)]
    sweep: Option<SweepArg>,
    #[arg(long, allow_hyphen_values = true)]
    from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    to: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    transient: Option<usize>,
    #[arg(long)]
    samples: Option<usize>,
    /// Explicit seed; defaults to a 1e-8 offset from the relevant equilibrium.
    #[arg(long, allow_hyphen_values = true)]
    seed_x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    seed_y: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    seed_z: Option<f64>,
    #[arg(long)]
    offset: Option<f64>,
    #[arg(long)]
    inflation: Option<f64>,
    /// Emit rotation-number estimates instead of x-samples.
    #[arg(long)]
    rotation: bool,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct ScanFileConfig {
    command: Option<String>,
    #[serde(flatten)]
    params: ParamsConfig,
    sweep: Option<SweepArg>,
    from: Option<f64>,
    to: Option<f64>,
    steps: Option<usize>,
    transient: Option<usize>,
    samples: Option<usize>,
    seed_x: Option<f64>,
    seed_y: Option<f64>,
    seed_z: Option<f64>,
    offset: Option<f64>,
    inflation: Option<f64>,
}
impl_config_tag!(ScanFileConfig);

fn run_scan(args: ScanArgs) -> Result<()> {
    let cfg: ScanFileConfig = load_config(&args.config, "scan")?;
    let sweep = match require(pick(args.sweep, cfg.sweep), "sweep")? {
        SweepArg::C => SweepParam::C,
        SweepArg::E => SweepParam::E,
    };
    // The swept parameter may be omitted from the base (filled per point).
    let base = MapParams::new(
        require(pick(args.params.a, cfg.params.a), "a")?,
        require(pick(args.params.b, cfg.params.b), "b")?,
        pick(args.params.c, cfg.params.c).unwrap_or(0.0),
        require(pick(args.params.d, cfg.params.d), "d")?,
        pick(args.params.e, cfg.params.e).unwrap_or(0.0),
        require(pick(args.params.k, cfg.params.k), "k")?,
    )?;
    let mut scan_cfg = ScanConfig::new(
        sweep,
        require(pick(args.from, cfg.from), "from")?,
        require(pick(args.to, cfg.to), "to")?,
        require(pick(args.steps, cfg.steps), "steps")?,
    );
    if let Some(t) = pick(args.transient, cfg.transient) {
        scan_cfg.transient = t;
    }
    if let Some(s) = pick(args.samples, cfg.samples) {
        scan_cfg.samples = s;
    }
    if let Some(f) = pick(args.inflation, cfg.inflation) {
        scan_cfg.escape_inflation = f;
    }
    let seed = match (
        pick(args.seed_x, cfg.seed_x),
        pick(args.seed_y, cfg.seed_y),
        pick(args.seed_z, cfg.seed_z),
    ) {
        (Some(x), Some(y), Some(z)) => SeedSpec::Explicit(State64::new(x, y, z)),
        _ => SeedSpec::NearEquilibrium {
            offset: pick(args.offset, cfg.offset).unwrap_or(1e-8),
        },
    };
    scan_cfg.seed = seed;

    let mut out = open_output(&args.output)?;
    writeln!(
        out,
        "# act scan {} sweep={} from={} to={} steps={} transient={} samples={} seed={:?} rotation={}",
        params_header(&base),
        match sweep {
            SweepParam::C => "c",
            SweepParam::E => "e",
        },
        scan_cfg.from,
        scan_cfg.to,
        scan_cfg.steps,
        scan_cfg.transient,
        scan_cfg.samples,
        scan_cfg.seed,
        args.rotation,
    )?;
    if args.rotation {
        writeln!(out, "value,escaped,rotation")?;
        for i in 0..scan_cfg.steps {
            let p = scan_cfg.params_at(&base, i);
            let seed = scan_cfg.seed.resolve(&p);
            let value = scan_cfg.value_at(i);
            match capture_orbit(&p, &seed, scan_cfg.transient, scan_cfg.samples, scan_cfg.escape_inflation)
            {
                Ok(orbit) => match rotation_number_estimate(&orbit) {
                    Some(rot) => writeln!(out, "{},0,{}", fnum(value), fnum(rot))?,
                    None => writeln!(out, "{},0,", fnum(value))?,
                },
                Err(_) => writeln!(out, "{},1,", fnum(value))?,
            }
        }
        return Ok(());
    }
    let rows = bifurcation_diagram(&base, &scan_cfg);
    writeln!(out, "value,escaped,x")?;
    for row in rows {
        if row.escaped {
            writeln!(out, "{},1,", fnum(row.value))?;
        }
        for x in row.samples {
            writeln!(out, "{},0,{}", fnum(row.value), fnum(x))?;
        }
    }
    Ok(())
}

// -------------------------------------------------------------- section --

#[derive(Args, Debug)]
struct SectionArgs {
    #[command(flatten)]
    params: ParamFlags,
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    y0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    z0: Option<f64>,
    #[arg(long, value_enum)]
    axis: Option<AxisArg>,
    #[arg(long, allow_hyphen_values = true)]
    value: Option<f64>,
    #[arg(long, value_enum)]
    direction: Option<DirectionArg>,
    #[arg(long)]
    transient: Option<usize>,
    #[arg(short = 'n', long)]
    n: Option<usize>,
    #[arg(long)]
    min_crossings: Option<usize>,
    #[arg(long)]
    inflation: Option<f64>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct SectionFileConfig {
    command: Option<String>,
    #[serde(flatten)]
    params: ParamsConfig,
    x0: Option<f64>,
    y0: Option<f64>,
    z0: Option<f64>,
    axis: Option<AxisArg>,
    value: Option<f64>,
    direction: Option<DirectionArg>,
    transient: Option<usize>,
    n: Option<usize>,
    min_crossings: Option<usize>,
    inflation: Option<f64>,
}
impl_config_tag!(SectionFileConfig);

fn run_section(args: SectionArgs) -> Result<()> {
    let cfg: SectionFileConfig = load_config(&args.config, "section")?;
    let p = merge_params(&args.params, &cfg.params)?;
    let s0 = State64::new(
        require(pick(args.x0, cfg.x0), "x0")?,
        require(pick(args.y0, cfg.y0), "y0")?,
        require(pick(args.z0, cfg.z0), "z0")?,
    );
    let axis: Axis = require(pick(args.axis, cfg.axis), "axis")?.into();
    let section_cfg = SectionConfig {
        axis,
        value: require(pick(args.value, cfg.value), "value")?,
        direction: pick(args.direction, cfg.direction)
            .unwrap_or(DirectionArg::Positive)
            .into(),
        transient: pick(args.transient, cfg.transient).unwrap_or(1000),
        iterations: pick(args.n, cfg.n).unwrap_or(1_000_000),
        escape_inflation: pick(args.inflation, cfg.inflation).unwrap_or(10.0),
        min_crossings: pick(args.min_crossings, cfg.min_crossings).unwrap_or(1),
    };
    let pts = poincare_section(&p, &s0, &section_cfg)?;
    let (u_label, v_label) = axis.plane_labels();
    let mut out = open_output(&args.output)?;
    writeln!(
        out,
        "# act section {} x0={} y0={} z0={} axis={:?} value={} crossings={}",
        params_header(&p),
        s0.x,
        s0.y,
        s0.z,
        axis,
        section_cfg.value,
        pts.len()
    )?;
    writeln!(out, "{u_label},{v_label}")?;
    for (u, v) in pts {
        writeln!(out, "{},{}", fnum(u), fnum(v))?;
    }
    Ok(())
}

// ------------------------------------------------------------- lyapunov --

#[derive(Args, Debug)]
struct LyapunovArgs {
    #[command(flatten)]
    params: ParamFlags,
    #[arg(long, allow_hyphen_values = true)]
    x0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    y0: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    z0: Option<f64>,
    #[arg(short = 'n', long)]
    n: Option<usize>,
    #[arg(long)]
    transient: Option<usize>,
    #[arg(long)]
    inflation: Option<f64>,
    /// Sweep c over [from, to] instead of a single evaluation.
    #[arg(long, allow_hyphen_values = true)]
    from: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    to: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct LyapunovFileConfig {
    command: Option<String>,
    #[serde(flatten)]
    params: ParamsConfig,
    x0: Option<f64>,
    y0: Option<f64>,
    z0: Option<f64>,
    n: Option<usize>,
    transient: Option<usize>,
    inflation: Option<f64>,
    from: Option<f64>,
    to: Option<f64>,
    steps: Option<usize>,
}
impl_config_tag!(LyapunovFileConfig);

fn run_lyapunov(args: LyapunovArgs) -> Result<()> {
    let cfg: LyapunovFileConfig = load_config(&args.config, "lyapunov")?;
    let p = merge_params(&args.params, &cfg.params)?;
    let n = pick(args.n, cfg.n).unwrap_or(100_000);
    let transient = pick(args.transient, cfg.transient).unwrap_or(10_000);
    let inflation = pick(args.inflation, cfg.inflation).unwrap_or(10.0);
    let seed = match (
        pick(args.x0, cfg.x0),
        pick(args.y0, cfg.y0),
        pick(args.z0, cfg.z0),
    ) {
        (Some(x), Some(y), Some(z)) => State64::new(x, y, z),
        _ => SeedSpec::NearEquilibrium { offset: 1e-8 }.resolve(&p),
    };
    let mut out = open_output(&args.output)?;
    match (pick(args.from, cfg.from), pick(args.to, cfg.to)) {
        (Some(from), Some(to)) => {
            let steps = pick(args.steps, cfg.steps).unwrap_or(100);
            writeln!(
                out,
                "# act lyapunov {} sweep=c from={} to={} steps={} n={} transient={}",
                params_header(&p),
                from,
                to,
                steps,
                n,
                transient
            )?;
            writeln!(out, "c,l1,l2,l3,escaped")?;
            for i in 0..steps {
                let c = if steps <= 1 {
                    from
                } else {
                    from + (to - from) * i as f64 / (steps - 1) as f64
                };
                let mut pi = p;
                pi.c = c;
                let seed_i = SeedSpec::NearEquilibrium { offset: 1e-8 }.resolve(&pi);
                match lyapunov(&pi, &seed_i, n, transient, inflation) {
                    Ok(l) => writeln!(
                        out,
                        "{},{},{},{},0",
                        c, l.exponents[0], l.exponents[1], l.exponents[2]
                    )?,
                    Err(_) => writeln!(out, "{},,,,1", c)?,
                }
            }
        }
        _ => {
            let l = lyapunov(&p, &seed, n, transient, inflation)?;
            let report = serde_json::json!({
                "params": p,
                "seed": seed,
                "n": n,
                "transient": transient,
                "exponents": l.exponents,
                "sum": l.sum(),
                "log_abs_det": p.det_jacobian().abs().ln(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
        }
    }
    Ok(())
}

// ----------------------------------------------------------------- main --

fn run() -> Result<()> {
    let cli = Cli::parse();
    match cli.command {
        Command::Schur(a) => run_schur(a),
        Command::Equilibria(a) => run_equilibria(a),
        Command::Region(a) => run_region(a),
        Command::Boundary(a) => run_boundary(a),
        Command::BoxCmd(a) => run_box(a),
        Command::Orbit(a) => run_orbit(a),
        Command::Horseshoe(a) => run_horseshoe(a),
        Command::AiContinue(a) => run_ai(a),
        Command::Scan(a) => run_scan(a),
        Command::Section(a) => run_section(a),
        Command::Lyapunov(a) => run_lyapunov(a),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("act: {err:#}");
            ExitCode::from(1)
        }
    }
}
