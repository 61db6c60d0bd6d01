//! The `bour` command line: curvature reports, pair verification, the worked
//! examples and mesh export.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::bour::{
    example_pair, pair_report, right_helicoid_pair_i, same_gauss_pair_i, same_gauss_pair_ii, sweep, BourPair, Given,
    Grid, PairReport, SameGaussParams, Signs, Surface, Tolerances,
};
use crate::error::{Error, Result};
use crate::expr::{parse, Env};
use crate::helicoid::{closed_form_curvatures, family_metric, HelicoidSpec, Kind};
use crate::mesh::{MeshGrid, Projection};
use crate::surface::MEAN_CURVATURE_TOL;

#[derive(Parser, Debug)]
#[command(name = "bour", version, about = "Helicoidal and rotational surfaces in Minkowski 4-space")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Curvature statistics of a helicoid spec over a grid.
    Report {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value = "33x33", value_parser = parse_grid)]
        grid: (usize, usize),
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a partner and check isometry, Gauss map, minimality and hyperplanarity.
    Verify(Box<VerifyArgs>),
    /// Reproduce worked example 1, 2 or 3.
    Example {
        n: u32,
        #[arg(long, default_value = "33x33", value_parser = parse_grid)]
        grid: (usize, usize),
        /// Output directory (default `example<N>`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Sample a helicoid spec and write a mesh.
    Export {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value = "33x33", value_parser = parse_grid)]
        grid: (usize, usize),
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long, default_value = "drop-constant")]
        projection: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Obj,
    Csv,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Pair file: `{"helicoid": {...}, "gauge": {"a"|"b": "..."}, "offsets": [..]}`.
    #[arg(long, conflicts_with = "theorem")]
    spec: Option<PathBuf>,
    /// bour-1, same-gauss-1, right-helicoid, bour-2, same-gauss-2 or bour-3;
    /// the numeric ids of the command contract are accepted as aliases.
    #[arg(long)]
    theorem: Option<String>,
    #[arg(long)]
    example: Option<u32>,
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    y: Option<String>,
    #[arg(long)]
    z: Option<String>,
    #[arg(long)]
    w: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    lambda: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c1: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c2: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c3: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c4: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
    sign_w: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
    sign_r: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
    sign_x: Option<f64>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_sign)]
    sign_n: Option<f64>,
    /// `a,b`
    #[arg(long, allow_hyphen_values = true, value_parser = parse_interval)]
    domain: Option<[f64; 2]>,
    #[arg(long, allow_hyphen_values = true, value_parser = parse_interval)]
    v_domain: Option<[f64; 2]>,
    #[arg(long, default_value = "33x33", value_parser = parse_grid)]
    grid: (usize, usize),
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected NUxNV, got `{s}`"))?;
    let n = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("bad grid size `{t}`: {e}"));
    let (nu, nv) = (n(a)?, n(b)?);
    if nu < 2 || nv < 2 {
        return Err(format!("grid needs at least 2x2 points, got {nu}x{nv}"));
    }
    Ok((nu, nv))
}

fn parse_sign(s: &str) -> std::result::Result<f64, String> {
    match s {
        "+" | "+1" | "1" | "plus" => Ok(1.0),
        "-" | "-1" | "minus" => Ok(-1.0),
        _ => Err(format!("sign must be + or -, got `{s}`")),
    }
}

fn parse_interval(s: &str) -> std::result::Result<[f64; 2], String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b got `{s}`"))?;
    let n = |t: &str| t.trim().parse::<f64>().map_err(|e| format!("bad number `{t}`: {e}"));
    Ok([n(a)?, n(b)?])
}

/// Run the CLI on `args` (including the program name) and return the exit
/// code: 0 pass, 1 verdict failure, 2 input error, 3 numerical failure.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.cmd) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Cmd) -> Result<i32> {
    match cmd {
        Cmd::Report { spec, grid, out } => {
            let spec = load_spec(&spec)?;
            let rep = surface_report(&spec, &Grid::for_spec(&spec, grid.0, grid.1))?;
            emit(&to_json(&rep)?, out.as_deref())?;
            Ok(if rep.spacelike_violations == 0 { 0 } else { 1 })
        }
        Cmd::Verify(args) => verify(*args),
        Cmd::Example { n, grid, out } => {
            let dir = out.unwrap_or_else(|| PathBuf::from(format!("example{n}")));
            let rep = write_example(n, grid, &dir)?;
            println!("example {n}: {} ({})", if rep.pass { "pass" } else { "fail" }, dir.display());
            Ok(if rep.pass { 0 } else { 1 })
        }
        Cmd::Export { spec, grid, format, projection, out } => {
            let projection: Projection = projection.parse()?;
            let spec = load_spec(&spec)?;
            let mesh = MeshGrid::sample(&spec, &Grid::for_spec(&spec, grid.0, grid.1))?;
            let text = match format {
                Format::Csv => mesh.to_csv(),
                Format::Obj => mesh.to_obj(projection)?,
            };
            emit(&text, out.as_deref())?;
            Ok(0)
        }
    }
}

fn load_spec(path: &Path) -> Result<HelicoidSpec> {
    HelicoidSpec::from_json(&fs::read_to_string(path)?)
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => Ok(fs::write(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Stats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
}

impl Stats {
    fn of(xs: &[f64]) -> Option<Stats> {
        if xs.is_empty() {
            return None;
        }
        let min = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let max = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Some(Stats { min, max, mean: xs.iter().sum::<f64>() / xs.len() as f64 })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurfaceReport {
    pub label: &'static str,
    pub kind: Kind,
    pub lambda: f64,
    pub profile: [String; 3],
    pub grid: Grid,
    pub points: usize,
    /// Grid points with `W <= 0`; curvatures skip them.
    pub spacelike_violations: usize,
    pub first_violation: Option<[f64; 3]>,
    pub w: Option<Stats>,
    pub k: Option<Stats>,
    pub h1: Option<Stats>,
    pub h2: Option<Stats>,
    /// `|H|_∞` of the mean curvature vector.
    pub hvec: Option<Stats>,
    pub minimal: bool,
}

struct PointStats {
    u: f64,
    v: f64,
    w: f64,
    curv: Option<[f64; 4]>,
}

/// Closed-form metric and curvatures of `spec` over `grid`.
pub fn surface_report(spec: &HelicoidSpec, grid: &Grid) -> Result<SurfaceReport> {
    let rows = sweep(grid, |u, v| {
        let w = family_metric(spec.kind, spec.lambda, spec.profile_jets(u)?).w;
        if !(w > 0.0) {
            return Ok(PointStats { u, v, w, curv: None });
        }
        let r = closed_form_curvatures(spec, u, v)?;
        Ok(PointStats { u, v, w, curv: Some([r.k, r.h1, r.h2, r.hvec.max_abs()]) })
    })?;
    let bad: Vec<&PointStats> = rows.iter().filter(|r| r.curv.is_none()).collect();
    let good: Vec<[f64; 4]> = rows.iter().filter_map(|r| r.curv).collect();
    let col = |i: usize| Stats::of(&good.iter().map(|c| c[i]).collect::<Vec<_>>());
    let hvec = col(3);
    Ok(SurfaceReport {
        label: spec.label(),
        kind: spec.kind,
        lambda: spec.lambda,
        profile: spec.sources.clone(),
        grid: *grid,
        points: rows.len(),
        spacelike_violations: bad.len(),
        first_violation: bad.first().map(|r| [r.u, r.v, r.w]),
        w: Stats::of(&rows.iter().map(|r| r.w).collect::<Vec<_>>()),
        k: col(0),
        h1: col(1),
        h2: col(2),
        hvec,
        minimal: hvec.is_some_and(|h| h.max < MEAN_CURVATURE_TOL),
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Theorem {
    BourI,
    SameGaussI,
    RightHelicoid,
    BourII,
    SameGaussII,
    BourIII,
}

impl Theorem {
    fn parse(s: &str) -> Result<Theorem> {
        Ok(match s {
            "3.1" | "bour-1" => Theorem::BourI,
            "3.2" | "3.3" | "same-gauss-1" => Theorem::SameGaussI,
            "3.4" | "right-helicoid" => Theorem::RightHelicoid,
            "3.5" | "bour-2" => Theorem::BourII,
            "3.6" | "same-gauss-2" => Theorem::SameGaussII,
            "3.7" | "3.8" | "bour-3" => Theorem::BourIII,
            _ => return Err(Error::Parameter(format!("unknown theorem `{s}`"))),
        })
    }

    fn example(self) -> Option<u32> {
        match self {
            Theorem::SameGaussI => Some(1),
            Theorem::SameGaussII => Some(2),
            Theorem::BourIII => Some(3),
            _ => None,
        }
    }

    fn default_domain(self) -> [f64; 2] {
        match self {
            Theorem::BourI | Theorem::SameGaussI | Theorem::RightHelicoid => [1.1, std::f64::consts::PI],
            Theorem::BourII | Theorem::SameGaussII => [0.05, 0.95],
            Theorem::BourIII => [0.8, std::f64::consts::PI],
        }
    }
}

fn verify(a: VerifyArgs) -> Result<i32> {
    let pair = build_pair(&a)?;
    let grid = Grid::for_spec(&pair.helicoid, a.grid.0, a.grid.1);
    let rep = pair_report(&pair, &grid, &Tolerances::default())?;
    emit(&to_json(&rep)?, a.out.as_deref())?;
    if a.out.is_some() {
        println!("verify: {}", if rep.pass { "pass" } else { "fail" });
    }
    Ok(if rep.pass { 0 } else { 1 })
}

fn build_pair(a: &VerifyArgs) -> Result<BourPair> {
    if let Some(path) = &a.spec {
        return BourPair::from_json(&fs::read_to_string(path)?);
    }
    let theorem = a.theorem.as_deref().map(Theorem::parse).transpose()?;
    if let Some(n) = a.example {
        if let Some(t) = theorem {
            if t.example() != Some(n) {
                return Err(Error::Parameter(format!("example {n} does not illustrate the requested theorem")));
            }
        }
        return example_pair(n);
    }
    let theorem = theorem.ok_or_else(|| Error::Parameter("give --spec, --theorem or --example".into()))?;
    let lambda = a.lambda.unwrap_or(1.0);
    let domain = a.domain.unwrap_or(theorem.default_domain());
    let params = |profile: &Option<String>, c3: f64, signs: Signs| SameGaussParams {
        profile: profile.clone().unwrap_or_else(|| "u".into()),
        lambda,
        c1: a.c1.unwrap_or(0.0),
        c2: a.c2.unwrap_or(0.0),
        c3: a.c3.unwrap_or(c3),
        c4: a.c4.unwrap_or(0.0),
        signs,
        domain,
        v_domain: a.v_domain,
    };
    match theorem {
        Theorem::SameGaussI => {
            let signs = Signs { profile: a.sign_w.unwrap_or(1.0), partner: a.sign_r.unwrap_or(1.0) };
            same_gauss_pair_i(&params(&a.x, 0.5, signs))
        }
        Theorem::SameGaussII => {
            let signs = Signs { profile: a.sign_x.unwrap_or(1.0), partner: a.sign_n.unwrap_or(1.0) };
            same_gauss_pair_ii(&params(&a.w, -0.5, signs))
        }
        Theorem::RightHelicoid => {
            let x = a.x.clone().unwrap_or_else(|| "u".into());
            let c = [a.c1.unwrap_or(0.0), a.c2.unwrap_or(0.0), a.c4.unwrap_or(0.0)];
            let mut pair = right_helicoid_pair_i(&x, lambda, c, a.sign_r.unwrap_or(1.0), domain)?;
            if let Some(v) = a.v_domain {
                pair.helicoid = pair.helicoid.with_v_domain(v)?;
            }
            Ok(pair)
        }
        Theorem::BourI | Theorem::BourII | Theorem::BourIII => {
            let (kind, second) = match theorem {
                Theorem::BourI => (Kind::I, &a.z),
                Theorem::BourII => (Kind::II, &a.y),
                _ => (Kind::III, &a.z),
            };
            let names = kind.profile_names();
            let need = |v: &Option<String>, name: &str| {
                v.clone().ok_or_else(|| Error::Parameter(format!("--{name} is required for this theorem")))
            };
            let p = [need(&a.x, names[0])?, need(second, names[1])?, need(&a.w, names[2])?];
            let mut env = Env::new();
            for (k, v) in [("c1", a.c1), ("c2", a.c2), ("c3", a.c3), ("c4", a.c4)] {
                if let Some(v) = v {
                    env.insert(k.into(), v);
                }
            }
            let mut spec = HelicoidSpec::new(kind, lambda, [&p[0], &p[1], &p[2]], domain, env)?;
            if let Some(v) = a.v_domain {
                spec = spec.with_v_domain(v)?;
            }
            let given = match (&a.a, &a.b) {
                (Some(e), None) => Given::A(parse(e)?),
                (None, Some(e)) => Given::B(parse(e)?),
                _ => return Err(Error::Parameter("give exactly one of --a or --b".into())),
            };
            BourPair::bour(spec, given, [0.0, 0.0])
        }
    }
}

/// Write `spec.json`, `report.json` and CSV/OBJ meshes of both surfaces of
/// example `n` into `dir`.
pub fn write_example(n: u32, grid: (usize, usize), dir: &Path) -> Result<PairReport> {
    let pair = example_pair(n)?;
    let g = Grid::for_spec(&pair.helicoid, grid.0, grid.1);
    let rep = pair_report(&pair, &g, &Tolerances::default())?;
    fs::create_dir_all(dir)?;
    let r = &pair.partner.rotational;
    let spec = json!({
        "example": n,
        "helicoid": pair.helicoid.to_json_value(),
        "gauge": { "a": pair.gauge.a.describe(), "b": pair.gauge.b.describe() },
        "partner": {
            "kind": r.kind,
            "n": r.n.describe(),
            "s": r.s.describe(),
            "r": r.r.describe(),
            "shift": pair.partner.correspondence.shift.describe(),
            "phase": pair.partner.correspondence.phase,
        },
    });
    fs::write(dir.join("spec.json"), to_json(&spec)?)?;
    fs::write(dir.join("report.json"), to_json(&rep)?)?;
    let surfaces: [(&str, &dyn Surface); 2] = [("helicoid", &pair.helicoid), ("partner", &pair.partner)];
    for (name, s) in surfaces {
        let mesh = MeshGrid::sample(s, &g)?;
        fs::write(dir.join(format!("{name}.csv")), mesh.to_csv())?;
        let projection = if mesh.constant_coordinate().is_some() { Projection::DropConstant } else { Projection::Drop(3) };
        fs::write(dir.join(format!("{name}.obj")), mesh.to_obj(projection)?)?;
    }
    Ok(rep)
}
