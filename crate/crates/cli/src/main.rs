//! `polysphere`: projections, grids and verification reports from the command line.
//!
//! Exit status: 0 on success, 1 when some input row or check fails, 2 on
//! usage or configuration errors.

mod format;
mod project;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polysphere::ball_map::{admissible_epsilons, VolumeSpec};
use polysphere::grids::{build_ball_grid, build_sphere_grid, build_surface_grid, epsilon_for, grid_to_sphere};
use polysphere::polyhedron::PolyhedronSpec;
use polysphere::verify::suites::{self, Suite, SuiteConfig};
use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Data(String),
    /// The reader went away; not worth a message.
    #[error("output closed")]
    Closed,
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Closed => 0,
            CliError::Data(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

/// Errors from building a specification are configuration errors.
fn usage(e: polysphere::Error) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Parser, Debug)]
#[command(
    name = "polysphere",
    version,
    about = "Equal-area and equal-volume maps between K_n polyhedra, the sphere and the ball"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the derived constants of K_n(r, ε) and the ball map as JSON.
    Params(ParamsArgs),
    /// Map a CSV of points between the sphere, the polyhedron and the ball.
    Project(ProjectArgs),
    /// Write the rhombic surface grid for ε = p/(p+1).
    Grid(GridArgs),
    /// Write the tetrahedral grid of the solid polyhedron or its ball image.
    BallGrid(BallGridArgs),
    /// Print the admissible values of ε for n.
    SolveEpsilon(SolveArgs),
    /// Run a verification suite and print the JSON report.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
struct SpecArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    #[arg(long, conflicts_with = "p", allow_negative_numbers = true)]
    epsilon: Option<f64>,
    /// Use ε = p/(p+1).
    #[arg(long)]
    p: Option<usize>,
}

impl SpecArgs {
    fn epsilon(&self) -> Result<f64, CliError> {
        match (self.epsilon, self.p) {
            (Some(e), None) => Ok(e),
            (None, Some(p)) if p >= 1 => Ok(epsilon_for(p)),
            (None, Some(p)) => Err(CliError::Usage(format!("--p must be positive, got {p}"))),
            _ => Err(CliError::Usage("one of --epsilon or --p is required".into())),
        }
    }
}

#[derive(Args, Debug)]
struct ParamsArgs {
    #[command(flatten)]
    spec: SpecArgs,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    SphereToPoly,
    PolyToSphere,
    BallToPoly,
    PolyToBall,
}

#[derive(Args, Debug)]
struct ProjectArgs {
    #[arg(long, value_enum)]
    direction: Direction,
    #[command(flatten)]
    spec: SpecArgs,
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Obj,
    Json,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SurfaceCarrier {
    Poly,
    Sphere,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: usize,
    #[arg(long, default_value_t = 1)]
    k: usize,
    #[arg(long, value_enum, default_value_t = SurfaceCarrier::Poly)]
    carrier: SurfaceCarrier,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SolidCarrier {
    Solid,
    Ball,
}

#[derive(Args, Debug)]
struct BallGridArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1.0)]
    r: f64,
    /// A value of ε, or `auto` for the smallest positive admissible one.
    #[arg(long, default_value = "auto")]
    epsilon: String,
    #[arg(long, default_value_t = 0)]
    levels: usize,
    #[arg(long, value_enum, default_value_t = SolidCarrier::Ball)]
    carrier: SolidCarrier,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct SolveArgs {
    #[arg(long)]
    n: usize,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum SuiteArg {
    Area,
    Volume,
    Jacobian,
    Seams,
    Healpix,
    All,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    suite: SuiteArg,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
    #[arg(long)]
    output: Option<PathBuf>,
}

/// Output file or standard output.
fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| CliError::Usage(format!("cannot create {}: {e}", p.display())))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(|e| CliError::Data(e.to_string()))?;
    writeln!(out).map_err(io_error)
}

pub fn io_error(e: io::Error) -> CliError {
    if e.kind() == io::ErrorKind::BrokenPipe {
        return CliError::Closed;
    }
    CliError::Data(format!("write failed: {e}"))
}

#[derive(Serialize)]
struct Params {
    n: usize,
    r: f64,
    epsilon: f64,
    epsilon_max: f64,
    ell_n: f64,
    big_r_n: f64,
    small_r_n: f64,
    a_n: f64,
    b_n: f64,
    face_area: f64,
    cap_area: f64,
    belt_area: f64,
    c_eps: f64,
    gamma: f64,
    beta: f64,
    xi: f64,
    admissible: bool,
}

fn cmd_params(args: &ParamsArgs) -> Result<(), CliError> {
    let eps = args.spec.epsilon()?;
    let vspec = VolumeSpec::new(args.spec.n, args.spec.r, eps).map_err(usage)?;
    // the constants of the requested ε, snapped to a root if it is that close
    let spec = PolyhedronSpec::new(args.spec.n, args.spec.r, vspec.epsilon).map_err(usage)?;
    let d = spec.derive_params();
    let params = Params {
        n: spec.n(),
        r: spec.r(),
        epsilon: spec.epsilon(),
        epsilon_max: PolyhedronSpec::epsilon_max(spec.n()),
        ell_n: d.ell_n,
        big_r_n: d.big_r_n,
        small_r_n: d.small_r_n,
        a_n: d.a_n,
        b_n: d.b_n,
        face_area: d.face_area,
        cap_area: d.cap_area,
        belt_area: d.belt_area,
        c_eps: vspec.c_eps,
        gamma: vspec.gamma,
        beta: vspec.beta,
        xi: vspec.xi,
        admissible: vspec.admissible,
    };
    write_json(&mut *sink(&None)?, &params)
}

fn cmd_grid(args: &GridArgs) -> Result<(), CliError> {
    if args.p == 0 || args.k == 0 {
        return Err(CliError::Usage("--p and --k must be positive".into()));
    }
    let grid = match args.carrier {
        SurfaceCarrier::Poly => build_surface_grid(args.n, args.p, args.k).map_err(usage)?,
        SurfaceCarrier::Sphere => match PolyhedronSpec::new(args.n, 1.0, epsilon_for(args.p)) {
            Ok(spec) => {
                let g = build_surface_grid(args.n, args.p, args.k).map_err(usage)?;
                grid_to_sphere(&g, &spec).map_err(|e| CliError::Data(e.to_string()))?
            }
            Err(polysphere::Error::InvalidN(n)) => return Err(usage(polysphere::Error::InvalidN(n))),
            // no polyhedron for this ε; the per-face closed forms still apply
            Err(_) => build_sphere_grid(args.n, args.p, args.k).map_err(usage)?,
        },
    };
    let mut out = sink(&args.output)?;
    format::write_grid(&mut *out, &grid, args.format)?;
    out.flush().map_err(io_error)
}

fn cmd_ball_grid(args: &BallGridArgs) -> Result<(), CliError> {
    let eps = if args.epsilon == "auto" {
        *admissible_epsilons(args.n)
            .iter()
            .find(|e| **e > 0.0)
            .ok_or_else(|| CliError::Usage(format!("no positive admissible epsilon for n = {}", args.n)))?
    } else {
        args.epsilon
            .parse::<f64>()
            .map_err(|_| CliError::Usage(format!("--epsilon must be a number or auto, got {}", args.epsilon)))?
    };
    let vspec = VolumeSpec::new(args.n, args.r, eps).map_err(usage)?;
    let bg = build_ball_grid(&vspec, args.levels).map_err(usage)?;
    let grid = match args.carrier {
        SolidCarrier::Solid => bg.solid_grid(),
        SolidCarrier::Ball => bg.ball_grid().map_err(|e| CliError::Data(e.to_string()))?,
    };
    let mut out = sink(&args.output)?;
    format::write_grid(&mut *out, &grid, args.format)?;
    out.flush().map_err(io_error)
}

fn cmd_solve(args: &SolveArgs) -> Result<(), CliError> {
    if args.n < 3 {
        return Err(usage(polysphere::Error::InvalidN(args.n)));
    }
    let mut out = sink(&None)?;
    for e in admissible_epsilons(args.n) {
        writeln!(out, "{}", format::num(e)).map_err(io_error)?;
    }
    out.flush().map_err(io_error)
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), CliError> {
    let suite = match args.suite {
        SuiteArg::Area => Suite::Area,
        SuiteArg::Volume => Suite::Volume,
        SuiteArg::Jacobian => Suite::Jacobian,
        SuiteArg::Seams => Suite::Seams,
        SuiteArg::Healpix => Suite::Healpix,
        SuiteArg::All => Suite::All,
    };
    if let Some(n) = args.n.filter(|n| *n < 3) {
        return Err(usage(polysphere::Error::InvalidN(n)));
    }
    let cfg = SuiteConfig {
        n: args.n,
        seed: args.seed,
        samples: args.samples,
    };
    let reports = suites::run(suite, &cfg).map_err(|e| CliError::Data(e.to_string()))?;
    let mut out = sink(&args.output)?;
    write_json(&mut *out, &reports)?;
    out.flush().map_err(io_error)?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed).map(|r| r.check.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Data(format!(
            "{} of {} checks failed: {}",
            failed.len(),
            reports.len(),
            failed.join(", ")
        )))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Params(a) => cmd_params(a),
        Command::Project(a) => project::run(a.direction, &a.spec, &a.input, &a.output),
        Command::Grid(a) => cmd_grid(a),
        Command::BallGrid(a) => cmd_ball_grid(a),
        Command::SolveEpsilon(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
    };
    match result {
        Ok(()) | Err(CliError::Closed) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("polysphere: {e}");
            ExitCode::from(e.code())
        }
    }
}
