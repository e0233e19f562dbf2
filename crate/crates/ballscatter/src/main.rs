//! Batch command-line front end: forward solves, ITE scans, bound reports,
//! inversions and the validation suite, all file-driven.
//!
//! Exit codes: 0 ok, 2 bad input, 3 numerical singularity, 4 non-convergence,
//! 1 anything else (I/O, validation failure).

use std::io::BufRead;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use ballscatter::forward::{
    far_field, fibonacci_sphere, modal_coefficients, uniform_circle, write_pattern_csv, Dimension,
    ForwardError, ProblemDocument,
};
use ballscatter::geom::{point_from_slice, Point};
use ballscatter::inverse::{invert, InverseError, TaskDocument};
use ballscatter::ite::{k0_bounds, scan_spectrum, ITEProblem, IteError};
use ballscatter::manifest::{write_alongside, RunManifest};
use ballscatter::validate::{run_suite, Suite};

#[derive(Parser)]
#[command(
    name = "ballscatter",
    version,
    about = "Forward and inverse acoustic scattering by penetrable balls and discs"
)]
struct Cli {
    /// Cap on worker threads (0 = all available cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Far-field pattern of one scattering problem, written as CSV.
    Forward {
        /// Problem JSON (dimension, k, d, center, radius, profile).
        config: PathBuf,
        /// Number of quasi-uniform observation directions.
        #[arg(long, default_value_t = 64, conflicts_with = "directions_file")]
        directions: usize,
        /// File with one direction per line (theta for 2D, x,y,z for 3D).
        #[arg(long)]
        directions_file: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Interior transmission eigenvalue scan, written as JSON.
    Ite {
        /// Problem JSON (dimension, radius, n, n_tilde).
        config: PathBuf,
        #[arg(long)]
        kmin: f64,
        #[arg(long)]
        kmax: f64,
        #[arg(long, default_value_t = 4)]
        mmax: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Lower-bound report (C1, C, k0_lemma, k0_thm, k0_effective).
    Kbound {
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        dim: u8,
        #[arg(long)]
        nstar: f64,
        /// Also write the report to a file (stdout either way).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Inversion from a task JSON plus a measured far-field CSV.
    Invert {
        task: PathBuf,
        data: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Runs the invariant/acceptance suite; nonzero exit on any failure.
    Validate {
        #[arg(long, value_enum, default_value_t = SuiteArg::Fast)]
        suite: SuiteArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Fast,
    Full,
}

enum CliError {
    BadInput(String),
    Singular(String),
    NonConvergence(String),
    Other(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::BadInput(_) => 2,
            CliError::Singular(_) => 3,
            CliError::NonConvergence(_) => 4,
            CliError::Other(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::BadInput(m)
            | CliError::Singular(m)
            | CliError::NonConvergence(m)
            | CliError::Other(m) => m,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Other(e.to_string())
    }
}

impl From<ForwardError> for CliError {
    fn from(e: ForwardError) -> Self {
        match e {
            ForwardError::SingularModalSystem { .. } => CliError::Singular(e.to_string()),
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<IteError> for CliError {
    fn from(e: IteError) -> Self {
        match e {
            IteError::ResonantWavenumber { .. } => CliError::Singular(e.to_string()),
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

impl From<InverseError> for CliError {
    fn from(e: InverseError) -> Self {
        match e {
            InverseError::NonConvergence(inner) => CliError::NonConvergence(inner.to_string()),
            InverseError::Forward(ForwardError::SingularModalSystem { .. }) => {
                CliError::Singular(e.to_string())
            }
            _ => CliError::BadInput(e.to_string()),
        }
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))
}

fn write_json<T: Serialize>(value: &T, path: &Path) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Other(format!("serialize: {e}")))?;
    std::fs::write(path, json + "\n")?;
    Ok(())
}

/// ITE problem JSON for the `ite` subcommand.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IteConfigDocument {
    dimension: Dimension,
    radius: f64,
    n: Complex64,
    n_tilde: Complex64,
}

fn load_directions(path: &Path, dim: Dimension) -> Result<Vec<Point>, CliError> {
    let file = std::fs::File::open(path)
        .map_err(|e| CliError::BadInput(format!("{}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (ln, line) in std::io::BufReader::new(file).lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let nums: Vec<f64> = t
            .split([',', ' ', '\t'])
            .filter(|s| !s.is_empty())
            .map(|s| s.parse())
            .collect::<Result<_, _>>()
            .map_err(|e| CliError::BadInput(format!("directions line {}: {e}", ln + 1)))?;
        match dim {
            Dimension::Two => {
                if nums.len() != 1 {
                    return Err(CliError::BadInput(format!(
                        "directions line {}: 2D expects one theta per line",
                        ln + 1
                    )));
                }
                out.push([nums[0].cos(), nums[0].sin(), 0.0]);
            }
            Dimension::Three => {
                let p = point_from_slice(&nums, dim).map_err(CliError::BadInput)?;
                out.push(p);
            }
        }
    }
    Ok(out)
}

fn cmd_forward(
    config: &Path,
    directions: usize,
    directions_file: Option<&Path>,
    out: &Path,
) -> Result<(), CliError> {
    let manifest = RunManifest::start("forward").input(config).output(out);
    let doc: ProblemDocument = parse_json(config)?;
    let (cfg, med) = doc.split()?;
    let dirs = match directions_file {
        Some(path) => load_directions(path, cfg.dim)?,
        None => match cfg.dim {
            Dimension::Three => fibonacci_sphere(directions),
            Dimension::Two => uniform_circle(directions),
        },
    };
    let mc = modal_coefficients(&cfg, &med, 1e-12)?;
    let pattern = far_field(&mc, &cfg, &med, &dirs)?;
    let mut buf = Vec::new();
    write_pattern_csv(&pattern, &mut buf).map_err(|e| CliError::Other(e.to_string()))?;
    std::fs::write(out, buf)?;
    write_alongside(&manifest.finish(), out)?;
    Ok(())
}

fn cmd_ite(config: &Path, kmin: f64, kmax: f64, mmax: usize, out: &Path) -> Result<(), CliError> {
    let manifest = RunManifest::start("ite").input(config).output(out);
    let doc: IteConfigDocument = parse_json(config)?;
    let prob = ITEProblem::new(doc.radius, doc.dimension, doc.n, doc.n_tilde, kmin, kmax, mmax)?;
    let spectrum = scan_spectrum(&prob);
    write_json(&spectrum, out)?;
    write_alongside(&manifest.finish(), out)?;
    Ok(())
}

fn cmd_kbound(radius: f64, dim: u8, nstar: f64, out: Option<&Path>) -> Result<(), CliError> {
    let dim = match dim {
        2 => Dimension::Two,
        3 => Dimension::Three,
        other => return Err(CliError::BadInput(format!("dimension must be 2 or 3, got {other}"))),
    };
    if !(radius > 0.0) || !(nstar > 0.0) {
        return Err(CliError::BadInput(
            "radius and nstar must be positive".into(),
        ));
    }
    let report = k0_bounds(radius, dim, nstar);
    let json = serde_json::to_string_pretty(&report)
        .map_err(|e| CliError::Other(format!("serialize: {e}")))?;
    println!("{json}");
    if let Some(path) = out {
        let manifest = RunManifest::start("kbound").output(path);
        write_json(&report, path)?;
        write_alongside(&manifest.finish(), path)?;
    }
    Ok(())
}

fn cmd_invert(task_path: &Path, data_path: &Path, out: &Path) -> Result<(), CliError> {
    let doc: TaskDocument = parse_json(task_path)?;
    let data_file = std::fs::File::open(data_path)
        .map_err(|e| CliError::BadInput(format!("{}: {e}", data_path.display())))?;
    let mut reader = std::io::BufReader::new(data_file);
    let task = doc.into_task(&mut reader)?;
    let manifest = RunManifest::start("invert")
        .input(task_path)
        .input(data_path)
        .output(out)
        .seed(task.seed);
    let result = invert(&task)?;
    write_json(&result, out)?;
    write_alongside(&manifest.finish(), out)?;
    for w in &result.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}

fn cmd_validate(suite: SuiteArg) -> Result<(), CliError> {
    let suite = match suite {
        SuiteArg::Fast => Suite::Fast,
        SuiteArg::Full => Suite::Full,
    };
    let outcomes = run_suite(suite);
    let mut ok = true;
    for o in &outcomes {
        println!("{}", o.line());
        ok &= o.passed;
    }
    if ok {
        println!("validate: all {} checks passed", outcomes.len());
        Ok(())
    } else {
        Err(CliError::Other("validation suite reported failures".into()))
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    ballscatter::numerics::set_worker_cap(cli.threads);
    match cli.command {
        Command::Forward {
            config,
            directions,
            directions_file,
            out,
        } => cmd_forward(&config, directions, directions_file.as_deref(), &out),
        Command::Ite {
            config,
            kmin,
            kmax,
            mmax,
            out,
        } => cmd_ite(&config, kmin, kmax, mmax, &out),
        Command::Kbound {
            radius,
            dim,
            nstar,
            out,
        } => cmd_kbound(radius, dim, nstar, out.as_deref()),
        Command::Invert { task, data, out } => cmd_invert(&task, &data, &out),
        Command::Validate { suite } => cmd_validate(suite),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
