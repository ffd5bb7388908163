//! `willmore`: generate seed meshes, run flows, verify identities and
//! analyze curvature concentration.
//!
//! Exit codes: 0 success, 1 I/O, 2 usage, 3 domain failure (breakdown or a
//! missed tolerance).

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 3,
        }
    }
}

impl From<willmore_core::Error> for CliError {
    fn from(e: willmore_core::Error) -> Self {
        use willmore_core::Error as E;
        match e {
            E::Io { .. } | E::Parse { .. } => CliError::Io(e.to_string()),
            E::InvalidArgument { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "willmore",
    version,
    about = "Willmore and inverse Willmore flow of triangle meshes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Shape {
    Sphere,
    Torus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Willmore,
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    Vertices,
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Inversion,
    Scaling,
    GaussBonnet,
    Balance,
    MsRatio,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write an icosphere or torus as OFF.
    Generate {
        #[arg(long, value_enum)]
        shape: Shape,
        #[arg(long, value_parser = parse_point, default_value = "0,0,0", allow_hyphen_values = true)]
        center: [f64; 3],
        /// Sphere radius, or major radius of the torus.
        #[arg(long, value_parser = positive, allow_hyphen_values = true)]
        radius: f64,
        /// Minor radius of the torus.
        #[arg(long, value_parser = positive, allow_hyphen_values = true)]
        minor: Option<f64>,
        #[arg(long, default_value_t = 64)]
        nu: usize,
        #[arg(long, default_value_t = 32)]
        nv: usize,
        #[arg(long, default_value_t = 4)]
        subdiv: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Run a flow and write history.csv, final.off and run.json.
    Simulate {
        #[arg(long)]
        mesh: Option<PathBuf>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Check exact identities on a mesh.
    Verify {
        #[arg(long)]
        mesh: PathBuf,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "inversion,scaling,gauss-bonnet,balance,ms-ratio"
        )]
        suite: Vec<Suite>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Concentration profile and radius r(τ).
    Analyze {
        #[arg(long)]
        mesh: PathBuf,
        #[arg(long, value_parser = positive, allow_hyphen_values = true)]
        delta: f64,
        #[arg(long, value_enum, default_value = "vertices")]
        policy: Policy,
        #[arg(long, value_parser = positive, allow_hyphen_values = true)]
        spacing: Option<f64>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        Ok(v) => Err(format!("must be positive and finite, got {v}")),
        Err(e) => Err(e.to_string()),
    }
}

fn parse_point(s: &str) -> Result<[f64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected X,Y,Z, got {s:?}"));
    }
    let mut p = [0.0f64; 3];
    for (out, part) in p.iter_mut().zip(parts) {
        *out = part.trim().parse().map_err(|e| format!("{part:?}: {e}"))?;
        if !out.is_finite() {
            return Err(format!("{part:?} is not finite"));
        }
    }
    Ok(p)
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().ok().filter(|n| *n > 0).ok_or_else(|| {
        CliError::Usage(format!("THREADS must be a positive integer, got {raw:?}"))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn dispatch(cli: Cli) -> Result<(), CliError> {
    configure_threads()?;
    match cli.command {
        Command::Generate {
            shape,
            center,
            radius,
            minor,
            nu,
            nv,
            subdiv,
            output,
        } => commands::generate(shape, center, radius, minor, nu, nv, subdiv, &output),
        Command::Simulate {
            mesh,
            mode,
            config,
            out_dir,
        } => commands::simulate(mesh, mode, config, out_dir),
        Command::Verify { mesh, suite, json } => commands::verify(&mesh, &suite, json.as_deref()),
        Command::Analyze {
            mesh,
            delta,
            policy,
            spacing,
            json,
        } => commands::analyze(&mesh, delta, policy, spacing, json.as_deref()),
    }
}

fn main() -> ExitCode {
    match dispatch(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
