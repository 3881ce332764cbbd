use std::path::PathBuf;
use std::process::ExitCode;

use catoptrix_core::ComplexPoint;
use clap::{Args, Parser, Subcommand};

mod commands;
mod output;
mod svg;

use output::Record;

#[derive(Parser)]
#[command(name = "catoptrix", version, about = "Reflection points on a circular mirror")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reflection point and s-metric for two points inside the unit disk
    Interior(InteriorArgs),
    /// Reflection of a plane wave towards an observer outside the disk
    Infinity(InfinityArgs),
    /// Sample the directrix envelope for a focus on the real axis
    Envelope(EnvelopeArgs),
    /// Directrix, mirror point and tangency point for one circle point
    Directrix(DirectrixArgs),
    /// Brute-force reference computations
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Args)]
pub struct InteriorArgs {
    /// First point as RE,IM
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub z1: ComplexPoint,
    /// Second point as RE,IM
    #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
    pub z2: ComplexPoint,
    /// Both points lie outside the disk; reflect off the outer surface
    #[arg(long)]
    pub exterior: bool,
    /// Write a figure to this path
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Emit JSON (the default and only payload format)
    #[arg(long)]
    pub json: bool,
}

#[derive(Args)]
pub struct InfinityArgs {
    /// Observer distance from the centre, > 1
    #[arg(long)]
    pub r: f64,
    /// Observer polar angle
    #[arg(long, allow_hyphen_values = true)]
    pub theta: f64,
    /// Read angles in degrees
    #[arg(long)]
    pub degrees: bool,
    /// Check that all roots lie on the circle and report the real quartic invariants
    #[arg(long)]
    pub verify: bool,
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Args)]
pub struct EnvelopeArgs {
    /// Focus on the real axis, > 1
    #[arg(long)]
    pub a: f64,
    #[arg(long, default_value_t = 720)]
    pub samples: usize,
    /// Write samples as CSV; `-` sends CSV to stdout instead of JSON
    #[arg(long)]
    pub csv: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Number of evenly spaced directrices to draw in the figure
    #[arg(long, default_value_t = 0)]
    pub directrices: usize,
}

#[derive(Args)]
pub struct DirectrixArgs {
    #[arg(long)]
    pub a: f64,
    /// Tangency angle; the circle point is e^{i·phi}
    #[arg(long, allow_hyphen_values = true)]
    pub phi: f64,
    #[arg(long)]
    pub degrees: bool,
}

#[derive(Subcommand)]
pub enum OracleCommand {
    /// Grid maximization of the s-metric ratio
    Smetric {
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z1: ComplexPoint,
        #[arg(long, value_parser = parse_point, allow_hyphen_values = true)]
        z2: ComplexPoint,
        #[arg(long, default_value_t = 100_000)]
        grid: usize,
        #[arg(long, default_value_t = 80)]
        refine_iters: usize,
    },
    /// Grid minimization of the plane-wave path functional
    Infinity {
        #[arg(long)]
        r: f64,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long)]
        degrees: bool,
        #[arg(long, default_value_t = 100_000)]
        grid: usize,
        #[arg(long, default_value_t = 80)]
        refine_iters: usize,
    },
    /// Resultant discriminant, compared with the closed-form invariants
    Discriminant {
        /// Coefficients A,B,C,D,E of A·x⁴ + … + E
        #[arg(long, value_parser = parse_coeffs, allow_hyphen_values = true, conflicts_with_all = ["r", "theta"])]
        coeffs: Option<[f64; 5]>,
        /// Use the plane-wave real quartic for this observer instead
        #[arg(long, requires = "theta")]
        r: Option<f64>,
        #[arg(long, allow_hyphen_values = true, requires = "r")]
        theta: Option<f64>,
        #[arg(long)]
        degrees: bool,
    },
}

fn parse_reals(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|t| {
            let v: f64 = t.trim().parse().map_err(|_| format!("not a number: {t:?}"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("not finite: {t:?}"))
            }
        })
        .collect()
}

fn parse_point(s: &str) -> Result<ComplexPoint, String> {
    match parse_reals(s)?.as_slice() {
        [re, im] => ComplexPoint::new(*re, *im).map_err(|e| e.to_string()),
        _ => Err(format!("expected RE,IM, got {s:?}")),
    }
}

fn parse_coeffs(s: &str) -> Result<[f64; 5], String> {
    parse_reals(s)?
        .try_into()
        .map_err(|_| format!("expected five comma-separated coefficients, got {s:?}"))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let record: Record = match cli.command {
        Command::Interior(a) => commands::interior(&a),
        Command::Infinity(a) => commands::infinity(&a),
        Command::Envelope(a) => commands::envelope(&a),
        Command::Directrix(a) => commands::directrix(&a),
        Command::Oracle(o) => commands::oracle(&o),
    };
    record.emit()
}
