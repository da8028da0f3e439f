//! Command-line sweeps over the Mach number.
//!
//! A sweep evaluates the requested methods on a `(y/H, M)` grid and writes
//! one row per grid point as CSV or JSON. Exit codes: 0 success, 2 usage
//! error, 3 I/O error, 4 at least one cell failed (output is still written).

mod config;
mod output;
mod sweep;

use std::ffi::OsString;
use std::io::{self, Write};
use std::path::PathBuf;

use thiserror::Error;

use crate::dispersion::{Mode, Stratification};
use crate::field::{FieldOptions, Method};
use crate::quadrature::QuadratureConfig;

pub use config::parse_config;
pub use output::{format_number, write_output, write_rows};
pub use sweep::{run_sweep, Cell, SweepRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_NON_CONVERGENCE: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Inclusive, evenly spaced Mach grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MachRange {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl MachRange {
    pub fn new(min: f64, max: f64, points: usize) -> Result<Self, String> {
        if !(min.is_finite() && min > 0.0) {
            return Err(format!("M min must be positive, got {min}"));
        }
        if !(max.is_finite() && max > min) {
            return Err(format!("M max must exceed M min, got {min}:{max}"));
        }
        if points < 2 {
            return Err(format!("need at least 2 Mach points, got {points}"));
        }
        Ok(Self { min, max, points })
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| self.min + (self.max - self.min) * i as f64 / last)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputSpec {
    pub format: Format,
    /// `None` writes to standard output.
    pub path: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub strat: Stratification,
    pub mode: Mode,
    pub z: f64,
    pub z0: f64,
    /// Traverse offsets in units of the depth.
    pub y_over_h: Vec<f64>,
    pub mach: MachRange,
    /// Requested methods, deduplicated, in canonical column order.
    pub methods: Vec<Method>,
    pub output: OutputSpec,
    pub quad_cfg: QuadratureConfig,
    pub options: FieldOptions,
}

impl SweepSpec {
    /// Offsets `y` in length units.
    pub fn offsets(&self) -> Vec<f64> {
        let h = self.strat.depth();
        self.y_over_h.iter().map(|r| r * h).collect()
    }

    pub fn requests(&self, method: Method) -> bool {
        self.methods.contains(&method)
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    /// `--help` / `--version`: not an error, printed to standard output.
    #[error("{0}")]
    Info(String),
    #[error("{0}")]
    Usage(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => EXIT_OK,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Io { .. } => EXIT_IO,
        }
    }
}

/// Entry point of the `igwave` binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let spec = match parse_config(args, None) {
        Ok(spec) => spec,
        Err(CliError::Info(text)) => {
            print!("{text}");
            return EXIT_OK;
        }
        Err(e) => {
            eprintln!("igwave: {e}");
            return e.exit_code();
        }
    };
    let rows = run_sweep(&spec);
    if let Err(e) = write_output(&rows, &spec) {
        eprintln!("igwave: {e}");
        return e.exit_code();
    }
    let failures = failed_cells(&rows);
    if failures.is_empty() {
        return EXIT_OK;
    }
    let mut stderr = io::stderr().lock();
    for f in &failures {
        let _ = writeln!(stderr, "igwave: cell failed: {f}");
    }
    EXIT_NON_CONVERGENCE
}

/// One line per failed cell; a non-empty result maps to exit code 4.
pub fn failed_cells(rows: &[SweepRow]) -> Vec<String> {
    rows.iter()
        .flat_map(|row| {
            row.cells
                .iter()
                .filter_map(move |(method, cell)| match cell {
                    Cell::Failed(msg) => Some(format!(
                        "y/H = {}, M = {}, {method}: {msg}",
                        format_number(row.y_over_h),
                        format_number(row.mach)
                    )),
                    _ => None,
                })
        })
        .collect()
}
