// Flag grammar and the key=value config file.
//
// Config entries are turned into flag tokens placed *before* the command
// line, and clap's override-self rule lets later occurrences win, so the
// command line overrides the file.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::Parser;

use super::{CliError, Format, MachRange, OutputSpec, SweepSpec};
use crate::dispersion::{Mode, SourceGeometry, Stratification};
use crate::field::{AutoThresholds, FieldOptions, K0Argument, Method};
use crate::quadrature::QuadratureConfig;

const FIG1_Y_OVER_H: [f64; 3] = [1.0, 2.0, 3.0];
const DEFAULT_MACH: (f64, f64, usize) = (0.5, 3.0, 126);

#[derive(Debug, Parser)]
#[command(
    name = "igwave",
    version,
    about = "Steady internal-wave elevation on the traverse of a moving source",
    args_override_self = true,
    allow_negative_numbers = true
)]
struct Flags {
    /// Buoyancy frequency N [1/s]
    #[arg(long, value_name = "REAL")]
    n_freq: Option<f64>,
    /// Channel depth H
    #[arg(long, value_name = "REAL")]
    depth: Option<f64>,
    /// Vertical mode number n
    #[arg(long, value_name = "INT")]
    mode: Option<u32>,
    /// Observer depth (default −H/4)
    #[arg(long, value_name = "REAL")]
    z: Option<f64>,
    /// Source depth (default −H/4)
    #[arg(long, value_name = "REAL")]
    z0: Option<f64>,
    /// Traverse offsets y/H
    #[arg(long = "y-over-h", value_name = "LIST", value_delimiter = ',')]
    y_over_h: Option<Vec<f64>>,
    /// Mach grid as min:max:points
    #[arg(long, value_name = "MIN:MAX:POINTS", value_parser = parse_mach)]
    mach: Option<MachRange>,
    /// Comma-separated subset of exact,macdonald,airy,auto
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    methods: Option<Vec<Method>>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Output file (default: standard output)
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Relative tolerance of the exact integral
    #[arg(long, value_name = "REAL")]
    rel_tol: Option<f64>,
    /// Use the alternative K0 argument πyε²/H instead of yε²/(2b)
    #[arg(long)]
    compat_paper_k0_arg: bool,
    /// Three-panel comparison dataset: y/H = 1,2,3 and M = 0.5..3
    #[arg(long, conflicts_with_all = ["y_over_h", "mach"])]
    fig1: bool,
    /// key=value file with flag defaults
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Auto dispatch: Macdonald when |M − 1| ≤ this
    #[arg(long, value_name = "REAL")]
    auto_delta_mac: Option<f64>,
    /// Auto dispatch: Airy needs M ≥ this
    #[arg(long, value_name = "REAL")]
    auto_m_airy: Option<f64>,
    /// Auto dispatch: Airy needs y/H ≥ this
    #[arg(long, value_name = "REAL")]
    auto_y_airy: Option<f64>,
}

const SWITCHES: [&str; 2] = ["compat-paper-k0-arg", "fig1"];

fn parse_mach(s: &str) -> Result<MachRange, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [min, max, points] = parts.as_slice() else {
        return Err(format!("expected MIN:MAX:POINTS, got `{s}`"));
    };
    let min: f64 = min.trim().parse().map_err(|e| format!("M min: {e}"))?;
    let max: f64 = max.trim().parse().map_err(|e| format!("M max: {e}"))?;
    let points: usize = points.trim().parse().map_err(|e| format!("points: {e}"))?;
    MachRange::new(min, max, points)
}

/// Turns `key = value` lines into flag tokens. `#` starts a comment.
fn config_tokens(text: &str, path: &Path) -> Result<Vec<OsString>, CliError> {
    let mut tokens = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |why: &str| CliError::Usage(format!("{}:{}: {why}", path.display(), lineno + 1));
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad("expected key = value"))?;
        let key = key.trim().trim_start_matches("--");
        let value = value.trim();
        if key == "config" {
            return Err(bad("config files cannot include other config files"));
        }
        if SWITCHES.contains(&key) {
            match value {
                "true" => tokens.push(format!("--{key}").into()),
                "false" => {}
                _ => return Err(bad("switch values must be true or false")),
            }
        } else {
            tokens.push(format!("--{key}").into());
            tokens.push(value.into());
        }
    }
    Ok(tokens)
}

fn clap_error(e: clap::Error) -> CliError {
    match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Info(e.to_string()),
        _ => CliError::Usage(e.to_string().trim_end().to_owned()),
    }
}

/// Resolves command-line tokens (program name first) and an optional config
/// file into a complete sweep specification.
///
/// The config file is `config_file` if given, otherwise the `--config` flag.
pub fn parse_config<I, T>(args: I, config_file: Option<&Path>) -> Result<SweepSpec, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = Flags::try_parse_from(&args).map_err(clap_error)?;
    let config_path = config_file.map(Path::to_path_buf).or(cli.config.clone());
    let flags = match config_path {
        None => cli,
        Some(path) => {
            let text = fs::read_to_string(&path).map_err(|source| CliError::Io {
                context: format!("reading config {}", path.display()),
                source,
            })?;
            let mut merged = Vec::with_capacity(args.len() + 8);
            merged.extend(args.first().cloned());
            merged.extend(config_tokens(&text, &path)?);
            merged.extend(args.iter().skip(1).cloned());
            Flags::try_parse_from(merged).map_err(clap_error)?
        }
    };
    resolve(flags)
}

fn resolve(f: Flags) -> Result<SweepSpec, CliError> {
    let usage = |e: &dyn std::fmt::Display| CliError::Usage(e.to_string());

    let n_freq = f.n_freq.unwrap_or(1.0);
    let depth = f.depth.unwrap_or(std::f64::consts::PI);
    let strat = Stratification::new(n_freq, depth).map_err(|e| usage(&e))?;
    let mode = Mode::new(f.mode.unwrap_or(1)).map_err(|e| usage(&e))?;
    let z = f.z.unwrap_or(-0.25 * depth);
    let z0 = f.z0.unwrap_or(-0.25 * depth);

    let y_over_h = if f.fig1 {
        FIG1_Y_OVER_H.to_vec()
    } else {
        f.y_over_h.unwrap_or_else(|| FIG1_Y_OVER_H.to_vec())
    };
    if y_over_h.is_empty() {
        return Err(usage(&"--y-over-h needs at least one value"));
    }
    let mach = match f.mach {
        Some(m) if !f.fig1 => m,
        _ => MachRange::new(DEFAULT_MACH.0, DEFAULT_MACH.1, DEFAULT_MACH.2).expect("valid"),
    };
    // Validates depths and every offset once, up front.
    for &r in &y_over_h {
        if !(r.is_finite() && r > 0.0) {
            return Err(CliError::Usage(format!(
                "y/H values must be positive, got {r}"
            )));
        }
        SourceGeometry::new(&strat, 1.0, z0, z, r * depth).map_err(|e| usage(&e))?;
    }

    let mut methods = f.methods.unwrap_or_else(|| {
        if f.fig1 {
            vec![Method::Exact, Method::Macdonald, Method::Airy]
        } else {
            Method::ALL.to_vec()
        }
    });
    methods.sort();
    methods.dedup();

    let mut quad_cfg = QuadratureConfig::default();
    if let Some(tol) = f.rel_tol {
        quad_cfg = quad_cfg.with_rel_tol(tol);
    }
    quad_cfg.validate().map_err(|e| usage(&e))?;

    let defaults = AutoThresholds::default();
    let auto = AutoThresholds {
        delta_mac: f.auto_delta_mac.unwrap_or(defaults.delta_mac),
        m_airy: f.auto_m_airy.unwrap_or(defaults.m_airy),
        y_airy: f.auto_y_airy.unwrap_or(defaults.y_airy),
    };
    for (name, v) in [
        ("--auto-delta-mac", auto.delta_mac),
        ("--auto-m-airy", auto.m_airy),
        ("--auto-y-airy", auto.y_airy),
    ] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(CliError::Usage(format!(
                "{name} must be finite and non-negative"
            )));
        }
    }
    let options = FieldOptions {
        k0_argument: if f.compat_paper_k0_arg {
            K0Argument::Printed
        } else {
            K0Argument::Derived
        },
        auto,
    };

    Ok(SweepSpec {
        strat,
        mode,
        z,
        z0,
        y_over_h,
        mach,
        methods,
        output: OutputSpec {
            format: f.format.unwrap_or(Format::Csv),
            path: f.out,
        },
        quad_cfg,
        options,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn parse(args: &[&str]) -> Result<SweepSpec, CliError> {
        parse_config(std::iter::once("igwave").chain(args.iter().copied()), None)
    }

    #[test]
    fn defaults_are_filled() {
        let s = parse(&[]).unwrap();
        assert_eq!(s.strat.n_freq(), 1.0);
        assert_eq!(s.strat.depth(), PI);
        assert_eq!(s.mode, Mode::FIRST);
        assert_eq!((s.z, s.z0), (-PI / 4.0, -PI / 4.0));
        assert_eq!(s.methods, Method::ALL.to_vec());
        assert_eq!(s.mach, MachRange::new(0.5, 3.0, 126).unwrap());
        assert_eq!(s.output.format, Format::Csv);
        assert_eq!(s.options.k0_argument, K0Argument::Derived);
    }

    #[test]
    fn offsets_scale_with_depth() {
        let s = parse(&["--y-over-h", "1,2,3"]).unwrap();
        assert_eq!(s.offsets(), vec![PI, 2.0 * PI, 3.0 * PI]);
    }

    #[test]
    fn mach_grid_is_inclusive() {
        let s = parse(&["--mach", "0.5:3.0:126"]).unwrap();
        let m = s.mach.values();
        assert_eq!(m.len(), 126);
        assert_eq!((m[0], m[125]), (0.5, 3.0));
        assert_eq!(m[25], 1.0);
    }

    #[test]
    fn bad_input_is_usage_error() {
        for args in [
            &["--mach", "3.0:0.5:10"][..],
            &["--mach", "0.5:3.0:1"],
            &["--mach", "0.5:3.0"],
            &["--bogus"],
            &["--methods", "exact,nope"],
            &["--mode", "0"],
            &["--depth", "-1"],
            &["--z", "0.5"],
            &["--y-over-h", "0"],
            &["--rel-tol", "0"],
            &["--fig1", "--mach", "0.5:1:3"],
        ] {
            let err = parse(args).unwrap_err();
            assert_eq!(err.exit_code(), 2, "{args:?}: {err}");
        }
    }

    #[test]
    fn negative_depth_values_parse() {
        let s = parse(&["--z", "-1.0", "--z0", "-0.5"]).unwrap();
        assert_eq!((s.z, s.z0), (-1.0, -0.5));
    }

    #[test]
    fn methods_are_canonicalised() {
        let s = parse(&["--methods", "airy,exact,airy"]).unwrap();
        assert_eq!(s.methods, vec![Method::Exact, Method::Airy]);
    }

    #[test]
    fn fig1_shorthand() {
        let s = parse(&["--fig1"]).unwrap();
        assert_eq!(s.y_over_h, vec![1.0, 2.0, 3.0]);
        assert_eq!(
            s.methods,
            vec![Method::Exact, Method::Macdonald, Method::Airy]
        );
    }

    #[test]
    fn config_file_is_overridden_by_flags() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("sweep.cfg");
        fs::write(
            &path,
            "# sweep\nmode = 2\nmach = 0.5:1.5:3\ncompat-paper-k0-arg = true\nz = -1.0\n",
        )
        .unwrap();
        let s = parse(&["--config", path.to_str().unwrap(), "--mode", "3"]).unwrap();
        assert_eq!(s.mode.index(), 3);
        assert_eq!(s.mach.points, 3);
        assert_eq!(s.z, -1.0);
        assert_eq!(s.options.k0_argument, K0Argument::Printed);

        fs::write(&path, "unknown-key = 1\n").unwrap();
        assert_eq!(
            parse(&["--config", path.to_str().unwrap()])
                .unwrap_err()
                .exit_code(),
            2
        );
        let missing = dir.path().join("missing.cfg");
        assert_eq!(
            parse(&["--config", missing.to_str().unwrap()])
                .unwrap_err()
                .exit_code(),
            3
        );
    }

    #[test]
    fn help_is_not_an_error() {
        assert_eq!(parse(&["--help"]).unwrap_err().exit_code(), 0);
    }
}
