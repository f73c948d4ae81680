//! Command-line front end for the `etabridge` toolkit.
//!
//! Every subcommand writes one JSON document to stdout (CSV for
//! `scan-lame`). Exit status: 0 when every check passes, 1 when a
//! verification fails, 2 on usage or configuration errors.

mod numeric_suite;
mod output;
pub mod schema;

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use etabridge::cosets::SubgroupId;
use etabridge::modforms::FormId;
use etabridge::q8lattice::Style;
use etabridge::C64;

pub use numeric_suite::{numeric_suite, NumericCheck};
pub use output::{cosets_json, decompose_json, e8_json, exact_suite_json, scan_csv, series_json};

/// Environment variable overriding the default `--order`.
pub const ORDER_ENV: &str = "ETABRIDGE_ORDER";
pub const DEFAULT_ORDER: i64 = 72;

#[derive(Debug, Parser)]
#[command(name = "etabridge", version, about = "Exact and numeric checks around the Dedekind eta function")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Args)]
pub struct RunConfig {
    /// Truncation order in q-powers.
    #[arg(long, global = true, env = ORDER_ENV, default_value_t = DEFAULT_ORDER)]
    pub order: i64,
    /// Tolerance for numeric residuals without a pinned bound.
    #[arg(long = "tol", global = true, default_value_t = 1e-8)]
    pub tol_numeric: f64,
    /// Half-width of the lattice box for `decompose`.
    #[arg(long = "box", global = true, default_value_t = 40)]
    pub box_size: i64,
    /// Lowest Im tau for sampled test points.
    #[arg(long, global = true, default_value_t = 0.5)]
    pub im_floor: f64,
    /// Seed for sampled test points.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self { order: DEFAULT_ORDER, tol_numeric: 1e-8, box_size: 40, im_floor: 0.5, seed: 0 }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.order <= 0 {
            return Err(format!("--order must be positive, got {}", self.order));
        }
        if !(self.tol_numeric > 0.0) {
            return Err(format!("--tol must be positive, got {}", self.tol_numeric));
        }
        if self.box_size <= 0 {
            return Err(format!("--box must be positive, got {}", self.box_size));
        }
        if !(self.im_floor > 0.0) {
            return Err(format!("--im-floor must be positive, got {}", self.im_floor));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Exact,
    Numeric,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the q-expansion of a form as exponent/coefficient pairs.
    Series {
        /// e.g. eta, eta^8, e4, delta, j, u, t, theta3^8, theta-e8
        form: FormId,
    },
    /// Run the exact identity suite or the numeric residual suite.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
    /// Q8 decomposition of the hexagonal lattice.
    Decompose {
        #[arg(long, default_value = "I")]
        style: Style,
    },
    /// Coset data and Millington permutations of a subgroup.
    Cosets {
        /// gamma-prime, gamma2, gamma-c or gamma-ns-plus3
        #[arg(long)]
        group: SubgroupId,
    },
    /// Shell counts of the E8 lattice.
    E8 {
        #[arg(long = "max-m")]
        max_m: i64,
    },
    /// Monodromy traces of the eta^8 equation over a grid of b values (CSV).
    ScanLame {
        /// `re_min:re_max:im_min:im_max:n`, an n-by-n grid.
        #[arg(long, default_value = "-1:1:-1:1:5", allow_hyphen_values = true)]
        grid: GridSpec,
        /// Basepoint as `re,im`.
        #[arg(long, default_value = "0,2", value_parser = parse_complex, allow_hyphen_values = true)]
        basepoint: C64,
        #[arg(long, default_value_t = etabridge::ode::DEFAULT_MAX_STEP)]
        max_step: f64,
        #[arg(long, default_value_t = etabridge::ode::DEFAULT_PATH_FLOOR)]
        path_floor: f64,
        /// Half-width of the band around ±2 flagged as parabolic.
        #[arg(long, default_value_t = etabridge::ode::DEFAULT_PARABOLIC_BAND)]
        band: f64,
        /// Pose the equation on the lower half-plane.
        #[arg(long)]
        lower_half_plane: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub re: (f64, f64),
    pub im: (f64, f64),
    pub n: usize,
}

impl std::str::FromStr for GridSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || format!("grid {s:?} is not re_min:re_max:im_min:im_max:n");
        if parts.len() != 5 {
            return Err(bad());
        }
        let f = |i: usize| parts[i].trim().parse::<f64>().map_err(|_| bad());
        let n: usize = parts[4].trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err("grid size must be at least 1".into());
        }
        Ok(Self { re: (f(0)?, f(1)?), im: (f(2)?, f(3)?), n })
    }
}

fn parse_complex(s: &str) -> Result<C64, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("{s:?} is not re,im"))?;
    let p = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok(C64::new(p(a)?, p(b)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Failed(String),
    #[error("write failed: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) | CliError::Io(_) => 1,
        }
    }
}

/// Executes a parsed command, writing its document to `out`.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let cfg = cli.config;
    cfg.validate().map_err(CliError::Usage)?;
    let (text, outcome) = match &cli.command {
        Command::Series { form } => (series_json(*form, cfg.order)?, Outcome::Pass),
        Command::Verify { suite: Suite::Exact } => exact_suite_json(cfg.order)?,
        Command::Verify { suite: Suite::Numeric } => {
            let checks = numeric_suite(&cfg);
            let ok = checks.iter().all(|c| c.passed);
            (output::numeric_suite_json(&cfg, &checks)?, Outcome::from_bool(ok))
        }
        Command::Decompose { style } => decompose_json(cfg.box_size, *style)?,
        Command::Cosets { group } => (cosets_json(*group)?, Outcome::Pass),
        Command::E8 { max_m } => (e8_json(*max_m)?, Outcome::Pass),
        Command::ScanLame { grid, basepoint, max_step, path_floor, band, lower_half_plane } => {
            let scan = etabridge::ode::ScanConfig {
                basepoint: *basepoint,
                options: etabridge::ode::MonodromyOptions { max_step: *max_step, path_floor: *path_floor },
                drift_tol: etabridge::ode::DEFAULT_DRIFT_TOL,
                parabolic_band: *band,
                half_plane: if *lower_half_plane { etabridge::ode::HalfPlane::Lower } else { etabridge::ode::HalfPlane::Upper },
            };
            scan_csv(grid, &scan)?
        }
    };
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(outcome)
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with_args<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    match run(&cli, out) {
        Ok(o) => o.exit_code(),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}
