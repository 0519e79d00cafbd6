//! Command-line front end.
//!
//! Exit codes: 0 all selected checks passed, 1 a check failed, 2 usage or
//! configuration error, 3 file error.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{Check, RunConfig};
use crate::error::{Error, Result};
use crate::field_io::{read_field, read_result, write_field, write_result};
use crate::grid::{Grid3D, WindowSpec};
use crate::report::{run_inequalities, run_properties, Report};
use crate::signal::generate_signal;
use crate::transform::{oclct_forward, oclct_inverse, oft_forward, woclct_forward, woclct_inverse};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "woclct",
    version,
    about = "Windowed octonion linear canonical transforms"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Run configuration (JSON). Built-in defaults when absent.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Seed for every random signal.
    #[arg(long)]
    seed: Option<u64>,
    /// Signal and window-shift grids as `n1,n2,n3,spacing`.
    #[arg(long, value_parser = parse_grid)]
    grid: Option<([usize; 3], f64)>,
}

#[derive(Args, Debug, Clone)]
struct CheckArgs {
    #[command(flatten)]
    common: Common,
    /// Check to run; repeatable. Defaults to the config's list, then to all.
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Role {
    Signal,
    Window,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ForwardKind {
    Oft,
    Oclct,
    Woclct,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum InverseKind {
    Oclct,
    Woclct,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample the configured signal or window and write a field file.
    GenSignal {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "signal")]
        role: Role,
        #[arg(long)]
        out: PathBuf,
    },
    /// Forward transform of a field file or of the configured signal.
    Transform {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: ForwardKind,
        /// Input field; the configured signal when absent.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Inverse transform back onto the configured signal grid.
    Inverse {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: InverseKind,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Structural property checks.
    Verify(CheckArgs),
    /// Uncertainty inequality checks.
    Inequalities {
        #[command(flatten)]
        args: CheckArgs,
        /// Pitt exponents as `start:stop:step`, inclusive.
        #[arg(long, value_parser = parse_sweep)]
        beta_sweep: Option<Sweep>,
    },
    /// Property and inequality checks in one report.
    Report {
        #[command(flatten)]
        args: CheckArgs,
        #[arg(long, value_parser = parse_sweep)]
        beta_sweep: Option<Sweep>,
    },
}

fn parse_grid(s: &str) -> std::result::Result<([usize; 3], f64), String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 4 {
        return Err("expected n1,n2,n3,spacing".into());
    }
    let mut n = [0usize; 3];
    for (slot, p) in n.iter_mut().zip(&parts) {
        *slot = p.parse().map_err(|_| format!("bad count '{p}'"))?;
        if *slot == 0 {
            return Err("counts must be positive".into());
        }
    }
    let h: f64 = parts[3]
        .parse()
        .map_err(|_| format!("bad spacing '{}'", parts[3]))?;
    if !(h > 0.0 && h.is_finite()) {
        return Err("spacing must be positive".into());
    }
    Ok((n, h))
}

/// Inclusive `start:stop:step` list.
#[derive(Clone, Debug, PartialEq)]
struct Sweep(Vec<f64>);

fn parse_sweep(s: &str) -> std::result::Result<Sweep, String> {
    let parts: Vec<f64> = s
        .split(':')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| format!("bad number '{p}'"))
        })
        .collect::<std::result::Result<_, _>>()?;
    let [start, stop, step] = parts[..] else {
        return Err("expected start:stop:step".into());
    };
    if step.is_nan() || step <= 0.0 || stop < start || !start.is_finite() || !stop.is_finite() {
        return Err("need start <= stop and step > 0".into());
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize;
    Ok(Sweep((0..=n).map(|k| start + k as f64 * step).collect()))
}

fn load_config(common: &Common) -> Result<RunConfig> {
    let mut c = match &common.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = common.seed {
        c.seed = Some(seed);
    }
    c.resolve_seed();
    if let Some((n, h)) = common.grid {
        c.override_grid(n, h)?;
    }
    Ok(c)
}

fn apply_checks(c: &mut RunConfig, names: &[String]) -> Result<()> {
    if !names.is_empty() {
        c.checks = names.iter().map(|n| n.parse()).collect::<Result<_>>()?;
    }
    Ok(())
}

fn emit(report: &Report, out: Option<&Path>) -> Result<()> {
    let text = report.to_json();
    match out {
        Some(p) => crate::field_io::write_bytes(p, (text + "\n").as_bytes())?,
        None => {
            let mut stdout = std::io::stdout().lock();
            writeln!(stdout, "{text}")?;
        }
    }
    Ok(())
}

fn run_checks(
    args: &CheckArgs,
    sweep: &Option<Sweep>,
    all: &[Check],
    command: &str,
) -> Result<bool> {
    let mut c = load_config(&args.common)?;
    apply_checks(&mut c, &args.checks)?;
    if let Some(b) = sweep {
        c.betas = b.0.clone();
    }
    c.validate()?;
    let checks: Vec<Check> = c
        .checks_or(all)
        .into_iter()
        .filter(|k| all.contains(k))
        .collect();
    if checks.is_empty() {
        return Err(Error::BadConfig(format!("no {command} checks selected")));
    }
    let mut results = run_properties(&c, &checks)?;
    results.extend(run_inequalities(&c, &checks)?);
    let report = Report::new(command, &c, results, Vec::new());
    emit(&report, args.out.as_deref())?;
    Ok(report.passed)
}

fn display(p: &Path) -> String {
    p.display().to_string()
}

fn execute(command: Command) -> Result<bool> {
    match command {
        Command::GenSignal { common, role, out } => {
            let c = load_config(&common)?;
            let f = match role {
                Role::Signal => generate_signal(&c.signal, &c.grids.t)?,
                Role::Window => generate_signal(&c.window, &c.window_grid()?)?,
            };
            write_field(&out, &f)?;
            emit(
                &Report::new("gen-signal", &c, Vec::new(), vec![display(&out)]),
                None,
            )?;
            Ok(true)
        }
        Command::Transform {
            common,
            kind,
            input,
            out,
        } => {
            let c = load_config(&common)?;
            let p = c.prepare()?;
            let f = match &input {
                Some(path) => read_field(path)?,
                None => p.f.clone(),
            };
            match kind {
                ForwardKind::Oft => write_field(&out, &oft_forward(&f, &c.grids.omega))?,
                ForwardKind::Oclct => {
                    write_field(&out, &oclct_forward(&f, &c.params, &c.grids.omega)?)?
                }
                ForwardKind::Woclct => {
                    let w = if input.is_some() {
                        let grid = crate::config::window_grid_for(&f.grid, &c.grids.mu)?;
                        let w = WindowSpec::new(generate_signal(&c.window, &grid)?)?;
                        if c.normalize {
                            w.normalized()
                        } else {
                            w
                        }
                    } else {
                        p.w.clone()
                    };
                    write_result(
                        &out,
                        &woclct_forward(&f, &w, &c.params, &c.grids.omega, &c.grids.mu)?,
                    )?
                }
            }
            emit(
                &Report::new("transform", &c, Vec::new(), vec![display(&out)]),
                None,
            )?;
            Ok(true)
        }
        Command::Inverse {
            common,
            kind,
            input,
            out,
        } => {
            let c = load_config(&common)?;
            let t: Grid3D = c.grids.t;
            let f = match kind {
                InverseKind::Oclct => oclct_inverse(&read_field(&input)?, &c.params, &t)?,
                InverseKind::Woclct => {
                    let g = read_result(&input)?;
                    let grid = crate::config::window_grid_for(&t, &g.mu_grid)?;
                    let w = WindowSpec::new(generate_signal(&c.window, &grid)?)?;
                    let w = if c.normalize { w.normalized() } else { w };
                    woclct_inverse(&g, &w, &c.params, &t)?
                }
            };
            write_field(&out, &f)?;
            emit(
                &Report::new("inverse", &c, Vec::new(), vec![display(&out)]),
                None,
            )?;
            Ok(true)
        }
        Command::Verify(args) => run_checks(&args, &None, &Check::PROPERTIES, "verify"),
        Command::Inequalities { args, beta_sweep } => {
            run_checks(&args, &beta_sweep, &Check::INEQUALITIES, "inequalities")
        }
        Command::Report { args, beta_sweep } => {
            let all: Vec<Check> = Check::PROPERTIES
                .iter()
                .chain(&Check::INEQUALITIES)
                .copied()
                .collect();
            run_checks(&args, &beta_sweep, &all, "report")
        }
    }
}

/// Parses `argv` (program name first), runs it and returns the exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    match execute(cli.command) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_io() {
                EXIT_IO
            } else {
                EXIT_USAGE
            }
        }
    }
}
