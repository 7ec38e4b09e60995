//! Subcommand implementations. Each takes parsed arguments plus the resolved
//! configuration and writes its report to `out`.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use nlkg_core::analysis::{assemble, evaluate_row, figure_specs, Axis, SweepSpec, SweepTable};
use nlkg_core::{omega_from_wavenumber, DispersionQuery, Method, Potential};

use crate::config::CliConfig;
use crate::csv::{format_float, CsvTable};
use crate::svg::{self, PanelKind};
use crate::validate;
use crate::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "nlkg",
    version,
    about = "Dispersion relations of nonlinear Klein-Gordon traveling waves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate Ω (and optionally ω) at one amplitude.
    Dispersion(DispersionArgs),
    /// Evaluate several methods over a grid and write a CSV.
    Sweep(SweepArgs),
    /// Write the ratio and error panels of a comparison figure as CSV and SVG.
    Figure(FigureArgs),
    /// Run the cross-oracle and regression suite.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PotentialKind {
    Duffing,
    SineGordon,
    PureQuartic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodKind {
    Exact,
    Lde,
    Lim,
}

#[derive(Debug, Args)]
pub struct DispersionArgs {
    #[arg(long, value_enum)]
    pub potential: PotentialKind,
    /// Coupling μ; required for duffing and pure-quartic.
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub amplitude: f64,
    #[arg(long, value_enum)]
    pub method: MethodKind,
    /// LDE summation limit N or Lim order (1 or 2).
    #[arg(long)]
    pub order: Option<usize>,
    /// Also print ω = √(Ω² + k²).
    #[arg(long, allow_negative_numbers = true)]
    pub wavenumber: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Significant digits, 6..=17.
    #[arg(long)]
    pub precision: Option<usize>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, value_enum)]
    pub potential: PotentialKind,
    /// Coupling μ for an amplitude sweep (default 1).
    #[arg(long, allow_negative_numbers = true)]
    pub mu: Option<f64>,
    #[arg(long, requires = "a_max", conflicts_with_all = ["mua2_min", "mua2_max"])]
    pub a_min: Option<f64>,
    #[arg(long, requires = "a_min")]
    pub a_max: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "mua2_max")]
    pub mua2_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true, requires = "mua2_min")]
    pub mua2_max: Option<f64>,
    /// Log-spaced μA² grid.
    #[arg(long)]
    pub log: bool,
    #[arg(long)]
    pub points: Option<usize>,
    /// Comma-separated method labels, e.g. `lde2,lde3,lim2`. The exact
    /// column is always present.
    #[arg(long, value_delimiter = ',', required = true)]
    pub methods: Vec<String>,
    /// Output CSV path; defaults to `sweep.csv` in the configured directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub precision: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FigureArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=3))]
    pub id: u8,
    /// Output directory; defaults to the configured directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub points: Option<usize>,
    #[arg(long)]
    pub precision: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    /// Quadrature tolerance of the exact oracle.
    #[arg(long)]
    pub tol: Option<f64>,
    /// Print every check, not only failures.
    #[arg(long)]
    pub verbose: bool,
}

pub fn run(cli: Cli, cfg: &CliConfig, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Dispersion(a) => cmd_dispersion(&a, cfg, out),
        Command::Sweep(a) => cmd_sweep(&a, cfg, out).map(|_| ()),
        Command::Figure(a) => cmd_figure(&a, cfg, out).map(|_| ()),
        Command::Validate(a) => cmd_validate(&a, cfg, out),
    }
}

fn write_out(out: &mut dyn Write, line: std::fmt::Arguments<'_>) -> Result<(), CliError> {
    writeln!(out, "{line}").map_err(|e| CliError::io(Path::new("<stdout>"), e))
}

fn precision(flag: Option<usize>, cfg: &CliConfig) -> Result<usize, CliError> {
    let p = flag.unwrap_or(cfg.csv_precision);
    if !(6..=17).contains(&p) {
        return Err(CliError::Usage(format!(
            "--precision must be in 6..=17, got {p}"
        )));
    }
    Ok(p)
}

fn potential(kind: PotentialKind, mu: Option<f64>) -> Result<Potential, CliError> {
    let need_mu =
        || mu.ok_or_else(|| CliError::Usage("--mu is required for this potential".into()));
    Ok(match kind {
        PotentialKind::Duffing => Potential::duffing(need_mu()?)?,
        PotentialKind::SineGordon => Potential::sine_gordon(),
        PotentialKind::PureQuartic => Potential::pure_quartic(need_mu()?)?,
    })
}

fn method(kind: MethodKind, order: Option<usize>) -> Result<Method, CliError> {
    let need =
        || order.ok_or_else(|| CliError::Usage("--order is required for lde and lim".into()));
    let m = match kind {
        MethodKind::Exact => Method::Exact,
        MethodKind::Lde => Method::Lde(need()?),
        MethodKind::Lim => {
            let n = need()?;
            Method::Lim(
                u8::try_from(n).map_err(|_| CliError::Usage("Lim order must be 1 or 2".into()))?,
            )
        }
    };
    m.validate()?;
    Ok(m)
}

pub fn cmd_dispersion(
    args: &DispersionArgs,
    cfg: &CliConfig,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let digits = precision(args.precision, cfg)?;
    let p = potential(args.potential, args.mu)?;
    let m = method(args.method, args.order)?;
    let tol = args.tol.unwrap_or(cfg.default_tol);
    let omega_cap = DispersionQuery::new(p, args.amplitude, m, tol)?
        .evaluate()?
        .omega_cap;
    match args.wavenumber {
        None => write_out(out, format_args!("{}", format_float(omega_cap, digits))),
        Some(k) => {
            let w = omega_from_wavenumber(omega_cap, k)?;
            write_out(
                out,
                format_args!("Omega = {}", format_float(omega_cap, digits)),
            )?;
            write_out(out, format_args!("omega = {}", format_float(w, digits)))
        }
    }
}

/// Parses a comma list of method labels, dropping `exact` (always emitted).
fn parse_methods(labels: &[String]) -> Result<Vec<Method>, CliError> {
    let mut methods = Vec::new();
    for label in labels.iter().filter(|l| !l.trim().is_empty()) {
        let m: Method = label.parse()?;
        if m != Method::Exact && !methods.contains(&m) {
            methods.push(m);
        }
    }
    Ok(methods)
}

pub fn sweep_spec(args: &SweepArgs, cfg: &CliConfig) -> Result<SweepSpec, CliError> {
    let points = args.points.unwrap_or(cfg.grid_points);
    let axis = match (args.a_min, args.a_max, args.mua2_min, args.mua2_max) {
        (Some(min), Some(max), None, None) => {
            if args.log {
                return Err(CliError::Usage(
                    "--log applies to the mu*A^2 axis only".into(),
                ));
            }
            Axis::Amplitude { min, max, points }
        }
        (None, None, Some(min), Some(max)) => {
            if args.potential != PotentialKind::Duffing {
                return Err(CliError::Usage(
                    "--mua2-min/--mua2-max require --potential duffing".into(),
                ));
            }
            Axis::MuA2 {
                min,
                max,
                points,
                log_scale: args.log,
            }
        }
        _ => {
            return Err(CliError::Usage(
                "give either --a-min/--a-max or --mua2-min/--mua2-max".into(),
            ))
        }
    };
    let mu = match args.potential {
        PotentialKind::SineGordon => None,
        _ => Some(args.mu.unwrap_or(1.0)),
    };
    let spec = SweepSpec {
        potential: potential(args.potential, mu)?,
        axis,
        methods: parse_methods(&args.methods)?,
        tol: args.tol.unwrap_or(cfg.default_tol),
    };
    spec.validate()?;
    Ok(spec)
}

/// Evaluates grid rows in parallel; rows come back in grid order.
pub fn run_sweep_parallel(spec: &SweepSpec) -> Result<SweepTable, CliError> {
    let grid = spec.grid()?;
    let rows = grid.par_iter().map(|&x| evaluate_row(spec, x)).collect();
    Ok(assemble(spec, rows))
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

pub fn cmd_sweep(
    args: &SweepArgs,
    cfg: &CliConfig,
    out: &mut dyn Write,
) -> Result<PathBuf, CliError> {
    let digits = precision(args.precision, cfg)?;
    let spec = sweep_spec(args, cfg)?;
    let table = run_sweep_parallel(&spec)?;
    let path = args
        .out
        .clone()
        .unwrap_or_else(|| cfg.output_dir.join("sweep.csv"));
    write_file(&path, &CsvTable::from_sweep(&spec, &table).to_csv(digits))?;
    write_out(out, format_args!("{}", path.display()))?;
    Ok(path)
}

fn describe(spec: &SweepSpec) -> String {
    let methods: Vec<String> = spec.methods.iter().map(|m| m.to_string()).collect();
    let (label, min, max, points, scale) = match spec.axis {
        Axis::Amplitude { min, max, points } => ("A", min, max, points, "linear"),
        Axis::MuA2 {
            min,
            max,
            points,
            log_scale,
        } => (
            "muA2",
            min,
            max,
            points,
            if log_scale { "log" } else { "linear" },
        ),
    };
    format!(
        "{}: {label} in [{min}, {max}], {points} points, {scale} spacing; methods {}; tol {:e}",
        spec.potential.name(),
        methods.join(", "),
        spec.tol
    )
}

pub fn cmd_figure(
    args: &FigureArgs,
    cfg: &CliConfig,
    out: &mut dyn Write,
) -> Result<Vec<PathBuf>, CliError> {
    let digits = precision(args.precision, cfg)?;
    let dir = args.out.clone().unwrap_or_else(|| cfg.output_dir.clone());
    if !dir.is_dir() {
        return Err(CliError::Usage(format!(
            "output directory {} does not exist",
            dir.display()
        )));
    }
    let points = args.points.unwrap_or(cfg.grid_points);
    let (left, right) = figure_specs(args.id, points, cfg.default_tol)?;
    let id = args.id;

    // Compute both panels before touching the filesystem.
    let panels = [
        (PanelKind::Ratio, "ratio", "ratio to exact", &left),
        (PanelKind::Delta, "delta", "relative error", &right),
    ];
    let mut rendered = Vec::new();
    for (kind, tag, what, spec) in panels {
        let table = run_sweep_parallel(spec)?;
        let csv = CsvTable::from_sweep(spec, &table).to_csv(digits);
        let title = format!("Figure {id}: {what}");
        let svg = svg::render(&table, kind, &title, &describe(spec));
        rendered.push((format!("fig{id}_{tag}.csv"), csv));
        rendered.push((format!("fig{id}_{tag}.svg"), svg));
    }

    let mut paths = Vec::new();
    for (name, contents) in rendered {
        let path = dir.join(name);
        write_file(&path, &contents)?;
        write_out(out, format_args!("{}", path.display()))?;
        paths.push(path);
    }
    Ok(paths)
}

pub fn cmd_validate(
    args: &ValidateArgs,
    cfg: &CliConfig,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let tol = args.tol.unwrap_or(cfg.default_tol);
    if !(tol > 0.0) {
        return Err(CliError::Usage("--tol must be > 0".into()));
    }
    let start = Instant::now();
    let groups = validate::run_all(tol);
    let mut all = true;
    for g in &groups {
        let pass = g.passed();
        all &= pass;
        let failed = g.checks.iter().filter(|c| !c.passed).count();
        write_out(
            out,
            format_args!(
                "{} {} ({}/{} checks)",
                if pass { "PASS" } else { "FAIL" },
                g.name,
                g.checks.len() - failed,
                g.checks.len()
            ),
        )?;
        for c in g.checks.iter().filter(|c| args.verbose || !c.passed) {
            let mark = if c.passed { "ok" } else { "FAILED" };
            write_out(out, format_args!("    {mark} {}: {}", c.name, c.detail))?;
        }
    }
    write_out(
        out,
        format_args!("elapsed {:.2} s", start.elapsed().as_secs_f64()),
    )?;
    if all {
        Ok(())
    } else {
        Err(CliError::ValidationFailed)
    }
}
