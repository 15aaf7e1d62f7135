//! The `ncap` command line: `solve`, `sweep`, `bounds`, `penalty`, `verify`.
//!
//! Exit codes: 0 success, 1 verification failure, 2 numeric failure,
//! 64 usage error.

use std::ffi::OsString;
use std::fmt;
use std::fs::File;
use std::io::{self, Write};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::analysis::{self, capacity_low_snr_with, capacity_numeric, CapacityPoint};
use crate::channel::mi_closed;
use crate::csvio::{format_real, Cell, CsvTable};
use crate::solver::{constants, maximize_mi, solve_x1_with, SolveOptions, DEFAULT_A_MAX};
use crate::verify::{Battery, Level};
use crate::{Error, Snr};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_NUMERIC: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

/// Fraction of sweep points that must succeed for a zero exit.
pub const SWEEP_SUCCESS_FRACTION: f64 = 0.9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Spacing {
    Log,
    Lin,
}

/// `start:stop:points[:log|lin]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    pub spacing: Spacing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridError(String);

impl fmt::Display for GridError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for GridError {}

impl SweepGrid {
    pub fn new(start: f64, stop: f64, points: usize, spacing: Spacing) -> Result<Self, GridError> {
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(GridError(format!(
                "grid needs start < stop, got {start}:{stop}"
            )));
        }
        if points < 2 {
            return Err(GridError(format!(
                "grid needs at least 2 points, got {points}"
            )));
        }
        if spacing == Spacing::Log && !(start > 0.0) {
            return Err(GridError(format!("log grid needs start > 0, got {start}")));
        }
        Ok(SweepGrid {
            start,
            stop,
            points,
            spacing,
        })
    }

    pub fn values(&self) -> Vec<f64> {
        let last = (self.points - 1) as f64;
        (0..self.points)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == self.points - 1 {
                    return self.stop;
                }
                let t = i as f64 / last;
                match self.spacing {
                    Spacing::Log => {
                        (self.start.ln() + t * (self.stop.ln() - self.start.ln())).exp()
                    }
                    Spacing::Lin => self.start + t * (self.stop - self.start),
                }
            })
            .collect()
    }
}

impl FromStr for SweepGrid {
    type Err = GridError;

    fn from_str(s: &str) -> Result<Self, GridError> {
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(GridError(format!(
                "expected start:stop:points[:log|lin], got {s:?}"
            )));
        }
        let num = |p: &str| {
            p.parse::<f64>()
                .map_err(|_| GridError(format!("bad number {p:?}")))
        };
        let points = parts[2]
            .parse::<usize>()
            .map_err(|_| GridError(format!("bad point count {:?}", parts[2])))?;
        let spacing = match parts.get(3) {
            None | Some(&"log") => Spacing::Log,
            Some(&"lin") => Spacing::Lin,
            Some(other) => return Err(GridError(format!("unknown spacing {other:?}"))),
        };
        SweepGrid::new(num(parts[0])?, num(parts[1])?, points, spacing)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    MassPoint,
    Capacity,
    Penalty,
    Bounds,
    MiProfile,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

#[derive(Debug, Parser)]
#[command(
    name = "ncap",
    version,
    about = "Low-SNR capacity of the non-coherent Rayleigh fading channel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal on-off input and capacity at one SNR.
    Solve(SolveArgs),
    /// Tabulate a figure over a grid of SNRs (or mass points for mi-profile).
    Sweep(SweepArgs),
    /// Mass-point bounds and the capacity at each bound.
    Bounds(PointOrGrid),
    /// Non-coherence penalty per SNR.
    Penalty(PointOrGrid),
    /// Run the invariant battery.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct SnrArg {
    /// SNR as a linear power ratio.
    #[arg(long, allow_negative_numbers = true, conflicts_with = "snr_db")]
    snr: Option<f64>,
    /// SNR in dB, `10 log10(a)`.
    #[arg(long, allow_negative_numbers = true)]
    snr_db: Option<f64>,
}

impl SnrArg {
    fn get(&self) -> Option<f64> {
        self.snr.or(self.snr_db.map(|db| 10f64.powf(db / 10.0)))
    }
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    snr: SnrArg,
    /// Largest SNR accepted by the fixed-point solver.
    #[arg(long, default_value_t = DEFAULT_A_MAX)]
    a_max: f64,
    /// Also write the point as a one-row CSV.
    #[arg(long)]
    out: Option<String>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    grid: SweepGrid,
    #[arg(long, value_enum)]
    figure: Figure,
    /// Fixed SNRs for mi-profile (1 to 5 values).
    #[arg(long, allow_negative_numbers = true, conflicts_with = "snr_db")]
    snr: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    snr_db: Vec<f64>,
    #[arg(long, default_value_t = DEFAULT_A_MAX)]
    a_max: f64,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Debug, Args)]
struct PointOrGrid {
    #[command(flatten)]
    snr: SnrArg,
    #[arg(long, conflicts_with_all = ["snr", "snr_db"])]
    grid: Option<SweepGrid>,
    #[arg(long, default_value_t = DEFAULT_A_MAX)]
    a_max: f64,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "fast")]
    level: LevelArg,
    /// Base seed for the Monte Carlo battery.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Samples per Monte Carlo run.
    #[arg(long, default_value_t = 1_000_000)]
    samples: usize,
}

enum Failure {
    Usage(String),
    Numeric(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Numeric(format!("i/o: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Numeric(format!("csv: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Solve(a) => cmd_solve(&a, out, err),
        Command::Sweep(a) => cmd_sweep(&a, out, err),
        Command::Bounds(a) => cmd_bounds(&a, out, err),
        Command::Penalty(a) => cmd_penalty(&a, out, err),
        Command::Verify(a) => cmd_verify(&a, out),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Numeric(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_NUMERIC
        }
        Err(Failure::Verify(m)) => {
            let _ = writeln!(err, "verification failed: {m}");
            EXIT_VERIFY
        }
    }
}

/// Runs with the process arguments and standard streams.
pub fn run() -> i32 {
    let stdout = io::stdout();
    let stderr = io::stderr();
    run_with(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

fn usage_snr(value: f64) -> Result<Snr, Failure> {
    Snr::new(value).map_err(|e| Failure::Usage(e.to_string()))
}

fn required_snr(arg: &SnrArg) -> Result<Snr, Failure> {
    match arg.get() {
        Some(v) => usage_snr(v),
        None => Err(Failure::Usage(
            "one of --snr or --snr-db is required".into(),
        )),
    }
}

fn solve_options(a_max: f64) -> Result<SolveOptions, Failure> {
    if !(a_max > 0.0) {
        return Err(Failure::Usage(format!(
            "--a-max must be positive, got {a_max}"
        )));
    }
    Ok(SolveOptions {
        a_max,
        ..SolveOptions::default()
    })
}

fn emit_table(table: &CsvTable, path: Option<&str>, out: &mut dyn Write) -> CmdResult {
    match path {
        Some(p) => table.write(File::create(p)?)?,
        None => table.write(&mut *out)?,
    }
    Ok(())
}

fn emit_pairs(pairs: &[(&str, String)], path: Option<&str>, out: &mut dyn Write) -> CmdResult {
    for (k, v) in pairs {
        writeln!(out, "{k}={v}")?;
    }
    if let Some(p) = path {
        let mut t = CsvTable::new(pairs.iter().map(|(k, _)| *k));
        t.push(pairs.iter().map(|(_, v)| Cell::Text(v.clone())).collect());
        t.write(File::create(p)?)?;
    }
    Ok(())
}

/// Whether `a` is within 1% of the branch junction `a₀`.
pub fn near_junction(a: f64) -> bool {
    let a0 = constants().a0;
    (a - a0).abs() <= 0.01 * a0
}

fn point_pairs(p: &CapacityPoint) -> Vec<(&'static str, String)> {
    let a = p.a.linear();
    vec![
        ("a", format_real(a)),
        ("a_db", format_real(p.a.db())),
        ("x1", format_real(p.x1)),
        ("x1_sq", format_real(p.x1 * p.x1)),
        ("p1", format_real(p.p1)),
        ("capacity", format_real(p.capacity)),
        ("delta", format_real(p.delta)),
        ("delta_over_a", format_real(p.delta_over_a)),
        ("penalty", format_real(p.penalty)),
        ("energy_per_nat", format_real(p.energy_per_nat)),
        (
            "energy_per_nat_first_order",
            format_real(p.energy_per_nat_first_order()),
        ),
        ("energy_per_bit_db", format_real(p.energy_per_bit_db())),
        ("branch", p.branch.name().to_string()),
        ("order_limit_warning", p.order_limited.to_string()),
        ("branch_junction", near_junction(a).to_string()),
    ]
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let a = required_snr(&args.snr)?;
    let point = capacity_low_snr_with(a, &solve_options(args.a_max)?)?;
    if point.order_limited {
        writeln!(
            err,
            "warning: a = {} is above the low-SNR order limit 2e-2",
            a.linear()
        )?;
    }
    emit_pairs(&point_pairs(&point), args.out.as_deref(), out)
}

fn mi_profile_snrs(args: &SweepArgs) -> Result<Vec<Snr>, Failure> {
    let raw: Vec<f64> = if args.snr_db.is_empty() {
        args.snr.clone()
    } else {
        args.snr_db.iter().map(|db| 10f64.powf(db / 10.0)).collect()
    };
    if raw.is_empty() || raw.len() > 5 {
        return Err(Failure::Usage(format!(
            "mi-profile needs 1 to 5 --snr values, got {}",
            raw.len()
        )));
    }
    raw.into_iter().map(usage_snr).collect()
}

pub fn figure_header(figure: Figure, snrs: &[Snr]) -> Vec<String> {
    let fixed: &[&str] = match figure {
        Figure::MassPoint => &["a", "x1_fixedpoint", "x1_numericmax"],
        Figure::Capacity => &["a", "C_fixedpoint", "C_numericmax", "linear"],
        Figure::Penalty => &["a", "penalty"],
        Figure::Bounds => &["a", "x1_lower", "x1_exact", "x1_upper"],
        Figure::MiProfile => &["x1"],
    };
    let mut h: Vec<String> = fixed.iter().map(|s| s.to_string()).collect();
    if figure == Figure::MiProfile {
        h.extend(
            snrs.iter()
                .map(|a| format!("I_LB(a={})", format_real(a.linear()))),
        );
    }
    h
}

/// One sweep row; the error strings describe the cells left empty.
fn sweep_row(
    figure: Figure,
    v: f64,
    snrs: &[Snr],
    opts: &SolveOptions,
) -> (Vec<Cell>, Vec<String>) {
    let mut errors = Vec::new();
    let mut cell = |r: crate::Result<f64>| match r {
        Ok(x) => Cell::Num(x),
        Err(e) => {
            errors.push(e.to_string());
            Cell::Empty
        }
    };
    let mut row = vec![Cell::Num(v)];
    if figure == Figure::MiProfile {
        for &a in snrs {
            row.push(cell(mi_closed(v, a)));
        }
        return (row, errors);
    }
    let a = match Snr::new(v) {
        Ok(a) => a,
        Err(e) => {
            let width = figure_header(figure, snrs).len();
            row.resize(width, Cell::Empty);
            return (row, vec![e.to_string()]);
        }
    };
    match figure {
        Figure::MassPoint => {
            row.push(cell(solve_x1_with(a, opts).map(|r| r.value)));
            row.push(cell(maximize_mi(a, true).map(|m| m.x1)));
        }
        Figure::Capacity => {
            row.push(cell(capacity_low_snr_with(a, opts).map(|p| p.capacity)));
            row.push(cell(capacity_numeric(a).map(|p| p.capacity)));
            row.push(Cell::Num(v));
        }
        Figure::Penalty => {
            row.push(cell(capacity_low_snr_with(a, opts).map(|p| p.penalty)));
        }
        Figure::Bounds => {
            row.push(cell(analysis::x1_lower_bound(a)));
            row.push(cell(solve_x1_with(a, opts).map(|r| r.value)));
            row.push(cell(analysis::x1_upper_bound(a)));
        }
        Figure::MiProfile => unreachable!(),
    }
    (row, errors)
}

/// Evaluates `figure` over `grid` in parallel; rows come back in grid order.
pub fn sweep_table(
    grid: &SweepGrid,
    figure: Figure,
    snrs: &[Snr],
    opts: &SolveOptions,
) -> (CsvTable, Vec<(f64, String)>) {
    let values = grid.values();
    let rows: Vec<(Vec<Cell>, Vec<String>)> = values
        .par_iter()
        .map(|&v| sweep_row(figure, v, snrs, opts))
        .collect();
    let mut table = CsvTable::new(figure_header(figure, snrs));
    let mut failures = Vec::new();
    for (&v, (row, errors)) in values.iter().zip(rows) {
        if !errors.is_empty() {
            failures.push((v, errors.join("; ")));
        }
        table.push(row);
    }
    (table, failures)
}

fn finish_sweep(
    table: &CsvTable,
    failures: &[(f64, String)],
    path: Option<&str>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> CmdResult {
    emit_table(table, path, out)?;
    let total = table.rows.len();
    if !failures.is_empty() {
        writeln!(err, "warning: {} of {total} points failed", failures.len())?;
        for (v, m) in failures {
            writeln!(err, "  {}: {m}", format_real(*v))?;
        }
    }
    let ok = (total - failures.len()) as f64;
    if ok < SWEEP_SUCCESS_FRACTION * total as f64 {
        return Err(Failure::Numeric(format!(
            "only {ok} of {total} points succeeded"
        )));
    }
    Ok(())
}

fn cmd_sweep(args: &SweepArgs, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let snrs = if args.figure == Figure::MiProfile {
        mi_profile_snrs(args)?
    } else {
        if !args.snr.is_empty() || !args.snr_db.is_empty() {
            return Err(Failure::Usage(
                "--snr is only used by --figure mi-profile".into(),
            ));
        }
        Vec::new()
    };
    let (table, failures) =
        sweep_table(&args.grid, args.figure, &snrs, &solve_options(args.a_max)?);
    finish_sweep(&table, &failures, args.out.as_deref(), out, err)
}

fn cmd_bounds(args: &PointOrGrid, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let opts = solve_options(args.a_max)?;
    if let Some(grid) = &args.grid {
        let (table, failures) = sweep_table(grid, Figure::Bounds, &[], &opts);
        return finish_sweep(&table, &failures, args.out.as_deref(), out, err);
    }
    let a = required_snr(&args.snr)?;
    let b = analysis::capacity_bounds(a)?;
    let exact = capacity_low_snr_with(a, &opts)?;
    let pairs = [
        ("a", format_real(a.linear())),
        (
            "x1_lower_first",
            format_real(analysis::x1_lower_bound_first(a)?),
        ),
        ("x1_lower", format_real(b.x1_lower)),
        ("x1_exact", format_real(exact.x1)),
        ("x1_upper", format_real(b.x1_upper)),
        ("C_at_x1_lower", format_real(b.c_upper)),
        ("C", format_real(exact.capacity)),
        ("C_at_x1_upper", format_real(b.c_lower)),
    ];
    emit_pairs(&pairs, args.out.as_deref(), out)
}

fn cmd_penalty(args: &PointOrGrid, out: &mut dyn Write, err: &mut dyn Write) -> CmdResult {
    let opts = solve_options(args.a_max)?;
    if let Some(grid) = &args.grid {
        let (table, failures) = sweep_table(grid, Figure::Penalty, &[], &opts);
        return finish_sweep(&table, &failures, args.out.as_deref(), out, err);
    }
    let a = required_snr(&args.snr)?;
    let p = capacity_low_snr_with(a, &opts)?;
    if p.order_limited {
        writeln!(
            err,
            "warning: a = {} is above the low-SNR order limit 2e-2",
            a.linear()
        )?;
    }
    let pairs = [
        ("a", format_real(a.linear())),
        ("penalty", format_real(p.penalty)),
        ("order_limit_warning", p.order_limited.to_string()),
    ];
    emit_pairs(&pairs, args.out.as_deref(), out)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> CmdResult {
    if args.samples < crate::simulate::MIN_SAMPLES {
        return Err(Failure::Usage(format!(
            "--samples must be at least {}",
            crate::simulate::MIN_SAMPLES
        )));
    }
    let level = match args.level {
        LevelArg::Fast => Level::Fast,
        LevelArg::Full => Level::Full,
    };
    let battery = Battery {
        seed: args.seed,
        samples: args.samples,
        ..Battery::default()
    };
    let report = battery.run(level);
    write!(out, "{report}")?;
    if report.all_passed() {
        Ok(())
    } else {
        Err(Failure::Verify(report.failing().join(", ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["ncap"];
        full.extend_from_slice(args);
        let code = run_with(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn grid_parsing() {
        let g: SweepGrid = "1e-6:1e-2:30".parse().unwrap();
        assert_eq!(g.spacing, Spacing::Log);
        let v = g.values();
        assert_eq!(v.len(), 30);
        assert_eq!(v[0], 1e-6);
        assert_eq!(v[29], 1e-2);
        let l: SweepGrid = "0:1:5:lin".parse().unwrap();
        assert_eq!(l.values(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
        for bad in [
            "1:0:5",
            "0:1:5",
            "1e-3:1e-2:1",
            "1:2",
            "1:2:3:cubic",
            "a:2:3",
        ] {
            assert!(bad.parse::<SweepGrid>().is_err(), "{bad}");
        }
    }

    #[test]
    fn solve_prints_key_values() {
        let (code, out, _) = run_capture(&["solve", "--snr", "1e-3"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("x1_sq=4.92163734930e0"), "{out}");
        assert!(out.contains("branch=minus_one"));
        assert!(out.contains("order_limit_warning=false"));
    }

    #[test]
    fn snr_db_matches_linear() {
        let (_, lin, _) = run_capture(&["solve", "--snr", "1e-3"]);
        let (_, db, _) = run_capture(&["solve", "--snr-db", "-30"]);
        let strip = |s: &str| {
            s.lines()
                .filter(|l| !l.starts_with("a_db"))
                .collect::<Vec<_>>()
                .join("\n")
        };
        assert_eq!(strip(&lin), strip(&db));
    }

    #[test]
    fn both_snr_flags_is_usage_error() {
        let (code, _, err) = run_capture(&["solve", "--snr", "1e-3", "--snr-db", "-30"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(!err.is_empty());
    }

    #[test]
    fn missing_or_bad_snr_is_usage_error() {
        assert_eq!(run_capture(&["solve"]).0, EXIT_USAGE);
        assert_eq!(run_capture(&["solve", "--snr", "-1"]).0, EXIT_USAGE);
        assert_eq!(
            run_capture(&["sweep", "--grid", "1:0:3", "--figure", "penalty"]).0,
            EXIT_USAGE
        );
        assert_eq!(run_capture(&["frobnicate"]).0, EXIT_USAGE);
    }

    #[test]
    fn solve_above_a_max_is_numeric_failure() {
        let (code, _, err) = run_capture(&["solve", "--snr", "0.2"]);
        assert_eq!(code, EXIT_NUMERIC);
        assert!(err.contains("error"));
    }

    #[test]
    fn junction_and_order_limit_flags() {
        let (code, out, err) = run_capture(&["solve", "--snr", "0.0582"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("branch_junction=true"));
        assert!(out.contains("order_limit_warning=true"));
        assert!(err.contains("warning"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("sweep"));
    }

    #[test]
    fn mi_profile_needs_snrs() {
        let (code, _, _) = run_capture(&["sweep", "--grid", "1:4:4:lin", "--figure", "mi-profile"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, out, _) = run_capture(&[
            "sweep",
            "--grid",
            "1:4:4:lin",
            "--figure",
            "mi-profile",
            "--snr",
            "1e-3",
            "--snr",
            "1e-2",
        ]);
        assert_eq!(code, EXIT_OK);
        let t = CsvTable::parse(&out).unwrap();
        assert_eq!(t.header.len(), 3);
        // x1 = 1 is below √a for neither SNR, so every cell is filled.
        assert!(t.rows.iter().all(|r| r.iter().all(|c| c.num().is_some())));
    }

    #[test]
    fn penalty_sweep_rows_in_order() {
        let (code, out, _) =
            run_capture(&["sweep", "--grid", "1e-5:1e-2:8", "--figure", "penalty"]);
        assert_eq!(code, EXIT_OK);
        let t = CsvTable::parse(&out).unwrap();
        let a: Vec<f64> = t
            .column("a")
            .unwrap()
            .into_iter()
            .map(Option::unwrap)
            .collect();
        assert!(a.windows(2).all(|w| w[0] < w[1]));
        let p: Vec<f64> = t
            .column("penalty")
            .unwrap()
            .into_iter()
            .map(Option::unwrap)
            .collect();
        assert!(p.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn failing_points_leave_empty_cells() {
        // Above a0 the lower bound is undefined: 2 of 10 points fail, still exit 0.
        let g = SweepGrid::new(1e-3, 0.06, 10, Spacing::Log).unwrap();
        let (t, failures) = sweep_table(&g, Figure::Bounds, &[], &SolveOptions::default());
        assert!(!failures.is_empty());
        let lower = t.column("x1_lower").unwrap();
        assert!(lower.last().unwrap().is_none());
        assert!(lower[0].is_some());
    }
}
