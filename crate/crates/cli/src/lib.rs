//! Argument handling and dispatch for the `neil` binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use neil_core::hardy_alpha::Alpha;
use neil_core::io::{load_symbol, load_weight, parse_melement};
use neil_core::report::{parse_grid_steps, Record, Report, ToeplitzReport};
use neil_core::szego::{adjudicate_with, SzegoOptions};
use neil_core::toeplitz_alpha::assemble;
use neil_core::widom::{
    bracket_report, classify_symbol, riesz_factor, scan_report, ClassifyOptions, ScanOptions, MAX_SCAN_DEGREE,
};
use neil_core::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_ALARM: i32 = 4;

pub const MAX_GRID: usize = 1 << 16;
pub const MAX_SZEGO_DEGREE: usize = 512;

#[derive(Debug, Parser)]
#[command(name = "neil", version, about = "Szego distances and Toeplitz invertibility for the Neil algebra")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Output {
    /// Write the report here (atomically) instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Structured JSON instead of the flat text record.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed forms, oracle sweep and lambda verdict for a weight.
    Szego {
        #[arg(long)]
        weight: String,
        #[arg(long, default_value_t = 64)]
        nmax: usize,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        /// Log-coefficient band (default min(256, M/4)).
        #[arg(long)]
        band: Option<i64>,
        #[command(flatten)]
        output: Output,
    },
    /// Smallest singular values over the alpha grid, for phi and conj(phi).
    WidomScan {
        #[arg(long)]
        symbol: String,
        #[arg(long, default_value = "33x64")]
        alpha_grid: String,
        #[arg(long, default_value_t = 64)]
        degree: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Primal/dual bracket for dist(phi, A).
    Dist {
        #[arg(long)]
        symbol: String,
        #[arg(long = "K", default_value_t = 16)]
        k: usize,
        /// Minimax grid size M.
        #[arg(long, default_value_t = 128)]
        grid: usize,
        /// Extra dual witness in M, as (j,re,im) triples. Repeatable.
        #[arg(long)]
        h: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Scan plus bracket with all verdict flags; exits 4 on an alarm.
    Classify {
        #[arg(long)]
        symbol: String,
        #[arg(long, default_value = "33x64")]
        alpha_grid: String,
        #[arg(long, default_value_t = 64)]
        degree: usize,
        #[arg(long = "K", default_value_t = 16)]
        k: usize,
        #[arg(long, default_value_t = 128)]
        grid: usize,
        #[arg(long)]
        h: Vec<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Factor h in M as f g with f in some H^2_alpha.
    Factor {
        #[arg(long)]
        h: String,
        #[arg(long = "K", default_value_t = 128)]
        k: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Range-exact matrix of T^alpha_phi and its singular values.
    Toeplitz {
        #[arg(long)]
        symbol: String,
        #[arg(long, default_value_t = 16)]
        degree: usize,
        /// `THETA,PHASE` with a = cos(theta), b = sin(theta) e^{i phase}.
        #[arg(long, default_value = "0,0")]
        alpha: String,
        #[command(flatten)]
        output: Output,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Szego { .. } => "szego",
            Command::WidomScan { .. } => "widom-scan",
            Command::Dist { .. } => "dist",
            Command::Classify { .. } => "classify",
            Command::Factor { .. } => "factor",
            Command::Toeplitz { .. } => "toeplitz",
        }
    }

    fn output(&self) -> &Output {
        match self {
            Command::Szego { output, .. }
            | Command::WidomScan { output, .. }
            | Command::Dist { output, .. }
            | Command::Classify { output, .. }
            | Command::Factor { output, .. }
            | Command::Toeplitz { output, .. } => output,
        }
    }
}

fn check_range(name: &str, v: usize, lo: usize, hi: usize) -> Result<(), Error> {
    if v < lo || v > hi {
        return Err(Error::InvalidInput(format!("--{name} must lie in {lo}..={hi}, got {v}")));
    }
    Ok(())
}

fn check_grid(m: usize) -> Result<(), Error> {
    check_range("grid", m, 2, MAX_GRID)?;
    if !m.is_power_of_two() {
        return Err(Error::InvalidInput(format!("--grid must be a power of two, got {m}")));
    }
    Ok(())
}

fn scan_options(alpha_grid: &str, degree: usize, verdict_mode: bool) -> Result<ScanOptions, Error> {
    let (theta_steps, phase_steps) = parse_grid_steps(alpha_grid)?;
    check_range("degree", degree, 2, MAX_SCAN_DEGREE)?;
    Ok(ScanOptions { theta_steps, phase_steps, degree, verdict_mode })
}

fn classify_options(scan: ScanOptions, k: usize, grid: usize, h: &[String]) -> Result<ClassifyOptions, Error> {
    check_grid(grid)?;
    let witnesses = h
        .iter()
        .enumerate()
        .map(|(i, s)| parse_melement(s).map(|m| (format!("user{}", i + 1), m)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ClassifyOptions { scan, primal_degree: k, primal_grid: grid, witnesses, ..ClassifyOptions::default() })
}

fn parse_alpha(s: &str) -> Result<Alpha, Error> {
    let bad = || Error::InvalidInput(format!("--alpha expects THETA,PHASE, got '{s}'"));
    let (t, p) = s.split_once(',').ok_or_else(bad)?;
    let theta: f64 = t.trim().parse().map_err(|_| bad())?;
    let phase: f64 = p.trim().parse().map_err(|_| bad())?;
    if !theta.is_finite() || !phase.is_finite() {
        return Err(bad());
    }
    Ok(Alpha::from_angles(theta, phase))
}

/// Runs one command and returns the record plus whether a theorem alarm fired.
pub fn execute(command: &Command) -> Result<(Record, bool), Error> {
    let (mut rec, alarm, input) = match command {
        Command::Szego { weight, nmax, grid, band, .. } => {
            check_grid(*grid)?;
            check_range("nmax", *nmax, 8, MAX_SZEGO_DEGREE)?;
            let w = load_weight(weight, *grid)?;
            let opts = SzegoOptions { n_max: *nmax, band: *band, ..SzegoOptions::default() };
            (adjudicate_with(&w, &opts)?.to_record(), false, weight.clone())
        }
        Command::WidomScan { symbol, alpha_grid, degree, .. } => {
            let phi = load_symbol(symbol)?;
            let opts = ClassifyOptions { scan: scan_options(alpha_grid, *degree, false)?, ..ClassifyOptions::default() };
            let r = scan_report(&phi, &opts)?;
            (r.to_record(), r.flags.theorem_alarm, symbol.clone())
        }
        Command::Dist { symbol, k, grid, h, .. } => {
            let phi = load_symbol(symbol)?;
            let opts = classify_options(ScanOptions::default(), *k, *grid, h)?;
            let r = bracket_report(&phi, &opts)?;
            (r.to_record(), r.flags.theorem_alarm, symbol.clone())
        }
        Command::Classify { symbol, alpha_grid, degree, k, grid, h, .. } => {
            let phi = load_symbol(symbol)?;
            let opts = classify_options(scan_options(alpha_grid, *degree, true)?, *k, *grid, h)?;
            let r = classify_symbol(&phi, &opts)?;
            (r.to_record(), r.flags.theorem_alarm, symbol.clone())
        }
        Command::Factor { h, k, .. } => {
            check_range("K", *k, 2, MAX_SCAN_DEGREE * 4)?;
            (riesz_factor(&parse_melement(h)?, *k)?.to_record(), false, h.clone())
        }
        Command::Toeplitz { symbol, degree, alpha, .. } => {
            check_range("degree", *degree, 2, MAX_SZEGO_DEGREE)?;
            let phi = load_symbol(symbol)?;
            let rep = assemble(&parse_alpha(alpha)?, &phi.poly, *degree)?;
            (ToeplitzReport::new(rep).to_record(), false, symbol.clone())
        }
    };
    rec.add_meta("command", command.name());
    rec.add_meta("input", input);
    Ok((rec, alarm))
}

/// Writes via a sibling temporary file and a rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty()).unwrap_or(Path::new("."));
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_INPUT
    }
}

pub fn run(cli: Cli) -> i32 {
    let name = cli.command.name();
    let (rec, alarm) = match execute(&cli.command) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("neil {name}: {e}");
            return exit_code(&e);
        }
    };
    let output = cli.command.output();
    let body = if output.json { rec.to_json() } else { rec.to_text() };
    let written = match &output.out {
        Some(path) => write_atomic(path, &body),
        None => std::io::stdout().lock().write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("neil {name}: cannot write report: {e}");
        return EXIT_INPUT;
    }
    if alarm {
        eprintln!("neil {name}: theorem-inconsistency alarm raised");
        return EXIT_ALARM;
    }
    EXIT_OK
}
