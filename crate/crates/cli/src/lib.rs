//! `pstforge` command-line front end.
//!
//! Exit codes: 0 on success, 1 when verification fails, 2 on malformed input.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use pstforge::exactnum::rational::{format_exact, parse_rational};
use pstforge::exactnum::{eig_sym_tridiag, evolve_excitation};
use pstforge::scheme_file::{Provenance, SchemeFile};
use pstforge::spectra::{self, Parity, CATALOG};
use pstforge::{solver, verifier, Exact, ExactScheme, ExactSpectrum, VerificationReport};

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_BAD_INPUT: u8 = 2;

/// Env var capping the number of worker threads.
pub const THREADS_ENV: &str = "PSTFORGE_THREADS";

#[derive(Debug, Parser)]
#[command(name = "pstforge", version, about = "Design and verify perfect-state-transfer spin chains")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Linear,
    Ts,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Self {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a spectrum from a built-in family, optionally solving it.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        /// Number of sites N; parity follows from N.
        #[arg(long)]
        n: usize,
        #[arg(long = "T", default_value_t = 0)]
        t: u64,
        #[arg(long = "S", default_value_t = 0)]
        s: u64,
        #[arg(long, default_value_t = 99)]
        gap_max: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        solve: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the coupling scheme for an explicit spectrum.
    Solve {
        /// Positive levels, e.g. "9/2,7/2,3/2,1/2".
        #[arg(long)]
        spectrum: String,
        #[arg(long, value_enum)]
        parity: ParityArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a scheme file exactly and dynamically.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        /// Transfer time in units of π, as a rational.
        #[arg(long, default_value = "1")]
        tau: String,
    },
    /// Tabulate site occupation probabilities over time as CSV.
    Simulate {
        #[arg(long = "in")]
        input: PathBuf,
        /// End time, in the same units as the couplings (π is one transfer).
        #[arg(long)]
        t_max: f64,
        /// Number of intervals; the table has steps + 1 rows.
        #[arg(long)]
        steps: usize,
        /// Initially excited site, 1-based.
        #[arg(long, default_value_t = 1)]
        source: usize,
        #[arg(long)]
        csv: PathBuf,
    },
    /// List the built-in spectrum families.
    Catalog,
}

enum Outcome {
    Ok,
    VerificationFailed,
}

/// Parses `args` (program name first) and runs the subcommand, writing human
/// output to `out`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_BAD_INPUT } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(Outcome::Ok) => EXIT_OK,
        Ok(Outcome::VerificationFailed) => EXIT_VERIFY_FAILED,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_BAD_INPUT
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> anyhow::Result<Outcome> {
    match command {
        Command::Gen {
            family,
            n,
            t,
            s,
            gap_max,
            seed,
            solve,
            out: path,
        } => gen(out, family, n, t, s, gap_max, seed, solve, path.as_deref()),
        Command::Solve {
            spectrum,
            parity,
            out: path,
        } => {
            let spectrum = ExactSpectrum::parse(&spectrum, parity.into())?;
            solve_and_report(out, &spectrum, Provenance::new("explicit"), path.as_deref())?;
            Ok(Outcome::Ok)
        }
        Command::Verify { input, tau } => verify(out, &input, &tau),
        Command::Simulate {
            input,
            t_max,
            steps,
            source,
            csv,
        } => simulate(out, &input, t_max, steps, source, &csv),
        Command::Catalog => {
            for family in CATALOG {
                writeln!(out, "{:<8} {}", family.name, family.parameters)?;
                writeln!(out, "         {}", family.description)?;
                writeln!(out, "         provenance: {}", family.provenance)?;
            }
            Ok(Outcome::Ok)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn gen(
    out: &mut dyn Write,
    family: Family,
    n: usize,
    t: u64,
    s: u64,
    gap_max: u64,
    seed: u64,
    solve: bool,
    path: Option<&Path>,
) -> anyhow::Result<Outcome> {
    let (spectrum, provenance) = match family {
        Family::Linear => (spectra::gen_linear(n)?, Provenance::new("linear").with_parameter("n", n as u64)),
        Family::Ts => (
            spectra::gen_ts(n, t, s)?,
            Provenance::new("ts")
                .with_parameter("n", n as u64)
                .with_parameter("T", t)
                .with_parameter("S", s),
        ),
        Family::Random => {
            if n < 2 {
                bail!("n must be >= 2, got {n}");
            }
            (
                spectra::gen_random_odd_gaps(n / 2, Parity::of_sites(n), gap_max, seed)?,
                Provenance::new("random")
                    .with_parameter("n", n as u64)
                    .with_parameter("gap_max", gap_max)
                    .with_seed(seed),
            )
        }
    };
    if solve {
        solve_and_report(out, &spectrum, provenance, path)?;
    } else {
        writeln!(out, "N = {} ({})", spectrum.n_sites(), spectrum.parity())?;
        writeln!(out, "spectrum: {}", spectrum.to_text())?;
        if let Some(path) = path {
            SchemeFile::from_spectrum(&spectrum, provenance).write(path)?;
            writeln!(out, "wrote {}", path.display())?;
        }
    }
    Ok(Outcome::Ok)
}

fn solve_and_report(
    out: &mut dyn Write,
    spectrum: &ExactSpectrum,
    provenance: Provenance,
    path: Option<&Path>,
) -> anyhow::Result<()> {
    let start = Instant::now();
    let scheme = solver::solve(spectrum)?;
    let elapsed = start.elapsed();
    writeln!(out, "N = {} ({})", scheme.n_sites(), spectrum.parity())?;
    writeln!(out, "spectrum: {}", spectrum.to_text())?;
    writeln!(out, "J^2 = {}", scheme.couplings_squared_text().join(", "))?;
    writeln!(out, "bit_size_max = {}", scheme.bit_size_max())?;
    writeln!(out, "wall time = {:.3} s", elapsed.as_secs_f64())?;
    if let Some(path) = path {
        SchemeFile::from_scheme(&scheme, provenance).write(path)?;
        writeln!(out, "wrote {}", path.display())?;
    }
    Ok(())
}

/// Loads a scheme file, solving it first when it only carries a spectrum.
fn load_scheme(out: &mut dyn Write, path: &Path) -> anyhow::Result<ExactScheme> {
    let file = SchemeFile::read(path).with_context(|| format!("reading {}", path.display()))?;
    match file.scheme()? {
        Some(scheme) => Ok(scheme),
        None => {
            writeln!(out, "note: {} has no couplings; solving its spectrum", path.display())?;
            Ok(solver::solve(&file.spectrum()?)?)
        }
    }
}

fn verify(out: &mut dyn Write, input: &Path, tau: &str) -> anyhow::Result<Outcome> {
    let tau: Exact = parse_rational(tau)?;
    let scheme = load_scheme(out, input)?;
    let report = verifier::verify(&scheme, &tau)?;
    write_report(out, &report, &tau)?;
    Ok(if report.passed() {
        Outcome::Ok
    } else {
        Outcome::VerificationFailed
    })
}

fn write_report(out: &mut dyn Write, report: &VerificationReport, tau: &Exact) -> std::io::Result<()> {
    let opt = |v: Option<f64>| v.map_or_else(|| "n/a".to_string(), |v| format!("{v:.15}"));
    writeln!(out, "tau: {} pi", format_exact(tau))?;
    writeln!(out, "exact_spectrum_match: {}", report.exact_spectrum_match)?;
    writeln!(out, "coefficient_mismatches: {}", report.coefficient_mismatches.len())?;
    for m in &report.coefficient_mismatches {
        writeln!(out, "  degree {}: got {}, expected {}", m.degree, m.got, m.expected)?;
    }
    writeln!(out, "pst_valid: {}", report.pst_valid.map_or("n/a".into(), |v| v.to_string()))?;
    writeln!(out, "fidelity_at_pi: {}", opt(report.fidelity_at_pi))?;
    writeln!(out, "fidelity_phase: {}", opt(report.fidelity_phase))?;
    writeln!(
        out,
        "mirror_deviation: {}",
        report.mirror_deviation.map_or("n/a".into(), |v| format!("{v:.3e}"))
    )?;
    writeln!(out, "result: {}", if report.passed() { "PASS" } else { "FAIL" })
}

/// Worker count: `PSTFORGE_THREADS` when set to a positive integer, else the
/// available parallelism.
pub fn worker_count() -> usize {
    let available = std::thread::available_parallelism().map_or(1, |n| n.get());
    std::env::var(THREADS_ENV)
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(available)
}

fn simulate(
    out: &mut dyn Write,
    input: &Path,
    t_max: f64,
    steps: usize,
    source: usize,
    csv_path: &Path,
) -> anyhow::Result<Outcome> {
    if steps == 0 || !t_max.is_finite() || t_max < 0.0 {
        bail!("need steps >= 1 and a finite t_max >= 0");
    }
    let scheme = load_scheme(out, input)?;
    let n = scheme.n_sites();
    if source == 0 || source > n {
        bail!("source site {source} outside 1..={n}");
    }
    let eig = eig_sym_tridiag(scheme.couplings_float(), n)?;

    let times: Vec<f64> = (0..=steps).map(|k| t_max * k as f64 / steps as f64).collect();
    let workers = worker_count().min(times.len());
    let chunk = times.len().div_ceil(workers);
    let rows: Vec<Vec<f64>> = std::thread::scope(|scope| {
        let handles: Vec<_> = times
            .chunks(chunk)
            .map(|ts| {
                let eig = &eig;
                scope.spawn(move || {
                    ts.iter()
                        .map(|&t| {
                            let amps = evolve_excitation(eig, source, t).expect("source checked");
                            std::iter::once(t).chain(amps.iter().map(|a| a.norm_sqr())).collect()
                        })
                        .collect::<Vec<Vec<f64>>>()
                })
            })
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
    });

    let mut writer = csv::Writer::from_path(csv_path).with_context(|| format!("creating {}", csv_path.display()))?;
    let header: Vec<String> = std::iter::once("t".to_string())
        .chain((1..=n).map(|m| format!("p{m}")))
        .collect();
    writer.write_record(&header)?;
    for row in &rows {
        writer.write_record(row.iter().map(|v| v.to_string()))?;
    }
    writer.flush()?;
    writeln!(
        out,
        "wrote {} rows x {} sites to {} ({workers} workers)",
        rows.len(),
        n,
        csv_path.display()
    )?;
    Ok(Outcome::Ok)
}
