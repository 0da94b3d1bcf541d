//! The `cwave` command line: `sample`, `trace` and `verify`.
//!
//! Exit status is 0 on success, 1 when a verification suite fails or an
//! I/O step breaks, and 2 for usage, configuration and unknown-suite errors.

pub mod config;
pub mod quantity;
pub mod sample;
pub mod trace;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::scalar::WaveletParams;
use crate::verify::suites::{run_suite, SamplePlan, Suite, SuiteReport};

pub use config::{Loaded, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "cwave", version, about = "Sample, trace and verify complex-source pulsed-beam wavelets")]
pub struct Cli {
    /// Worker threads; defaults to the available hardware parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate quantities on a planar grid; write CSV and optionally PPM.
    Sample {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Trace rays of the null congruence from the disk; write CSV.
    Trace {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run residual suites and print one JSON report per suite.
    Verify {
        /// Suite names, e.g. `lorenz nullity`.
        suites: Vec<String>,
        /// Run every suite.
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Points per suite.
        #[arg(long, default_value_t = 1000)]
        n: usize,
        /// Take `a`, `s`, axis and pulse from this config instead of the
        /// defaults (`a = 1`, `s = 1`, Gaussian `d = 0.3`).
        #[arg(long)]
        config: Option<PathBuf>,
        /// Also write `verify.json` here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Shortest round-trip decimal, switching to exponent form outside
/// `[1e-4, 1e16)` so tiny and huge values stay short.
pub fn format_f64(v: f64) -> String {
    let m = v.abs();
    if m == 0.0 || !v.is_finite() || (1e-4..1e16).contains(&m) {
        v.to_string()
    } else {
        format!("{v:e}")
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownSuite(_) | Error::ConfigError(_) => 2,
        _ => 1,
    }
}

/// Parses `args` (program name first) and runs; returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let _ = e.print();
            e.exit_code()
        }
    }
}

pub fn run(cli: Cli) -> i32 {
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.threads.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    match pool.install(|| dispatch(cli.command)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn load(path: &Path) -> Result<Loaded> {
    RunConfig::from_path(path)?.load()
}

fn create_dir(out: &Path) -> Result<()> {
    fs::create_dir_all(out).map_err(|e| Error::IoError(format!("{}: {e}", out.display())))
}

fn open(path: &Path) -> Result<fs::File> {
    fs::File::create(path).map_err(|e| Error::IoError(format!("{}: {e}", path.display())))
}

fn dispatch(cmd: Command) -> Result<i32> {
    match cmd {
        Command::Sample { config, out } => {
            let loaded = load(&config)?;
            create_dir(&out)?;
            let slice = sample::sample_config(&loaded)?;
            let rc = &loaded.config;
            if !rc.quantities.is_empty() {
                sample::write_csv(&slice, &rc.quantities, open(&out.join(&rc.outputs.csv))?)?;
            }
            if let Some(img) = &rc.image {
                let image = sample::render_slice(&slice, img.quantity, img.log)?;
                open(&out.join(&rc.outputs.ppm))?.write_all(&image.to_ppm())?;
                eprintln!("{}: min {:e} max {:e}", img.quantity, image.min, image.max);
            }
            Ok(0)
        }
        Command::Trace { config, out } => {
            let loaded = load(&config)?;
            create_dir(&out)?;
            let rows = trace::trace_rows(&loaded)?;
            trace::write_trace_csv(&rows, open(&out.join(&loaded.config.outputs.trace))?)?;
            Ok(0)
        }
        Command::Verify { suites, all, seed, n, config, out } => {
            let selected: Vec<Suite> = if all {
                Suite::ALL.to_vec()
            } else if suites.is_empty() {
                return Err(Error::ConfigError("name at least one suite or pass --all".into()));
            } else {
                suites.iter().map(|s| s.parse()).collect::<Result<_>>()?
            };
            let plan = match config {
                Some(path) => {
                    let rc = RunConfig::from_path(&path)?;
                    SamplePlan::with_params(n, seed, WaveletParams::new(rc.displacement()?, rc.pulse_spec()?))
                }
                None => SamplePlan::new(n, seed),
            };
            let reports: Vec<SuiteReport> = selected.iter().map(|&s| run_suite(s, &plan)).collect();
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            for r in &reports {
                let line = serde_json::to_string(r).map_err(|e| Error::IoError(e.to_string()))?;
                writeln!(lock, "{line}")?;
                eprintln!("{} {} max {:e}", if r.pass { "PASS" } else { "FAIL" }, r.suite, r.max_residual);
            }
            if let Some(dir) = out {
                create_dir(&dir)?;
                let text = serde_json::to_string_pretty(&reports).map_err(|e| Error::IoError(e.to_string()))?;
                open(&dir.join("verify.json"))?.write_all(text.as_bytes())?;
            }
            Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
        }
    }
}
