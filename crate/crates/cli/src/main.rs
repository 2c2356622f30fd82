//! `chromabound`: constants, chromatic lower bounds, lattice double cap
//! constants, and invariant suites.
//!
//! Exit status is 0 on success, 1 when a verification suite fails, and 2 for
//! usage errors (bad flags, bad config, parameters outside a domain).

mod config;
mod output;
mod records;
mod verify;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use chromabound_core::bound_engine::{chromatic_lower_bound, kupavskii_upper_base, table_queries};
use chromabound_core::lattice_theta::{mu_for, DEFAULT_TRUNCATION, MIN_TRUNCATION};
use chromabound_core::special_functions::gamma_chi;
use chromabound_core::{BoundQuery, LatticeLabel};
use clap::{Parser, Subcommand};
use rayon::prelude::*;

use crate::config::Preset;
use crate::output::{render, Format};
use crate::records::{BoundRecord, ConstantsRecord, MuRecord};
use crate::verify::Suite;

const DEFAULT_TOL: f64 = 1e-12;
const THREADS_VAR: &str = "CHROMABOUND_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "chromabound",
    version,
    about = "Lower bounds for chromatic numbers of R^n with forbidden distances"
)]
struct Cli {
    /// Output format [default: plain].
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// `key = value` file presetting tol, K, format, output.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Optimization tolerance [default: 1e-12].
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Gamma_chi and reference constants.
    Constants,
    /// The lower bound for one (m, k).
    Bound {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        m: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
    },
    /// All cells 1 <= k <= min(m, k_max), 1 <= m <= m_max.
    Table {
        #[arg(long = "m-max", default_value_t = 5, value_parser = clap::value_parser!(u32).range(1..))]
        m_max: u32,
        #[arg(long = "k-max", default_value_t = 4, value_parser = clap::value_parser!(u32).range(1..))]
        k_max: u32,
    },
    /// Double cap constant mu for a lattice: zn, dn:<n>, e8, leech.
    LatticeMu {
        #[arg(long)]
        lattice: LatticeLabel,
        /// Truncation index of the E8/Leech theta series [default: 512].
        #[arg(long = "K")]
        truncation: Option<usize>,
    },
    /// Run invariant suites; exits 1 if any check fails.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 20_240_601)]
        seed: u64,
    },
}

/// Fully resolved options: flags over config file over defaults.
struct Settings {
    format: Format,
    output: Option<PathBuf>,
    tol: f64,
    truncation: Option<usize>,
}

impl Settings {
    fn resolve(cli: &Cli) -> Result<Self> {
        let preset = match &cli.config {
            Some(path) => Preset::load(path)?,
            None => Preset::default(),
        };
        let tol = cli.tol.or(preset.tol).unwrap_or(DEFAULT_TOL);
        if !(tol > 0.0 && tol < 1.0) {
            bail!("tolerance must lie in (0, 1), got {tol}");
        }
        let truncation = match &cli.command {
            Command::LatticeMu { truncation, .. } => truncation.or(preset.truncation),
            _ => preset.truncation,
        };
        Ok(Settings {
            format: cli.format.or(preset.format).unwrap_or_default(),
            output: cli.output.clone().or(preset.output),
            tol,
            truncation,
        })
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.output {
            Some(path) => {
                std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
            }
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                Ok(out.flush()?)
            }
        }
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .with_context(|| format!("{THREADS_VAR} must be a positive integer, got `{raw}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()?;
    Ok(())
}

/// Runs the command; `Ok(false)` means a verification failure.
fn run(cli: Cli) -> Result<bool> {
    configure_threads()?;
    let s = Settings::resolve(&cli)?;
    match cli.command {
        Command::Constants => {
            let g = gamma_chi(1e-15)?;
            let record = ConstantsRecord::new(g, kupavskii_upper_base(1)?, 1e-15);
            s.emit(&render(&[record], true, s.format)?)?;
        }
        Command::Bound { m, k } => {
            let q = BoundQuery::new(m, k)?;
            let r = chromatic_lower_bound(q, s.tol)?;
            if r.trivial_regime {
                eprintln!(
                    "warning: k = {k} > m = {m}; the bound is not informative in this regime"
                );
            }
            s.emit(&render(&[BoundRecord::new(r, s.tol)], true, s.format)?)?;
        }
        Command::Table { m_max, k_max } => {
            let rows = table_queries(m_max, k_max)?
                .into_par_iter()
                .map(|q| chromatic_lower_bound(q, s.tol).map(|r| BoundRecord::new(r, s.tol)))
                .collect::<Result<Vec<_>, _>>()?;
            s.emit(&render(&rows, false, s.format)?)?;
        }
        Command::LatticeMu { lattice, .. } => {
            let k = s.truncation.unwrap_or(DEFAULT_TRUNCATION);
            if k < MIN_TRUNCATION {
                bail!("K must be at least {MIN_TRUNCATION}, got {k}");
            }
            let r = mu_for(lattice, k, s.tol)?;
            s.emit(&render(&[MuRecord::new(r, s.tol)], true, s.format)?)?;
        }
        Command::Verify { suite, seed } => {
            let records = verify::run(suite, seed);
            for r in records.iter().filter(|r| !r.passed) {
                eprintln!(
                    "FAIL {}/{}: {}",
                    r.suite,
                    r.check,
                    r.counterexample.as_deref().unwrap_or("")
                );
            }
            let passed = records.iter().all(|r| r.passed);
            s.emit(&render(&records, false, s.format)?)?;
            return Ok(passed);
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
