mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use frf_core::frf::snapshot::{self, LoadOptions, OnCorrupt};
use frf_core::orbits::{factor_divides, factor_divides_t0};
use frf_core::roots::{riley_roots, RootError};
use frf_core::{enumerate, run_suite, verify_prep, Fraction, IntInvariants, Kind, Suite, VerifyOptions};
use serde::Serialize;

use output::{Format, RowWriter};

#[derive(Parser)]
#[command(name = "frf", version, about = "Farey recursive functions, T0 and Riley polynomials")]
struct Cli {
    /// Snapshot file read at start-up and updated by `compute` and `table`.
    #[arg(long, global = true, env = "FRF_CACHE")]
    cache: Option<PathBuf>,
    /// Skip unparsable snapshot lines instead of refusing the file.
    #[arg(long, global = true)]
    skip_corrupt: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print one value.
    Compute {
        #[arg(long)]
        frac: Fraction,
        #[arg(long, default_value = "T0")]
        what: Kind,
    },
    /// Emit one row per fraction of `[lo, hi]` with denominator below `max-den`.
    Table {
        #[arg(long)]
        max_den: i64,
        #[arg(long, default_value = "0")]
        lo: Fraction,
        #[arg(long, default_value = "1/2")]
        hi: Fraction,
        #[arg(long, default_value = "T0")]
        what: Kind,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Rows between snapshot checkpoints when a cache is set.
        #[arg(long, default_value_t = 1000)]
        checkpoint: usize,
    },
    /// Run a verification suite and print a JSON report.
    Verify {
        /// A suite name, or `all`.
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_den: Option<i64>,
        #[arg(long)]
        odd_only: bool,
        #[arg(long, default_value_t = VerifyOptions::default().seed)]
        seed: u64,
    },
    /// Whether T(den) divides T(num).
    Divides {
        #[arg(long)]
        num: Fraction,
        #[arg(long)]
        den: Fraction,
        #[arg(long, value_enum, default_value_t = Form::T)]
        form: Form,
    },
    /// Roots of the Riley polynomial, each checked as a parabolic representation.
    Preps {
        #[arg(long)]
        frac: Fraction,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Form {
    T,
    T0,
}

#[derive(Serialize)]
struct Prep {
    re: f64,
    im: f64,
    multiplicity: usize,
    residual: f64,
    verified: bool,
}

struct Session {
    inv: IntInvariants,
    cache: Option<PathBuf>,
}

impl Session {
    fn open(cli: &Cli) -> Result<Self> {
        let inv = IntInvariants::new();
        if let Some(path) = &cli.cache {
            let opts = LoadOptions {
                on_corrupt: if cli.skip_corrupt { OnCorrupt::Skip } else { OnCorrupt::Abort },
                ..LoadOptions::default()
            };
            let report = snapshot::load_into(&inv, path, opts)
                .with_context(|| format!("loading snapshot {}", path.display()))?;
            for (line, msg) in &report.skipped {
                eprintln!("{}:{line}: skipped ({msg})", path.display());
            }
        }
        Ok(Session { inv, cache: cli.cache.clone() })
    }

    fn save(&self) -> Result<()> {
        if let Some(path) = &self.cache {
            let kinds = [Kind::T, Kind::U, Kind::T0, Kind::Riley];
            snapshot::save(&self.inv, &kinds, path)
                .with_context(|| format!("writing snapshot {}", path.display()))?;
        }
        Ok(())
    }
}

fn json_line<T: Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let session = Session::open(&cli)?;
    let inv = &session.inv;
    match cli.command {
        Command::Compute { frac, what } => {
            println!("{}", inv.value(what, &frac)?);
            session.save()?;
        }
        Command::Table { max_den, lo, hi, what, format, out, checkpoint } => {
            if max_den < 1 {
                bail!("--max-den must be at least 1");
            }
            if lo > hi {
                bail!("--lo {lo} exceeds --hi {hi}");
            }
            let start = Instant::now();
            let fracs = enumerate(max_den, lo, hi)?;
            let sink: Box<dyn Write> = match &out {
                Some(p) => Box::new(BufWriter::new(
                    File::create(p).with_context(|| format!("creating {}", p.display()))?,
                )),
                None => Box::new(BufWriter::new(io::stdout().lock())),
            };
            let mut w = RowWriter::new(format, what, sink)?;
            for (i, frac) in fracs.iter().enumerate() {
                w.row(*frac, &inv.value(what, frac)?)?;
                if checkpoint > 0 && (i + 1) % checkpoint == 0 {
                    session.save()?;
                }
            }
            w.finish()?;
            session.save()?;
            eprintln!("{} rows in {:.3} s", fracs.len(), start.elapsed().as_secs_f64());
        }
        Command::Verify { suite, max_den, odd_only, seed } => {
            let suites: Vec<Suite> = if suite.eq_ignore_ascii_case("all") {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse().map_err(anyhow::Error::msg)?]
            };
            let opts = VerifyOptions { max_den, odd_only, seed, ..VerifyOptions::default() };
            let mut ok = true;
            for s in suites {
                let report = run_suite(inv, s, &opts)?;
                ok &= report.passed;
                json_line(&report)?;
            }
            if !ok {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Divides { num, den, form } => {
            let verdict = match form {
                Form::T => factor_divides(inv, &den, &num)?,
                Form::T0 => factor_divides_t0(inv, &den, &num)?,
            };
            json_line(&verdict)?;
        }
        Command::Preps { frac, tol } => {
            let roots = match riley_roots(inv, &frac, 1e-10) {
                Err(RootError::Constant) => Vec::new(),
                r => r?,
            };
            let preps = roots
                .iter()
                .map(|r| {
                    Ok(Prep {
                        re: r.value.re,
                        im: r.value.im,
                        multiplicity: r.multiplicity,
                        residual: r.residual,
                        verified: verify_prep(&frac, r.value, tol)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            json_line(&preps)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
