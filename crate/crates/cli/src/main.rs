//! `circsing`: singularity probabilities of random circulant matrices.
//!
//! Exit codes: 0 success, 1 verify failure or I/O error, 2 usage error,
//! 3 budget exceeded. Data goes to stdout (or `--output`), messages to
//! stderr.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use circsing::asym::{approx_closed, approx_main, approx_signed, convergence_table, AsymptoticValue};
use circsing::binomstats::QParam;
use circsing::io::{write_table_csv, NRange};
use circsing::mcsim::{check_samples, sample_singularity, DEFAULT_SAMPLES_CAP};
use circsing::polycyc::divisors;
use circsing::singexact::{divisor_probability, prob_bounds, report};
use circsing::verify::{run_suite, Suite};
use circsing::{Budgets, Error, Model};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "circsing", version, about = "Singularity probabilities of random circulant 0/1 and ±1 matrices")]
struct Cli {
    /// Output format; csv is available for `table` only.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Write machine output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    #[command(flatten)]
    budgets: BudgetArgs,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct BudgetArgs {
    /// Lattice enumeration budget (candidate vectors).
    #[arg(long, env = "CIRCSING_ENUM_BUDGET", default_value_t = Budgets::DEFAULT_ENUMERATION, global = true)]
    enum_budget: u64,

    /// Brute-force budget (first rows visited).
    #[arg(long, env = "CIRCSING_BRUTE_BUDGET", default_value_t = Budgets::DEFAULT_BRUTE_FORCE, global = true)]
    brute_budget: u64,

    /// Upper limit on Monte-Carlo samples.
    #[arg(long, env = "CIRCSING_SAMPLES_CAP", default_value_t = DEFAULT_SAMPLES_CAP, global = true)]
    samples_cap: u64,
}

impl BudgetArgs {
    fn budgets(&self) -> Budgets {
        Budgets {
            enumeration: self.enum_budget,
            brute_force: self.brute_budget,
            ..Budgets::default()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum FormulaChoice {
    Main,
    Closed,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact per-divisor values, bounds and union probability.
    Exact {
        #[arg(long)]
        n: usize,
        /// Rational `a/b`.
        #[arg(long)]
        q: String,
        #[arg(long)]
        signed: bool,
    },
    /// The probability that `Phi_d` divides the row polynomial.
    Divisor {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: String,
        #[arg(long)]
        signed: bool,
    },
    /// Upper (and, for prime d, lower) bounds per divisor.
    Bounds {
        #[arg(long)]
        n: usize,
        /// One divisor; all divisors >= 2 when omitted.
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        q: String,
    },
    /// Large-n approximation.
    Asym {
        #[arg(long)]
        n: usize,
        /// Rational `a/b` or decimal.
        #[arg(long)]
        q: String,
        #[arg(long)]
        signed: bool,
        #[arg(long, value_enum, default_value_t = FormulaChoice::Main)]
        formula: FormulaChoice,
    },
    /// Exact versus approximate values over a range of n.
    Table {
        /// `A:B` or `A:B:step`, inclusive.
        #[arg(long)]
        n_range: String,
        #[arg(long)]
        q: String,
        #[arg(long)]
        signed: bool,
    },
    /// Monte-Carlo estimate.
    Mc {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: String,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        shards: usize,
        #[arg(long)]
        signed: bool,
    },
    /// Run invariant suites; all of them when none is named.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Vec<Suite>,
    },
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Lib(Error),
    Usage(String),
    Io(io::Error),
    Verify,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn model(signed: bool) -> Model {
    if signed {
        Model::Signed
    } else {
        Model::Binary
    }
}

fn parse_q(s: &str) -> Result<QParam, Failure> {
    Ok(s.parse::<QParam>()?)
}

fn sink(path: &Option<PathBuf>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(File::create(p)?),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit_json<T: Serialize>(value: &T, path: &Option<PathBuf>) -> Result<(), Failure> {
    let mut out = sink(path)?;
    serde_json::to_writer_pretty(&mut out, value).map_err(io::Error::other)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let budgets = cli.budgets.budgets();
    if cli.format == Format::Csv && !matches!(cli.command, Command::Table { .. }) {
        return Err(Failure::Usage("--format csv is only available for `table`".into()));
    }
    match cli.command {
        Command::Exact { n, q, signed } => {
            let q = parse_q(&q)?;
            let r = report(n, q.require_exact()?, model(signed), &budgets)?;
            for note in &r.notes {
                eprintln!("note: {note}");
            }
            emit_json(&r, &cli.output)
        }
        Command::Divisor { n, d, q, signed } => {
            let q = parse_q(&q)?;
            let p = divisor_probability(d, n, q.require_exact()?, model(signed), budgets.enumeration)?;
            emit_json(&p, &cli.output)
        }
        Command::Bounds { n, d, q } => {
            let q = parse_q(&q)?;
            let qe = q.require_exact()?;
            let ds = match d {
                Some(d) => vec![d],
                None => divisors(n).into_iter().filter(|&d| d >= 2).collect(),
            };
            let bounds = ds
                .into_iter()
                .map(|d| prob_bounds(d, n, qe))
                .collect::<Result<Vec<_>, _>>()?;
            emit_json(&bounds, &cli.output)
        }
        Command::Asym { n, q, signed, formula } => {
            let q = parse_q(&q)?;
            let v: AsymptoticValue = match (signed, formula) {
                (false, FormulaChoice::Main) => approx_main(n, &q)?,
                (false, FormulaChoice::Closed) => approx_closed(n, q.value())?,
                (true, FormulaChoice::Main) => approx_signed(n, &q)?,
                (true, FormulaChoice::Closed) => {
                    return Err(Failure::Usage("--formula closed applies to the binary model".into()))
                }
            };
            emit_json(&v, &cli.output)
        }
        Command::Table { n_range, q, signed } => {
            let q = parse_q(&q)?;
            let range: NRange = n_range.parse()?;
            let ns: Vec<usize> = range.values().collect();
            let rows = convergence_table(&q, &ns, model(signed), &budgets)?;
            match cli.format {
                Format::Json => emit_json(&rows, &cli.output),
                Format::Csv => {
                    let mut out = sink(&cli.output)?;
                    write_table_csv(&rows, &mut out)?;
                    Ok(())
                }
            }
        }
        Command::Mc { n, q, samples, seed, shards, signed } => {
            let q = parse_q(&q)?;
            check_samples(samples, cli.budgets.samples_cap)?;
            let e = sample_singularity(n, &q, samples, seed, model(signed), shards)?;
            emit_json(&e, &cli.output)
        }
        Command::Verify { suite } => {
            let suites = if suite.is_empty() { Suite::ALL.to_vec() } else { suite };
            let mut out = sink(&cli.output)?;
            let mut failed = false;
            for s in suites {
                let outcome = run_suite(s, &budgets)?;
                for f in &outcome.failures {
                    eprintln!("{s}: {f}");
                }
                writeln!(out, "{}", outcome.summary())?;
                failed |= !outcome.passed();
            }
            out.flush()?;
            if failed {
                Err(Failure::Verify)
            } else {
                Ok(())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("circsing: {e}");
            ExitCode::from(match e {
                Error::Budget { .. } | Error::Overflow(_) => 3,
                Error::Domain(_) | Error::Parse(_) => 2,
            })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("circsing: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("circsing: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Verify) => {
            eprintln!("circsing: verification failed");
            ExitCode::from(1)
        }
    }
}
