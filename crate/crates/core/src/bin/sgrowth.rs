use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use suffix_growth::combinatorics::{self, omega_rows, omega_table, Combinatorics};
use suffix_growth::enumerate::DEFAULT_BUDGET;
use suffix_growth::experiments::{cmd_expected_growth, cmd_expected_size, ExperimentConfig, Mode, Regime};
use suffix_growth::output::{write_rows, CountRow, Format, Record};
use suffix_growth::strings::letter_to_symbol;
use suffix_growth::tree::TreeStats;
use suffix_growth::verify::{run_verify, VerifyConfig};
use suffix_growth::{Alphabet, CompactSuffixTree, Error, NaiveSuffixTree, Str, Workers};

#[derive(Parser, Debug)]
#[command(name = "sgrowth", version, about = "Suffix trees, string growth and aperiodic-string counts")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Alphabet size; string commands default to the largest letter used (at least 2)
    #[arg(long, global = true)]
    sigma: Option<u32>,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, default_value_t = 1000)]
    samples: u64,
    /// Maximum number of strings an exhaustive sweep may visit
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Worker threads, 0 for all cores
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Write data rows here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build the suffix tree of a string and print its statistics or DOT
    Tree {
        string: String,
        #[arg(long)]
        compact: bool,
        #[arg(long)]
        dot: bool,
    },
    /// Growth of a string, by tree inspection and by direct comparison
    Growth { string: String },
    /// Aperiodic string counts mu(1..=max_j)
    Mu {
        #[arg(long)]
        max_j: u32,
    },
    /// Growth-count bounds phi(1..=max_k)
    Phi {
        #[arg(long)]
        max_k: u32,
    },
    /// Exhaustive counts of strings of length n by growth, against phi
    Omega {
        #[arg(long)]
        n: u32,
    },
    /// Run every counting and tree check; exit 1 on any violation
    Verify {
        /// Table of mu values to compare against (sigma,mu1,..,mu8)
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Expected growth of random strings
    ExpectGrowth {
        /// Lengths, comma separated and ascending
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Mode::Montecarlo)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = RegimeArg::Both)]
        regime: RegimeArg,
    },
    /// Expected node count of the naive suffix tree of random strings
    ExpectSize {
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<u32>,
        #[arg(long, value_enum, default_value_t = Mode::Montecarlo)]
        mode: Mode,
    },
    /// Start positions of a pattern, found through the compact tree
    Search { text: String, pattern: String },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum RegimeArg {
    Uniform,
    FixedSuffix,
    Both,
}

#[derive(Debug, Serialize)]
struct Occurrence {
    position: usize,
}

impl Record for Occurrence {
    const FIELDS: &'static [&'static str] = &["position"];
}

enum Outcome {
    Ok,
    Violation,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn sink(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(io::stdout().lock()),
    })
}

fn emit<T: Record>(g: &Global, rows: &[T]) -> Result<(), Error> {
    let mut w = sink(&g.out)?;
    write_rows(rows, g.format, &mut w)?;
    w.flush()?;
    Ok(())
}

fn parse_text(g: &Global, text: &str) -> Result<Str, Error> {
    let sigma = match g.sigma {
        Some(s) => s,
        None => text.chars().filter_map(letter_to_symbol).max().unwrap_or(0).max(2),
    };
    Str::from_text(text, Alphabet::new(sigma)?)
}

fn sigma_or_default(g: &Global) -> Result<u32, Error> {
    let sigma = g.sigma.unwrap_or(2);
    Alphabet::new(sigma)?.require_nondegenerate()?;
    Ok(sigma)
}

fn run(cli: Cli) -> Result<Outcome, Error> {
    let g = &cli.global;
    let workers = Workers(g.workers);
    match cli.command {
        Command::Tree { string, compact, dot } => {
            let s = parse_text(g, &string)?;
            let naive = NaiveSuffixTree::build(&s)?;
            let growth = naive.growth();
            let (counts, dot_text) = if compact {
                let c = CompactSuffixTree::from_naive(&naive);
                (c.counts(), c.to_dot())
            } else {
                (naive.counts(), naive.to_dot())
            };
            let mut w = sink(&g.out)?;
            if dot {
                w.write_all(dot_text.as_bytes())?;
            } else {
                let stats = TreeStats {
                    n: s.len(),
                    sigma: s.alphabet().size(),
                    counts,
                    growth,
                };
                writeln!(w, "{stats}")?;
            }
            w.flush()?;
        }
        Command::Growth { string } => {
            let s = parse_text(g, &string)?;
            let by_tree = suffix_growth::growth_tree(&s)?;
            let by_lcp = suffix_growth::growth_oracle(&s)?;
            let mut w = sink(&g.out)?;
            writeln!(w, "growth={by_lcp} tree={by_tree} lcp={by_lcp}")?;
            w.flush()?;
            if by_tree != by_lcp {
                return Ok(Outcome::Violation);
            }
        }
        Command::Mu { max_j } => {
            let sigma = sigma_or_default(g)?;
            let rows = (1..=max_j)
                .map(|j| {
                    Ok(CountRow {
                        sigma,
                        j_or_n: Some(j),
                        k: None,
                        value: combinatorics::mu(j, sigma)?,
                    })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            emit(g, &rows)?;
        }
        Command::Phi { max_k } => {
            let sigma = sigma_or_default(g)?;
            let rows = (1..=max_k)
                .map(|k| {
                    Ok(CountRow {
                        sigma,
                        j_or_n: None,
                        k: Some(k),
                        value: combinatorics::phi(k, sigma)?.value,
                    })
                })
                .collect::<Result<Vec<_>, Error>>()?;
            emit(g, &rows)?;
        }
        Command::Omega { n } => {
            let sigma = sigma_or_default(g)?;
            let table = omega_table(n, sigma, g.budget, workers)?;
            let rows = omega_rows(&table, Combinatorics::shared());
            emit(g, &rows)?;
            if rows.iter().any(|r| r.n_ge_2k && !r.omega_le_phi) {
                return Ok(Outcome::Violation);
            }
        }
        Command::Verify { table } => {
            let table_csv = table.map(std::fs::read_to_string).transpose()?;
            let config = VerifyConfig {
                budget: g.budget,
                workers,
                table_csv,
            };
            let report = run_verify(Combinatorics::shared(), &config)?;
            if let Some(path) = &g.out {
                write_rows(&report.checks, g.format, BufWriter::new(File::create(path)?))?;
            }
            let stdout = io::stdout();
            let mut w = stdout.lock();
            for c in &report.checks {
                writeln!(w, "{c}")?;
            }
            writeln!(
                w,
                "checks={} failed={} known-typos={}",
                report.checks.len(),
                report.failures().count(),
                report.known_typos().count()
            )?;
            if !report.passed() {
                return Ok(Outcome::Violation);
            }
        }
        Command::ExpectGrowth { n, mode, regime } => {
            let config = experiment_config(g, n, mode)?;
            let regimes: &[Regime] = match regime {
                RegimeArg::Uniform => &[Regime::Uniform],
                RegimeArg::FixedSuffix => &[Regime::FixedSuffix],
                RegimeArg::Both => &[Regime::Uniform, Regime::FixedSuffix],
            };
            emit(g, &cmd_expected_growth(&config, regimes)?)?;
        }
        Command::ExpectSize { n, mode } => {
            let config = experiment_config(g, n, mode)?;
            emit(g, &cmd_expected_size(&config)?)?;
        }
        Command::Search { text, pattern } => {
            let s = parse_text(g, &text)?;
            let p = Str::from_text(&pattern, s.alphabet())?;
            let tree = CompactSuffixTree::build(&s)?;
            let rows: Vec<Occurrence> = tree
                .find_occurrences(&p)?
                .into_iter()
                .map(|position| Occurrence { position })
                .collect();
            emit(g, &rows)?;
        }
    }
    Ok(Outcome::Ok)
}

fn experiment_config(g: &Global, n_list: Vec<u32>, mode: Mode) -> Result<ExperimentConfig, Error> {
    Ok(ExperimentConfig {
        sigma: sigma_or_default(g)?,
        n_list,
        samples: g.samples,
        seed: g.seed,
        mode,
        budget: g.budget,
        workers: Workers(g.workers),
    })
}
