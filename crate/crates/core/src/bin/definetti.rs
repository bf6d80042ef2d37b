use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use definetti::harness::{
    self, config::parse_list, decays_by, format_float, run_converge, run_extremal, run_rate,
    run_sweep, run_verify, write_to, KRule, OutputFormat, SweepConfig,
};
use definetti::{Error, FamilySpec};

/// Exact finite de Finetti bounds for exchangeable binary vectors.
#[derive(Parser)]
#[command(name = "definetti", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Output {
    /// csv or json
    #[arg(long, default_value = "csv")]
    format: OutputFormat,
    /// Output file; standard output when omitted or `-`.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Divergence and total variation against their bounds over a grid.
    Sweep {
        /// JSON config file; flags below are ignored when given.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Family, e.g. `iid:p=0.3`, `polya:a=2;b=5`, `point_mass:frac=0.5`,
        /// `random_dirichlet:seed=7`. Repeatable.
        #[arg(long = "family")]
        families: Vec<String>,
        /// Comma-separated, strictly ascending sequence lengths.
        #[arg(long)]
        n_grid: Option<String>,
        /// `all`, a list `1,2,4`, or fractions `frac:0.25,0.5`.
        #[arg(long, default_value = "all")]
        k: String,
        /// Seed for `random_dirichlet` families given without one.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Engine against brute-force enumeration, plus identity suites.
    Verify {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// Number of random count vectors per n.
        #[arg(long, default_value_t = 5)]
        seeds: usize,
    },
    /// Log-log slope of total variation against n.
    Rate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "32,64,128,256,512,1024")]
        n_grid: String,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        output: Output,
    },
    /// Divergence of Pólya-urn prefixes to their finite mixtures as n grows.
    Converge {
        #[arg(long, default_value_t = 1.0)]
        a: f64,
        #[arg(long, default_value_t = 1.0)]
        b: f64,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value = "8,16,32,64,128,256,512")]
        n_grid: String,
        #[command(flatten)]
        output: Output,
    },
    /// Worst divergence-to-bound ratio over point masses and random counts.
    Extremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 64)]
        random: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

enum Outcome {
    Ok,
    Violation,
}

fn parse_family(text: &str, seed: Option<u64>) -> Result<FamilySpec, Error> {
    match (text.trim(), seed) {
        ("random_dirichlet", Some(seed)) => Ok(FamilySpec::RandomDirichlet { seed }),
        _ => text.parse(),
    }
}

fn parse_grid(text: &str) -> Result<Vec<usize>, Error> {
    parse_list(text).map_err(|m| Error::Config {
        field: "n_grid".into(),
        message: m,
    })
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Sweep {
            config,
            families,
            n_grid,
            k,
            seed,
            output,
        } => {
            let config = match config {
                Some(path) => SweepConfig::from_json_file(&path)?,
                None => SweepConfig {
                    families: families
                        .iter()
                        .map(|f| parse_family(f, seed))
                        .collect::<Result<_, _>>()?,
                    n_grid: parse_grid(n_grid.as_deref().unwrap_or(""))?,
                    k_rule: k.parse::<KRule>()?,
                    output_path: output.out,
                    format: output.format,
                },
            };
            let outcome = run_sweep(&config)?;
            write_to(&outcome.rows, config.format, config.output_path.as_deref())?;
            eprintln!(
                "sweep: {} rows, max ratio {}, {} violations",
                outcome.rows.len(),
                format_float(outcome.max_ratio()),
                outcome.violations
            );
            Ok(if outcome.violations == 0 {
                Outcome::Ok
            } else {
                Outcome::Violation
            })
        }
        Command::Verify { max_n, seeds } => {
            let summary = run_verify(max_n, seeds)?;
            for suite in &summary.suites {
                println!(
                    "{:<32} {:<4} checks={:<9} max_dev={:<24} tol={}",
                    suite.name,
                    if suite.passed() { "PASS" } else { "FAIL" },
                    suite.checks,
                    format_float(suite.max_deviation),
                    format_float(suite.tolerance),
                );
            }
            Ok(if summary.passed() {
                Outcome::Ok
            } else {
                Outcome::Violation
            })
        }
        Command::Rate {
            family,
            k,
            n_grid,
            seed,
            output,
        } => {
            let family = parse_family(&family, seed)?;
            let outcome = run_rate(&family, k, &parse_grid(&n_grid)?)?;
            write_to(&outcome.rows, output.format, output.out.as_deref())?;
            match outcome.slope {
                Some(slope) => eprintln!("rate: log-log slope {}", format_float(slope)),
                None => eprintln!("rate: degenerate fit (some tv is zero), slope omitted"),
            }
            Ok(Outcome::Ok)
        }
        Command::Converge {
            a,
            b,
            k,
            n_grid,
            output,
        } => {
            let rows = run_converge(a, b, k, &parse_grid(&n_grid)?)?;
            write_to(&rows, output.format, output.out.as_deref())?;
            let violations = rows
                .iter()
                .filter(|r| r.divergence_nats > r.theorem_bound)
                .count();
            if let Some(decays) = decays_by(&rows, 10.0) {
                eprintln!("converge: final < first / 10: {decays}");
            }
            Ok(if violations == 0 {
                Outcome::Ok
            } else {
                Outcome::Violation
            })
        }
        Command::Extremal { n, k, random, seed } => {
            let r = run_extremal(n, k, random, seed)?;
            println!("{}", serde_json::to_string_pretty(&r)?);
            Ok(if r.report.satisfies_theorem() {
                Outcome::Ok
            } else {
                Outcome::Violation
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = harness::init_thread_pool() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_config_error() { 2 } else { 1 })
        }
    }
}
