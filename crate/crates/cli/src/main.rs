mod commands;

use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use gf2_roots::oracle::{DEFAULT_ORACLE_BUDGET, ORACLE_BUDGET_ENV};
use gf2_roots::verify::Suite;
use gf2_roots::{OracleConfig, RootFamily};

use commands::{
    CensusArgs, CensusEngine, CholeskyMode, CliError, EnumerateArgs, EnumerateEngine, MatrixFormat,
    TableFormat,
};

/// Square roots of zero and of the identity, and Cholesky roots, over GF(2).
#[derive(Parser)]
#[command(name = "gf2roots", version)]
struct Cli {
    #[command(flatten)]
    oracle: OracleArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OracleArgs {
    /// Largest n the brute-force oracle will scan.
    #[arg(long, global = true, env = ORACLE_BUDGET_ENV, default_value_t = DEFAULT_ORACLE_BUDGET)]
    oracle_budget: usize,
    /// Allow budgets above 7 (up to 8).
    #[arg(long, global = true)]
    acknowledge_cost: bool,
    /// Worker threads for oracle scans (defaults to all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Rank-stratified counts or totals.
    Census {
        #[arg(long, default_value_t = 7)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = CensusEngine::Recurrence)]
        engine: CensusEngine,
        #[arg(long, default_value_t = RootFamily::CholeskyZero)]
        family: RootFamily,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        /// One total per n instead of per-rank rows.
        #[arg(long)]
        totals: bool,
    },
    /// Stream the members of a family.
    Enumerate {
        #[arg(long = "set")]
        family: RootFamily,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rank: Option<usize>,
        /// Print only the number of matching members.
        #[arg(long)]
        count_only: bool,
        #[arg(long, value_enum, default_value_t = EnumerateEngine::Structured)]
        engine: EnumerateEngine,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Json)]
        format: MatrixFormat,
    },
    /// Rank-preserving pairing of sqrt-zero with cholesky-zero members.
    Bijection {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        rank: usize,
    },
    /// Cholesky roots of a symmetric matrix read from a file or `-`.
    Cholesky {
        #[arg(long)]
        input: PathBuf,
        /// Every root.
        #[arg(long, conflicts_with = "count")]
        all: bool,
        /// Only the number of roots.
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value_t = MatrixFormat::Json)]
        format: MatrixFormat,
    },
    /// Run verification suites.
    Verify {
        /// Suites to run; all when omitted.
        #[arg(long = "suite", num_args = 1..)]
        suites: Vec<Suite>,
        #[arg(long, default_value_t = DEFAULT_ORACLE_BUDGET)]
        max_n: usize,
    },
}

fn oracle_config(args: &OracleArgs) -> Result<OracleConfig, CliError> {
    let config = OracleConfig::new(args.oracle_budget, args.acknowledge_cost)?;
    Ok(match args.workers {
        Some(0) => return Err(CliError::Usage("--workers must be at least 1".into())),
        Some(w) => config.with_workers(w)?,
        None => config,
    })
}

fn run(cli: Cli, out: &mut impl Write) -> Result<u8, CliError> {
    let oracle = oracle_config(&cli.oracle)?;
    match cli.command {
        Command::Census {
            max_n,
            engine,
            family,
            format,
            totals,
        } => commands::census(
            out,
            &CensusArgs {
                max_n,
                engine,
                family,
                format,
                totals,
            },
            &oracle,
        ),
        Command::Enumerate {
            family,
            n,
            rank,
            count_only,
            engine,
            format,
        } => commands::enumerate(
            out,
            &EnumerateArgs {
                family,
                n,
                rank,
                count_only,
                engine,
                format,
            },
            &oracle,
        ),
        Command::Bijection { n, rank } => commands::bijection(out, n, rank),
        Command::Cholesky {
            input,
            all,
            count,
            format,
        } => {
            let m = commands::read_matrix(&input)?;
            let mode = match (all, count) {
                (true, _) => CholeskyMode::All,
                (_, true) => CholeskyMode::Count,
                _ => CholeskyMode::One,
            };
            commands::cholesky(out, &m, mode, format, &oracle)
        }
        Command::Verify { suites, max_n } => commands::verify(out, &suites, max_n, &oracle),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = run(cli, &mut out);
    let flushed = out.flush();
    match result {
        Ok(code) => match flushed {
            Ok(()) => ExitCode::from(code),
            Err(e) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("gf2roots: {e}");
                ExitCode::from(commands::EXIT_VERIFY_FAILED)
            }
        },
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("gf2roots: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
