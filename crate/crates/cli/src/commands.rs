use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use gf2_roots::census::{self, CensusError};
use gf2_roots::cholesky::{self, CholeskyError};
use gf2_roots::export::{self, CountRow, EntryRecord, PairRecord};
use gf2_roots::oracle::OracleError;
use gf2_roots::rootsets::{self, EnumerationError, StructuredConfig};
use gf2_roots::verify::{self, Suite};
use gf2_roots::{Gf2Error, Gf2Matrix, OracleConfig, RootCensusEntry, RootFamily};
use thiserror::Error;

pub const EXIT_OK: u8 = 0;
pub const EXIT_VERIFY_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NO_ROOT: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Census(#[from] CensusError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Cholesky(#[from] CholeskyError),
    #[error("input: {0}")]
    Input(#[from] Gf2Error),
    #[error("{0}")]
    Usage(String),
    #[error("no Cholesky root exists for this matrix")]
    NoRoot,
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            Self::NoRoot => EXIT_NO_ROOT,
            Self::Io(_) => EXIT_VERIFY_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

pub type CliResult = Result<u8, CliError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CensusEngine {
    Recurrence,
    ClosedForm,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum TableFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EnumerateEngine {
    Structured,
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum MatrixFormat {
    Json,
    MatrixText,
}

pub struct CensusArgs {
    pub max_n: usize,
    pub engine: CensusEngine,
    pub family: RootFamily,
    pub format: TableFormat,
    pub totals: bool,
}

pub fn census(out: &mut impl Write, args: &CensusArgs, oracle: &OracleConfig) -> CliResult {
    if args.max_n == 0 {
        return Err(CliError::Usage("--max-n must be at least 1".into()));
    }
    let rows: Vec<CountRow> = match args.engine {
        CensusEngine::ClosedForm => {
            // |A_n| = |B_n| = |C_n|, so one formula serves every family
            let totals = (1..=args.max_n)
                .map(census::unified_closed_form)
                .collect::<Result<Vec<_>, _>>()?;
            export::total_rows(&totals)
        }
        CensusEngine::Recurrence | CensusEngine::Oracle => {
            let table = match (args.engine, args.family) {
                (CensusEngine::Oracle, family) => census::oracle_table(family, args.max_n, oracle)?,
                (_, RootFamily::SqrtIdentity) => census::sqrt_identity_table(args.max_n)?,
                (_, family) => census::recurrence_table(family, args.max_n)?,
            };
            if args.totals {
                export::total_rows(&table.totals())
            } else {
                export::stratified_rows(&table)
            }
        }
    };
    match args.format {
        TableFormat::Csv => export::write_counts_csv(out, args.family, &rows)?,
        TableFormat::Json => export::write_counts_json(out, args.family, &rows)?,
    }
    Ok(EXIT_OK)
}

pub struct EnumerateArgs {
    pub family: RootFamily,
    pub n: usize,
    pub rank: Option<usize>,
    pub count_only: bool,
    pub engine: EnumerateEngine,
    pub format: MatrixFormat,
}

pub fn enumerate(out: &mut impl Write, args: &EnumerateArgs, oracle: &OracleConfig) -> CliResult {
    let stream: Box<dyn Iterator<Item = RootCensusEntry> + Send> = match args.engine {
        EnumerateEngine::Structured => {
            rootsets::structured_enumerate(args.n, args.family, &StructuredConfig::default())?
        }
        EnumerateEngine::Oracle => Box::new(rootsets::brute_force_enumerate(args.n, args.family, oracle)?),
    };
    let rank = args.rank;
    let mut stream = stream.filter(move |e| rank.is_none_or(|r| e.rank == r));
    if args.count_only {
        writeln!(out, "{}", stream.count())?;
        return Ok(EXIT_OK);
    }
    match args.format {
        MatrixFormat::Json => {
            for e in stream {
                export::write_json_line(out, &EntryRecord::from(&e))?;
            }
        }
        MatrixFormat::MatrixText => {
            if let Some(first) = stream.next() {
                write!(out, "{}", first.matrix)?;
                for e in stream {
                    write!(out, "\n{}", e.matrix)?;
                }
            }
        }
    }
    Ok(EXIT_OK)
}

pub fn bijection(out: &mut impl Write, n: usize, rank: usize) -> CliResult {
    for pair in rootsets::canonical_bijection(n, rank)? {
        export::write_json_line(out, &PairRecord::new(&pair, rank))?;
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CholeskyMode {
    One,
    All,
    Count,
}

pub fn read_matrix(input: &Path) -> Result<Gf2Matrix, CliError> {
    let text = if input.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(input)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", input.display())))?
    };
    Ok(text.parse()?)
}

fn write_roots(out: &mut impl Write, roots: &[Gf2Matrix], format: MatrixFormat) -> io::Result<()> {
    match format {
        MatrixFormat::Json => {
            for u in roots {
                let e = RootCensusEntry {
                    rank: u.rank(),
                    matrix: u.clone(),
                };
                export::write_json_line(out, &EntryRecord::from(&e))?;
            }
            Ok(())
        }
        MatrixFormat::MatrixText => export::write_matrix_blocks(out, roots),
    }
}

pub fn cholesky(
    out: &mut impl Write,
    m: &Gf2Matrix,
    mode: CholeskyMode,
    format: MatrixFormat,
    oracle: &OracleConfig,
) -> CliResult {
    if !m.is_symmetric() {
        return Err(CholeskyError::NotSymmetric.into());
    }
    match mode {
        CholeskyMode::Count => {
            writeln!(out, "{}", cholesky::root_count(m, oracle)?)?;
            return Ok(EXIT_OK);
        }
        CholeskyMode::All => {
            let roots = cholesky::all_roots(m, oracle)?.roots;
            if roots.is_empty() {
                return Err(CliError::NoRoot);
            }
            write_roots(out, &roots, format)?;
        }
        CholeskyMode::One => {
            let root = if m.is_lpn() {
                cholesky::instructional_root(m)?.root
            } else {
                cholesky::oracle_roots(m, oracle)?.next().ok_or(CliError::NoRoot)?
            };
            write_roots(out, &[root], format)?;
        }
    }
    Ok(EXIT_OK)
}

pub fn verify(out: &mut impl Write, suites: &[Suite], max_n: usize, oracle: &OracleConfig) -> CliResult {
    let suites = if suites.is_empty() { &Suite::ALL[..] } else { suites };
    let mut all_passed = true;
    for &suite in suites {
        let outcome = verify::run_suite(suite, max_n, oracle);
        let status = if outcome.passed() { "PASS" } else { "FAIL" };
        writeln!(out, "{status} {suite} ({:.3}s)", outcome.elapsed.as_secs_f64())?;
        if let Some(failure) = &outcome.failure {
            writeln!(out, "  first failure: {failure}")?;
            all_passed = false;
        }
        for note in &outcome.notes {
            writeln!(out, "  note: {note}")?;
        }
    }
    Ok(if all_passed { EXIT_OK } else { EXIT_VERIFY_FAILED })
}
