//! Named verification suites, each comparing independent routes to the same
//! facts at a configurable scale.
//!
//! Sizes that need the brute-force oracle are clamped to the oracle budget;
//! a note records the clamp.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::census::{cross_verify, recurrence_table, summand_range_check};
use crate::cholesky::{instructional_root, unique_root_full_rank};
use crate::gf2::Gf2Matrix;
use crate::oracle::{all_symmetric, gram_classes, OracleConfig};
use crate::rootsets::{brute_force_enumerate, canonical_bijection, shift_by_identity, RootFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Counts,
    Bijection,
    EmptinessBound,
    CholeskyLpn,
    SummandRange,
    Involution,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Self::Counts,
        Self::Bijection,
        Self::EmptinessBound,
        Self::CholeskyLpn,
        Self::SummandRange,
        Self::Involution,
    ];

    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::Counts => "counts",
            Self::Bijection => "bijection",
            Self::EmptinessBound => "emptiness-bound",
            Self::CholeskyLpn => "cholesky-lpn",
            Self::SummandRange => "summand-range",
            Self::Involution => "involution",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Self::ALL.iter().map(|s| s.name()).collect();
                format!("unknown suite {s:?} (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureDetail {
    pub n: usize,
    pub r: Option<usize>,
    pub expected: String,
    pub actual: String,
    pub message: String,
}

impl fmt::Display for FailureDetail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (n = {}", self.message, self.n)?;
        if let Some(r) = self.r {
            write!(f, ", r = {r}")?;
        }
        write!(f, "): expected {}, got {}", self.expected, self.actual)
    }
}

fn failure(
    message: impl Into<String>,
    n: usize,
    r: Option<usize>,
    expected: impl ToString,
    actual: impl ToString,
) -> FailureDetail {
    FailureDetail {
        n,
        r,
        expected: expected.to_string(),
        actual: actual.to_string(),
        message: message.into(),
    }
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub suite: Suite,
    pub failure: Option<FailureDetail>,
    pub notes: Vec<String>,
    pub elapsed: Duration,
}

impl SuiteOutcome {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub outcomes: Vec<SuiteOutcome>,
}

impl VerifyReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(SuiteOutcome::passed)
    }
}

type SuiteResult = Result<(), FailureDetail>;

/// Runs the given suites in order.
#[must_use]
pub fn run_suites(suites: &[Suite], max_n: usize, config: &OracleConfig) -> VerifyReport {
    VerifyReport {
        outcomes: suites.iter().map(|&s| run_suite(s, max_n, config)).collect(),
    }
}

#[must_use]
pub fn run_suite(suite: Suite, max_n: usize, config: &OracleConfig) -> SuiteOutcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    let max_n = max_n.max(1);
    let oracle_n = if suite == Suite::SummandRange {
        max_n
    } else {
        let clamped = max_n.min(config.budget());
        if clamped < max_n {
            notes.push(format!(
                "brute-force sizes clamped to the oracle budget {}",
                config.budget()
            ));
        }
        clamped
    };
    let result = match suite {
        Suite::Counts => counts(max_n, oracle_n, config),
        Suite::Bijection => bijection(oracle_n, config),
        Suite::EmptinessBound => emptiness_bound(oracle_n, config, &mut notes),
        Suite::CholeskyLpn => cholesky_lpn(oracle_n, config, &mut notes),
        Suite::SummandRange => summand_range(max_n),
        Suite::Involution => involution(oracle_n, config),
    };
    SuiteOutcome {
        suite,
        failure: result.err(),
        notes,
        elapsed: start.elapsed(),
    }
}

/// Minimum formula range for the counts suite.
pub const COUNTS_MIN_FORMULA_N: usize = 64;

fn counts(max_n: usize, oracle_n: usize, config: &OracleConfig) -> SuiteResult {
    let formula_n = max_n.max(COUNTS_MIN_FORMULA_N);
    let report = cross_verify(oracle_n, formula_n, config)
        .map_err(|e| failure(e.to_string(), oracle_n, None, "evaluation", "error"))?;
    match report.divergence {
        None => Ok(()),
        Some(d) => Err(failure(d.check.to_string(), d.n, d.r, d.expected, d.actual)),
    }
}

fn oracle_set(
    n: usize,
    family: RootFamily,
    config: &OracleConfig,
) -> Result<Vec<(Gf2Matrix, usize)>, FailureDetail> {
    Ok(brute_force_enumerate(n, family, config)
        .map_err(|e| failure(e.to_string(), n, None, "oracle run", "error"))?
        .map(|e| (e.matrix, e.rank))
        .collect())
}

fn bijection(max_n: usize, config: &OracleConfig) -> SuiteResult {
    for n in 1..=max_n {
        let b_all = oracle_set(n, RootFamily::SqrtZero, config)?;
        let c_all = oracle_set(n, RootFamily::CholeskyZero, config)?;
        for r in 0..=n {
            let b_stratum: BTreeSet<_> = b_all.iter().filter(|e| e.1 == r).map(|e| &e.0).collect();
            let c_stratum: BTreeSet<_> = c_all.iter().filter(|e| e.1 == r).map(|e| &e.0).collect();
            let pairs = canonical_bijection(n, r)
                .map_err(|e| failure(e.to_string(), n, Some(r), "bijection", "error"))?;
            let firsts: BTreeSet<_> = pairs.iter().map(|p| &p.b_element).collect();
            let seconds: BTreeSet<_> = pairs.iter().map(|p| &p.c_element).collect();
            if pairs.len() != b_stratum.len() {
                return Err(failure("pair count vs |B_n(r)|", n, Some(r), b_stratum.len(), pairs.len()));
            }
            if firsts != b_stratum {
                return Err(failure("first components vs B_n(r)", n, Some(r), b_stratum.len(), firsts.len()));
            }
            if seconds != c_stratum {
                return Err(failure("second components vs C_n(r)", n, Some(r), c_stratum.len(), seconds.len()));
            }
            if let Some(p) = pairs
                .iter()
                .find(|p| p.b_element.rank() != r || p.c_element.rank() != r)
            {
                return Err(failure(
                    "rank-preserving pair",
                    n,
                    Some(r),
                    r,
                    format!("({}, {})", p.b_element.rank(), p.c_element.rank()),
                ));
            }
        }
    }
    Ok(())
}

fn emptiness_bound(max_n: usize, config: &OracleConfig, notes: &mut Vec<String>) -> SuiteResult {
    for n in 1..=max_n {
        for family in [RootFamily::SqrtZero, RootFamily::CholeskyZero] {
            let set = oracle_set(n, family, config)?;
            if let Some((m, r)) = set.iter().find(|(_, r)| *r > n / 2) {
                return Err(failure(
                    format!("{family} element above rank {} ({m:?})", n / 2),
                    n,
                    Some(*r),
                    0,
                    1,
                ));
            }
            // C_n may carry diagonal ones (e.g. [[0,1],[0,1]]); only B_n is nilpotent
            let nilpotent = family == RootFamily::SqrtZero;
            if let Some((m, _)) = set.iter().find(|(m, _)| nilpotent && !m.has_zero_diagonal()) {
                return Err(failure(format!("{family} element with nonzero diagonal ({m:?})"), n, None, 0, 1));
            }
        }
    }
    if max_n >= 2 {
        let at_half = oracle_set(2, RootFamily::SqrtZero, config)?
            .iter()
            .filter(|(_, r)| *r == 1)
            .count();
        notes.push(format!(
            "the stricter bound \"empty whenever r >= n/2\" fails at (n, r) = (2, 1): |B_2(1)| = {at_half}; the bound r > floor(n/2) holds"
        ));
    }
    Ok(())
}

fn cholesky_lpn(max_n: usize, config: &OracleConfig, notes: &mut Vec<String>) -> SuiteResult {
    let table = recurrence_table(RootFamily::CholeskyZero, max_n)
        .map_err(|e| failure(e.to_string(), max_n, None, "table", "error"))?;
    let mut literal_reading_fails = None;
    for n in 1..=max_n {
        let classes: HashMap<Gf2Matrix, Vec<Gf2Matrix>> = gram_classes(n, config)
            .map_err(|e| failure(e.to_string(), n, None, "oracle run", "error"))?;
        let symmetric = all_symmetric(n, config)
            .map_err(|e| failure(e.to_string(), n, None, "oracle run", "error"))?;
        for m in symmetric {
            let roots = classes.get(&m).map_or(&[][..], Vec::as_slice);
            let rank = m.rank();
            if !m.is_lpn() {
                if rank == n && !roots.is_empty() {
                    return Err(failure(
                        format!("full-rank non-LPN matrix has a root ({m:?})"),
                        n,
                        Some(rank),
                        0,
                        roots.len(),
                    ));
                }
                continue;
            }
            let corank = n - rank;
            let expected = if corank == 0 { BigUint::one() } else { table.total(corank) };
            if BigUint::from(roots.len()) != expected {
                return Err(failure(format!("root count of {m:?}"), n, Some(rank), expected, roots.len()));
            }
            let inst = instructional_root(&m)
                .map_err(|e| failure(format!("instructional root of {m:?}: {e}"), n, Some(rank), "root", "error"))?;
            if !roots.contains(&inst.root) {
                return Err(failure(format!("instructional root of {m:?} among roots"), n, Some(rank), true, false));
            }
            if rank == n {
                let unique = unique_root_full_rank(&m)
                    .map_err(|e| failure(format!("unique root of {m:?}: {e}"), n, Some(rank), "root", "error"))?;
                if roots != [unique.root] {
                    return Err(failure(format!("unique root of {m:?}"), n, Some(rank), 1, roots.len()));
                }
            }
            if literal_reading_fails.is_none() && corank > 0 && table.get(n, corank).is_zero() {
                literal_reading_fails = Some((m.clone(), roots.len()));
            }
        }
    }
    if let Some((m, count)) = literal_reading_fails {
        notes.push(format!(
            "the rank-indexed reading |C_n(n-r)| gives 0 for [{}], which has {count} roots; the count |C_(n-r)| holds",
            m.to_row_strings().join(",")
        ));
    }
    Ok(())
}

fn summand_range(max_n: usize) -> SuiteResult {
    for n in 1..=max_n {
        summand_range_check(n).map_err(|v| failure("summand outside the stated range", v.n, None, 0, v.value))?;
    }
    Ok(())
}

fn involution(max_n: usize, config: &OracleConfig) -> SuiteResult {
    for n in 1..=max_n {
        let b = oracle_set(n, RootFamily::SqrtZero, config)?;
        let a = oracle_set(n, RootFamily::SqrtIdentity, config)?;
        let shifted: BTreeSet<Gf2Matrix> = b.iter().map(|(m, _)| shift_by_identity(m)).collect();
        let a_set: BTreeSet<Gf2Matrix> = a.iter().map(|(m, _)| m.clone()).collect();
        if shifted != a_set {
            return Err(failure("shifted B_n vs A_n", n, None, a_set.len(), shifted.len()));
        }
        if let Some((m, r)) = a.iter().find(|(_, r)| *r != n) {
            return Err(failure(format!("identity root of full rank ({m:?})"), n, Some(*r), n, r));
        }
        if b.len() != a.len() {
            return Err(failure("|A_n| vs |B_n|", n, None, b.len(), a.len()));
        }
    }
    Ok(())
}
