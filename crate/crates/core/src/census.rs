//! Exact counts of the root families.
//!
//! Three independent routes to `|B_n| = |C_n|`:
//!
//! * the rank-stratified recurrence
//!   `N_n(r) = N_{n-1}(r)·2^r + N_{n-1}(r-1)·(2^{n-r} − 2^{r-1})`, shared by
//!   `B` and `C`, with `N_1(0) = 1`;
//! * the even/odd closed forms for upper-triangular square roots of zero
//!   (Ekhad–Zeilberger), evaluated in their half-size parameter;
//! * a single unified sum over `j` in terms of `⌊n/2⌋` and `⌈n/2⌉`.
//!
//! All of them are generic over the count scalar; the `BigUint`/`BigInt`
//! entry points never overflow. [`cross_verify`] checks them against each
//! other and against the brute-force oracle.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

use crate::oracle::{OracleConfig, OracleError};
use crate::rootsets::{brute_force_enumerate, EnumerationError, RootFamily};
use crate::scalar::{checked_pow2, CountScalar, SignedScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("count overflowed the scalar type at n = {n}, r = {r}")]
    Overflow { n: usize, r: usize },
    #[error("closed-form evaluation overflowed the scalar type at n = {n}, j = {j}")]
    TermOverflow { n: usize, j: i64 },
    #[error("the recurrence covers sqrt-zero and cholesky-zero; got {0}")]
    UnsupportedFamily(RootFamily),
    #[error("closed form at n = {n} has a nonzero term with negative exponent (j = {j})")]
    FractionalTerm { n: usize, j: i64 },
    #[error("closed form at n = {n} summed to a negative total")]
    NegativeTotal { n: usize },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
}

/// Counts indexed by size `n` (from 1) and rank `r` (`0..=n`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable<C> {
    family: RootFamily,
    counts: Vec<Vec<C>>,
}

impl<C: CountScalar> CountTable<C> {
    /// An all-zero table for sizes `1..=max_n`.
    #[must_use]
    pub fn zeros(family: RootFamily, max_n: usize) -> Self {
        Self {
            family,
            counts: (1..=max_n).map(|n| vec![C::zero(); n + 1]).collect(),
        }
    }

    #[must_use]
    pub fn family(&self) -> RootFamily {
        self.family
    }

    #[must_use]
    pub fn max_n(&self) -> usize {
        self.counts.len()
    }

    /// `|family_n(r)|`; zero for `r > n`.
    ///
    /// # Panics
    /// Panics unless `1 <= n <= max_n`.
    #[must_use]
    pub fn get(&self, n: usize, r: usize) -> C {
        assert!(n >= 1 && n <= self.max_n(), "n = {n} outside table");
        self.counts[n - 1].get(r).cloned().unwrap_or_else(C::zero)
    }

    /// Overwrites one cell.
    ///
    /// # Panics
    /// Panics unless `1 <= n <= max_n` and `r <= n`.
    pub fn set(&mut self, n: usize, r: usize, value: C) {
        self.counts[n - 1][r] = value;
    }

    /// Row sum over all ranks.
    ///
    /// # Panics
    /// Panics on overflow of a fixed-width scalar.
    #[must_use]
    pub fn total(&self, n: usize) -> C {
        self.counts[n - 1]
            .iter()
            .try_fold(C::zero(), |acc, c| acc.checked_add(c))
            .expect("row total overflowed")
    }

    #[must_use]
    pub fn totals(&self) -> Vec<C> {
        (1..=self.max_n()).map(|n| self.total(n)).collect()
    }

    /// Cells `(n, r, count)` in `n`-then-`r` order, for all `r <= n`.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, &C)> {
        self.counts
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(r, c)| (i + 1, r, c)))
    }

    /// Ranks that can be populated at size `n`: `0..=⌊n/2⌋` for the
    /// zero-root families, `n` alone for square roots of the identity.
    #[must_use]
    pub fn populated_ranks(&self, n: usize) -> std::ops::RangeInclusive<usize> {
        match self.family {
            RootFamily::SqrtIdentity => n..=n,
            _ => 0..=n / 2,
        }
    }

    /// The first cell outside [`populated_ranks`](Self::populated_ranks)
    /// that holds a nonzero count.
    #[must_use]
    pub fn first_unexpected_nonzero(&self) -> Option<(usize, usize)> {
        self.cells()
            .find(|&(n, r, c)| !c.is_zero() && !self.populated_ranks(n).contains(&r))
            .map(|(n, r, _)| (n, r))
    }
}

/// The shared `B`/`C` recurrence in an arbitrary count scalar.
pub fn recurrence_table_in<C: CountScalar>(
    family: RootFamily,
    max_n: usize,
) -> Result<CountTable<C>, CensusError> {
    if family == RootFamily::SqrtIdentity {
        return Err(CensusError::UnsupportedFamily(family));
    }
    if max_n == 0 {
        return Err(CensusError::ZeroDimension);
    }
    let mut table = CountTable::zeros(family, max_n);
    table.set(1, 0, C::one());
    for n in 2..=max_n {
        for r in 0..=n {
            let overflow = || CensusError::Overflow { n, r };
            let mut count = C::zero();
            let same = table.get(n - 1, r);
            if !same.is_zero() {
                let term = same
                    .checked_mul(&checked_pow2(r).ok_or_else(overflow)?)
                    .ok_or_else(overflow)?;
                count = count.checked_add(&term).ok_or_else(overflow)?;
            }
            if r >= 1 {
                let lower = table.get(n - 1, r - 1);
                if !lower.is_zero() {
                    // nonzero N_{n-1}(r-1) forces 2(r-1) <= n-1, so the
                    // coefficient 2^{n-r} - 2^{r-1} is nonnegative
                    let coefficient = checked_pow2::<C>(n - r)
                        .ok_or_else(overflow)?
                        .checked_sub(&checked_pow2(r - 1).ok_or_else(overflow)?)
                        .ok_or_else(overflow)?;
                    let term = lower.checked_mul(&coefficient).ok_or_else(overflow)?;
                    count = count.checked_add(&term).ok_or_else(overflow)?;
                }
            }
            table.set(n, r, count);
        }
    }
    Ok(table)
}

/// The recurrence table in arbitrary precision.
pub fn recurrence_table(family: RootFamily, max_n: usize) -> Result<CountTable<BigUint>, CensusError> {
    recurrence_table_in(family, max_n)
}

/// `|B_n|` for `n = 1..=max_n` by the recurrence.
#[must_use]
pub fn recurrence_totals(max_n: usize) -> Vec<BigUint> {
    recurrence_table(RootFamily::SqrtZero, max_n.max(1))
        .expect("sqrt-zero recurrence is total")
        .totals()
}

/// `|A_n(r)|`: every square root of the identity is invertible, and
/// `X ↦ X + I` carries `B_n` onto `A_n`, so row `n` holds `|B_n|` at `r = n`.
pub fn sqrt_identity_table(max_n: usize) -> Result<CountTable<BigUint>, CensusError> {
    let b = recurrence_table(RootFamily::SqrtZero, max_n)?;
    let mut table = CountTable::zeros(RootFamily::SqrtIdentity, max_n);
    for n in 1..=max_n {
        table.set(n, n, b.total(n));
    }
    Ok(table)
}

/// Binomial coefficients by Pascal's rule, extended on demand.
#[derive(Debug, Clone)]
pub struct Binomials<S> {
    rows: Vec<Vec<S>>,
}

impl<S: CountScalar> Default for Binomials<S> {
    fn default() -> Self {
        Self {
            rows: vec![vec![S::one()]],
        }
    }
}

impl<S: CountScalar> Binomials<S> {
    /// `binom(n, k)`, zero for `k < 0` or `k > n`; `None` on overflow.
    pub fn get(&mut self, n: usize, k: i64) -> Option<S> {
        if k < 0 || k as u64 > n as u64 {
            return Some(S::zero());
        }
        while self.rows.len() <= n {
            let prev = self.rows.last().expect("row 0 present");
            let mut row = Vec::with_capacity(prev.len() + 1);
            row.push(S::one());
            for w in prev.windows(2) {
                row.push(w[0].checked_add(&w[1])?);
            }
            row.push(S::one());
            self.rows.push(row);
        }
        Some(self.rows[n][k as usize].clone())
    }
}

fn floor_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn ceil_div(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Indices `j` where `binom(size, center − 3j)` or `binom(size, center − 3j − 1)`
/// can be nonzero.
fn binomial_support(size: usize, center: usize) -> std::ops::RangeInclusive<i64> {
    let (size, center) = (size as i64, center as i64);
    ceil_div(center - size - 1, 3)..=floor_div(center, 3)
}

/// `(binom(size, center−3j) − binom(size, center−3j−1)) · 2^exponent`.
fn signed_term<S: SignedScalar>(
    binomials: &mut Binomials<S>,
    n: usize,
    size: usize,
    center: usize,
    j: i64,
    exponent: i64,
) -> Result<S, CensusError> {
    let overflow = || CensusError::TermOverflow { n, j };
    let k = center as i64 - 3 * j;
    let high = binomials.get(size, k).ok_or_else(overflow)?;
    let low = binomials.get(size, k - 1).ok_or_else(overflow)?;
    let coefficient = high.checked_sub(&low).ok_or_else(overflow)?;
    if coefficient.is_zero() {
        return Ok(S::zero());
    }
    if exponent < 0 {
        return Err(CensusError::FractionalTerm { n, j });
    }
    coefficient
        .checked_mul(&checked_pow2(exponent as usize).ok_or_else(overflow)?)
        .ok_or_else(overflow)
}

fn nonnegative<S: SignedScalar>(n: usize, total: S) -> Result<S, CensusError> {
    if total.is_negative() {
        Err(CensusError::NegativeTotal { n })
    } else {
        Ok(total)
    }
}

/// Even/odd closed forms for `|B_n|`, in half-size parameter `m`:
/// `n = 2m` uses exponent `m² − 3j² − j`, `n = 2m + 1` uses
/// `m² + m − 3j² − 2j`, both with binomials centered at `m`.
pub fn ekhad_closed_form_in<S: SignedScalar>(n: usize) -> Result<S, CensusError> {
    if n == 0 {
        return Err(CensusError::ZeroDimension);
    }
    let mut binomials = Binomials::default();
    let m = (n / 2) as i64;
    let mut total = S::zero();
    for j in binomial_support(n, n / 2) {
        let exponent = if n.is_multiple_of(2) {
            m * m - 3 * j * j - j
        } else {
            m * m + m - 3 * j * j - 2 * j
        };
        let term = signed_term(&mut binomials, n, n, n / 2, j, exponent)?;
        total = total
            .checked_add(&term)
            .ok_or(CensusError::TermOverflow { n, j })?;
    }
    nonnegative(n, total)
}

/// Exponent of the unified sum: `⌊n/2⌋⌈n/2⌉ − 3j² − (⌈n/2⌉ − ⌊n/2⌋ + 1)j`.
fn unified_exponent(n: usize, j: i64) -> i64 {
    let (lo, hi) = ((n / 2) as i64, n.div_ceil(2) as i64);
    lo * hi - 3 * j * j - (hi - lo + 1) * j
}

/// One summand of the unified sum, or `ZERO` outside binomial support.
fn unified_term_in<S: SignedScalar>(
    binomials: &mut Binomials<S>,
    n: usize,
    j: i64,
) -> Result<S, CensusError> {
    signed_term(binomials, n, n, n / 2, j, unified_exponent(n, j))
}

/// The unified sum for `|A_n| = |B_n| = |C_n|`.
pub fn unified_closed_form_in<S: SignedScalar>(n: usize) -> Result<S, CensusError> {
    if n == 0 {
        return Err(CensusError::ZeroDimension);
    }
    let mut binomials = Binomials::default();
    let mut total = S::zero();
    for j in binomial_support(n, n / 2) {
        let term = unified_term_in(&mut binomials, n, j)?;
        total = total
            .checked_add(&term)
            .ok_or(CensusError::TermOverflow { n, j })?;
    }
    nonnegative(n, total)
}

fn to_unsigned(n: usize, value: BigInt) -> Result<BigUint, CensusError> {
    value.to_biguint().ok_or(CensusError::NegativeTotal { n })
}

pub fn ekhad_closed_form(n: usize) -> Result<BigUint, CensusError> {
    to_unsigned(n, ekhad_closed_form_in::<BigInt>(n)?)
}

pub fn unified_closed_form(n: usize) -> Result<BigUint, CensusError> {
    to_unsigned(n, unified_closed_form_in::<BigInt>(n)?)
}

/// One summand of the unified sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormTerm {
    pub n: usize,
    pub j: i64,
    pub value: BigInt,
}

/// Summands of the unified sum for every `j` in `range`.
pub fn closed_form_terms(
    n: usize,
    range: impl IntoIterator<Item = i64>,
) -> Result<Vec<ClosedFormTerm>, CensusError> {
    if n == 0 {
        return Err(CensusError::ZeroDimension);
    }
    let mut binomials = Binomials::default();
    range
        .into_iter()
        .map(|j| {
            Ok(ClosedFormTerm {
                n,
                j,
                value: unified_term_in(&mut binomials, n, j)?,
            })
        })
        .collect()
}

/// The window `[−⌈(n+3)/6⌉, ⌊n/6⌋]` outside which every summand vanishes.
#[must_use]
pub fn stated_summand_range(n: usize) -> (i64, i64) {
    let n = n as i64;
    (-ceil_div(n + 3, 6), floor_div(n, 6))
}

/// A nonzero summand outside [`stated_summand_range`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("summand at n = {n}, j = {j} is {value}, outside the range [{lo}, {hi}]")]
pub struct SummandViolation {
    pub n: usize,
    pub j: i64,
    pub value: BigInt,
    pub lo: i64,
    pub hi: i64,
}

/// Confirms that every summand outside [`stated_summand_range`] is zero.
///
/// Checks the whole binomial support plus a guard band of three indices on
/// each side of the window.
pub fn summand_range_check(n: usize) -> Result<(), SummandViolation> {
    let (lo, hi) = stated_summand_range(n);
    let support = binomial_support(n, n / 2);
    let from = (*support.start()).min(lo - 3);
    let to = (*support.end()).max(hi + 3);
    let outside = (from..=to).filter(|j| *j < lo || *j > hi);
    let terms = closed_form_terms(n, outside).map_err(|_| SummandViolation {
        n,
        j: 0,
        value: BigInt::zero(),
        lo,
        hi,
    })?;
    match terms.into_iter().find(|t| !t.value.is_zero()) {
        Some(t) => Err(SummandViolation {
            n,
            j: t.j,
            value: t.value,
            lo,
            hi,
        }),
        None => Ok(()),
    }
}

/// Which comparison a [`Divergence`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    OracleVsRecurrence(RootFamily),
    IdentityVsZeroTotals,
    RecurrenceVsEkhad,
    RecurrenceVsUnified,
    SqrtZeroVsCholeskyZero,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OracleVsRecurrence(family) => write!(f, "oracle vs recurrence ({family})"),
            Self::IdentityVsZeroTotals => f.write_str("oracle |A_n| vs oracle |B_n|"),
            Self::RecurrenceVsEkhad => f.write_str("recurrence total vs even/odd closed form"),
            Self::RecurrenceVsUnified => f.write_str("recurrence total vs unified closed form"),
            Self::SqrtZeroVsCholeskyZero => f.write_str("B-table vs C-table"),
        }
    }
}

/// The first cell where two routes disagree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{check}: mismatch at n = {n}{}: expected {expected}, got {actual}", r.map(|r| format!(", r = {r}")).unwrap_or_default())]
pub struct Divergence {
    pub check: Check,
    pub n: usize,
    pub r: Option<usize>,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckSummary {
    pub check: Check,
    pub cells_compared: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossVerifyReport {
    pub max_oracle_n: usize,
    pub max_formula_n: usize,
    pub checks: Vec<CheckSummary>,
    pub divergence: Option<Divergence>,
}

impl CrossVerifyReport {
    #[must_use]
    pub fn passed(&self) -> bool {
        self.divergence.is_none()
    }
}

/// Every count the cross-check compares, gathered up front so the checks
/// themselves are pure comparisons.
#[derive(Debug, Clone)]
pub struct CensusEvidence {
    pub max_oracle_n: usize,
    pub max_formula_n: usize,
    pub oracle: BTreeMap<RootFamily, CountTable<BigUint>>,
    pub b_table: CountTable<BigUint>,
    pub c_table: CountTable<BigUint>,
    pub ekhad: Vec<BigUint>,
    pub unified: Vec<BigUint>,
}

/// Counts every family member by brute force, stratified by rank.
pub fn oracle_table(
    family: RootFamily,
    max_n: usize,
    config: &OracleConfig,
) -> Result<CountTable<BigUint>, CensusError> {
    let mut table = CountTable::zeros(family, max_n);
    for n in 1..=max_n {
        let mut per_rank = vec![0u64; n + 1];
        for entry in brute_force_enumerate(n, family, config)? {
            per_rank[entry.rank] += 1;
        }
        for (r, c) in per_rank.into_iter().enumerate() {
            table.set(n, r, BigUint::from(c));
        }
    }
    Ok(table)
}

impl CensusEvidence {
    pub fn gather(
        max_oracle_n: usize,
        max_formula_n: usize,
        config: &OracleConfig,
    ) -> Result<Self, CensusError> {
        if max_oracle_n == 0 || max_formula_n == 0 {
            return Err(CensusError::ZeroDimension);
        }
        config.check(max_oracle_n)?;
        let table_n = max_oracle_n.max(max_formula_n);
        let oracle = RootFamily::ALL
            .iter()
            .map(|&f| Ok((f, oracle_table(f, max_oracle_n, config)?)))
            .collect::<Result<_, CensusError>>()?;
        Ok(Self {
            max_oracle_n,
            max_formula_n,
            oracle,
            b_table: recurrence_table(RootFamily::SqrtZero, table_n)?,
            c_table: recurrence_table(RootFamily::CholeskyZero, table_n)?,
            ekhad: (1..=max_formula_n).map(ekhad_closed_form).collect::<Result<_, _>>()?,
            unified: (1..=max_formula_n).map(unified_closed_form).collect::<Result<_, _>>()?,
        })
    }

    /// Runs every comparison and reports the first divergent cell.
    #[must_use]
    pub fn verify(&self) -> CrossVerifyReport {
        let mut checks = Vec::new();
        let divergence = self.run_checks(&mut checks).err();
        CrossVerifyReport {
            max_oracle_n: self.max_oracle_n,
            max_formula_n: self.max_formula_n,
            checks,
            divergence,
        }
    }

    fn run_checks(&self, checks: &mut Vec<CheckSummary>) -> Result<(), Divergence> {
        fn compare(
            check: Check,
            n: usize,
            r: Option<usize>,
            expected: &BigUint,
            actual: &BigUint,
        ) -> Result<(), Divergence> {
            if expected == actual {
                Ok(())
            } else {
                Err(Divergence {
                    check,
                    n,
                    r,
                    expected: expected.to_string(),
                    actual: actual.to_string(),
                })
            }
        }

        for (family, recurrence) in [
            (RootFamily::SqrtZero, &self.b_table),
            (RootFamily::CholeskyZero, &self.c_table),
        ] {
            let check = Check::OracleVsRecurrence(family);
            let oracle = &self.oracle[&family];
            let mut cells = 0;
            for n in 1..=self.max_oracle_n {
                for r in 0..=n {
                    compare(check, n, Some(r), &recurrence.get(n, r), &oracle.get(n, r))?;
                    cells += 1;
                }
            }
            checks.push(CheckSummary { check, cells_compared: cells });
        }

        let check = Check::IdentityVsZeroTotals;
        let (a, b) = (&self.oracle[&RootFamily::SqrtIdentity], &self.oracle[&RootFamily::SqrtZero]);
        for n in 1..=self.max_oracle_n {
            compare(check, n, None, &b.total(n), &a.total(n))?;
        }
        checks.push(CheckSummary { check, cells_compared: self.max_oracle_n });

        for (check, formula) in [
            (Check::RecurrenceVsEkhad, &self.ekhad),
            (Check::RecurrenceVsUnified, &self.unified),
        ] {
            for (i, value) in formula.iter().enumerate() {
                compare(check, i + 1, None, &self.b_table.total(i + 1), value)?;
            }
            checks.push(CheckSummary { check, cells_compared: formula.len() });
        }

        let check = Check::SqrtZeroVsCholeskyZero;
        let mut cells = 0;
        for n in 1..=self.b_table.max_n() {
            for r in 0..=n {
                compare(check, n, Some(r), &self.b_table.get(n, r), &self.c_table.get(n, r))?;
                cells += 1;
            }
        }
        checks.push(CheckSummary { check, cells_compared: cells });
        Ok(())
    }
}

/// Gathers [`CensusEvidence`] and verifies it.
pub fn cross_verify(
    max_oracle_n: usize,
    max_formula_n: usize,
    config: &OracleConfig,
) -> Result<CrossVerifyReport, CensusError> {
    Ok(CensusEvidence::gather(max_oracle_n, max_formula_n, config)?.verify())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn recurrence_totals_small() {
        let totals: Vec<u64> = recurrence_table_in::<u64>(RootFamily::SqrtZero, 7)
            .unwrap()
            .totals();
        assert_eq!(totals, vec![1, 2, 6, 28, 192, 1952, 28800]);
    }

    #[test]
    fn recurrence_row_four() {
        let t = recurrence_table_in::<u32>(RootFamily::CholeskyZero, 4).unwrap();
        assert_eq!((0..=4).map(|r| t.get(4, r)).collect::<Vec<_>>(), vec![1, 17, 10, 0, 0]);
    }

    #[test]
    fn rank_zero_is_always_one() {
        let t = recurrence_table(RootFamily::SqrtZero, 30).unwrap();
        for n in 1..=30 {
            assert_eq!(t.get(n, 0), BigUint::from(1u8));
        }
        assert_eq!(t.first_unexpected_nonzero(), None);
    }

    #[test]
    fn fixed_width_overflow_is_reported() {
        let err = recurrence_table_in::<u8>(RootFamily::SqrtZero, 8).unwrap_err();
        assert!(matches!(err, CensusError::Overflow { .. }));
        assert!(matches!(
            recurrence_table_in::<u64>(RootFamily::SqrtIdentity, 3),
            Err(CensusError::UnsupportedFamily(RootFamily::SqrtIdentity))
        ));
    }

    #[test]
    fn ekhad_examples() {
        assert_eq!(ekhad_closed_form_in::<i64>(2).unwrap(), 2);
        assert_eq!(ekhad_closed_form_in::<i64>(5).unwrap(), 192);
        assert_eq!(ekhad_closed_form_in::<i64>(6).unwrap(), 1952);
    }

    #[test]
    fn individual_terms() {
        // n = 5: j = 0 → +320, j = −1 → −128
        let t = closed_form_terms(5, [-1, 0]).unwrap();
        assert_eq!(t[0].value, BigInt::from(-128));
        assert_eq!(t[1].value, BigInt::from(320));
        // n = 6: j = 0 → +2560, j = 1 → +32, j = −1 → −640
        let t = closed_form_terms(6, [-1, 0, 1, 2, -2]).unwrap();
        let values: Vec<i64> = t.iter().map(|t| t.value.to_i64().unwrap()).collect();
        assert_eq!(values, vec![-640, 2560, 32, 0, 0]);
    }

    #[test]
    fn unified_examples() {
        assert_eq!(unified_closed_form(1).unwrap(), BigUint::from(1u8));
        assert_eq!(unified_closed_form(4).unwrap(), BigUint::from(28u8));
        assert_eq!(unified_closed_form(7).unwrap(), BigUint::from(28800u32));
    }

    #[test]
    fn closed_forms_overflow_in_small_scalars() {
        assert!(matches!(
            unified_closed_form_in::<i8>(7),
            Err(CensusError::TermOverflow { n: 7, .. })
        ));
    }

    #[test]
    fn summand_window() {
        assert_eq!(stated_summand_range(6), (-2, 1));
        assert_eq!(stated_summand_range(1), (-1, 0));
        assert!(summand_range_check(1).is_ok());
        assert!(summand_range_check(6).is_ok());
        let n1 = closed_form_terms(1, -3..=3).unwrap();
        let nonzero: Vec<i64> = n1.iter().filter(|t| !t.value.is_zero()).map(|t| t.j).collect();
        assert_eq!(nonzero, vec![0]);
    }

    #[test]
    fn binomials_outside_support_vanish() {
        let mut b = Binomials::<i64>::default();
        assert_eq!(b.get(6, -1), Some(0));
        assert_eq!(b.get(6, 7), Some(0));
        assert_eq!(b.get(6, 3), Some(20));
    }

    #[test]
    fn identity_table_sits_on_the_diagonal() {
        let a = sqrt_identity_table(5).unwrap();
        assert_eq!(a.get(5, 5), BigUint::from(192u32));
        assert_eq!(a.get(5, 4), BigUint::zero());
        assert_eq!(a.first_unexpected_nonzero(), None);
    }

    #[test]
    fn cross_verify_trivial_and_corrupted() {
        let config = OracleConfig::default();
        let report = cross_verify(1, 1, &config).unwrap();
        assert!(report.passed());
        assert_eq!(report.checks.len(), 6);

        let mut evidence = CensusEvidence::gather(4, 10, &config).unwrap();
        assert!(evidence.verify().passed());
        evidence.c_table.set(3, 1, BigUint::from(6u8));
        let d = evidence.verify().divergence.unwrap();
        assert_eq!(d.check, Check::OracleVsRecurrence(RootFamily::CholeskyZero));
        assert_eq!((d.n, d.r), (3, Some(1)));
        assert_eq!((d.expected.as_str(), d.actual.as_str()), ("6", "5"));
    }
}
