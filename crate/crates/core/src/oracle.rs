//! Exhaustive scans over all upper-triangular matrices of a fixed size.
//!
//! A counter's bits are read as the upper-triangular entries in row-major
//! order: bit 0 is entry `[0][0]`, bit 1 is `[0][1]`, ..., bit `n-1` is
//! `[0][n-1]`, then `[1][1]`, and so on. Scans split the counter range into
//! contiguous chunks evaluated on a rayon pool and re-emit matches in
//! ascending counter order.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::gf2::Gf2Matrix;

/// Default largest size the brute-force oracle will scan.
pub const DEFAULT_ORACLE_BUDGET: usize = 6;
/// Largest budget accepted without acknowledging the cost.
pub const MAX_UNACKNOWLEDGED_BUDGET: usize = 7;
/// Largest budget accepted at all (`2^36` candidates).
pub const MAX_ORACLE_BUDGET: usize = 8;

/// Environment variable supplying the default oracle budget.
pub const ORACLE_BUDGET_ENV: &str = "GF2ROOTS_ORACLE_BUDGET";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("n = {n} exceeds the oracle budget {budget}; raise it with --oracle-budget")]
    OverBudget { n: usize, budget: usize },
    #[error(
        "oracle budget {budget} exceeds {MAX_UNACKNOWLEDGED_BUDGET}; pass --acknowledge-cost to allow it"
    )]
    CostNotAcknowledged { budget: usize },
    #[error("oracle budget {budget} exceeds the hard limit {MAX_ORACLE_BUDGET}")]
    BudgetTooLarge { budget: usize },
    #[error("could not build worker pool: {0}")]
    Pool(String),
}

/// Budget and parallelism for brute-force scans.
#[derive(Debug, Clone)]
pub struct OracleConfig {
    budget: usize,
    pool: Option<Arc<rayon::ThreadPool>>,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            budget: DEFAULT_ORACLE_BUDGET,
            pool: None,
        }
    }
}

impl OracleConfig {
    /// Validates a budget. Budgets above [`MAX_UNACKNOWLEDGED_BUDGET`] need
    /// `acknowledge_cost`.
    pub fn new(budget: usize, acknowledge_cost: bool) -> Result<Self, OracleError> {
        if budget > MAX_ORACLE_BUDGET {
            return Err(OracleError::BudgetTooLarge { budget });
        }
        if budget > MAX_UNACKNOWLEDGED_BUDGET && !acknowledge_cost {
            return Err(OracleError::CostNotAcknowledged { budget });
        }
        Ok(Self { budget, pool: None })
    }

    /// Runs scans on a dedicated pool of `workers` threads instead of the
    /// global rayon pool.
    pub fn with_workers(mut self, workers: usize) -> Result<Self, OracleError> {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| OracleError::Pool(e.to_string()))?;
        self.pool = Some(Arc::new(pool));
        Ok(self)
    }

    #[must_use]
    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn check(&self, n: usize) -> Result<(), OracleError> {
        if n == 0 {
            Err(OracleError::ZeroDimension)
        } else if n > self.budget {
            Err(OracleError::OverBudget {
                n,
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        match &self.pool {
            Some(pool) => pool.install(op),
            None => op(),
        }
    }

    fn threads(&self) -> usize {
        match &self.pool {
            Some(pool) => pool.current_num_threads(),
            None => rayon::current_num_threads(),
        }
    }
}

/// Maps counters to single-word rows of an upper-triangular `n × n` matrix.
#[derive(Debug, Clone)]
pub(crate) struct UpperLayout {
    n: usize,
    offsets: Vec<u32>,
}

impl UpperLayout {
    pub(crate) fn new(n: usize) -> Self {
        assert!((1..=MAX_ORACLE_BUDGET).contains(&n));
        let mut offsets = Vec::with_capacity(n);
        let mut acc = 0u32;
        for i in 0..n {
            offsets.push(acc);
            acc += (n - i) as u32;
        }
        Self { n, offsets }
    }

    pub(crate) fn entry_bits(&self) -> u32 {
        (self.n * (self.n + 1) / 2) as u32
    }

    #[inline]
    pub(crate) fn decode(&self, counter: u64, rows: &mut [u64]) {
        for (i, row) in rows.iter_mut().enumerate().take(self.n) {
            let width = self.n - i;
            *row = ((counter >> self.offsets[i]) & ((1u64 << width) - 1)) << i;
        }
    }

    /// Inverse of [`decode`](Self::decode) for upper-triangular input.
    #[cfg(test)]
    pub(crate) fn encode(&self, m: &Gf2Matrix) -> u64 {
        (0..self.n).fold(0u64, |acc, i| acc | ((m.row(i)[0] >> i) << self.offsets[i]))
    }
}

/// Rows of `U²` from the rows of `U`.
#[inline]
pub(crate) fn square_rows(rows: &[u64], out: &mut [u64]) {
    for (i, o) in out.iter_mut().enumerate().take(rows.len()) {
        let mut bits = rows[i];
        let mut acc = 0;
        while bits != 0 {
            acc ^= rows[bits.trailing_zeros() as usize];
            bits &= bits - 1;
        }
        *o = acc;
    }
}

/// Rows of `UᵀU` from the rows of upper-triangular `U`: row `i` is the XOR of
/// rows `k <= i` with `U[k][i] = 1`.
#[inline]
pub(crate) fn gram_rows(rows: &[u64], out: &mut [u64]) {
    for (i, o) in out.iter_mut().enumerate().take(rows.len()) {
        let mut acc = 0;
        for &row in rows.iter().take(i + 1) {
            if (row >> i) & 1 == 1 {
                acc ^= row;
            }
        }
        *o = acc;
    }
}

const BUFFERED_CHUNKS_PER_THREAD: u64 = 4;
const MAX_CHUNK: u64 = 1 << 16;

/// Ascending stream of counters whose decoded matrix satisfies a predicate.
pub(crate) struct CounterScan<P> {
    layout: UpperLayout,
    predicate: Arc<P>,
    config: OracleConfig,
    next: u64,
    end: u64,
    chunk: u64,
    buffer: VecDeque<u64>,
}

impl<P> CounterScan<P>
where
    P: Fn(&[u64]) -> bool + Send + Sync,
{
    pub(crate) fn new(n: usize, config: &OracleConfig, predicate: P) -> Self {
        let layout = UpperLayout::new(n);
        let end = 1u64 << layout.entry_bits();
        let chunk = (end / (config.threads() as u64 * 16)).clamp(1, MAX_CHUNK);
        Self {
            layout,
            predicate: Arc::new(predicate),
            config: config.clone(),
            next: 0,
            end,
            chunk,
            buffer: VecDeque::new(),
        }
    }

    pub(crate) fn layout(&self) -> &UpperLayout {
        &self.layout
    }

    fn refill(&mut self) {
        let batch = self.chunk * BUFFERED_CHUNKS_PER_THREAD * self.config.threads() as u64;
        let stop = self.end.min(self.next + batch);
        let starts: Vec<u64> = (self.next..stop).step_by(self.chunk as usize).collect();
        let (layout, predicate, chunk) = (&self.layout, &self.predicate, self.chunk);
        let found: Vec<Vec<u64>> = self.config.install(|| {
            starts
                .par_iter()
                .map(|&start| {
                    let mut rows = [0u64; MAX_ORACLE_BUDGET];
                    let rows = &mut rows[..layout.n];
                    (start..stop.min(start + chunk))
                        .filter(|&c| {
                            layout.decode(c, rows);
                            predicate(rows)
                        })
                        .collect()
                })
                .collect()
        });
        self.buffer.extend(found.into_iter().flatten());
        self.next = stop;
    }
}

impl<P> Iterator for CounterScan<P>
where
    P: Fn(&[u64]) -> bool + Send + Sync,
{
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.buffer.is_empty() && self.next < self.end {
            self.refill();
        }
        self.buffer.pop_front()
    }
}

/// Groups every upper-triangular `n × n` matrix by its Gram matrix `UᵀU`.
///
/// Each class lists its members in ascending counter order. Equivalent to
/// running the root-filtering oracle once per symmetric target, in a single
/// pass.
pub fn gram_classes(
    n: usize,
    config: &OracleConfig,
) -> Result<HashMap<Gf2Matrix, Vec<Gf2Matrix>>, OracleError> {
    config.check(n)?;
    let layout = UpperLayout::new(n);
    let end = 1u64 << layout.entry_bits();
    let chunk = MAX_CHUNK.min(end);
    let starts: Vec<u64> = (0..end).step_by(chunk as usize).collect();
    let grouped: HashMap<Vec<u64>, Vec<u64>> = config.install(|| {
        starts
            .par_iter()
            .map(|&start| {
                let mut local: HashMap<Vec<u64>, Vec<u64>> = HashMap::new();
                let mut rows = vec![0u64; n];
                let mut gram = vec![0u64; n];
                for c in start..end.min(start + chunk) {
                    layout.decode(c, &mut rows);
                    gram_rows(&rows, &mut gram);
                    local.entry(gram.clone()).or_default().push(c);
                }
                local
            })
            .reduce(HashMap::new, |mut a, b| {
                for (k, mut v) in b {
                    a.entry(k).or_default().append(&mut v);
                }
                a
            })
    });
    let mut rows = vec![0u64; n];
    Ok(grouped
        .into_iter()
        .map(|(gram, mut counters)| {
            counters.sort_unstable();
            let members = counters
                .into_iter()
                .map(|c| {
                    layout.decode(c, &mut rows);
                    Gf2Matrix::from_row_words(n, &rows).expect("layout rows fit one word")
                })
                .collect();
            (
                Gf2Matrix::from_row_words(n, &gram).expect("gram rows fit one word"),
                members,
            )
        })
        .collect())
}

/// Every symmetric `n × n` matrix, ordered by the counter of its upper
/// triangle.
pub fn all_symmetric(n: usize, config: &OracleConfig) -> Result<impl Iterator<Item = Gf2Matrix>, OracleError> {
    config.check(n)?;
    let layout = UpperLayout::new(n);
    let end = 1u64 << layout.entry_bits();
    let mut rows = vec![0u64; n];
    Ok((0..end).map(move |c| {
        layout.decode(c, &mut rows);
        Gf2Matrix::from_fn(n, |i, j| {
            let (a, b) = if i <= j { (i, j) } else { (j, i) };
            (rows[a] >> b) & 1 == 1
        })
    }))
}
