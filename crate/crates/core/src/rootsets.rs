//! The three families of upper-triangular roots over GF(2):
//!
//! * `A_n`: `U² = I` ([`RootFamily::SqrtIdentity`])
//! * `B_n`: `U² = 0` ([`RootFamily::SqrtZero`])
//! * `C_n`: `UᵀU = 0` ([`RootFamily::CholeskyZero`])
//!
//! Each family can be produced by the brute-force oracle or, for `B` and `C`,
//! by bordering every element of the previous size with a new last column
//! drawn from a null space. The same bordering drives an explicit
//! rank-preserving bijection `B_n(r) → C_n(r)`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use thiserror::Error;

use crate::census;
use crate::gf2::{Gf2Matrix, Gf2Vector};
use crate::oracle::{square_rows, gram_rows, CounterScan, OracleConfig, OracleError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RootFamily {
    SqrtIdentity,
    SqrtZero,
    CholeskyZero,
}

impl RootFamily {
    pub const ALL: [RootFamily; 3] = [Self::SqrtIdentity, Self::SqrtZero, Self::CholeskyZero];

    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            Self::SqrtIdentity => "sqrt-identity",
            Self::SqrtZero => "sqrt-zero",
            Self::CholeskyZero => "cholesky-zero",
        }
    }

    /// Membership test: `u` upper-triangular and satisfying the family's
    /// defining equation.
    #[must_use]
    pub fn contains(self, u: &Gf2Matrix) -> bool {
        if !u.is_upper_triangular() {
            return false;
        }
        let n = u.n();
        match self {
            Self::SqrtIdentity => u.multiply(u).expect("square") == Gf2Matrix::identity(n),
            Self::SqrtZero => u.multiply(u).expect("square").is_zero(),
            Self::CholeskyZero => u.transpose().multiply(u).expect("square").is_zero(),
        }
    }

    fn word_predicate(self) -> impl Fn(&[u64]) -> bool + Send + Sync {
        move |rows: &[u64]| {
            let mut out = [0u64; crate::oracle::MAX_ORACLE_BUDGET];
            let out = &mut out[..rows.len()];
            match self {
                Self::SqrtIdentity => {
                    square_rows(rows, out);
                    out.iter().enumerate().all(|(i, &r)| r == 1u64 << i)
                }
                Self::SqrtZero => {
                    square_rows(rows, out);
                    out.iter().all(|&r| r == 0)
                }
                Self::CholeskyZero => {
                    gram_rows(rows, out);
                    out.iter().all(|&r| r == 0)
                }
            }
        }
    }
}

impl fmt::Display for RootFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RootFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sqrt-identity" | "A" => Ok(Self::SqrtIdentity),
            "sqrt-zero" | "B" => Ok(Self::SqrtZero),
            "cholesky-zero" | "C" => Ok(Self::CholeskyZero),
            other => Err(format!(
                "unknown root family {other:?} (expected sqrt-identity, sqrt-zero or cholesky-zero)"
            )),
        }
    }
}

/// One enumerated matrix and its rank.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootCensusEntry {
    pub matrix: Gf2Matrix,
    pub rank: usize,
}

/// A matched pair from the canonical bijection `B_n(r) → C_n(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionPair {
    pub b_element: Gf2Matrix,
    pub c_element: Gf2Matrix,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("structured enumeration is capped at n = {STRUCTURED_MAX_N}; got n = {n}")]
    StructuredCap { n: usize },
    #[error(
        "structured enumeration at n = {n} needs about {estimate_bytes} bytes, over the {limit_bytes}-byte limit"
    )]
    MemoryEstimate {
        n: usize,
        estimate_bytes: u64,
        limit_bytes: u64,
    },
    #[error("rank {r} is out of range for n = {n}")]
    RankOutOfRange { n: usize, r: usize },
    #[error("extension classes differ in size at n = {n} (rank {rank}): {b_side} vs {c_side}")]
    UnbalancedExtensions {
        n: usize,
        rank: usize,
        b_side: usize,
        c_side: usize,
    },
    #[error("the structured recursion covers sqrt-zero and cholesky-zero only")]
    UnsupportedFamily,
}

/// Scans all `2^{n(n+1)/2}` upper-triangular matrices and yields family
/// members in ascending counter order.
pub fn brute_force_enumerate(
    n: usize,
    family: RootFamily,
    config: &OracleConfig,
) -> Result<impl Iterator<Item = RootCensusEntry>, EnumerationError> {
    config.check(n)?;
    let scan = CounterScan::new(n, config, family.word_predicate());
    let layout = scan.layout().clone();
    let mut rows = vec![0u64; n];
    Ok(scan.map(move |counter| {
        layout.decode(counter, &mut rows);
        let matrix = Gf2Matrix::from_row_words(n, &rows).expect("oracle rows fit one word");
        let rank = matrix.rank();
        RootCensusEntry { matrix, rank }
    }))
}

/// `u + I`. Exchanges `B_n` and `A_n`, since `(X + I)² = X² + I` in
/// characteristic 2.
#[must_use]
pub fn shift_by_identity(u: &Gf2Matrix) -> Gf2Matrix {
    u.add(&Gf2Matrix::identity(u.n())).expect("same size")
}

/// Largest size the structured enumerators accept.
pub const STRUCTURED_MAX_N: usize = 12;
/// Default ceiling on the estimated memory held by one structured run.
pub const DEFAULT_STRUCTURED_MEMORY_LIMIT: u64 = 4 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuredConfig {
    pub memory_limit_bytes: u64,
}

impl Default for StructuredConfig {
    fn default() -> Self {
        Self {
            memory_limit_bytes: DEFAULT_STRUCTURED_MEMORY_LIMIT,
        }
    }
}

/// Families with a bordering recursion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Bordering {
    SqrtZero,
    CholeskyZero,
}

/// New last columns (length `n + 1`, corner last) that keep `parent` inside
/// its family, ascending by packed value.
///
/// For `B`: `(v, 0)` with `v ∈ Null(B′)`. For `C`: `(w, c) ∈ Null(C̄)` where
/// `C̄ = [[C′ᵀ, 0], [1…1, 1]]`, which encodes `C′ᵀw = 0` and `wᵀw + c² = 0`.
fn extension_columns(kind: Bordering, parent: &Gf2Matrix) -> Vec<Gf2Vector> {
    let n = parent.n();
    let mut columns: Vec<Gf2Vector> = match kind {
        Bordering::SqrtZero => parent
            .null_space()
            .enumerate()
            .map(|v| {
                let mut col = Gf2Vector::zeros(n + 1);
                for i in 0..n {
                    col.set(i, v.get(i));
                }
                col
            })
            .collect(),
        Bordering::CholeskyZero => {
            let augmented = Gf2Matrix::from_fn(n + 1, |i, j| {
                if i == n {
                    true
                } else {
                    j < n && parent.get(j, i)
                }
            });
            augmented.null_space().enumerate().collect()
        }
    };
    columns.sort_unstable();
    columns
}

/// Extensions of one parent split into rank-preserving and rank-increasing,
/// each in ascending extension-column order.
fn split_extensions(
    kind: Bordering,
    parent: &Gf2Matrix,
    parent_rank: usize,
) -> (Vec<RootCensusEntry>, Vec<RootCensusEntry>) {
    extension_columns(kind, parent)
        .iter()
        .map(|col| {
            let matrix = parent.bordered(col);
            let rank = matrix.rank();
            RootCensusEntry { matrix, rank }
        })
        .partition(|e| e.rank == parent_rank)
}

fn extensions(kind: Bordering, parent: &RootCensusEntry) -> impl Iterator<Item = RootCensusEntry> {
    extension_columns(kind, &parent.matrix).into_iter().map({
        let parent = parent.matrix.clone();
        move |col| {
            let matrix = parent.bordered(&col);
            let rank = matrix.rank();
            RootCensusEntry { matrix, rank }
        }
    })
}

fn base_generation() -> Vec<RootCensusEntry> {
    vec![RootCensusEntry {
        matrix: Gf2Matrix::zero(1),
        rank: 0,
    }]
}

/// Bytes held while producing size `n`: the two previous generations.
fn memory_estimate(n: usize) -> u64 {
    let totals = census::recurrence_totals(n.saturating_sub(1).max(1));
    let per_entry = (std::mem::size_of::<RootCensusEntry>() + 8 * n) as f64;
    let held: f64 = totals
        .iter()
        .rev()
        .take(2)
        .map(|t| t.to_f64().unwrap_or(f64::INFINITY))
        .sum();
    let bytes = held * per_entry;
    if bytes >= u64::MAX as f64 {
        u64::MAX
    } else {
        bytes as u64
    }
}

fn check_structured(n: usize, config: &StructuredConfig) -> Result<(), EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::ZeroDimension);
    }
    if n > STRUCTURED_MAX_N {
        return Err(EnumerationError::StructuredCap { n });
    }
    let estimate_bytes = memory_estimate(n);
    if estimate_bytes > config.memory_limit_bytes {
        return Err(EnumerationError::MemoryEstimate {
            n,
            estimate_bytes,
            limit_bytes: config.memory_limit_bytes,
        });
    }
    Ok(())
}

/// Full generation of size `n` for `n >= 1`.
fn generation(kind: Bordering, n: usize) -> Vec<RootCensusEntry> {
    let mut current = base_generation();
    for _ in 2..=n {
        current = current
            .par_iter()
            .flat_map_iter(|parent| extensions(kind, parent))
            .collect();
    }
    current
}

/// Lazily yields the size-`n` generation from the stored size-`n-1` one.
pub struct StructuredStream {
    kind: Bordering,
    parents: std::vec::IntoIter<RootCensusEntry>,
    pending: VecDeque<RootCensusEntry>,
    base: Option<RootCensusEntry>,
}

impl StructuredStream {
    fn new(kind: Bordering, n: usize) -> Self {
        if n == 1 {
            return Self {
                kind,
                parents: Vec::new().into_iter(),
                pending: VecDeque::new(),
                base: base_generation().pop(),
            };
        }
        Self {
            kind,
            parents: generation(kind, n - 1).into_iter(),
            pending: VecDeque::new(),
            base: None,
        }
    }
}

impl Iterator for StructuredStream {
    type Item = RootCensusEntry;

    fn next(&mut self) -> Option<RootCensusEntry> {
        if let Some(base) = self.base.take() {
            return Some(base);
        }
        loop {
            if let Some(e) = self.pending.pop_front() {
                return Some(e);
            }
            let parent = self.parents.next()?;
            self.pending.extend(extensions(self.kind, &parent));
        }
    }
}

/// `B_n` by bordering: `B = [[B′, v], [0, 0]]` with `B′ ∈ B_{n-1}` and
/// `v ∈ Null(B′)`.
pub fn structured_enumerate_b(n: usize) -> Result<StructuredStream, EnumerationError> {
    structured_enumerate_b_with(n, &StructuredConfig::default())
}

pub fn structured_enumerate_b_with(
    n: usize,
    config: &StructuredConfig,
) -> Result<StructuredStream, EnumerationError> {
    check_structured(n, config)?;
    Ok(StructuredStream::new(Bordering::SqrtZero, n))
}

/// `C_n` by bordering: `C = [[C′, w], [0, c]]` with `C′ ∈ C_{n-1}` and
/// `(w, c) ∈ Null(C̄)`.
pub fn structured_enumerate_c(n: usize) -> Result<StructuredStream, EnumerationError> {
    structured_enumerate_c_with(n, &StructuredConfig::default())
}

pub fn structured_enumerate_c_with(
    n: usize,
    config: &StructuredConfig,
) -> Result<StructuredStream, EnumerationError> {
    check_structured(n, config)?;
    Ok(StructuredStream::new(Bordering::CholeskyZero, n))
}

/// Structured enumeration for any family; `A_n` is the shifted `B_n`.
pub fn structured_enumerate(
    n: usize,
    family: RootFamily,
    config: &StructuredConfig,
) -> Result<Box<dyn Iterator<Item = RootCensusEntry> + Send>, EnumerationError> {
    Ok(match family {
        RootFamily::SqrtZero => Box::new(structured_enumerate_b_with(n, config)?),
        RootFamily::CholeskyZero => Box::new(structured_enumerate_c_with(n, config)?),
        RootFamily::SqrtIdentity => Box::new(structured_enumerate_b_with(n, config)?.map(|e| {
            let matrix = shift_by_identity(&e.matrix);
            let rank = matrix.rank();
            RootCensusEntry { matrix, rank }
        })),
    })
}

#[derive(Debug, Clone)]
struct PairNode {
    b: Gf2Matrix,
    c: Gf2Matrix,
    rank: usize,
}

/// Pairs the extensions of `node.b` with those of `node.c`: the i-th
/// rank-preserving with the i-th rank-preserving, likewise for rank-increasing.
fn pair_children(node: &PairNode, n: usize) -> Result<Vec<PairNode>, EnumerationError> {
    let (b_keep, b_grow) = split_extensions(Bordering::SqrtZero, &node.b, node.rank);
    let (c_keep, c_grow) = split_extensions(Bordering::CholeskyZero, &node.c, node.rank);
    for (b_side, c_side, rank) in [
        (b_keep.len(), c_keep.len(), node.rank),
        (b_grow.len(), c_grow.len(), node.rank + 1),
    ] {
        if b_side != c_side {
            return Err(EnumerationError::UnbalancedExtensions {
                n,
                rank,
                b_side,
                c_side,
            });
        }
    }
    Ok(b_keep
        .into_iter()
        .zip(c_keep)
        .chain(b_grow.into_iter().zip(c_grow))
        .map(|(b, c)| PairNode {
            rank: b.rank,
            b: b.matrix,
            c: c.matrix,
        })
        .collect())
}

/// The canonical rank-preserving bijection `B_n(r) → C_n(r)`.
///
/// Built size by size from the pairing `[0] ↔ [0]`: a paired `(B′, C′)` of
/// rank `r′` has `2^{r′}` rank-preserving and `2^{n-1-r′} − 2^{r′}`
/// rank-increasing extensions on each side, matched in ascending order of
/// their new last column.
pub fn canonical_bijection(n: usize, r: usize) -> Result<Vec<BijectionPair>, EnumerationError> {
    canonical_bijection_with(n, r, &StructuredConfig::default())
}

pub fn canonical_bijection_with(
    n: usize,
    r: usize,
    config: &StructuredConfig,
) -> Result<Vec<BijectionPair>, EnumerationError> {
    check_structured(n, config)?;
    if r > n {
        return Err(EnumerationError::RankOutOfRange { n, r });
    }
    let mut level = vec![PairNode {
        b: Gf2Matrix::zero(1),
        c: Gf2Matrix::zero(1),
        rank: 0,
    }];
    for size in 2..=n {
        let last = size == n;
        let parents: Vec<PairNode> = if last {
            level
                .into_iter()
                .filter(|p| p.rank == r || p.rank + 1 == r)
                .collect()
        } else {
            level
        };
        let children: Vec<Vec<PairNode>> = parents
            .par_iter()
            .map(|p| pair_children(p, size))
            .collect::<Result<_, _>>()?;
        level = children.into_iter().flatten().collect();
    }
    Ok(level
        .into_iter()
        .filter(|p| p.rank == r)
        .map(|p| BijectionPair {
            b_element: p.b,
            c_element: p.c,
        })
        .collect())
}
