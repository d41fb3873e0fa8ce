//! Cholesky roots over GF(2): upper-triangular `U` with `UᵀU = M`.
//!
//! For a symmetric matrix in LPN form (leading principal minors 1 up to the
//! rank, 0 beyond) of rank `r`, every root has the block shape
//! `[[V₁₁, V₁₂], [0, W]]` where `V₁₁` is the unique root of the leading
//! `r × r` block, `V₁₂ = (V₁₁ᵀ)⁻¹ M₁₂`, and `W` is any Cholesky root of the
//! `(n−r) × (n−r)` zero matrix. Matrices outside LPN form are handled by the
//! brute-force oracle.

use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::One;
use thiserror::Error;

use crate::census::{recurrence_totals, CensusError};
use crate::gf2::{Gf2Error, Gf2Matrix, Gf2Vector, Orientation};
use crate::oracle::{gram_rows, CounterScan, OracleConfig, OracleError};
use crate::rootsets::{structured_enumerate_c, EnumerationError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CholeskyError {
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix has rank {rank} < {n}; a full-rank input is required")]
    RankDeficient { rank: usize, n: usize },
    #[error("zero pivot at elimination step {}", step + 1)]
    ZeroPivot { step: usize },
    #[error("matrix is not in LPN form")]
    NotLpn,
    #[error("Schur complement after {rank} pivot steps is nonzero")]
    NonzeroResidual { rank: usize },
    #[error("produced root does not reproduce the input")]
    VerificationFailed,
    #[error("root enumeration produced a duplicate")]
    DuplicateRoot,
    #[error(transparent)]
    Gf2(#[from] Gf2Error),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error(transparent)]
    Census(#[from] CensusError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CholeskyResult {
    pub root: Gf2Matrix,
    /// Rank of the input.
    pub rank: usize,
    /// `rootᵀ · root` was recomputed and compared with the input.
    pub residual_checked: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootMethod {
    Oracle,
    LpnParametrized,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootEnumeration {
    pub input: Gf2Matrix,
    pub roots: Vec<Gf2Matrix>,
    pub method: RootMethod,
}

/// `uᵀ · u == m`.
#[must_use]
pub fn is_root_of(u: &Gf2Matrix, m: &Gf2Matrix) -> bool {
    u.n() == m.n() && u.is_upper_triangular() && u.transpose().multiply(u).ok().as_ref() == Some(m)
}

fn require_symmetric(m: &Gf2Matrix) -> Result<(), CholeskyError> {
    if m.is_symmetric() {
        Ok(())
    } else {
        Err(CholeskyError::NotSymmetric)
    }
}

/// `steps` rounds of symmetric outer-product elimination. Returns the rows of
/// `U` produced so far (rows `>= steps` zero) and the remaining trailing block.
fn eliminate(m: &Gf2Matrix, steps: usize) -> Result<(Gf2Matrix, Option<Gf2Matrix>), CholeskyError> {
    let n = m.n();
    let mut work: Vec<Gf2Vector> = (0..n).map(|i| m.row_vector(i)).collect();
    let mut u_rows = vec![Gf2Vector::zeros(n); n];
    for k in 0..steps {
        if !work[k].get(k) {
            return Err(CholeskyError::ZeroPivot { step: k });
        }
        let pivot = work[k].clone();
        debug_assert!((0..k).all(|j| !pivot.get(j)));
        for (i, row) in work.iter_mut().enumerate().skip(k + 1) {
            if pivot.get(i) {
                row.xor_assign(&pivot);
            }
        }
        u_rows[k] = pivot;
    }
    let u = Gf2Matrix::from_row_vectors(&u_rows)?;
    let residual = (steps < n)
        .then(|| Gf2Matrix::from_fn(n - steps, |i, j| work[steps + i].get(steps + j)));
    Ok((u, residual))
}

/// The unique root of a symmetric, full-rank, LPN matrix.
pub fn unique_root_full_rank(m: &Gf2Matrix) -> Result<CholeskyResult, CholeskyError> {
    require_symmetric(m)?;
    let n = m.n();
    let rank = m.rank();
    if rank < n {
        return Err(CholeskyError::RankDeficient { rank, n });
    }
    let (root, _) = eliminate(m, n)?;
    if !is_root_of(&root, m) {
        return Err(CholeskyError::VerificationFailed);
    }
    Ok(CholeskyResult {
        root,
        rank,
        residual_checked: true,
    })
}

/// The root of an LPN matrix whose last `n − r` rows are zero.
pub fn instructional_root(m: &Gf2Matrix) -> Result<CholeskyResult, CholeskyError> {
    require_symmetric(m)?;
    if !m.is_lpn() {
        return Err(CholeskyError::NotLpn);
    }
    let n = m.n();
    let rank = m.rank();
    if rank == 0 {
        // LPN of rank 0 is the zero matrix
        return Ok(CholeskyResult {
            root: Gf2Matrix::zero(n),
            rank,
            residual_checked: true,
        });
    }
    let (_, residual) = eliminate(m, rank)?;
    if residual.is_some_and(|s| !s.is_zero()) {
        return Err(CholeskyError::NonzeroResidual { rank });
    }

    let leading = unique_root_full_rank(&m.leading_block(rank))?.root;
    let rhs: Vec<Gf2Vector> = (rank..n)
        .map(|j| Gf2Vector::from_bits(&(0..rank).map(|i| m.get(i, j)).collect::<Vec<_>>()))
        .collect();
    let coupling = leading.solve_upper_triangular(&rhs, Orientation::Transposed)?;
    let root = Gf2Matrix::from_fn(n, |i, j| {
        if i >= rank {
            false
        } else if j < rank {
            leading.get(i, j)
        } else {
            coupling[j - rank].get(i)
        }
    });
    if !is_root_of(&root, m) {
        return Err(CholeskyError::VerificationFailed);
    }
    Ok(CholeskyResult {
        root,
        rank,
        residual_checked: true,
    })
}

/// Brute force: every upper-triangular `U` with `UᵀU = m`, in counter order.
pub fn oracle_roots(
    m: &Gf2Matrix,
    config: &OracleConfig,
) -> Result<impl Iterator<Item = Gf2Matrix>, CholeskyError> {
    require_symmetric(m)?;
    let n = m.n();
    config.check(n)?;
    let target: Vec<u64> = (0..n).map(|i| m.row(i)[0]).collect();
    let scan = CounterScan::new(n, config, move |rows: &[u64]| {
        let mut gram = [0u64; crate::oracle::MAX_ORACLE_BUDGET];
        let gram = &mut gram[..rows.len()];
        gram_rows(rows, gram);
        gram == target.as_slice()
    });
    let layout = scan.layout().clone();
    let mut rows = vec![0u64; n];
    Ok(scan.map(move |c| {
        layout.decode(c, &mut rows);
        Gf2Matrix::from_row_words(n, &rows).expect("oracle rows fit one word")
    }))
}

/// Every root of `m`: parametrized over `C_{n−r}` when `m` is LPN, by brute
/// force otherwise. Each root is re-verified before it is returned.
pub fn all_roots(m: &Gf2Matrix, config: &OracleConfig) -> Result<RootEnumeration, CholeskyError> {
    require_symmetric(m)?;
    let (roots, method) = if m.is_lpn() {
        let base = instructional_root(m)?;
        let (n, rank) = (m.n(), base.rank);
        let roots = if rank == n {
            vec![base.root]
        } else {
            structured_enumerate_c(n - rank)?
                .map(|w| {
                    Gf2Matrix::from_fn(n, |i, j| {
                        if i < rank {
                            base.root.get(i, j)
                        } else {
                            j >= rank && w.matrix.get(i - rank, j - rank)
                        }
                    })
                })
                .collect()
        };
        (roots, RootMethod::LpnParametrized)
    } else {
        (oracle_roots(m, config)?.collect(), RootMethod::Oracle)
    };
    let mut seen = HashSet::with_capacity(roots.len());
    for u in &roots {
        if !is_root_of(u, m) {
            return Err(CholeskyError::VerificationFailed);
        }
        if !seen.insert(u) {
            return Err(CholeskyError::DuplicateRoot);
        }
    }
    Ok(RootEnumeration {
        input: m.clone(),
        roots,
        method,
    })
}

/// Number of roots: `|C_{n−r}|` for LPN input (1 when full rank), a
/// brute-force count otherwise.
pub fn root_count(m: &Gf2Matrix, config: &OracleConfig) -> Result<BigUint, CholeskyError> {
    require_symmetric(m)?;
    if m.is_lpn() {
        let base = instructional_root(m)?;
        let corank = m.n() - base.rank;
        return Ok(if corank == 0 {
            BigUint::one()
        } else {
            recurrence_totals(corank).pop().expect("nonempty totals")
        });
    }
    Ok(BigUint::from(oracle_roots(m, config)?.count()))
}

/// Whether any upper-triangular `U` has `UᵀU = m`.
pub fn has_root(m: &Gf2Matrix, config: &OracleConfig) -> Result<bool, CholeskyError> {
    require_symmetric(m)?;
    if m.is_lpn() {
        instructional_root(m)?;
        return Ok(true);
    }
    Ok(oracle_roots(m, config)?.next().is_some())
}
