//! Upper-triangular roots over GF(2).
//!
//! Square roots of the identity (`A_n`), square roots of zero (`B_n`) and
//! Cholesky roots of zero (`C_n`): brute-force and structured enumeration,
//! exact counts by recurrence and closed form, an explicit rank-preserving
//! bijection `B_n(r) → C_n(r)`, and Cholesky decomposition of symmetric
//! matrices in LPN form.
//!
//! Count code is generic over the scalar type (see [`scalar`]); the aliases
//! below fix it to the usual choices.

pub mod census;
pub mod cholesky;
pub mod export;
pub mod gf2;
pub mod oracle;
pub mod rootsets;
pub mod scalar;
pub mod verify;

pub use gf2::{Gf2Error, Gf2Matrix, Gf2Vector, Orientation, SubspaceBasis};
pub use oracle::OracleConfig;
pub use rootsets::{BijectionPair, RootCensusEntry, RootFamily};

/// Arbitrary-precision count.
pub type Count = num_bigint::BigUint;
/// Arbitrary-precision signed closed-form term.
pub type SignedCount = num_bigint::BigInt;

pub type BigCountTable = census::CountTable<Count>;
pub type U64CountTable = census::CountTable<u64>;
pub type U128CountTable = census::CountTable<u128>;
