//! Crate-wide error type.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("lattice of {n} sites with local dimension {d} exceeds the dense limit (n*log2(d) > 30)")]
    ShapeTooLarge { n: usize, d: usize },

    #[error("invalid lattice shape: need n >= 1 sites and local dimension d >= 2 (got n={n}, d={d})")]
    InvalidShape { n: usize, d: usize },

    #[error("site index {site} out of range for a lattice of {n} sites")]
    SiteOutOfRange { site: usize, n: usize },

    #[error("duplicate site index {site} in mask")]
    DuplicateSite { site: usize },

    #[error("mask does not belong to the expected lattice shape")]
    ShapeMismatch,

    #[error("mask {{{0}}} is not a subset of the sites the matrix is defined on")]
    NotASubset(String),

    #[error("masks overlap; disjoint subsystems required")]
    OverlappingMasks,

    #[error("mask is empty but a nonempty subsystem is required")]
    EmptyMask,

    #[error("subsystem must leave at least one site outside it")]
    SubsystemCoversLattice,

    #[error("state vector has squared norm {norm_sqr} (must be 1 within {tol})")]
    NotNormalized { norm_sqr: f64, tol: f64 },

    #[error("cannot normalize the zero vector")]
    ZeroVector,

    #[error("local ket has wrong dimension: expected {expected}, got {actual}")]
    LocalKetDimension { expected: usize, actual: usize },

    #[error("expected {expected} local kets (one per site), got {actual}")]
    LocalKetCount { expected: usize, actual: usize },

    #[error("vector/matrix dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian: max |M - M*| = {max_dev:.3e} exceeds {tol:.1e}")]
    NotHermitian { max_dev: f64, tol: f64 },

    #[error("matrix trace is {trace:.12} (must be 1 within {tol:.1e})")]
    TraceNotOne { trace: f64, tol: f64 },

    #[error("matrix is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e} below -{tol:.1e}")]
    NotPositiveSemidefinite { min_eigenvalue: f64, tol: f64 },

    #[error("eigendecomposition failed to meet the reconstruction contract: residual {residual:.3e}")]
    EigenFailure { residual: f64 },

    #[error("entropy-like value {value:.3e} is negative beyond tolerance {tol:.1e}")]
    NegativeEntropy { value: f64, tol: f64 },

    #[error("search policy incompatible with subsystem: {0}")]
    PolicyIncompatible(String),

    #[error("epsilon must be positive and finite (got {0})")]
    InvalidEpsilon(f64),

    #[error("quench times must be nonnegative and strictly increasing")]
    InvalidTimes,

    #[error("dense Hamiltonian build limited to n <= {max} sites (got {n})")]
    ChainTooLarge { n: usize, max: usize },

    #[error("chain needs at least 2 sites (got {0})")]
    ChainTooSmall(usize),

    #[error("harmonic number argument must be in [1, 2^30] (got {0})")]
    HarmonicOutOfRange(u64),

    #[error("average entropy requires a subsystem of at most half the chain: a <= n/2 (got a={a}, n={n})")]
    SubsystemTooLarge { a: u32, n: u32 },

    #[error("closed-form average undefined for these sizes: need a >= 1, b >= 1, a + b <= n (got a={a}, b={b}, n={n})")]
    InvalidSplit { a: u32, b: u32, n: u32 },

    #[error("exact rational evaluation limited to n <= {max} (got n={n})")]
    ExactPathTooLarge { n: u32, max: u32 },

    #[error("Monte Carlo estimate needs at least 2 samples (got {0})")]
    TooFewSamples(usize),

    #[error("block of {size} sites does not fit a lattice of {n} sites")]
    BlockTooLarge { size: usize, n: usize },
}
