//! Exact-diagonalization toolkit for tracking where the information about a
//! small subsystem of a quantum spin system is stored.
//!
//! The central quantity is the *codification volume* of a subsystem `A`: the
//! number of sites of the smallest disjoint subsystem `B` whose mutual
//! information with `A` comes within `epsilon` of the maximal value
//! `I(A, complement of A)`. A product state has codification volume 0, a
//! Bell pair embedded in a larger chain has codification volume 1, and a
//! Haar-random state has codification volume close to half the system size.
//! Under quench dynamics of a non-integrable chain the volume grows from 0
//! towards the random-state value, which makes it a useful scrambling
//! diagnostic.
//!
//! The crate is organized bottom-up:
//!
//! - [`hilbert`]: states, site masks, and partial traces over a factorizable
//!   Hilbert space;
//! - [`spectral`]: Hermitian eigendecomposition and exact unitary evolution;
//! - [`entropy`]: von Neumann entropy, relative entropy, mutual information;
//! - [`codification`]: mutual-information profiles and the codification
//!   volume itself;
//! - [`dynamics`]: the transverse+longitudinal field Ising chain and quench
//!   trajectories;
//! - [`ensembles`]: seeded Haar sampling and Monte Carlo averages;
//! - [`page`]: closed-form Haar-ensemble averages (Page entropy and friends).
//!
//! All entropies are in natural-log units (nats) unless converted explicitly.
//! Everything is immutable after construction and safe to use from parallel
//! workers.

pub mod codification;
pub mod dynamics;
pub mod ensembles;
pub mod entropy;
pub mod error;
pub mod hilbert;
pub mod page;
pub mod spectral;

pub use codification::{codification_volume, cv_time_series, mi_profile, CvResult, MiProfile, SearchPolicy};
pub use dynamics::{build_hamiltonian, neel_state, run_quench, yplus_state, ChainHamiltonianParams, InitialState, QuenchSpec};
pub use ensembles::{mc_average_cv, mc_average_entropy, mc_average_mi, HaarSampler, McEstimate};
pub use entropy::{entanglement_entropy, mutual_information, relative_entropy, von_neumann_entropy, Nats};
pub use error::{Error, Result};
pub use hilbert::{embed_pair_singlet, partial_trace_dm, partial_trace_pure, product_state, DensityMatrix, LatticeShape, PureState, SiteMask};
pub use page::{harmonic, page_average_cv, page_average_entropy, page_average_entropy_exact, page_average_mi, PageCv, PageRegime};
pub use spectral::{eig_hermitian, hermitian_expectation, unitary_evolve, SpectralDecomposition};

/// Tolerance for Hermiticity checks (max entrywise `|M - M*|`).
pub const HERM_TOL: f64 = 1e-10;
/// Tolerance for unit-trace checks on density matrices.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues of density matrices may dip this far below zero before the
/// state is rejected; values in `[-PSD_TOL, 0)` are clamped to 0.
pub const PSD_TOL: f64 = 1e-10;
/// Tolerance on the squared norm of user-supplied state vectors.
pub const NORM_TOL: f64 = 1e-12;
/// Entropy-like quantities may come out this far below zero from rounding;
/// anything in `[-NATS_TOL, 0)` is clamped to 0.
pub const NATS_TOL: f64 = 1e-9;
/// Relative tolerance on the eigendecomposition reconstruction residual.
pub const RECON_TOL: f64 = 1e-9;
/// Tolerance on eigenvector orthonormality.
pub const ORTHO_TOL: f64 = 1e-10;
/// Weight below which a state is considered outside a support when deciding
/// whether a relative entropy diverges.
pub const SUPPORT_TOL: f64 = 1e-9;
