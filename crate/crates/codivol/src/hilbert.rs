//! States, subsystems, and partial traces over a factorizable Hilbert space.
//!
//! A lattice of `n` sites with local dimension `d` carries a `d^n`-dimensional
//! Hilbert space. Basis states are flattened with **site 0 as the most
//! significant digit**: the basis index of a product basis state is
//! `sum_s digit(s) * d^(n-1-s)`. Every routine in the crate shares this
//! convention, so reduced density matrices of product states come out as
//! tensor products of the kept local projectors in ascending-site order.
//!
//! Partial traces are computed by digit-mask index arithmetic directly on the
//! amplitude vector (cost `d^n * d^m` for an `m`-site reduction); the full
//! `d^n x d^n` projector is never materialized.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::{HERM_TOL, NORM_TOL, PSD_TOL, TRACE_TOL};

/// Number of sites and local dimension of the lattice.
///
/// The constructor rejects shapes whose total dimension would not fit
/// comfortably in a dense vector (`n * log2(d) > 30`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeShape {
    n: usize,
    d: usize,
}

impl LatticeShape {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n == 0 || d < 2 {
            return Err(Error::InvalidShape { n, d });
        }
        if n as f64 * (d as f64).log2() > 30.0 + 1e-9 {
            return Err(Error::ShapeTooLarge { n, d });
        }
        Ok(Self { n, d })
    }

    /// Chain of `n` two-level sites.
    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(n, 2)
    }

    pub fn n_sites(&self) -> usize {
        self.n
    }

    pub fn local_dim(&self) -> usize {
        self.d
    }

    /// Total Hilbert-space dimension `d^n`.
    pub fn dim(&self) -> usize {
        self.d.pow(self.n as u32)
    }

    /// Stride of `site` in the flattened index (site 0 most significant).
    pub fn stride(&self, site: usize) -> usize {
        self.d.pow((self.n - 1 - site) as u32)
    }

    /// Digit of `site` in the flattened basis `index`.
    pub fn digit(&self, index: usize, site: usize) -> usize {
        (index / self.stride(site)) % self.d
    }
}

/// An ordered set of distinct site indices selecting a subsystem (and, with
/// it, the operator algebra supported there).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteMask {
    shape: LatticeShape,
    sites: Vec<usize>,
}

impl SiteMask {
    /// Build a mask from any iterable of site indices; the indices are sorted
    /// and must be distinct and in range.
    pub fn new(shape: LatticeShape, sites: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut sites: Vec<usize> = sites.into_iter().collect();
        sites.sort_unstable();
        for pair in sites.windows(2) {
            if pair[0] == pair[1] {
                return Err(Error::DuplicateSite { site: pair[0] });
            }
        }
        if let Some(&s) = sites.last() {
            if s >= shape.n_sites() {
                return Err(Error::SiteOutOfRange { site: s, n: shape.n_sites() });
            }
        }
        Ok(Self { shape, sites })
    }

    pub fn empty(shape: LatticeShape) -> Self {
        Self { shape, sites: Vec::new() }
    }

    pub fn full(shape: LatticeShape) -> Self {
        Self { shape, sites: (0..shape.n_sites()).collect() }
    }

    pub fn single(shape: LatticeShape, site: usize) -> Result<Self> {
        Self::new(shape, [site])
    }

    pub fn shape(&self) -> LatticeShape {
        self.shape
    }

    /// Site indices in strictly increasing order.
    pub fn sites(&self) -> &[usize] {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sites.is_empty()
    }

    pub fn contains(&self, site: usize) -> bool {
        self.sites.binary_search(&site).is_ok()
    }

    /// All sites not in this mask.
    pub fn complement(&self) -> SiteMask {
        let sites = (0..self.shape.n_sites()).filter(|s| !self.contains(*s)).collect();
        Self { shape: self.shape, sites }
    }

    pub fn is_disjoint(&self, other: &SiteMask) -> bool {
        self.sites.iter().all(|s| !other.contains(*s))
    }

    pub fn is_subset_of(&self, other: &SiteMask) -> bool {
        self.sites.iter().all(|s| other.contains(*s))
    }

    /// Union of two disjoint masks on the same lattice.
    pub fn union_disjoint(&self, other: &SiteMask) -> Result<SiteMask> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch);
        }
        if !self.is_disjoint(other) {
            return Err(Error::OverlappingMasks);
        }
        SiteMask::new(self.shape, self.sites.iter().chain(other.sites.iter()).copied())
    }

    /// Subsystem dimension `d^m`.
    pub fn subdim(&self) -> usize {
        self.shape.local_dim().pow(self.sites.len() as u32)
    }
}

impl std::fmt::Display for SiteMask {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for s in &self.sites {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        Ok(())
    }
}

/// Normalized pure state over the full lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    shape: LatticeShape,
    amplitudes: DVector<Complex64>,
}

impl PureState {
    /// Wrap an amplitude vector, rejecting it unless its squared norm is 1
    /// within [`NORM_TOL`].
    pub fn new(shape: LatticeShape, amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.len() != shape.dim() {
            return Err(Error::DimensionMismatch { expected: shape.dim(), actual: amplitudes.len() });
        }
        let norm_sqr = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm_sqr, tol: NORM_TOL });
        }
        Ok(Self { shape, amplitudes })
    }

    /// Wrap an amplitude vector after normalizing it; rejects the zero vector.
    pub fn normalized(shape: LatticeShape, amplitudes: DVector<Complex64>) -> Result<Self> {
        if amplitudes.len() != shape.dim() {
            return Err(Error::DimensionMismatch { expected: shape.dim(), actual: amplitudes.len() });
        }
        let norm_sqr = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>();
        if norm_sqr <= f64::MIN_POSITIVE {
            return Err(Error::ZeroVector);
        }
        let inv = 1.0 / norm_sqr.sqrt();
        Ok(Self { shape, amplitudes: amplitudes * Complex64::new(inv, 0.0) })
    }

    /// The computational basis state with the given flattened index.
    pub fn basis_state(shape: LatticeShape, index: usize) -> Result<Self> {
        if index >= shape.dim() {
            return Err(Error::DimensionMismatch { expected: shape.dim(), actual: index });
        }
        let mut amplitudes = DVector::zeros(shape.dim());
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { shape, amplitudes })
    }

    /// Internal constructor for amplitudes produced by exact arithmetic; the
    /// 1e-12 gate would be too strict for long evolution chains, whose norm
    /// drift is bounded separately.
    pub(crate) fn from_vector_unchecked(shape: LatticeShape, amplitudes: DVector<Complex64>) -> Self {
        debug_assert_eq!(amplitudes.len(), shape.dim());
        debug_assert!((amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>() - 1.0).abs() < 1e-8);
        Self { shape, amplitudes }
    }

    pub fn shape(&self) -> LatticeShape {
        self.shape
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Dense Hermitian, unit-trace, positive-semidefinite operator on a
/// subsystem. The matrix is not tied to a particular site set; operations
/// that need one take a [`SiteMask`] alongside.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    elements: DMatrix<Complex64>,
}

impl DensityMatrix {
    /// Validate and wrap a raw matrix. Checks Hermiticity within
    /// [`HERM_TOL`], unit trace within [`TRACE_TOL`], and positive
    /// semidefiniteness within [`PSD_TOL`] (the last via a full
    /// eigendecomposition, so prefer the partial-trace constructors in hot
    /// paths).
    pub fn new(elements: DMatrix<Complex64>) -> Result<Self> {
        let dm = Self::new_reduced(elements)?;
        let min_eig = dm
            .elements
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -PSD_TOL {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: min_eig, tol: PSD_TOL });
        }
        Ok(dm)
    }

    /// Cheap checks only (Hermiticity and trace); used for matrices that are
    /// positive semidefinite by construction, e.g. partial traces of pure
    /// states.
    pub(crate) fn new_reduced(elements: DMatrix<Complex64>) -> Result<Self> {
        if elements.nrows() != elements.ncols() {
            return Err(Error::NotSquare { rows: elements.nrows(), cols: elements.ncols() });
        }
        let dim = elements.nrows();
        let mut max_dev = 0.0f64;
        for i in 0..dim {
            for j in 0..=i {
                let dev = (elements[(i, j)] - elements[(j, i)].conj()).norm();
                max_dev = max_dev.max(dev);
            }
        }
        if max_dev > HERM_TOL {
            return Err(Error::NotHermitian { max_dev, tol: HERM_TOL });
        }
        let trace: Complex64 = (0..dim).map(|i| elements[(i, i)]).sum();
        if (trace.re - 1.0).abs() > TRACE_TOL || trace.im.abs() > TRACE_TOL {
            return Err(Error::TraceNotOne { trace: trace.re, tol: TRACE_TOL });
        }
        Ok(Self { dim, elements })
    }

    /// Re-run the full invariant suite (Hermiticity, trace, PSD).
    pub fn validate(&self) -> Result<()> {
        Self::new(self.elements.clone()).map(|_| ())
    }

    /// Projector `|psi><psi|` of a pure state.
    pub fn from_pure(state: &PureState) -> Self {
        let a = state.amplitudes();
        let elements = a * a.adjoint();
        Self { dim: a.len(), elements }
    }

    /// `I/dim`.
    pub fn maximally_mixed(dim: usize) -> Self {
        let elements = DMatrix::from_diagonal_element(dim, dim, Complex64::new(1.0 / dim as f64, 0.0));
        Self { dim, elements }
    }

    /// Tensor product `self (x) other`, placing `self` on the more
    /// significant digits.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            dim: self.dim * other.dim,
            elements: self.elements.kronecker(&other.elements),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &DMatrix<Complex64> {
        &self.elements
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self.elements[(i, i)]).sum()
    }
}

/// Flattened-index offsets of every digit assignment on `positions`, for a
/// register of `total` positions with local dimension `d` (position 0 most
/// significant). The assignment's own digits are likewise ordered with the
/// first listed position most significant.
fn digit_offsets(d: usize, total: usize, positions: &[usize]) -> Vec<usize> {
    let mut offsets = vec![0usize];
    for &p in positions {
        let stride = d.pow((total - 1 - p) as u32);
        let mut next = Vec::with_capacity(offsets.len() * d);
        for &o in &offsets {
            for g in 0..d {
                next.push(o + g * stride);
            }
        }
        offsets = next;
    }
    offsets
}

/// Accumulate `rho[i][j] += sum_c v[off_k[i] + off_c[c]] * conj(v[off_k[j] + off_c[c]])`
/// exploiting Hermitian symmetry.
fn accumulate_reduction(
    value: impl Fn(usize, usize) -> Complex64,
    off_keep: &[usize],
    off_comp: &[usize],
) -> DMatrix<Complex64> {
    let m = off_keep.len();
    let mut rho = DMatrix::<Complex64>::zeros(m, m);
    for &oc in off_comp {
        for i in 0..m {
            for j in 0..=i {
                rho[(i, j)] += value(off_keep[i] + oc, off_keep[j] + oc);
            }
        }
    }
    for i in 0..m {
        // exact Hermiticity: real diagonal, mirrored off-diagonal
        rho[(i, i)] = Complex64::new(rho[(i, i)].re, 0.0);
        for j in 0..i {
            rho[(j, i)] = rho[(i, j)].conj();
        }
    }
    rho
}

/// Reduced density matrix of `keep` for a pure state, tracing out every other
/// site. `keep` may be empty (yielding the trivial `[1]` matrix) or the full
/// lattice (yielding the projector onto the state).
pub fn partial_trace_pure(state: &PureState, keep: &SiteMask) -> Result<DensityMatrix> {
    if keep.shape() != state.shape() {
        return Err(Error::ShapeMismatch);
    }
    let shape = state.shape();
    let comp = keep.complement();
    let off_keep = digit_offsets(shape.local_dim(), shape.n_sites(), keep.sites());
    let off_comp = digit_offsets(shape.local_dim(), shape.n_sites(), comp.sites());
    let amps = state.amplitudes();
    let rho = accumulate_reduction(|r, c| amps[r] * amps[c].conj(), &off_keep, &off_comp);
    DensityMatrix::new_reduced(rho)
}

/// Reduced density matrix of `keep` for a density matrix `rho` defined on the
/// sites of `sites`. Tracing in stages agrees with tracing at once.
pub fn partial_trace_dm(rho: &DensityMatrix, sites: &SiteMask, keep: &SiteMask) -> Result<DensityMatrix> {
    if keep.shape() != sites.shape() {
        return Err(Error::ShapeMismatch);
    }
    if !keep.is_subset_of(sites) {
        return Err(Error::NotASubset(keep.to_string()));
    }
    if rho.dim() != sites.subdim() {
        return Err(Error::DimensionMismatch { expected: sites.subdim(), actual: rho.dim() });
    }
    let d = sites.shape().local_dim();
    let total = sites.len();
    // positions of the kept / traced sites inside the matrix's own register
    let keep_pos: Vec<usize> = sites
        .sites()
        .iter()
        .enumerate()
        .filter(|(_, s)| keep.contains(**s))
        .map(|(p, _)| p)
        .collect();
    let comp_pos: Vec<usize> = (0..total).filter(|p| !keep_pos.contains(p)).collect();
    let off_keep = digit_offsets(d, total, &keep_pos);
    let off_comp = digit_offsets(d, total, &comp_pos);
    let m = rho.elements();
    let reduced = accumulate_reduction(|r, c| m[(r, c)], &off_keep, &off_comp);
    DensityMatrix::new_reduced(reduced)
}

/// Tensor product of one local ket per site. Kets are normalized
/// individually; a zero ket is rejected.
pub fn product_state(shape: LatticeShape, local_kets: &[DVector<Complex64>]) -> Result<PureState> {
    if local_kets.len() != shape.n_sites() {
        return Err(Error::LocalKetCount { expected: shape.n_sites(), actual: local_kets.len() });
    }
    let d = shape.local_dim();
    let mut normalized = Vec::with_capacity(local_kets.len());
    for ket in local_kets {
        if ket.len() != d {
            return Err(Error::LocalKetDimension { expected: d, actual: ket.len() });
        }
        let nsq: f64 = ket.iter().map(|a| a.norm_sqr()).sum();
        if nsq <= f64::MIN_POSITIVE {
            return Err(Error::ZeroVector);
        }
        normalized.push(ket * Complex64::new(1.0 / nsq.sqrt(), 0.0));
    }
    let dim = shape.dim();
    let mut amplitudes = DVector::zeros(dim);
    for x in 0..dim {
        let mut a = Complex64::new(1.0, 0.0);
        for (site, ket) in normalized.iter().enumerate() {
            a *= ket[shape.digit(x, site)];
        }
        amplitudes[x] = a;
    }
    Ok(PureState::from_vector_unchecked(shape, amplitudes))
}

/// A spin singlet `(|01> - |10>)/sqrt(2)` on the pair `(site_i, site_j)`
/// tensored with one local ket per remaining site (in ascending site order).
/// Requires local dimension 2.
pub fn embed_pair_singlet(
    shape: LatticeShape,
    site_i: usize,
    site_j: usize,
    rest: &[DVector<Complex64>],
) -> Result<PureState> {
    if shape.local_dim() != 2 {
        return Err(Error::InvalidShape { n: shape.n_sites(), d: shape.local_dim() });
    }
    if site_i == site_j {
        return Err(Error::DuplicateSite { site: site_i });
    }
    let n = shape.n_sites();
    for &s in &[site_i, site_j] {
        if s >= n {
            return Err(Error::SiteOutOfRange { site: s, n });
        }
    }
    let rest_sites: Vec<usize> = (0..n).filter(|s| *s != site_i && *s != site_j).collect();
    if rest.len() != rest_sites.len() {
        return Err(Error::LocalKetCount { expected: rest_sites.len(), actual: rest.len() });
    }
    let mut normalized = Vec::with_capacity(rest.len());
    for ket in rest {
        if ket.len() != 2 {
            return Err(Error::LocalKetDimension { expected: 2, actual: ket.len() });
        }
        let nsq: f64 = ket.iter().map(|a| a.norm_sqr()).sum();
        if nsq <= f64::MIN_POSITIVE {
            return Err(Error::ZeroVector);
        }
        normalized.push(ket * Complex64::new(1.0 / nsq.sqrt(), 0.0));
    }
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let dim = shape.dim();
    let mut amplitudes = DVector::zeros(dim);
    for x in 0..dim {
        let di = shape.digit(x, site_i);
        let dj = shape.digit(x, site_j);
        let pair = match (di, dj) {
            (0, 1) => inv_sqrt2,
            (1, 0) => -inv_sqrt2,
            _ => continue,
        };
        let mut a = Complex64::new(pair, 0.0);
        for (k, &s) in rest_sites.iter().enumerate() {
            a *= normalized[k][shape.digit(x, s)];
        }
        amplitudes[x] = a;
    }
    Ok(PureState::from_vector_unchecked(shape, amplitudes))
}
