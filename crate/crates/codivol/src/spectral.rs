//! Hermitian eigendecomposition and exact unitary time evolution.
//!
//! Evolution is done by diagonalizing the Hamiltonian once and applying
//! `V exp(-i diag(L) t) V*` per time point, which is exactly unitary and
//! costs `O(dim^2)` per point. Matrices with exactly real entries take a
//! real-symmetric fast path.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hilbert::PureState;
use crate::{HERM_TOL, ORTHO_TOL, RECON_TOL};

/// Eigenvalues (ascending) and orthonormal eigenvectors of a Hermitian
/// matrix. Construction verifies the reconstruction residual and the
/// orthonormality of the eigenvector columns.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    dim: usize,
    eigenvalues: DVector<f64>,
    eigenvectors: DMatrix<Complex64>,
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> &DVector<f64> {
        &self.eigenvalues
    }

    /// Unitary matrix whose columns are the eigenvectors, ordered to match
    /// [`Self::eigenvalues`].
    pub fn eigenvectors(&self) -> &DMatrix<Complex64> {
        &self.eigenvectors
    }
}

fn max_abs(m: &DMatrix<Complex64>) -> f64 {
    m.iter().fold(0.0f64, |acc, z| acc.max(z.norm()))
}

fn hermiticity_deviation(m: &DMatrix<Complex64>) -> f64 {
    let n = m.nrows();
    let mut dev = 0.0f64;
    for i in 0..n {
        for j in 0..=i {
            dev = dev.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    dev
}

/// Diagonalize a Hermitian matrix.
///
/// The input must be Hermitian within [`HERM_TOL`]; it is symmetrized to
/// `(M + M*)/2` before solving. Fails with [`Error::EigenFailure`] carrying
/// the residual if the decomposition does not reconstruct the matrix to
/// [`RECON_TOL`] (relative) or the eigenvectors are not orthonormal to
/// [`ORTHO_TOL`].
pub fn eig_hermitian(matrix: &DMatrix<Complex64>) -> Result<SpectralDecomposition> {
    if matrix.nrows() != matrix.ncols() {
        return Err(Error::NotSquare { rows: matrix.nrows(), cols: matrix.ncols() });
    }
    let dim = matrix.nrows();
    let dev = hermiticity_deviation(matrix);
    if dev > HERM_TOL {
        return Err(Error::NotHermitian { max_dev: dev, tol: HERM_TOL });
    }
    let sym = (matrix + matrix.adjoint()) * Complex64::new(0.5, 0.0);

    let (mut eigenvalues, mut eigenvectors) = if sym.iter().all(|z| z.im == 0.0) {
        // exactly real input: solve in real arithmetic
        let real = sym.map(|z| z.re);
        let eig = real.symmetric_eigen();
        (eig.eigenvalues, eig.eigenvectors.map(|x| Complex64::new(x, 0.0)))
    } else {
        let eig = sym.clone().symmetric_eigen();
        (eig.eigenvalues, eig.eigenvectors)
    };

    // sort ascending
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eigenvalues[a].partial_cmp(&eigenvalues[b]).unwrap());
    if order.iter().enumerate().any(|(k, &p)| k != p) {
        let vals = DVector::from_iterator(dim, order.iter().map(|&p| eigenvalues[p]));
        let mut vecs = DMatrix::zeros(dim, dim);
        for (k, &p) in order.iter().enumerate() {
            vecs.set_column(k, &eigenvectors.column(p));
        }
        eigenvalues = vals;
        eigenvectors = vecs;
    }

    let scale = max_abs(&sym).max(1.0);
    let lambda = DMatrix::from_diagonal(&eigenvalues.map(|x| Complex64::new(x, 0.0)));
    let reconstruction = &eigenvectors * lambda * eigenvectors.adjoint();
    let residual = max_abs(&(&reconstruction - &sym));
    if residual > RECON_TOL * scale {
        return Err(Error::EigenFailure { residual });
    }
    let gram = eigenvectors.adjoint() * &eigenvectors;
    let identity = DMatrix::<Complex64>::identity(dim, dim);
    let ortho = max_abs(&(gram - identity));
    if ortho > ORTHO_TOL {
        return Err(Error::EigenFailure { residual: ortho });
    }

    Ok(SpectralDecomposition { dim, eigenvalues, eigenvectors })
}

/// Eigenvalues only (ascending) of a Hermitian matrix; cheaper than a full
/// decomposition and sufficient for entropies.
pub(crate) fn eigvals_hermitian(matrix: &DMatrix<Complex64>) -> Result<DVector<f64>> {
    if matrix.nrows() != matrix.ncols() {
        return Err(Error::NotSquare { rows: matrix.nrows(), cols: matrix.ncols() });
    }
    let dev = hermiticity_deviation(matrix);
    if dev > HERM_TOL {
        return Err(Error::NotHermitian { max_dev: dev, tol: HERM_TOL });
    }
    if matrix.nrows() == 1 {
        return Ok(DVector::from_element(1, matrix[(0, 0)].re));
    }
    let sym = (matrix + matrix.adjoint()) * Complex64::new(0.5, 0.0);
    let mut vals: Vec<f64> = if sym.iter().all(|z| z.im == 0.0) {
        sym.map(|z| z.re).symmetric_eigenvalues().iter().copied().collect()
    } else {
        sym.symmetric_eigenvalues().iter().copied().collect()
    };
    vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(DVector::from_vec(vals))
}

/// Apply `exp(-i H t)` to a state using a precomputed decomposition of `H`.
pub fn unitary_evolve(decomp: &SpectralDecomposition, t: f64, psi: &PureState) -> Result<PureState> {
    if decomp.dim() != psi.amplitudes().len() {
        return Err(Error::DimensionMismatch { expected: decomp.dim(), actual: psi.amplitudes().len() });
    }
    let v = decomp.eigenvectors();
    let mut coeffs = v.adjoint() * psi.amplitudes();
    for (c, &lambda) in coeffs.iter_mut().zip(decomp.eigenvalues().iter()) {
        *c *= Complex64::from_polar(1.0, -lambda * t);
    }
    let evolved = v * coeffs;
    Ok(PureState::from_vector_unchecked(psi.shape(), evolved))
}

/// Expectation value `<psi|M|psi>` of a Hermitian operator; the imaginary
/// part is discarded (it is rounding noise for Hermitian `M`).
pub fn hermitian_expectation(matrix: &DMatrix<Complex64>, psi: &PureState) -> Result<f64> {
    if matrix.nrows() != psi.amplitudes().len() || matrix.ncols() != psi.amplitudes().len() {
        return Err(Error::DimensionMismatch { expected: matrix.nrows(), actual: psi.amplitudes().len() });
    }
    let a = psi.amplitudes();
    let val = (a.adjoint() * matrix * a)[(0, 0)];
    Ok(val.re)
}
