//! Entropy and correlation measures.
//!
//! Everything is measured in natural-log units (nats); divide by `ln 2` via
//! [`Nats::bits`] for a base-2 display. The `0 ln 0 = 0` convention applies
//! throughout, with eigenvalues in `[-PSD_TOL, 0)` clamped to zero.


use crate::error::{Error, Result};
use crate::hilbert::{partial_trace_pure, DensityMatrix, PureState, SiteMask};
use crate::spectral::eigvals_hermitian;
use crate::{NATS_TOL, PSD_TOL, SUPPORT_TOL};

/// A nonnegative quantity in natural-log units.
///
/// Rounding may produce values slightly below zero; anything in
/// `[-NATS_TOL, 0)` is clamped to exactly 0, anything lower is rejected.
/// The value [`Nats::INFINITE`] marks a diverging relative entropy.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Nats(f64);

impl Nats {
    pub const ZERO: Nats = Nats(0.0);
    /// Distinguished result of a relative entropy whose support condition
    /// fails.
    pub const INFINITE: Nats = Nats(f64::INFINITY);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < -NATS_TOL {
            return Err(Error::NegativeEntropy { value, tol: NATS_TOL });
        }
        Ok(Nats(value.max(0.0)))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    /// The same quantity in base-2 units.
    pub fn bits(&self) -> f64 {
        self.0 / std::f64::consts::LN_2
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
}

impl std::fmt::Display for Nats {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Von Neumann entropy `-sum_i lambda_i ln lambda_i` of a density matrix.
///
/// Eigenvalues in `[-PSD_TOL, 0)` are clamped to zero; an eigenvalue below
/// `-PSD_TOL` means the input is not a state and is an error.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> Result<Nats> {
    let vals = eigvals_hermitian(rho.elements())?;
    entropy_of_spectrum(vals.iter().copied())
}

fn entropy_of_spectrum(vals: impl Iterator<Item = f64>) -> Result<Nats> {
    let mut s = 0.0;
    for lambda in vals {
        if lambda < -PSD_TOL {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: lambda, tol: PSD_TOL });
        }
        if lambda > 0.0 {
            s -= lambda * lambda.ln();
        }
    }
    Nats::new(s)
}

/// Quantum relative entropy `S(rho || sigma) = Tr rho (ln rho - ln sigma)`.
///
/// If `rho` has weight outside the support of `sigma` (beyond
/// [`SUPPORT_TOL`]) the result is [`Nats::INFINITE`] rather than an error.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<Nats> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { expected: rho.dim(), actual: sigma.dim() });
    }
    // Tr rho ln rho from the spectrum of rho
    let rho_vals = eigvals_hermitian(rho.elements())?;
    let mut tr_rho_ln_rho = 0.0;
    for lambda in rho_vals.iter().copied() {
        if lambda < -PSD_TOL {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: lambda, tol: PSD_TOL });
        }
        if lambda > 0.0 {
            tr_rho_ln_rho += lambda * lambda.ln();
        }
    }
    // Tr rho ln sigma in the eigenbasis of sigma
    let sig = crate::spectral::eig_hermitian(sigma.elements())?;
    let weights = sig.eigenvectors().adjoint() * rho.elements() * sig.eigenvectors();
    let mut tr_rho_ln_sigma = 0.0;
    for (j, &mu) in sig.eigenvalues().iter().enumerate() {
        if mu < -PSD_TOL {
            return Err(Error::NotPositiveSemidefinite { min_eigenvalue: mu, tol: PSD_TOL });
        }
        let p = weights[(j, j)].re.max(0.0);
        if mu <= PSD_TOL {
            if p > SUPPORT_TOL {
                return Ok(Nats::INFINITE);
            }
        } else {
            tr_rho_ln_sigma += p * mu.ln();
        }
    }
    Nats::new(tr_rho_ln_rho - tr_rho_ln_sigma)
}

/// Entanglement entropy of the subsystem selected by `mask` in a global pure
/// state. For a pure state the spectra of a reduction and of its complement
/// coincide, so the smaller side is diagonalized.
pub fn entanglement_entropy(state: &PureState, mask: &SiteMask) -> Result<Nats> {
    if mask.shape() != state.shape() {
        return Err(Error::ShapeMismatch);
    }
    let n = state.shape().n_sites();
    let smaller = if 2 * mask.len() <= n { mask.clone() } else { mask.complement() };
    let rho = partial_trace_pure(state, &smaller)?;
    von_neumann_entropy(&rho)
}

/// Mutual information `I(A,B) = S(rho_A) + S(rho_B) - S(rho_AB)` between two
/// disjoint, nonempty subsystems of a pure state.
pub fn mutual_information(state: &PureState, a: &SiteMask, b: &SiteMask) -> Result<Nats> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyMask);
    }
    if !a.is_disjoint(b) {
        return Err(Error::OverlappingMasks);
    }
    let ab = a.union_disjoint(b)?;
    let s_a = entanglement_entropy(state, a)?;
    let s_b = entanglement_entropy(state, b)?;
    let s_ab = entanglement_entropy(state, &ab)?;
    Nats::new(s_a.value() + s_b.value() - s_ab.value())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{embed_pair_singlet, product_state, DensityMatrix, LatticeShape};
    use approx::assert_abs_diff_eq;
    use nalgebra::{DMatrix, DVector};
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn up() -> DVector<Complex64> {
        DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)])
    }

    fn down() -> DVector<Complex64> {
        DVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0)])
    }

    #[test]
    fn nats_clamps_and_rejects() {
        assert_eq!(Nats::new(-5e-10).unwrap().value(), 0.0);
        assert!(Nats::new(-2e-9).is_err());
        assert!(Nats::new(f64::NAN).is_err());
        assert_abs_diff_eq!(Nats::new(0.7).unwrap().bits(), 0.7 / std::f64::consts::LN_2);
        assert!(!Nats::INFINITE.is_finite());
    }

    #[test]
    fn pure_projector_has_zero_entropy() {
        let shape = LatticeShape::qubits(2).unwrap();
        let psi = embed_pair_singlet(shape, 0, 1, &[]).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        assert_abs_diff_eq!(von_neumann_entropy(&rho).unwrap().value(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn maximally_mixed_qubit_entropy_is_ln2() {
        let rho = DensityMatrix::maximally_mixed(2);
        assert_abs_diff_eq!(
            von_neumann_entropy(&rho).unwrap().value(),
            std::f64::consts::LN_2,
            epsilon = 1e-14
        );
    }

    #[test]
    fn diagonal_spectrum_entropy_matches_direct_sum() {
        let probs = [0.1, 0.2, 0.3, 0.4];
        let rho = DensityMatrix::new(DMatrix::from_diagonal(&DVector::from_iterator(
            4,
            probs.iter().map(|&p| c(p, 0.0)),
        )))
        .unwrap();
        // direct scalar oracle
        let expected: f64 = probs.iter().map(|&p| -p * p.ln()).sum();
        assert_abs_diff_eq!(von_neumann_entropy(&rho).unwrap().value(), expected, epsilon = 1e-14);
    }

    #[test]
    fn entropy_rejects_negative_spectrum() {
        let mut m = DMatrix::<Complex64>::zeros(2, 2);
        m[(0, 0)] = c(1.5, 0.0);
        m[(1, 1)] = c(-0.5, 0.0);
        // Hermitian with unit trace, but indefinite: passes the cheap gate
        // and must be caught at the spectrum.
        let rho = DensityMatrix::new_reduced(m).unwrap();
        assert!(matches!(
            von_neumann_entropy(&rho),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn relative_entropy_of_identical_states_is_zero() {
        let shape = LatticeShape::qubits(2).unwrap();
        let psi = embed_pair_singlet(shape, 0, 1, &[]).unwrap();
        let rho = partial_trace_pure(&psi, &SiteMask::single(shape, 0).unwrap()).unwrap();
        let s = relative_entropy(&rho, &rho.clone()).unwrap();
        assert!(s.value() < 1e-9);
    }

    #[test]
    fn relative_entropy_pure_vs_maximally_mixed() {
        let shape = LatticeShape::qubits(2).unwrap();
        let psi = product_state(shape, &[up(), down()]).unwrap();
        let rho = DensityMatrix::from_pure(&psi);
        let sigma = DensityMatrix::maximally_mixed(4);
        let s = relative_entropy(&rho, &sigma).unwrap();
        assert_abs_diff_eq!(s.value(), (4.0f64).ln(), epsilon = 1e-10);
    }

    #[test]
    fn relative_entropy_support_violation_is_infinite() {
        let shape = LatticeShape::qubits(1).unwrap();
        let rho_up = DensityMatrix::from_pure(&product_state(shape, &[up()]).unwrap());
        let rho_down = DensityMatrix::from_pure(&product_state(shape, &[down()]).unwrap());
        let s = relative_entropy(&rho_up, &rho_down).unwrap();
        assert!(!s.is_finite());
    }

    #[test]
    fn singlet_mutual_information_is_two_ln2() {
        let shape = LatticeShape::qubits(2).unwrap();
        let psi = embed_pair_singlet(shape, 0, 1, &[]).unwrap();
        let a = SiteMask::single(shape, 0).unwrap();
        let b = SiteMask::single(shape, 1).unwrap();
        let i = mutual_information(&psi, &a, &b).unwrap();
        assert_abs_diff_eq!(i.value(), 2.0 * std::f64::consts::LN_2, epsilon = 1e-12);
    }

    #[test]
    fn product_state_has_no_correlations() {
        let shape = LatticeShape::qubits(4).unwrap();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let plus = DVector::from_vec(vec![c(s, 0.0), c(0.0, s)]);
        let psi = product_state(shape, &[up(), plus.clone(), down(), plus]).unwrap();
        let a = SiteMask::new(shape, [0, 2]).unwrap();
        let b = SiteMask::new(shape, [1, 3]).unwrap();
        let i = mutual_information(&psi, &a, &b).unwrap();
        assert!(i.value() < 1e-10);
    }

    #[test]
    fn embedded_singlet_saturates_early() {
        let shape = LatticeShape::qubits(3).unwrap();
        let psi = embed_pair_singlet(shape, 0, 1, &[up()]).unwrap();
        let a = SiteMask::single(shape, 0).unwrap();
        let b_small = SiteMask::single(shape, 1).unwrap();
        let b_large = SiteMask::new(shape, [1, 2]).unwrap();
        let i_small = mutual_information(&psi, &a, &b_small).unwrap();
        let i_large = mutual_information(&psi, &a, &b_large).unwrap();
        let two_ln2 = 2.0 * std::f64::consts::LN_2;
        assert_abs_diff_eq!(i_small.value(), two_ln2, epsilon = 1e-12);
        assert_abs_diff_eq!(i_large.value(), two_ln2, epsilon = 1e-12);
    }

    #[test]
    fn mutual_information_rejects_bad_masks() {
        let shape = LatticeShape::qubits(3).unwrap();
        let psi = embed_pair_singlet(shape, 0, 1, &[up()]).unwrap();
        let a = SiteMask::new(shape, [0, 1]).unwrap();
        let b = SiteMask::new(shape, [1, 2]).unwrap();
        assert!(matches!(mutual_information(&psi, &a, &b), Err(Error::OverlappingMasks)));
        let empty = SiteMask::empty(shape);
        assert!(matches!(mutual_information(&psi, &a, &empty), Err(Error::EmptyMask)));
    }

    #[test]
    fn complement_saturation() {
        let shape = LatticeShape::qubits(3).unwrap();
        let tilted = DVector::from_vec(vec![c(0.8, 0.0), c(0.0, 0.6)]);
        let psi = embed_pair_singlet(shape, 0, 2, &[tilted]).unwrap();
        let a = SiteMask::single(shape, 0).unwrap();
        let i = mutual_information(&psi, &a, &a.complement()).unwrap();
        let s_a = entanglement_entropy(&psi, &a).unwrap();
        assert_abs_diff_eq!(i.value(), 2.0 * s_a.value(), epsilon = 1e-9);
    }
}
