//! Independent oracles shared by the integration suites.
//!
//! Everything here deliberately avoids the crate's production code paths:
//! partial traces come from the materialized projector, evolution from a
//! step integrator, eigenvalues from characteristic polynomials, searches
//! from plain enumeration.

#![allow(dead_code)]

use codivol::{LatticeShape, PureState, SiteMask};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

/// Partial trace computed from the dense projector `|psi><psi|` by explicit
/// summation over the complement digits.
pub fn dense_partial_trace(psi: &PureState, keep: &SiteMask) -> DMatrix<Complex64> {
    let shape = psi.shape();
    let n = shape.n_sites();
    let d = shape.local_dim();
    let rho_full = psi.amplitudes() * psi.amplitudes().adjoint();
    let comp = keep.complement();
    let dim_keep = keep.subdim();
    let dim_comp = comp.subdim();

    // flattened global index of a (kept digits, complement digits) pair
    let global = |kept: usize, other: usize| -> usize {
        let mut idx = 0usize;
        let mut k = kept;
        for &site in keep.sites().iter().rev() {
            idx += (k % d) * d.pow((n - 1 - site) as u32);
            k /= d;
        }
        let mut c = other;
        for &site in comp.sites().iter().rev() {
            idx += (c % d) * d.pow((n - 1 - site) as u32);
            c /= d;
        }
        idx
    };

    let mut out = DMatrix::<Complex64>::zeros(dim_keep, dim_keep);
    for i in 0..dim_keep {
        for j in 0..dim_keep {
            for c in 0..dim_comp {
                out[(i, j)] += rho_full[(global(i, c), global(j, c))];
            }
        }
    }
    out
}

/// Entropy `-sum l ln l` straight from the eigenvalues of a dense matrix.
pub fn spectrum_entropy(rho: &DMatrix<Complex64>) -> f64 {
    rho.clone()
        .symmetric_eigenvalues()
        .iter()
        .filter(|l| **l > 1e-12)
        .map(|l| -l * l.ln())
        .sum()
}

/// Mutual information evaluated entirely through the dense-projector oracle.
pub fn oracle_mutual_information(psi: &PureState, a: &SiteMask, b: &SiteMask) -> f64 {
    let ab = a.union_disjoint(b).unwrap();
    spectrum_entropy(&dense_partial_trace(psi, a)) + spectrum_entropy(&dense_partial_trace(psi, b))
        - spectrum_entropy(&dense_partial_trace(psi, &ab))
}

/// Fourth-order Runge-Kutta integration of `d psi / dt = -i H psi`.
pub fn rk4_evolve(
    h: &DMatrix<Complex64>,
    psi0: &DVector<Complex64>,
    t_final: f64,
    dt: f64,
) -> DVector<Complex64> {
    let rhs = |y: &DVector<Complex64>| -> DVector<Complex64> { h * y * Complex64::new(0.0, -1.0) };
    let steps = (t_final / dt).round() as usize;
    let dt = t_final / steps as f64;
    let half = Complex64::new(dt / 2.0, 0.0);
    let sixth = Complex64::new(dt / 6.0, 0.0);
    let mut y = psi0.clone();
    for _ in 0..steps {
        let k1 = rhs(&y);
        let k2 = rhs(&(&y + &k1 * half));
        let k3 = rhs(&(&y + &k2 * half));
        let k4 = rhs(&(&y + &k3 * Complex64::new(dt, 0.0)));
        y += (k1 + k2 * Complex64::new(2.0, 0.0) + k3 * Complex64::new(2.0, 0.0) + k4) * sixth;
    }
    y
}

/// Characteristic-polynomial coefficients by the Faddeev-LeVerrier
/// recurrence (`M_1 = A`, `c_j = tr(M_j)/j`, `M_{j+1} = A (M_j - c_j I)`):
/// `p(x) = x^k - sum_j c_j x^(k-j)`, returned as monic descending
/// coefficients `[1, -c1, -c2, ...]`.
pub fn charpoly_coefficients(m: &DMatrix<Complex64>) -> Vec<f64> {
    let k = m.nrows();
    let mut coeffs = vec![1.0f64];
    let mut mj = m.clone();
    for j in 1..=k {
        let cj = mj.trace().re / j as f64;
        coeffs.push(-cj);
        if j < k {
            let adjusted = &mj - DMatrix::from_diagonal_element(k, k, Complex64::new(cj, 0.0));
            mj = m * adjusted;
        }
    }
    coeffs
}

fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().fold(0.0, |acc, c| acc * x + c)
}

fn derivative(coeffs: &[f64]) -> Vec<f64> {
    let deg = coeffs.len() - 1;
    coeffs[..deg]
        .iter()
        .enumerate()
        .map(|(i, c)| c * (deg - i) as f64)
        .collect()
}

fn bisect_root(coeffs: &[f64], mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = horner(coeffs, lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        let fm = horner(coeffs, mid);
        if fm == 0.0 || (hi - lo) < 1e-15 * (1.0 + mid.abs()) {
            return mid;
        }
        if (flo < 0.0) == (fm < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All real roots of a polynomial with exclusively real roots (the
/// characteristic polynomial of a Hermitian matrix), by recursive root
/// isolation: the real roots of the derivative split the line into intervals
/// holding at most one root each.
pub fn real_polynomial_roots(coeffs: &[f64], bound: f64) -> Vec<f64> {
    let deg = coeffs.len() - 1;
    if deg == 1 {
        return vec![-coeffs[1] / coeffs[0]];
    }
    let critical = real_polynomial_roots(&derivative(coeffs), bound);
    let mut cuts = vec![-bound];
    cuts.extend(critical.iter().copied().filter(|c| c.abs() < bound));
    cuts.push(bound);
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut roots = Vec::new();
    let scale = coeffs.iter().fold(0.0f64, |a, c| a.max(c.abs()));
    for w in cuts.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let flo = horner(coeffs, lo);
        let fhi = horner(coeffs, hi);
        if (flo < 0.0) != (fhi < 0.0) {
            roots.push(bisect_root(coeffs, lo, hi));
        } else if fhi.abs() < 1e-11 * scale && roots.last().is_none_or(|r| (r - hi).abs() > 1e-9) {
            // a repeated root sits at a critical point
            roots.push(hi);
        }
    }
    roots
}

/// Eigenvalues of a small Hermitian matrix from its characteristic
/// polynomial, ascending.
pub fn charpoly_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let coeffs = charpoly_coefficients(m);
    // Gershgorin bound
    let mut bound = 0.0f64;
    for i in 0..m.nrows() {
        let row: f64 = (0..m.ncols()).map(|j| m[(i, j)].norm()).sum();
        bound = bound.max(row);
    }
    let mut roots = real_polynomial_roots(&coeffs, bound + 1.0);
    roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
    roots
}

/// Smallest subset size (and the first subset of that size, in ascending
/// size then lexicographic order) whose mutual information with `a` comes
/// within `epsilon` of the total. Plain enumeration over every subset.
pub fn brute_force_cv(
    psi: &PureState,
    a: &SiteMask,
    epsilon: f64,
    mi: impl Fn(&PureState, &SiteMask, &SiteMask) -> f64,
) -> (usize, Vec<usize>) {
    use itertools::Itertools;
    let complement = a.complement();
    let i_total = mi(psi, a, &complement);
    if i_total <= epsilon {
        return (0, vec![]);
    }
    for size in 1..=complement.len() {
        for combo in complement.sites().iter().copied().combinations(size) {
            let b = SiteMask::new(a.shape(), combo.iter().copied()).unwrap();
            if i_total - mi(psi, a, &b) <= epsilon {
                return (size, combo);
            }
        }
    }
    (complement.len(), complement.sites().to_vec())
}

/// Asymptotic two-sample Kolmogorov-Smirnov p-value.
pub fn ks_two_sample_p(mut xs: Vec<f64>, mut ys: Vec<f64>) -> f64 {
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ys.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let (m, n) = (xs.len(), ys.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0f64;
    while i < m && j < n {
        if xs[i] <= ys[j] {
            i += 1;
        } else {
            j += 1;
        }
        d = d.max((i as f64 / m as f64 - j as f64 / n as f64).abs());
    }
    let ne = (m as f64 * n as f64) / ((m + n) as f64);
    let lambda = (ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d;
    let mut p = 0.0;
    for k in 1..=100 {
        let term = (-2.0 * (k as f64).powi(2) * lambda * lambda).exp();
        p += if k % 2 == 1 { 2.0 * term } else { -2.0 * term };
    }
    p.clamp(0.0, 1.0)
}

/// Deterministic Haar state straight from a seed, for test fixtures.
pub fn haar_state(n: usize, seed: u64) -> PureState {
    let shape = LatticeShape::qubits(n).unwrap();
    codivol::HaarSampler::new(shape, seed).sample_indexed(0)
}
