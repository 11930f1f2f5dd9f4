//! A non-integrable Ising chain and quench trajectories.
//!
//! The Hamiltonian is the open-boundary chain
//!
//! ```text
//! H = -J sum_{i=0}^{n-2} sz_i sz_{i+1} + sum_i (hx sx_i + hz sz_i)
//! ```
//!
//! with default fields `hx = 3J/2`, `hz = -J/2`, a parameter point with both
//! transverse and longitudinal components that sits far from the
//! integrability lines of the model. Site 0 occupies the most significant
//! digit of the basis index, and the local basis is `|0> = up` (`sz = +1`),
//! `|1> = down`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hilbert::{product_state, LatticeShape, PureState};
use crate::spectral::{eig_hermitian, unitary_evolve};

/// Largest chain the dense builder accepts.
pub const MAX_DENSE_SITES: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Boundary {
    Open,
}

/// Couplings of the chain. `new` ties the fields to `J`; override them with
/// [`Self::with_fields`] for integrability-comparison studies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainHamiltonianParams {
    n: usize,
    coupling: f64,
    field_x: f64,
    field_z: f64,
    boundary: Boundary,
}

impl ChainHamiltonianParams {
    /// Default parameter point: `J = 1`, `hx = 3/2`, `hz = -1/2`.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_coupling(n, 1.0)
    }

    /// Same parameter point scaled to a given `J` (`hx = 3J/2`, `hz = -J/2`).
    pub fn with_coupling(n: usize, coupling: f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::ChainTooSmall(n));
        }
        Ok(Self {
            n,
            coupling,
            field_x: 1.5 * coupling,
            field_z: -0.5 * coupling,
            boundary: Boundary::Open,
        })
    }

    /// Override the transverse and longitudinal fields.
    pub fn with_fields(mut self, field_x: f64, field_z: f64) -> Self {
        self.field_x = field_x;
        self.field_z = field_z;
        self
    }

    pub fn n_sites(&self) -> usize {
        self.n
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn field_x(&self) -> f64 {
        self.field_x
    }

    pub fn field_z(&self) -> f64 {
        self.field_z
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }
}

/// Dense matrix of the chain Hamiltonian (dimension `2^n`). The entries are
/// exactly real, which lets the eigensolver take its real-symmetric path.
pub fn build_hamiltonian(params: &ChainHamiltonianParams) -> Result<DMatrix<Complex64>> {
    let n = params.n;
    if n > MAX_DENSE_SITES {
        return Err(Error::ChainTooLarge { n, max: MAX_DENSE_SITES });
    }
    let dim = 1usize << n;
    let j = params.coupling;
    let hx = params.field_x;
    let hz = params.field_z;
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    let z_of = |x: usize, site: usize| -> f64 {
        // up (digit 0) carries sz = +1
        if (x >> (n - 1 - site)) & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    };
    for x in 0..dim {
        let mut zz = 0.0;
        for i in 0..n - 1 {
            zz += z_of(x, i) * z_of(x, i + 1);
        }
        let mut zsum = 0.0;
        for i in 0..n {
            zsum += z_of(x, i);
        }
        h[(x, x)] = Complex64::new(-j * zz + hz * zsum, 0.0);
        for i in 0..n {
            let y = x ^ (1 << (n - 1 - i));
            h[(y, x)] += Complex64::new(hx, 0.0);
        }
    }
    Ok(h)
}

/// Alternating product state `|up down up down ...>` with `up` at site 0.
pub fn neel_state(n: usize) -> Result<PureState> {
    let shape = LatticeShape::qubits(n)?;
    let mut index = 0usize;
    for site in (1..n).step_by(2) {
        index |= 1 << (n - 1 - site);
    }
    PureState::basis_state(shape, index)
}

/// Product of identical single-site states polarized along `+y`
/// (`(|up> + i |down>)/sqrt(2)` on every site); every amplitude has modulus
/// `2^(-n/2)`.
pub fn yplus_state(n: usize) -> Result<PureState> {
    let shape = LatticeShape::qubits(n)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let ket = DVector::from_vec(vec![Complex64::new(s, 0.0), Complex64::new(0.0, s)]);
    let kets: Vec<_> = (0..n).map(|_| ket.clone()).collect();
    product_state(shape, &kets)
}

/// Which state the quench starts from.
#[derive(Debug, Clone)]
pub enum InitialState {
    Neel,
    YPlus,
    Custom(PureState),
}

impl InitialState {
    fn resolve(&self, n: usize) -> Result<PureState> {
        match self {
            InitialState::Neel => neel_state(n),
            InitialState::YPlus => yplus_state(n),
            InitialState::Custom(psi) => {
                if psi.shape().n_sites() != n || psi.shape().local_dim() != 2 {
                    return Err(Error::ShapeMismatch);
                }
                Ok(psi.clone())
            }
        }
    }
}

/// A quench: Hamiltonian parameters, an initial state, and the sample times.
#[derive(Debug, Clone)]
pub struct QuenchSpec {
    params: ChainHamiltonianParams,
    initial: InitialState,
    times: Vec<f64>,
}

impl QuenchSpec {
    /// Times must be nonnegative, finite, and strictly increasing.
    pub fn new(params: ChainHamiltonianParams, initial: InitialState, times: Vec<f64>) -> Result<Self> {
        if times.is_empty() || times.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(Error::InvalidTimes);
        }
        if times.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidTimes);
        }
        Ok(Self { params, initial, times })
    }

    /// `points` uniform samples covering `[0, t_max]`.
    pub fn uniform_times(t_max: f64, points: usize) -> Result<Vec<f64>> {
        if !t_max.is_finite() || t_max <= 0.0 || points < 2 {
            return Err(Error::InvalidTimes);
        }
        Ok((0..points).map(|k| t_max * k as f64 / (points - 1) as f64).collect())
    }

    pub fn params(&self) -> &ChainHamiltonianParams {
        &self.params
    }

    pub fn initial(&self) -> &InitialState {
        &self.initial
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }
}

/// Evolve the initial state to every requested time. The Hamiltonian is
/// diagonalized once; each sample is then exactly unitary.
pub fn run_quench(spec: &QuenchSpec) -> Result<Vec<(f64, PureState)>> {
    let n = spec.params.n_sites();
    let h = build_hamiltonian(&spec.params)?;
    let decomp = eig_hermitian(&h)?;
    let psi0 = spec.initial.resolve(n)?;
    spec.times
        .par_iter()
        .map(|&t| unitary_evolve(&decomp, t, &psi0).map(|psi| (t, psi)))
        .collect()
}
