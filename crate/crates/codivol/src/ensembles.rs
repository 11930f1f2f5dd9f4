//! Seeded Haar-random states and Monte Carlo ensemble averages.
//!
//! States are drawn by normalizing a vector of i.i.d. standard complex
//! Gaussians, the unitarily invariant distribution on the sphere. Every
//! sample is generated from its own counter-derived RNG stream, so a given
//! `(seed, index)` pair always yields the same state, results do not depend
//! on the number of worker threads, and estimates are reproducible
//! bit-for-bit.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use crate::codification::{codification_volume, SearchPolicy};
use crate::entropy::{entanglement_entropy, mutual_information};
use crate::error::{Error, Result};
use crate::hilbert::{LatticeShape, PureState, SiteMask};

/// Deterministic source of Haar-random pure states.
#[derive(Debug, Clone)]
pub struct HaarSampler {
    shape: LatticeShape,
    seed: u64,
    next: u64,
}

impl HaarSampler {
    pub fn new(shape: LatticeShape, seed: u64) -> Self {
        Self { shape, seed, next: 0 }
    }

    pub fn shape(&self) -> LatticeShape {
        self.shape
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Next state of the stream (sample `0, 1, 2, ...` of this seed).
    pub fn sample(&mut self) -> PureState {
        let s = self.sample_indexed(self.next);
        self.next += 1;
        s
    }

    /// The `index`-th state of the stream, independent of any samples drawn
    /// so far. `sampler.sample_indexed(k)` equals the `k`-th call of
    /// [`Self::sample`] on a fresh sampler.
    pub fn sample_indexed(&self, index: u64) -> PureState {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        let dim = self.shape.dim();
        let mut amps = DVector::<Complex64>::zeros(dim);
        let mut norm_sqr = 0.0;
        for a in amps.iter_mut() {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            *a = Complex64::new(re, im);
            norm_sqr += a.norm_sqr();
        }
        // a zero draw has probability zero; guard anyway
        debug_assert!(norm_sqr > 0.0);
        let inv = Complex64::new(1.0 / norm_sqr.sqrt(), 0.0);
        PureState::from_vector_unchecked(self.shape, amps * inv)
    }
}

/// Mean, standard error, and sample count of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub n_samples: usize,
}

impl McEstimate {
    /// Two-pass mean and Bessel-corrected standard error; needs at least two
    /// samples.
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewSamples(values.len()));
        }
        let n = values.len() as f64;
        let mean = values.iter().sum::<f64>() / n;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
        Ok(Self { mean, std_error: (var / n).sqrt(), n_samples: values.len() })
    }

    /// Distance to `reference` in units of the standard error.
    pub fn sigmas_from(&self, reference: f64) -> f64 {
        (self.mean - reference).abs() / self.std_error
    }
}

fn mc_collect(
    sampler: &HaarSampler,
    n_samples: usize,
    f: impl Fn(&PureState) -> Result<f64> + Sync,
) -> Result<McEstimate> {
    if n_samples < 2 {
        return Err(Error::TooFewSamples(n_samples));
    }
    let values: Vec<f64> = (0..n_samples as u64)
        .into_par_iter()
        .map(|i| f(&sampler.sample_indexed(i)))
        .collect::<Result<_>>()?;
    McEstimate::from_values(&values)
}

/// Average entanglement entropy (nats) of the first `a` sites over
/// `n_samples` Haar draws. By unitary invariance the placement of the block
/// is immaterial.
pub fn mc_average_entropy(sampler: &HaarSampler, a: usize, n_samples: usize) -> Result<McEstimate> {
    let shape = sampler.shape();
    if a > shape.n_sites() {
        return Err(Error::BlockTooLarge { size: a, n: shape.n_sites() });
    }
    let mask = SiteMask::new(shape, 0..a)?;
    mc_collect(sampler, n_samples, |psi| Ok(entanglement_entropy(psi, &mask)?.value()))
}

/// Average mutual information (nats) between the first `a` sites and the
/// following `b` sites over `n_samples` Haar draws.
pub fn mc_average_mi(sampler: &HaarSampler, a: usize, b: usize, n_samples: usize) -> Result<McEstimate> {
    let shape = sampler.shape();
    if a == 0 || b == 0 {
        return Err(Error::EmptyMask);
    }
    if a + b > shape.n_sites() {
        return Err(Error::BlockTooLarge { size: a + b, n: shape.n_sites() });
    }
    let mask_a = SiteMask::new(shape, 0..a)?;
    let mask_b = SiteMask::new(shape, a..a + b)?;
    mc_collect(sampler, n_samples, |psi| Ok(mutual_information(psi, &mask_a, &mask_b)?.value()))
}

/// Average codification volume (in sites) of subsystem `a` over `n_samples`
/// Haar draws.
pub fn mc_average_cv(
    sampler: &HaarSampler,
    a: &SiteMask,
    epsilon: f64,
    policy: SearchPolicy,
    n_samples: usize,
) -> Result<McEstimate> {
    if a.shape() != sampler.shape() {
        return Err(Error::ShapeMismatch);
    }
    mc_collect(sampler, n_samples, |psi| {
        Ok(codification_volume(psi, a, epsilon, policy)?.omega_sites as f64)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn identical_seeds_reproduce_the_stream() {
        let shape = LatticeShape::qubits(3).unwrap();
        let mut s1 = HaarSampler::new(shape, 99);
        let mut s2 = HaarSampler::new(shape, 99);
        for _ in 0..3 {
            let a = s1.sample();
            let b = s2.sample();
            assert_eq!(a.amplitudes(), b.amplitudes());
        }
        let s3 = HaarSampler::new(shape, 100);
        assert_ne!(s3.sample_indexed(0).amplitudes(), HaarSampler::new(shape, 99).sample_indexed(0).amplitudes());
    }

    #[test]
    fn indexed_matches_stream() {
        let shape = LatticeShape::qubits(2).unwrap();
        let mut stream = HaarSampler::new(shape, 5);
        let indexed = HaarSampler::new(shape, 5);
        for k in 0..4u64 {
            assert_eq!(stream.sample().amplitudes(), indexed.sample_indexed(k).amplitudes());
        }
    }

    #[test]
    fn samples_are_normalized() {
        let shape = LatticeShape::qubits(4).unwrap();
        let sampler = HaarSampler::new(shape, 1);
        for k in 0..10 {
            assert_abs_diff_eq!(sampler.sample_indexed(k).norm_sqr(), 1.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn amplitude_means_vanish() {
        let shape = LatticeShape::qubits(2).unwrap();
        let sampler = HaarSampler::new(shape, 31);
        let n = 10_000;
        for component in 0..4 {
            let values: Vec<f64> = (0..n)
                .map(|k| sampler.sample_indexed(k).amplitudes()[component].re)
                .collect();
            let est = McEstimate::from_values(&values).unwrap();
            assert!(est.mean.abs() <= 3.0 * est.std_error, "component {component}: {est:?}");
        }
    }

    #[test]
    fn estimate_requires_two_samples() {
        assert!(McEstimate::from_values(&[1.0]).is_err());
        let est = McEstimate::from_values(&[1.0, 3.0]).unwrap();
        assert_abs_diff_eq!(est.mean, 2.0);
        assert_abs_diff_eq!(est.std_error, 1.0); // std = sqrt(2), se = sqrt(2)/sqrt(2)
    }

    #[test]
    fn global_entropy_is_zero_every_sample() {
        let shape = LatticeShape::qubits(3).unwrap();
        let sampler = HaarSampler::new(shape, 7);
        let est = mc_average_entropy(&sampler, 3, 50).unwrap();
        assert_abs_diff_eq!(est.mean, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn results_do_not_depend_on_worker_count() {
        let shape = LatticeShape::qubits(3).unwrap();
        let sampler = HaarSampler::new(shape, 11);
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| mc_average_entropy(&sampler, 1, 200).unwrap())
        };
        let one = run(1);
        let four = run(4);
        assert_eq!(one.mean.to_bits(), four.mean.to_bits());
        assert_eq!(one.std_error.to_bits(), four.std_error.to_bits());
    }

    #[test]
    fn complement_mi_doubles_entropy() {
        let shape = LatticeShape::qubits(4).unwrap();
        let sampler = HaarSampler::new(shape, 13);
        let mi = mc_average_mi(&sampler, 1, 3, 100).unwrap();
        let s = mc_average_entropy(&sampler, 1, 100).unwrap();
        assert_abs_diff_eq!(mi.mean, 2.0 * s.mean, epsilon = 1e-10);
    }

    #[test]
    fn generous_epsilon_means_zero_volume() {
        let shape = LatticeShape::qubits(4).unwrap();
        let sampler = HaarSampler::new(shape, 17);
        let a = SiteMask::single(shape, 0).unwrap();
        // I(A, rest) <= 2 ln 2, so epsilon at that bound is met by the empty set
        let eps = 2.0 * std::f64::consts::LN_2 + 1e-9;
        let est = mc_average_cv(&sampler, &a, eps, SearchPolicy::ExhaustiveMinSize, 20).unwrap();
        assert_eq!(est.mean, 0.0);
        assert_eq!(est.std_error, 0.0);
    }

    #[test]
    fn independent_seeds_agree_statistically() {
        let shape = LatticeShape::qubits(4).unwrap();
        let e1 = mc_average_entropy(&HaarSampler::new(shape, 1), 2, 400).unwrap();
        let e2 = mc_average_entropy(&HaarSampler::new(shape, 2), 2, 400).unwrap();
        let combined = (e1.std_error.powi(2) + e2.std_error.powi(2)).sqrt();
        assert!((e1.mean - e2.mean).abs() <= 3.0 * combined);
    }

    #[test]
    fn cv_means_agree_across_seeds() {
        let shape = LatticeShape::qubits(6).unwrap();
        let a = SiteMask::single(shape, 0).unwrap();
        let run = |seed| {
            mc_average_cv(&HaarSampler::new(shape, seed), &a, 0.05, SearchPolicy::ExhaustiveMinSize, 150)
                .unwrap()
        };
        let e1 = run(101);
        let e2 = run(202);
        let combined = (e1.std_error.powi(2) + e2.std_error.powi(2)).sqrt();
        assert!((e1.mean - e2.mean).abs() <= 3.0 * combined.max(1e-12));
    }
}
