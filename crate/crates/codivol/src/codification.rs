//! Mutual-information profiles and the codification volume.
//!
//! The codification volume of a subsystem `A` at accuracy `epsilon` is the
//! size of the smallest disjoint subsystem `B` with
//!
//! ```text
//! I(A, complement of A) - I(A, B) <= epsilon ,
//! ```
//!
//! i.e. the smallest region that already carries, up to `epsilon`, all the
//! correlations `A` shares with the rest of the system. Two search policies
//! are provided: a contiguous ladder that grows `B` site by site away from a
//! single-site `A` (the natural choice on a chain), and an exhaustive
//! minimum-size search over all subsets (the definition itself). Since any
//! subset of a given size satisfying the condition suffices, the exhaustive
//! search tests each size against its best (maximum-information) subset and
//! stops at the first size that passes.

use itertools::Itertools;
use rayon::prelude::*;

use crate::entropy::{mutual_information, Nats};
use crate::error::{Error, Result};
use crate::hilbert::{PureState, SiteMask};

/// How candidate subsystems `B` are enumerated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchPolicy {
    /// Grow `B` one site at a time starting just right of the (single-site)
    /// subsystem `A`, wrapping to the left end once the right end is
    /// reached. Candidate `k` is the first `k` sites of that order.
    ContiguousRight,
    /// For each size `b = 0, 1, 2, ...` consider every subset of the
    /// complement of `A`, in lexicographic order.
    ExhaustiveMinSize,
}

impl std::fmt::Display for SearchPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SearchPolicy::ContiguousRight => write!(f, "contiguous"),
            SearchPolicy::ExhaustiveMinSize => write!(f, "exhaustive"),
        }
    }
}

/// Mutual information against a family of growing candidate subsystems.
#[derive(Debug, Clone)]
pub struct MiProfile {
    a: SiteMask,
    entries: Vec<(SiteMask, Nats)>,
    i_total: Nats,
}

impl MiProfile {
    /// The probed subsystem `A`.
    pub fn subsystem(&self) -> &SiteMask {
        &self.a
    }

    /// `(B, I(A,B))` pairs ordered by `|B|`. For the contiguous policy there
    /// is one entry per ladder step; for the exhaustive policy one entry per
    /// size, holding that size's best subset.
    pub fn entries(&self) -> &[(SiteMask, Nats)] {
        &self.entries
    }

    /// `I(A, complement of A)`, the ceiling of the profile.
    pub fn i_total(&self) -> Nats {
        self.i_total
    }
}

/// Search outcome: the codification volume and the subsystem witnessing it.
#[derive(Debug, Clone)]
pub struct CvResult {
    /// Number of sites in the minimizing subsystem `B`.
    pub omega_sites: usize,
    /// The same volume as a log-dimension, `omega_sites * ln d`.
    pub omega_log: f64,
    /// A minimizing subsystem (lexicographically smallest among ties).
    pub witness: SiteMask,
    /// Accuracy the search was run at (nats).
    pub epsilon: f64,
    /// Policy the search was run under.
    pub policy: SearchPolicy,
}

fn contiguous_order(a: &SiteMask) -> Result<Vec<usize>> {
    if a.len() != 1 {
        return Err(Error::PolicyIncompatible(format!(
            "contiguous growth needs a single-site subsystem, got {} sites",
            a.len()
        )));
    }
    let n = a.shape().n_sites();
    let s = a.sites()[0];
    Ok(((s + 1)..n).chain(0..s).collect())
}

fn check_profile_inputs(state: &PureState, a: &SiteMask) -> Result<()> {
    if a.shape() != state.shape() {
        return Err(Error::ShapeMismatch);
    }
    if a.is_empty() {
        return Err(Error::EmptyMask);
    }
    if a.len() >= state.shape().n_sites() {
        return Err(Error::SubsystemCoversLattice);
    }
    Ok(())
}

/// Mutual information of every subset of a given size, evaluated in
/// lexicographic order; returns the best `(subset, value)` with ties going to
/// the earliest subset.
fn best_subset_of_size(
    state: &PureState,
    a: &SiteMask,
    complement_sites: &[usize],
    size: usize,
) -> Result<(SiteMask, Nats)> {
    let combos: Vec<Vec<usize>> = complement_sites.iter().copied().combinations(size).collect();
    let values: Vec<Nats> = combos
        .par_iter()
        .map(|sites| {
            let b = SiteMask::new(a.shape(), sites.iter().copied())?;
            mutual_information(state, a, &b)
        })
        .collect::<Result<_>>()?;
    let mut best = 0usize;
    for (k, v) in values.iter().enumerate() {
        if v.value() > values[best].value() {
            best = k;
        }
    }
    let mask = SiteMask::new(a.shape(), combos[best].iter().copied())?;
    Ok((mask, values[best]))
}

/// Mutual-information profile of `A` under the given policy.
pub fn mi_profile(state: &PureState, a: &SiteMask, policy: SearchPolicy) -> Result<MiProfile> {
    check_profile_inputs(state, a)?;
    let complement = a.complement();
    let i_total = mutual_information(state, a, &complement)?;
    let entries = match policy {
        SearchPolicy::ContiguousRight => {
            let order = contiguous_order(a)?;
            let prefixes: Vec<SiteMask> = (1..=order.len())
                .map(|k| SiteMask::new(a.shape(), order[..k].iter().copied()))
                .collect::<Result<_>>()?;
            let values: Vec<Nats> = prefixes
                .par_iter()
                .map(|b| mutual_information(state, a, b))
                .collect::<Result<_>>()?;
            prefixes.into_iter().zip(values).collect()
        }
        SearchPolicy::ExhaustiveMinSize => (1..=complement.len())
            .map(|size| best_subset_of_size(state, a, complement.sites(), size))
            .collect::<Result<_>>()?,
    };
    Ok(MiProfile { a: a.clone(), entries, i_total })
}

/// Codification volume of `A` at accuracy `epsilon` (nats).
///
/// Sizes are scanned in ascending order; size 0 passes when
/// `I(A, complement) <= epsilon` already. The scan always terminates: the
/// full complement satisfies the condition with deficit exactly zero.
pub fn codification_volume(
    state: &PureState,
    a: &SiteMask,
    epsilon: f64,
    policy: SearchPolicy,
) -> Result<CvResult> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    check_profile_inputs(state, a)?;
    let complement = a.complement();
    let i_total = mutual_information(state, a, &complement)?;
    let log_d = (state.shape().local_dim() as f64).ln();
    let done = |omega_sites: usize, witness: SiteMask| CvResult {
        omega_sites,
        omega_log: omega_sites as f64 * log_d,
        witness,
        epsilon,
        policy,
    };

    if i_total.value() <= epsilon {
        return Ok(done(0, SiteMask::empty(state.shape())));
    }
    match policy {
        SearchPolicy::ContiguousRight => {
            let order = contiguous_order(a)?;
            for k in 1..=order.len() {
                let b = SiteMask::new(a.shape(), order[..k].iter().copied())?;
                let i_b = mutual_information(state, a, &b)?;
                if i_total.value() - i_b.value() <= epsilon {
                    return Ok(done(k, b));
                }
            }
        }
        SearchPolicy::ExhaustiveMinSize => {
            for size in 1..=complement.len() {
                let (witness, i_b) = best_subset_of_size(state, a, complement.sites(), size)?;
                if i_total.value() - i_b.value() <= epsilon {
                    return Ok(done(size, witness));
                }
            }
        }
    }
    // unreachable: the last candidate is the full complement itself
    Ok(done(complement.len(), complement))
}

/// Codification volume along a trajectory; output sorted by time.
pub fn cv_time_series(
    states: &[(f64, PureState)],
    a: &SiteMask,
    epsilon: f64,
    policy: SearchPolicy,
) -> Result<Vec<(f64, CvResult)>> {
    if states.iter().any(|(t, _)| !t.is_finite()) {
        return Err(Error::InvalidTimes);
    }
    let mut series: Vec<(f64, CvResult)> = states
        .par_iter()
        .map(|(t, psi)| codification_volume(psi, a, epsilon, policy).map(|cv| (*t, cv)))
        .collect::<Result<_>>()?;
    series.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    Ok(series)
}
