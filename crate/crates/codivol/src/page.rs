//! Closed-form Haar-ensemble averages for qubit systems.
//!
//! For a uniformly random pure state of `n` qubits, the average entanglement
//! entropy of an `a`-qubit subsystem (with `a <= n/2`) is
//!
//! ```text
//! S(a, n) = sum_{i = 2^(n-a)+1}^{2^n} 1/i  -  (2^a - 1) / 2^(n-a+1)
//! ```
//!
//! in nats. The sum is a difference of harmonic numbers,
//! `H(2^n) - H(2^(n-a))`, which this module evaluates exactly by summation
//! rather than through the `ln p + gamma` asymptotic. Average mutual
//! informations between disjoint blocks follow by linearity of the
//! expectation, with subsystems larger than half the chain reduced through
//! their complements; which complements apply is what the three
//! [`PageRegime`]s distinguish. Setting the average information deficit equal
//! to a threshold `epsilon` yields a closed-form estimate of the average
//! codification volume ([`page_average_cv`]), which approaches
//! `n/2 + log2(g(a)/epsilon)/2` for large `n`.

use num_rational::BigRational;

use crate::entropy::Nats;
use crate::error::{Error, Result};

/// Largest supported harmonic-number argument (`2^30`).
pub const HARMONIC_MAX: u64 = 1 << 30;
/// Largest `n` for which the exact rational entropy path is practical.
pub const EXACT_PATH_MAX_N: u32 = 12;

/// Which complement substitutions enter the average mutual information of
/// disjoint blocks of `a` and `b` qubits out of `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PageRegime {
    /// `b < n/2` and `a + b < n/2`: no complements needed.
    SmallSmall,
    /// `b < n/2` but `a + b >= n/2`: the joint block is reduced through its
    /// complement. Boundary ties `a + b = n/2` land here.
    SmallLarge,
    /// `b >= n/2`: both `b` and the joint block reduce through complements.
    /// Boundary ties `b = n/2` land here.
    LargeB,
}

impl PageRegime {
    /// Classify block sizes; total over all valid `(a, b, n)`.
    pub fn classify(a: u32, b: u32, n: u32) -> Result<PageRegime> {
        validate_split(a, b, n)?;
        if 2 * b >= n {
            Ok(PageRegime::LargeB)
        } else if 2 * (a + b) >= n {
            Ok(PageRegime::SmallLarge)
        } else {
            Ok(PageRegime::SmallSmall)
        }
    }
}

fn validate_split(a: u32, b: u32, n: u32) -> Result<()> {
    if a == 0 || b == 0 || a + b > n || 2 * a > n {
        return Err(Error::InvalidSplit { a, b, n });
    }
    Ok(())
}

/// Exact partial sum `sum_{i=lo}^{hi} 1/i`, recursively blocked so rounding
/// errors stay near machine precision even for 2^30 terms.
fn recip_sum(lo: u64, hi: u64) -> f64 {
    debug_assert!(lo >= 1);
    if hi < lo {
        return 0.0;
    }
    if hi - lo < 64 {
        // add small terms first
        let mut s = 0.0;
        let mut i = hi;
        while i >= lo {
            s += 1.0 / i as f64;
            i -= 1;
        }
        return s;
    }
    let mid = lo + (hi - lo) / 2;
    recip_sum(lo, mid) + recip_sum(mid + 1, hi)
}

/// Harmonic number `H_p = sum_{i=1}^p 1/i`, exact summation for `p <= 2^30`.
pub fn harmonic(p: u64) -> Result<f64> {
    if p == 0 || p > HARMONIC_MAX {
        return Err(Error::HarmonicOutOfRange(p));
    }
    Ok(recip_sum(1, p))
}

/// `H_(2^k)`, extended on demand and cached: the block entropies only ever
/// need harmonic numbers at powers of two, and refilling 2^30 terms per call
/// would dominate every table-producing run.
fn harmonic_pow2(k: u32) -> f64 {
    use std::sync::{Mutex, OnceLock};
    static TABLE: OnceLock<Mutex<Vec<f64>>> = OnceLock::new();
    let table = TABLE.get_or_init(|| Mutex::new(vec![1.0]));
    let mut t = table.lock().unwrap();
    while t.len() <= k as usize {
        let filled = t.len() as u32;
        let prev = t[filled as usize - 1];
        t.push(prev + recip_sum((1u64 << (filled - 1)) + 1, 1u64 << filled));
    }
    t[k as usize]
}

/// Average entanglement entropy (nats) of an `a`-qubit block of an `n`-qubit
/// Haar-random pure state; valid for `a <= n/2`.
pub fn page_average_entropy(a: u32, n: u32) -> Result<Nats> {
    if a == 0 || n == 0 || 2 * a > n {
        return Err(Error::SubsystemTooLarge { a, n });
    }
    if n > 30 {
        return Err(Error::HarmonicOutOfRange(1u64 << n.min(63)));
    }
    Nats::new(page_entropy_raw(a, n))
}

/// `S(a, n)` assuming validated inputs, plus the `a = 0` convention.
fn page_entropy_raw(a: u32, n: u32) -> f64 {
    if a == 0 {
        return 0.0;
    }
    let harmonic_diff = harmonic_pow2(n) - harmonic_pow2(n - a);
    let deficit = ((1u64 << a) - 1) as f64 / (1u64 << (n - a + 1)) as f64;
    harmonic_diff - deficit
}

/// The same average entropy as an exact rational (in nats the value is a
/// rational because every term of the defining sum is). Practical only for
/// small systems; capped at [`EXACT_PATH_MAX_N`].
pub fn page_average_entropy_exact(a: u32, n: u32) -> Result<BigRational> {
    if a == 0 || n == 0 || 2 * a > n {
        return Err(Error::SubsystemTooLarge { a, n });
    }
    if n > EXACT_PATH_MAX_N {
        return Err(Error::ExactPathTooLarge { n, max: EXACT_PATH_MAX_N });
    }
    let top = 1u64 << n;
    let bottom = 1u64 << (n - a);
    let mut sum = BigRational::from_integer(0.into());
    for i in (bottom + 1)..=top {
        sum += BigRational::new(1.into(), (i as i64).into());
    }
    let deficit = BigRational::new(
        (((1u64 << a) - 1) as i64).into(),
        ((1u64 << (n - a + 1)) as i64).into(),
    );
    Ok(sum - deficit)
}

/// Average mutual information (nats) between disjoint blocks of `a` and `b`
/// qubits of an `n`-qubit Haar-random state.
///
/// By linearity the average is `S(a,n) + S(b,n) - S(a+b,n)` with any block
/// larger than `n/2` replaced by its complement; the [`PageRegime`] names
/// which replacements occur. Adjacent regimes agree exactly at the `b = n/2`
/// and `a + b = n/2` boundaries.
pub fn page_average_mi(a: u32, b: u32, n: u32) -> Result<Nats> {
    let regime = PageRegime::classify(a, b, n)?;
    if n > 30 {
        return Err(Error::HarmonicOutOfRange(1u64 << n.min(63)));
    }
    let value = match regime {
        PageRegime::SmallSmall => {
            page_entropy_raw(a, n) + page_entropy_raw(b, n) - page_entropy_raw(a + b, n)
        }
        PageRegime::SmallLarge => {
            page_entropy_raw(a, n) + page_entropy_raw(b, n) - page_entropy_raw(n - a - b, n)
        }
        PageRegime::LargeB => {
            page_entropy_raw(a, n) + page_entropy_raw(n - b, n) - page_entropy_raw(n - a - b, n)
        }
    };
    Nats::new(value)
}

/// Closed-form estimate of the average codification volume of an `a`-qubit
/// block, in sites.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PageCv {
    /// Solution of the average-deficit equation
    /// `g(a) (2^(n-2b) - 2^(a-n)) = epsilon`, clamped below at zero.
    pub sites: f64,
    /// Large-`n` asymptote `n/2 + log2(g(a)/epsilon)/2`.
    pub asymptotic_sites: f64,
    /// Set when the finite-`n` solution was negative and clamped to zero.
    pub clamped_at_zero: bool,
}

/// Prefactor `g(a) = (2^a - 2^-a) / 2^(a+1)` of the average information
/// deficit.
pub fn page_deficit_prefactor(a: u32) -> f64 {
    let ta = (a as f64).exp2();
    (ta - 1.0 / ta) / (2.0 * ta)
}

/// Average codification volume of an `a`-qubit block at accuracy `epsilon`
/// (nats), from the closed-form average deficit.
pub fn page_average_cv(a: u32, n: u32, epsilon: f64) -> Result<PageCv> {
    if a == 0 || 2 * a > n {
        return Err(Error::SubsystemTooLarge { a, n });
    }
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    let g = page_deficit_prefactor(a);
    let eps_shifted = epsilon + g * ((a as f64) - (n as f64)).exp2();
    let raw = 0.5 * (n as f64 + (g / eps_shifted).log2());
    let clamped = raw < 0.0;
    Ok(PageCv {
        sites: raw.max(0.0),
        asymptotic_sites: 0.5 * n as f64 + 0.5 * (g / epsilon).log2(),
        clamped_at_zero: clamped,
    })
}
