//! Partial sums, Fejér means, and truncated maximal operators.
//!
//! For orders beyond the quotient size the Fejér mean obeys an exact tail
//! formula (every partial sum of order at least M_N reproduces the function),
//! which makes finite truncation of the maximal sup rigorous: the omitted
//! tail is dominated by a single computable bound that the field carries
//! with it.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

// Float method resolution without std.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::Error;
use crate::group::GroupSpec;
use crate::transform::{same_spec, GroupFunction, Spectrum, Transform};

/// Logarithm base for the weight families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum LogBase {
    Two,
    Natural,
}

impl LogBase {
    fn log(&self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::Natural => x.ln(),
        }
    }
}

/// A nondecreasing weight `phi(n) >= 1` dividing the mean of order n inside
/// the maximal sup.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Weight {
    /// The constant weight 1 (the unweighted maximal operator).
    One,
    /// `max(1, log^2(n + 1))`.
    LogSquared(LogBase),
    /// `max(1, log^gamma(n + 1))`.
    LogPower { gamma: f64, base: LogBase },
    /// Tabulated values for n = 1, 2, ...; constant beyond the table.
    Table(Vec<f64>),
}

impl Weight {
    /// The log-squared weight in its default base-2 form.
    pub fn log_squared() -> Self {
        Weight::LogSquared(LogBase::Two)
    }

    pub fn log_power(gamma: f64) -> Self {
        Weight::LogPower {
            gamma,
            base: LogBase::Two,
        }
    }

    /// Validates a table: every value at least 1 and nondecreasing.
    pub fn table(values: Vec<f64>) -> Result<Self, Error> {
        for (i, &v) in values.iter().enumerate() {
            if v < 1.0 || !v.is_finite() {
                return Err(Error::InvalidWeightTable { position: i });
            }
            if i > 0 && v < values[i - 1] {
                return Err(Error::InvalidWeightTable { position: i });
            }
        }
        Ok(Weight::Table(values))
    }

    /// Evaluates `phi(n)` for `n >= 1`.
    pub fn eval(&self, n: u64) -> f64 {
        debug_assert!(n >= 1);
        match self {
            Weight::One => 1.0,
            Weight::LogSquared(base) => {
                let log = base.log((n + 1) as f64);
                (log * log).max(1.0)
            }
            Weight::LogPower { gamma, base } => base.log((n + 1) as f64).powf(*gamma).max(1.0),
            Weight::Table(values) => {
                let i = ((n - 1) as usize).min(values.len() - 1);
                values[i]
            }
        }
    }
}

/// The partial sum `S_n f` of the character expansion: spectral truncation
/// below index n. `S_0 f = 0`; `S_{M_N} f = f`.
pub fn partial_sum(
    transform: &Transform,
    f: &GroupFunction,
    n: u64,
) -> Result<GroupFunction, Error> {
    let spectrum = transform.forward(f);
    partial_sum_from_spectrum(transform, &spectrum, n)
}

/// Partial sum from a precomputed spectrum.
pub fn partial_sum_from_spectrum(
    transform: &Transform,
    spectrum: &Spectrum,
    n: u64,
) -> Result<GroupFunction, Error> {
    let total = transform.spec().point_count();
    if n > total {
        return Err(Error::IndexOutOfRange {
            value: n,
            bound: total + 1,
        });
    }
    let mut truncated = Spectrum::zero(transform.spec().clone());
    truncated.coeffs_mut()[..n as usize].copy_from_slice(&spectrum.coeffs()[..n as usize]);
    Ok(transform.inverse(&truncated))
}

/// Shared state for evaluating many Fejér means of one function: the
/// spectrum, and the order-M_N mean feeding the exact tail formula
/// `sigma_n f = (M_N / n) sigma_{M_N} f + (1 - M_N / n) f` for `n > M_N`.
#[derive(Debug, Clone)]
pub struct FejerSweep<'a> {
    transform: &'a Transform,
    function: GroupFunction,
    spectrum: Spectrum,
    block_mean: GroupFunction,
}

impl<'a> FejerSweep<'a> {
    pub fn new(transform: &'a Transform, f: &GroupFunction) -> Self {
        assert!(same_spec(transform.spec(), f.spec()), "spec mismatch");
        let spectrum = transform.forward(f);
        let total = transform.spec().point_count();
        let block_mean = mean_from_spectrum(transform, &spectrum, total);
        FejerSweep {
            transform,
            function: f.clone(),
            spectrum,
            block_mean,
        }
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    /// The mean of order M_N.
    pub fn block_mean(&self) -> &GroupFunction {
        &self.block_mean
    }

    /// The Fejér mean of any positive order. Spectral for orders up to M_N,
    /// exact tail formula beyond.
    pub fn mean(&self, n: u64) -> Result<GroupFunction, Error> {
        if n == 0 {
            return Err(Error::UndefinedKernel);
        }
        let total = self.transform.spec().point_count();
        if n <= total {
            return Ok(mean_from_spectrum(self.transform, &self.spectrum, n));
        }
        let head = total as f64 / n as f64;
        let spec = self.transform.spec().clone();
        let values = self
            .block_mean
            .values()
            .iter()
            .zip(self.function.values())
            .map(|(b, f)| b * head + f * (1.0 - head))
            .collect();
        Ok(GroupFunction::new(spec, values).expect("length preserved"))
    }

    pub fn partial_sum(&self, n: u64) -> Result<GroupFunction, Error> {
        partial_sum_from_spectrum(self.transform, &self.spectrum, n)
    }
}

/// Applies the triangular Fejér profile to the spectrum; valid for
/// `1 <= n <= M_N`.
fn mean_from_spectrum(transform: &Transform, spectrum: &Spectrum, n: u64) -> GroupFunction {
    let mut weighted = Spectrum::zero(transform.spec().clone());
    let out = weighted.coeffs_mut();
    for (j, &c) in spectrum
        .coeffs()
        .iter()
        .take(n.saturating_sub(1) as usize)
        .enumerate()
    {
        out[j] = c * ((n - 1 - j as u64) as f64 / n as f64);
    }
    transform.inverse(&weighted)
}

/// The Fejér mean `sigma_n f`, the average of the partial sums below n.
/// Orders beyond M_N use the exact tail formula.
pub fn fejer_mean(
    transform: &Transform,
    f: &GroupFunction,
    n: u64,
) -> Result<GroupFunction, Error> {
    FejerSweep::new(transform, f).mean(n)
}

/// A truncated weighted maximal field: the pointwise sup of
/// `|sigma_n f| / phi(n)` over `1 <= n <= n_max`, together with a bound
/// dominating every omitted order.
#[derive(Debug, Clone, PartialEq)]
pub struct MaximalField {
    spec: Arc<GroupSpec>,
    values: Vec<f64>,
    n_max: u64,
    tail_bound: f64,
}

impl MaximalField {
    pub fn spec(&self) -> &Arc<GroupSpec> {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn value(&self, encoded: u64) -> f64 {
        self.values[encoded as usize]
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    /// Additive bound on the contribution of every order beyond `n_max`:
    /// those means are convex combinations of the block mean and the
    /// function, and the weight is nondecreasing, so
    /// `max(|sigma_block|_inf, |f|_inf) / phi(n_max + 1)` dominates them all.
    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// The sup norm of the truncated field.
    pub fn sup(&self) -> f64 {
        self.values.iter().copied().fold(0.0, f64::max)
    }
}

/// Computes the truncated weighted maximal field of `f`. The truncation
/// must reach at least M_N so that the tail formula covers every omitted
/// order.
pub fn maximal(
    transform: &Transform,
    f: &GroupFunction,
    weight: &Weight,
    n_max: u64,
) -> Result<MaximalField, Error> {
    let total = transform.spec().point_count();
    if n_max < total {
        return Err(Error::TruncationUnsound {
            n_max,
            required: total,
        });
    }
    let sweep = FejerSweep::new(transform, f);
    let mut values = vec![0.0f64; total as usize];
    for n in 1..=n_max {
        let mean = sweep.mean(n)?;
        let phi = weight.eval(n);
        for (best, v) in values.iter_mut().zip(mean.values()) {
            *best = best.max(v.norm() / phi);
        }
    }
    let tail_bound = sweep.block_mean().sup_norm().max(f.sup_norm()) / weight.eval(n_max + 1);
    Ok(MaximalField {
        spec: transform.spec().clone(),
        values,
        n_max,
        tail_bound,
    })
}
