//! Atoms, the martingale maximal function, Hardy-space quasinorms, the
//! atom integral estimate behind the positive boundedness result, and the
//! divergence counterexample pipeline with its growth ratio.

use alloc::vec::Vec;

use num_complex::Complex64;
// Float method resolution without std.
#[allow(unused_imports)]
use num_traits::Float;
use rand::Rng;

use crate::error::Error;
use crate::group::Coset;
use crate::kernels::{dirichlet, fejer};
use crate::means::{maximal, FejerSweep, Weight};
use crate::transform::{same_spec, GroupFunction, Transform};

/// Absolute tolerance on the mean-zero atom condition.
pub const ATOM_MEAN_TOL: f64 = 1e-12;
/// Absolute tolerance on values outside the supporting coset.
pub const ATOM_SUPPORT_TOL: f64 = 1e-12;
/// Relative slack on the sup-norm bound, admitting the exact boundary case.
const ATOM_SUP_SLACK: f64 = 1e-9;

/// Which atom condition failed, and by how much.
#[derive(Debug, Clone, PartialEq)]
pub enum AtomViolation {
    /// The integral over the supporting coset is not zero.
    NonzeroMean { integral: f64 },
    /// The sup norm exceeds `measure(I)^{-1/p}`.
    SupNorm { sup: f64, bound: f64 },
    /// A value outside the supporting coset is not zero.
    Support { worst: f64 },
}

impl core::fmt::Display for AtomViolation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AtomViolation::NonzeroMean { integral } => {
                write!(
                    f,
                    "condition (a): coset integral {integral:.3e} is not zero"
                )
            }
            AtomViolation::SupNorm { sup, bound } => {
                write!(
                    f,
                    "condition (b): sup norm {sup:.6} exceeds bound {bound:.6}"
                )
            }
            AtomViolation::Support { worst } => {
                write!(f, "condition (c): value {worst:.3e} outside the support")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for AtomViolation {}

/// A validated p-atom: mean-zero on its supporting coset, sup-bounded by
/// `measure^{-1/p}`, vanishing elsewhere.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom {
    function: GroupFunction,
    support: Coset,
    exponent: f64,
}

impl Atom {
    pub fn function(&self) -> &GroupFunction {
        &self.function
    }

    pub fn support(&self) -> &Coset {
        &self.support
    }

    pub fn exponent(&self) -> f64 {
        self.exponent
    }
}

/// Checks the three atom conditions and returns the validated atom or a
/// structured violation report.
pub fn validate_atom(
    function: GroupFunction,
    support: Coset,
    exponent: f64,
) -> Result<Atom, AtomViolation> {
    assert!(
        exponent > 0.0 && exponent <= 1.0,
        "atom exponent must lie in (0, 1]"
    );
    let spec = function.spec().clone();
    let bound = (support.measure_recip(&spec) as f64).powf(1.0 / exponent);

    let mut worst_outside = 0.0f64;
    let mut sup = 0.0f64;
    let mut integral = Complex64::new(0.0, 0.0);
    for x in 0..spec.point_count() {
        let v = function.value(x);
        if support.contains_encoded(&spec, x) {
            sup = sup.max(v.norm());
            integral += v;
        } else {
            worst_outside = worst_outside.max(v.norm());
        }
    }
    integral /= spec.point_count() as f64;

    if worst_outside > ATOM_SUPPORT_TOL {
        return Err(AtomViolation::Support {
            worst: worst_outside,
        });
    }
    if sup > bound * (1.0 + ATOM_SUP_SLACK) {
        return Err(AtomViolation::SupNorm { sup, bound });
    }
    if integral.norm() > ATOM_MEAN_TOL {
        return Err(AtomViolation::NonzeroMean {
            integral: integral.norm(),
        });
    }
    Ok(Atom {
        function,
        support,
        exponent,
    })
}

/// Draws a random p-atom supported on the zero coset of the given depth:
/// uniform values on the member points, recentred to mean zero (twice, so
/// the residual is far below the validation tolerance), rescaled into the
/// sup bound when needed.
pub fn random_atom<R: Rng + ?Sized>(
    transform: &Transform,
    support_depth: usize,
    exponent: f64,
    rng: &mut R,
) -> Result<Atom, Error> {
    let spec = transform.spec();
    if support_depth > spec.resolution() {
        return Err(Error::DepthOutOfRange {
            depth: support_depth,
            resolution: spec.resolution(),
        });
    }
    let support = spec.coset(&spec.zero(), support_depth)?;
    let bound = (support.measure_recip(spec) as f64).powf(1.0 / exponent);
    let members: Vec<u64> = support.member_encodings(spec).collect();
    let mut values: Vec<f64> = members
        .iter()
        .map(|_| rng.gen_range(-bound..=bound))
        .collect();
    for _ in 0..2 {
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        for v in &mut values {
            *v -= mean;
        }
    }
    let sup = values.iter().fold(0.0f64, |acc, v| acc.max(v.abs()));
    if sup > bound {
        let scale = bound / sup;
        for v in &mut values {
            *v *= scale;
        }
    }
    let mut function = GroupFunction::zero(spec.clone());
    for (&enc, &v) in members.iter().zip(&values) {
        function.values_mut()[enc as usize] = Complex64::new(v, 0.0);
    }
    validate_atom(function, support, exponent).map_err(|_| Error::ConsistencyFailure {
        check: "random atom validation",
    })
}

/// The martingale maximal function: the pointwise sup of the coset-average
/// conditional expectations of every depth, computed by a fine-to-coarse
/// averaging pyramid in O(M_N * N). For a resolution-measurable function
/// this is exact (deeper expectations reproduce the function).
pub fn martingale_maximal(f: &GroupFunction) -> GroupFunction {
    let spec = f.spec().clone();
    let mut level = f.values().to_vec();
    let mut best: Vec<f64> = level.iter().map(|v| v.norm()).collect();
    for coordinate in (0..spec.resolution()).rev() {
        let stride = spec.order(coordinate) as usize;
        let m = spec.radix(coordinate) as usize;
        let span = stride * m;
        for base in (0..level.len()).step_by(span) {
            for slot in base..base + stride {
                let mut acc = Complex64::new(0.0, 0.0);
                for d in 0..m {
                    acc += level[slot + d * stride];
                }
                acc /= m as f64;
                for d in 0..m {
                    level[slot + d * stride] = acc;
                }
            }
        }
        for (b, v) in best.iter_mut().zip(&level) {
            *b = b.max(v.norm());
        }
    }
    GroupFunction::from_fn(spec, |x| Complex64::new(best[x as usize], 0.0))
}

/// The L_p quasinorm `(integral |f|^p)^{1/p}` over the normalized Haar
/// measure.
pub fn lp_quasinorm(f: &GroupFunction, p: f64) -> f64 {
    assert!(p > 0.0, "quasinorm exponent must be positive");
    let total = f.values().len() as f64;
    let sum: f64 = f.values().iter().map(|v| v.norm().powf(p)).sum();
    (sum / total).powf(1.0 / p)
}

/// The martingale Hardy quasinorm: the L_p quasinorm of the maximal
/// function.
pub fn hp_quasinorm(f: &GroupFunction, p: f64) -> f64 {
    lp_quasinorm(&martingale_maximal(f), p)
}

/// A two-sided bracket on a truncated quantity; the truth lies in
/// `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
}

/// Integrates the square root of the weighted maximal field of an atom over
/// the complement of its supporting coset, at the transform's (finer)
/// resolution with truncation at its quotient order. Returns the bracket
/// induced by the field's tail bound.
///
/// The atom is translated so its support sits at the zero coset first;
/// every operator here commutes with translation, so nothing is lost.
pub fn atom_maximal_integral(
    transform: &Transform,
    atom: &Atom,
    weight: &Weight,
) -> Result<Bracket, Error> {
    let fine = transform.spec();
    let mut function = if same_spec(atom.function().spec(), fine) {
        atom.function().clone()
    } else {
        atom.function().lift(fine.clone())?
    };
    if !atom.support().base().is_zero() {
        let base = atom.function().spec().neg(atom.support().base());
        let shift = if same_spec(atom.function().spec(), fine) {
            base
        } else {
            let mut digits = base.digits().to_vec();
            digits.resize(fine.resolution(), 0);
            fine.point(&digits)?
        };
        function = function.translate(&shift);
    }
    let depth = atom.support().depth();
    let block = fine.order(depth);
    let field = maximal(transform, &function, weight, fine.point_count())?;
    let scale = 1.0 / fine.point_count() as f64;
    let mut lo = 0.0f64;
    let mut hi = 0.0f64;
    for x in 0..fine.point_count() {
        if x % block == 0 {
            continue; // inside the supporting coset
        }
        lo += field.value(x).sqrt();
        hi += (field.value(x) + field.tail_bound()).sqrt();
    }
    Ok(Bracket {
        lo: lo * scale,
        hi: hi * scale,
    })
}

/// The difference of two consecutive odd/even block Dirichlet kernels: the
/// function whose spectrum is the indicator of `[M_{2i}, M_{2i+1})`,
/// together with the structured index q_i it is paired against.
#[derive(Debug, Clone, PartialEq)]
pub struct Counterexample {
    index: usize,
    q: u64,
    function: GroupFunction,
}

impl Counterexample {
    pub fn index(&self) -> usize {
        self.index
    }

    /// The structured index `q_{n_k}`.
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn function(&self) -> &GroupFunction {
        &self.function
    }
}

/// Materializes the counterexample function for the given index and checks
/// its spectral profile plus the three-branch partial sum formula on a
/// sample from each branch.
pub fn build_counterexample(transform: &Transform, index: usize) -> Result<Counterexample, Error> {
    if index < 1 {
        return Err(Error::IndexOutOfRange { value: 0, bound: 1 });
    }
    let spec = transform.spec();
    let needed = 2 * index + 1;
    if spec.resolution() < needed {
        return Err(Error::ResolutionInsufficient {
            needed,
            available: spec.resolution(),
        });
    }
    let low = spec.order(2 * index);
    let high = spec.order(2 * index + 1);
    let function = &dirichlet(transform, high)? - &dirichlet(transform, low)?;
    let q = spec.q_number(index)?;

    // Spectral profile: exactly the indicator of [low, high).
    let spectrum = transform.forward(&function);
    for (j, &c) in spectrum.coeffs().iter().enumerate() {
        let expected = if (j as u64) >= low && (j as u64) < high {
            1.0
        } else {
            0.0
        };
        if (c - Complex64::new(expected, 0.0)).norm() > 1e-10 {
            return Err(Error::ConsistencyFailure {
                check: "counterexample spectrum profile",
            });
        }
    }

    // Partial sums branch by branch: zero up to the low edge, a shifted
    // Dirichlet difference across the band, the function itself beyond.
    let sweep = FejerSweep::new(transform, &function);
    let zero_branch = sweep.partial_sum(low)?;
    if zero_branch.sup_norm() > 1e-10 {
        return Err(Error::ConsistencyFailure {
            check: "counterexample low branch",
        });
    }
    let mid = low + (high - low) / 2;
    let mid_sum = sweep.partial_sum(mid)?;
    let mid_expected = &dirichlet(transform, mid)? - &dirichlet(transform, low)?;
    if mid_sum.max_abs_diff(&mid_expected) > 1e-10 {
        return Err(Error::ConsistencyFailure {
            check: "counterexample band branch",
        });
    }
    let full = sweep.partial_sum(high)?;
    if full.max_abs_diff(&function) > 1e-10 {
        return Err(Error::ConsistencyFailure {
            check: "counterexample full branch",
        });
    }

    Ok(Counterexample { index, q, function })
}

/// The measured quantities of one divergence run.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct DivergenceReport {
    /// The counterexample index n_k.
    pub index: usize,
    /// The structured index q_{n_k}.
    pub q: u64,
    /// The Hardy quasinorm of the counterexample function at p = 1/2.
    pub h12: f64,
    /// The half-power integral of the weighted mean of order q.
    pub l12_integral: f64,
    /// `l12_integral^2 / h12`.
    pub ratio: f64,
    /// Max pointwise deviation between the convolution route and the
    /// block-kernel reduction route for the order-q mean.
    pub route_deviation: f64,
}

/// Runs the divergence measurement: the Fejér mean of the counterexample at
/// its structured index, computed both by convolution and by the reduced
/// block-kernel identity, then the half-power integral against the weight
/// and the Hardy quasinorm.
pub fn divergence_ratio(
    transform: &Transform,
    counterexample: &Counterexample,
    weight: &Weight,
) -> Result<DivergenceReport, Error> {
    let spec = transform.spec();
    let q = counterexample.q;
    let sigma = fejer_mean(transform, counterexample.function(), q)?;

    // Reduction route: |sigma_q f| = (q_prev / q) |K_{q_prev}| pointwise.
    let q_prev = spec.q_number(counterexample.index - 1)?;
    let reduced = fejer(transform, q_prev)?;
    let factor = q_prev as f64 / q as f64;
    let route_deviation = sigma
        .values()
        .iter()
        .zip(reduced.values())
        .map(|(s, k)| (s.norm() - factor * k.norm()).abs())
        .fold(0.0, f64::max);

    let phi = weight.eval(q);
    let total = spec.point_count() as f64;
    let l12_integral = sigma
        .values()
        .iter()
        .map(|v| (v.norm() / phi).sqrt())
        .sum::<f64>()
        / total;
    let h12 = hp_quasinorm(counterexample.function(), 0.5);
    let ratio = l12_integral * l12_integral / h12;
    Ok(DivergenceReport {
        index: counterexample.index,
        q,
        h12,
        l12_integral,
        ratio,
        route_deviation,
    })
}

/// Convenience: the Fejér mean via a one-off sweep.
fn fejer_mean(transform: &Transform, f: &GroupFunction, n: u64) -> Result<GroupFunction, Error> {
    crate::means::fejer_mean(transform, f, n)
}
