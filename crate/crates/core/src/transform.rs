//! The character system and fast forward/inverse transforms over the
//! resolution-N quotient, with a naive quadratic oracle and convolution via
//! spectral diagonalization.
//!
//! The quotient is a direct product of cyclic groups, so the transform
//! factorizes into one small DFT per coordinate: stage k applies m_k-point
//! transforms along the stride-M_k axis. Total cost O(M_N * sum_k m_k^2)
//! with no inter-stage twiddles and no reordering.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::TAU;
use core::ops::{Add, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::Error;
use crate::group::{GroupSpec, Point};

/// Max-norm tolerance the double-precision pipeline is expected to meet on
/// quotients up to the default order cap.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

/// The generalized Rademacher function `r_k(x) = exp(2 pi i x_k / m_k)`.
pub fn rademacher(spec: &GroupSpec, coordinate: usize, x: &Point) -> Complex64 {
    assert!(
        coordinate < spec.resolution(),
        "coordinate {coordinate} out of range"
    );
    let angle = TAU * f64::from(x.digit(coordinate)) / f64::from(spec.radix(coordinate));
    Complex64::cis(angle)
}

/// The character `psi_n(x)`, the product of Rademacher powers given by the
/// digits of `n`. Unit modulus; `psi_0` is identically 1.
pub fn character(spec: &GroupSpec, n: u64, x: &Point) -> Complex64 {
    let exponent = spec.pairing_exponent(n, x);
    Complex64::cis(TAU * exponent as f64 / spec.pairing_order() as f64)
}

/// A complex-valued function on the quotient, stored densely in encoding
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    spec: Arc<GroupSpec>,
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn new(spec: Arc<GroupSpec>, values: Vec<Complex64>) -> Result<Self, Error> {
        if values.len() as u64 != spec.point_count() {
            return Err(Error::LengthMismatch {
                expected: spec.point_count() as usize,
                got: values.len(),
            });
        }
        Ok(GroupFunction { spec, values })
    }

    pub fn zero(spec: Arc<GroupSpec>) -> Self {
        let len = spec.point_count() as usize;
        GroupFunction {
            spec,
            values: vec![Complex64::zero(); len],
        }
    }

    pub fn constant(spec: Arc<GroupSpec>, value: Complex64) -> Self {
        let len = spec.point_count() as usize;
        GroupFunction {
            spec,
            values: vec![value; len],
        }
    }

    pub fn from_fn(spec: Arc<GroupSpec>, mut f: impl FnMut(u64) -> Complex64) -> Self {
        let values = (0..spec.point_count()).map(&mut f).collect();
        GroupFunction { spec, values }
    }

    pub fn spec(&self) -> &Arc<GroupSpec> {
        &self.spec
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn value(&self, encoded: u64) -> Complex64 {
        self.values[encoded as usize]
    }

    /// The Haar integral: the plain average of the values.
    pub fn integral(&self) -> Complex64 {
        self.values.iter().sum::<Complex64>() / self.values.len() as f64
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &GroupFunction) -> f64 {
        assert!(same_spec(&self.spec, &other.spec), "spec mismatch");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: Complex64) -> GroupFunction {
        let values = self.values.iter().map(|v| v * factor).collect();
        GroupFunction {
            spec: self.spec.clone(),
            values,
        }
    }

    /// The translate `x -> f(x - shift)`.
    pub fn translate(&self, shift: &Point) -> GroupFunction {
        let spec = &self.spec;
        let values = (0..spec.point_count())
            .map(|x| self.values[spec.sub_encoded(x, spec.encode(shift)) as usize])
            .collect();
        GroupFunction {
            spec: spec.clone(),
            values,
        }
    }

    /// Lifts to a finer resolution over the same radices; the value at a
    /// fine point is the value at its coarse projection.
    pub fn lift(&self, finer: Arc<GroupSpec>) -> Result<GroupFunction, Error> {
        if !self.spec.is_prefix_of(&finer) {
            return Err(Error::NotAnEmbedding);
        }
        let coarse = self.spec.point_count();
        let values = (0..finer.point_count())
            .map(|x| self.values[(x % coarse) as usize])
            .collect();
        Ok(GroupFunction {
            spec: finer,
            values,
        })
    }
}

impl Add for &GroupFunction {
    type Output = GroupFunction;
    fn add(self, rhs: &GroupFunction) -> GroupFunction {
        assert!(same_spec(&self.spec, &rhs.spec), "spec mismatch");
        let values = self
            .values
            .iter()
            .zip(&rhs.values)
            .map(|(a, b)| a + b)
            .collect();
        GroupFunction {
            spec: self.spec.clone(),
            values,
        }
    }
}

impl Sub for &GroupFunction {
    type Output = GroupFunction;
    fn sub(self, rhs: &GroupFunction) -> GroupFunction {
        assert!(same_spec(&self.spec, &rhs.spec), "spec mismatch");
        let values = self
            .values
            .iter()
            .zip(&rhs.values)
            .map(|(a, b)| a - b)
            .collect();
        GroupFunction {
            spec: self.spec.clone(),
            values,
        }
    }
}

/// The Fourier coefficients of a [`GroupFunction`]: `coeffs[k]` is the Haar
/// integral of `f` against the conjugate of `psi_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    spec: Arc<GroupSpec>,
    coeffs: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(spec: Arc<GroupSpec>, coeffs: Vec<Complex64>) -> Result<Self, Error> {
        if coeffs.len() as u64 != spec.point_count() {
            return Err(Error::LengthMismatch {
                expected: spec.point_count() as usize,
                got: coeffs.len(),
            });
        }
        Ok(Spectrum { spec, coeffs })
    }

    pub fn zero(spec: Arc<GroupSpec>) -> Self {
        let len = spec.point_count() as usize;
        Spectrum {
            spec,
            coeffs: vec![Complex64::zero(); len],
        }
    }

    pub fn spec(&self) -> &Arc<GroupSpec> {
        &self.spec
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn coeff(&self, k: u64) -> Complex64 {
        self.coeffs[k as usize]
    }

    /// The spectral energy `sum_k |coeff_k|^2`.
    pub fn energy(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum()
    }
}

pub fn same_spec(a: &Arc<GroupSpec>, b: &Arc<GroupSpec>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Precomputed root tables for one spec: forward, inverse, naive oracle and
/// spectral convolution.
#[derive(Debug, Clone)]
pub struct Transform {
    spec: Arc<GroupSpec>,
    /// The L-th roots of unity; every character value appears here.
    roots: Vec<Complex64>,
    /// Per coordinate, the m_k-th roots of unity.
    stage_roots: Vec<Vec<Complex64>>,
}

impl Transform {
    pub fn new(spec: Arc<GroupSpec>) -> Self {
        let order = spec.pairing_order();
        let roots = (0..order)
            .map(|t| Complex64::cis(TAU * t as f64 / order as f64))
            .collect();
        let stage_roots = spec
            .radices()
            .iter()
            .map(|&m| {
                (0..m)
                    .map(|d| Complex64::cis(TAU * f64::from(d) / f64::from(m)))
                    .collect()
            })
            .collect();
        Transform {
            spec,
            roots,
            stage_roots,
        }
    }

    pub fn spec(&self) -> &Arc<GroupSpec> {
        &self.spec
    }

    /// The table of L-th roots of unity.
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    /// The values of `psi_n` at every point, in encoding order, in O(M_N).
    pub fn character_field(&self, n: u64) -> Vec<Complex64> {
        self.spec
            .pairing_exponents(n)
            .into_iter()
            .map(|t| self.roots[t as usize])
            .collect()
    }

    /// One small DFT per coordinate, in place. `conjugate` selects the
    /// analysis direction.
    fn stagewise_dft(&self, values: &mut [Complex64], conjugate: bool) {
        let max_radix = self.spec.radices().iter().copied().max().unwrap_or(2) as usize;
        let mut scratch = vec![Complex64::zero(); max_radix];
        let total = values.len();
        let mut stride = 1usize;
        for (k, &radix) in self.spec.radices().iter().enumerate() {
            let m = radix as usize;
            let span = stride * m;
            if m == 2 {
                for base in (0..total).step_by(span) {
                    for slot in base..base + stride {
                        let a = values[slot];
                        let b = values[slot + stride];
                        values[slot] = a + b;
                        values[slot + stride] = a - b;
                    }
                }
            } else {
                let roots = &self.stage_roots[k];
                for base in (0..total).step_by(span) {
                    for slot in base..base + stride {
                        for (d, s) in scratch[..m].iter_mut().enumerate() {
                            *s = values[slot + d * stride];
                        }
                        for j in 0..m {
                            let mut acc = scratch[0];
                            for (d, &s) in scratch[..m].iter().enumerate().skip(1) {
                                let root = roots[(j * d) % m];
                                let root = if conjugate { root.conj() } else { root };
                                acc += s * root;
                            }
                            values[slot + j * stride] = acc;
                        }
                    }
                }
            }
            stride = span;
        }
    }

    /// Fourier coefficients `coeffs[k] = (1/M_N) sum_x f(x) conj(psi_k(x))`.
    /// The Haar normalization lives here; [`inverse`](Self::inverse) carries
    /// no factor.
    pub fn forward(&self, f: &GroupFunction) -> Spectrum {
        assert!(same_spec(&self.spec, f.spec()), "spec mismatch");
        let mut coeffs = f.values().to_vec();
        self.stagewise_dft(&mut coeffs, true);
        let scale = 1.0 / coeffs.len() as f64;
        for c in &mut coeffs {
            *c *= scale;
        }
        Spectrum {
            spec: self.spec.clone(),
            coeffs,
        }
    }

    /// Synthesis `f(x) = sum_k coeffs[k] psi_k(x)`.
    pub fn inverse(&self, spectrum: &Spectrum) -> GroupFunction {
        assert!(same_spec(&self.spec, spectrum.spec()), "spec mismatch");
        let mut values = spectrum.coeffs().to_vec();
        self.stagewise_dft(&mut values, false);
        GroupFunction {
            spec: self.spec.clone(),
            values,
        }
    }

    /// Direct quadratic analysis; the oracle for [`forward`](Self::forward).
    pub fn naive_forward(&self, f: &GroupFunction) -> Spectrum {
        assert!(same_spec(&self.spec, f.spec()), "spec mismatch");
        let total = self.spec.point_count();
        let scale = 1.0 / total as f64;
        let coeffs = (0..total)
            .map(|k| {
                let field = self.character_field(k);
                f.values()
                    .iter()
                    .zip(&field)
                    .map(|(v, psi)| v * psi.conj())
                    .sum::<Complex64>()
                    * scale
            })
            .collect();
        Spectrum {
            spec: self.spec.clone(),
            coeffs,
        }
    }

    /// The Haar convolution `(f * g)(x) = integral of f(t) g(x - t)`,
    /// computed spectrally.
    pub fn convolve(&self, f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction, Error> {
        if !same_spec(f.spec(), g.spec()) || !same_spec(&self.spec, f.spec()) {
            return Err(Error::SpecMismatch);
        }
        let mut product = self.forward(f);
        let rhs = self.forward(g);
        for (c, r) in product.coeffs_mut().iter_mut().zip(rhs.coeffs()) {
            *c *= r;
        }
        Ok(self.inverse(&product))
    }

    /// Direct double-loop convolution; the oracle for
    /// [`convolve`](Self::convolve).
    pub fn convolve_direct(
        &self,
        f: &GroupFunction,
        g: &GroupFunction,
    ) -> Result<GroupFunction, Error> {
        if !same_spec(f.spec(), g.spec()) || !same_spec(&self.spec, f.spec()) {
            return Err(Error::SpecMismatch);
        }
        let spec = &self.spec;
        let total = spec.point_count();
        let scale = 1.0 / total as f64;
        let values = (0..total)
            .map(|x| {
                (0..total)
                    .map(|t| f.value(t) * g.value(spec.sub_encoded(x, t)))
                    .sum::<Complex64>()
                    * scale
            })
            .collect();
        Ok(GroupFunction {
            spec: spec.clone(),
            values,
        })
    }
}
