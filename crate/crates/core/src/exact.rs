//! Exact arithmetic for character sums.
//!
//! Every character value on the quotient is an L-th root of unity, with
//! L the least common multiple of the radices. A Dirichlet kernel value is
//! therefore a sum of such roots, and we track it exactly as an integer
//! multiplicity vector over the monomial basis `1, zeta, ..., zeta^{L-1}`.
//! Such a sum is zero precisely when the associated polynomial is divisible
//! by the L-th cyclotomic polynomial, which gives an exact zero test with
//! integer arithmetic only. Identities that the floating-point path can only
//! approach to rounding error hold here with zero error.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::group::GroupSpec;

/// Coefficients of the cyclotomic polynomial of the given order,
/// lowest degree first, monic.
pub fn cyclotomic_polynomial(order: u64) -> Vec<i64> {
    assert!(order >= 1);
    let mut known: Vec<(u64, Vec<i64>)> = Vec::new();
    for divisor in 1..=order {
        if !order.is_multiple_of(divisor) {
            continue;
        }
        // x^divisor - 1 divided by the cyclotomic polynomials of the
        // proper divisors.
        let mut poly = vec![0i64; divisor as usize + 1];
        poly[0] = -1;
        poly[divisor as usize] = 1;
        for (d, phi) in &known {
            if divisor.is_multiple_of(*d) {
                poly = divide_exact(&poly, phi);
            }
        }
        known.push((divisor, poly));
    }
    known.pop().unwrap().1
}

/// Exact polynomial division by a monic divisor; panics on a nonzero
/// remainder.
fn divide_exact(dividend: &[i64], divisor: &[i64]) -> Vec<i64> {
    let deg_div = divisor.len() - 1;
    debug_assert_eq!(divisor[deg_div], 1);
    let mut rem = dividend.to_vec();
    let deg_num = rem.len() - 1;
    let mut quotient = vec![0i64; deg_num - deg_div + 1];
    for i in (0..quotient.len()).rev() {
        let c = rem[i + deg_div];
        quotient[i] = c;
        if c != 0 {
            for (j, &d) in divisor.iter().enumerate() {
                rem[i + j] -= c * d;
            }
        }
    }
    assert!(rem.iter().all(|&c| c == 0), "inexact polynomial division");
    quotient
}

/// Zero-testing context for multiplicity vectors over the L-th roots of
/// unity.
#[derive(Debug, Clone)]
pub struct Cyclotomy {
    order: u64,
    minimal: Vec<i64>,
}

impl Cyclotomy {
    pub fn new(order: u64) -> Self {
        Cyclotomy {
            order,
            minimal: cyclotomic_polynomial(order),
        }
    }

    pub fn for_spec(spec: &GroupSpec) -> Self {
        Self::new(spec.pairing_order())
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// True when the represented cyclotomic integer is zero: the
    /// multiplicity polynomial reduces to zero modulo the minimal
    /// polynomial.
    pub fn is_zero(&self, counts: &[i64]) -> bool {
        debug_assert_eq!(counts.len(), self.order as usize);
        let degree = self.minimal.len() - 1;
        let mut rem = counts.to_vec();
        for i in (degree..rem.len()).rev() {
            let c = rem[i];
            if c != 0 {
                rem[i] = 0;
                for j in 0..degree {
                    rem[i - degree + j] -= c * self.minimal[j];
                }
            }
        }
        rem.iter().all(|&c| c == 0)
    }
}

/// A function on the quotient with values in the cyclotomic integers,
/// stored as one multiplicity vector per point (flattened, stride L).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactFunction {
    point_count: usize,
    root_order: usize,
    counts: Vec<i64>,
}

impl ExactFunction {
    pub fn zeros(spec: &GroupSpec) -> Self {
        let point_count = spec.point_count() as usize;
        let root_order = spec.pairing_order() as usize;
        ExactFunction {
            point_count,
            root_order,
            counts: vec![0; point_count * root_order],
        }
    }

    pub fn point_count(&self) -> usize {
        self.point_count
    }

    /// Multiplicities at the point with the given encoding.
    pub fn counts_at(&self, encoded: u64) -> &[i64] {
        let l = self.root_order;
        &self.counts[encoded as usize * l..(encoded as usize + 1) * l]
    }

    /// Adds `scale` copies of the character of index `n`, pointwise.
    pub fn add_character(&mut self, spec: &GroupSpec, n: u64, scale: i64) {
        let exps = spec.pairing_exponents(n);
        let l = self.root_order;
        for (x, &t) in exps.iter().enumerate() {
            self.counts[x * l + t as usize] += scale;
        }
    }

    /// Pointwise difference.
    pub fn sub(&self, other: &ExactFunction) -> ExactFunction {
        assert_eq!(self.counts.len(), other.counts.len());
        let counts = self
            .counts
            .iter()
            .zip(&other.counts)
            .map(|(a, b)| a - b)
            .collect();
        ExactFunction { counts, ..*self }
    }

    /// Pointwise product with the character of index `n`; each value is a
    /// monomial rotation of the multiplicity vector.
    pub fn mul_character(&self, spec: &GroupSpec, n: u64) -> ExactFunction {
        let exps = spec.pairing_exponents(n);
        let l = self.root_order;
        let mut out = vec![0i64; self.counts.len()];
        for (x, &shift) in exps.iter().enumerate() {
            let shift = shift as usize;
            for t in 0..l {
                out[x * l + (t + shift) % l] = self.counts[x * l + t];
            }
        }
        ExactFunction {
            counts: out,
            ..*self
        }
    }

    /// True when the value at `encoded` equals the given integer.
    pub fn value_is_integer(&self, cyclotomy: &Cyclotomy, encoded: u64, value: i64) -> bool {
        let mut counts = self.counts_at(encoded).to_vec();
        counts[0] -= value;
        cyclotomy.is_zero(&counts)
    }

    /// True when the function is identically zero.
    pub fn is_zero(&self, cyclotomy: &Cyclotomy) -> bool {
        (0..self.point_count as u64).all(|x| self.value_is_integer(cyclotomy, x, 0))
    }

    /// Embeds into the complex numbers against a table of the L-th roots of
    /// unity.
    pub fn evaluate(&self, roots: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(roots.len(), self.root_order);
        (0..self.point_count)
            .map(|x| {
                self.counts[x * self.root_order..(x + 1) * self.root_order]
                    .iter()
                    .zip(roots)
                    .filter(|(&c, _)| c != 0)
                    .map(|(&c, r)| r * c as f64)
                    .sum()
            })
            .collect()
    }
}

/// The Dirichlet kernel `D_n = psi_0 + ... + psi_{n-1}` with exact values;
/// `D_0` is the empty sum.
pub fn exact_dirichlet(spec: &GroupSpec, n: u64) -> ExactFunction {
    assert!(n <= spec.point_count(), "kernel order {n} out of range");
    let mut out = ExactFunction::zeros(spec);
    for k in 0..n {
        out.add_character(spec, k, 1);
    }
    out
}

/// The Fejér numerator `n * K_n = sum_{k<n} D_k`, built from its
/// coefficient form `sum_{j<=n-2} (n-1-j) psi_j`.
pub fn exact_fejer_numerator(spec: &GroupSpec, n: u64) -> ExactFunction {
    assert!(
        n >= 1 && n <= spec.point_count(),
        "kernel order {n} out of range"
    );
    let mut out = ExactFunction::zeros(spec);
    for j in 0..n.saturating_sub(1) {
        out.add_character(spec, j, (n - 1 - j) as i64);
    }
    out
}
