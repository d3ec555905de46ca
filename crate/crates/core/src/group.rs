//! Mixed-radix arithmetic for the bounded group: the generalized number
//! system, point/index codecs, the coordinatewise group operation, coset
//! geometry, and the structured index sums driving the kernel lower bounds.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;

/// Default cap on the quotient order M_N. Keeps exhaustive scans tractable.
pub const DEFAULT_ORDER_CAP: u64 = 1 << 22;

/// A bounded group at finite resolution: the generating radices
/// `m_0, ..., m_{N-1}` together with the cumulative orders
/// `M_0 = 1, M_{k+1} = m_k * M_k`.
///
/// The resolution-N quotient has exactly `M_N` points; every operation in
/// this crate works on that quotient. Specs are immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    radices: Vec<u32>,
    orders: Vec<u64>,
    pairing_order: u64,
}

impl GroupSpec {
    /// Builds a spec from the first `resolution` radices, with the default cap.
    pub fn new(radices: &[u32], resolution: usize) -> Result<Self, Error> {
        Self::with_cap(radices, resolution, DEFAULT_ORDER_CAP)
    }

    /// Builds a spec with an explicit cap on the quotient order.
    pub fn with_cap(radices: &[u32], resolution: usize, cap: u64) -> Result<Self, Error> {
        if radices.len() < resolution {
            return Err(Error::TooFewRadices {
                needed: resolution,
                available: radices.len(),
            });
        }
        let radices: Vec<u32> = radices[..resolution].to_vec();
        for (position, &radix) in radices.iter().enumerate() {
            if radix < 2 {
                return Err(Error::InvalidRadix { position, radix });
            }
        }
        let mut orders = Vec::with_capacity(resolution + 1);
        orders.push(1u64);
        for &radix in &radices {
            let next = orders
                .last()
                .unwrap()
                .checked_mul(u64::from(radix))
                .filter(|&m| m <= cap)
                .ok_or(Error::ResolutionTooLarge { cap })?;
            orders.push(next);
        }
        let pairing_order = radices.iter().fold(1u64, |acc, &m| lcm(acc, u64::from(m)));
        Ok(GroupSpec {
            radices,
            orders,
            pairing_order,
        })
    }

    /// Number of retained coordinates N.
    pub fn resolution(&self) -> usize {
        self.radices.len()
    }

    /// The generating radices `m_0..m_{N-1}`.
    pub fn radices(&self) -> &[u32] {
        &self.radices
    }

    /// The radix `m_k`.
    pub fn radix(&self, k: usize) -> u32 {
        self.radices[k]
    }

    /// The cumulative orders `M_0..=M_N`.
    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// The cumulative order `M_k`.
    pub fn order(&self, k: usize) -> u64 {
        self.orders[k]
    }

    /// Total number of points `M_N` in the quotient.
    pub fn point_count(&self) -> u64 {
        *self.orders.last().unwrap()
    }

    /// Least common multiple L of the radices; every character value is an
    /// L-th root of unity.
    pub fn pairing_order(&self) -> u64 {
        self.pairing_order
    }

    /// True when `finer` begins with the same radices, at equal or higher
    /// resolution.
    pub fn is_prefix_of(&self, finer: &GroupSpec) -> bool {
        finer.radices.len() >= self.radices.len()
            && finer.radices[..self.radices.len()] == self.radices[..]
    }

    /// The zero point.
    pub fn zero(&self) -> Point {
        Point {
            digits: vec![0; self.resolution()],
        }
    }

    /// The unit point `e_k` with a single 1 at coordinate `k`.
    pub fn unit(&self, k: usize) -> Point {
        assert!(k < self.resolution(), "coordinate {k} out of range");
        let mut digits = vec![0; self.resolution()];
        digits[k] = 1;
        Point { digits }
    }

    /// Validates a digit vector into a point.
    pub fn point(&self, digits: &[u32]) -> Result<Point, Error> {
        if digits.len() != self.resolution() {
            return Err(Error::LengthMismatch {
                expected: self.resolution(),
                got: digits.len(),
            });
        }
        for (position, (&digit, &radix)) in digits.iter().zip(&self.radices).enumerate() {
            if digit >= radix {
                return Err(Error::DigitOutOfRange {
                    position,
                    digit,
                    radix,
                });
            }
        }
        Ok(Point {
            digits: digits.to_vec(),
        })
    }

    /// True when the point's digits are valid for this spec.
    pub fn compatible(&self, point: &Point) -> bool {
        point.digits.len() == self.resolution()
            && point.digits.iter().zip(&self.radices).all(|(&d, &m)| d < m)
    }

    /// Mixed-radix encoding: digit k carries weight `M_k`.
    pub fn encode(&self, point: &Point) -> u64 {
        debug_assert!(self.compatible(point));
        point
            .digits
            .iter()
            .zip(&self.orders)
            .map(|(&d, &weight)| u64::from(d) * weight)
            .sum()
    }

    /// Inverse of [`encode`](Self::encode).
    pub fn decode(&self, encoded: u64) -> Point {
        assert!(
            encoded < self.point_count(),
            "encoding {encoded} out of range"
        );
        let mut digits = Vec::with_capacity(self.resolution());
        let mut rest = encoded;
        for &m in &self.radices {
            let m = u64::from(m);
            digits.push((rest % m) as u32);
            rest /= m;
        }
        Point { digits }
    }

    /// All `M_N` points in encoding order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        (0..self.point_count()).map(move |i| self.decode(i))
    }

    /// Coordinatewise sum modulo the radices.
    pub fn add(&self, x: &Point, y: &Point) -> Point {
        debug_assert!(self.compatible(x) && self.compatible(y));
        let digits = x
            .digits
            .iter()
            .zip(&y.digits)
            .zip(&self.radices)
            .map(|((&a, &b), &m)| (a + b) % m)
            .collect();
        Point { digits }
    }

    /// Coordinatewise difference modulo the radices.
    pub fn sub(&self, x: &Point, y: &Point) -> Point {
        debug_assert!(self.compatible(x) && self.compatible(y));
        let digits = x
            .digits
            .iter()
            .zip(&y.digits)
            .zip(&self.radices)
            .map(|((&a, &b), &m)| (a + m - b) % m)
            .collect();
        Point { digits }
    }

    /// Coordinatewise negation.
    pub fn neg(&self, x: &Point) -> Point {
        debug_assert!(self.compatible(x));
        let digits = x
            .digits
            .iter()
            .zip(&self.radices)
            .map(|(&a, &m)| if a == 0 { 0 } else { m - a })
            .collect();
        Point { digits }
    }

    /// Difference of two encoded points, without materializing digit vectors.
    pub fn sub_encoded(&self, a: u64, b: u64) -> u64 {
        debug_assert!(a < self.point_count() && b < self.point_count());
        let mut out = 0;
        let mut rest_a = a;
        let mut rest_b = b;
        for (&m, &weight) in self.radices.iter().zip(&self.orders) {
            let m = u64::from(m);
            let da = rest_a % m;
            let db = rest_b % m;
            rest_a /= m;
            rest_b /= m;
            out += ((da + m - db) % m) * weight;
        }
        out
    }

    /// Expands `value` in the generalized number system.
    pub fn index(&self, value: u64) -> Result<Index, Error> {
        if value >= self.point_count() {
            return Err(Error::IndexOutOfRange {
                value,
                bound: self.point_count(),
            });
        }
        let digits = self.decode(value).digits;
        let order = digits.iter().rposition(|&d| d != 0).unwrap_or(0);
        Ok(Index {
            value,
            digits,
            order,
        })
    }

    /// Recombines digits into an integer; inverse of [`index`](Self::index).
    pub fn from_digits(&self, digits: &[u32]) -> Result<u64, Error> {
        let point = self.point(digits)?;
        Ok(self.encode(&point))
    }

    /// The position of the highest nonzero digit (0 for value 0).
    pub fn order_of(&self, value: u64) -> Result<usize, Error> {
        Ok(self.index(value)?.order)
    }

    /// The structured index `q_A = M_{2A} + M_{2A-2} + ... + M_2 + M_0`.
    pub fn q_number(&self, a: usize) -> Result<u64, Error> {
        if 2 * a >= self.resolution() {
            return Err(Error::QIndexOutOfRange {
                index: a,
                resolution: self.resolution(),
            });
        }
        Ok((0..=a).map(|j| self.orders[2 * j]).sum())
    }

    /// The coset `I_depth(base)`; digits of `base` at or beyond `depth` are
    /// zeroed so each coset has a canonical representative.
    pub fn coset(&self, base: &Point, depth: usize) -> Result<Coset, Error> {
        if depth > self.resolution() {
            return Err(Error::DepthOutOfRange {
                depth,
                resolution: self.resolution(),
            });
        }
        if !self.compatible(base) {
            return Err(Error::LengthMismatch {
                expected: self.resolution(),
                got: base.digits.len(),
            });
        }
        let mut digits = base.digits.clone();
        for d in digits.iter_mut().skip(depth) {
            *d = 0;
        }
        Ok(Coset {
            base: Point { digits },
            depth,
        })
    }

    /// The exponent `t` with `psi_n(x) = zeta_L^t`, where `zeta_L` is the
    /// primitive L-th root of unity: `t = sum_k n_k x_k (L / m_k) mod L`.
    pub fn pairing_exponent(&self, n: u64, x: &Point) -> u64 {
        debug_assert!(n < self.point_count() && self.compatible(x));
        let l = self.pairing_order;
        let mut rest = n;
        let mut acc = 0u64;
        for (&m, &xk) in self.radices.iter().zip(&x.digits) {
            let m = u64::from(m);
            let nk = rest % m;
            rest /= m;
            acc = (acc + nk * u64::from(xk) % l * (l / m)) % l;
        }
        acc
    }

    /// Pairing exponents of `psi_n` against every point, in encoding order.
    /// Built coordinate by coordinate in O(M_N).
    pub fn pairing_exponents(&self, n: u64) -> Vec<u64> {
        assert!(n < self.point_count(), "index {n} out of range");
        let l = self.pairing_order;
        let total = self.point_count() as usize;
        let mut exps = vec![0u64; total];
        let mut filled = 1usize;
        let mut rest = n;
        for &m in &self.radices {
            let m = u64::from(m);
            let nk = rest % m;
            rest /= m;
            let weight = l / m;
            for d in 1..m as usize {
                let offset = nk * d as u64 % l * weight % l;
                let (head, tail) = exps.split_at_mut(d * filled);
                for r in 0..filled {
                    tail[r] = (head[r] + offset) % l;
                }
            }
            filled *= m as usize;
        }
        exps
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m=")?;
        for (i, m) in self.radices.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, " N={}", self.resolution())
    }
}

/// An element of the resolution-N quotient: one digit per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    digits: Vec<u32>,
}

impl Point {
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn digit(&self, k: usize) -> u32 {
        self.digits[k]
    }

    pub fn is_zero(&self) -> bool {
        self.digits.iter().all(|&d| d == 0)
    }

    /// Position of the first nonzero coordinate, if any.
    pub fn leading_coordinate(&self) -> Option<usize> {
        self.digits.iter().position(|&d| d != 0)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// An integer below `M_N` with its mixed-radix expansion and order
/// (the position of its highest nonzero digit; 0 by convention for value 0).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Index {
    value: u64,
    digits: Vec<u32>,
    order: usize,
}

impl Index {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn order(&self) -> usize {
        self.order
    }
}

/// The coset `I_depth(base)`: points agreeing with `base` in the first
/// `depth` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coset {
    base: Point,
    depth: usize,
}

impl Coset {
    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Reciprocal of the Haar measure: `measure = 1 / M_depth` exactly.
    pub fn measure_recip(&self, spec: &GroupSpec) -> u64 {
        spec.order(self.depth)
    }

    pub fn contains(&self, point: &Point) -> bool {
        point.digits[..self.depth] == self.base.digits[..self.depth]
    }

    pub fn contains_encoded(&self, spec: &GroupSpec, encoded: u64) -> bool {
        let block = spec.order(self.depth);
        encoded % block == spec.encode(&self.base) % block
    }

    /// Member encodings at the spec resolution: an arithmetic progression
    /// with stride `M_depth`.
    pub fn member_encodings<'a>(&self, spec: &'a GroupSpec) -> impl Iterator<Item = u64> + 'a {
        let block = spec.order(self.depth);
        let low = spec.encode(&self.base) % block;
        (0..spec.point_count() / block).map(move |t| low + t * block)
    }
}

/// The two-branch coset family `I_depth^{k,l}`, optionally refined to fixed
/// nonzero digits `(alpha, beta)` at coordinates k and l.
///
/// For `k < l < depth` the members have zeros strictly before k and between
/// k and l, nonzero digits at k and l, and free digits after l. For
/// `l = depth` the members have a single nonzero digit, at coordinate k,
/// among the first `depth` coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CosetFamily {
    depth: usize,
    k: usize,
    l: usize,
    fixed: Option<(u32, u32)>,
}

impl CosetFamily {
    pub fn new(spec: &GroupSpec, depth: usize, k: usize, l: usize) -> Result<Self, Error> {
        if depth > spec.resolution() {
            return Err(Error::DepthOutOfRange {
                depth,
                resolution: spec.resolution(),
            });
        }
        if k >= l || l > depth {
            return Err(Error::InvalidCosetPair { k, l, depth });
        }
        Ok(CosetFamily {
            depth,
            k,
            l,
            fixed: None,
        })
    }

    /// The refinement with `x_k = alpha` and `x_l = beta`; only the
    /// `l < depth` branch splits this way.
    pub fn refined(&self, spec: &GroupSpec, alpha: u32, beta: u32) -> Result<Self, Error> {
        if self.l == self.depth {
            return Err(Error::InvalidCosetPair {
                k: self.k,
                l: self.l,
                depth: self.depth,
            });
        }
        if alpha == 0 || alpha >= spec.radix(self.k) {
            return Err(Error::DigitOutOfRange {
                position: self.k,
                digit: alpha,
                radix: spec.radix(self.k),
            });
        }
        if beta == 0 || beta >= spec.radix(self.l) {
            return Err(Error::DigitOutOfRange {
                position: self.l,
                digit: beta,
                radix: spec.radix(self.l),
            });
        }
        Ok(CosetFamily {
            fixed: Some((alpha, beta)),
            ..*self
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn coordinates(&self) -> (usize, usize) {
        (self.k, self.l)
    }

    pub fn contains(&self, point: &Point) -> bool {
        let digits = point.digits();
        if digits[..self.k].iter().any(|&d| d != 0) || digits[self.k] == 0 {
            return false;
        }
        if self.l == self.depth {
            // Single nonzero coordinate among the first `depth`.
            digits[self.k + 1..self.depth].iter().all(|&d| d == 0)
        } else {
            if digits[self.k + 1..self.l].iter().any(|&d| d != 0) || digits[self.l] == 0 {
                return false;
            }
            match self.fixed {
                Some((alpha, beta)) => digits[self.k] == alpha && digits[self.l] == beta,
                None => true,
            }
        }
    }

    pub fn contains_encoded(&self, spec: &GroupSpec, encoded: u64) -> bool {
        self.contains(&spec.decode(encoded))
    }
}

/// Result of the exhaustive coset partition checks: the union of the
/// refinements reproduces each family exactly, and the families tile the
/// complement of `I_depth(0)` without overlap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub refinement_violations: u64,
    pub cover_violations: u64,
    pub points_checked: u64,
}

impl PartitionReport {
    pub fn pass(&self) -> bool {
        self.refinement_violations == 0 && self.cover_violations == 0
    }
}

/// Exhaustively verifies both coset partitions at the given depth: each
/// family `I^{k,l}` with `l < depth` is the disjoint union of its
/// refinements, and the complement of `I_depth(0)` is the disjoint union of
/// all families (including the `l = depth` branch).
pub fn verify_coset_partition(spec: &GroupSpec, depth: usize) -> Result<PartitionReport, Error> {
    if depth > spec.resolution() || depth == 0 {
        return Err(Error::DepthOutOfRange {
            depth,
            resolution: spec.resolution(),
        });
    }
    let mut families = Vec::new();
    for k in 0..depth {
        for l in (k + 1)..=depth {
            families.push(CosetFamily::new(spec, depth, k, l)?);
        }
    }
    let zero_coset = spec.coset(&spec.zero(), depth)?;
    let mut refinement_violations = 0;
    let mut cover_violations = 0;
    for point in spec.points() {
        let mut covering = 0usize;
        for family in &families {
            let inside = family.contains(&point);
            if inside {
                covering += 1;
            }
            let (k, l) = family.coordinates();
            if l < depth {
                let mut refined_hits = 0usize;
                for alpha in 1..spec.radix(k) {
                    for beta in 1..spec.radix(l) {
                        if family.refined(spec, alpha, beta)?.contains(&point) {
                            refined_hits += 1;
                        }
                    }
                }
                if refined_hits != usize::from(inside) {
                    refinement_violations += 1;
                }
            }
        }
        let expected = usize::from(!zero_coset.contains(&point));
        if covering != expected {
            cover_violations += 1;
        }
    }
    Ok(PartitionReport {
        refinement_violations,
        cover_violations,
        points_checked: spec.point_count(),
    })
}

/// Parses a radix sequence: comma-separated integers, where a token `r^k`
/// expands to `k` copies of `r` ("2^10" is the ten-coordinate dyadic case).
pub fn parse_radices(text: &str) -> Result<Vec<u32>, Error> {
    let mut out = Vec::new();
    for token in text.split(',') {
        let token = token.trim();
        let err = || Error::ParseRadix {
            token: String::from(token),
        };
        if let Some((base, count)) = token.split_once('^') {
            let base: u32 = base.trim().parse().map_err(|_| err())?;
            let count: usize = count.trim().parse().map_err(|_| err())?;
            if count == 0 {
                return Err(err());
            }
            out.extend(core::iter::repeat_n(base, count));
        } else {
            out.push(token.parse().map_err(|_| err())?);
        }
    }
    Ok(out)
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}
