//! Coefficient rings for truncated power series.
//!
//! Two rings are supported: exact arbitrary-precision integers and the
//! residue ring Z/M for a runtime modulus M (2 <= M <= 2^63, composite
//! moduli allowed). Division is only ever performed by units; every
//! inverse goes through the kernel's `inv`, which reports non-units
//! instead of producing garbage.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::{Error, Result};

/// Largest modulus accepted for the `Mod` ring.
///
/// The convolution kernel accumulates raw `a*b` products in a `u128`
/// before reducing; `M <= 2^63` keeps every intermediate in range even
/// on the slow per-term path.
pub const MAX_MODULUS: u64 = 1 << 63;

/// Coefficient ring of a series: exact integers or integers modulo M.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CoeffRing {
    /// Exact arbitrary-precision integers.
    Int,
    /// Integers modulo the given M (M >= 2; prime powers like 3^7 included).
    Mod(u64),
}

impl CoeffRing {
    /// Checked constructor for the modular ring.
    pub fn modular(m: u64) -> Result<CoeffRing> {
        if !(2..=MAX_MODULUS).contains(&m) {
            return Err(Error::InvalidModulus(m));
        }
        Ok(CoeffRing::Mod(m))
    }

    /// The modulus, if this is a modular ring.
    pub fn modulus(&self) -> Option<u64> {
        match self {
            CoeffRing::Int => None,
            CoeffRing::Mod(m) => Some(*m),
        }
    }

    pub(crate) fn validate(&self) {
        if let CoeffRing::Mod(m) = self {
            assert!(
                *m >= 2 && *m <= MAX_MODULUS,
                "modulus {m} outside supported range [2, 2^63]"
            );
        }
    }
}

impl fmt::Display for CoeffRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffRing::Int => write!(f, "Z"),
            CoeffRing::Mod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// A single coefficient, carried out of a series by [`crate::Series::coeff`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Coeff {
    Int(BigInt),
    Mod(u64),
}

impl Coeff {
    /// The value as a `BigInt` regardless of ring (modular values are
    /// returned as their canonical representative in `[0, M)`).
    pub fn to_bigint(&self) -> BigInt {
        match self {
            Coeff::Int(v) => v.clone(),
            Coeff::Mod(v) => BigInt::from(*v),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Int(v) => v.is_zero(),
            Coeff::Mod(v) => *v == 0,
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Int(v) => write!(f, "{v}"),
            Coeff::Mod(v) => write!(f, "{v}"),
        }
    }
}

/// Convolutions shorter than this stay single-threaded; beyond it the
/// output range is split across the rayon pool. Outputs are independent,
/// so the result is identical either way.
const PAR_MIN_LEN: usize = 8192;
const PAR_CHUNK: usize = 2048;

/// Internal element-level operations a coefficient ring must provide.
///
/// `convolve` and `invert_series` are part of the trait so each ring can
/// supply its optimal inner loop; both must implement plain schoolbook
/// semantics (truncated Cauchy product, linear inversion recurrence).
pub(crate) trait Kernel: Sync {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    /// The image of the integer `v` in this ring.
    fn embed_i64(&self, v: i64) -> Self::Elem;
    /// Multiplicative inverse, or `None` if `x` is not a unit.
    fn inv(&self, x: &Self::Elem) -> Option<Self::Elem>;

    /// Truncated Cauchy product: `out[i] = sum_{j} a[j] * b[i-j]` for
    /// `i < n`. Requires `a.len() >= n` and `b.len() >= n`.
    fn convolve(&self, a: &[Self::Elem], b: &[Self::Elem], n: usize) -> Vec<Self::Elem>;

    /// Multiplicative inverse of the series `a` to order `n` via the
    /// recurrence `b[k] = a[0]^{-1} (delta_{k,0} - sum_{j=1..=k} a[j] b[k-j])`.
    /// `None` if `a[0]` is not a unit.
    fn invert_series(&self, a: &[Self::Elem], n: usize) -> Option<Vec<Self::Elem>>;
}

/// Indices of nonzero entries of `a[..n]`, paired with the entries.
/// Skipping exact zeros in the convolution changes nothing but the
/// constant factor: f_r expansions are mostly zeros.
fn support<E, F: Fn(&E) -> bool>(a: &[E], n: usize, is_zero: F) -> Vec<(usize, &E)> {
    a[..n.min(a.len())]
        .iter()
        .enumerate()
        .filter(|(_, v)| !is_zero(v))
        .collect()
}

// ---------------------------------------------------------------------------
// Exact integers
// ---------------------------------------------------------------------------

pub(crate) struct IntKernel;

impl Kernel for IntKernel {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, x: &BigInt) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x + y
    }
    fn sub(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x - y
    }
    fn neg(&self, x: &BigInt) -> BigInt {
        -x
    }
    fn mul(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * y
    }
    fn embed_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn inv(&self, x: &BigInt) -> Option<BigInt> {
        // Units of Z are exactly +-1, each its own inverse.
        if x.abs().is_one() {
            Some(x.clone())
        } else {
            None
        }
    }

    fn convolve(&self, a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
        let supp_a = support(a, n, |v: &BigInt| v.is_zero());
        let supp_b = support(b, n, |v: &BigInt| v.is_zero());
        let (supp, dense) = if supp_a.len() <= supp_b.len() {
            (supp_a, b)
        } else {
            (supp_b, a)
        };
        let at = |i: usize| -> BigInt {
            let mut acc = BigInt::zero();
            for &(j, v) in &supp {
                if j > i {
                    break;
                }
                acc += v * &dense[i - j];
            }
            acc
        };
        if n >= PAR_MIN_LEN {
            let mut out = vec![BigInt::zero(); n];
            out.par_chunks_mut(PAR_CHUNK)
                .enumerate()
                .for_each(|(c, chunk)| {
                    for (off, slot) in chunk.iter_mut().enumerate() {
                        *slot = at(c * PAR_CHUNK + off);
                    }
                });
            out
        } else {
            (0..n).map(at).collect()
        }
    }

    fn invert_series(&self, a: &[BigInt], n: usize) -> Option<Vec<BigInt>> {
        let c0_inv = self.inv(a.first()?)?;
        let supp = support(&a[1..], n.saturating_sub(1), |v: &BigInt| v.is_zero());
        let mut b = Vec::with_capacity(n);
        b.push(c0_inv.clone());
        for i in 1..n {
            let mut acc = BigInt::zero();
            for &(j, v) in &supp {
                let j = j + 1;
                if j > i {
                    break;
                }
                acc += v * &b[i - j];
            }
            b.push(&c0_inv * -acc);
        }
        Some(b)
    }
}

// ---------------------------------------------------------------------------
// Z/M
// ---------------------------------------------------------------------------

/// Elements are canonical representatives in `[0, M)` stored as `u64`.
pub(crate) struct ModKernel {
    pub m: u64,
}

impl ModKernel {
    pub fn new(m: u64) -> ModKernel {
        assert!((2..=MAX_MODULUS).contains(&m), "modulus {m} out of range");
        ModKernel { m }
    }

    /// Whether raw products fit a u64 and sums of up to 2^32 of them fit
    /// a u128, enabling the accumulate-then-reduce loop.
    fn narrow(&self) -> bool {
        self.m <= u32::MAX as u64
    }

    fn mulmod(&self, x: u64, y: u64) -> u64 {
        ((x as u128 * y as u128) % self.m as u128) as u64
    }
}

impl Kernel for ModKernel {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.m
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }

    fn add(&self, x: &u64, y: &u64) -> u64 {
        // x + y < 2M <= 2^64 may still wrap for M near 2^63's upper range;
        // wrapping_sub keeps the value correct in either case.
        let s = x.wrapping_add(*y);
        if s >= self.m || s < *x {
            s.wrapping_sub(self.m)
        } else {
            s
        }
    }

    fn sub(&self, x: &u64, y: &u64) -> u64 {
        if x >= y {
            x - y
        } else {
            x.wrapping_sub(*y).wrapping_add(self.m)
        }
    }

    fn neg(&self, x: &u64) -> u64 {
        if *x == 0 {
            0
        } else {
            self.m - x
        }
    }

    fn mul(&self, x: &u64, y: &u64) -> u64 {
        self.mulmod(*x, *y)
    }

    fn embed_i64(&self, v: i64) -> u64 {
        (v as i128).rem_euclid(self.m as i128) as u64
    }

    fn inv(&self, x: &u64) -> Option<u64> {
        mod_inverse(*x, self.m)
    }

    fn convolve(&self, a: &[u64], b: &[u64], n: usize) -> Vec<u64> {
        let supp_a = support(a, n, |v: &u64| *v == 0);
        let supp_b = support(b, n, |v: &u64| *v == 0);
        let (supp, dense) = if supp_a.len() <= supp_b.len() {
            (supp_a, b)
        } else {
            (supp_b, a)
        };
        let supp: Vec<(usize, u64)> = supp.into_iter().map(|(i, v)| (i, *v)).collect();
        let m = self.m;
        let narrow = self.narrow();
        let at = |i: usize| -> u64 {
            if narrow {
                // Products < 2^64 and at most 2^32 terms: the u128
                // accumulator cannot overflow, so reduce once at the end.
                let mut acc: u128 = 0;
                for &(j, v) in &supp {
                    if j > i {
                        break;
                    }
                    acc += v as u128 * dense[i - j] as u128;
                }
                (acc % m as u128) as u64
            } else {
                let mut acc: u64 = 0;
                for &(j, v) in &supp {
                    if j > i {
                        break;
                    }
                    let t = ((v as u128 * dense[i - j] as u128) % m as u128) as u64;
                    acc = self.add(&acc, &t);
                }
                acc
            }
        };
        if n >= PAR_MIN_LEN {
            (0..n)
                .into_par_iter()
                .with_min_len(PAR_CHUNK)
                .map(at)
                .collect()
        } else {
            (0..n).map(at).collect()
        }
    }

    fn invert_series(&self, a: &[u64], n: usize) -> Option<Vec<u64>> {
        let c0_inv = self.inv(a.first()?)?;
        let supp: Vec<(usize, u64)> = a[1..a.len().min(n)]
            .iter()
            .enumerate()
            .filter(|(_, v)| **v != 0)
            .map(|(i, v)| (i + 1, *v))
            .collect();
        let m = self.m;
        let narrow = self.narrow();
        let mut b = vec![0u64; n.max(1)];
        b[0] = c0_inv;
        for i in 1..n {
            let s = if narrow {
                let mut acc: u128 = 0;
                for &(j, v) in &supp {
                    if j > i {
                        break;
                    }
                    acc += v as u128 * b[i - j] as u128;
                }
                (acc % m as u128) as u64
            } else {
                let mut acc: u64 = 0;
                for &(j, v) in &supp {
                    if j > i {
                        break;
                    }
                    let t = self.mulmod(v, b[i - j]);
                    acc = self.add(&acc, &t);
                }
                acc
            };
            b[i] = self.mulmod(c0_inv, self.neg(&s));
        }
        Some(b)
    }
}

/// Extended-Euclid inverse of `x` modulo `m`, or `None` when gcd(x, m) != 1.
pub fn mod_inverse(x: u64, m: u64) -> Option<u64> {
    if m < 2 {
        return None;
    }
    let (mut r0, mut r1) = (m as i128, (x % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}
