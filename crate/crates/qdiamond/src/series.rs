//! Truncated formal power series in q over a [`CoeffRing`].
//!
//! # Truncation convention
//!
//! A series of order N retains the coefficients of q^0 .. q^{N-1} and
//! nothing else. Every operation documents the order of its result;
//! binary operations on operands of different orders truncate to the
//! smaller order (matching how the identities are manipulated by hand).
//!
//! Series are immutable after construction and all operations are pure,
//! so values can be shared freely across threads.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::ring::{Coeff, CoeffRing, IntKernel, Kernel, ModKernel};
use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub(crate) enum Data {
    Int(Vec<BigInt>),
    Mod(Vec<u64>),
}

/// A truncated power series: `coeffs[i]` is the coefficient of q^i.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Series {
    ring: CoeffRing,
    data: Data,
}

/// Dispatch a unary operation to the ring-specific kernel.
macro_rules! with_kernel {
    ($s:expr, |$k:ident, $a:ident| $body:expr) => {
        match &$s.data {
            Data::Int($a) => {
                let $k = IntKernel;
                Data::Int($body)
            }
            Data::Mod($a) => {
                let $k = ModKernel::new($s.ring.modulus().expect("Mod data has modulus"));
                Data::Mod($body)
            }
        }
    };
}

/// Dispatch a binary operation; callers must have checked `same_ring`.
macro_rules! with_kernel2 {
    ($s:expr, $t:expr, |$k:ident, $a:ident, $b:ident| $body:expr) => {
        match (&$s.data, &$t.data) {
            (Data::Int($a), Data::Int($b)) => {
                let $k = IntKernel;
                Data::Int($body)
            }
            (Data::Mod($a), Data::Mod($b)) => {
                let $k = ModKernel::new($s.ring.modulus().expect("Mod data has modulus"));
                Data::Mod($body)
            }
            _ => unreachable!("ring equality checked before dispatch"),
        }
    };
}

impl Series {
    /// The zero series of order `n`.
    pub fn zero(ring: CoeffRing, n: usize) -> Series {
        ring.validate();
        assert!(n >= 1, "series order must be at least 1");
        let data = match ring {
            CoeffRing::Int => Data::Int(vec![BigInt::zero(); n]),
            CoeffRing::Mod(_) => Data::Mod(vec![0; n]),
        };
        Series { ring, data }
    }

    /// The constant series 1 of order `n`.
    pub fn one(ring: CoeffRing, n: usize) -> Series {
        let mut s = Series::zero(ring, n);
        s.set_i64(0, 1);
        s
    }

    /// The monomial c*q^e of order `n` (`e < n`).
    pub fn monomial(ring: CoeffRing, n: usize, e: usize, c: i64) -> Series {
        assert!(e < n, "monomial exponent {e} must be below order {n}");
        let mut s = Series::zero(ring, n);
        s.set_i64(e, c);
        s
    }

    /// Build a series from explicit integer coefficients (reduced into the
    /// ring). Order equals `coeffs.len()`.
    pub fn from_i64(ring: CoeffRing, coeffs: &[i64]) -> Series {
        let mut s = Series::zero(ring, coeffs.len().max(1));
        for (i, &c) in coeffs.iter().enumerate() {
            s.set_i64(i, c);
        }
        s
    }

    pub(crate) fn from_parts(ring: CoeffRing, data: Data) -> Series {
        ring.validate();
        match (&ring, &data) {
            (CoeffRing::Int, Data::Int(_)) | (CoeffRing::Mod(_), Data::Mod(_)) => {}
            _ => unreachable!("ring and data representation must agree"),
        }
        Series { ring, data }
    }

    pub fn ring(&self) -> CoeffRing {
        self.ring
    }

    /// Number of retained coefficients (of q^0 .. q^{order-1}).
    pub fn order(&self) -> usize {
        match &self.data {
            Data::Int(v) => v.len(),
            Data::Mod(v) => v.len(),
        }
    }

    pub(crate) fn set_i64(&mut self, i: usize, c: i64) {
        match &mut self.data {
            Data::Int(v) => v[i] = BigInt::from(c),
            Data::Mod(v) => {
                let m = self.ring.modulus().expect("Mod data has modulus");
                v[i] = (c as i128).rem_euclid(m as i128) as u64;
            }
        }
    }

    pub(crate) fn add_i64_at(&mut self, i: usize, c: i64) {
        match &mut self.data {
            Data::Int(v) => v[i] += BigInt::from(c),
            Data::Mod(v) => {
                let k = ModKernel::new(self.ring.modulus().expect("Mod data has modulus"));
                v[i] = k.add(&v[i], &k.embed_i64(c));
            }
        }
    }

    fn same_ring(&self, other: &Series) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring, other.ring));
        }
        Ok(())
    }

    fn wrap(&self, data: Data) -> Series {
        Series {
            ring: self.ring,
            data,
        }
    }

    /// Coefficient of q^n. Errors if `n >= order`.
    pub fn coeff(&self, n: usize) -> Result<Coeff> {
        if n >= self.order() {
            return Err(Error::IndexOutOfRange {
                index: n,
                order: self.order(),
            });
        }
        Ok(match &self.data {
            Data::Int(v) => Coeff::Int(v[n].clone()),
            Data::Mod(v) => Coeff::Mod(v[n]),
        })
    }

    /// Coefficient slice when the ring is exact.
    pub fn coeffs_int(&self) -> Option<&[BigInt]> {
        match &self.data {
            Data::Int(v) => Some(v),
            Data::Mod(_) => None,
        }
    }

    /// Coefficient slice when the ring is modular.
    pub fn coeffs_mod(&self) -> Option<&[u64]> {
        match &self.data {
            Data::Mod(v) => Some(v),
            Data::Int(_) => None,
        }
    }

    /// Compare the first `n` coefficients. Errors if either order is below `n`.
    pub fn equal_up_to(&self, other: &Series, n: usize) -> Result<bool> {
        self.same_ring(other)?;
        let avail = self.order().min(other.order());
        if n > avail {
            return Err(Error::IndexOutOfRange {
                index: n,
                order: avail,
            });
        }
        Ok(match (&self.data, &other.data) {
            (Data::Int(a), Data::Int(b)) => a[..n] == b[..n],
            (Data::Mod(a), Data::Mod(b)) => a[..n] == b[..n],
            _ => unreachable!(),
        })
    }

    /// Index of the first nonzero coefficient, if any.
    pub fn first_nonzero(&self) -> Option<usize> {
        match &self.data {
            Data::Int(v) => v.iter().position(|c| !c.is_zero()),
            Data::Mod(v) => v.iter().position(|c| *c != 0),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.first_nonzero().is_none()
    }

    /// Pointwise sum; order is the smaller operand order.
    pub fn add(&self, other: &Series) -> Result<Series> {
        self.same_ring(other)?;
        Ok(self.wrap(with_kernel2!(self, other, |k, a, b| {
            let n = a.len().min(b.len());
            (0..n).map(|i| k.add(&a[i], &b[i])).collect()
        })))
    }

    /// Pointwise difference; order is the smaller operand order.
    pub fn sub(&self, other: &Series) -> Result<Series> {
        self.same_ring(other)?;
        Ok(self.wrap(with_kernel2!(self, other, |k, a, b| {
            let n = a.len().min(b.len());
            (0..n).map(|i| k.sub(&a[i], &b[i])).collect()
        })))
    }

    /// Multiply every coefficient by the integer `c`.
    pub fn scalar_mul(&self, c: i64) -> Series {
        self.wrap(with_kernel!(self, |k, a| {
            let c = k.embed_i64(c);
            a.iter().map(|x| k.mul(x, &c)).collect()
        }))
    }

    /// Truncated Cauchy product; order is the smaller operand order.
    pub fn mul(&self, other: &Series) -> Result<Series> {
        self.same_ring(other)?;
        Ok(self.wrap(with_kernel2!(self, other, |k, a, b| {
            let n = a.len().min(b.len());
            k.convolve(a, b, n)
        })))
    }

    /// Subquadratic (Karatsuba) multiplication. Same contract and
    /// bit-identical output as [`Series::mul`]; exposed separately so the
    /// benchmark verb can compare the two paths.
    pub fn mul_karatsuba(&self, other: &Series) -> Result<Series> {
        self.same_ring(other)?;
        Ok(self.wrap(with_kernel2!(self, other, |k, a, b| {
            let n = a.len().min(b.len());
            let mut prod = karatsuba(&k, &a[..n], &b[..n]);
            prod.truncate(n);
            prod.resize(n, k.zero());
            prod
        })))
    }

    /// Multiplicative inverse to the same order. Errors unless the
    /// constant term is a unit of the ring (for Z/M: gcd(c0, M) = 1).
    pub fn invert(&self) -> Result<Series> {
        let data = match &self.data {
            Data::Int(a) => IntKernel.invert_series(a, a.len()).map(Data::Int),
            Data::Mod(a) => {
                let k = ModKernel::new(self.ring.modulus().expect("Mod data has modulus"));
                k.invert_series(a, a.len()).map(Data::Mod)
            }
        };
        match data {
            Some(d) => Ok(self.wrap(d)),
            None => Err(Error::NonUnitConstant {
                constant: self.coeff(0)?.to_bigint().to_string(),
                ring: self.ring,
            }),
        }
    }

    /// `self^e` by repeated squaring, truncated to the input order.
    /// Negative exponents invert first, so the constant term must then be
    /// a unit. `pow(s, 0)` is the constant series 1.
    pub fn pow(&self, e: i64) -> Result<Series> {
        if e < 0 {
            let inv = self.invert()?;
            return inv.pow(-e);
        }
        let mut result = Series::one(self.ring, self.order());
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(result)
    }

    /// Substitute q -> q^m: output has `b[m*i] = a[i]`, zeros elsewhere,
    /// and order `m * order(a)` (all those coefficients are determined by
    /// the input, and none beyond).
    #[allow(clippy::clone_on_copy)] // the macro body must also clone BigInt elements
    pub fn inflate(&self, m: usize) -> Series {
        assert!(m >= 1, "inflation factor must be at least 1");
        if m == 1 {
            return self.clone();
        }
        let n = self.order() * m;
        self.wrap(with_kernel!(self, |k, a| {
            let mut out = vec![k.zero(); n];
            for (i, v) in a.iter().enumerate() {
                out[m * i] = v.clone();
            }
            out
        }))
    }

    /// Extract the arithmetic progression `A*n + B` of exponents and
    /// deflate: `b[n] = a[A*n + B]`. Output order is the number of such
    /// indices below `order(a)` (possibly 0 when `B >= order(a)`).
    #[allow(clippy::clone_on_copy)] // the macro body must also clone BigInt elements
    pub fn dissect(&self, a: usize, b: usize) -> Series {
        assert!(a >= 1, "dissection modulus must be at least 1");
        assert!(b < a, "dissection residue {b} must be below modulus {a}");
        let n = self.order();
        let count = if n > b { (n - 1 - b) / a + 1 } else { 0 };
        self.wrap(with_kernel!(self, |_k, v| {
            (0..count).map(|i| v[a * i + b].clone()).collect()
        }))
    }

    /// Multiply by q^b: coefficients shift up, order grows to `order + b`
    /// (no information is discarded).
    pub fn shift_up(&self, b: usize) -> Series {
        self.wrap(with_kernel!(self, |k, a| {
            let mut out = vec![k.zero(); a.len() + b];
            out[b..].clone_from_slice(a);
            out
        }))
    }

    /// Truncate to the first `n` coefficients (no-op if already shorter).
    pub fn truncate(&self, n: usize) -> Series {
        assert!(n >= 1, "series order must be at least 1");
        if n >= self.order() {
            return self.clone();
        }
        self.wrap(with_kernel!(self, |_k, a| a[..n].to_vec()))
    }

    /// Reduce an exact-integer series coefficientwise into Z/M.
    pub fn reduce_mod(&self, m: u64) -> Result<Series> {
        let ring = CoeffRing::modular(m)?;
        match &self.data {
            Data::Int(a) => {
                let mi = BigInt::from(m);
                let coeffs: Vec<u64> = a
                    .iter()
                    .map(|c| {
                        let r = ((c % &mi) + &mi) % &mi;
                        let (_, digits) = r.to_u64_digits();
                        digits.first().copied().unwrap_or(0)
                    })
                    .collect();
                Ok(Series {
                    ring,
                    data: Data::Mod(coeffs),
                })
            }
            Data::Mod(_) => Err(Error::RingMismatch(self.ring, ring)),
        }
    }
}

/// Karatsuba product of full coefficient slices (length `a.len() + b.len() - 1`).
/// Falls back to schoolbook below a small threshold.
fn karatsuba<K: Kernel>(k: &K, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
    const KARATSUBA_CUTOFF: usize = 32;
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len().max(b.len());
    if n <= KARATSUBA_CUTOFF {
        let out_len = a.len() + b.len() - 1;
        let mut out = vec![k.zero(); out_len];
        for (i, x) in a.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(x, y));
            }
        }
        return out;
    }
    let half = n / 2;
    let (a0, a1) = a.split_at(half.min(a.len()));
    let (b0, b1) = b.split_at(half.min(b.len()));
    let z0 = karatsuba(k, a0, b0);
    let z2 = karatsuba(k, a1, b1);
    let a01: Vec<K::Elem> = sum_padded(k, a0, a1);
    let b01: Vec<K::Elem> = sum_padded(k, b0, b1);
    let mut z1 = karatsuba(k, &a01, &b01);
    for (i, v) in z0.iter().enumerate() {
        z1[i] = k.sub(&z1[i], v);
    }
    for (i, v) in z2.iter().enumerate() {
        z1[i] = k.sub(&z1[i], v);
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, v) in z0.into_iter().enumerate() {
        out[i] = k.add(&out[i], &v);
    }
    for (i, v) in z1.into_iter().enumerate() {
        out[half + i] = k.add(&out[half + i], &v);
    }
    for (i, v) in z2.into_iter().enumerate() {
        out[2 * half + i] = k.add(&out[2 * half + i], &v);
    }
    out
}

fn sum_padded<K: Kernel>(k: &K, x: &[K::Elem], y: &[K::Elem]) -> Vec<K::Elem> {
    let n = x.len().max(y.len());
    (0..n)
        .map(|i| match (x.get(i), y.get(i)) {
            (Some(a), Some(b)) => k.add(a, b),
            (Some(a), None) => a.clone(),
            (None, Some(b)) => b.clone(),
            (None, None) => unreachable!(),
        })
        .collect()
}
