//! q-Pochhammer symbols f_r and eta quotients.
//!
//! f_r = (1 - q^r)(1 - q^{2r})(1 - q^{3r})... expands, by Euler's
//! pentagonal number theorem, as the bilateral sum of (-1)^m q^{r m(3m-1)/2}.
//! An eta quotient is a finite product prod f_r^{e_r} with integer
//! exponents of either sign; the text form used by the CLI is a list of
//! whitespace-separated `r^e` tokens, e.g. `2^2 1^-7` for f_2^2 / f_1^7.

use crate::ring::{CoeffRing, IntKernel, Kernel, ModKernel};
use crate::series::{Data, Series};
use crate::{Error, Result};

/// A finite product of q-Pochhammer symbols, prod f_r^{e_r}.
///
/// Factors are kept sorted by `r` with distinct `r` values and nonzero
/// exponents; the constructor merges and drops as needed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EtaQuotient {
    factors: Vec<(u64, i64)>,
}

impl EtaQuotient {
    /// Build from `(r, e)` pairs. Repeated `r` values have their
    /// exponents summed; zero exponents are dropped. Errors if any r = 0.
    pub fn new(factors: impl IntoIterator<Item = (u64, i64)>) -> Result<EtaQuotient> {
        let mut merged: Vec<(u64, i64)> = Vec::new();
        for (r, e) in factors {
            if r == 0 {
                return Err(Error::InvalidArgument(
                    "Pochhammer index r must be at least 1".into(),
                ));
            }
            match merged.binary_search_by_key(&r, |&(r0, _)| r0) {
                Ok(i) => merged[i].1 += e,
                Err(i) => merged.insert(i, (r, e)),
            }
        }
        merged.retain(|&(_, e)| e != 0);
        Ok(EtaQuotient { factors: merged })
    }

    /// Parse the `r^e` token grammar, e.g. `"2^2 1^-7"`.
    pub fn parse(text: &str) -> Result<EtaQuotient> {
        let mut factors = Vec::new();
        for token in text.split_whitespace() {
            let (r, e) = token
                .split_once('^')
                .ok_or_else(|| Error::InvalidArgument(format!("token `{token}` is not r^e")))?;
            let r: u64 = r.parse().map_err(|_| {
                Error::InvalidArgument(format!("bad Pochhammer index in `{token}`"))
            })?;
            let e: i64 = e
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad exponent in `{token}`")))?;
            factors.push((r, e));
        }
        if factors.is_empty() {
            return Err(Error::InvalidArgument("empty eta quotient".into()));
        }
        EtaQuotient::new(factors)
    }

    pub fn factors(&self) -> &[(u64, i64)] {
        &self.factors
    }
}

impl std::fmt::Display for EtaQuotient {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1^0");
        }
        for (i, (r, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{r}^{e}")?;
        }
        Ok(())
    }
}

/// Generalized pentagonal numbers j(3j-1)/2 and j(3j+1)/2 below `n`,
/// paired with the sign (-1)^{j+1} of Euler's recurrence, ascending.
fn pentagonal_offsets(n: usize) -> Vec<(usize, i64)> {
    let mut pents = Vec::new();
    let mut j: usize = 1;
    loop {
        let g1 = j * (3 * j - 1) / 2;
        if g1 >= n {
            break;
        }
        let sign = if j % 2 == 1 { 1 } else { -1 };
        pents.push((g1, sign));
        let g2 = j * (3 * j + 1) / 2;
        if g2 < n {
            pents.push((g2, sign));
        }
        j += 1;
    }
    pents
}

/// Expansion of f_r to order `n`: (-1)^m at exponent r*m(3m-1)/2 for every
/// integer m with the exponent below `n`.
pub fn pochhammer_series(r: u64, n: usize, ring: CoeffRing) -> Series {
    assert!(r >= 1, "Pochhammer index must be at least 1");
    let mut out = Series::zero(ring, n);
    out.add_i64_at(0, 1);
    // m = 1, -1, 2, -2, ...: exponents grow monotonically in |m| on both
    // branches, so stop at the first m where both fall outside the order.
    let mut m: u128 = 1;
    loop {
        let sign = if m.is_multiple_of(2) { 1 } else { -1 };
        let e_pos = r as u128 * (m * (3 * m - 1) / 2);
        let e_neg = r as u128 * (m * (3 * m + 1) / 2);
        if e_pos >= n as u128 {
            break;
        }
        out.add_i64_at(e_pos as usize, sign);
        if e_neg < n as u128 {
            out.add_i64_at(e_neg as usize, sign);
        }
        m += 1;
    }
    out
}

fn euler_recurrence<K: Kernel>(kernel: &K, n: usize) -> Vec<K::Elem> {
    let pents = pentagonal_offsets(n);
    let mut p = Vec::with_capacity(n);
    p.push(kernel.one());
    for i in 1..n {
        let mut acc = kernel.zero();
        for &(g, sign) in &pents {
            if g > i {
                break;
            }
            acc = if sign > 0 {
                kernel.add(&acc, &p[i - g])
            } else {
                kernel.sub(&acc, &p[i - g])
            };
        }
        p.push(acc);
    }
    p
}

/// Expansion of 1/f_1 (the partition generating function) to order `n`
/// via Euler's pentagonal recurrence
/// p(i) = sum_{j>=1} (-1)^{j+1} [p(i - j(3j-1)/2) + p(i - j(3j+1)/2)].
///
/// Deliberately not implemented as `pochhammer_series(1, ..).invert()`:
/// the two routes are independent and check each other.
pub fn partition_series(n: usize, ring: CoeffRing) -> Series {
    ring.validate();
    assert!(n >= 1, "series order must be at least 1");
    let data = match ring {
        CoeffRing::Int => Data::Int(euler_recurrence(&IntKernel, n)),
        CoeffRing::Mod(m) => Data::Mod(euler_recurrence(&ModKernel::new(m), n)),
    };
    Series::from_parts(ring, data)
}

/// Expansion of an eta quotient to order `n`: the product of
/// `pochhammer_series(r, n, ring)^e` over all factors. Constant terms are
/// always 1, so negative exponents never fail.
pub fn eta_quotient_series(eq: &EtaQuotient, n: usize, ring: CoeffRing) -> Series {
    let mut acc = Series::one(ring, n);
    for &(r, e) in eq.factors() {
        let f = pochhammer_series(r, n, ring);
        let p = f.pow(e).expect("f_r has unit constant term 1");
        acc = acc.mul(&p).expect("same ring by construction");
    }
    acc
}
