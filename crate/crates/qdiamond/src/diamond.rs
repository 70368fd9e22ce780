//! The d_k(n) coefficient stream: number of k-elongated plane partition
//! diamonds of length n, defined here by its generating function
//!
//! ```text
//! sum_{n>=0} d_k(n) q^n = f_2^k / f_1^{3k+1}
//! ```
//!
//! Congruence checks work modulo M end to end — d_k(n) grows much too
//! fast to materialize exactly at bounds like 10^5. The exact path stays
//! available for small orders and for [`dk_value`].

use num_bigint::BigInt;

use crate::eta::{eta_quotient_series, EtaQuotient};
use crate::ring::{CoeffRing, IntKernel, Kernel};
use crate::series::{Data, Series};
use crate::{Error, Result};

/// d_k expansion: `values[n]` = d_k(n) in the chosen ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiamondSeries {
    pub k: u64,
    pub values: Series,
}

/// Expansion of f_2^k / f_1^{3k+1} to order `n`.
pub fn dk_series(k: u64, n: usize, ring: CoeffRing) -> DiamondSeries {
    assert!(k >= 1, "elongation k must be at least 1");
    let e1 = i64::try_from(3 * k as u128 + 1)
        .map(|e| -e)
        .expect("exponent 3k+1 must fit an i64");
    let eq = EtaQuotient::new([(2, k as i64), (1, e1)]).expect("valid factors");
    let values = eta_quotient_series(&eq, n, ring);
    debug_assert!(!values.coeff(0).expect("order >= 1").is_zero());
    DiamondSeries { k, values }
}

/// Largest `k` accepted by [`dk_oracle`].
pub const ORACLE_MAX_K: u64 = 8;
/// Largest order accepted by [`dk_oracle`].
pub const ORACLE_MAX_ORDER: usize = 512;

/// Independent-path oracle for `dk_series`, kept deliberately naive:
///
/// * the numerator multiplies k literal copies of the truncated product
///   (1-q^2)(1-q^4)... built binomial by binomial;
/// * the denominator multiplies 3k+1 literal copies of (1-q)(1-q^2)...;
/// * the quotient is computed by inline long division.
///
/// No pentagonal shortcut, no `pow`, no `invert` — only the raw
/// convolution is shared with the production path. Guarded to
/// `k <= 8, n <= 512` because of the quadratic cost.
pub fn dk_oracle(k: u64, n: usize) -> Result<Series> {
    if !(1..=ORACLE_MAX_K).contains(&k) || n == 0 || n > ORACLE_MAX_ORDER {
        return Err(Error::InvalidArgument(format!(
            "dk_oracle guard: need 1 <= k <= {ORACLE_MAX_K} and 1 <= order <= {ORACLE_MAX_ORDER}, got k={k}, order={n}"
        )));
    }
    let kernel = IntKernel;

    // Truncated prod_{i>=1} (1 - q^{step*i}), one binomial at a time.
    let literal_product = |step: usize| -> Vec<BigInt> {
        let mut acc = vec![BigInt::from(1)];
        acc.resize(n, BigInt::from(0));
        let mut i = step;
        while i < n {
            let mut binomial = vec![BigInt::from(0); n];
            binomial[0] = BigInt::from(1);
            binomial[i] = BigInt::from(-1);
            acc = kernel.convolve(&acc, &binomial, n);
            i += step;
        }
        acc
    };

    let even_part = literal_product(2);
    let mut numerator = vec![BigInt::from(0); n];
    numerator[0] = BigInt::from(1);
    for _ in 0..k {
        numerator = kernel.convolve(&numerator, &even_part, n);
    }

    let all_part = literal_product(1);
    let mut denominator = vec![BigInt::from(0); n];
    denominator[0] = BigInt::from(1);
    for _ in 0..(3 * k + 1) {
        denominator = kernel.convolve(&denominator, &all_part, n);
    }

    // Long division: quotient * denominator = numerator, denominator[0] = 1.
    let mut quotient = vec![BigInt::from(0); n];
    for i in 0..n {
        let mut c = numerator[i].clone();
        for j in 1..=i {
            c -= &denominator[j] * &quotient[i - j];
        }
        quotient[i] = c;
    }

    Ok(Series::from_parts(CoeffRing::Int, Data::Int(quotient)))
}

/// Exact value of d_k(n).
pub fn dk_value(k: u64, n: usize) -> BigInt {
    dk_series(k, n + 1, CoeffRing::Int)
        .values
        .coeff(n)
        .expect("order n+1 retains index n")
        .to_bigint()
}

/// The progression slice d_k(A*n + B) reduced mod M, to series order `n`:
/// entry `i` is d_k(A*i + B) mod M, for all A*i + B < n.
pub fn dk_progression(k: u64, a: u64, b: u64, m: u64, n: usize) -> Result<Series> {
    if a < 1 || b >= a {
        return Err(Error::InvalidArgument(format!(
            "progression requires A >= 1 and 0 <= B < A, got A={a}, B={b}"
        )));
    }
    let ring = CoeffRing::modular(m)?;
    Ok(dk_series(k, n, ring).values.dissect(a as usize, b as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoeffRing = CoeffRing::Int;

    #[test]
    fn dk_first_coefficients() {
        let d1 = dk_series(1, 5, Z).values;
        let got: Vec<i64> = d1
            .coeffs_int()
            .unwrap()
            .iter()
            .map(|c| i64::try_from(c).unwrap())
            .collect();
        assert_eq!(got, vec![1, 4, 13, 36, 90]);
    }

    #[test]
    fn constant_term_is_one_and_linear_term_is_3k_plus_1() {
        for k in 1..=50u64 {
            let s = dk_series(k, 2, Z).values;
            assert_eq!(s.coeff(0).unwrap().to_bigint(), BigInt::from(1));
            assert_eq!(
                s.coeff(1).unwrap().to_bigint(),
                BigInt::from(3 * k + 1),
                "k = {k}"
            );
        }
    }

    #[test]
    fn oracle_agrees_with_production_path() {
        for k in 1..=3u64 {
            let n = 64;
            let oracle = dk_oracle(k, n).unwrap();
            let series = dk_series(k, n, Z).values;
            assert!(oracle.equal_up_to(&series, n).unwrap(), "k = {k}");
        }
    }

    #[test]
    fn oracle_linear_coefficient() {
        let s = dk_oracle(3, 8).unwrap();
        assert_eq!(s.coeff(1).unwrap().to_bigint(), BigInt::from(10));
    }

    #[test]
    fn oracle_guard() {
        assert!(dk_oracle(9, 64).is_err());
        assert!(dk_oracle(2, 513).is_err());
        assert!(dk_oracle(0, 64).is_err());
    }

    #[test]
    fn dk_value_small() {
        assert_eq!(dk_value(1, 0), BigInt::from(1));
        assert_eq!(dk_value(1, 4), BigInt::from(90));
        assert_eq!(dk_value(2, 2), BigInt::from(33));
    }

    #[test]
    fn d2_coefficient_2_is_33_divisible_by_3() {
        assert_eq!(dk_value(2, 2) % 3, BigInt::from(0));
    }

    #[test]
    fn modular_matches_reduced_exact() {
        for (k, m, n) in [(2u64, 3u64, 500usize), (3, 4, 500), (7, 8, 500)] {
            let exact = dk_series(k, n, Z).values;
            let native = dk_series(k, n, CoeffRing::modular(m).unwrap()).values;
            assert_eq!(exact.reduce_mod(m).unwrap(), native, "k={k}, M={m}");
        }
    }

    #[test]
    fn progression_d2_3n_plus_2_vanishes_mod_3() {
        let p = dk_progression(2, 3, 2, 3, 600).unwrap();
        assert!(p.is_zero());
        // Negative control: d_1(2n) starts with d_1(0) = 1.
        let q = dk_progression(1, 2, 0, 2, 100).unwrap();
        assert!(!q.is_zero());
    }

    #[test]
    fn progression_argument_checks() {
        assert!(dk_progression(2, 0, 0, 3, 10).is_err());
        assert!(dk_progression(2, 3, 3, 3, 10).is_err());
        assert!(dk_progression(2, 3, 1, 1, 10).is_err());
    }
}
