//! Truncated q-series engine for k-elongated partition diamonds.
//!
//! The counting sequence d_k(n) of k-elongated plane partition diamonds
//! has the generating function f_2^k / f_1^{3k+1}, where
//! f_r = (1 - q^r)(1 - q^{2r})(1 - q^{3r})... is the q-Pochhammer symbol.
//! This crate expands such eta quotients to arbitrary truncation order
//! (exactly, or modulo M), verifies the classical theta-series identities
//! the congruence proofs rest on, checks congruence families of the form
//! d_k(An + B) = 0 (mod M) up to a bound, validates the residue-class
//! certificates behind the elementary proofs, and scans for new candidate
//! congruences.
//!
//! The `qdiamond` binary exposes all of this on the command line.

#![forbid(unsafe_code)]

pub mod congruence;
pub mod diamond;
pub mod eta;
pub mod ring;
pub mod series;
pub mod theta;

pub use congruence::{
    family_d7_prime, family_p_minus_1, family_p_minus_2, family_ramanujan, form_hits_progression,
    is_prime, is_qr, lift, paper_catalog, quadratic_residues, scan, scan_to_jsonl, smoot_check,
    two_form_weighted_divisibility, verify, verify_batch, weighted_form_divisibility, Congruence,
    Counterexample, LinearWeight, QuadraticForm, Report, ScanParams, ScanRecord, SmootReport,
    Source,
};
pub use diamond::{dk_oracle, dk_progression, dk_series, dk_value, DiamondSeries};
pub use eta::{eta_quotient_series, partition_series, pochhammer_series, EtaQuotient};
pub use ring::{Coeff, CoeffRing};
pub use series::Series;
pub use theta::{lemma_lhs, theta_rhs, verify_identity, verify_lemma, IdentityReport, LemmaId};

/// Errors reported by the public API.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("coefficient rings differ: {0} vs {1}")]
    RingMismatch(CoeffRing, CoeffRing),
    #[error("modulus {0} outside supported range [2, 2^63]")]
    InvalidModulus(u64),
    #[error("constant term {constant} is not a unit of {ring}")]
    NonUnitConstant { constant: String, ring: CoeffRing },
    #[error("coefficient index {index} out of range for series of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("{0} is not prime (or is below the smallest admissible prime)")]
    NotPrime(u64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
