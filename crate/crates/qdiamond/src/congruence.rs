//! Congruence claims d_k(An + B) = 0 (mod M): bounded verification,
//! the families stated by the elementary-proof machinery, residue-class
//! certificates, the Smoot 3-adic check for d_2, and a scanner for new
//! candidates.
//!
//! "Holds" always means "holds for every index An + B below the checked
//! bound" — numeric verification cannot prove a for-all-n statement, and
//! no report here claims otherwise.

use std::collections::BTreeSet;

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diamond::dk_series;
use crate::ring::CoeffRing;
use crate::{Error, Result};

/// Where a congruence claim came from.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Source {
    Paper,
    Generated,
    Scanned,
}

/// The claim: for all n >= 0, d_k(A*n + B) = 0 (mod M).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Congruence {
    pub k: u64,
    pub a: u64,
    pub b: u64,
    pub m: u64,
    pub family: String,
    pub source: Source,
}

impl Congruence {
    pub fn new(k: u64, a: u64, b: u64, m: u64, family: &str, source: Source) -> Congruence {
        assert!(k >= 1 && a >= 1 && b < a && m >= 2, "malformed congruence");
        Congruence {
            k,
            a,
            b,
            m,
            family: family.to_string(),
            source,
        }
    }

    /// Does this claim imply `other` syntactically? True when the index
    /// sets nest (A | other.A with matching residue) and the modulus is
    /// at least as strong (other.M | M). Same k only.
    pub fn implies(&self, other: &Congruence) -> bool {
        self.k == other.k
            && other.a.is_multiple_of(self.a)
            && other.b % self.a == self.b
            && self.m.is_multiple_of(other.m)
    }
}

impl std::fmt::Display for Congruence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "d_{}({}n+{}) ≡ 0 (mod {})",
            self.k, self.a, self.b, self.m
        )
    }
}

/// Earliest violation of a claim.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Counterexample {
    /// Progression index: the violation is at argument A*n + B.
    pub n: u64,
    /// The argument A*n + B itself.
    pub index: u64,
    /// d_k(index) mod M, nonzero.
    pub residue: u64,
}

/// Outcome of bounded verification.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Report {
    pub claim: Congruence,
    /// Indices A*n + B < bound were checked.
    pub bound: usize,
    pub counterexample: Option<Counterexample>,
}

impl Report {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn status(&self) -> &'static str {
        if self.holds() {
            "holds_up_to_bound"
        } else {
            "fails"
        }
    }
}

fn check_progression(coeffs: &[u64], c: &Congruence, bound: usize) -> Report {
    let limit = bound.min(coeffs.len());
    let mut counterexample = None;
    let mut idx = c.b as usize;
    let mut n = 0u64;
    while idx < limit {
        if coeffs[idx] != 0 {
            counterexample = Some(Counterexample {
                n,
                index: idx as u64,
                residue: coeffs[idx],
            });
            break;
        }
        idx += c.a as usize;
        n += 1;
    }
    Report {
        claim: c.clone(),
        bound,
        counterexample,
    }
}

/// Verify one claim: compute d_k mod M natively to order `bound` and
/// check every index A*n + B < bound. Reports the earliest violation.
pub fn verify(c: &Congruence, bound: usize) -> Result<Report> {
    if bound < (c.a + c.b) as usize {
        return Err(Error::InvalidArgument(format!(
            "bound {bound} below A+B = {}",
            c.a + c.b
        )));
    }
    let ring = CoeffRing::modular(c.m)?;
    let series = dk_series(c.k, bound, ring).values;
    let coeffs = series.coeffs_mod().expect("modular ring");
    Ok(check_progression(coeffs, c, bound))
}

/// Verify many claims at a shared bound. Claims with the same (k, M)
/// share one modular expansion; groups run in parallel. Reports come
/// back in the order of the input slice.
pub fn verify_batch(claims: &[Congruence], bound: usize) -> Result<Vec<Report>> {
    for c in claims {
        if bound < (c.a + c.b) as usize {
            return Err(Error::InvalidArgument(format!(
                "bound {bound} below A+B for {c}"
            )));
        }
        CoeffRing::modular(c.m)?;
    }
    let mut groups: Vec<((u64, u64), Vec<usize>)> = Vec::new();
    for (i, c) in claims.iter().enumerate() {
        match groups.binary_search_by_key(&(c.k, c.m), |(key, _)| *key) {
            Ok(g) => groups[g].1.push(i),
            Err(g) => groups.insert(g, ((c.k, c.m), vec![i])),
        }
    }
    let mut reports: Vec<Option<Report>> = vec![None; claims.len()];
    let group_reports: Vec<(usize, Report)> = groups
        .par_iter()
        .flat_map(|((k, m), members)| {
            let ring = CoeffRing::modular(*m).expect("validated above");
            let series = dk_series(*k, bound, ring).values;
            let coeffs = series.coeffs_mod().expect("modular ring");
            members
                .iter()
                .map(|&i| (i, check_progression(coeffs, &claims[i], bound)))
                .collect::<Vec<_>>()
        })
        .collect();
    for (i, r) in group_reports {
        reports[i] = Some(r);
    }
    Ok(reports
        .into_iter()
        .map(|r| r.expect("every claim verified"))
        .collect())
}

// ---------------------------------------------------------------------------
// Primes and quadratic residues
// ---------------------------------------------------------------------------

/// Trial-division primality test (the primes here are all small).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// The nonzero quadratic residues modulo an odd prime p.
pub fn quadratic_residues(p: u64) -> Result<BTreeSet<u64>> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok((1..p).map(|x| x * x % p).collect())
}

/// Is `a` a quadratic residue modulo the odd prime p? Errors when p is
/// not an odd prime or a = 0 (mod p), where the question is ill-posed.
pub fn is_qr(a: u64, p: u64) -> Result<bool> {
    let residues = quadratic_residues(p)?;
    if a.is_multiple_of(p) {
        return Err(Error::InvalidArgument(format!(
            "{a} ≡ 0 (mod {p}) is neither residue nor nonresidue"
        )));
    }
    Ok(residues.contains(&(a % p)))
}

// ---------------------------------------------------------------------------
// Families
// ---------------------------------------------------------------------------

/// d_{p-2}(pn + r) = 0 (mod p) for every r with 24r + 1 a quadratic
/// nonresidue mod p, plus the unique special t with 24t + 1 = 0 (mod p):
/// (p+1)/2 congruences in total, sorted by residue.
pub fn family_p_minus_2(p: u64) -> Result<Vec<Congruence>> {
    if p < 5 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let residues = quadratic_residues(p)?;
    let mut out = Vec::new();
    for r in 1..p {
        let v = (24 * r + 1) % p;
        if v == 0 {
            out.push(Congruence::new(
                p - 2,
                p,
                r,
                p,
                &format!("pm2-special(p={p})"),
                Source::Generated,
            ));
        } else if !residues.contains(&v) {
            out.push(Congruence::new(
                p - 2,
                p,
                r,
                p,
                &format!("pm2(p={p})"),
                Source::Generated,
            ));
        }
    }
    debug_assert_eq!(out.len() as u64, p.div_ceil(2));
    Ok(out)
}

/// d_{p-1}(pn + r) = 0 (mod p) for every quadratic nonresidue r mod p.
pub fn family_p_minus_1(p: u64) -> Result<Vec<Congruence>> {
    if p < 5 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let residues = quadratic_residues(p)?;
    Ok((1..p)
        .filter(|r| !residues.contains(r))
        .map(|r| Congruence::new(p - 1, p, r, p, &format!("pm1(p={p})"), Source::Generated))
        .collect())
}

/// d_l(ln + r) = 0 (mod l) for the classical Ramanujan pairs
/// (5, 4), (7, 5), (11, 6) of the ordinary partition function.
pub fn family_ramanujan(ell: u64) -> Result<Congruence> {
    let r = match ell {
        5 => 4,
        7 => 5,
        11 => 6,
        _ => {
            return Err(Error::InvalidArgument(format!(
                "no classical p(ln+r) ≡ 0 (mod l) congruence for l = {ell}"
            )))
        }
    };
    Ok(Congruence::new(
        ell,
        ell,
        r,
        ell,
        "ramanujan",
        Source::Generated,
    ))
}

/// d_7(2pn + 2r + 1) = 0 (mod 4) for every r with 3r + 1 a quadratic
/// nonresidue mod the prime p >= 5.
pub fn family_d7_prime(p: u64) -> Result<Vec<Congruence>> {
    if p < 5 || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let residues = quadratic_residues(p)?;
    Ok((1..p)
        .filter(|r| {
            let v = (3 * r + 1) % p;
            v != 0 && !residues.contains(&v)
        })
        .map(|r| {
            Congruence::new(
                7,
                2 * p,
                2 * r + 1,
                4,
                &format!("d7-prime(p={p})"),
                Source::Generated,
            )
        })
        .collect())
}

/// Lift d_k(pn + r) = 0 (mod p) to d_{pj + k}(pn + r) = 0 (mod p).
/// Requires A = M = p prime.
pub fn lift(c: &Congruence, j: u64) -> Result<Congruence> {
    if c.a != c.m || !is_prime(c.a) {
        return Err(Error::InvalidArgument(format!(
            "lift needs A = M = p prime, got {c}"
        )));
    }
    Ok(Congruence {
        k: c.a * j + c.k,
        a: c.a,
        b: c.b,
        m: c.m,
        family: c.family.clone(),
        source: if j == 0 { c.source } else { Source::Generated },
    })
}

struct FamilySpec {
    /// k = step * j + k0.
    step: u64,
    k0: u64,
    a: u64,
    m: u64,
    residues: &'static [u64],
    label: &'static str,
}

/// The fourteen lifted families plus the two mod-9 progressions.
const LIFTED_FAMILIES: [FamilySpec; 15] = [
    FamilySpec {
        step: 2,
        k0: 1,
        a: 2,
        m: 2,
        residues: &[1],
        label: "d_{2j+1} mod 2",
    },
    FamilySpec {
        step: 3,
        k0: 2,
        a: 3,
        m: 3,
        residues: &[2],
        label: "d_{3j+2} mod 3",
    },
    FamilySpec {
        step: 5,
        k0: 3,
        a: 5,
        m: 5,
        residues: &[1, 3, 4],
        label: "d_{5j+3} mod 5",
    },
    FamilySpec {
        step: 5,
        k0: 4,
        a: 5,
        m: 5,
        residues: &[2, 3],
        label: "d_{5j+4} mod 5",
    },
    FamilySpec {
        step: 5,
        k0: 5,
        a: 5,
        m: 5,
        residues: &[4],
        label: "d_{5j+5} mod 5",
    },
    FamilySpec {
        step: 7,
        k0: 5,
        a: 7,
        m: 7,
        residues: &[2, 3, 4, 6],
        label: "d_{7j+5} mod 7",
    },
    FamilySpec {
        step: 7,
        k0: 6,
        a: 7,
        m: 7,
        residues: &[3, 5, 6],
        label: "d_{7j+6} mod 7",
    },
    FamilySpec {
        step: 7,
        k0: 7,
        a: 7,
        m: 7,
        residues: &[5],
        label: "d_{7j+7} mod 7",
    },
    FamilySpec {
        step: 11,
        k0: 2,
        a: 11,
        m: 11,
        residues: &[7],
        label: "d_{11j+2} mod 11",
    },
    FamilySpec {
        step: 11,
        k0: 9,
        a: 11,
        m: 11,
        residues: &[3, 5, 6, 8, 9, 10],
        label: "d_{11j+9} mod 11",
    },
    FamilySpec {
        step: 11,
        k0: 10,
        a: 11,
        m: 11,
        residues: &[2, 6, 7, 8, 10],
        label: "d_{11j+10} mod 11",
    },
    FamilySpec {
        step: 11,
        k0: 11,
        a: 11,
        m: 11,
        residues: &[6],
        label: "d_{11j+11} mod 11",
    },
    FamilySpec {
        step: 13,
        k0: 11,
        a: 13,
        m: 13,
        residues: &[3, 4, 6, 7, 8, 10, 11],
        label: "d_{13j+11} mod 13",
    },
    FamilySpec {
        step: 13,
        k0: 12,
        a: 13,
        m: 13,
        residues: &[2, 5, 6, 7, 8, 11],
        label: "d_{13j+12} mod 13",
    },
    FamilySpec {
        step: 9,
        k0: 2,
        a: 9,
        m: 9,
        residues: &[5, 8],
        label: "d_{9j+2} mod 9",
    },
];

/// Individually stated congruences (the base cases and the one-off
/// results that are not members of a lifted family shape).
fn individual_claims() -> Vec<Congruence> {
    let ap = |k, a, b, m| Congruence::new(k, a, b, m, "andrews-paule", Source::Paper);
    let d7 = |a, b, m| Congruence::new(7, a, b, m, "d7-pow2", Source::Paper);
    vec![
        ap(2, 3, 2, 3),
        ap(3, 2, 1, 2),
        ap(3, 4, 2, 2),
        ap(3, 4, 3, 4),
        ap(3, 5, 1, 5),
        ap(3, 5, 3, 5),
        ap(3, 5, 4, 5),
        Congruence::new(2, 11, 7, 11, "d2-mod11", Source::Paper),
        Congruence::new(5, 5, 4, 5, "ramanujan", Source::Paper),
        Congruence::new(7, 7, 5, 7, "ramanujan", Source::Paper),
        Congruence::new(11, 11, 6, 11, "ramanujan", Source::Paper),
        d7(4, 2, 4),
        d7(8, 5, 4),
        d7(16, 9, 4),
        d7(4, 3, 8),
        d7(8, 4, 8),
        Congruence::new(8, 3, 2, 9, "d8-mod9", Source::Paper),
        Congruence::new(8, 9, 3, 9, "d8-mod9", Source::Paper),
    ]
}

/// The full explicit claim list: individual results plus every lifted
/// family expanded over j in 0..=j_max, deduplicated on (k, A, B, M) and
/// sorted canonically.
pub fn paper_catalog(j_max: u64) -> Vec<Congruence> {
    let mut out = individual_claims();
    for fam in &LIFTED_FAMILIES {
        for j in 0..=j_max {
            let k = fam.step * j + fam.k0;
            for &b in fam.residues {
                out.push(Congruence::new(
                    k,
                    fam.a,
                    b,
                    fam.m,
                    fam.label,
                    Source::Paper,
                ));
            }
        }
    }
    out.sort();
    out.dedup_by(|x, y| (x.k, x.a, x.b, x.m) == (y.k, y.a, y.b, y.m));
    out
}

// ---------------------------------------------------------------------------
// Smoot's 3-adic family for d_2
// ---------------------------------------------------------------------------

/// Verification record for one alpha of the d_2 family: whenever
/// 8n ≡ 1 (mod 3^alpha), d_2(n) ≡ 0 (mod 3^{2*floor(alpha/2)+1}).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SmootReport {
    pub alpha: u32,
    pub report: Report,
}

fn pow3(e: u32) -> Result<u64> {
    3u64.checked_pow(e)
        .filter(|m| *m <= crate::ring::MAX_MODULUS)
        .ok_or_else(|| Error::InvalidArgument(format!("3^{e} exceeds the modulus range")))
}

/// Check the d_2 family for alpha = 1..=alpha_max, all n < bound.
///
/// The condition 8n ≡ 1 (mod 3^alpha) pins n to a single residue class
/// 8^{-1} mod 3^alpha, so each alpha is an ordinary progression claim.
/// One native expansion modulo the largest needed 3-power serves every
/// alpha (the smaller moduli all divide it). Alpha = 0 is excluded: its
/// claim (all n, mod 3) is false already at d_2(0) = 1.
pub fn smoot_check(alpha_max: u32, bound: usize) -> Result<Vec<SmootReport>> {
    if alpha_max < 1 {
        return Err(Error::InvalidArgument(
            "alpha_max must be at least 1".into(),
        ));
    }
    let top_modulus = pow3(2 * (alpha_max / 2) + 1)?;
    let stride_top = pow3(alpha_max)?;
    if bound < stride_top as usize {
        return Err(Error::InvalidArgument(format!(
            "bound {bound} below 3^alpha_max = {stride_top}"
        )));
    }
    let series = dk_series(2, bound, CoeffRing::modular(top_modulus)?).values;
    let coeffs = series.coeffs_mod().expect("modular ring");

    let mut out = Vec::new();
    for alpha in 1..=alpha_max {
        let modulus = pow3(2 * (alpha / 2) + 1)?;
        let stride = pow3(alpha)?;
        let r = crate::ring::mod_inverse(8 % stride, stride).expect("8 is a unit mod 3^alpha");
        let claim = Congruence::new(
            2,
            stride,
            r,
            modulus,
            &format!("smoot(alpha={alpha})"),
            Source::Generated,
        );
        let mut counterexample = None;
        let mut idx = r as usize;
        let mut n = 0u64;
        while idx < bound {
            let residue = coeffs[idx] % modulus;
            if residue != 0 {
                counterexample = Some(Counterexample {
                    n,
                    index: idx as u64,
                    residue,
                });
                break;
            }
            idx += stride as usize;
            n += 1;
        }
        out.push(SmootReport {
            alpha,
            report: Report {
                claim,
                bound,
                counterexample,
            },
        });
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Residue-class certificates
// ---------------------------------------------------------------------------

/// The quadratic exponent form f(m) = (a m^2 + b m) / d appearing in a
/// theta expansion (triangular m(m+1)/2, pentagonal m(3m-1)/2, squares,
/// and friends). `d` must divide a + b, which together with f(0) = 0
/// makes every f(m) scanned over a full period integral for the forms in
/// use; non-integral values of sporadic forms are skipped by the scans.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QuadraticForm {
    a: i64,
    b: i64,
    d: i64,
}

impl QuadraticForm {
    pub fn new(a: i64, b: i64, d: i64) -> Result<QuadraticForm> {
        if a == 0 || d < 1 {
            return Err(Error::InvalidArgument(
                "quadratic form needs a != 0 and d >= 1".into(),
            ));
        }
        if (a + b) % d != 0 {
            return Err(Error::InvalidArgument(format!(
                "({a}·m² + {b}·m)/{d} is not integral at m = 1"
            )));
        }
        Ok(QuadraticForm { a, b, d })
    }

    /// f(m), or None when d does not divide the numerator.
    fn eval(&self, m: i64) -> Option<i128> {
        let num = self.a as i128 * m as i128 * m as i128 + self.b as i128 * m as i128;
        if num % self.d as i128 != 0 {
            return None;
        }
        Some(num / self.d as i128)
    }

    /// f(m) mod `a_mod` is periodic in m with period dividing this.
    fn period(&self, a_mod: u64) -> u64 {
        2 * self.a.unsigned_abs() * self.d.unsigned_abs() * a_mod
    }
}

/// A linear weight w(m) = c*m + e attached to a theta term.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LinearWeight {
    pub c: i64,
    pub e: i64,
}

impl LinearWeight {
    fn eval_mod(&self, m: i64, modulus: u64) -> u64 {
        (self.c as i128 * m as i128 + self.e as i128).rem_euclid(modulus as i128) as u64
    }
}

fn check_progression_args(a: u64, b: u64) -> Result<()> {
    if a < 1 || b >= a {
        return Err(Error::InvalidArgument(format!(
            "need A >= 1 and 0 <= B < A, got A={a}, B={b}"
        )));
    }
    Ok(())
}

/// Does any integer m satisfy f(m) ≡ B (mod A)? Decided by scanning one
/// full period of f mod A.
pub fn form_hits_progression(f: &QuadraticForm, a: u64, b: u64) -> Result<bool> {
    check_progression_args(a, b)?;
    let period = f.period(a);
    for m in 0..period {
        if let Some(v) = f.eval(m as i64) {
            if v.rem_euclid(a as i128) as u64 == b {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Is w(m) ≡ 0 (mod M) for every m with f(m) ≡ B (mod A)? The scan
/// covers one joint period lcm(period of f mod A, M).
pub fn weighted_form_divisibility(
    f: &QuadraticForm,
    w: &LinearWeight,
    a: u64,
    b: u64,
    m_div: u64,
) -> Result<bool> {
    check_progression_args(a, b)?;
    if m_div < 2 {
        return Err(Error::InvalidArgument(
            "divisibility modulus must be >= 2".into(),
        ));
    }
    let period = f.period(a).lcm(&m_div);
    for m in 0..period {
        if let Some(v) = f.eval(m as i64) {
            if v.rem_euclid(a as i128) as u64 == b && w.eval_mod(m as i64, m_div) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Is w(j)·w(k) ≡ 0 (mod M) for every pair (j, k) with
/// f(j) + f(k) ≡ B (mod A)? Scans the full period square.
pub fn two_form_weighted_divisibility(
    f: &QuadraticForm,
    w: &LinearWeight,
    a: u64,
    b: u64,
    m_div: u64,
) -> Result<bool> {
    check_progression_args(a, b)?;
    if m_div < 2 {
        return Err(Error::InvalidArgument(
            "divisibility modulus must be >= 2".into(),
        ));
    }
    let period = f.period(a).lcm(&m_div);
    let values: Vec<Option<(u64, u64)>> = (0..period)
        .map(|m| {
            f.eval(m as i64)
                .map(|v| (v.rem_euclid(a as i128) as u64, w.eval_mod(m as i64, m_div)))
        })
        .collect();
    for vj in values.iter().flatten() {
        for vk in values.iter().flatten() {
            if (vj.0 + vk.0) % a == b
                && !(vj.1 as u128 * vk.1 as u128).is_multiple_of(m_div as u128)
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Scanner
// ---------------------------------------------------------------------------

/// Search space for [`scan`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ScanParams {
    pub k_set: Vec<u64>,
    pub a_max: u64,
    pub m_set: Vec<u64>,
    pub bound: usize,
    /// Candidates whose progression has fewer checked indices than this
    /// are suppressed — too few samples to be interesting.
    pub min_samples: usize,
}

impl ScanParams {
    pub fn new(k_set: Vec<u64>, a_max: u64, m_set: Vec<u64>, bound: usize) -> ScanParams {
        ScanParams {
            k_set,
            a_max,
            m_set,
            bound,
            min_samples: 10,
        }
    }
}

/// Scan all (k, A <= A_max, B < A, M) combinations for progressions that
/// vanish identically below the bound. Output is sorted by (k, A, B, M)
/// and filtered for minimality: an entry implied by another surviving
/// entry (smaller A dividing, matching residue class, modulus dividing)
/// is dropped. The filter is purely syntactic.
pub fn scan(params: &ScanParams) -> Result<Vec<Congruence>> {
    if params.k_set.is_empty() || params.m_set.is_empty() {
        return Err(Error::InvalidArgument(
            "scan needs nonempty k and M sets".into(),
        ));
    }
    if params.a_max < 1 {
        return Err(Error::InvalidArgument("scan needs A_max >= 1".into()));
    }
    if params.bound < 10 * params.a_max as usize {
        return Err(Error::InvalidArgument(format!(
            "scan bound {} below 10·A_max = {}",
            params.bound,
            10 * params.a_max
        )));
    }
    for &k in &params.k_set {
        if k < 1 {
            return Err(Error::InvalidArgument("scan needs k >= 1".into()));
        }
    }
    let mut pairs: Vec<(u64, u64)> = Vec::new();
    for &k in &params.k_set {
        for &m in &params.m_set {
            CoeffRing::modular(m)?;
            pairs.push((k, m));
        }
    }
    pairs.sort_unstable();
    pairs.dedup();

    let bound = params.bound;
    let a_max = params.a_max;
    let min_samples = params.min_samples;
    let mut candidates: Vec<Congruence> = pairs
        .par_iter()
        .flat_map(|&(k, m)| {
            let series = dk_series(k, bound, CoeffRing::modular(m).expect("validated")).values;
            let coeffs = series.coeffs_mod().expect("modular ring");
            let mut found = Vec::new();
            for a in 1..=a_max {
                for b in 0..a {
                    let samples = if bound > b as usize {
                        (bound - 1 - b as usize) / a as usize + 1
                    } else {
                        0
                    };
                    if samples < min_samples {
                        continue;
                    }
                    let all_zero = (b as usize..bound)
                        .step_by(a as usize)
                        .all(|i| coeffs[i] == 0);
                    if all_zero {
                        found.push(Congruence::new(k, a, b, m, "scanned", Source::Scanned));
                    }
                }
            }
            found
        })
        .collect();
    candidates.sort();

    // Keep only maximal claims under the (partial-order) implication.
    let keep: Vec<bool> = candidates
        .iter()
        .map(|c| {
            !candidates.iter().any(|other| {
                (other.k, other.a, other.b, other.m) != (c.k, c.a, c.b, c.m) && other.implies(c)
            })
        })
        .collect();
    Ok(candidates
        .into_iter()
        .zip(keep)
        .filter_map(|(c, keep)| keep.then_some(c))
        .collect())
}

/// One JSON line of scanner output.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ScanRecord {
    pub k: u64,
    #[serde(rename = "A")]
    pub a: u64,
    #[serde(rename = "B")]
    pub b: u64,
    #[serde(rename = "M")]
    pub m: u64,
    pub bound: u64,
    pub family: String,
    pub status: String,
}

impl ScanRecord {
    pub fn new(c: &Congruence, bound: usize) -> ScanRecord {
        ScanRecord {
            k: c.k,
            a: c.a,
            b: c.b,
            m: c.m,
            bound: bound as u64,
            family: c.family.clone(),
            status: "holds_up_to_bound".to_string(),
        }
    }
}

/// Serialize scan output as JSON lines, one record per congruence.
pub fn scan_to_jsonl(congruences: &[Congruence], bound: usize) -> String {
    let mut out = String::new();
    for c in congruences {
        let record = ScanRecord::new(c, bound);
        out.push_str(&serde_json::to_string(&record).expect("plain struct serializes"));
        out.push('\n');
    }
    out
}
