//! Closed-form theta expansions for the classical identities behind the
//! congruence proofs, and a verifier that checks each identity as a pair
//! of truncated series.
//!
//! The catalogue (left side / right side):
//!
//! | tag          | identity                                                              |
//! |--------------|-----------------------------------------------------------------------|
//! | `triangular` | f_2^2/f_1 = sum_{m>=0} q^{m(m+1)/2}  (Gauss)                          |
//! | `cube`       | f_1^3 = sum_{m>=0} (-1)^m (2m+1) q^{m(m+1)/2}  (Jacobi)               |
//! | `pentagonal` | f_1 = sum_m (-1)^m q^{m(3m-1)/2}  (Euler)                             |
//! | `sextic`     | f_1^5/f_2^2 = sum_m (6m+1) q^{m(3m+1)/2}                              |
//! | `phi-square` | f_1^2/f_2 = sum_j (-1)^j q^{j^2}                                      |
//! | `phi-2diss`  | f_1^2/f_2 = f_8^5/(f_4^2 f_16^2) - 2q f_16^2/f_8                      |
//! | `phi-3diss`  | f_1^2/f_2 = f_9^2/f_18 - 2q f_3 f_18^2/(f_6 f_9)                      |
//! | `f1f2-3diss` | f_1 f_2 = f_6 f_9^4/(f_3 f_18^2) - q f_9 f_18 - 2q^2 f_3 f_18^4/(f_6 f_9^2) |
//! | `inv4-2diss` | 1/f_1^4 = f_4^14/(f_2^14 f_8^4) + 4q f_4^2 f_8^4/f_2^10               |
//! | `mod11-a`    | f_1^2 f_4^2/f_2 = sum_m (3m+1) q^{3m^2+2m}                            |
//! | `mod11-b`    | f_2^5/f_1^2 = sum_m (-1)^m (3m+1) q^{3m^2+2m}                         |
//!
//! Bilateral sums run over all integers m; unilateral ones over m >= 0.
//! Verification always compares exact integer coefficients — the
//! identities hold over the integers, and a modular check would be weaker.

use num_bigint::BigInt;

use crate::eta::{eta_quotient_series, EtaQuotient};
use crate::ring::CoeffRing;
use crate::series::Series;
use crate::{Error, Result};

/// Identity tags, one per displayed identity.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum LemmaId {
    Triangular,
    Cube,
    Pentagonal,
    Sextic,
    PhiSquare,
    Phi2Diss,
    Phi3Diss,
    F1F2Diss3,
    Inv4Diss2,
    Mod11A,
    Mod11B,
}

impl LemmaId {
    pub const ALL: [LemmaId; 11] = [
        LemmaId::Triangular,
        LemmaId::Cube,
        LemmaId::Pentagonal,
        LemmaId::Sextic,
        LemmaId::PhiSquare,
        LemmaId::Phi2Diss,
        LemmaId::Phi3Diss,
        LemmaId::F1F2Diss3,
        LemmaId::Inv4Diss2,
        LemmaId::Mod11A,
        LemmaId::Mod11B,
    ];

    /// Stable CLI name of the tag.
    pub fn name(&self) -> &'static str {
        match self {
            LemmaId::Triangular => "triangular",
            LemmaId::Cube => "cube",
            LemmaId::Pentagonal => "pentagonal",
            LemmaId::Sextic => "sextic",
            LemmaId::PhiSquare => "phi-square",
            LemmaId::Phi2Diss => "phi-2diss",
            LemmaId::Phi3Diss => "phi-3diss",
            LemmaId::F1F2Diss3 => "f1f2-3diss",
            LemmaId::Inv4Diss2 => "inv4-2diss",
            LemmaId::Mod11A => "mod11-a",
            LemmaId::Mod11B => "mod11-b",
        }
    }

    pub fn from_name(name: &str) -> Result<LemmaId> {
        LemmaId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown lemma `{name}`")))
    }
}

impl std::fmt::Display for LemmaId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Sum `weight(m) q^{expo(m)}` over all integers m (bilateral) or m >= 0,
/// truncated to order `n`. Terms are visited as m = 0, 1, -1, 2, -2, ...
/// with a per-term range test; iteration stops once several consecutive
/// |m| produce no in-range exponent (the exponent forms are quadratics
/// with positive leading coefficient, so they cannot come back).
fn theta_sum(
    ring: CoeffRing,
    n: usize,
    bilateral: bool,
    weight: impl Fn(i64) -> i64,
    expo: impl Fn(i64) -> i64,
) -> Series {
    let mut out = Series::zero(ring, n);
    let mut misses = 0;
    let mut m: i64 = 0;
    while misses < 3 {
        let mut hit = false;
        let pair = [m, -m];
        let branches: &[i64] = if bilateral && m != 0 {
            &pair
        } else {
            &pair[..1]
        };
        for &mm in branches {
            let e = expo(mm);
            debug_assert!(e >= 0, "exponent form went negative at m = {mm}");
            if e >= 0 && (e as usize) < n {
                out.add_i64_at(e as usize, weight(mm));
                hit = true;
            }
        }
        if hit {
            misses = 0;
        } else {
            misses += 1;
        }
        m += 1;
    }
    out
}

fn eta(factors: &[(u64, i64)], n: usize, ring: CoeffRing) -> Series {
    eta_quotient_series(&EtaQuotient::new(factors.iter().copied()).unwrap(), n, ring)
}

/// Right-hand side of the identity: the theta sum, or the eta-quotient
/// combination for the dissection tags. Order `n`.
pub fn theta_rhs(id: LemmaId, n: usize, ring: CoeffRing) -> Series {
    match id {
        LemmaId::Triangular => theta_sum(ring, n, false, |_| 1, |m| m * (m + 1) / 2),
        LemmaId::Cube => theta_sum(
            ring,
            n,
            false,
            |m| if m % 2 == 0 { 2 * m + 1 } else { -(2 * m + 1) },
            |m| m * (m + 1) / 2,
        ),
        LemmaId::Pentagonal => theta_sum(
            ring,
            n,
            true,
            |m| if m.rem_euclid(2) == 0 { 1 } else { -1 },
            |m| m * (3 * m - 1) / 2,
        ),
        LemmaId::Sextic => theta_sum(ring, n, true, |m| 6 * m + 1, |m| m * (3 * m + 1) / 2),
        LemmaId::PhiSquare => theta_sum(
            ring,
            n,
            true,
            |j| if j.rem_euclid(2) == 0 { 1 } else { -1 },
            |j| j * j,
        ),
        LemmaId::Mod11A => theta_sum(ring, n, true, |m| 3 * m + 1, |m| 3 * m * m + 2 * m),
        LemmaId::Mod11B => theta_sum(
            ring,
            n,
            true,
            |m| {
                let w = 3 * m + 1;
                if m.rem_euclid(2) == 0 {
                    w
                } else {
                    -w
                }
            },
            |m| 3 * m * m + 2 * m,
        ),
        LemmaId::Phi2Diss => {
            let even = eta(&[(8, 5), (4, -2), (16, -2)], n, ring);
            let odd = eta(&[(16, 2), (8, -1)], n, ring).scalar_mul(-2).shift_up(1);
            even.add(&odd).expect("same ring")
        }
        LemmaId::Phi3Diss => {
            let a = eta(&[(9, 2), (18, -1)], n, ring);
            let b = eta(&[(3, 1), (18, 2), (6, -1), (9, -1)], n, ring)
                .scalar_mul(-2)
                .shift_up(1);
            a.add(&b).expect("same ring")
        }
        LemmaId::F1F2Diss3 => {
            let a = eta(&[(6, 1), (9, 4), (3, -1), (18, -2)], n, ring);
            let b = eta(&[(9, 1), (18, 1)], n, ring).scalar_mul(-1).shift_up(1);
            let c = eta(&[(3, 1), (18, 4), (6, -1), (9, -2)], n, ring)
                .scalar_mul(-2)
                .shift_up(2);
            a.add(&b).expect("same ring").add(&c).expect("same ring")
        }
        LemmaId::Inv4Diss2 => {
            let a = eta(&[(4, 14), (2, -14), (8, -4)], n, ring);
            let b = eta(&[(4, 2), (8, 4), (2, -10)], n, ring)
                .scalar_mul(4)
                .shift_up(1);
            a.add(&b).expect("same ring")
        }
    }
}

/// Left-hand side: the eta quotient named in the identity, expanded to
/// order `n`.
pub fn lemma_lhs(id: LemmaId, n: usize, ring: CoeffRing) -> Series {
    let factors: &[(u64, i64)] = match id {
        LemmaId::Triangular => &[(2, 2), (1, -1)],
        LemmaId::Cube => &[(1, 3)],
        LemmaId::Pentagonal => &[(1, 1)],
        LemmaId::Sextic => &[(1, 5), (2, -2)],
        LemmaId::PhiSquare | LemmaId::Phi2Diss | LemmaId::Phi3Diss => &[(1, 2), (2, -1)],
        LemmaId::F1F2Diss3 => &[(1, 1), (2, 1)],
        LemmaId::Inv4Diss2 => &[(1, -4)],
        LemmaId::Mod11A => &[(1, 2), (4, 2), (2, -1)],
        LemmaId::Mod11B => &[(2, 5), (1, -2)],
    };
    eta(factors, n, ring)
}

/// First differing coefficient between two exact series, if any.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mismatch {
    pub index: usize,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

/// Outcome of comparing two series over the first `order` coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IdentityReport {
    pub order: usize,
    pub mismatch: Option<Mismatch>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compare `lhs` and `rhs` coefficientwise over the first `n` terms,
/// reporting the earliest disagreement.
pub fn verify_identity(lhs: &Series, rhs: &Series, n: usize) -> Result<IdentityReport> {
    if lhs.order() < n || rhs.order() < n {
        return Err(Error::IndexOutOfRange {
            index: n,
            order: lhs.order().min(rhs.order()),
        });
    }
    for i in 0..n {
        let a = lhs.coeff(i)?.to_bigint();
        let b = rhs.coeff(i)?.to_bigint();
        if a != b {
            return Ok(IdentityReport {
                order: n,
                mismatch: Some(Mismatch {
                    index: i,
                    lhs: a,
                    rhs: b,
                }),
            });
        }
    }
    Ok(IdentityReport {
        order: n,
        mismatch: None,
    })
}

/// Verification record for one lemma tag.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LemmaReport {
    pub id: LemmaId,
    pub report: IdentityReport,
}

/// Expand both sides of the identity to order `n` over exact integers and
/// compare.
pub fn verify_lemma(id: LemmaId, n: usize) -> LemmaReport {
    let ring = CoeffRing::Int;
    let lhs = lemma_lhs(id, n, ring);
    let rhs = theta_rhs(id, n, ring);
    let report = verify_identity(&lhs, &rhs, n).expect("both sides have order n");
    LemmaReport { id, report }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: CoeffRing = CoeffRing::Int;

    fn ints(s: &Series) -> Vec<i64> {
        s.coeffs_int()
            .expect("exact ring")
            .iter()
            .map(|c| i64::try_from(c).expect("fits i64"))
            .collect()
    }

    #[test]
    fn sextic_rhs_values() {
        // (6m+1) q^{m(3m+1)/2} at m = 0, -1, 1, -2, 2 -> exponents 0,1,2,5,7.
        let s = theta_rhs(LemmaId::Sextic, 8, Z);
        assert_eq!(ints(&s), vec![1, -5, 7, 0, 0, -11, 0, 13]);
    }

    #[test]
    fn triangular_rhs_values() {
        let s = theta_rhs(LemmaId::Triangular, 10, Z);
        assert_eq!(ints(&s), vec![1, 1, 0, 1, 0, 0, 1, 0, 0, 0]);
    }

    #[test]
    fn phi_square_rhs_values() {
        // j and -j both contribute at j^2 with sign (-1)^j, giving
        // 1 - 2q + 2q^4 - 2q^9 + ...
        let s = theta_rhs(LemmaId::PhiSquare, 10, Z);
        assert_eq!(ints(&s), vec![1, -2, 0, 0, 2, 0, 0, 0, 0, -2]);
    }

    #[test]
    fn cube_rhs_is_f1_cubed() {
        // Jacobi: f_1^3 = 1 - 3q + 5q^3 - 7q^6 + ...
        let rhs = theta_rhs(LemmaId::Cube, 7, Z);
        assert_eq!(ints(&rhs), vec![1, -3, 0, 5, 0, 0, -7]);
        let cube = crate::eta::pochhammer_series(1, 400, Z).pow(3).unwrap();
        assert!(cube
            .equal_up_to(&theta_rhs(LemmaId::Cube, 400, Z), 400)
            .unwrap());
    }

    #[test]
    fn all_lemmas_pass_at_moderate_order() {
        for id in LemmaId::ALL {
            let r = verify_lemma(id, 300);
            assert!(
                r.report.pass(),
                "lemma {id} failed: {:?}",
                r.report.mismatch
            );
        }
    }

    #[test]
    fn perturbed_rhs_fails_at_the_perturbed_index() {
        let n = 50;
        let lhs = lemma_lhs(LemmaId::Triangular, n, Z);
        let rhs = theta_rhs(LemmaId::Triangular, n, Z)
            .add(&Series::monomial(Z, n, 7, 1))
            .unwrap();
        let report = verify_identity(&lhs, &rhs, n).unwrap();
        assert!(!report.pass());
        let mm = report.mismatch.unwrap();
        assert_eq!(mm.index, 7);
        assert_eq!(mm.lhs, BigInt::from(0));
        assert_eq!(mm.rhs, BigInt::from(1));
    }

    #[test]
    fn name_round_trip() {
        for id in LemmaId::ALL {
            assert_eq!(LemmaId::from_name(id.name()).unwrap(), id);
        }
        assert!(LemmaId::from_name("nope").is_err());
    }

    #[test]
    fn phi_2dissection_pieces_match_residue_classes() {
        // Even part of f_1^2/f_2 deflates to f_4^5/(f_2^2 f_8^2); odd part
        // (divided by q) to -2 f_8^2/f_4.
        let n = 200;
        let lhs = lemma_lhs(LemmaId::Phi2Diss, 2 * n, Z);
        let even = lhs.dissect(2, 0);
        let odd = lhs.dissect(2, 1);
        let even_expected = eta(&[(4, 5), (2, -2), (8, -2)], n, Z);
        let odd_expected = eta(&[(8, 2), (4, -1)], n, Z).scalar_mul(-2);
        assert!(even.equal_up_to(&even_expected, n).unwrap());
        assert!(odd.equal_up_to(&odd_expected, n).unwrap());
    }

    #[test]
    fn f1f2_3dissection_pieces_match_residue_classes() {
        let n = 150;
        let lhs = lemma_lhs(LemmaId::F1F2Diss3, 3 * n, Z);
        let c0 = eta(&[(2, 1), (3, 4), (1, -1), (6, -2)], n, Z);
        let c1 = eta(&[(3, 1), (6, 1)], n, Z).scalar_mul(-1);
        let c2 = eta(&[(1, 1), (6, 4), (2, -1), (3, -2)], n, Z).scalar_mul(-2);
        assert!(lhs.dissect(3, 0).equal_up_to(&c0, n).unwrap());
        assert!(lhs.dissect(3, 1).equal_up_to(&c1, n).unwrap());
        assert!(lhs.dissect(3, 2).equal_up_to(&c2, n).unwrap());
    }

    #[test]
    fn triangular_theta_vanishes_on_2_mod_3() {
        // Exponents m(m+1)/2 never fall in 3n+2 (the driver of the
        // d_2(3n+2) congruence).
        let s = theta_rhs(LemmaId::Triangular, 12, Z);
        assert!(s.dissect(3, 2).is_zero());
    }
}
