//! Certificates for closed-form inequalities and grid certification of stated exception sets.

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Pow};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::evaluators::{
    h_expr, odd_orthogonal_unipotent_lower, ssc_coprime_tori_bound, symplectic_unipotent_lower,
};
use super::exceptional::exceptional_data;
use super::params::{LieFamily, LieParams};
use crate::error::{Error, Result};
use crate::numtheory::cyclotomic::odd_power_exponent;
use crate::numtheory::exact::{ceil_int, int, rat};
use crate::numtheory::{
    compare_exprs, cyclotomic_u64, gcd, prime_power, twisted_cyclotomic, Enclosure, Expr, Rational,
    Sign, TwistKind, Verdict,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundCertificate {
    pub inequality: String,
    pub point: String,
    pub lhs: Enclosure,
    pub rhs: Enclosure,
    /// The inequality asserted is lhs > rhs when strict, lhs ≥ rhs otherwise.
    pub strict: bool,
    /// Decided by exact surd comparison rather than interval arithmetic.
    pub exact: bool,
    pub verdict: Verdict,
}

impl BoundCertificate {
    pub fn holds(&self) -> bool {
        match self.verdict {
            Verdict::Greater => true,
            Verdict::Equal => !self.strict,
            _ => false,
        }
    }

    fn decide(
        inequality: &str,
        point: String,
        lhs: &Expr,
        rhs: &Expr,
        strict: bool,
    ) -> Result<Self> {
        let c = compare_exprs(lhs, rhs)?;
        Ok(BoundCertificate {
            inequality: inequality.to_string(),
            point,
            lhs: c.lhs,
            rhs: c.rhs,
            strict,
            exact: c.exact,
            verdict: c.verdict,
        })
    }
}

fn odd_exponent(q: u64, base: u64) -> Result<u64> {
    odd_power_exponent(q, base)
        .filter(|&m| m >= 1)
        .map(u64::from)
        .ok_or_else(|| Error::invalid(format!("q = {q} is not {base}^(2m+1) with m ≥ 1")))
}

fn pow_int(q: u64, e: u32) -> BigInt {
    Pow::pow(BigInt::from(q), e)
}

fn q_rat(q: u64, e: u32) -> Rational {
    Rational::from_integer(pow_int(q, e))
}

/// Least p-regular proportion guaranteed by the strongly self-centralizing tori at q,
/// taken over every prime p.
pub fn exceptional_p_regular_proportion(family: LieFamily, q: u64) -> Result<Rational> {
    if family == LieFamily::E7 {
        return Ok(rat(1, 15));
    }
    let data = exceptional_data(family)?;
    let ws: Vec<u64> = data.tori_at(q).map(|t| t.w).collect();
    if ws.is_empty() {
        return Err(Error::consistency(format!(
            "{family} has no listed torus at q = {q}"
        )));
    }
    let dividing = ws
        .iter()
        .map(|&w| Rational::one() - rat(1, w as i64))
        .min()
        .expect("nonempty");
    Ok(dividing.min(ssc_coprime_tori_bound(&ws)))
}

/// Lower bound on k_p'(S), valid for every p, from the family's proof chain.
pub fn kpprime_chain_bound(params: &LieParams) -> Result<Expr> {
    let (q, r, d) = (params.q, params.r, params.d);
    let eps = params.epsilon();
    Ok(match params.family {
        LieFamily::A | LieFamily::TwistedA => {
            let sign = if eps > 0 { Sign::Plus } else { Sign::Minus };
            let c = q_rat(q, r) / int((r as u64 + 1) * d);
            Expr::c(c) * h_expr(r as u64 + 1, q, sign)
        }
        LieFamily::B | LieFamily::C => {
            let unip = if params.family == LieFamily::C {
                symplectic_unipotent_lower(r as usize, q)
            } else {
                odd_orthogonal_unipotent_lower(r as usize, q)
            };
            let k = if q % 2 == 1 { 4 } else { 2 };
            let odd_p = int(unip)
                + Rational::from_integer(ceil_int(&((q_rat(q, r) - int(2)) / int(k * r as u64))));
            let p_two = q_rat(q, r) / int(8 * r as u64);
            Expr::c(odd_p.min(p_two))
        }
        LieFamily::D | LieFamily::TwistedD => {
            let two = if q % 2 == 1 { 2 } else { 1 };
            let c = q_rat(q, r) * int(two) / int(8 * r as u64 * d);
            // least k with 2^k ≥ 4 and q^(2^k) ≥ 4r
            let mut k = 2u32;
            while (q as u128)
                .checked_pow(1 << k)
                .map_or(false, |v| v < 4 * r as u128)
            {
                k += 1;
            }
            let inner =
                Expr::c(Rational::one() - rat(1, q as i64)) / (Expr::int(1u64 << k) * Expr::E);
            Expr::c(c) * inner.sqrt()
        }
        family => {
            let prop = exceptional_p_regular_proportion(family, q)?;
            let base = Rational::from_integer(pow_int(q - 1, params.field_rank()));
            Expr::c(prop * base / int(d))
        }
    })
}

/// k_p'(S) > q^r/(17r²), from an observed count when given, else from the proof chain.
pub fn thm4_certify(
    params: &LieParams,
    k_pprime_observed: Option<u64>,
) -> Result<BoundCertificate> {
    let r = params.r as u64;
    let rhs = Expr::c(Rational::from_integer(params.q_to_rank()) / int(17 * r * r));
    let (lhs, id) = match k_pprime_observed {
        Some(k) => (Expr::int(k), "lie-rank-bound/observed"),
        None => (kpprime_chain_bound(params)?, "lie-rank-bound/chain"),
    };
    BoundCertificate::decide(id, params.to_string(), &lhs, &rhs, true)
}

/// Named closed-form inequalities, each a function of q alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Inequality {
    /// q²/(3f·(3,q−1)²) ≥ 2√(Φ₃(q)/(3,q−1) − 1)
    Psl3SscTorus,
    /// q²(|T|−1)/(6f·(3,q−1)²·|T|) ≥ 2√q with |T| = Φ₃(q)/(3,q−1)
    Psl3CoprimeTorus,
    /// 3(q−1)/(4(2m+1)) > 2√(Φ₄⁺(q) − 1), q = 2^(2m+1)
    SuzukiSscTorus,
    /// 5(q−1)²/(6fg) > 2√(Φ₃(q) − 1), g = 2 if 3 | q else 1
    G2SscTorus,
    /// (q−1)²/(7fg) > 2√q
    G2CoprimeTori,
    /// 5(q−1)/(6(2m+1)) > 2√(Φ₆⁺(q) − 1), q = 3^(2m+1)
    ReeSscTorus,
    /// 11(q−1)⁴/(12f·(2,q)) > 2√(Φ₁₂(q) − 1)
    F4SscTorus,
    /// (q−1)⁷/(15f·(2,q−1)²) > 2√(Φ₇(q) − 1)
    E7Proportion,
}

impl Inequality {
    pub fn id(self) -> &'static str {
        match self {
            Inequality::Psl3SscTorus => "psl3-ssc-torus",
            Inequality::Psl3CoprimeTorus => "psl3-coprime-torus",
            Inequality::SuzukiSscTorus => "suzuki-ssc-torus",
            Inequality::G2SscTorus => "g2-ssc-torus",
            Inequality::G2CoprimeTori => "g2-coprime-tori",
            Inequality::ReeSscTorus => "ree-ssc-torus",
            Inequality::F4SscTorus => "f4-ssc-torus",
            Inequality::E7Proportion => "e7-proportion",
        }
    }

    /// (lhs, rhs, strict) at q.
    pub fn sides(self, q: u64) -> Result<(Expr, Expr, bool)> {
        let (ell, f) = prime_power(q)
            .ok_or_else(|| Error::invalid(format!("q = {q} is not a prime power")))?;
        let f = f as u64;
        let two_sqrt = |x: Rational| Expr::int(2) * Expr::c(x).sqrt();
        let phi =
            |n: u64| -> Result<Rational> { Ok(Rational::from_integer(cyclotomic_u64(n, q)?)) };
        let qm1 = |e: u32| Rational::from_integer(pow_int(q - 1, e));
        let g2 = if ell == 3 { 2 } else { 1 };
        Ok(match self {
            Inequality::Psl3SscTorus => {
                let g = gcd(3, q - 1);
                let lhs = q_rat(q, 2) / int(3 * f * g * g);
                (Expr::c(lhs), two_sqrt(phi(3)? / int(g) - int(1)), false)
            }
            Inequality::Psl3CoprimeTorus => {
                let g = gcd(3, q - 1);
                let t = phi(3)? / int(g);
                let lhs = q_rat(q, 2) * (&t - int(1)) / (int(6 * f * g * g) * t);
                (Expr::c(lhs), two_sqrt(int(q)), false)
            }
            Inequality::SuzukiSscTorus => {
                let m = odd_exponent(q, 2)?;
                let lhs = int(3 * (q - 1)) / int(4 * (2 * m + 1));
                let p4 =
                    Rational::from_integer(twisted_cyclotomic(TwistKind::Phi4, Sign::Plus, q)?);
                (Expr::c(lhs), two_sqrt(p4 - int(1)), true)
            }
            Inequality::G2SscTorus => {
                let lhs = int(5) * qm1(2) / int(6 * f * g2);
                (Expr::c(lhs), two_sqrt(phi(3)? - int(1)), true)
            }
            Inequality::G2CoprimeTori => {
                (Expr::c(qm1(2) / int(7 * f * g2)), two_sqrt(int(q)), true)
            }
            Inequality::ReeSscTorus => {
                let m = odd_exponent(q, 3)?;
                let lhs = int(5 * (q - 1)) / int(6 * (2 * m + 1));
                let p6 =
                    Rational::from_integer(twisted_cyclotomic(TwistKind::Phi6, Sign::Plus, q)?);
                (Expr::c(lhs), two_sqrt(p6 - int(1)), true)
            }
            Inequality::F4SscTorus => {
                let lhs = int(11) * qm1(4) / int(12 * f * gcd(2, q));
                (Expr::c(lhs), two_sqrt(phi(12)? - int(1)), true)
            }
            Inequality::E7Proportion => {
                let z = gcd(2, q - 1);
                let lhs = qm1(7) / int(15 * f * z * z);
                (Expr::c(lhs), two_sqrt(phi(7)? - int(1)), true)
            }
        })
    }

    pub fn certify(self, q: u64) -> Result<BoundCertificate> {
        let (lhs, rhs, strict) = self.sides(q)?;
        BoundCertificate::decide(self.id(), format!("q={q}"), &lhs, &rhs, strict)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    pub modulus: u64,
    pub residue: u64,
}

/// Finite parameter grid declared in the claims fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GridSpec {
    PrimePowers {
        min: u64,
        max: u64,
        #[serde(default)]
        exclude: Vec<u64>,
        #[serde(default)]
        not_congruent: Option<Congruence>,
    },
    /// q = base^(2m+1) for min_m ≤ m ≤ max_m.
    OddPowers {
        base: u64,
        min_m: u32,
        max_m: u32,
    },
    Explicit {
        values: Vec<u64>,
    },
}

impl GridSpec {
    pub fn points(&self) -> Vec<u64> {
        match self {
            GridSpec::PrimePowers {
                min,
                max,
                exclude,
                not_congruent,
            } => (*min..=*max)
                .filter(|&q| prime_power(q).is_some())
                .filter(|q| !exclude.contains(q))
                .filter(|&q| not_congruent.map_or(true, |c| q % c.modulus != c.residue))
                .collect(),
            GridSpec::OddPowers { base, min_m, max_m } => {
                (*min_m..=*max_m).map(|m| base.pow(2 * m + 1)).collect()
            }
            GridSpec::Explicit { values } => values.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    /// Quoted phrase locating the claim in the source text.
    pub anchor: String,
    pub inequality: Inequality,
    pub grid: GridSpec,
    pub expected_exceptions: Vec<u64>,
    /// Remark on the unbounded tail beyond the grid.
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Deserialize)]
struct ClaimFile {
    claim: Vec<Claim>,
}

const DEFAULT_CLAIMS: &str = include_str!("../../fixtures/claims.toml");

pub fn parse_claims(text: &str) -> Result<Vec<Claim>> {
    let file: ClaimFile =
        toml::from_str(text).map_err(|e| Error::invalid(format!("claims fixture: {e}")))?;
    Ok(file.claim)
}

pub fn default_claims() -> Vec<Claim> {
    parse_claims(DEFAULT_CLAIMS).expect("bundled claims fixture parses")
}

pub fn load_claims(path: &Path) -> Result<Vec<Claim>> {
    parse_claims(&std::fs::read_to_string(path)?)
}

pub fn find_claim(id: &str) -> Result<Claim> {
    default_claims()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| Error::invalid(format!("unknown claim '{id}'")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GridReport {
    pub claim_id: String,
    pub anchor: String,
    pub note: Option<String>,
    pub certificates: Vec<BoundCertificate>,
    /// Grid points where the inequality is certified false.
    pub exceptions: Vec<u64>,
    /// Grid points left indeterminate after refinement.
    pub undecided: Vec<u64>,
    pub expected: Vec<u64>,
    pub matches: bool,
}

/// Evaluates the claim at every grid point; `points` overrides the declared grid.
pub fn grid_certify(claim: &Claim, points: Option<&[u64]>) -> Result<GridReport> {
    let pts: Vec<u64> = points.map_or_else(|| claim.grid.points(), <[u64]>::to_vec);
    let certificates: Vec<BoundCertificate> = pts
        .par_iter()
        .map(|&q| claim.inequality.certify(q))
        .collect::<Result<_>>()?;
    let exceptions: Vec<u64> = pts
        .iter()
        .zip(&certificates)
        .filter(|(_, c)| !c.holds() && c.verdict != Verdict::Indeterminate)
        .map(|(q, _)| *q)
        .collect();
    let undecided: Vec<u64> = pts
        .iter()
        .zip(&certificates)
        .filter(|(_, c)| c.verdict == Verdict::Indeterminate)
        .map(|(q, _)| *q)
        .collect();
    let mut expected = claim.expected_exceptions.clone();
    expected.sort_unstable();
    let matches = undecided.is_empty() && exceptions == expected;
    Ok(GridReport {
        claim_id: claim.id.clone(),
        anchor: claim.anchor.clone(),
        note: claim.note.clone(),
        certificates,
        exceptions,
        undecided,
        expected,
        matches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_parses_and_ids_are_unique() {
        let claims = default_claims();
        assert!(claims.len() >= 3);
        let mut ids: Vec<&str> = claims.iter().map(|c| c.id.as_str()).collect();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), claims.len());
    }

    #[test]
    fn grids() {
        let g = GridSpec::OddPowers {
            base: 2,
            min_m: 3,
            max_m: 4,
        };
        assert_eq!(g.points(), vec![128, 512]);
        let g = GridSpec::PrimePowers {
            min: 7,
            max: 16,
            exclude: vec![13],
            not_congruent: Some(Congruence {
                modulus: 3,
                residue: 1,
            }),
        };
        assert_eq!(g.points(), vec![8, 9, 11]);
    }

    #[test]
    fn rank_bound_observed_and_chain() {
        let p = LieParams::new(LieFamily::A, 1, 7).unwrap();
        let c = thm4_certify(&p, Some(4)).unwrap();
        assert_eq!(c.verdict, Verdict::Greater);
        assert!(c.exact);
        let p = LieParams::new(LieFamily::A, 2, 4).unwrap();
        let c = thm4_certify(&p, None).unwrap();
        assert_eq!(c.verdict, Verdict::Greater);
        // 16/(9e) ≈ 0.654 against 16/68
        assert!(c.lhs.lo() > &rat(65, 100) && c.lhs.hi() < &rat(66, 100));
        assert_eq!(c.rhs, Enclosure::exact(rat(16, 68)));
    }

    #[test]
    fn chain_holds_across_families_for_q_above_two() {
        for (family, ranks) in [
            (LieFamily::A, vec![1, 2, 3, 5, 8]),
            (LieFamily::TwistedA, vec![2, 3, 4, 7]),
            (LieFamily::B, vec![3, 4, 6]),
            (LieFamily::C, vec![2, 3, 5]),
            (LieFamily::D, vec![4, 5, 8]),
            (LieFamily::TwistedD, vec![4, 5, 7]),
        ] {
            for r in ranks {
                for q in [3u64, 4, 5, 7, 8, 9, 16, 25, 27, 64, 81] {
                    let Ok(p) = LieParams::new(family, r, q) else {
                        continue;
                    };
                    let c = thm4_certify(&p, None).unwrap();
                    assert_eq!(c.verdict, Verdict::Greater, "{p}");
                }
            }
        }
        for family in LieFamily::ALL.into_iter().filter(|f| f.is_exceptional()) {
            let r = family.fixed_rank().unwrap();
            let qs: Vec<u64> = match family.odd_power_base() {
                Some(2) => vec![8, 32, 128, 512],
                Some(_) => vec![27, 243, 2187],
                None => vec![3, 4, 5, 7, 8, 9, 16],
            };
            for q in qs {
                let p = LieParams::new(family, r, q).unwrap();
                assert_eq!(
                    thm4_certify(&p, None).unwrap().verdict,
                    Verdict::Greater,
                    "{p}"
                );
            }
        }
    }

    #[test]
    fn proportions() {
        assert_eq!(
            exceptional_p_regular_proportion(LieFamily::Suzuki, 8).unwrap(),
            rat(2, 5)
        );
        assert_eq!(
            exceptional_p_regular_proportion(LieFamily::G2, 7).unwrap(),
            rat(1, 7)
        );
        assert_eq!(
            exceptional_p_regular_proportion(LieFamily::Ree, 27).unwrap(),
            rat(2, 7)
        );
        assert_eq!(
            exceptional_p_regular_proportion(LieFamily::E8, 2).unwrap(),
            rat(1, 25) + rat(2, 31)
        );
    }

    #[test]
    fn single_points() {
        let c = Inequality::Psl3SscTorus.certify(25).unwrap();
        assert_eq!(c.verdict, Verdict::Less);
        assert!(c.exact);
        assert!(Inequality::Psl3SscTorus.certify(27).unwrap().holds());
        assert!(Inequality::SuzukiSscTorus.certify(1 << 11).unwrap().holds());
        assert!(Inequality::SuzukiSscTorus.certify(16).is_err());
    }
}
