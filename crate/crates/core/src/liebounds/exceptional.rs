//! Exceptional groups: prime-size bounds, strongly self-centralizing tori, and
//! group orders as products of cyclotomic-style factors.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive, Zero};
use serde::Serialize;

use super::params::{LieFamily, LieParams};
use crate::error::{Error, Result};
use crate::numtheory::{cyclotomic_u64, factorize, gcd, twisted_cyclotomic, Sign, TwistKind};

/// Φ_n(q), or one of the twisted factors Φ4^±, Φ6^±, Φ12^±.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CycFactor {
    Phi(u64),
    Twisted(TwistKind, Sign),
}

impl CycFactor {
    pub fn eval(&self, q: u64) -> Result<BigInt> {
        match *self {
            CycFactor::Phi(n) => cyclotomic_u64(n, q),
            CycFactor::Twisted(k, s) => twisted_cyclotomic(k, s, q),
        }
    }
}

impl fmt::Display for CycFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycFactor::Phi(n) => write!(f, "Phi{n}"),
            CycFactor::Twisted(k, s) => {
                let n = match k {
                    TwistKind::Phi4 => 4,
                    TwistKind::Phi6 => 6,
                    TwistKind::Phi12 => 12,
                };
                write!(f, "Phi{n}{}", if *s == Sign::Plus { "+" } else { "-" })
            }
        }
    }
}

/// gcd(a, q − 1) or gcd(a, q + 1); `One` for no divisor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GcdTerm {
    One,
    QMinusOne(u64),
    QPlusOne(u64),
}

impl GcdTerm {
    pub fn eval(&self, q: u64) -> u64 {
        match *self {
            GcdTerm::One => 1,
            GcdTerm::QMinusOne(a) => gcd(a, q - 1),
            GcdTerm::QPlusOne(a) => gcd(a, q + 1),
        }
    }
}

/// Restriction on q under which a torus is listed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum QCondition {
    Always,
    NotCongruent { modulus: u64, residue: u64 },
}

impl QCondition {
    pub fn holds(&self, q: u64) -> bool {
        match *self {
            QCondition::Always => true,
            QCondition::NotCongruent { modulus, residue } => q % modulus != residue,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusData {
    pub order: CycFactor,
    pub divisor: GcdTerm,
    /// |N_S(T)/T|.
    pub w: u64,
    pub condition: QCondition,
}

impl TorusData {
    pub fn order_at(&self, q: u64) -> Result<BigInt> {
        Ok(self.order.eval(q)? / self.divisor.eval(q))
    }
}

/// |S| = q^N · Π Φ_n(q)^{a_n} / |Z|.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderData {
    pub q_exponent: u32,
    /// Pairs (n, a_n).
    pub phi: Vec<(u64, u32)>,
    pub center: GcdTerm,
}

impl OrderData {
    pub fn order(&self, q: u64) -> Result<BigInt> {
        let mut n: BigInt = Pow::pow(BigInt::from(q), self.q_exponent);
        for &(k, a) in &self.phi {
            n *= Pow::pow(cyclotomic_u64(k, q)?, a);
        }
        Ok(n / self.center.eval(q))
    }

    /// Largest prime dividing the order, factoring each Φ_n(q) separately.
    pub fn largest_prime(&self, q: u64) -> Result<u64> {
        let order = self.order(q)?;
        let mut best = factorize(q).primes().max().unwrap_or(1);
        for &(k, _) in &self.phi {
            let v = cyclotomic_u64(k, q)?
                .to_u64()
                .ok_or_else(|| Error::Unsupported(format!("Phi{k}({q}) exceeds 64 bits")))?;
            for p in factorize(v).primes() {
                // dividing by the centre can remove a prime entirely
                if p > best && (&order % p).is_zero() {
                    best = p;
                }
            }
        }
        Ok(best)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExceptionalData {
    pub family: LieFamily,
    /// Upper bound Ψ_S(q) for the largest prime divisor of |S|.
    pub psi: CycFactor,
    /// Strongly self-centralizing maximal tori.
    pub tori: Vec<TorusData>,
    pub order: OrderData,
}

impl ExceptionalData {
    pub fn tori_at(&self, q: u64) -> impl Iterator<Item = &TorusData> {
        self.tori.iter().filter(move |t| t.condition.holds(q))
    }
}

fn od(q_exponent: u32, phi: &[(u64, u32)], center: GcdTerm) -> OrderData {
    OrderData {
        q_exponent,
        phi: phi.to_vec(),
        center,
    }
}

fn torus(order: CycFactor, w: u64) -> TorusData {
    TorusData {
        order,
        divisor: GcdTerm::One,
        w,
        condition: QCondition::Always,
    }
}

pub fn exceptional_data(family: LieFamily) -> Result<ExceptionalData> {
    use CycFactor::{Phi, Twisted};
    use LieFamily as F;
    let (psi, tori, order) = match family {
        F::Suzuki => (
            Twisted(TwistKind::Phi4, Sign::Plus),
            vec![
                torus(Twisted(TwistKind::Phi4, Sign::Plus), 4),
                torus(Twisted(TwistKind::Phi4, Sign::Minus), 4),
            ],
            od(2, &[(1, 1), (4, 1)], GcdTerm::One),
        ),
        F::G2 => (
            Phi(3),
            vec![
                TorusData {
                    order: Phi(3),
                    divisor: GcdTerm::One,
                    w: 6,
                    condition: QCondition::NotCongruent {
                        modulus: 3,
                        residue: 1,
                    },
                },
                TorusData {
                    order: Phi(6),
                    divisor: GcdTerm::One,
                    w: 6,
                    condition: QCondition::NotCongruent {
                        modulus: 3,
                        residue: 2,
                    },
                },
            ],
            od(6, &[(1, 2), (2, 2), (3, 1), (6, 1)], GcdTerm::One),
        ),
        F::Ree => (
            Twisted(TwistKind::Phi6, Sign::Plus),
            vec![
                torus(Twisted(TwistKind::Phi6, Sign::Plus), 6),
                torus(Twisted(TwistKind::Phi6, Sign::Minus), 6),
            ],
            od(3, &[(1, 1), (2, 1), (6, 1)], GcdTerm::One),
        ),
        F::F4 => (
            Phi(8),
            vec![torus(Phi(12), 12)],
            od(
                24,
                &[(1, 4), (2, 4), (3, 2), (4, 2), (6, 2), (8, 1), (12, 1)],
                GcdTerm::One,
            ),
        ),
        F::TwistedF4 => (
            Twisted(TwistKind::Phi12, Sign::Plus),
            vec![
                torus(Twisted(TwistKind::Phi12, Sign::Plus), 12),
                torus(Twisted(TwistKind::Phi12, Sign::Minus), 12),
            ],
            od(12, &[(1, 2), (2, 2), (4, 2), (6, 1), (12, 1)], GcdTerm::One),
        ),
        F::Triality => (
            Phi(12),
            vec![torus(Phi(12), 4)],
            od(12, &[(1, 2), (2, 2), (3, 2), (6, 2), (12, 1)], GcdTerm::One),
        ),
        F::E6 => (
            Phi(9),
            vec![TorusData {
                order: Phi(9),
                divisor: GcdTerm::QMinusOne(3),
                w: 9,
                condition: QCondition::Always,
            }],
            od(
                36,
                &[
                    (1, 6),
                    (2, 4),
                    (3, 3),
                    (4, 2),
                    (5, 1),
                    (6, 2),
                    (8, 1),
                    (9, 1),
                    (12, 1),
                ],
                GcdTerm::QMinusOne(3),
            ),
        ),
        F::TwistedE6 => (
            Phi(18),
            vec![TorusData {
                order: Phi(18),
                divisor: GcdTerm::QPlusOne(3),
                w: 9,
                condition: QCondition::Always,
            }],
            od(
                36,
                &[
                    (1, 4),
                    (2, 6),
                    (3, 2),
                    (4, 2),
                    (6, 3),
                    (8, 1),
                    (10, 1),
                    (12, 1),
                    (18, 1),
                ],
                GcdTerm::QPlusOne(3),
            ),
        ),
        F::E7 => (
            Phi(7),
            vec![],
            od(
                63,
                &[
                    (1, 7),
                    (2, 7),
                    (3, 3),
                    (4, 2),
                    (5, 1),
                    (6, 3),
                    (7, 1),
                    (8, 1),
                    (9, 1),
                    (10, 1),
                    (12, 1),
                    (14, 1),
                    (18, 1),
                ],
                GcdTerm::QMinusOne(2),
            ),
        ),
        F::E8 => (
            Phi(30),
            vec![torus(Phi(24), 24), torus(Phi(15), 30), torus(Phi(30), 30)],
            od(
                120,
                &[
                    (1, 8),
                    (2, 8),
                    (3, 4),
                    (4, 4),
                    (5, 2),
                    (6, 4),
                    (7, 1),
                    (8, 2),
                    (9, 1),
                    (10, 2),
                    (12, 2),
                    (14, 1),
                    (15, 1),
                    (18, 1),
                    (20, 1),
                    (24, 1),
                    (30, 1),
                ],
                GcdTerm::One,
            ),
        ),
        _ => {
            return Err(Error::invalid(format!(
                "{family} is not an exceptional family"
            )))
        }
    };
    Ok(ExceptionalData {
        family,
        psi,
        tori,
        order,
    })
}

/// Group order at q, validated through [`LieParams`].
pub fn exceptional_order(family: LieFamily, q: u64) -> Result<BigInt> {
    LieParams::new(family, family.fixed_rank().unwrap_or(0), q)?;
    exceptional_data(family)?.order.order(q)
}

/// Largest prime divisor of the group order at q.
pub fn exceptional_largest_prime(family: LieFamily, q: u64) -> Result<u64> {
    LieParams::new(family, family.fixed_rank().unwrap_or(0), q)?;
    exceptional_data(family)?.order.largest_prime(q)
}

/// The three smallest q for which the family is defined and simple.
pub fn smallest_valid_q(family: LieFamily) -> [u64; 3] {
    match family.odd_power_base() {
        Some(2) => [8, 32, 128],
        Some(_) => [27, 243, 2187],
        None if family == LieFamily::G2 => [3, 4, 5],
        None => [2, 3, 4],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_examples() {
        let d = exceptional_data(LieFamily::Suzuki).unwrap();
        assert_eq!(d.psi, CycFactor::Twisted(TwistKind::Phi4, Sign::Plus));
        assert!(d.tori.iter().all(|t| t.w == 4));
        let d = exceptional_data(LieFamily::E8).unwrap();
        let tori: Vec<(CycFactor, u64)> = d.tori.iter().map(|t| (t.order, t.w)).collect();
        assert_eq!(
            tori,
            vec![
                (CycFactor::Phi(24), 24),
                (CycFactor::Phi(15), 30),
                (CycFactor::Phi(30), 30)
            ]
        );
        let d = exceptional_data(LieFamily::Triality).unwrap();
        assert_eq!((d.tori[0].order, d.tori[0].w), (CycFactor::Phi(12), 4));
        assert!(exceptional_data(LieFamily::A).is_err());
    }

    /// q^N · Π (q^i ∓ 1) / |Z| from the classical order formulas.
    fn order_by_formula(family: LieFamily, q: u64) -> BigInt {
        let qb = BigInt::from(q);
        let pw = |e: u32| -> BigInt { Pow::pow(&qb, e) };
        let m = |e: u32| pw(e) - 1;
        let p = |e: u32| pw(e) + 1;
        let g = |a: u64, b: u64| BigInt::from(gcd(a, b));
        match family {
            LieFamily::Suzuki => pw(2) * p(2) * m(1),
            LieFamily::G2 => pw(6) * m(6) * m(2),
            LieFamily::Ree => pw(3) * p(3) * m(1),
            LieFamily::F4 => pw(24) * m(12) * m(8) * m(6) * m(2),
            LieFamily::TwistedF4 => pw(12) * p(6) * m(4) * p(3) * m(1),
            LieFamily::Triality => pw(12) * (pw(8) + pw(4) + 1) * m(6) * m(2),
            LieFamily::E6 => pw(36) * m(12) * m(9) * m(8) * m(6) * m(5) * m(2) / g(3, q - 1),
            LieFamily::TwistedE6 => pw(36) * m(12) * p(9) * m(8) * m(6) * p(5) * m(2) / g(3, q + 1),
            LieFamily::E7 => {
                pw(63) * m(18) * m(14) * m(12) * m(10) * m(8) * m(6) * m(2) / g(2, q - 1)
            }
            LieFamily::E8 => pw(120) * m(30) * m(24) * m(20) * m(18) * m(14) * m(12) * m(8) * m(2),
            _ => unreachable!(),
        }
    }

    #[test]
    fn orders_match_formulas() {
        for family in LieFamily::ALL.into_iter().filter(|f| f.is_exceptional()) {
            for q in smallest_valid_q(family) {
                assert_eq!(
                    exceptional_order(family, q).unwrap(),
                    order_by_formula(family, q),
                    "{family} q = {q}"
                );
            }
        }
        let o = |f, q| exceptional_order(f, q).unwrap().to_string();
        assert_eq!(o(LieFamily::Suzuki, 8), "29120");
        assert_eq!(o(LieFamily::G2, 3), "4245696");
        assert_eq!(o(LieFamily::Ree, 27), "10073444472");
        assert_eq!(o(LieFamily::Triality, 2), "211341312");
        assert_eq!(o(LieFamily::E6, 2), "214841575522005575270400");
    }

    #[test]
    fn dimensions() {
        // q-exponent plus degree of the cyclotomic part is the dimension of the algebraic group
        for (family, dim) in [
            (LieFamily::G2, 14),
            (LieFamily::F4, 52),
            (LieFamily::E6, 78),
            (LieFamily::TwistedE6, 78),
            (LieFamily::E7, 133),
            (LieFamily::E8, 248),
            (LieFamily::Triality, 28),
        ] {
            let d = exceptional_data(family).unwrap().order;
            let deg: u64 = d
                .phi
                .iter()
                .map(|&(n, a)| crate::numtheory::euler_phi(n) * a as u64)
                .sum();
            assert_eq!(d.q_exponent as u64 + deg, dim, "{family}");
        }
    }

    #[test]
    fn prime_bound_soundness() {
        for family in LieFamily::ALL.into_iter().filter(|f| f.is_exceptional()) {
            let d = exceptional_data(family).unwrap();
            for q in smallest_valid_q(family) {
                let p = exceptional_largest_prime(family, q).unwrap();
                let psi = d.psi.eval(q).unwrap();
                assert!(BigInt::from(p) <= psi, "{family} at q = {q}: {p} > {psi}");
            }
        }
    }

    #[test]
    fn tori_divide_orders() {
        for family in LieFamily::ALL.into_iter().filter(|f| f.is_exceptional()) {
            let d = exceptional_data(family).unwrap();
            for q in smallest_valid_q(family) {
                let n = exceptional_order(family, q).unwrap();
                for t in d.tori_at(q) {
                    let o = t.order_at(q).unwrap();
                    assert_eq!(
                        &n % &o,
                        BigInt::from(0),
                        "{family} q = {q} torus {}",
                        t.order
                    );
                }
            }
        }
    }
}
