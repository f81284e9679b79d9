use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Pow;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numtheory::{gcd, pow_mod, prime_power};

/// Lie type of a finite simple group, with twisted types named after their graph twist.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LieFamily {
    A,
    TwistedA,
    B,
    C,
    D,
    TwistedD,
    G2,
    /// ²B₂
    Suzuki,
    /// ³D₄
    Triality,
    F4,
    /// ²F₄
    TwistedF4,
    E6,
    TwistedE6,
    E7,
    E8,
    /// ²G₂
    Ree,
}

impl LieFamily {
    pub const ALL: [LieFamily; 16] = [
        LieFamily::A,
        LieFamily::TwistedA,
        LieFamily::B,
        LieFamily::C,
        LieFamily::D,
        LieFamily::TwistedD,
        LieFamily::G2,
        LieFamily::Suzuki,
        LieFamily::Triality,
        LieFamily::F4,
        LieFamily::TwistedF4,
        LieFamily::E6,
        LieFamily::TwistedE6,
        LieFamily::E7,
        LieFamily::E8,
        LieFamily::Ree,
    ];

    pub fn label(self) -> &'static str {
        match self {
            LieFamily::A => "A",
            LieFamily::TwistedA => "2A",
            LieFamily::B => "B",
            LieFamily::C => "C",
            LieFamily::D => "D",
            LieFamily::TwistedD => "2D",
            LieFamily::G2 => "G2",
            LieFamily::Suzuki => "2B2",
            LieFamily::Triality => "3D4",
            LieFamily::F4 => "F4",
            LieFamily::TwistedF4 => "2F4",
            LieFamily::E6 => "E6",
            LieFamily::TwistedE6 => "2E6",
            LieFamily::E7 => "E7",
            LieFamily::E8 => "E8",
            LieFamily::Ree => "2G2",
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(
            self,
            LieFamily::A
                | LieFamily::TwistedA
                | LieFamily::B
                | LieFamily::C
                | LieFamily::D
                | LieFamily::TwistedD
        )
    }

    pub fn is_exceptional(self) -> bool {
        !self.is_classical()
    }

    pub fn fixed_rank(self) -> Option<u32> {
        match self {
            LieFamily::G2 | LieFamily::Suzuki | LieFamily::Ree => Some(2),
            LieFamily::Triality | LieFamily::F4 | LieFamily::TwistedF4 => Some(4),
            LieFamily::E6 | LieFamily::TwistedE6 => Some(6),
            LieFamily::E7 => Some(7),
            LieFamily::E8 => Some(8),
            _ => None,
        }
    }

    /// For ²B₂, ²F₄ and ²G₂: the prime whose odd powers are the admissible q.
    pub fn odd_power_base(self) -> Option<u64> {
        match self {
            LieFamily::Suzuki | LieFamily::TwistedF4 => Some(2),
            LieFamily::Ree => Some(3),
            _ => None,
        }
    }

    /// +1 for untwisted types, −1 for the unitary-style twists of A, D and E₆.
    pub fn epsilon(self) -> i64 {
        match self {
            LieFamily::TwistedA | LieFamily::TwistedD | LieFamily::TwistedE6 => -1,
            _ => 1,
        }
    }
}

impl fmt::Display for LieFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for LieFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s
            .trim()
            .replace(['²', '^'], "2")
            .replace('³', "3")
            .replace('_', "");
        LieFamily::ALL
            .iter()
            .copied()
            .find(|f| f.label().eq_ignore_ascii_case(&t))
            .ok_or_else(|| Error::invalid(format!("unknown Lie family '{s}'")))
    }
}

/// A finite simple group of Lie type, identified by family, ambient rank and field size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LieParams {
    pub family: LieFamily,
    /// Rank of the ambient simple algebraic group.
    pub r: u32,
    pub q: u64,
    pub ell: u64,
    pub f: u32,
    /// Order of the group of diagonal automorphisms.
    pub d: u64,
    pub out_order: u64,
}

impl LieParams {
    pub fn new(family: LieFamily, r: u32, q: u64) -> Result<Self> {
        let (ell, f) = prime_power(q)
            .ok_or_else(|| Error::invalid(format!("q = {q} is not a prime power")))?;
        if let Some(fixed) = family.fixed_rank() {
            if r != fixed {
                return Err(Error::invalid(format!(
                    "{family} has rank {fixed}, not {r}"
                )));
            }
        }
        if let Some(base) = family.odd_power_base() {
            if ell != base || f % 2 == 0 || f < 3 {
                return Err(Error::invalid(format!(
                    "{family} needs q = {base}^(2m+1) with m ≥ 1, got {q}"
                )));
            }
        }
        let min_rank = match family {
            LieFamily::A => 1,
            LieFamily::TwistedA | LieFamily::B | LieFamily::C => 2,
            LieFamily::D | LieFamily::TwistedD => 4,
            _ => r,
        };
        if r < min_rank {
            return Err(Error::invalid(format!(
                "{family} needs rank at least {min_rank}"
            )));
        }
        let not_simple = match family {
            LieFamily::A => r == 1 && q <= 3,
            LieFamily::TwistedA => r == 2 && q == 2,
            LieFamily::B | LieFamily::C => r == 2 && q == 2,
            LieFamily::G2 => q == 2,
            _ => false,
        };
        if not_simple {
            return Err(Error::invalid(format!(
                "{family} of rank {r} over {q} elements is not simple"
            )));
        }
        let qr_mod4 = pow_mod(q, r as u64, 4);
        let d = match family {
            LieFamily::A => gcd(r as u64 + 1, q - 1),
            LieFamily::TwistedA => gcd(r as u64 + 1, q + 1),
            LieFamily::B | LieFamily::C | LieFamily::E7 => gcd(2, q - 1),
            LieFamily::D => gcd(4, (qr_mod4 + 3) % 4),
            LieFamily::TwistedD => gcd(4, (qr_mod4 + 1) % 4),
            LieFamily::E6 => gcd(3, q - 1),
            LieFamily::TwistedE6 => gcd(3, q + 1),
            _ => 1,
        };
        let f64_ = f as u64;
        let out_order = match family {
            LieFamily::A if r == 1 => d * f64_,
            LieFamily::A
            | LieFamily::TwistedA
            | LieFamily::TwistedD
            | LieFamily::E6
            | LieFamily::TwistedE6 => 2 * d * f64_,
            LieFamily::B | LieFamily::C if r == 2 && ell == 2 => 2 * f64_,
            LieFamily::B | LieFamily::C | LieFamily::E7 => d * f64_,
            LieFamily::D if r == 4 => 6 * d * f64_,
            LieFamily::D => 2 * d * f64_,
            LieFamily::G2 if ell == 3 => 2 * f64_,
            LieFamily::F4 if ell == 2 => 2 * f64_,
            LieFamily::Triality => 3 * f64_,
            LieFamily::G2
            | LieFamily::F4
            | LieFamily::E8
            | LieFamily::Suzuki
            | LieFamily::TwistedF4
            | LieFamily::Ree => f64_,
        };
        Ok(LieParams {
            family,
            r,
            q,
            ell,
            f,
            d,
            out_order,
        })
    }

    /// Exponent of q in the semisimple class count: r, or r/2 for ²B₂, ²F₄, ²G₂,
    /// whose Frobenius map scales the character lattice by √q.
    pub fn field_rank(&self) -> u32 {
        if self.family.odd_power_base().is_some() {
            self.r / 2
        } else {
            self.r
        }
    }

    pub fn epsilon(&self) -> i64 {
        self.family.epsilon()
    }

    /// q^r in the normalization where the simply connected group has q^r semisimple classes.
    pub fn q_to_rank(&self) -> BigInt {
        Pow::pow(BigInt::from(self.q), self.field_rank())
    }
}

impl fmt::Display for LieParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(r={}, q={})", self.family, self.r, self.q)
    }
}

/// Number of semisimple classes of the simply connected group.
pub fn semisimple_class_count(params: &LieParams) -> BigInt {
    params.q_to_rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_and_outer_orders() {
        let p = LieParams::new(LieFamily::A, 1, 9).unwrap();
        assert_eq!((p.d, p.out_order), (2, 4));
        let p = LieParams::new(LieFamily::A, 2, 4).unwrap();
        assert_eq!((p.d, p.out_order), (3, 12));
        let p = LieParams::new(LieFamily::A, 2, 8).unwrap();
        assert_eq!((p.d, p.out_order), (1, 6));
        let p = LieParams::new(LieFamily::TwistedA, 2, 5).unwrap();
        assert_eq!((p.d, p.out_order), (3, 6));
        let p = LieParams::new(LieFamily::D, 4, 3).unwrap();
        assert_eq!((p.d, p.out_order), (4, 24));
        let p = LieParams::new(LieFamily::TwistedD, 4, 3).unwrap();
        assert_eq!((p.d, p.out_order), (2, 4));
        let p = LieParams::new(LieFamily::D, 5, 3).unwrap();
        assert_eq!(p.d, 2);
        let p = LieParams::new(LieFamily::TwistedD, 5, 3).unwrap();
        assert_eq!(p.d, 4);
        let p = LieParams::new(LieFamily::C, 2, 4).unwrap();
        assert_eq!(p.out_order, 4);
        let p = LieParams::new(LieFamily::Suzuki, 2, 128).unwrap();
        assert_eq!((p.d, p.out_order, p.field_rank()), (1, 7, 1));
        let p = LieParams::new(LieFamily::E6, 6, 4).unwrap();
        assert_eq!((p.d, p.out_order), (3, 12));
    }

    #[test]
    fn twisted_validation() {
        assert!(LieParams::new(LieFamily::Suzuki, 2, 16).is_err());
        assert!(LieParams::new(LieFamily::Suzuki, 2, 2).is_err());
        assert!(LieParams::new(LieFamily::Ree, 2, 27).is_ok());
        assert!(LieParams::new(LieFamily::Ree, 2, 9).is_err());
        assert!(LieParams::new(LieFamily::TwistedF4, 4, 8).is_ok());
        assert!(LieParams::new(LieFamily::TwistedF4, 4, 27).is_err());
        assert!(LieParams::new(LieFamily::E8, 7, 2).is_err());
        assert!(LieParams::new(LieFamily::A, 1, 3).is_err());
        assert!(LieParams::new(LieFamily::A, 1, 6).is_err());
    }

    #[test]
    fn semisimple_counts() {
        let c = |f, r, q| semisimple_class_count(&LieParams::new(f, r, q).unwrap());
        assert_eq!(c(LieFamily::A, 1, 5), BigInt::from(5));
        assert_eq!(c(LieFamily::E8, 8, 2), BigInt::from(256));
        assert_eq!(c(LieFamily::A, 2, 8), BigInt::from(64));
        assert_eq!(c(LieFamily::Suzuki, 2, 8), BigInt::from(8));
    }

    #[test]
    fn parse_labels() {
        for f in LieFamily::ALL {
            assert_eq!(f.label().parse::<LieFamily>().unwrap(), f);
        }
        assert_eq!(
            "²B₂".replace('₂', "2").parse::<LieFamily>().unwrap(),
            LieFamily::Suzuki
        );
    }
}
