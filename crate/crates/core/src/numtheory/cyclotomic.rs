//! Cyclotomic values, their Suzuki/Ree twisted factors, and primitive prime divisors.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use super::arith::{divisors, is_prime, mobius, multiplicative_order, prime_power};
use crate::error::{Error, Result};

/// Φ_n(q) via the Möbius product Π_{d|n} (q^d − 1)^{μ(n/d)}.
pub fn cyclotomic_value(n: u64, q: &BigInt) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::invalid("cyclotomic index must be positive"));
    }
    if *q < BigInt::from(2) {
        return Err(Error::invalid("cyclotomic argument must be at least 2"));
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for d in divisors(n) {
        let term = Pow::pow(q, d as u32) - 1;
        match mobius(n / d) {
            1 => num *= term,
            -1 => den *= term,
            _ => {}
        }
    }
    debug_assert!((&num % &den) == BigInt::from(0));
    Ok(num / den)
}

/// Convenience wrapper for word-sized arguments.
pub fn cyclotomic_u64(n: u64, q: u64) -> Result<BigInt> {
    cyclotomic_value(n, &BigInt::from(q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum TwistKind {
    Phi4,
    Phi6,
    Phi12,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

/// Returns `m` when `q = base^(2m+1)`.
pub fn odd_power_exponent(q: u64, base: u64) -> Option<u32> {
    match prime_power(q) {
        Some((b, f)) if b == base && f % 2 == 1 => Some((f - 1) / 2),
        _ => None,
    }
}

/// Twisted factors of Φ4, Φ12 at q = 2^(2m+1) and of Φ6 at q = 3^(2m+1).
///
/// Φ4^±(q) = q ± √(2q) + 1, Φ6^±(q) = q ± √(3q) + 1,
/// Φ12^±(q) = q² ± √(2q³) + q ± √(2q) + 1.
pub fn twisted_cyclotomic(kind: TwistKind, sign: Sign, q: u64) -> Result<BigInt> {
    let base = match kind {
        TwistKind::Phi4 | TwistKind::Phi12 => 2,
        TwistKind::Phi6 => 3,
    };
    let m = odd_power_exponent(q, base)
        .ok_or_else(|| Error::invalid(format!("q = {q} is not an odd power of {base}")))?;
    let q = BigInt::from(q);
    // root = sqrt(base * q) = base^(m+1)
    let root = Pow::pow(BigInt::from(base), m + 1);
    let s = BigInt::from(sign.as_i32());
    Ok(match kind {
        TwistKind::Phi4 | TwistKind::Phi6 => &q + &s * &root + 1,
        TwistKind::Phi12 => &q * &q + &s * &q * &root + &q + &s * &root + 1,
    })
}

/// True iff `p` divides q^n − 1 but no q^k − 1 with 1 ≤ k < n, i.e. ord_p(q) = n.
pub fn is_primitive_prime_divisor(p: u64, q: u64, n: u64) -> bool {
    if !is_prime(p) || n == 0 {
        return false;
    }
    multiplicative_order(q % p, p) == Some(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: u64, q: u64) -> BigInt {
        cyclotomic_u64(n, q).unwrap()
    }

    #[test]
    fn values() {
        assert_eq!(c(1, 7), BigInt::from(6));
        assert_eq!(c(3, 8), BigInt::from(73));
        assert_eq!(c(12, 3), BigInt::from(73));
        assert!(cyclotomic_u64(3, 1).is_err());
    }

    #[test]
    fn product_identity() {
        for q in 2u64..=16 {
            for n in 1u64..=40 {
                let prod: BigInt = divisors(n).into_iter().map(|d| c(d, q)).product();
                assert_eq!(prod, Pow::pow(BigInt::from(q), n as u32) - 1, "n={n} q={q}");
            }
        }
    }

    #[test]
    fn twisted_examples() {
        assert_eq!(
            twisted_cyclotomic(TwistKind::Phi4, Sign::Plus, 8).unwrap(),
            BigInt::from(13)
        );
        assert_eq!(
            twisted_cyclotomic(TwistKind::Phi4, Sign::Minus, 32).unwrap(),
            BigInt::from(25)
        );
        assert_eq!(
            twisted_cyclotomic(TwistKind::Phi6, Sign::Plus, 27).unwrap(),
            BigInt::from(37)
        );
        assert!(twisted_cyclotomic(TwistKind::Phi4, Sign::Plus, 16).is_err());
        assert!(twisted_cyclotomic(TwistKind::Phi6, Sign::Plus, 8).is_err());
        assert!(twisted_cyclotomic(TwistKind::Phi12, Sign::Plus, 9).is_err());
    }

    #[test]
    fn twisted_products() {
        let cases = [
            (TwistKind::Phi4, 2u64, 4u64),
            (TwistKind::Phi12, 2, 12),
            (TwistKind::Phi6, 3, 6),
        ];
        for (kind, base, n) in cases {
            let mut q = base;
            while q <= 1 << 13 {
                let plus = twisted_cyclotomic(kind, Sign::Plus, q).unwrap();
                let minus = twisted_cyclotomic(kind, Sign::Minus, q).unwrap();
                assert_eq!(plus * minus, c(n, q), "{kind:?} q={q}");
                q *= base * base;
            }
        }
    }

    #[test]
    fn primitive_divisors() {
        assert!(is_primitive_prime_divisor(127, 2, 7));
        assert!(is_primitive_prime_divisor(5, 2, 4));
        for p in 2..200 {
            assert!(!is_primitive_prime_divisor(p, 2, 6));
        }
        assert!(!is_primitive_prime_divisor(7, 2, 6));
        assert!(is_primitive_prime_divisor(7, 2, 3));
    }
}
