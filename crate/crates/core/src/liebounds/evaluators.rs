//! Closed-form lower bounds for classical groups, evaluated exactly.

use num_bigint::BigInt;
use num_traits::{One, Pow, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::exact::{ceil_int, int};
use crate::numtheory::partitions::{odd_partition_table, partition_table};
use crate::numtheory::{euler_phi, gcd, is_prime, prime_power, Enclosure, Expr, Rational, Sign};

fn field(q: u64) -> Result<(u64, u32)> {
    prime_power(q).ok_or_else(|| Error::invalid(format!("q = {q} is not a prime power")))
}

fn big_pow(q: u64, e: u32) -> BigInt {
    Pow::pow(BigInt::from(q), e)
}

/// Which class set a torus orbit bound applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OrbitTarget {
    PElements,
    PRegular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorusOrbitBound {
    /// (q^n − 1)/((q − 1)·gcd(n, q − 1)).
    pub m: u64,
    pub target: OrbitTarget,
    #[serde(serialize_with = "crate::liebounds::ser_rational")]
    pub value: Rational,
}

/// Lower bound on Aut-orbits of PSL_n(q) on classes of p-elements (p | m) or of
/// p-regular elements (p ∤ m), from elements of order m in a Singer torus.
pub fn psl_torus_orbit_bound(n: u32, q: u64, p: u64) -> Result<TorusOrbitBound> {
    let (_, f) = field(q)?;
    if n < 2 || (n == 2 && q <= 3) {
        return Err(Error::invalid(format!("PSL_{n}({q}) is not simple")));
    }
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let num = (q as u128)
        .checked_pow(n)
        .map(|x| x - 1)
        .ok_or_else(|| Error::Unsupported("q^n overflows".into()))?;
    let m = num / (q as u128 - 1) / gcd(n as u64, q - 1) as u128;
    let m = u64::try_from(m).map_err(|_| Error::Unsupported(format!("m = {m} exceeds 64 bits")))?;
    let eps = if n == 2 { 1 } else { 2 };
    let den = int(eps * f as u64 * n as u64);
    let (target, top) = if m % p == 0 {
        (OrbitTarget::PElements, p - 1)
    } else {
        (OrbitTarget::PRegular, euler_phi(m))
    };
    Ok(TorusOrbitBound {
        m,
        target,
        value: int(top) / den,
    })
}

/// Proportion bounds from one strongly self-centralizing subgroup T with Weyl quotient w.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SscBounds {
    /// Lower bound on |G_p'|/|G|.
    #[serde(serialize_with = "crate::liebounds::ser_rational")]
    pub p_regular: Rational,
    /// Whether the p-regular bound is strict.
    pub p_regular_strict: bool,
    /// Lower bound on |G_p|/|G| when p divides |T|.
    #[serde(serialize_with = "crate::liebounds::ser_opt_rational")]
    pub p_elements: Option<Rational>,
}

pub fn ssc_torus_bounds(order_t: u64, w: u64, p_divides_t: bool) -> Result<SscBounds> {
    if w == 0 || order_t < 2 {
        return Err(Error::invalid("need |T| ≥ 2 and w ≥ 1"));
    }
    let inside = Rational::new(BigInt::from(order_t - 1), BigInt::from(order_t * w));
    Ok(if p_divides_t {
        SscBounds {
            p_regular: Rational::one() - Rational::new(BigInt::one(), BigInt::from(w)),
            p_regular_strict: true,
            p_elements: Some(inside),
        }
    } else {
        SscBounds {
            p_regular: inside,
            p_regular_strict: false,
            p_elements: None,
        }
    })
}

/// Strict lower bound Σ 1/(w_i + 1) on the p-regular proportion from pairwise
/// non-conjugate strongly self-centralizing subgroups of order prime to p.
pub fn ssc_coprime_tori_bound(weyl_orders: &[u64]) -> Rational {
    weyl_orders
        .iter()
        .map(|&w| Rational::new(BigInt::one(), BigInt::from(w + 1)))
        .sum()
}

/// Least x ≥ 1 with q^x ≥ n + 1, restricted to odd x when `odd`.
pub fn centralizer_log_rank(n: u64, q: u64, odd: bool) -> u32 {
    let mut x = 1u32;
    loop {
        let reaches = (q as u128).checked_pow(x).map_or(true, |v| v > n as u128);
        if reaches && (!odd || x % 2 == 1) {
            return x;
        }
        x += 1;
    }
}

/// H(n, q, ±) as an expression tree, for any n ≥ 1.
pub(crate) fn h_expr(n: u64, q: u64, sign: Sign) -> Expr {
    match sign {
        Sign::Plus => {
            let r = centralizer_log_rank(n, q, false);
            Expr::int(1) / (Expr::E * Expr::int(r))
        }
        Sign::Minus => {
            let r = centralizer_log_rank(n, q, true);
            let q = q as u128;
            let num = Expr::int(q * q - 1);
            let den = Expr::E * Expr::int(r) * Expr::int((q + 1) * (q + 1));
            (num / den).sqrt()
        }
    }
}

/// Minimal-centralizer factor H(n, q, ±) enclosed using the fixed rational bounds on e.
pub fn min_centralizer_h(n: u64, q: u64, sign: Sign) -> Result<Enclosure> {
    field(q)?;
    if n < 4 {
        return Err(Error::invalid("H(n, q, ±) is defined for n ≥ 4"));
    }
    h_expr(n, q, sign).eval(64)
}

/// Σ_{i=0}^{n} p(i)·p₀(n − i).
fn mixed_partition_sum(n: usize) -> u128 {
    let p = partition_table(n);
    let p0 = odd_partition_table(n);
    (0..=n).map(|i| p[i] * p0[n - i]).sum()
}

/// Σ_{i=0}^{⌊m/4⌋} p(i)·p₀(m − 4i).
fn quartic_partition_sum(m: usize) -> u128 {
    let p = partition_table(m / 4);
    let p0 = odd_partition_table(m);
    (0..=m / 4).map(|i| p[i] * p0[m - 4 * i]).sum()
}

fn check_cross_characteristic(q: u64, p: u64) -> Result<u64> {
    let (ell, _) = field(q)?;
    if !is_prime(p) || p == 2 || ell == p {
        return Err(Error::invalid(format!(
            "need an odd prime p not dividing q (p = {p}, q = {q})"
        )));
    }
    Ok(ell)
}

/// Unipotent classes of PSp_2n(q) counted by the partition formula.
pub fn symplectic_unipotent_lower(n: usize, q: u64) -> u128 {
    if q % 2 == 1 {
        mixed_partition_sum(n)
    } else {
        partition_table(n)[n]
    }
}

/// Unipotent classes of Ω_2n+1(q) counted by the partition formula.
pub fn odd_orthogonal_unipotent_lower(n: usize, q: u64) -> u128 {
    if q % 2 == 1 {
        quartic_partition_sum(2 * n + 1)
    } else {
        partition_table(n)[n]
    }
}

/// ⌈(q^n − 2)/(4n)⌉ for odd q, ⌈(q^n − 2)/(2n)⌉ for even q.
fn torus_semisimple_term(n: u32, q: u64) -> BigInt {
    let k = if q % 2 == 1 { 4 } else { 2 };
    ceil_int(&(Rational::from_integer(big_pow(q, n) - 2) / int(k * n as u64)))
}

/// Lower bound on k_p'(PSp_2n(q)) for odd p ∤ q.
pub fn symplectic_kpprime_lower(n: u32, q: u64, p: u64) -> Result<BigInt> {
    check_cross_characteristic(q, p)?;
    if n < 2 {
        return Err(Error::invalid("need n ≥ 2"));
    }
    Ok(BigInt::from(symplectic_unipotent_lower(n as usize, q)) + torus_semisimple_term(n, q))
}

/// Lower bound on k_p'(Ω_2n+1(q)) for odd p ∤ q.
pub fn odd_orthogonal_kpprime_lower(n: u32, q: u64, p: u64) -> Result<BigInt> {
    check_cross_characteristic(q, p)?;
    if n < 2 {
        return Err(Error::invalid("need n ≥ 2"));
    }
    Ok(BigInt::from(odd_orthogonal_unipotent_lower(n as usize, q)) + torus_semisimple_term(n, q))
}

/// Unipotent-class lower bound for PΩ_2n^±(q), n ≥ 4.
pub fn even_orthogonal_unipotent_lower(n: usize, q: u64, sign: Sign) -> Result<u128> {
    field(q)?;
    if n < 4 {
        return Err(Error::invalid("need n ≥ 4"));
    }
    let p = partition_table(n);
    Ok(if q % 2 == 1 {
        quartic_partition_sum(2 * n)
    } else {
        match sign {
            // ordered pairs (i, j) of distinct odd integers with i + j ≤ n
            Sign::Plus => {
                let mut s = p[n];
                for i in (1..=n).step_by(2) {
                    for j in (1..=n).step_by(2) {
                        if i != j && i + j <= n {
                            s += p[n - i - j];
                        }
                    }
                }
                s
            }
            Sign::Minus => (1..=n).step_by(2).map(|i| p[n - i]).sum(),
        }
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrthogonalBounds {
    pub unipotent: u128,
    /// Aut-orbits of p-regular semisimple classes; absent when p = 2 or (n, ε) = (4, +).
    #[serde(serialize_with = "crate::liebounds::ser_opt_display")]
    pub semisimple_orbits: Option<BigInt>,
}

pub fn orthogonal_lower_bounds(n: u32, q: u64, sign: Sign, p: u64) -> Result<OrthogonalBounds> {
    let (ell, f) = field(q)?;
    if !is_prime(p) || p == ell {
        return Err(Error::invalid(format!(
            "need a prime p not dividing q (p = {p}, q = {q})"
        )));
    }
    let unipotent = even_orthogonal_unipotent_lower(n as usize, q, sign)?;
    let semisimple_orbits = if p == 2 || (n == 4 && sign == Sign::Plus) {
        None
    } else {
        let qn = big_pow(q, n);
        let t: BigInt = match sign {
            Sign::Plus => qn - 1,
            Sign::Minus => qn + 1,
        };
        let g = gcd(4, (t % BigInt::from(4)).to_u64().unwrap_or(0));
        let den = int(4 * f as u64 * (n as u64 - 1) * g * g);
        Some(BigInt::one() + ceil_int(&(Rational::from_integer(big_pow(q, n - 1) - 2) / den)))
    };
    Ok(OrthogonalBounds {
        unipotent,
        semisimple_orbits,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::exact::rat;

    #[test]
    fn torus_orbits() {
        let b = psl_torus_orbit_bound(3, 8, 73).unwrap();
        assert_eq!(
            (b.m, b.target, b.value),
            (73, OrbitTarget::PElements, int(4))
        );
        let b = psl_torus_orbit_bound(2, 16, 17).unwrap();
        assert_eq!((b.m, b.value), (17, int(2)));
        let b = psl_torus_orbit_bound(4, 2, 5).unwrap();
        assert_eq!((b.m, b.value), (15, rat(1, 2)));
        let b = psl_torus_orbit_bound(2, 7, 7).unwrap();
        assert_eq!((b.m, b.target, b.value), (4, OrbitTarget::PRegular, int(1)));
    }

    #[test]
    fn ssc_proportions() {
        let b = ssc_torus_bounds(73, 3, true).unwrap();
        assert_eq!(b.p_regular, rat(2, 3));
        assert!(b.p_regular_strict);
        assert_eq!(ssc_torus_bounds(65, 4, true).unwrap().p_regular, rat(3, 4));
        let b = ssc_torus_bounds(7, 1, false).unwrap();
        assert_eq!(b.p_regular, rat(6, 7));
        assert!(b.p_regular > rat(1, 2));
        assert_eq!(ssc_coprime_tori_bound(&[4, 4]), rat(2, 5));
    }

    #[test]
    fn h_values() {
        assert_eq!(centralizer_log_rank(4, 5, false), 1);
        assert_eq!(centralizer_log_rank(9, 2, false), 4);
        assert_eq!(centralizer_log_rank(5, 4, true), 3);
        let h = min_centralizer_h(4, 5, Sign::Plus).unwrap();
        assert!(h.lo() > &rat(36787, 100000) && h.hi() < &rat(36788, 100000));
        let h = min_centralizer_h(9, 2, Sign::Plus).unwrap();
        assert!(h.lo() > &rat(9196, 100000) && h.hi() < &rat(9197, 100000));
        // (15/(75e))^(1/2) ≈ 0.27124
        let h = min_centralizer_h(5, 4, Sign::Minus).unwrap();
        assert!(h.lo() > &rat(27123, 100000) && h.hi() < &rat(27126, 100000));
        assert!(min_centralizer_h(3, 4, Sign::Plus).is_err());
    }

    #[test]
    fn symplectic_values() {
        assert_eq!(symplectic_kpprime_lower(2, 3, 5).unwrap(), BigInt::from(5));
        assert_eq!(symplectic_kpprime_lower(2, 4, 5).unwrap(), BigInt::from(6));
        assert!(symplectic_kpprime_lower(2, 3, 2).is_err());
        assert!(symplectic_kpprime_lower(2, 9, 3).is_err());
        assert_eq!(odd_orthogonal_unipotent_lower(2, 3), 4);
    }

    #[test]
    fn orthogonal_values() {
        assert_eq!(
            even_orthogonal_unipotent_lower(4, 3, Sign::Plus).unwrap(),
            10
        );
        assert_eq!(
            even_orthogonal_unipotent_lower(4, 3, Sign::Minus).unwrap(),
            10
        );
        let b = orthogonal_lower_bounds(5, 2, Sign::Plus, 5).unwrap();
        assert_eq!(b.semisimple_orbits, Some(BigInt::from(2)));
        assert_eq!(
            orthogonal_lower_bounds(4, 3, Sign::Plus, 5)
                .unwrap()
                .semisimple_orbits,
            None
        );
        assert_eq!(
            orthogonal_lower_bounds(5, 3, Sign::Minus, 2)
                .unwrap()
                .semisimple_orbits,
            None
        );
    }
}
