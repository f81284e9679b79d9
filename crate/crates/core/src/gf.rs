//! Arithmetic in GF(ℓ^f) for q = ℓ^f ≤ 2^16.
//!
//! Elements are polynomial residues of degree < f, packed base ℓ into a `u32` with the
//! constant term as the least significant digit. The modulus is the monic irreducible
//! whose coefficient list (constant term first, leading 1 dropped) is least under that
//! same packing; for GF(16) this gives x⁴+x+1 and for GF(9) x²+1.

use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::is_prime;

/// A field element, packed base ℓ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Fe(pub u32);

impl fmt::Display for Fe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub const MAX_DEGREE: u32 = 12;
pub const MAX_ORDER: u32 = 1 << 16;

#[derive(Clone, Debug)]
pub struct Field {
    ell: u32,
    f: u32,
    q: u32,
    /// Monic modulus, coefficients from the constant term up (length f+1).
    modulus: Vec<u32>,
    primitive: Fe,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, o: &Self) -> bool {
        self.ell == o.ell && self.f == o.f && self.modulus == o.modulus
    }
}
impl Eq for Field {}

impl Field {
    pub fn new(ell: u32, f: u32) -> Result<Self> {
        if !is_prime(ell as u64) {
            return Err(Error::invalid(format!("characteristic {ell} is not prime")));
        }
        if f == 0 || f > MAX_DEGREE {
            return Err(Error::invalid(format!(
                "degree {f} outside 1..={MAX_DEGREE}"
            )));
        }
        let q = (ell as u64).pow(f);
        if q > MAX_ORDER as u64 {
            return Err(Error::invalid(format!(
                "field size {ell}^{f} exceeds {MAX_ORDER}"
            )));
        }
        let q = q as u32;
        let modulus = (0..q)
            .map(|tail| {
                let mut m = digits(tail, ell, f);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, ell))
            .expect("an irreducible polynomial of every degree exists");
        let mut field = Field {
            ell,
            f,
            q,
            modulus,
            primitive: Fe(1),
            exp: vec![],
            log: vec![],
        };
        field.primitive = (1..q)
            .map(Fe)
            .find(|&a| field.slow_order(a) == (q - 1) as u64)
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity((q - 1) as usize);
        let mut log = vec![u32::MAX; q as usize];
        let mut x = Fe(1);
        for i in 0..q - 1 {
            exp.push(x.0);
            log[x.0 as usize] = i;
            x = field.mul_poly(x, field.primitive);
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    /// Prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Field::new(p, 1)
    }

    /// GF(q) for a prime power q.
    pub fn of_order(q: u32) -> Result<Self> {
        let (ell, f) = crate::numtheory::prime_power(q as u64)
            .ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        Field::new(ell as u32, f)
    }

    pub fn characteristic(&self) -> u32 {
        self.ell
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Least element (in packed order) generating the multiplicative group.
    pub fn primitive_element(&self) -> Fe {
        self.primitive
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1)
    }

    /// The polynomial variable x (equal to a prime-field constant when f = 1).
    pub fn x(&self) -> Fe {
        if self.f == 1 {
            Fe(self.reduce_const(self.ell - self.modulus[0]))
        } else {
            Fe(self.ell)
        }
    }

    fn reduce_const(&self, c: u32) -> u32 {
        c % self.ell
    }

    pub fn from_int(&self, n: i64) -> Fe {
        Fe(n.rem_euclid(self.ell as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.q).map(Fe)
    }

    pub fn coefficients(&self, a: Fe) -> Vec<u32> {
        digits(a.0, self.ell, self.f)
    }

    pub fn from_coefficients(&self, c: &[u32]) -> Result<Fe> {
        if c.len() > self.f as usize || c.iter().any(|&x| x >= self.ell) {
            return Err(Error::invalid("coefficient vector out of range"));
        }
        Ok(Fe(pack(c, self.ell)))
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.ell == 2 {
            return Fe(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % self.ell + y % self.ell) % self.ell) * place;
            x /= self.ell;
            y /= self.ell;
            place *= self.ell;
        }
        Fe(out)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        if self.ell == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x > 0 {
            out += ((self.ell - x % self.ell) % self.ell) * place;
            x /= self.ell;
            place *= self.ell;
        }
        Fe(out)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        let n = self.q - 1;
        let s = self.log[a.0 as usize] + self.log[b.0 as usize];
        Fe(self.exp[(if s >= n { s - n } else { s }) as usize])
    }

    /// Schoolbook multiplication followed by reduction; reference for [`Field::mul`].
    pub fn mul_poly(&self, a: Fe, b: Fe) -> Fe {
        let pa = digits(a.0, self.ell, self.f);
        let pb = digits(b.0, self.ell, self.f);
        let prod = poly_mul(&pa, &pb, self.ell);
        let (_, r) = poly_divrem(&prod, &self.modulus, self.ell);
        Fe(pack(&r, self.ell))
    }

    /// Inverse by the extended Euclidean algorithm on polynomials.
    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::invalid("inverse of zero"));
        }
        let pa = trim(digits(a.0, self.ell, self.f));
        let (g, s) = poly_ext_gcd(&pa, &self.modulus, self.ell);
        debug_assert_eq!(g.len(), 1);
        let c = mod_inv_small(g[0], self.ell);
        let s: Vec<u32> = s
            .iter()
            .map(|&x| (x as u64 * c as u64 % self.ell as u64) as u32)
            .collect();
        let (_, r) = poly_divrem(&s, &self.modulus, self.ell);
        Ok(Fe(pack(&r, self.ell)))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Fe, n: u64) -> Fe {
        if n == 0 {
            return Fe(1);
        }
        if a.0 == 0 {
            return Fe(0);
        }
        let m = (self.q - 1) as u64;
        let e = (self.log[a.0 as usize] as u64 * (n % m)) % m;
        Fe(self.exp[e as usize])
    }

    /// Discrete logarithm to the base [`Field::primitive_element`].
    pub fn log(&self, a: Fe) -> Option<u32> {
        (a.0 != 0).then(|| self.log[a.0 as usize])
    }

    /// a^(ℓ^k).
    pub fn frobenius(&self, a: Fe, k: u32) -> Fe {
        let m = (self.q - 1) as u64;
        let mut e = 1u64;
        for _ in 0..(k % self.f) {
            e = e * self.ell as u64 % m.max(1);
        }
        if self.q == 2 {
            return a;
        }
        self.pow(a, e)
    }

    pub fn multiplicative_order(&self, a: Fe) -> Option<u64> {
        let l = self.log(a)? as u64;
        let m = (self.q - 1) as u64;
        Some(m / num_integer::gcd(l, m))
    }

    fn slow_order(&self, a: Fe) -> u64 {
        let mut x = a;
        let mut k = 1u64;
        while x != Fe(1) {
            x = self.mul_poly(x, a);
            k += 1;
            if k > self.q as u64 {
                return 0;
            }
        }
        k
    }

    pub fn is_square(&self, a: Fe) -> bool {
        match self.log(a) {
            None => true,
            Some(l) => self.ell == 2 || l % 2 == 0,
        }
    }
}

fn digits(mut x: u32, ell: u32, f: u32) -> Vec<u32> {
    (0..f)
        .map(|_| {
            let d = x % ell;
            x /= ell;
            d
        })
        .collect()
}

fn pack(c: &[u32], ell: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * ell + d)
}

fn trim(mut p: Vec<u32>) -> Vec<u32> {
    while p.len() > 1 && *p.last().unwrap() == 0 {
        p.pop();
    }
    if p.is_empty() {
        p.push(0);
    }
    p
}

fn is_zero_poly(p: &[u32]) -> bool {
    p.iter().all(|&c| c == 0)
}

fn mod_inv_small(a: u32, ell: u32) -> u32 {
    crate::numtheory::mod_inverse(a as u64, ell as u64).expect("unit") as u32
}

fn poly_mul(a: &[u32], b: &[u32], ell: u32) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u64 + x as u64 * y as u64) % ell as u64) as u32;
        }
    }
    trim(out)
}

fn poly_sub(a: &[u32], b: &[u32], ell: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + ell - y) % ell
            })
            .collect(),
    )
}

/// Division with remainder by a nonzero divisor.
fn poly_divrem(a: &[u32], b: &[u32], ell: u32) -> (Vec<u32>, Vec<u32>) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    let lead_inv = mod_inv_small(b[db], ell);
    if r.len() < b.len() || is_zero_poly(&r) {
        return (vec![0], r);
    }
    let mut quo = vec![0u32; r.len() - db];
    while r.len() >= b.len() && !is_zero_poly(&r) {
        let shift = r.len() - 1 - db;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % ell as u64) as u32;
        quo[shift] = c;
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + ell - (c as u64 * bc as u64 % ell as u64) as u32) % ell;
        }
        r = trim(r);
    }
    (trim(quo), r)
}

/// Returns (g, s) with s·a ≡ g (mod m), g = gcd(a, m).
fn poly_ext_gcd(a: &[u32], m: &[u32], ell: u32) -> (Vec<u32>, Vec<u32>) {
    let (mut r0, mut r1) = (trim(m.to_vec()), trim(a.to_vec()));
    let (mut s0, mut s1) = (vec![0u32], vec![1u32]);
    while !is_zero_poly(&r1) {
        let (qt, r) = poly_divrem(&r0, &r1, ell);
        let s2 = poly_sub(&s0, &poly_mul(&qt, &s1, ell), ell);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

/// Irreducibility by trial division by every monic polynomial of degree ≤ deg/2.
fn is_irreducible(m: &[u32], ell: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 1 {
        return true;
    }
    for d in 1..=deg / 2 {
        let count = ell.pow(d as u32);
        for tail in 0..count {
            let mut g = digits(tail, ell, d as u32);
            g.push(1);
            let (_, r) = poly_divrem(m, &g, ell);
            if is_zero_poly(&r) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moduli() {
        assert_eq!(Field::new(2, 1).unwrap().modulus(), &[0, 1]);
        assert_eq!(Field::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(Field::new(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(Field::new(2, 2).unwrap().modulus(), &[1, 1, 1]);
        assert!(Field::new(4, 1).is_err());
        assert!(Field::new(2, 17).is_err());
        assert!(Field::new(3, 11).is_err());
    }

    #[test]
    fn examples() {
        let f4 = Field::new(2, 2).unwrap();
        let x = f4.x();
        assert_eq!(f4.add(x, x), Fe(0));
        assert_eq!(f4.frobenius(x, 1), f4.add(x, Fe(1)));
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.mul(f9.x(), f9.x()), Fe(2));
        assert!(f9.inv(Fe(0)).is_err());
    }

    #[test]
    fn table_mul_matches_polynomial_mul() {
        for (ell, f) in [(2, 3), (3, 2), (5, 2), (2, 6), (7, 1)] {
            let k = Field::new(ell, f).unwrap();
            for a in k.elements() {
                for b in k.elements() {
                    assert_eq!(k.mul(a, b), k.mul_poly(a, b));
                }
                if a.0 != 0 {
                    assert_eq!(k.mul(a, k.inv(a).unwrap()), Fe(1));
                }
            }
        }
    }
}
