//! Cyclotomic integers as multiplicity vectors over the e-th roots of unity.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::numtheory::{gcd, mobius, mod_inverse, split_p_part};

/// `Σ m_j ζ^j` stored sparsely as `(j, m_j)` pairs with `j` ascending and `m_j ≠ 0`.
///
/// Character values produced by the lift are eigenvalue multisets, so the
/// vector of `χ(g^k)` is exactly the index image of the vector of `χ(g)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycValue {
    terms: Vec<(u32, i64)>,
}

impl CycValue {
    pub fn from_terms(e: u64, terms: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut dense = vec![0i64; e as usize];
        for (j, m) in terms {
            dense[(j % e) as usize] += m;
        }
        Self::from_dense(&dense)
    }

    pub fn from_dense(dense: &[i64]) -> Self {
        CycValue {
            terms: dense
                .iter()
                .enumerate()
                .filter(|(_, &m)| m != 0)
                .map(|(j, &m)| (j as u32, m))
                .collect(),
        }
    }

    pub fn integer(n: i64) -> Self {
        CycValue {
            terms: if n == 0 { vec![] } else { vec![(0, n)] },
        }
    }

    pub fn terms(&self) -> &[(u32, i64)] {
        &self.terms
    }

    pub fn to_dense(&self, e: u64) -> Vec<i64> {
        let mut d = vec![0i64; e as usize];
        for &(j, m) in &self.terms {
            d[j as usize] = m;
        }
        d
    }

    /// Image under σ_k : ζ ↦ ζ^k.
    pub fn galois(&self, k: u64, e: u64) -> Self {
        let mut t: Vec<(u32, i64)> = self
            .terms
            .iter()
            .map(|&(j, m)| (((j as u64 * k) % e) as u32, m))
            .collect();
        t.sort_unstable();
        CycValue { terms: t }
    }

    /// Whether σ_k fixes this vector; avoids allocating the image.
    pub fn fixed_by(&self, k: u64, e: u64) -> bool {
        self.terms.iter().all(|&(j, m)| {
            let jk = ((j as u64 * k) % e) as u32;
            self.terms
                .binary_search_by_key(&jk, |t| t.0)
                .map(|i| self.terms[i].1 == m)
                .unwrap_or(false)
        })
    }

    pub fn conj(&self, e: u64) -> Self {
        self.galois(e - 1, e)
    }

    /// Lexicographic comparison of the dense vectors.
    pub fn dense_cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            if a.0 != b.0 {
                // The vector with the earlier nonzero index is larger there.
                return if a.0 < b.0 { a.1.cmp(&0) } else { 0.cmp(&b.1) };
            }
            if a.1 != b.1 {
                return a.1.cmp(&b.1);
            }
        }
        match self.terms.len().cmp(&other.terms.len()) {
            Ordering::Greater => self.terms[other.terms.len()].1.cmp(&0),
            Ordering::Less => 0.cmp(&other.terms[self.terms.len()].1),
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Adds `scale · a · conj(b)` into a dense accumulator of length e.
    pub fn accumulate_product_conj(acc: &mut [i128], a: &Self, b: &Self, scale: i128, e: u64) {
        for &(i, x) in &a.terms {
            for &(j, y) in &b.terms {
                let idx = (i as u64 + e - j as u64) % e;
                acc[idx as usize] += scale * x as i128 * y as i128;
            }
        }
    }
}

/// Generators of (ℤ/e)^× grouped by prime, each lifted to be ≡ 1 modulo the
/// complementary part of e.
pub fn unit_generators(e: u64) -> Vec<(u64, Vec<u64>)> {
    let f = crate::numtheory::factorize(e);
    f.0.iter()
        .map(|&(p, a)| {
            let pa = p.pow(a);
            let rest = e / pa;
            let local: Vec<u64> = if p == 2 {
                match a {
                    1 => vec![],
                    2 => vec![3],
                    _ => vec![pa - 1, 5],
                }
            } else {
                let phi = pa / p * (p - 1);
                let g = (2..pa)
                    .find(|&g| {
                        g % p != 0 && crate::numtheory::multiplicative_order(g, pa) == Some(phi)
                    })
                    .expect("odd prime powers have primitive roots");
                vec![g]
            };
            (p, local.into_iter().map(|g| crt_one(g, pa, rest)).collect())
        })
        .collect()
}

/// The k with k ≡ g (mod m) and k ≡ 1 (mod n), for coprime m, n.
pub fn crt_one(g: u64, m: u64, n: u64) -> u64 {
    if n == 1 {
        return g % m;
    }
    let inv = mod_inverse(m % n, n).expect("coprime moduli");
    let t = ((1 + n - g % n) % n) as u128 * inv as u128 % n as u128;
    ((g as u128 + m as u128 * t) % (m as u128 * n as u128)) as u64
}

/// Generators of {k : k ≡ 1 (mod p)} inside the p-primary part of (ℤ/e)^×, lifted.
pub fn one_mod_p_generators(e: u64, p: u64) -> Vec<u64> {
    let (pa, rest) = split_p_part(e, p);
    if pa == 1 {
        return vec![];
    }
    if p == 2 {
        return unit_generators(e)
            .into_iter()
            .find(|x| x.0 == 2)
            .map(|x| x.1)
            .unwrap_or_default();
    }
    if pa == p {
        return vec![];
    }
    vec![crt_one(1 + p, pa, rest)]
}

/// Value of a σ-invariant accumulator as a rational integer, or `None` if it
/// is not invariant under the given generators of the unit group.
pub fn invariant_integer(acc: &[i128], e: u64, gens: &[u64]) -> Option<i128> {
    for &k in gens {
        for (j, &v) in acc.iter().enumerate() {
            if acc[((j as u64 * k) % e) as usize] != v {
                return None;
            }
        }
    }
    // Σ_{gcd(j,e)=g} ζ^j is the Ramanujan sum μ(e/g).
    let mut total = 0i128;
    for (j, &v) in acc.iter().enumerate() {
        let g = gcd(j as u64, e);
        if j as u64 == g % e {
            total += v * mobius(e / g) as i128;
        }
    }
    Some(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn galois_and_order() {
        let e = 5;
        let v = CycValue::from_terms(e, [(1, 1), (4, 1)]);
        assert!(v.fixed_by(4, e));
        assert!(!v.fixed_by(2, e));
        assert_eq!(v.galois(2, e), CycValue::from_terms(e, [(2, 1), (3, 1)]));
        let a = CycValue::from_dense(&[1, 0, 0]);
        let b = CycValue::from_dense(&[0, 1, 0]);
        let c = CycValue::from_dense(&[0, 0, -1]);
        assert_eq!(a.dense_cmp(&b), Ordering::Greater);
        assert_eq!(c.dense_cmp(&CycValue::default()), Ordering::Less);
        assert_eq!(b.dense_cmp(&b), Ordering::Equal);
    }

    #[test]
    fn ramanujan_values() {
        // 1 + ζ + ζ² + ζ³ + ζ⁴ = 0 for e = 5
        let e = 5;
        let acc = vec![1i128; 5];
        let gens: Vec<u64> = unit_generators(e).into_iter().flat_map(|x| x.1).collect();
        assert_eq!(invariant_integer(&acc, e, &gens), Some(0));
        let acc = vec![7i128, 0, 0, 0, 0];
        assert_eq!(invariant_integer(&acc, e, &gens), Some(7));
        let acc = vec![0i128, 1, 0, 0, 0];
        assert_eq!(invariant_integer(&acc, e, &gens), None);
        // e = 12: primitive 12th roots sum to μ(12) = 0, primitive 4th roots to 0, square roots of unity: -1
        let e = 12;
        let gens: Vec<u64> = unit_generators(e).into_iter().flat_map(|x| x.1).collect();
        let mut acc = vec![0i128; 12];
        acc[6] = 3;
        assert_eq!(invariant_integer(&acc, e, &gens), Some(-3));
    }

    #[test]
    fn generators_generate() {
        for e in [8u64, 12, 30, 72, 8190] {
            let gens: Vec<u64> = unit_generators(e).into_iter().flat_map(|x| x.1).collect();
            let mut seen = vec![false; e as usize];
            seen[1 % e as usize] = true;
            let mut stack = vec![1 % e];
            while let Some(x) = stack.pop() {
                for &g in &gens {
                    let y = x * g % e;
                    if !seen[y as usize] {
                        seen[y as usize] = true;
                        stack.push(y);
                    }
                }
            }
            let count = seen.iter().filter(|&&b| b).count() as u64;
            assert_eq!(count, crate::numtheory::euler_phi(e), "e = {e}");
        }
    }
}
