//! Burnside–Dixon: class multiplication constants, simultaneous eigenvectors
//! modulo a prime P ≡ 1 (mod e), and the lift of modular values to cyclotomic integers.

use rayon::prelude::*;

use super::cyc::CycValue;
use super::modp;
use crate::error::{Error, Result};
use crate::numtheory::arith::isqrt;
use crate::numtheory::{is_prime, primitive_root};
use crate::permgroup::ClassTable;

/// `a[i][j][l] = #{(x, y) : x ∈ C_i, y ∈ C_j, xy = z}` for a fixed `z ∈ C_l`.
pub fn class_algebra_constants(t: &ClassTable) -> Vec<Vec<Vec<u64>>> {
    let k = t.len();
    let chain = t.chain();
    let n = t.group_order();
    let base = chain.base();
    let columns: Vec<Vec<Vec<u64>>> = (0..k)
        .into_par_iter()
        .map(|l| {
            let z = &t.class(l).rep;
            let mut col = vec![vec![0u64; k]; k];
            let mut dx = vec![0u32; base.len()];
            let mut gamma = vec![0u32; base.len()];
            for r in 0..n {
                chain.digits(r, &mut dx);
                // y = x⁻¹ z
                for (g, &b) in gamma.iter_mut().zip(&base) {
                    *g = z.apply(chain.preimage(&dx, b));
                }
                let y = chain.rank_from_base_images(&mut gamma);
                col[t.class_of_rank(r)][t.class_of_rank(y)] += 1;
            }
            col
        })
        .collect();
    (0..k)
        .map(|i| {
            (0..k)
                .map(|j| (0..k).map(|l| columns[l][i][j]).collect())
                .collect()
        })
        .collect()
}

/// Least prime P ≡ 1 (mod e) with P > 2√|G|.
pub fn modular_prime(e: u64, order: u64) -> u64 {
    let mut p = e + 1;
    loop {
        if (p as u128) * (p as u128) > 4 * order as u128 && is_prime(p) {
            return p;
        }
        p += e;
    }
}

pub struct DixonOutput {
    pub modulus: u64,
    pub degrees: Vec<u64>,
    pub values: Vec<Vec<CycValue>>,
}

/// Simultaneous eigenvectors of the class matrices over GF(P), normalized at the identity class.
fn split_eigenspaces(a: &[Vec<Vec<u64>>], p: u64) -> Result<Vec<Vec<u64>>> {
    let k = a.len();
    let mut spaces: Vec<Vec<Vec<u64>>> = vec![(0..k)
        .map(|i| (0..k).map(|j| u64::from(i == j)).collect())
        .collect()];
    for j in 1..k {
        if spaces.iter().all(|s| s.len() == 1) {
            break;
        }
        let mut next = Vec::with_capacity(spaces.len());
        for basis in spaces {
            let d = basis.len();
            if d == 1 {
                next.push(basis);
                continue;
            }
            let pivots: Vec<usize> = basis
                .iter()
                .map(|b| b.iter().position(|&x| x != 0).unwrap())
                .collect();
            // rt[s][r] = (A_j b_r)[pivot_s], so eigenvectors of rt give coordinates in the basis.
            let mut rt = vec![vec![0u64; d]; d];
            for (r, b) in basis.iter().enumerate() {
                for (s, &ps) in pivots.iter().enumerate() {
                    let row = &a[ps][j];
                    let mut acc = 0u64;
                    for (l, &bl) in b.iter().enumerate() {
                        if bl != 0 {
                            acc = (acc + (row[l] % p) * bl) % p;
                        }
                    }
                    rt[s][r] = acc;
                }
            }
            let roots = modp::distinct_roots(&modp::charpoly(&rt, p), p);
            if roots.len() <= 1 {
                next.push(basis);
                continue;
            }
            let mut total = 0;
            for lam in roots {
                let mut m = rt.clone();
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = modp::sub(row[i], lam, p);
                }
                let mut sub: Vec<Vec<u64>> = modp::kernel(&m, p)
                    .into_iter()
                    .map(|c| {
                        let mut v = vec![0u64; k];
                        for (cr, b) in c.iter().zip(&basis) {
                            if *cr != 0 {
                                for (x, &y) in v.iter_mut().zip(b) {
                                    *x = modp::add(*x, modp::mul(*cr, y, p), p);
                                }
                            }
                        }
                        v
                    })
                    .collect();
                modp::rref(&mut sub, p);
                total += sub.len();
                next.push(sub);
            }
            if total != d {
                return Err(Error::consistency(
                    "class matrix is not diagonalizable modulo P",
                ));
            }
        }
        spaces = next;
    }
    if spaces.len() != k {
        return Err(Error::consistency(format!(
            "splitting stopped at {} of {k} characters",
            spaces.len()
        )));
    }
    spaces
        .into_iter()
        .map(|s| {
            let v = &s[0];
            if v[0] == 0 {
                return Err(Error::consistency(
                    "eigenvector vanishes at the identity class",
                ));
            }
            let iv = modp::inv(v[0], p);
            Ok(v.iter().map(|&x| modp::mul(x, iv, p)).collect())
        })
        .collect()
}

pub fn run(t: &ClassTable, a: &[Vec<Vec<u64>>]) -> Result<DixonOutput> {
    let k = t.len();
    let n = t.group_order();
    let e = t.exponent();
    let p = modular_prime(e, n);
    let omegas = split_eigenspaces(a, p)?;

    let sizes: Vec<u64> = t.classes().iter().map(|c| c.size % p).collect();
    let inv_class: Vec<usize> = (0..k).map(|i| t.inverse_class(i)).collect();
    let z = modp::pow(primitive_root(p), (p - 1) / e, p);
    // power_maps[i][l] = class of g_i^l for l < order(g_i)
    let power_maps: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            (0..t.class(i).order)
                .map(|l| t.power_class(i, l as i64))
                .collect()
        })
        .collect();

    let mut degrees = Vec::with_capacity(k);
    let mut values = Vec::with_capacity(k);
    for w in &omegas {
        // |G| / χ(1)² = Σ ω_i ω_{i*} / |C_i|
        let s = (0..k).fold(0u64, |acc, i| {
            let term = modp::mul(
                modp::mul(w[i], w[inv_class[i]], p),
                modp::inv(sizes[i], p),
                p,
            );
            modp::add(acc, term, p)
        });
        if s == 0 {
            return Err(Error::consistency("degree sum vanishes modulo P"));
        }
        let d2 = modp::mul(n % p, modp::inv(s, p), p);
        let d = (1..=isqrt(n))
            .find(|&d| (d * d) % p == d2)
            .ok_or_else(|| Error::consistency("no integral degree matches modulo P"))?;
        let chi: Vec<u64> = (0..k)
            .map(|i| modp::mul(modp::mul(w[i], d % p, p), modp::inv(sizes[i], p), p))
            .collect();
        let mut row = Vec::with_capacity(k);
        for i in 0..k {
            let o = t.class(i).order;
            let zo = modp::pow(z, e / o, p);
            let o_inv = modp::inv(o % p, p);
            let mut terms = Vec::new();
            let mut total = 0u64;
            for j in 0..o {
                let zj = modp::pow(zo, (o - j) % o, p);
                let mut acc = 0u64;
                let mut zjl = 1u64;
                for l in 0..o as usize {
                    acc = modp::add(acc, modp::mul(chi[power_maps[i][l]], zjl, p), p);
                    zjl = modp::mul(zjl, zj, p);
                }
                let mu = modp::mul(acc, o_inv, p);
                if mu > d {
                    return Err(Error::consistency("eigenvalue multiplicity out of range"));
                }
                if mu != 0 {
                    terms.push((j * (e / o), mu as i64));
                    total += mu;
                }
            }
            if total != d {
                return Err(Error::consistency(
                    "eigenvalue multiplicities do not sum to the degree",
                ));
            }
            row.push(CycValue::from_terms(e, terms));
        }
        degrees.push(d);
        values.push(row);
    }
    Ok(DixonOutput {
        modulus: p,
        degrees,
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{CatalogEntry, Family};
    use crate::permgroup::DEFAULT_CAP;

    #[test]
    fn s3_constants() {
        let g = CatalogEntry::new(Family::Sym, &[3]).build().unwrap().group;
        let t = ClassTable::compute(&g, DEFAULT_CAP).unwrap();
        let a = class_algebra_constants(&t);
        // classes: identity, transpositions (size 3), 3-cycles (size 2)
        assert_eq!(t.class(1).size, 3);
        assert_eq!(a[1][1][0], 3);
        assert_eq!(a[1][1][2], 3);
        for j in 0..3 {
            for l in 0..3 {
                assert_eq!(a[0][j][l], u64::from(j == l));
            }
        }
    }

    #[test]
    fn modular_prime_choice() {
        assert_eq!(modular_prime(30, 60), 31);
        assert_eq!(modular_prime(6, 6), 7);
    }
}
