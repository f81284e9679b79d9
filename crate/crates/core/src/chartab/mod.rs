//! Exact ordinary character tables and Galois rationality classes of characters.

mod cache;
pub mod cyc;
mod dixon;
pub mod modp;

use std::cmp::Ordering;

use serde::Serialize;

pub use cache::{load_character_table, save_character_table};
pub use cyc::CycValue;
pub use dixon::{class_algebra_constants, modular_prime};

use crate::error::{Error, Result};
use crate::numtheory::{cmp_threshold, gcd, is_prime, RootExponent, Verdict};
use crate::permgroup::{class_counts, galois_fixed_class_count, ClassTable};

/// Largest class count accepted by [`CharacterTable::compute`].
pub const MAX_CLASSES: usize = 80;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacterTable {
    pub exponent: u64,
    /// Modular prime used by the eigenvector computation.
    pub modulus: u64,
    pub class_sizes: Vec<u64>,
    pub degrees: Vec<u64>,
    /// `values[χ][class]`.
    pub values: Vec<Vec<CycValue>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RationalityFlags {
    pub is_rational: bool,
    pub is_p_rational: bool,
    pub is_p_prime_rational: bool,
    pub is_qp_valued: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterCounts {
    pub p: u64,
    pub p_rational: usize,
    pub p_prime_rational: usize,
    /// |Irr_p-rat ∪ Irr_p'-rat|.
    pub union: usize,
    pub rational: usize,
    /// |Irr_p-rat ∪ Irr_{ℚ_p}|.
    pub p_rational_or_qp: usize,
    /// Comparison of `union` against 2√(p−1).
    pub union_vs_threshold: Verdict,
}

impl CharacterTable {
    /// Runs the Dixon method and verifies orthogonality exactly before returning.
    pub fn compute(t: &ClassTable) -> Result<Self> {
        if t.len() > MAX_CLASSES {
            return Err(Error::Unsupported(format!(
                "{} classes exceed the limit of {MAX_CLASSES}",
                t.len()
            )));
        }
        let a = class_algebra_constants(t);
        check_constants(t, &a)?;
        let out = dixon::run(t, &a)?;
        let mut rows: Vec<(u64, Vec<CycValue>)> = out.degrees.into_iter().zip(out.values).collect();
        rows.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| cmp_rows(&x.1, &y.1)));
        let table = CharacterTable {
            exponent: t.exponent(),
            modulus: out.modulus,
            class_sizes: t.classes().iter().map(|c| c.size).collect(),
            degrees: rows.iter().map(|r| r.0).collect(),
            values: rows.into_iter().map(|r| r.1).collect(),
        };
        table.verify()?;
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn group_order(&self) -> u64 {
        self.class_sizes.iter().sum()
    }

    fn all_unit_generators(&self) -> Vec<u64> {
        cyc::unit_generators(self.exponent)
            .into_iter()
            .flat_map(|x| x.1)
            .collect()
    }

    /// Degree identities plus exact row and column orthogonality.
    pub fn verify(&self) -> Result<()> {
        let k = self.class_sizes.len();
        let n = self.group_order();
        let e = self.exponent;
        if self.len() != k || self.values.iter().any(|r| r.len() != k) {
            return Err(Error::consistency("character table is not square"));
        }
        let sq: u128 = self.degrees.iter().map(|&d| d as u128 * d as u128).sum();
        if sq != n as u128 || self.degrees.iter().any(|&d| d == 0 || n % d != 0) {
            return Err(Error::consistency(
                "degrees do not satisfy Σχ(1)² = |G| with χ(1) | |G|",
            ));
        }
        let gens = self.all_unit_generators();
        let mut acc = vec![0i128; e as usize];
        for x in 0..k {
            for y in x..k {
                acc.iter_mut().for_each(|v| *v = 0);
                for c in 0..k {
                    let s = self.class_sizes[c] as i128;
                    CycValue::accumulate_product_conj(
                        &mut acc,
                        &self.values[x][c],
                        &self.values[y][c],
                        s,
                        e,
                    );
                }
                let want = if x == y { n as i128 } else { 0 };
                if cyc::invariant_integer(&acc, e, &gens) != Some(want) {
                    return Err(Error::consistency(format!(
                        "row orthogonality fails for characters {x}, {y}"
                    )));
                }
            }
        }
        for c in 0..k {
            for d in c..k {
                acc.iter_mut().for_each(|v| *v = 0);
                for row in &self.values {
                    CycValue::accumulate_product_conj(&mut acc, &row[c], &row[d], 1, e);
                }
                let want = if c == d {
                    (n / self.class_sizes[c]) as i128
                } else {
                    0
                };
                if cyc::invariant_integer(&acc, e, &gens) != Some(want) {
                    return Err(Error::consistency(format!(
                        "column orthogonality fails for classes {c}, {d}"
                    )));
                }
            }
        }
        Ok(())
    }

    fn fixed_by_all(&self, chi: usize, gens: &[u64]) -> bool {
        gens.iter().all(|&k| {
            self.values[chi]
                .iter()
                .all(|v| v.fixed_by(k, self.exponent))
        })
    }

    pub fn is_fixed_by(&self, chi: usize, k: u64) -> bool {
        self.fixed_by_all(chi, &[k])
    }

    pub fn classify_rationality(&self, p: u64) -> Result<Vec<RationalityFlags>> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        let groups = cyc::unit_generators(self.exponent);
        let of = |pred: &dyn Fn(u64) -> bool| -> Vec<u64> {
            groups
                .iter()
                .filter(|g| pred(g.0))
                .flat_map(|g| g.1.iter().copied())
                .collect()
        };
        let all = of(&|_| true);
        let p_part = of(&|q| q == p);
        let other = of(&|q| q != p);
        let mut qp = other.clone();
        qp.extend(cyc::one_mod_p_generators(self.exponent, p));
        Ok((0..self.len())
            .map(|chi| RationalityFlags {
                is_rational: self.fixed_by_all(chi, &all),
                // σ_k with k ≡ 1 mod e_{p'} act only on the p-part
                is_p_rational: self.fixed_by_all(chi, &p_part),
                is_p_prime_rational: self.fixed_by_all(chi, &other),
                is_qp_valued: self.fixed_by_all(chi, &qp),
            })
            .collect())
    }

    pub fn character_counts(&self, p: u64) -> Result<CharacterCounts> {
        let flags = self.classify_rationality(p)?;
        let count = |f: &dyn Fn(&RationalityFlags) -> bool| flags.iter().filter(|x| f(x)).count();
        let union = count(&|x| x.is_p_rational || x.is_p_prime_rational);
        Ok(CharacterCounts {
            p,
            p_rational: count(&|x| x.is_p_rational),
            p_prime_rational: count(&|x| x.is_p_prime_rational),
            union,
            rational: count(&|x| x.is_rational),
            p_rational_or_qp: count(&|x| x.is_p_rational || x.is_qp_valued),
            union_vs_threshold: cmp_threshold(union as u64, p, RootExponent::Half).into(),
        })
    }
}

fn cmp_rows(a: &[CycValue], b: &[CycValue]) -> Ordering {
    a.iter()
        .zip(b)
        .map(|(x, y)| x.dense_cmp(y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

fn check_constants(t: &ClassTable, a: &[Vec<Vec<u64>>]) -> Result<()> {
    let k = t.len();
    for i in 0..k {
        for j in 0..k {
            let lhs: u128 = (0..k)
                .map(|l| a[i][j][l] as u128 * t.class(l).size as u128)
                .sum();
            if lhs != t.class(i).size as u128 * t.class(j).size as u128 {
                return Err(Error::consistency(format!(
                    "class constants fail the counting identity at ({i},{j})"
                )));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrauerCheck {
    /// Number of Galois elements σ_k compared.
    pub galois_elements: usize,
    /// For odd p dividing |G|: (|Irr_p-rat| from the table, classes fixed by the Galois element, k_{p'}).
    pub odd_primes: Vec<(u64, usize, usize, usize)>,
}

/// For every unit k modulo the exponent, characters fixed by σ_k must equal
/// classes fixed by the k-th power map; for odd p, the table count of
/// p-rational characters must equal the class-side count and be at least k_{p'}.
pub fn brauer_cross_check(t: &ClassTable, table: &CharacterTable) -> Result<BrauerCheck> {
    let e = t.exponent();
    let mut checked = 0;
    for k in 1..=e.max(1) {
        if gcd(k, e) != 1 {
            continue;
        }
        let map = t.power_class_map(k as i64)?;
        let classes = map.iter().enumerate().filter(|(i, &j)| *i == j).count();
        let chars = (0..table.len())
            .filter(|&c| table.is_fixed_by(c, k % e.max(1)))
            .count();
        if classes != chars {
            return Err(Error::consistency(format!(
                "σ_{k} fixes {chars} characters but {classes} classes"
            )));
        }
        checked += 1;
    }
    let mut odd = Vec::new();
    for (p, _) in crate::numtheory::factorize(t.group_order()).0 {
        if p == 2 {
            continue;
        }
        let from_table = table.character_counts(p)?.p_rational;
        let from_classes = galois_fixed_class_count(t, p)?;
        let kpp = class_counts(t, p)?.k_p_prime;
        if from_table != from_classes || from_table < kpp {
            return Err(Error::consistency(format!(
                "p = {p}: {from_table} p-rational characters, {from_classes} fixed classes, k_p' = {kpp}"
            )));
        }
        odd.push((p, from_table, from_classes, kpp));
    }
    Ok(BrauerCheck {
        galois_elements: checked,
        odd_primes: odd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{CatalogEntry, Family};
    use crate::permgroup::DEFAULT_CAP;

    fn table(f: Family, params: &[u64]) -> (ClassTable, CharacterTable) {
        let g = CatalogEntry::new(f, params).build().unwrap().group;
        let t = ClassTable::compute(&g, DEFAULT_CAP).unwrap();
        let c = CharacterTable::compute(&t).unwrap();
        (t, c)
    }

    #[test]
    fn a5_degrees() {
        let (t, c) = table(Family::Alt, &[5]);
        let mut d = c.degrees.clone();
        d.sort();
        assert_eq!(d, vec![1, 3, 3, 4, 5]);
        let b = brauer_cross_check(&t, &c).unwrap();
        assert_eq!(b.galois_elements, 8);
    }

    #[test]
    fn d10_flags() {
        let (t, c) = table(Family::Frobenius, &[5, 2]);
        assert_eq!(c.degrees, vec![1, 1, 2, 2]);
        let flags = c.classify_rationality(5).unwrap();
        for (d, f) in c.degrees.iter().zip(&flags) {
            if *d == 2 {
                assert!(
                    f.is_p_prime_rational && f.is_qp_valued && !f.is_p_rational && !f.is_rational
                );
            } else {
                assert!(f.is_rational);
            }
        }
        let counts = c.character_counts(5).unwrap();
        assert_eq!(counts.union, 4);
        assert_eq!(counts.union_vs_threshold, Verdict::Equal);
        let b = brauer_cross_check(&t, &c).unwrap();
        assert_eq!(b.odd_primes, vec![(5, 2, 2, 2)]);
    }

    #[test]
    fn c3_and_c5() {
        let (_, c) = table(Family::Cyclic, &[3]);
        assert_eq!(c.degrees, vec![1, 1, 1]);
        let (_, c) = table(Family::Cyclic, &[5]);
        assert_eq!(c.character_counts(5).unwrap().union, 5);
        let (_, c) = table(Family::Sym, &[3]);
        for p in [2, 3] {
            assert!(c
                .classify_rationality(p)
                .unwrap()
                .iter()
                .all(|f| f.is_rational));
        }
    }
}
