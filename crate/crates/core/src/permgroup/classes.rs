use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{PermGroup, StabChain};
use crate::error::{Error, Result};
use crate::numtheory::{gcd, is_prime, lcm, mod_inverse, multiplicative_order, split_p_part};
use crate::perm::Perm;

/// Default bound on |G| for class enumeration.
pub const DEFAULT_CAP: u64 = 3_000_000;
/// Bound used in extended mode.
pub const EXTENDED_CAP: u64 = 20_000_000;

const UNSEEN: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub rep: Perm,
    pub size: u64,
    pub order: u64,
}

/// Conjugacy classes in canonical order, with a dense element-to-class index.
#[derive(Clone, Debug)]
pub struct ClassTable {
    chain: Arc<StabChain>,
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
    exponent: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub p: u64,
    pub k: usize,
    pub k_p: usize,
    pub k_p_prime: usize,
}

struct Closure<'a> {
    chain: &'a StabChain,
    /// Generator images and the preimages of each base point.
    gens: Vec<(Vec<u32>, Vec<u32>)>,
    dx: Vec<u32>,
    dbest: Vec<u32>,
    gamma: Vec<u32>,
    queue: Vec<u64>,
}

impl<'a> Closure<'a> {
    fn new(group: &'a PermGroup) -> Self {
        let chain = group.chain().as_ref();
        let base = chain.base();
        let k = base.len();
        let gens = group
            .generators()
            .iter()
            .filter(|s| !s.is_identity())
            .map(|s| {
                let inv = s.inverse();
                (
                    s.images().to_vec(),
                    base.iter().map(|&b| inv.apply(b)).collect(),
                )
            })
            .collect();
        Closure {
            chain,
            gens,
            dx: vec![0; k],
            dbest: vec![0; k],
            gamma: vec![0; k],
            queue: Vec::new(),
        }
    }

    fn lex_less(&self, a: &[u32], b: &[u32]) -> bool {
        for x in 0..self.chain.degree() as u32 {
            let (ia, ib) = (self.chain.image(a, x), self.chain.image(b, x));
            if ia != ib {
                return ia < ib;
            }
        }
        false
    }

    /// Marks the class of `seed` with `cid`; returns (least-tuple member rank, size).
    fn run(&mut self, seed: u64, cid: u32, class_of: &mut [u32]) -> (u64, u64) {
        let k = self.dx.len();
        self.queue.clear();
        self.queue.push(seed);
        class_of[seed as usize] = cid;
        let mut best = seed;
        self.chain.digits(seed, &mut self.dbest);
        let mut head = 0;
        while head < self.queue.len() {
            let x = self.queue[head];
            head += 1;
            self.chain.digits(x, &mut self.dx);
            if x != best && self.lex_less(&self.dx, &self.dbest) {
                best = x;
                self.dbest.copy_from_slice(&self.dx);
            }
            for (s, sinv_b) in &self.gens {
                for j in 0..k {
                    self.gamma[j] = s[self.chain.image(&self.dx, sinv_b[j]) as usize];
                }
                let y = self.chain.rank_from_base_images(&mut self.gamma);
                if class_of[y as usize] == UNSEEN {
                    class_of[y as usize] = cid;
                    self.queue.push(y);
                }
            }
        }
        (best, self.queue.len() as u64)
    }
}

impl ClassTable {
    /// Enumerates all classes by conjugation closure over the element ranks in order.
    pub fn compute(group: &PermGroup, cap: u64) -> Result<Self> {
        let n = checked_size(group, cap)?;
        let mut class_of = vec![UNSEEN; n];
        let mut raw = Vec::new();
        let mut cl = Closure::new(group);
        for r in 0..n {
            if class_of[r] == UNSEEN {
                let cid = raw.len() as u32;
                raw.push(cl.run(r as u64, cid, &mut class_of));
            }
        }
        Ok(Self::finish(group, raw, class_of))
    }

    /// Rebuilds a table from known class representatives, checking that they
    /// are pairwise non-conjugate and exhaust the group.
    pub fn from_representatives(group: &PermGroup, reps: &[Perm], cap: u64) -> Result<Self> {
        let n = checked_size(group, cap)?;
        let chain = group.chain();
        let mut class_of = vec![UNSEEN; n];
        let mut raw = Vec::new();
        let mut cl = Closure::new(group);
        let mut total = 0u64;
        for rep in reps {
            let r = chain
                .rank_of(rep)
                .ok_or_else(|| Error::consistency(format!("representative {rep} not in group")))?;
            if class_of[r as usize] != UNSEEN {
                return Err(Error::consistency(format!(
                    "representative {rep} repeats a class"
                )));
            }
            let cid = raw.len() as u32;
            let res = cl.run(r, cid, &mut class_of);
            total += res.1;
            raw.push(res);
        }
        if total != n as u64 {
            return Err(Error::consistency(format!(
                "classes cover {total} of {n} elements"
            )));
        }
        Ok(Self::finish(group, raw, class_of))
    }

    fn finish(group: &PermGroup, raw: Vec<(u64, u64)>, mut class_of: Vec<u32>) -> Self {
        let chain = group.chain().clone();
        let mut classes: Vec<(usize, ConjClass)> = raw
            .into_iter()
            .enumerate()
            .map(|(i, (best, size))| {
                let rep = chain.element(best);
                let order = rep.order();
                (i, ConjClass { rep, size, order })
            })
            .collect();
        classes
            .sort_by(|a, b| (a.1.order, a.1.size, &a.1.rep).cmp(&(b.1.order, b.1.size, &b.1.rep)));
        let mut relabel = vec![0u32; classes.len()];
        for (new, (old, _)) in classes.iter().enumerate() {
            relabel[*old] = new as u32;
        }
        for c in class_of.iter_mut() {
            *c = relabel[*c as usize];
        }
        let classes: Vec<ConjClass> = classes.into_iter().map(|(_, c)| c).collect();
        let exponent = classes.iter().fold(1, |e, c| lcm(e, c.order));
        ClassTable {
            chain,
            classes,
            class_of,
            exponent,
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class(&self, i: usize) -> &ConjClass {
        &self.classes[i]
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn group_order(&self) -> u64 {
        self.class_of.len() as u64
    }

    pub fn degree(&self) -> usize {
        self.chain.degree()
    }

    pub fn chain(&self) -> &Arc<StabChain> {
        &self.chain
    }

    pub fn centralizer_order(&self, i: usize) -> u64 {
        self.group_order() / self.classes[i].size
    }

    pub fn class_of_rank(&self, r: u64) -> usize {
        self.class_of[r as usize] as usize
    }

    /// Class of `g`, or `None` if `g` is not a member.
    pub fn class_index(&self, g: &Perm) -> Option<usize> {
        self.chain.rank_of(g).map(|r| self.class_of_rank(r))
    }

    /// Class of a permutation already known to be a member.
    pub fn class_index_member(&self, g: &Perm) -> usize {
        self.class_of_rank(self.chain.rank_of_member(g))
    }

    /// Class of `x^k` for `x` in class `i`; `k` may be any integer.
    pub fn power_class(&self, i: usize, k: i64) -> usize {
        self.class_index_member(&self.classes[i].rep.pow(k))
    }

    pub fn inverse_class(&self, i: usize) -> usize {
        self.power_class(i, -1)
    }

    /// The permutation of classes induced by `x ↦ x^k`.
    pub fn power_class_map(&self, k: i64) -> Result<Vec<usize>> {
        let e = self.exponent;
        let km = k.rem_euclid(e as i64) as u64;
        if gcd(km, e) != 1 {
            return Err(Error::invalid(format!(
                "power {k} not coprime to exponent {e}"
            )));
        }
        Ok((0..self.len())
            .map(|i| self.power_class(i, km as i64))
            .collect())
    }
}

fn checked_size(group: &PermGroup, cap: u64) -> Result<usize> {
    let order = group.order();
    if order > cap as u128 || order > u32::MAX as u128 {
        return Err(Error::CapExceeded { cap, order });
    }
    Ok(order as usize)
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

pub fn class_counts(t: &ClassTable, p: u64) -> Result<ClassCounts> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let k_p = t
        .classes
        .iter()
        .filter(|c| c.order > 1 && is_p_power(c.order, p))
        .count();
    let k_p_prime = t.classes.iter().filter(|c| c.order % p != 0).count();
    Ok(ClassCounts {
        p,
        k: t.len(),
        k_p,
        k_p_prime,
    })
}

/// Splits `g` into commuting p-part and p'-part with product `g`.
pub fn p_part_split(g: &Perm, p: u64) -> (Perm, Perm) {
    let m = g.order();
    let (mp, mq) = split_p_part(m, p);
    if mp == 1 {
        return (Perm::identity(g.degree()), g.clone());
    }
    if mq == 1 {
        return (g.clone(), Perm::identity(g.degree()));
    }
    let a = mod_inverse(mq % mp, mp).expect("coprime parts");
    let b = mod_inverse(mp % mq, mq).expect("coprime parts");
    let gp = g.pow(((a as u128 * mq as u128) % m as u128) as i64);
    let gq = g.pow(((b as u128 * mp as u128) % m as u128) as i64);
    (gp, gq)
}

/// Number of classes fixed by the Galois element that is trivial on the
/// p'-part of the exponent and generates the units modulo its p-part.
pub fn galois_fixed_class_count(t: &ClassTable, p: u64) -> Result<usize> {
    if p == 2 || !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not an odd prime")));
    }
    if t.group_order() % p != 0 {
        return Err(Error::invalid(format!(
            "{p} does not divide the group order"
        )));
    }
    let e = t.exponent;
    let (ep, eq) = split_p_part(e, p);
    let phi = ep / p * (p - 1);
    let g = (2..ep)
        .find(|&g| gcd(g, ep) == 1 && multiplicative_order(g, ep) == Some(phi))
        .expect("units modulo an odd prime power are cyclic");
    // k ≡ g (mod ep), k ≡ 1 (mod eq)
    let inv = if eq == 1 {
        0
    } else {
        mod_inverse(ep % eq, eq).expect("coprime")
    };
    let t_ = ((1 + eq - g % eq) % eq) as u128 * inv as u128 % eq.max(1) as u128;
    let k = (g as u128 + ep as u128 * t_) % e as u128;
    let map = t.power_class_map(k as i64)?;
    Ok(map.iter().enumerate().filter(|(i, &j)| *i == j).count())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a5() -> PermGroup {
        PermGroup::new(
            5,
            vec![
                Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap(),
                Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
            ],
        )
        .unwrap()
    }

    fn d10() -> PermGroup {
        PermGroup::new(
            5,
            vec![
                Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap(),
                Perm::from_fn(5, |x| (5 - x) % 5).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn a5_classes() {
        let t = ClassTable::compute(&a5(), DEFAULT_CAP).unwrap();
        let sizes: Vec<u64> = t.classes().iter().map(|c| c.size).collect();
        let orders: Vec<u64> = t.classes().iter().map(|c| c.order).collect();
        assert_eq!(orders, vec![1, 2, 3, 5, 5]);
        assert_eq!(sizes, vec![1, 15, 20, 12, 12]);
        assert!(t.class(0).rep.is_identity());
        assert_eq!(t.exponent(), 30);
        assert_eq!(t.power_class_map(7).unwrap(), vec![0, 1, 2, 4, 3]);
        assert_eq!(t.power_class_map(31).unwrap(), vec![0, 1, 2, 3, 4]);
        assert!(t.power_class_map(2).is_err());
        assert_eq!(t.power_class(3, 2), 4);
        let c = class_counts(&t, 5).unwrap();
        assert_eq!((c.k_p, c.k_p_prime), (2, 3));
        assert_eq!(galois_fixed_class_count(&t, 5).unwrap(), 3);
    }

    #[test]
    fn d10_and_cyclic() {
        let t = ClassTable::compute(&d10(), DEFAULT_CAP).unwrap();
        let sizes: Vec<u64> = t.classes().iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 5, 2, 2]);
        assert_eq!(galois_fixed_class_count(&t, 5).unwrap(), 2);
        let c6 = PermGroup::new(
            6,
            vec![Perm::from_cycles(6, &[&[0, 1, 2, 3, 4, 5]]).unwrap()],
        )
        .unwrap();
        let t = ClassTable::compute(&c6, DEFAULT_CAP).unwrap();
        assert_eq!(t.len(), 6);
        assert!(t.classes().iter().all(|c| c.size == 1));
        assert!(galois_fixed_class_count(&t, 2).is_err());
    }

    #[test]
    fn rebuild_from_reps() {
        let g = a5();
        let t = ClassTable::compute(&g, DEFAULT_CAP).unwrap();
        let reps: Vec<Perm> = t.classes().iter().rev().map(|c| c.rep.clone()).collect();
        let u = ClassTable::from_representatives(&g, &reps, DEFAULT_CAP).unwrap();
        assert_eq!(t.classes(), u.classes());
        assert!(ClassTable::from_representatives(&g, &reps[1..], DEFAULT_CAP).is_err());
        assert!(matches!(
            ClassTable::compute(&g, 59),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn split_order_six() {
        let g = Perm::from_cycles(5, &[&[0, 1, 2], &[3, 4]]).unwrap();
        let (a, b) = p_part_split(&g, 2);
        assert_eq!(a, g.pow(3));
        assert_eq!(b, g.pow(4));
        assert_eq!(a.mul(&b), g);
        let (a, b) = p_part_split(&Perm::from_cycles(5, &[&[0, 1]]).unwrap(), 2);
        assert!(b.is_identity() && !a.is_identity());
    }
}
