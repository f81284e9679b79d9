//! Stabilizer chain built by deterministic Schreier–Sims.
//!
//! Every element g factors uniquely as `g = u_{k-1} ⋯ u_1 u_0` with `u_i` a transversal
//! element of level i, so g is identified by its digit vector `(d_0, …, d_{k-1})` and by
//! the mixed-radix rank `((d_0·r_1 + d_1)·r_2 + …)`. Ranks are dense in `0..|G|`, which lets
//! class tables use a flat array instead of hashing image tuples. The identity has rank 0.

use crate::error::{Error, Result};
use crate::perm::Perm;

const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Level {
    point: u32,
    orbit: Vec<u32>,
    pos: Vec<u32>,
    /// `trans[j*n + x] = x^(t_j)` where `t_j` maps `point` to `orbit[j]`.
    trans: Vec<u32>,
    trans_inv: Vec<u32>,
}

#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
    order: u128,
}

struct BuildLevel {
    point: u32,
    gens: Vec<Perm>,
    orbit: Vec<u32>,
    pos: Vec<u32>,
    trans: Vec<Perm>,
    trans_inv: Vec<Perm>,
}

impl BuildLevel {
    fn new(point: u32, n: usize) -> Self {
        let mut l = BuildLevel {
            point,
            gens: Vec::new(),
            orbit: Vec::new(),
            pos: vec![NONE; n],
            trans: Vec::new(),
            trans_inv: Vec::new(),
        };
        l.recompute(n);
        l
    }

    fn recompute(&mut self, n: usize) {
        self.orbit.clear();
        self.trans.clear();
        self.trans_inv.clear();
        self.pos.iter_mut().for_each(|p| *p = NONE);
        self.orbit.push(self.point);
        self.pos[self.point as usize] = 0;
        self.trans.push(Perm::identity(n));
        self.trans_inv.push(Perm::identity(n));
        let mut head = 0;
        while head < self.orbit.len() {
            let beta = self.orbit[head];
            for s in &self.gens {
                let gamma = s.apply(beta);
                if self.pos[gamma as usize] == NONE {
                    let t = self.trans[head].mul(s);
                    self.pos[gamma as usize] = self.orbit.len() as u32;
                    self.orbit.push(gamma);
                    self.trans_inv.push(t.inverse());
                    self.trans.push(t);
                }
            }
            head += 1;
        }
    }
}

fn sift(levels: &[BuildLevel], from: usize, mut h: Perm) -> (Perm, usize) {
    for (i, l) in levels.iter().enumerate().skip(from) {
        let beta = h.apply(l.point);
        let j = l.pos[beta as usize];
        if j == NONE {
            return (h, i);
        }
        h = h.mul(&l.trans_inv[j as usize]);
    }
    (h, levels.len())
}

impl StabChain {
    pub fn new(degree: usize, generators: &[Perm]) -> Result<Self> {
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::invalid("generator degree mismatch"));
        }
        let gens: Vec<Perm> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        let mut levels: Vec<BuildLevel> = Vec::new();
        for g in &gens {
            if levels.iter().all(|l| g.apply(l.point) == l.point) {
                let pt = g.smallest_moved_point().expect("non-identity");
                levels.push(BuildLevel::new(pt, degree));
            }
        }
        for g in &gens {
            for i in 0..levels.len() {
                if levels[..i].iter().all(|l| g.apply(l.point) == l.point) {
                    levels[i].gens.push(g.clone());
                }
            }
        }
        for l in levels.iter_mut() {
            l.recompute(degree);
        }

        let mut i = levels.len() as isize - 1;
        while i >= 0 {
            let iu = i as usize;
            let mut restart = None;
            'scan: for j in 0..levels[iu].orbit.len() {
                let beta = levels[iu].orbit[j];
                for s_idx in 0..levels[iu].gens.len() {
                    let lvl = &levels[iu];
                    let s = &lvl.gens[s_idx];
                    let gamma = s.apply(beta);
                    let g_pos = lvl.pos[gamma as usize] as usize;
                    let h = lvl.trans[j].mul(s).mul(&lvl.trans_inv[g_pos]);
                    if h.is_identity() {
                        continue;
                    }
                    let (res, l) = sift(&levels, iu + 1, h);
                    if !res.is_identity() {
                        if l == levels.len() {
                            let pt = res.smallest_moved_point().expect("non-identity");
                            levels.push(BuildLevel::new(pt, degree));
                        }
                        for m in iu + 1..=l {
                            levels[m].gens.push(res.clone());
                            levels[m].recompute(degree);
                        }
                        restart = Some(l);
                        break 'scan;
                    }
                }
            }
            match restart {
                Some(l) => i = l as isize,
                None => i -= 1,
            }
        }

        let mut order: u128 = 1;
        for l in &levels {
            order = order
                .checked_mul(l.orbit.len() as u128)
                .ok_or_else(|| Error::invalid("group order overflows 128 bits"))?;
        }
        let levels = levels
            .into_iter()
            .map(|l| Level {
                point: l.point,
                pos: l.pos,
                trans: l
                    .trans
                    .iter()
                    .flat_map(|t| t.images().iter().copied())
                    .collect(),
                trans_inv: l
                    .trans_inv
                    .iter()
                    .flat_map(|t| t.images().iter().copied())
                    .collect(),
                orbit: l.orbit,
            })
            .collect();
        Ok(StabChain {
            degree,
            levels,
            order,
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn base_len(&self) -> usize {
        self.levels.len()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Full membership test by sifting.
    pub fn contains(&self, g: &Perm) -> bool {
        self.rank_of(g).is_some()
    }

    /// Rank of `g` if it is a member, `None` otherwise.
    pub fn rank_of(&self, g: &Perm) -> Option<u64> {
        if g.degree() != self.degree {
            return None;
        }
        let n = self.degree;
        let mut h: Vec<u32> = g.images().to_vec();
        let mut rank = 0u64;
        for l in &self.levels {
            let beta = h[l.point as usize];
            let j = l.pos[beta as usize];
            if j == NONE {
                return None;
            }
            rank = rank * l.orbit.len() as u64 + j as u64;
            let inv = &l.trans_inv[j as usize * n..(j as usize + 1) * n];
            for x in h.iter_mut() {
                *x = inv[*x as usize];
            }
        }
        h.iter()
            .enumerate()
            .all(|(i, &x)| i as u32 == x)
            .then_some(rank)
    }

    /// Rank of a known member from its images of the base points (consumed as scratch).
    #[inline]
    pub fn rank_from_base_images(&self, gamma: &mut [u32]) -> u64 {
        let n = self.degree;
        let k = self.levels.len();
        let mut rank = 0u64;
        for i in 0..k {
            let l = &self.levels[i];
            let j = l.pos[gamma[i] as usize];
            debug_assert!(j != NONE, "element outside the group");
            rank = rank * l.orbit.len() as u64 + j as u64;
            if j != 0 {
                let off = j as usize * n;
                for g in gamma.iter_mut().take(k).skip(i + 1) {
                    *g = l.trans_inv[off + *g as usize];
                }
            }
        }
        rank
    }

    /// Rank of a known member; cheaper than [`StabChain::rank_of`].
    pub fn rank_of_member(&self, g: &Perm) -> u64 {
        let mut gamma: Vec<u32> = self.levels.iter().map(|l| g.apply(l.point)).collect();
        self.rank_from_base_images(&mut gamma)
    }

    #[inline]
    pub fn digits(&self, mut rank: u64, out: &mut [u32]) {
        for (i, l) in self.levels.iter().enumerate().rev() {
            let r = l.orbit.len() as u64;
            out[i] = (rank % r) as u32;
            rank /= r;
        }
    }

    /// `x^g` for g given by digits.
    #[inline]
    pub fn image(&self, digits: &[u32], mut x: u32) -> u32 {
        let n = self.degree;
        for (l, &d) in self.levels.iter().zip(digits).rev() {
            if d != 0 {
                x = l.trans[d as usize * n + x as usize];
            }
        }
        x
    }

    /// `x^(g⁻¹)` for g given by digits.
    #[inline]
    pub fn preimage(&self, digits: &[u32], mut x: u32) -> u32 {
        let n = self.degree;
        for (l, &d) in self.levels.iter().zip(digits) {
            if d != 0 {
                x = l.trans_inv[d as usize * n + x as usize];
            }
        }
        x
    }

    pub fn element(&self, rank: u64) -> Perm {
        let mut d = vec![0u32; self.levels.len()];
        self.digits(rank, &mut d);
        self.element_from_digits(&d)
    }

    pub fn element_from_digits(&self, d: &[u32]) -> Perm {
        Perm::from_images((0..self.degree as u32).map(|x| self.image(d, x)).collect())
            .expect("transversal products are permutations")
    }

    /// Rank of the product `a·b` of two members given by digits.
    pub fn mul_ranks(&self, da: &[u32], db: &[u32], scratch: &mut [u32]) -> u64 {
        for (s, l) in scratch.iter_mut().zip(&self.levels) {
            *s = self.image(db, self.image(da, l.point));
        }
        self.rank_from_base_images(scratch)
    }
}
