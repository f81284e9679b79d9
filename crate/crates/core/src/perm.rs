//! Permutations of {0, …, n−1}, acting on the right: `x^(gh) = (x^g)^h`.

use std::fmt;

use crate::error::{Error, Result};
use crate::numtheory::lcm;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::invalid("image list is not a bijection"));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// Builds from disjoint cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut img: Vec<u32> = (0..n as u32).collect();
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                let y = c[(i + 1) % c.len()];
                if x as usize >= n || y as usize >= n {
                    return Err(Error::invalid("cycle point out of range"));
                }
                img[x as usize] = y;
            }
        }
        Perm::from_images(img)
    }

    /// Builds from a point map, checking it is a bijection.
    pub fn from_fn(n: usize, f: impl Fn(u32) -> u32) -> Result<Self> {
        Perm::from_images((0..n as u32).map(f).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    /// `c⁻¹ · self · c`.
    pub fn conjugate_by(&self, c: &Perm) -> Perm {
        let mut out = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[c.0[i] as usize] = c.0[x as usize];
        }
        Perm(out)
    }

    pub fn pow(&self, k: i64) -> Perm {
        let n = self.0.len();
        let mut out = vec![0u32; n];
        let mut done = vec![false; n];
        let mut cyc = Vec::new();
        for s in 0..n {
            if done[s] {
                continue;
            }
            cyc.clear();
            let mut x = s as u32;
            while !done[x as usize] {
                done[x as usize] = true;
                cyc.push(x);
                x = self.0[x as usize];
            }
            let len = cyc.len() as i64;
            let shift = k.rem_euclid(len) as usize;
            for (i, &y) in cyc.iter().enumerate() {
                out[y as usize] = cyc[(i + shift) % cyc.len()];
            }
        }
        Perm(out)
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let n = self.0.len();
        let mut done = vec![false; n];
        let mut lens = Vec::new();
        for s in 0..n {
            if done[s] {
                continue;
            }
            let mut len = 0;
            let mut x = s;
            while !done[x] {
                done[x] = true;
                len += 1;
                x = self.0[x] as usize;
            }
            lens.push(len);
        }
        lens
    }

    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .into_iter()
            .fold(1u64, |a, l| lcm(a, l as u64))
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.0
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    pub fn commutes_with(&self, o: &Perm) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, &x)| o.0[x as usize] == self.0[o.0[i] as usize])
    }

    pub fn is_even(&self) -> bool {
        let odd_cycles = self.cycle_lengths().iter().filter(|&&l| l % 2 == 0).count();
        odd_cycles % 2 == 0
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.0.len();
        let mut done = vec![false; n];
        let mut any = false;
        for s in 0..n {
            if done[s] || self.0[s] as usize == s {
                continue;
            }
            any = true;
            f.write_str("(")?;
            let mut x = s;
            let mut first = true;
            while !done[x] {
                done[x] = true;
                if !first {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.0[x] as usize;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let a = Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        let b = Perm::from_cycles(5, &[&[3, 4]]).unwrap();
        assert_eq!(a.mul(&b).order(), 6);
        assert_eq!(a.pow(3), Perm::identity(5));
        assert_eq!(a.pow(-1), a.inverse());
        assert!(a.commutes_with(&b));
        let t = Perm::from_cycles(5, &[&[0, 3]]).unwrap();
        let c = a.conjugate_by(&t);
        assert_eq!(c, t.inverse().mul(&a).mul(&t));
        assert_eq!(format!("{c}"), "(1,2,3)");
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(a.is_even() && !t.is_even());
    }
}
