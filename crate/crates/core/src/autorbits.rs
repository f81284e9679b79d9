//! Fusion of conjugacy classes under normalizing permutations.

use serde::Serialize;

use crate::error::Result;
use crate::perm::Perm;
use crate::permgroup::{ClassTable, PermGroup};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    /// Orbit id of each class index.
    pub orbit_of: Vec<usize>,
    /// Members of each orbit, ascending; orbits ordered by least member.
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn count(&self) -> usize {
        self.orbits.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitCounts {
    pub n_pregular: usize,
    pub n_pelement: usize,
    pub n_union: usize,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Orbits of ⟨conjugators⟩ on the classes of `group`.
pub fn fuse_classes(
    table: &ClassTable,
    group: &PermGroup,
    conjugators: &[Perm],
) -> Result<OrbitPartition> {
    for c in conjugators {
        group.check_normalized_by(c)?;
    }
    let k = table.len();
    let mut parent: Vec<usize> = (0..k).collect();
    for c in conjugators {
        for i in 0..k {
            let j = table.class_index_member(&table.class(i).rep.conjugate_by(c));
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbit_of = vec![usize::MAX; k];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..k {
        let r = find(&mut parent, i);
        if orbit_of[r] == usize::MAX {
            orbit_of[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbit_of[i] = orbit_of[r];
        orbits[orbit_of[i]].push(i);
    }
    Ok(OrbitPartition { orbit_of, orbits })
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Orbit counts on p-regular classes and on classes of nontrivial p-elements.
pub fn orbit_counts(partition: &OrbitPartition, table: &ClassTable, p: u64) -> OrbitCounts {
    let mut n_pregular = 0;
    let mut n_pelement = 0;
    for orbit in &partition.orbits {
        let o = table.class(orbit[0]).order;
        if o % p != 0 {
            n_pregular += 1;
        } else if is_p_power(o, p) {
            n_pelement += 1;
        }
    }
    OrbitCounts {
        n_pregular,
        n_pelement,
        n_union: n_pregular + n_pelement,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{CatalogEntry, Family};
    use crate::permgroup::DEFAULT_CAP;

    #[test]
    fn a6_fusion() {
        let b = CatalogEntry::new(Family::Psl2, &[9]).build().unwrap();
        let t = ClassTable::compute(&b.group, DEFAULT_CAP).unwrap();
        assert_eq!(t.len(), 7);
        let none = fuse_classes(&t, &b.group, &[]).unwrap();
        assert_eq!(none.count(), 7);
        let part = fuse_classes(&t, &b.group, &b.conjugators).unwrap();
        assert_eq!(part.count(), 5);
        let threes: Vec<usize> = (0..7).filter(|&i| t.class(i).order == 3).collect();
        assert_eq!(threes.len(), 2);
        assert_eq!(part.orbit_of[threes[0]], part.orbit_of[threes[1]]);
        let c = orbit_counts(&part, &t, 5);
        assert_eq!(c.n_pregular, 4);
    }

    #[test]
    fn a5_counts() {
        let b = CatalogEntry::new(Family::Alt, &[5]).build().unwrap();
        let t = ClassTable::compute(&b.group, DEFAULT_CAP).unwrap();
        let part = fuse_classes(&t, &b.group, &b.conjugators).unwrap();
        let c = orbit_counts(&part, &t, 5);
        assert_eq!((c.n_pregular, c.n_union), (3, 4));
    }
}
