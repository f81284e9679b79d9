//! Permutation groups: stabilizer chains, conjugacy classes, class counts and quotients.

mod cache;
mod chain;
mod classes;
mod quotient;

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::perm::Perm;

pub use cache::{load_class_table, save_class_table};
pub use chain::StabChain;
pub use classes::{
    class_counts, galois_fixed_class_count, p_part_split, ClassCounts, ClassTable, ConjClass,
    DEFAULT_CAP, EXTENDED_CAP,
};
pub use quotient::quotient_group;

/// Largest supported permutation degree.
pub const MAX_DEGREE: usize = 1 << 16;

#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    chain: Arc<StabChain>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::invalid(format!(
                "degree {degree} outside 1..={MAX_DEGREE}"
            )));
        }
        let chain = StabChain::new(degree, &generators)?;
        Ok(PermGroup {
            degree,
            generators,
            chain: Arc::new(chain),
        })
    }

    pub fn trivial(degree: usize) -> Result<Self> {
        PermGroup::new(degree, Vec::new())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn chain(&self) -> &Arc<StabChain> {
        &self.chain
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain.contains(g)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .enumerate()
            .all(|(i, a)| g[i + 1..].iter().all(|b| a.commutes_with(b)))
    }

    /// Checks that `c` normalizes the group by conjugating every generator.
    pub fn check_normalized_by(&self, c: &Perm) -> Result<()> {
        if c.degree() != self.degree {
            return Err(Error::invalid("conjugator degree mismatch"));
        }
        for g in &self.generators {
            let h = g.conjugate_by(c);
            if !self.contains(&h) {
                return Err(Error::NotNormalizing {
                    witness: format!("{c} sends {g} to {h}"),
                });
            }
        }
        Ok(())
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.contains(g))
    }

    /// Breadth-first enumeration of the Cayley graph on the generators.
    ///
    /// Used as an independent check of the stabilizer chain on small groups.
    pub fn cayley_elements(&self, cap: usize) -> Result<Vec<Perm>> {
        let id = Perm::identity(self.degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut out = vec![id];
        let mut head = 0;
        while head < out.len() {
            for s in &self.generators {
                let y = out[head].mul(s);
                if !seen.contains(&y) {
                    if out.len() >= cap {
                        return Err(Error::CapExceeded {
                            cap: cap as u64,
                            order: self.order(),
                        });
                    }
                    seen.insert(y.clone());
                    out.push(y);
                }
            }
            head += 1;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_matches_cayley() {
        let g = PermGroup::new(
            6,
            vec![
                Perm::from_cycles(6, &[&[0, 1, 2, 3]]).unwrap(),
                Perm::from_cycles(6, &[&[0, 4], &[1, 5]]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(g.cayley_elements(10_000).unwrap().len() as u128, g.order());
        assert!(PermGroup::new(0, vec![]).is_err());
    }

    #[test]
    fn normalizer_check() {
        let c5 =
            PermGroup::new(5, vec![Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap()]).unwrap();
        let mult2 = Perm::from_fn(5, |x| (2 * x) % 5).unwrap();
        assert!(c5.check_normalized_by(&mult2).is_ok());
        let t = Perm::from_cycles(5, &[&[0, 1]]).unwrap();
        assert!(matches!(
            c5.check_normalized_by(&t),
            Err(Error::NotNormalizing { .. })
        ));
    }
}
