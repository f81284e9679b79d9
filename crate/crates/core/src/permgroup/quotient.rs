use std::collections::HashMap;

use super::{PermGroup, MAX_DEGREE};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Enumeration bound on |N| when listing the normal subgroup.
const NORMAL_CAP: usize = 1 << 22;

/// The action of G on the right cosets of a normal subgroup N.
pub fn quotient_group(g: &PermGroup, normal_gens: &[Perm]) -> Result<PermGroup> {
    let n = PermGroup::new(g.degree(), normal_gens.to_vec())?;
    for x in normal_gens {
        if !g.contains(x) {
            return Err(Error::invalid(format!("{x} is not in the ambient group")));
        }
    }
    for x in normal_gens {
        for s in g.generators() {
            let c = x.conjugate_by(s);
            if !n.contains(&c) {
                return Err(Error::NotNormal {
                    witness: format!("{x}^{s} = {c}"),
                });
            }
        }
    }
    let index = g.order() / n.order();
    if index as usize > MAX_DEGREE {
        return Err(Error::invalid(format!(
            "index {index} exceeds the degree cap"
        )));
    }
    let n_elems = n.cayley_elements(NORMAL_CAP)?;
    let chain = g.chain();
    // A coset N·x is labelled by the least rank among its members.
    let label = |x: &Perm| {
        n_elems
            .iter()
            .map(|m| chain.rank_of_member(&m.mul(x)))
            .min()
            .unwrap()
    };

    let mut reps = vec![Perm::identity(g.degree())];
    let mut ids: HashMap<u64, u32> = HashMap::from([(label(&reps[0]), 0)]);
    let mut images: Vec<Vec<u32>> = vec![Vec::new(); g.generators().len()];
    let mut head = 0;
    while head < reps.len() {
        for (si, s) in g.generators().iter().enumerate() {
            let y = reps[head].mul(s);
            let l = label(&y);
            let next = ids.len() as u32;
            let id = *ids.entry(l).or_insert_with(|| {
                reps.push(y);
                next
            });
            images[si].push(id);
        }
        head += 1;
    }
    if reps.len() as u128 != index {
        return Err(Error::consistency(
            "coset enumeration disagrees with the index",
        ));
    }
    let gens = images
        .into_iter()
        .map(Perm::from_images)
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(reps.len(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s4() -> PermGroup {
        PermGroup::new(
            4,
            vec![
                Perm::from_cycles(4, &[&[0, 1]]).unwrap(),
                Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap(),
            ],
        )
        .unwrap()
    }

    #[test]
    fn s4_mod_v4() {
        let v4 = [
            Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
        ];
        let q = quotient_group(&s4(), &v4).unwrap();
        assert_eq!(q.order(), 6);
        assert_eq!(q.degree(), 6);
        assert!(!q.is_abelian());
    }

    #[test]
    fn extremes_and_rejection() {
        let g = s4();
        assert_eq!(quotient_group(&g, &[]).unwrap().order(), 24);
        assert_eq!(quotient_group(&g, g.generators()).unwrap().order(), 1);
        let t = [Perm::from_cycles(4, &[&[0, 1]]).unwrap()];
        assert!(matches!(
            quotient_group(&g, &t),
            Err(Error::NotNormal { .. })
        ));
    }
}
