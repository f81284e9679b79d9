//! Quotient monotonicity k_p(G/N) ≤ k_p(G), k_p'(G/N) ≤ k_p'(G) on catalog pairs.

use std::time::Instant;

use rayon::prelude::*;

use super::report::{Case, Report, Source};
use super::Config;
use crate::catalog::{CatalogEntry, Family};
use crate::error::Result;
use crate::numtheory::factorize;
use crate::perm::Perm;
use crate::permgroup::{class_counts, quotient_group, ClassTable, PermGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormalKind {
    Derived,
    SecondDerived,
    Center,
}

#[derive(Clone, Debug)]
pub struct QuotientPair {
    pub entry: CatalogEntry,
    pub kind: NormalKind,
}

impl QuotientPair {
    pub fn label(&self) -> String {
        let k = match self.kind {
            NormalKind::Derived => "derived",
            NormalKind::SecondDerived => "second-derived",
            NormalKind::Center => "center",
        };
        format!("{}/{k}", self.entry)
    }
}

fn normal_closure(g: &PermGroup, mut gens: Vec<Perm>) -> Result<Vec<Perm>> {
    gens.retain(|x| !x.is_identity());
    loop {
        if gens.is_empty() {
            return Ok(gens);
        }
        let h = PermGroup::new(g.degree(), gens.clone())?;
        let extra: Vec<Perm> = gens
            .iter()
            .flat_map(|x| g.generators().iter().map(move |s| x.conjugate_by(s)))
            .filter(|y| !h.contains(y))
            .collect();
        match extra.into_iter().next() {
            Some(y) => gens.push(y),
            None => return Ok(gens),
        }
    }
}

/// Generators of the commutator subgroup [H, H] as a normal subgroup of `g`.
pub fn derived_subgroup_gens(g: &PermGroup, h: &[Perm]) -> Result<Vec<Perm>> {
    let mut comms = Vec::new();
    for (i, a) in h.iter().enumerate() {
        for b in &h[i + 1..] {
            comms.push(a.inverse().mul(&b.inverse()).mul(a).mul(b));
        }
    }
    // close under H so the result is [H, H] and not just the commutators of generators
    let hg = PermGroup::new(g.degree(), h.to_vec())?;
    let inner = normal_closure(&hg, comms)?;
    normal_closure(g, inner)
}

fn center_gens(g: &PermGroup, cap: u64) -> Result<Vec<Perm>> {
    let elems = g.cayley_elements(cap as usize)?;
    Ok(elems
        .into_iter()
        .filter(|x| !x.is_identity() && g.generators().iter().all(|s| s.commutes_with(x)))
        .collect())
}

pub fn quotient_pairs() -> Vec<QuotientPair> {
    use Family::*;
    use NormalKind::*;
    let pair = |f: Family, ps: &[u64], kind| QuotientPair {
        entry: CatalogEntry::new(f, ps),
        kind,
    };
    vec![
        pair(Sym, &[3], Derived),
        pair(Sym, &[4], Derived),
        pair(Sym, &[4], SecondDerived),
        pair(Sym, &[5], Derived),
        pair(Dihedral, &[8], Center),
        pair(Dihedral, &[12], Center),
        pair(Dihedral, &[12], Derived),
        pair(Frobenius, &[13, 6], Derived),
        pair(Frobenius, &[17, 16], Derived),
        pair(Sl2, &[5], Center),
        pair(Sl2, &[7], Center),
        pair(Pgl2, &[5], Derived),
        pair(Pgammal2, &[8], Derived),
        pair(Alt, &[4], Derived),
    ]
}

fn normal_gens(pair: &QuotientPair, g: &PermGroup, cap: u64) -> Result<Vec<Perm>> {
    match pair.kind {
        NormalKind::Derived => derived_subgroup_gens(g, g.generators()),
        NormalKind::SecondDerived => {
            let d = derived_subgroup_gens(g, g.generators())?;
            derived_subgroup_gens(g, &d)
        }
        NormalKind::Center => center_gens(g, cap),
    }
}

fn pair_cases(cfg: &Config, pair: &QuotientPair) -> Result<Vec<Case>> {
    let built = pair.entry.build()?;
    let g = &built.group;
    let n = normal_gens(pair, g, cfg.cap)?;
    let nsize = if n.is_empty() {
        1
    } else {
        PermGroup::new(g.degree(), n.clone())?.order()
    };
    let q = quotient_group(g, &n)?;
    let tg = cfg.class_table(&built)?;
    let tq = ClassTable::compute(&q, cfg.cap)?;
    let label = pair.label();
    let mut out = Vec::new();
    for p in factorize(tg.group_order()).primes() {
        let a = class_counts(&tg, p)?;
        let b = class_counts(&tq, p)?;
        out.push(
            Case::new(format!("{label}/p={p}"), pair.entry.id(), Some(p))
                .with("normal_order", nsize as u64)
                .with("quotient_order", q.order() as u64)
                .with("k_p", [a.k_p, b.k_p])
                .with("k_p_prime", [a.k_p_prime, b.k_p_prime])
                .expect(
                    "quotient counts at most the group counts",
                    Source::Published,
                )
                .check(
                    b.k_p <= a.k_p && b.k_p_prime <= a.k_p_prime && q.order() * nsize == g.order(),
                ),
        );
    }
    Ok(out)
}

pub fn verify_lemma81(cfg: &Config) -> Report {
    let started = Instant::now();
    let cases: Vec<Case> = quotient_pairs()
        .par_iter()
        .map(|pair| {
            pair_cases(cfg, pair).unwrap_or_else(|e| {
                vec![Case::new(pair.label(), pair.entry.id(), None)
                    .note(e.to_string())
                    .check(false)]
            })
        })
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    Report::new("lemma81", cases, cfg, started)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_quotients() {
        let cfg = Config::default();
        let order = |f: Family, ps: &[u64], kind| {
            let pair = QuotientPair {
                entry: CatalogEntry::new(f, ps),
                kind,
            };
            let g = pair.entry.build().unwrap().group;
            let n = normal_gens(&pair, &g, cfg.cap).unwrap();
            quotient_group(&g, &n).unwrap().order()
        };
        assert_eq!(order(Family::Sym, &[4], NormalKind::SecondDerived), 6);
        assert_eq!(order(Family::Sym, &[4], NormalKind::Derived), 2);
        assert_eq!(order(Family::Sl2, &[5], NormalKind::Center), 60);
        assert_eq!(order(Family::Frobenius, &[13, 6], NormalKind::Derived), 6);
        assert_eq!(order(Family::Dihedral, &[8], NormalKind::Center), 8);
        assert!(quotient_pairs().len() >= 10);
    }
}
