//! k(H) + n(H, V) − 1 for a p'-group H acting irreducibly and faithfully on V = GF(p)^d.

use std::collections::{HashMap, HashSet, VecDeque};
use std::time::Instant;

use serde::Serialize;

use super::report::{Case, Report, Source};
use super::Config;
use crate::error::{Error, Result};
use crate::numtheory::{cmp_threshold, is_prime, RootExponent, Verdict};

type Matrix = Vec<Vec<u64>>;

/// Matrix group over GF(p) acting on row vectors from the right.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleAction {
    pub name: String,
    pub p: u64,
    pub dim: usize,
    pub generators: Vec<Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModuleBound {
    pub group_order: u64,
    pub module_size: u64,
    pub classes: usize,
    pub orbits: usize,
    /// k(H) + n(H, V) − 1.
    pub value: u64,
    pub verdict: Verdict,
    /// |V| = p and |H|² = p − 1.
    pub equality_case: bool,
}

const MAX_GROUP: usize = 100_000;
const MAX_MODULE: u64 = 1 << 20;

fn mat_mul(a: &Matrix, b: &Matrix, p: u64) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum::<u64>() % p)
                .collect()
        })
        .collect()
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect()
}

fn apply(v: &[u64], m: &Matrix, p: u64) -> Vec<u64> {
    (0..v.len())
        .map(|j| v.iter().zip(m).map(|(x, row)| x * row[j]).sum::<u64>() % p)
        .collect()
}

fn vectors(dim: usize, p: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = p.pow(dim as u32);
    (0..total).map(move |mut n| {
        (0..dim)
            .map(|_| {
                let d = n % p;
                n /= p;
                d
            })
            .collect()
    })
}

/// Dimension of the row space of `rows` over GF(p).
fn rank(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = crate::numtheory::mod_inverse(rows[r][c], p).expect("nonzero mod prime");
        let pivot: Vec<u64> = rows[r].iter().map(|x| x * inv % p).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p * p - f * y % p) % p;
                }
            }
        }
        rows[r] = pivot;
        r += 1;
    }
    r
}

impl ModuleAction {
    fn validate(&self) -> Result<()> {
        if !is_prime(self.p) || self.dim == 0 {
            return Err(Error::invalid("need a prime p and positive dimension"));
        }
        if (self.p as u128).pow(self.dim as u32) > MAX_MODULE as u128 {
            return Err(Error::Unsupported(format!(
                "|V| = {}^{} is too large",
                self.p, self.dim
            )));
        }
        for g in &self.generators {
            if g.len() != self.dim
                || g.iter()
                    .any(|r| r.len() != self.dim || r.iter().any(|&x| x >= self.p))
            {
                return Err(Error::invalid("generator shape or entries out of range"));
            }
            if rank(g.clone(), self.p) != self.dim {
                return Err(Error::invalid("generator is singular"));
            }
        }
        Ok(())
    }

    /// All elements of H by breadth-first closure.
    pub fn elements(&self) -> Result<Vec<Matrix>> {
        self.validate()?;
        let id = identity(self.dim);
        let mut seen: HashSet<Matrix> = HashSet::from([id.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in &self.generators {
                let y = mat_mul(&x, g, self.p);
                if seen.insert(y.clone()) {
                    if out.len() >= MAX_GROUP {
                        return Err(Error::CapExceeded {
                            cap: MAX_GROUP as u64,
                            order: out.len() as u128 + 1,
                        });
                    }
                    out.push(y.clone());
                    queue.push_back(y);
                }
            }
        }
        Ok(out)
    }
}

fn class_count(elems: &[Matrix], p: u64) -> usize {
    let index: HashMap<&Matrix, usize> = elems.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let inverse: Vec<usize> = elems
        .iter()
        .map(|m| {
            let id = identity(m.len());
            elems
                .iter()
                .position(|x| mat_mul(m, x, p) == id)
                .expect("group closed under inverses")
        })
        .collect();
    let mut class_of = vec![usize::MAX; elems.len()];
    let mut k = 0;
    for i in 0..elems.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        for (j, g) in elems.iter().enumerate() {
            let c = mat_mul(&mat_mul(&elems[inverse[j]], &elems[i], p), g, p);
            class_of[index[&c]] = k;
        }
        k += 1;
    }
    k
}

/// Computes k(H) + n(H, V) − 1 after checking p ∤ |H| and irreducibility.
pub fn check_module_bound(action: &ModuleAction) -> Result<ModuleBound> {
    let p = action.p;
    let elems = action.elements()?;
    let order = elems.len() as u64;
    if order % p == 0 {
        return Err(Error::invalid(format!("p = {p} divides |H| = {order}")));
    }
    // matrices are distinct group elements, so the action is faithful by construction
    let all: Vec<Vec<u64>> = vectors(action.dim, p).collect();
    for v in all.iter().filter(|v| v.iter().any(|&x| x != 0)) {
        let span: Vec<Vec<u64>> = elems.iter().map(|g| apply(v, g, p)).collect();
        if rank(span, p) != action.dim {
            return Err(Error::invalid(format!(
                "{v:?} spans a proper invariant subspace"
            )));
        }
    }
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut orbits = 0;
    for v in &all {
        if seen.contains(v) {
            continue;
        }
        orbits += 1;
        for g in &elems {
            seen.insert(apply(v, g, p));
        }
    }
    let classes = class_count(&elems, p);
    let value = (classes + orbits - 1) as u64;
    let module_size = all.len() as u64;
    Ok(ModuleBound {
        group_order: order,
        module_size,
        classes,
        orbits,
        value,
        verdict: cmp_threshold(value, p, RootExponent::Half).into(),
        equality_case: module_size == p && order * order == p - 1,
    })
}

fn scalar(p: u64, a: u64) -> ModuleAction {
    ModuleAction {
        name: format!("<{a}> on GF({p})"),
        p,
        dim: 1,
        generators: vec![vec![vec![a]]],
    }
}

/// The cases C₂ on GF(5), C₄ on GF(17) and C₂ on GF(7), with their expected values,
/// plus a two-dimensional action of C₃ on GF(2)² as a further irreducible case.
pub fn lemma72_fixtures() -> Vec<(ModuleAction, Option<u64>)> {
    vec![
        (scalar(5, 4), Some(4)),
        (scalar(17, 4), Some(8)),
        (scalar(7, 6), Some(5)),
        (
            ModuleAction {
                name: "C3 on GF(2)^2".into(),
                p: 2,
                dim: 2,
                generators: vec![vec![vec![0, 1], vec![1, 1]]],
            },
            None,
        ),
    ]
}

pub fn verify_lemma72(cfg: &Config) -> Report {
    let started = Instant::now();
    let cases = lemma72_fixtures()
        .into_iter()
        .map(|(a, want)| {
            let case = Case::new(a.name.clone(), a.name.clone(), Some(a.p));
            match check_module_bound(&a) {
                Ok(b) => {
                    let classified = (b.verdict == Verdict::Equal) == b.equality_case;
                    let mut c = case
                        .with("classes", b.classes)
                        .with("orbits", b.orbits)
                        .with("value", b.value)
                        .with("threshold", b.verdict)
                        .with("equality_case", b.equality_case)
                        .check(b.verdict != Verdict::Less && classified);
                    if let Some(w) = want {
                        c = c.expect(w, Source::Derived).check(b.value == w);
                    }
                    c
                }
                Err(e) => case.note(e.to_string()).check(false),
            }
        })
        .collect();
    Report::new("lemma72", cases, cfg, started)
}
