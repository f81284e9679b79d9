//! The verification corpus: named permutation-group constructions with
//! ambient conjugators that realize outer automorphisms.
//!
//! Matrix groups act on row vectors from the right. PSL₂ uses the generators
//! `[[1,1],[0,1]]`, `[[a,0],[0,a⁻¹]]` and `[[0,1],[-1,0]]` with `a` the least
//! primitive element of the field; projective points are represented by
//! vectors whose first nonzero coordinate is 1, in lexicographic order.

mod linear;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::Field;
use crate::numtheory::{gcd, is_prime, multiplicative_order, prime_power};
use crate::perm::Perm;
use crate::permgroup::PermGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Cyclic,
    Dihedral,
    Frobenius,
    Sym,
    Alt,
    Psl2,
    Pgl2,
    Pgammal2,
    Sl2,
    Psl3WithDuality,
    Sp4,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Cyclic => "cyclic",
            Family::Dihedral => "dihedral",
            Family::Frobenius => "frobenius",
            Family::Sym => "sym",
            Family::Alt => "alt",
            Family::Psl2 => "psl2",
            Family::Pgl2 => "pgl2",
            Family::Pgammal2 => "pgammal2",
            Family::Sl2 => "sl2",
            Family::Psl3WithDuality => "psl3",
            Family::Sp4 => "sp4",
        }
    }

    fn all() -> [Family; 11] {
        use Family::*;
        [
            Cyclic,
            Dihedral,
            Frobenius,
            Sym,
            Alt,
            Psl2,
            Pgl2,
            Pgammal2,
            Sl2,
            Psl3WithDuality,
            Sp4,
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CatalogEntry {
    pub family: Family,
    pub params: Vec<u64>,
}

impl fmt::Display for CatalogEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params.iter().map(u64::to_string).collect();
        write!(f, "{}({})", self.family.name(), ps.join(","))
    }
}

impl FromStr for CatalogEntry {
    type Err = Error;

    /// Parses identifiers such as `psl2(16)` or `frobenius(5,2)`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::invalid(format!("cannot parse catalog entry `{s}`"));
        let s = s.trim();
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let family = Family::all()
            .into_iter()
            .find(|f| {
                f.name() == name || (name == "psl3_with_duality" && *f == Family::Psl3WithDuality)
            })
            .ok_or_else(|| Error::Unsupported(format!("unknown family `{name}`")))?;
        let params = inner
            .split(',')
            .map(|x| x.trim().parse::<u64>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let e = CatalogEntry { family, params };
        e.validate()?;
        Ok(e)
    }
}

/// Static facts about an entry, available without building it.
#[derive(Clone, Debug, Serialize)]
pub struct EntryInfo {
    pub id: String,
    /// Isomorphism-type label used to match rows of the exceptions table.
    pub name: String,
    pub order: u128,
    pub degree: usize,
    pub simple: bool,
    pub solvable: bool,
    /// Whether the conjugators together with the group realize all of Aut(S).
    pub full_aut: bool,
    /// Order of the unique nonabelian composition factor, if any.
    pub nonabelian_factor_order: Option<u128>,
    pub out_action: String,
}

#[derive(Clone, Debug)]
pub struct BuiltEntry {
    pub entry: CatalogEntry,
    pub info: EntryInfo,
    pub group: PermGroup,
    pub conjugators: Vec<Perm>,
}

fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

fn field_params(q: u64) -> Result<(u64, u32)> {
    prime_power(q).ok_or_else(|| Error::Unsupported(format!("{q} is not a prime power")))
}

fn psl2_order(q: u64) -> u128 {
    let q = q as u128;
    q * (q * q - 1) / if q % 2 == 1 { 2 } else { 1 }
}

fn psl3_order(q: u64) -> u128 {
    let q = q as u128;
    q.pow(3) * (q.pow(3) - 1) * (q * q - 1) / gcd(3, q as u64 - 1) as u128
}

fn sp4_order(q: u64) -> u128 {
    let q = q as u128;
    q.pow(4) * (q * q - 1) * (q.pow(4) - 1) / if q % 2 == 1 { 2 } else { 1 }
}

fn least_multiplier(p: u64, d: u64) -> Option<u64> {
    (2..p).find(|&a| multiplicative_order(a, p) == Some(d))
}

impl CatalogEntry {
    pub fn new(family: Family, params: &[u64]) -> Self {
        CatalogEntry {
            family,
            params: params.to_vec(),
        }
    }

    pub fn id(&self) -> String {
        self.to_string()
    }

    fn param(&self, i: usize) -> u64 {
        self.params[i]
    }

    pub fn validate(&self) -> Result<()> {
        let unsupported = |why: &str| Err(Error::Unsupported(format!("{self}: {why}")));
        let arity = if self.family == Family::Frobenius {
            2
        } else {
            1
        };
        if self.params.len() != arity {
            return unsupported("wrong number of parameters");
        }
        match self.family {
            Family::Cyclic | Family::Dihedral if self.param(0) < 1 => {
                unsupported("n must be positive")
            }
            Family::Dihedral if self.param(0) < 3 => unsupported("n must be at least 3"),
            Family::Sym | Family::Alt if !(2..=12).contains(&self.param(0)) => {
                unsupported("n outside 2..=12")
            }
            Family::Frobenius => {
                let (p, d) = (self.param(0), self.param(1));
                if !is_prime(p) || d == 0 || (p - 1) % d != 0 {
                    return unsupported("need p prime and d | p-1");
                }
                Ok(())
            }
            Family::Psl2 | Family::Pgl2 | Family::Pgammal2 | Family::Sl2 => {
                let q = self.param(0);
                field_params(q)?;
                if q > 256 {
                    return unsupported("q above 256");
                }
                Ok(())
            }
            Family::Psl3WithDuality => {
                let q = self.param(0);
                field_params(q)?;
                if q > 9 {
                    return unsupported("q above 9");
                }
                Ok(())
            }
            Family::Sp4 if !matches!(self.param(0), 2 | 3) => unsupported("only q = 2, 3"),
            _ => Ok(()),
        }
    }

    /// Closed-form order of the constructed group.
    pub fn expected_order(&self) -> u128 {
        let a = self.param(0);
        match self.family {
            Family::Cyclic => a as u128,
            Family::Dihedral => 2 * a as u128,
            Family::Frobenius => a as u128 * self.param(1) as u128,
            Family::Sym => factorial(a),
            Family::Alt => factorial(a) / if a >= 2 { 2 } else { 1 },
            Family::Psl2 => psl2_order(a),
            Family::Pgl2 | Family::Sl2 => a as u128 * (a as u128 * a as u128 - 1),
            Family::Pgammal2 => {
                let f = prime_power(a).map(|x| x.1).unwrap_or(1) as u128;
                f * a as u128 * (a as u128 * a as u128 - 1)
            }
            Family::Psl3WithDuality => psl3_order(a),
            Family::Sp4 => sp4_order(a),
        }
    }

    pub fn degree(&self) -> usize {
        let a = self.param(0) as usize;
        match self.family {
            Family::Cyclic | Family::Dihedral | Family::Sym | Family::Alt | Family::Frobenius => a,
            Family::Psl2 | Family::Pgl2 | Family::Pgammal2 => a + 1,
            Family::Sl2 => a * a - 1,
            Family::Psl3WithDuality => 2 * (a * a + a + 1),
            Family::Sp4 => (a.pow(4) - 1) / (a - 1),
        }
    }

    pub fn info(&self) -> EntryInfo {
        let a = self.param(0);
        let order = self.expected_order();
        let f = prime_power(a).map(|x| x.1).unwrap_or(1);
        let (name, simple, factor, full_aut, out): (String, bool, Option<u128>, bool, String) =
            match self.family {
                Family::Cyclic => (format!("C{a}"), is_prime(a), None, false, "none".into()),
                Family::Dihedral => (format!("D{}", 2 * a), false, None, false, "none".into()),
                Family::Frobenius => {
                    let d = self.param(1);
                    let name = if d == 1 {
                        format!("C{a}")
                    } else {
                        format!("C{a}:C{d}")
                    };
                    (name, d == 1, None, false, "none".into())
                }
                Family::Sym => {
                    let fac = (a >= 5).then(|| factorial(a) / 2);
                    (format!("S{a}"), a == 2, fac, false, "none".into())
                }
                Family::Alt => {
                    let fac = (a >= 5).then(|| factorial(a) / 2);
                    let out = if a >= 3 {
                        "transposition (S_n)"
                    } else {
                        "none"
                    };
                    (
                        format!("A{a}"),
                        a == 3 || a >= 5,
                        fac,
                        a != 6 && a >= 3,
                        out.into(),
                    )
                }
                Family::Psl2 => {
                    let nonsolv = a >= 4;
                    let name = match a {
                        4 | 5 => "A5".to_string(),
                        9 => "A6".to_string(),
                        _ => format!("PSL2({a})"),
                    };
                    let mut out = Vec::new();
                    if a % 2 == 1 {
                        out.push("diagonal");
                    }
                    if f > 1 {
                        out.push("field");
                    }
                    let out = if out.is_empty() {
                        "none".to_string()
                    } else {
                        out.join(", ")
                    };
                    (name, nonsolv, nonsolv.then(|| psl2_order(a)), true, out)
                }
                Family::Pgl2 | Family::Pgammal2 | Family::Sl2 => {
                    let nonsolv = a >= 4;
                    let prefix = match self.family {
                        Family::Pgl2 => "PGL2",
                        Family::Pgammal2 => "PGammaL2",
                        _ => "SL2",
                    };
                    (
                        format!("{prefix}({a})"),
                        false,
                        nonsolv.then(|| psl2_order(a)),
                        false,
                        "none".into(),
                    )
                }
                Family::Psl3WithDuality => {
                    let name = if a == 2 {
                        "PSL2(7)".to_string()
                    } else {
                        format!("PSL3({a})")
                    };
                    let mut out = Vec::new();
                    if (a - 1) % 3 == 0 {
                        out.push("diagonal");
                    }
                    if f > 1 {
                        out.push("field");
                    }
                    out.push("duality");
                    (name, true, Some(order), true, out.join(", "))
                }
                Family::Sp4 => {
                    if a == 2 {
                        ("S6".into(), false, Some(360), false, "none".into())
                    } else {
                        (
                            "PSp4(3)".into(),
                            true,
                            Some(order),
                            true,
                            "similitude".into(),
                        )
                    }
                }
            };
        let solvable = factor.is_none();
        EntryInfo {
            id: self.id(),
            name,
            order,
            degree: self.degree(),
            simple,
            solvable,
            full_aut,
            nonabelian_factor_order: factor,
            out_action: out,
        }
    }

    pub fn build(&self) -> Result<BuiltEntry> {
        self.validate()?;
        let a = self.param(0);
        let n = self.degree();
        let cyc = |m: usize| Perm::from_fn(m, |x| (x + 1) % m as u32);
        let (degree, generators, conjugators) = match self.family {
            Family::Cyclic => (n, vec![cyc(n)?], vec![]),
            Family::Dihedral => (
                n,
                vec![cyc(n)?, Perm::from_fn(n, |x| (n as u32 - x) % n as u32)?],
                vec![],
            ),
            Family::Frobenius => {
                let d = self.param(1);
                let mut gens = vec![cyc(n)?];
                if d > 1 {
                    let m = least_multiplier(a, d).expect("d divides p-1");
                    gens.push(Perm::from_fn(n, |x| ((x as u64 * m) % a) as u32)?);
                }
                (n, gens, vec![])
            }
            Family::Sym => {
                let mut gens = vec![cyc(n)?];
                if n > 2 {
                    gens.push(Perm::from_cycles(n, &[&[0, 1]])?);
                }
                (n, gens, vec![])
            }
            Family::Alt => {
                let gens = if n < 3 {
                    vec![]
                } else if n % 2 == 1 {
                    vec![Perm::from_cycles(n, &[&[0, 1, 2]])?, cyc(n)?]
                } else {
                    let long: Vec<u32> = (1..n as u32).collect();
                    vec![
                        Perm::from_cycles(n, &[&[0, 1, 2]])?,
                        Perm::from_cycles(n, &[&long])?,
                    ]
                };
                let conj = if n >= 3 {
                    vec![Perm::from_cycles(n, &[&[0, 1]])?]
                } else {
                    vec![]
                };
                (n, gens, conj)
            }
            Family::Psl2 | Family::Pgl2 | Family::Pgammal2 => {
                let l = linear::psl2(
                    a as u32,
                    self.family != Family::Psl2,
                    self.family == Family::Pgammal2,
                )?;
                let conj = if self.family == Family::Psl2 {
                    l.conjugators
                } else {
                    vec![]
                };
                (l.degree, l.generators, conj)
            }
            Family::Sl2 => {
                let l = linear::sl2(a as u32)?;
                (l.degree, l.generators, l.conjugators)
            }
            Family::Psl3WithDuality => {
                let l = linear::psl3(a as u32)?;
                (l.degree, l.generators, l.conjugators)
            }
            Family::Sp4 => {
                let l = linear::sp4(a as u32, self.expected_order())?;
                (l.degree, l.generators, l.conjugators)
            }
        };
        let group = PermGroup::new(degree, generators)?;
        if group.order() != self.expected_order() {
            return Err(Error::consistency(format!(
                "{self}: built order {} differs from {}",
                group.order(),
                self.expected_order()
            )));
        }
        for c in &conjugators {
            group.check_normalized_by(c)?;
        }
        Ok(BuiltEntry {
            entry: self.clone(),
            info: self.info(),
            group,
            conjugators,
        })
    }
}

/// Entries of order at most 20000, spanning every family.
pub fn default_catalog() -> Vec<CatalogEntry> {
    use Family::*;
    let mut v = Vec::new();
    for n in [3, 4, 5, 6, 7, 8, 9, 10, 12, 15, 16] {
        v.push(CatalogEntry::new(Cyclic, &[n]));
    }
    for n in [3, 4, 6, 8, 10, 12] {
        v.push(CatalogEntry::new(Dihedral, &[n]));
    }
    for (p, d) in [
        (5, 2),
        (5, 4),
        (7, 2),
        (7, 3),
        (7, 6),
        (11, 5),
        (13, 3),
        (13, 4),
        (13, 6),
        (17, 4),
        (17, 8),
        (17, 16),
        (19, 9),
        (37, 6),
        (37, 9),
        (41, 8),
        (101, 5),
        (101, 10),
    ] {
        v.push(CatalogEntry::new(Frobenius, &[p, d]));
    }
    for n in [3, 4, 5, 6, 7] {
        v.push(CatalogEntry::new(Sym, &[n]));
    }
    for n in [4, 5, 6, 7] {
        v.push(CatalogEntry::new(Alt, &[n]));
    }
    for q in [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31] {
        v.push(CatalogEntry::new(Psl2, &[q]));
    }
    for q in [3, 5, 7, 9, 11, 13] {
        v.push(CatalogEntry::new(Pgl2, &[q]));
    }
    for q in [4, 8, 9] {
        v.push(CatalogEntry::new(Pgammal2, &[q]));
    }
    for q in [3, 5, 7, 9, 11, 13] {
        v.push(CatalogEntry::new(Sl2, &[q]));
    }
    for q in [2, 3] {
        v.push(CatalogEntry::new(Psl3WithDuality, &[q]));
    }
    v.push(CatalogEntry::new(Sp4, &[2]));
    v
}

/// Entries above order 20000 that still fit the default enumeration cap.
pub fn large_catalog() -> Vec<CatalogEntry> {
    use Family::*;
    let mut v: Vec<CatalogEntry> = [32, 49, 64, 81, 128]
        .iter()
        .map(|&q| CatalogEntry::new(Psl2, &[q]))
        .collect();
    v.push(CatalogEntry::new(Psl3WithDuality, &[4]));
    v.push(CatalogEntry::new(Sp4, &[3]));
    v.push(CatalogEntry::new(Alt, &[8]));
    v
}

/// Entries that need the extended enumeration cap.
pub fn extended_catalog() -> Vec<CatalogEntry> {
    use Family::*;
    vec![
        CatalogEntry::new(Psl2, &[243]),
        CatalogEntry::new(Psl2, &[256]),
        CatalogEntry::new(Psl3WithDuality, &[8]),
    ]
}

/// Every entry the catalog knows about.
pub fn full_catalog() -> Vec<CatalogEntry> {
    let mut v = default_catalog();
    v.extend(large_catalog());
    v.extend(extended_catalog());
    v
}

/// Field modulus used for entries over GF(q), constant term first.
pub fn field_modulus(entry: &CatalogEntry) -> Option<Vec<u32>> {
    match entry.family {
        Family::Psl2
        | Family::Pgl2
        | Family::Pgammal2
        | Family::Sl2
        | Family::Psl3WithDuality
        | Family::Sp4 => Field::of_order(entry.params[0] as u32)
            .ok()
            .map(|f| f.modulus().to_vec()),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let e: CatalogEntry = "frobenius(5,2)".parse().unwrap();
        assert_eq!(e.id(), "frobenius(5,2)");
        assert!("frobenius(5,3)".parse::<CatalogEntry>().is_err());
        assert!("psl2(6)".parse::<CatalogEntry>().is_err());
        assert!("foo(3)".parse::<CatalogEntry>().is_err());
        let e: CatalogEntry = "psl3_with_duality(2)".parse().unwrap();
        assert_eq!(e.id(), "psl3(2)");
    }

    #[test]
    fn small_builds() {
        let d10 = CatalogEntry::new(Family::Frobenius, &[5, 2])
            .build()
            .unwrap();
        assert_eq!(d10.group.order(), 10);
        let p16 = CatalogEntry::new(Family::Psl2, &[16]).build().unwrap();
        assert_eq!((p16.group.order(), p16.group.degree()), (4080, 17));
        let l32 = CatalogEntry::new(Family::Psl3WithDuality, &[2])
            .build()
            .unwrap();
        assert_eq!(
            (l32.group.order(), l32.group.degree(), l32.conjugators.len()),
            (168, 14, 1)
        );
    }

    #[test]
    fn every_entry_builds() {
        for e in default_catalog().iter().chain(&large_catalog()) {
            let b = e.build().unwrap_or_else(|err| panic!("{e}: {err}"));
            assert_eq!(b.group.degree(), e.degree());
        }
    }

    #[test]
    fn default_catalog_size() {
        let c = default_catalog();
        assert!(c.len() >= 60);
        assert!(c.iter().all(|e| e.expected_order() <= 20_000));
    }
}
