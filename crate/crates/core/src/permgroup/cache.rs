//! Line-oriented text cache for class tables.
//!
//! ```text
//! regclass-classes 1
//! version <crate version>
//! degree <n>
//! order <|G|>
//! generators <count>
//! <images of one generator per line>
//! classes <count>
//! <size> <order> <representative images>
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ClassTable, PermGroup};
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::VERSION;

const MAGIC: &str = "regclass-classes 1";

fn images_line(p: &Perm) -> String {
    p.images()
        .iter()
        .map(u32::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn save_class_table(path: &Path, group: &PermGroup, table: &ClassTable) -> Result<()> {
    let mut s = String::new();
    writeln!(s, "{MAGIC}").unwrap();
    writeln!(s, "version {VERSION}").unwrap();
    writeln!(s, "degree {}", group.degree()).unwrap();
    writeln!(s, "order {}", group.order()).unwrap();
    writeln!(s, "generators {}", group.generators().len()).unwrap();
    for g in group.generators() {
        writeln!(s, "{}", images_line(g)).unwrap();
    }
    writeln!(s, "classes {}", table.len()).unwrap();
    for c in table.classes() {
        writeln!(s, "{} {} {}", c.size, c.order, images_line(&c.rep)).unwrap();
    }
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, s)?;
    Ok(())
}

/// Loads a cached table for `group`, rebuilding and verifying it.
pub fn load_class_table(path: &Path, group: &PermGroup, cap: u64) -> Result<ClassTable> {
    let bad = |reason: String| Error::Cache {
        path: path.display().to_string(),
        reason,
    };
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let mut next = |what: &str| lines.next().ok_or_else(|| bad(format!("missing {what}")));
    let field = |line: &str, key: &str| -> Result<String> {
        line.strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| bad(format!("expected `{key}`, found `{line}`")))
    };
    let parse_u = |s: &str| {
        s.parse::<u128>()
            .map_err(|_| bad(format!("bad number `{s}`")))
    };
    let parse_perm = |s: &str| -> Result<Perm> {
        let v = s
            .split_whitespace()
            .map(|x| {
                x.parse::<u32>()
                    .map_err(|_| bad(format!("bad point `{x}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Perm::from_images(v).map_err(|e| bad(e.to_string()))
    };

    if next("header")? != MAGIC {
        return Err(bad("unknown format".into()));
    }
    let version = field(next("version")?, "version")?;
    if version != VERSION {
        return Err(bad(format!(
            "written by version {version}, expected {VERSION}"
        )));
    }
    if parse_u(&field(next("degree")?, "degree")?)? != group.degree() as u128 {
        return Err(bad("degree mismatch".into()));
    }
    if parse_u(&field(next("order")?, "order")?)? != group.order() {
        return Err(bad("group order mismatch".into()));
    }
    let ngens = parse_u(&field(next("generators")?, "generators")?)? as usize;
    let mut gens = Vec::with_capacity(ngens);
    for _ in 0..ngens {
        gens.push(parse_perm(next("generator")?)?);
    }
    if gens != group.generators() {
        return Err(bad("generator list mismatch".into()));
    }
    let nclasses = parse_u(&field(next("classes")?, "classes")?)? as usize;
    let mut recorded = Vec::with_capacity(nclasses);
    for _ in 0..nclasses {
        let line = next("class")?;
        let mut parts = line.splitn(3, ' ');
        let size = parse_u(parts.next().unwrap_or(""))? as u64;
        let order = parse_u(parts.next().unwrap_or(""))? as u64;
        let rep = parse_perm(parts.next().unwrap_or(""))?;
        recorded.push((size, order, rep));
    }
    let total: u128 = recorded.iter().map(|r| r.0 as u128).sum();
    if total != group.order() {
        return Err(bad(format!("class sizes sum to {total}")));
    }
    let reps: Vec<Perm> = recorded.iter().map(|r| r.2.clone()).collect();
    let table =
        ClassTable::from_representatives(group, &reps, cap).map_err(|e| bad(e.to_string()))?;
    for (c, (size, order, rep)) in table.classes().iter().zip(&recorded) {
        if c.size != *size || c.order != *order || &c.rep != rep {
            return Err(bad(format!(
                "class of {rep} does not match the recorded data"
            )));
        }
    }
    spot_check(&table).map_err(|e| bad(e.to_string()))?;
    Ok(table)
}

/// Conjugates ten random elements by random elements and checks the class lookup.
fn spot_check(table: &ClassTable) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let chain = table.chain();
    let n = table.group_order();
    for _ in 0..10 {
        let x = chain.element(rng.gen_range(0..n));
        let c = chain.element(rng.gen_range(0..n));
        let y = x.conjugate_by(&c);
        if table.class_index(&y) != table.class_index(&x) {
            return Err(Error::consistency(format!(
                "{x} and its conjugate {y} split"
            )));
        }
    }
    Ok(())
}
