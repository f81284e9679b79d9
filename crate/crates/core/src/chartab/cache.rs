//! Text cache for character tables.
//!
//! ```text
//! regclass-chartab 1
//! version <crate version>
//! group <entry id>
//! exponent <e>
//! modulus <P>
//! sizes <class sizes>
//! <degree> | <j:m,j:m> ; <j:m> ; ...      one line per character
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{CharacterTable, CycValue};
use crate::error::{Error, Result};
use crate::VERSION;

const MAGIC: &str = "regclass-chartab 1";

pub fn save_character_table(path: &Path, group_id: &str, t: &CharacterTable) -> Result<()> {
    let mut s = String::new();
    writeln!(s, "{MAGIC}\nversion {VERSION}\ngroup {group_id}").unwrap();
    writeln!(s, "exponent {}\nmodulus {}", t.exponent, t.modulus).unwrap();
    let sizes: Vec<String> = t.class_sizes.iter().map(u64::to_string).collect();
    writeln!(s, "sizes {}", sizes.join(" ")).unwrap();
    for (d, row) in t.degrees.iter().zip(&t.values) {
        let cells: Vec<String> = row
            .iter()
            .map(|v| {
                v.terms()
                    .iter()
                    .map(|(j, m)| format!("{j}:{m}"))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect();
        writeln!(s, "{d} | {}", cells.join(" ; ")).unwrap();
    }
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir)?;
    }
    fs::write(path, s)?;
    Ok(())
}

pub fn load_character_table(path: &Path, group_id: &str) -> Result<CharacterTable> {
    let bad = |reason: String| Error::Cache {
        path: path.display().to_string(),
        reason,
    };
    let text = fs::read_to_string(path)?;
    let mut lines = text.lines();
    let mut field = |key: &str| -> Result<String> {
        let line = lines.next().ok_or_else(|| bad(format!("missing {key}")))?;
        if key == "magic" {
            return Ok(line.to_string());
        }
        line.strip_prefix(key)
            .and_then(|r| r.strip_prefix(' '))
            .map(str::to_string)
            .ok_or_else(|| bad(format!("expected `{key}`")))
    };
    let num = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| bad(format!("bad number `{s}`")))
    };
    if field("magic")? != MAGIC {
        return Err(bad("unknown format".into()));
    }
    if field("version")? != VERSION {
        return Err(bad("written by a different version".into()));
    }
    if field("group")? != group_id {
        return Err(bad("group id mismatch".into()));
    }
    let exponent = num(&field("exponent")?)?;
    let modulus = num(&field("modulus")?)?;
    let class_sizes = field("sizes")?
        .split_whitespace()
        .map(num)
        .collect::<Result<Vec<_>>>()?;
    let mut degrees = Vec::new();
    let mut values = Vec::new();
    for line in lines {
        let (d, rest) = line
            .split_once(" | ")
            .ok_or_else(|| bad(format!("bad row `{line}`")))?;
        degrees.push(num(d)?);
        let row = rest
            .split(" ; ")
            .map(|cell| {
                let terms = cell
                    .split(',')
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        let (j, m) = t
                            .split_once(':')
                            .ok_or_else(|| bad(format!("bad term `{t}`")))?;
                        let m = m
                            .parse::<i64>()
                            .map_err(|_| bad(format!("bad term `{t}`")))?;
                        Ok((num(j)?, m))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(CycValue::from_terms(exponent, terms))
            })
            .collect::<Result<Vec<_>>>()?;
        values.push(row);
    }
    let t = CharacterTable {
        exponent,
        modulus,
        class_sizes,
        degrees,
        values,
    };
    t.verify().map_err(|e| bad(e.to_string()))?;
    Ok(t)
}
