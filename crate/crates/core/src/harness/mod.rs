//! Verification suites over the catalog, report emission and on-disk caches.

mod module;
mod quotients;
mod report;
mod suites;
mod table1;

use std::path::{Path, PathBuf};

pub use module::{check_module_bound, lemma72_fixtures, verify_lemma72, ModuleAction, ModuleBound};
pub use quotients::{
    derived_subgroup_gens, quotient_pairs, verify_lemma81, NormalKind, QuotientPair,
};
pub use report::{
    emit_report, parse_report, Caps, Case, CaseVerdict, Expected, Format, Meta, Report, Source,
    Summary,
};
pub use suites::{
    is_equality_entry, verify_autorbits, verify_theorem1, verify_theorem2, verify_theorem3,
    verify_theorem4,
};
pub use table1::{table1_rows, verify_table1, Table1Row, Tier};

use crate::catalog::{default_catalog, full_catalog, BuiltEntry, CatalogEntry};
use crate::chartab::{load_character_table, save_character_table, CharacterTable};
use crate::error::Result;
use crate::permgroup::{load_class_table, save_class_table, ClassTable, DEFAULT_CAP, EXTENDED_CAP};
use crate::VERSION;

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "REGCLASS_CACHE_DIR";

/// Order bound for the default sweeps.
pub const DEFAULT_MAX_ORDER: u128 = 20_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    /// Enumeration cap passed to class computation.
    pub cap: u64,
    /// Catalog entries above this order are left out of the sweeps.
    pub max_order: u128,
    pub extended: bool,
    pub cache_dir: Option<PathBuf>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            cap: DEFAULT_CAP,
            max_order: DEFAULT_MAX_ORDER,
            extended: false,
            cache_dir: None,
        }
    }
}

impl Config {
    /// Default settings with the cache directory taken from the environment.
    pub fn from_env() -> Self {
        Config {
            cache_dir: std::env::var_os(CACHE_ENV).map(PathBuf::from),
            ..Config::default()
        }
    }

    pub fn extended(mut self) -> Self {
        self.extended = true;
        self.cap = EXTENDED_CAP;
        self
    }

    /// Catalog entries within `max_order`, drawn from the full catalog in extended mode.
    pub fn entries(&self) -> Vec<CatalogEntry> {
        let all = if self.extended {
            full_catalog()
        } else {
            default_catalog()
        };
        all.into_iter()
            .filter(|e| e.expected_order() <= self.max_order)
            .collect()
    }

    fn cache_path(&self, entry: &CatalogEntry, kind: &str) -> Option<PathBuf> {
        self.cache_dir
            .as_ref()
            .map(|d| d.join(format!("{}-{VERSION}.{kind}", entry.id())))
    }

    /// Class table, read from and written to the cache when one is configured.
    pub fn class_table(&self, built: &BuiltEntry) -> Result<ClassTable> {
        let path = self.cache_path(&built.entry, "classes");
        if let Some(p) = path.as_deref().filter(|p| p.exists()) {
            if let Ok(t) = load_class_table(p, &built.group, self.cap) {
                return Ok(t);
            }
        }
        let t = ClassTable::compute(&built.group, self.cap)?;
        if let Some(p) = path {
            store(&p, |p| save_class_table(p, &built.group, &t));
        }
        Ok(t)
    }

    pub fn character_table(
        &self,
        built: &BuiltEntry,
        classes: &ClassTable,
    ) -> Result<CharacterTable> {
        let id = built.entry.id();
        let path = self.cache_path(&built.entry, "chartab");
        if let Some(p) = path.as_deref().filter(|p| p.exists()) {
            if let Ok(t) = load_character_table(p, &id) {
                if t.class_sizes.len() == classes.len() {
                    return Ok(t);
                }
            }
        }
        let t = CharacterTable::compute(classes)?;
        if let Some(p) = path {
            store(&p, |p| save_character_table(p, &id, &t));
        }
        Ok(t)
    }
}

/// Cache writes are best effort; a read-only cache directory only costs recomputation.
fn store(path: &Path, write: impl FnOnce(&Path) -> Result<()>) {
    let _ = write(path);
}
