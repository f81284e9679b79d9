//! Exact class and character counting for finite groups, fusion under automorphisms,
//! and certification of closed-form lower bounds for groups of Lie type.

pub mod autorbits;
pub mod catalog;
pub mod chartab;
pub mod error;
pub mod gf;
pub mod harness;
pub mod liebounds;
pub mod numtheory;
pub mod perm;
pub mod permgroup;

pub use error::{Error, Result};

/// Version string recorded in caches and reports.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
