use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use regclass::catalog::{default_catalog, full_catalog, CatalogEntry};
use regclass::chartab::{brauer_cross_check, CharacterTable};
use regclass::harness::{self, emit_report, Config, Format, Report};
use regclass::liebounds::{default_claims, find_claim, grid_certify, load_claims, Claim};
use regclass::numtheory::{factorize, Verdict};
use regclass::permgroup::class_counts;

#[derive(Parser)]
#[command(
    name = "regclass",
    version,
    about = "Class and character counts for finite groups, and bound certification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Catalog operations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Conjugacy classes of a catalog entry such as `psl2(16)`.
    Classes {
        entry: String,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        extended: bool,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        max_order: Option<u128>,
        /// Also write the JSON report here.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Certify a closed-form inequality over its grid or a custom one.
    Bound {
        /// Claim id, or `all`.
        claim: String,
        /// Comma-separated q values or an inclusive range `lo..hi`.
        #[arg(long)]
        grid: Option<String>,
        /// Claims file to use instead of the bundled one.
        #[arg(long)]
        claims: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Character table summary of a catalog entry at a prime.
    Chartab {
        entry: String,
        #[arg(long)]
        p: u64,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    List {
        /// Include entries that need the extended cap.
        #[arg(long)]
        all: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Table1,
    Lemma72,
    Lemma81,
    Autorbits,
}

fn config(extended: bool, max_order: Option<u128>, cache: Option<PathBuf>) -> Config {
    let mut cfg = Config::from_env();
    if extended {
        cfg = cfg.extended();
    }
    if let Some(m) = max_order {
        cfg.max_order = m;
    }
    if cache.is_some() {
        cfg.cache_dir = cache;
    }
    cfg
}

fn run_suite(suite: Suite, cfg: &Config) -> Report {
    let chartab_cfg = Config {
        max_order: u128::MAX,
        ..cfg.clone()
    };
    match suite {
        Suite::Thm1 => harness::verify_theorem1(cfg, &cfg.entries()),
        Suite::Thm2 => harness::verify_theorem2(cfg, &cfg.entries()),
        Suite::Thm3 => harness::verify_theorem3(&chartab_cfg, &full_catalog()),
        Suite::Thm4 => harness::verify_theorem4(&chartab_cfg, &full_catalog()),
        Suite::Table1 => harness::verify_table1(cfg),
        Suite::Lemma72 => harness::verify_lemma72(cfg),
        Suite::Lemma81 => harness::verify_lemma81(cfg),
        Suite::Autorbits => harness::verify_autorbits(cfg, &cfg.entries()),
    }
}

fn parse_grid(spec: &str) -> Result<Vec<u64>> {
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u64 = lo.trim().parse().context("grid start")?;
        let hi: u64 = hi.trim().parse().context("grid end")?;
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .map(|x| {
            x.trim()
                .parse::<u64>()
                .with_context(|| format!("grid value `{x}`"))
        })
        .collect()
}

fn bound(claim: &Claim, grid: Option<&str>) -> Result<(bool, serde_json::Value)> {
    let points = match grid {
        Some(g) => Some(
            parse_grid(g)?
                .into_iter()
                .filter(|&q| claim.inequality.sides(q).is_ok())
                .collect::<Vec<_>>(),
        ),
        None => None,
    };
    let r = grid_certify(claim, points.as_deref())?;
    let status = if r.matches { "PASS" } else { "FAIL" };
    println!(
        "{status}  {}  exceptions={:?} expected={:?} undecided={:?}",
        r.claim_id, r.exceptions, r.expected, r.undecided
    );
    println!("      anchor: \"{}\"", r.anchor);
    if let Some(n) = &r.note {
        println!("      tail: {n}");
    }
    Ok((r.matches, serde_json::to_value(&r)?))
}

fn run() -> Result<bool> {
    let cli = Cli::parse();
    match cli.command {
        Command::Catalog {
            action: CatalogAction::List { all },
        } => {
            let entries = if all {
                full_catalog()
            } else {
                default_catalog()
            };
            println!(
                "{:<18} {:<12} {:>10} {:>6}  flags",
                "entry", "name", "order", "degree"
            );
            for e in entries {
                let i = e.info();
                let mut flags = Vec::new();
                if i.simple {
                    flags.push("simple");
                }
                if i.solvable {
                    flags.push("solvable");
                }
                if i.full_aut {
                    flags.push("full-aut");
                }
                println!(
                    "{:<18} {:<12} {:>10} {:>6}  {}",
                    i.id,
                    i.name,
                    i.order,
                    i.degree,
                    flags.join(",")
                );
            }
            Ok(true)
        }
        Command::Classes {
            entry,
            cache,
            extended,
        } => {
            let cfg = config(extended, None, cache);
            let e: CatalogEntry = entry.parse()?;
            let built = e.build()?;
            let t = cfg.class_table(&built)?;
            println!(
                "{e}: order {}, {} classes, exponent {}",
                t.group_order(),
                t.len(),
                t.exponent()
            );
            println!("{:>5} {:>7} {:>10}  cycle type", "class", "order", "size");
            for (i, c) in t.classes().iter().enumerate() {
                let mut lens = c.rep.cycle_lengths();
                lens.retain(|&l| l > 1);
                let ty: Vec<String> = lens.iter().map(usize::to_string).collect();
                println!(
                    "{i:>5} {:>7} {:>10}  {}",
                    c.order,
                    c.size,
                    if ty.is_empty() {
                        "1".into()
                    } else {
                        ty.join(" ")
                    }
                );
            }
            Ok(true)
        }
        Command::Verify {
            suite,
            extended,
            max_order,
            json,
            cache,
        } => {
            let cfg = config(extended, max_order, cache);
            let report = run_suite(suite, &cfg);
            print!(
                "{}",
                String::from_utf8_lossy(&emit_report(&report, Format::Text))
            );
            if let Some(path) = json {
                std::fs::write(&path, emit_report(&report, Format::Json))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            Ok(report.passed())
        }
        Command::Bound {
            claim,
            grid,
            claims,
            json,
        } => {
            let all = match &claims {
                Some(p) => load_claims(p)?,
                None => default_claims(),
            };
            let chosen: Vec<Claim> = if claim == "all" {
                all
            } else if claims.is_some() {
                all.into_iter().filter(|c| c.id == claim).collect()
            } else {
                vec![find_claim(&claim)?]
            };
            if chosen.is_empty() {
                bail!("no claim named `{claim}`");
            }
            let mut ok = true;
            let mut reports = Vec::new();
            for c in &chosen {
                let (m, v) = bound(c, grid.as_deref())?;
                ok &= m;
                reports.push(v);
            }
            if let Some(path) = json {
                std::fs::write(&path, serde_json::to_vec_pretty(&reports)?)?;
            }
            Ok(ok)
        }
        Command::Chartab { entry, p } => {
            let cfg = Config::from_env();
            let e: CatalogEntry = entry.parse()?;
            let built = e.build()?;
            let t = cfg.class_table(&built)?;
            if factorize(t.group_order()).primes().all(|q| q != p) {
                bail!("{p} does not divide |G| = {}", t.group_order());
            }
            let table: CharacterTable = cfg.character_table(&built, &t)?;
            let b = brauer_cross_check(&t, &table)?;
            let counts = table.character_counts(p)?;
            let cc = class_counts(&t, p)?;
            println!(
                "{e}: {} characters, degrees {:?}",
                table.len(),
                table.degrees
            );
            println!("Galois elements checked: {}", b.galois_elements);
            println!(
                "p-rational {}  p'-rational {}  union {}  rational {}",
                counts.p_rational, counts.p_prime_rational, counts.union, counts.rational
            );
            println!("k_p {}  k_p' {}", cc.k_p, cc.k_p_prime);
            println!("union vs 2√(p−1): {}", counts.union_vs_threshold);
            Ok(counts.union_vs_threshold != Verdict::Less)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
