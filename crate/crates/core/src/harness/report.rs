//! Versioned verification reports with JSON and text renderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::Config;
use crate::error::{Error, Result};
use crate::VERSION;

pub const SCHEMA_VERSION: u32 = 1;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// Stated in the published text.
    Published,
    /// Computed by an independent method.
    Derived,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CaseVerdict {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub value: Value,
    pub source: Source,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Case {
    pub id: String,
    pub group: String,
    pub p: Option<u64>,
    pub computed: BTreeMap<String, Value>,
    pub expected: Option<Expected>,
    pub verdict: CaseVerdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Case {
    pub fn new(id: impl Into<String>, group: impl Into<String>, p: Option<u64>) -> Self {
        Case {
            id: id.into(),
            group: group.into(),
            p,
            computed: BTreeMap::new(),
            expected: None,
            verdict: CaseVerdict::Pass,
            detail: None,
        }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.computed.insert(
            key.to_string(),
            serde_json::to_value(value).unwrap_or(Value::Null),
        );
        self
    }

    pub fn expect(mut self, value: impl Serialize, source: Source) -> Self {
        self.expected = Some(Expected {
            value: serde_json::to_value(value).unwrap_or(Value::Null),
            source,
        });
        self
    }

    pub fn check(mut self, ok: bool) -> Self {
        if !ok {
            self.verdict = CaseVerdict::Fail;
        }
        self
    }

    pub fn note(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn skip(
        id: impl Into<String>,
        group: impl Into<String>,
        p: Option<u64>,
        why: impl Into<String>,
    ) -> Self {
        let mut c = Case::new(id, group, p).note(why);
        c.verdict = CaseVerdict::Skip;
        c
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    pub class_cap: u64,
    pub max_order: u128,
    pub extended: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Meta {
    pub version: String,
    pub caps: Caps,
    pub duration_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub suite: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
    pub meta: Meta,
}

impl Report {
    pub fn new(suite: &str, cases: Vec<Case>, cfg: &Config, started: Instant) -> Self {
        let mut summary = Summary::default();
        for c in &cases {
            match c.verdict {
                CaseVerdict::Pass => summary.pass += 1,
                CaseVerdict::Fail => summary.fail += 1,
                CaseVerdict::Skip => summary.skip += 1,
            }
        }
        Report {
            schema_version: SCHEMA_VERSION,
            suite: suite.to_string(),
            cases,
            summary,
            meta: Meta {
                version: VERSION.to_string(),
                caps: Caps {
                    class_cap: cfg.cap,
                    max_order: cfg.max_order,
                    extended: cfg.extended,
                },
                duration_ms: started.elapsed().as_millis() as u64,
            },
        }
    }

    /// True when no asserted case failed; skipped cases do not count against it.
    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn case(&self, id: &str) -> Option<&Case> {
        self.cases.iter().find(|c| c.id == id)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

pub fn emit_report(report: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(report).expect("reports serialize");
            v.push(b'\n');
            v
        }
        Format::Text => render_text(report).into_bytes(),
    }
}

pub fn parse_report(bytes: &[u8]) -> Result<Report> {
    let r: Report =
        serde_json::from_slice(bytes).map_err(|e| Error::invalid(format!("report: {e}")))?;
    if r.schema_version != SCHEMA_VERSION {
        return Err(Error::invalid(format!(
            "report schema {} is not {SCHEMA_VERSION}",
            r.schema_version
        )));
    }
    Ok(r)
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render_text(r: &Report) -> String {
    let mut s = String::new();
    let width = r
        .cases
        .iter()
        .map(|c| c.id.chars().count())
        .max()
        .unwrap_or(0)
        .max(8);
    for c in &r.cases {
        let tag = match c.verdict {
            CaseVerdict::Pass => "PASS",
            CaseVerdict::Fail => "FAIL",
            CaseVerdict::Skip => "SKIP",
        };
        let computed: Vec<String> = c
            .computed
            .iter()
            .map(|(k, v)| format!("{k}={}", compact(v)))
            .collect();
        write!(s, "{tag}  {:<width$}  {}", c.id, computed.join(" ")).unwrap();
        if let Some(e) = &c.expected {
            let src = match e.source {
                Source::Published => "published",
                Source::Derived => "derived",
            };
            write!(s, "  expected={} ({src})", compact(&e.value)).unwrap();
        }
        if let Some(d) = &c.detail {
            write!(s, "  # {d}").unwrap();
        }
        s.push('\n');
    }
    writeln!(
        s,
        "{}: {} pass, {} fail, {} skip ({} ms)",
        r.suite, r.summary.pass, r.summary.fail, r.summary.skip, r.meta.duration_ms
    )
    .unwrap();
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_and_round_trip() {
        let cfg = Config::default();
        let r = Report::new("empty", vec![], &cfg, Instant::now());
        assert_eq!(r.summary, Summary::default());
        assert!(r.passed());
        assert_eq!(parse_report(&emit_report(&r, Format::Json)).unwrap(), r);

        let cases = vec![
            Case::new("a/p=5", "a", Some(5))
                .with("k", 3)
                .expect(3, Source::Published),
            Case::new("b", "b", None)
                .with("verdict", "less")
                .check(false),
            Case::skip("c", "c", None, "too large"),
        ];
        let r = Report::new("mixed", cases, &cfg, Instant::now());
        assert_eq!(
            r.summary,
            Summary {
                pass: 1,
                fail: 1,
                skip: 1
            }
        );
        assert!(!r.passed());
        assert_eq!(parse_report(&emit_report(&r, Format::Json)).unwrap(), r);
        let text = String::from_utf8(emit_report(&r, Format::Text)).unwrap();
        assert!(text.contains("FAIL  b"));
        assert!(text.ends_with("(0 ms)\n") || text.contains("1 fail"));
    }
}
