//! The property corpus: entries loaded from TOML, each a figure program
//! plus assertions, run over seeded random instances of a triangle class.

mod discover;
mod report;
mod runner;

use std::collections::BTreeSet;
use std::fmt;

use isodyn_core::kernel::RelationKind;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dsl::{parse, DslError, Program};
use crate::sampler::TriangleClass;

pub use discover::{discover, recheck, DiscoverConfig, DiscoverError, Relation, Term, MAX_CANDIDATES};
pub use report::{RunReport, Summary, SCHEMA_VERSION};
pub use runner::{
    id_order, run_all, run_entry, run_program, trial_seed, AssertionReport, FailureClass, Outcome,
    RejectedVariant, RunConfig, TrialCounts, Verdict, VerificationReport, NUMERICAL_BAND,
};

/// The shipped corpus.
pub const STANDARD_CATALOG: &str = include_str!("../../data/catalog.toml");

/// Deliberately broken entries, one per relation kind; every one must fail.
pub const NEGATIVE_CONTROLS: &str = include_str!("../../data/negative_controls.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    /// The statement is explicit in the source listing.
    Textual,
    /// The reading depends on a figure and was reconstructed.
    Reconstructed,
    /// A negative control.
    Control,
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Textual => "textual",
            Tier::Reconstructed => "reconstructed",
            Tier::Control => "control",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TolClass {
    Standard,
    /// Assertions that go through a least-squares fit (cubics).
    Fit,
}

impl TolClass {
    pub fn factor(self) -> f64 {
        match self {
            TolClass::Standard => 1.0,
            TolClass::Fit => 10.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssertionSpec {
    pub kind: RelationKind,
    pub call: String,
    pub tol: TolClass,
    pub anchor: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Variant {
    pub label: String,
    /// Construction program followed by the entry's assertions.
    pub program: Program,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CatalogEntry {
    pub id: String,
    pub title: String,
    pub tier: Tier,
    pub class: TriangleClass,
    pub assertions: Vec<AssertionSpec>,
    pub primary: Variant,
    /// Tried only if the primary variant fails; the report says which
    /// variant the verdict rests on.
    pub alternate: Option<Variant>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Excluded {
    pub id: String,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Catalog {
    pub entries: Vec<CatalogEntry>,
    pub excluded: Vec<Excluded>,
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog file: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("entry {id}: {message}")]
    Invalid { id: String, message: String },
    #[error("entry {id}, {variant} program: {source}")]
    Program {
        id: String,
        variant: String,
        source: DslError,
    },
    #[error("unknown entry `{0}`")]
    UnknownEntry(String),
    #[error("entry {id}: {message}")]
    Eval { id: String, message: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    #[serde(default)]
    entry: Vec<RawEntry>,
    #[serde(default)]
    excluded: Vec<RawExcluded>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    id: String,
    title: String,
    tier: Tier,
    class: String,
    program: String,
    #[serde(default = "primary_label")]
    label: String,
    alternate: Option<RawVariant>,
    #[serde(rename = "assert")]
    assertions: Vec<RawAssertion>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawVariant {
    label: String,
    program: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAssertion {
    call: String,
    #[serde(default = "standard")]
    tol: TolClass,
    anchor: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExcluded {
    id: String,
    reason: String,
}

fn primary_label() -> String {
    "primary".into()
}

fn standard() -> TolClass {
    TolClass::Standard
}

impl Catalog {
    pub fn parse(text: &str) -> Result<Self, CatalogError> {
        let raw: RawCatalog = toml::from_str(text)?;
        let mut ids = BTreeSet::new();
        let mut entries = Vec::new();
        for e in raw.entry {
            if !ids.insert(e.id.clone()) {
                return Err(invalid(&e.id, "duplicate id"));
            }
            entries.push(compile(e)?);
        }
        let mut excluded = Vec::new();
        for x in raw.excluded {
            if !ids.insert(x.id.clone()) {
                return Err(invalid(&x.id, "listed twice (or both run and excluded)"));
            }
            excluded.push(Excluded {
                id: x.id,
                reason: x.reason,
            });
        }
        Ok(Self { entries, excluded })
    }

    pub fn standard() -> Self {
        Self::parse(STANDARD_CATALOG).expect("shipped catalog is valid")
    }

    pub fn negative_controls() -> Self {
        Self::parse(NEGATIVE_CONTROLS).expect("shipped controls are valid")
    }

    pub fn get(&self, id: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.id.as_str())
    }
}

fn invalid(id: &str, message: impl Into<String>) -> CatalogError {
    CatalogError::Invalid {
        id: id.to_string(),
        message: message.into(),
    }
}

fn compile(e: RawEntry) -> Result<CatalogEntry, CatalogError> {
    let class: TriangleClass = e.class.parse().map_err(|m: String| invalid(&e.id, m))?;
    if e.assertions.is_empty() {
        return Err(invalid(&e.id, "no assertions"));
    }
    let mut assertions = Vec::new();
    for a in &e.assertions {
        let func = a.call.split('(').next().unwrap_or("").trim();
        let kind: RelationKind = func.parse().map_err(|m: String| invalid(&e.id, m))?;
        assertions.push(AssertionSpec {
            kind,
            call: a.call.trim().to_string(),
            tol: a.tol,
            anchor: a.anchor.trim().to_string(),
        });
    }
    let build = |label: &str, program: &str| -> Result<Variant, CatalogError> {
        let mut src = program.trim_end().to_string();
        for a in &assertions {
            src.push_str("\nassert ");
            src.push_str(&a.call);
        }
        let program = parse(&src).map_err(|source| CatalogError::Program {
            id: e.id.clone(),
            variant: label.to_string(),
            source,
        })?;
        if program.assertions().count() != assertions.len() {
            return Err(invalid(&e.id, "assertions belong in the assert table, not the program"));
        }
        Ok(Variant {
            label: label.to_string(),
            program,
        })
    };
    let primary = build(&e.label, &e.program)?;
    let alternate = match &e.alternate {
        Some(v) => Some(build(&v.label, &v.program)?),
        None => None,
    };
    Ok(CatalogEntry {
        id: e.id,
        title: e.title,
        tier: e.tier,
        class,
        assertions,
        primary,
        alternate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINI: &str = r#"
[[entry]]
id = "t-1"
title = "collinear"
tier = "textual"
class = "generic"
program = """
T := triangle()
O := center(T, 3)
G := center(T, 2)
H := center(T, 4)
"""
[[entry.assert]]
call = "collinear(O, G, H)"
anchor = "O, G, H on one line"

[[excluded]]
id = "t-2"
reason = "figure-only construction"
"#;

    #[test]
    fn parses_a_small_catalog() {
        let c = Catalog::parse(MINI).unwrap();
        assert_eq!(c.entries.len(), 1);
        assert_eq!(c.excluded.len(), 1);
        let e = c.get("t-1").unwrap();
        assert_eq!(e.assertions[0].kind, RelationKind::Collinear);
        assert_eq!(e.primary.program.assertions().count(), 1);
    }

    #[test]
    fn rejects_bad_entries() {
        let dup = format!("{MINI}\n[[excluded]]\nid = \"t-1\"\nreason = \"x\"\n");
        assert!(matches!(Catalog::parse(&dup), Err(CatalogError::Invalid { .. })));
        let bad = MINI.replace("collinear(O, G, H)", "collinear(O, G, Q)");
        assert!(matches!(Catalog::parse(&bad), Err(CatalogError::Program { .. })));
        let bad = MINI.replace("\"generic\"", "\"scalene\"");
        assert!(matches!(Catalog::parse(&bad), Err(CatalogError::Invalid { .. })));
        let bad = MINI.replace("tier = \"textual\"", "tier = \"folklore\"");
        assert!(matches!(Catalog::parse(&bad), Err(CatalogError::Toml(_))));
    }

    #[test]
    fn shipped_files_load() {
        let c = Catalog::standard();
        assert!(c.entries.iter().filter(|e| e.tier == Tier::Textual).count() >= 45);
        let n = Catalog::negative_controls();
        let kinds: BTreeSet<_> = n.entries.iter().flat_map(|e| e.assertions.iter().map(|a| a.kind)).collect();
        assert_eq!(kinds.len(), RelationKind::ALL.len());
    }
}
