use serde::Serialize;

use super::{Excluded, Outcome, RunConfig, Tier, Verdict, VerificationReport};

pub const SCHEMA_VERSION: u32 = 1;

/// Run metadata that legitimately differs between identical runs; compare
/// reports with [`RunReport::comparable`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Header {
    pub generator: String,
    pub generated_unix: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub entries: usize,
    pub textual_pass: usize,
    pub textual_fail: usize,
    pub reconstructed_pass: usize,
    pub failed_reconstruction: usize,
    pub controls_failed: usize,
    pub controls_passed: usize,
    pub pass_vacuous: usize,
    pub excluded: usize,
    pub outcome: Outcome,
}

impl Summary {
    pub fn of(entries: &[VerificationReport], excluded: usize) -> Self {
        let count = |tier: Tier, v: Verdict| {
            entries
                .iter()
                .filter(|e| e.tier == tier && e.verdict == v)
                .count()
        };
        Self {
            entries: entries.len(),
            textual_pass: count(Tier::Textual, Verdict::Pass),
            textual_fail: count(Tier::Textual, Verdict::Fail),
            reconstructed_pass: count(Tier::Reconstructed, Verdict::Pass),
            failed_reconstruction: count(Tier::Reconstructed, Verdict::FailedReconstruction),
            controls_failed: count(Tier::Control, Verdict::Fail),
            controls_passed: count(Tier::Control, Verdict::Pass),
            pass_vacuous: entries.iter().filter(|e| e.verdict == Verdict::PassVacuous).count(),
            excluded,
            outcome: Outcome::of(entries),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema: u32,
    pub header: Header,
    pub config: RunConfig,
    pub entries: Vec<VerificationReport>,
    pub excluded: Vec<Excluded>,
    pub summary: Summary,
}

impl RunReport {
    pub fn new(
        config: RunConfig,
        entries: Vec<VerificationReport>,
        excluded: Vec<Excluded>,
        generated_unix: Option<u64>,
    ) -> Self {
        let summary = Summary::of(&entries, excluded.len());
        Self {
            schema: SCHEMA_VERSION,
            header: Header {
                generator: concat!("isodyn ", env!("CARGO_PKG_VERSION")).to_string(),
                generated_unix,
            },
            config,
            entries,
            excluded,
            summary,
        }
    }

    pub fn outcome(&self) -> Outcome {
        self.summary.outcome
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The report with the header cleared, for byte comparison.
    pub fn comparable(&self) -> String {
        let mut r = self.clone();
        r.header.generated_unix = None;
        r.to_json()
    }
}
