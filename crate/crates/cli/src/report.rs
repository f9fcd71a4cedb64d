//! Deterministic report assembly and serialization.
//!
//! Suites produce ordered claim lists; the report renders them as plain
//! text or JSON with a fixed field order, so identical configurations give
//! byte-identical output.

use serde::{Deserialize, Serialize};

use qwitt_core::ssets::{Claim, ClaimStatus};
use qwitt_core::QMode;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClaimOut {
    pub id: String,
    pub status: String,
    pub evidence: String,
}

impl From<&Claim> for ClaimOut {
    fn from(c: &Claim) -> Self {
        ClaimOut {
            id: c.id.clone(),
            status: c.status.to_string(),
            evidence: c.evidence.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub s: i64,
    pub qmode: String,
    pub claims: Vec<ClaimOut>,
}

impl Report {
    pub fn new(s: i64, qmode: &QMode, claims: &[Claim]) -> Report {
        Report {
            s,
            qmode: qmode.to_string(),
            claims: claims.iter().map(ClaimOut::from).collect(),
        }
    }

    pub fn refuted(&self) -> bool {
        self.claims.iter().any(|c| c.status == "refuted")
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        for c in &self.claims {
            out.push_str(&format!("[{}] {}: {}\n", c.status, c.id, c.evidence));
        }
        let verified = self
            .claims
            .iter()
            .filter(|c| c.status == "verified")
            .count();
        let skipped = self.claims.iter().filter(|c| c.status == "skipped").count();
        let refuted = self.claims.iter().filter(|c| c.status == "refuted").count();
        out.push_str(&format!(
            "{}: {verified} verified, {skipped} skipped, {refuted} refuted\n",
            if refuted == 0 { "ok" } else { "FAILED" }
        ));
        out
    }
}

/// Convenience constructors for suite claims.
pub fn verified(id: &str, evidence: String) -> Claim {
    Claim::new(id, ClaimStatus::Verified, evidence)
}

pub fn refuted(id: &str, evidence: String) -> Claim {
    Claim::new(id, ClaimStatus::Refuted, evidence)
}

pub fn skipped(id: &str, evidence: String) -> Claim {
    Claim::new(id, ClaimStatus::Skipped, evidence)
}

/// Build one claim from a checked case count or a counterexample.
pub fn claim_from_check(id: &str, failure: Option<String>, ok_evidence: String) -> Claim {
    match failure {
        None => verified(id, ok_evidence),
        Some(ev) => refuted(id, ev),
    }
}
