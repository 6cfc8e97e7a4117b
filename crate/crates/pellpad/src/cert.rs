//! Serialisable certificate types shared by the CLI and the test suite.
//!
//! A certificate records every bound-producing step of a family's pipeline
//! run so that an auditor can replay the chain offline. All large integers
//! are decimal strings (values exceed 10^165).

use crate::pell::Family;
use crate::pipeline::{AbsoluteBounds, FinalReduction, FirstReduction};
use crate::search::TheoremReport;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Schema version of the certificate format.
pub const CERT_VERSION: &str = "1";

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub version: String,
    pub tool: String,
    pub family: Family,
    /// Precision (bits) the fixed-precision stages ran at; adaptive stages
    /// record their own retries implicitly.
    pub base_precision_bits: u32,
    pub absolute: AbsoluteBounds,
    pub first_reduction: FirstReduction,
    pub final_reduction: FinalReduction,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem_report: Option<TheoremReport>,
}

impl Certificate {
    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string_pretty(self)
            .map_err(|e| Error::Usage(format!("certificate serialisation: {e}")))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Usage(format!("certificate parse: {e}")))
    }

    /// Re-verify the recorded stage flags (round-trip check).
    pub fn verify(&self) -> Vec<(String, bool)> {
        let mut out = Vec::new();
        for st in &self.absolute.stages {
            out.push((format!("absolute/{}", st.label), st.ok));
        }
        for (i, cy) in self.first_reduction.cycles.iter().enumerate() {
            out.push((
                format!("cycle{}/legendre", i + 1),
                cy.legendre.matches_anchor,
            ));
            out.push((
                format!("cycle{}/gamma4", i + 1),
                cy.gamma4.cutoff_reported <= cy.gamma4.cutoff_anchor,
            ));
            out.push((format!("cycle{}/n2_next", i + 1), cy.n2_next.ok));
        }
        out.push((
            "final/n2".to_string(),
            self.final_reduction.n2_final <= self.final_reduction.n2_anchor,
        ));
        if let Some(tr) = &self.theorem_report {
            out.push(("theorems".to_string(), tr.all_ok()));
        }
        out
    }
}

/// Build a certificate from freshly computed pipeline stages.
pub fn build_certificate(
    family: Family,
    absolute: AbsoluteBounds,
    first_reduction: FirstReduction,
    final_reduction: FinalReduction,
    theorem_report: Option<TheoremReport>,
) -> Certificate {
    Certificate {
        version: CERT_VERSION.to_string(),
        tool: format!("pellpad {}", env!("CARGO_PKG_VERSION")),
        family,
        base_precision_bits: 320,
        absolute,
        first_reduction,
        final_reduction,
        theorem_report,
    }
}
