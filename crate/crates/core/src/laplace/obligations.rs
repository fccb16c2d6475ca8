//! The obligation ledger: one entry per side condition of the ODE/TF
//! correspondence theorems, each tagged with how (or whether) it was
//! discharged.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::exactnum::{format_numeral, ExactScalar};

/// Identifier of the algebraic-identity entry (the theorem conclusion,
/// checked by exact cross-multiplication).
pub const ALGEBRAIC_ID: &str = "A-alg";
/// Identifier of the simulation cross-check entry.
pub const NUMERIC_ID: &str = "N-sim";
/// Version tag of the structured report format.
pub const REPORT_SCHEMA: &str = "fasim.report/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ObligationStatus {
    VerifiedExact,
    CheckedNumeric,
    EmittedAssumption,
    Failed,
}

impl ObligationStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::VerifiedExact => "VerifiedExact",
            Self::CheckedNumeric => "CheckedNumeric",
            Self::EmittedAssumption => "EmittedAssumption",
            Self::Failed => "Failed",
        }
    }
}

impl fmt::Display for ObligationStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Obligation {
    pub id: String,
    pub description: String,
    pub status: ObligationStatus,
    pub detail: String,
}

/// Which correspondence theorem a ledger instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TheoremTemplate {
    /// ODE implies the transfer-function ratio (assumptions A1..A8).
    TfFromOde,
    /// Transfer-function ratio on a half-plane implies the ODE (A1..A9).
    OdeFromTf,
}

impl TheoremTemplate {
    pub fn as_str(&self) -> &'static str {
        match self {
            Self::TfFromOde => "tf_from_ode",
            Self::OdeFromTf => "ode_from_tf",
        }
    }

    pub fn assumption_count(&self) -> usize {
        match self {
            Self::TfFromOde => 8,
            Self::OdeFromTf => 9,
        }
    }

    pub fn tactic(&self) -> &'static str {
        match self {
            Self::TfFromOde => "DIFF_EQ_2_TRANS_FUN_TAC",
            Self::OdeFromTf => "TRANS_FUN_2_DIFF_EQ_TAC",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ObligationReport {
    pub theorem: TheoremTemplate,
    obligations: Vec<Obligation>,
    /// Abscissa bound: every `s` with `Re s >= sigma0` lies right of all
    /// poles. `None` when the poles could not be located.
    pub sigma0: Option<f64>,
    /// Common scale `c` with `(in, out) = c * (num, den)`, when the ODE and
    /// transfer-function coefficient lists are proportional.
    pub scale: Option<ExactScalar>,
    pub notes: Vec<String>,
}

impl ObligationReport {
    pub fn new(theorem: TheoremTemplate) -> Self {
        Self {
            theorem,
            obligations: Vec::new(),
            sigma0: None,
            scale: None,
            notes: Vec::new(),
        }
    }

    /// Adds an entry, replacing any previous entry with the same id.
    pub fn record(
        &mut self,
        id: &str,
        description: impl Into<String>,
        status: ObligationStatus,
        detail: impl Into<String>,
    ) {
        let entry = Obligation {
            id: id.to_string(),
            description: description.into(),
            status,
            detail: detail.into(),
        };
        match self.obligations.iter_mut().find(|o| o.id == id) {
            Some(existing) => *existing = entry,
            None => self.obligations.push(entry),
        }
    }

    pub fn obligations(&self) -> &[Obligation] {
        &self.obligations
    }

    pub fn get(&self, id: &str) -> Option<&Obligation> {
        self.obligations.iter().find(|o| o.id == id)
    }

    pub fn status(&self, id: &str) -> Option<ObligationStatus> {
        self.get(id).map(|o| o.status)
    }

    /// Ids of the form `A<k>`; the theorem's hypotheses.
    pub fn assumption_ids(&self) -> Vec<&str> {
        self.obligations
            .iter()
            .map(|o| o.id.as_str())
            .filter(|id| id.strip_prefix('A').is_some_and(|k| k.parse::<u32>().is_ok()))
            .collect()
    }

    pub fn first_failure(&self) -> Option<&Obligation> {
        self.obligations
            .iter()
            .find(|o| o.status == ObligationStatus::Failed)
    }

    pub fn passed(&self) -> bool {
        self.first_failure().is_none()
    }

    /// Structured form; see the README for the schema.
    pub fn to_json(&self) -> Value {
        json!({
            "schema": REPORT_SCHEMA,
            "theorem": self.theorem.as_str(),
            "tactic": self.theorem.tactic(),
            "sigma0": self.sigma0,
            "scale": self.scale.as_ref().map(format_numeral),
            "passed": self.passed(),
            "obligations": self.obligations,
            "notes": self.notes,
        })
    }
}

impl fmt::Display for ObligationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "obligation ledger ({}, {})",
            self.theorem.as_str(),
            self.theorem.tactic()
        )?;
        for o in &self.obligations {
            writeln!(f, "  {:<6} {:<18} {}", o.id, o.status.as_str(), o.description)?;
            if !o.detail.is_empty() {
                writeln!(f, "         {}", o.detail)?;
            }
        }
        match self.sigma0 {
            Some(s) => writeln!(f, "  sigma0 = {s}")?,
            None => writeln!(f, "  sigma0 = unavailable")?,
        }
        if let Some(c) = &self.scale {
            writeln!(f, "  common scale = {}", format_numeral(c))?;
        }
        for note in &self.notes {
            writeln!(f, "  note: {note}")?;
        }
        Ok(())
    }
}
