//! The structured report every command produces.

use horikawa_core::catalog::{
    AdmissiblePair, Assumptions, ComponentInfo, ConstructionRecipe, EpsilonRecord, StableConstruction,
};
use horikawa_core::stable::SingularityLedger;
use horikawa_core::verify::VerificationReport;
use serde::{Deserialize, Serialize};

use crate::scenario::CommandSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Failed,
}

/// Which operation produced a reported number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrailEntry {
    pub quantity: String,
    pub value: String,
    pub operation: String,
}

impl TrailEntry {
    pub fn new(quantity: &str, value: impl ToString, operation: &str) -> Self {
        TrailEntry { quantity: quantity.into(), value: value.to_string(), operation: operation.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionEntry {
    pub name: String,
    pub verified: bool,
    pub ledger: SingularityLedger,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineEntry {
    pub k_squared: i64,
    pub component_count: u8,
    pub constructions: Vec<ConstructionEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationRow {
    pub chi: i64,
    /// `K² = 2χ - 6`, when admissible.
    pub horikawa_line: Option<LineEntry>,
    /// `K² = 2χ - 5`, when the stable construction applies.
    pub stable_line: Option<ConstructionLine>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionLine {
    pub k_squared: i64,
    pub construction: ConstructionEntry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Classification {
        pair: AdmissiblePair,
        admissible: bool,
        on_line: bool,
        info: Option<ComponentInfo>,
        explanation: String,
    },
    Construction {
        recipe: Box<ConstructionRecipe>,
    },
    Stable {
        construction: Box<StableConstruction>,
    },
    Epsilon {
        record: EpsilonRecord,
    },
    Enumeration {
        rows: Vec<EnumerationRow>,
    },
    Verification {
        report: VerificationReport,
    },
    Error {
        message: String,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub command: CommandSpec,
    pub assumptions: Assumptions,
    pub status: Status,
    pub payload: Payload,
    pub trail: Vec<TrailEntry>,
    /// The identities the run relies on.
    pub references: Vec<String>,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Ok => 0,
            Status::Failed => 1,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}
