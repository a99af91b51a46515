//! Typed reports written to stdout.
//!
//! Every report is a self-describing document: it carries the `schema` tag
//! and round-trips through its own type (serialize then parse is the
//! identity on canonical form). Rejections always carry a structured
//! marker: a `violation` object, a `verdict`/`outcome` value naming the
//! rejection, or a check field set to `false`.

use crate::scenario::{PointDoc, PunctureDoc, SectionDoc, TermDoc};
use crate::wire::WireInt;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurgeryReport {
    pub schema: String,
    pub mult: WireInt,
    pub link: WireInt,
    pub period: WireInt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NatureReport {
    pub schema: String,
    pub nature: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessPairDoc {
    pub y: PointDoc,
    pub z: PointDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompleteReport {
    pub schema: String,
    pub complete: bool,
    /// Leaf pair with no intersection, present exactly when incomplete.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessPairDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LozengeDoc {
    pub corner1: PointDoc,
    pub corner2: PointDoc,
    pub lozenge_type: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LozengeReport {
    pub schema: String,
    /// `null` when the quadrant set is not a lozenge.
    pub lozenge: Option<LozengeDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DriftReport {
    pub schema: String,
    pub drift: WireInt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SumCheckReport {
    pub schema: String,
    pub curve_drift: WireInt,
    pub enclosed_sum: WireInt,
    pub accepted: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RandomCheckReport {
    pub schema: String,
    pub checked: u64,
    pub accepted: bool,
    /// Decimal seed of the ChaCha stream, from `AOC_SEED` when set.
    pub seed: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessReport {
    pub schema: String,
    /// `null` when the curve's drift is nonnegative.
    pub witness: Option<PunctureDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RectangleReport {
    pub schema: String,
    pub boundary_drift: WireInt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExponentReport {
    pub schema: String,
    pub exponent: WireInt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComposeReport {
    pub schema: String,
    /// `"defined"` or `"blow-up"`.
    pub outcome: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length: Option<Vec<TermDoc>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub per_period_max_exponent: Option<WireInt>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContractReport {
    pub schema: String,
    pub exponents: Vec<WireInt>,
    pub composed: Vec<TermDoc>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionSummary {
    pub name: String,
    pub sign: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidateReport {
    pub schema: String,
    pub sections: Vec<SectionSummary>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkEqReport {
    pub schema: String,
    pub residual: WireInt,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExcludeReport {
    pub schema: String,
    /// `"incompatible"` or `"no-verdict"`.
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reasons: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientDoc {
    pub orbit: String,
    pub k: WireInt,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PositivizeReport {
    pub schema: String,
    pub coefficients: Vec<CoefficientDoc>,
    pub section: SectionDoc,
    pub nature: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViolationDoc {
    pub kind: String,
    pub message: String,
}

/// Report for exit code 1 when a precondition or domain constraint fails.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViolationReport {
    pub schema: String,
    pub violation: ViolationDoc,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorDoc {
    pub kind: String,
    pub message: String,
}

/// Report for exit code 2 when the input itself cannot be understood.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErrorReport {
    pub schema: String,
    pub error: ErrorDoc,
}
