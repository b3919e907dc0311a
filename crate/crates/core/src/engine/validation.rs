//! Vendor-side triage: duplicate and scope checks.

use serde::{Deserialize, Serialize};

use crate::domain::{DecisionKind, Fingerprint, LifecycleState, Severity, ValidationOutcome};
use crate::ids::ReportId;
use crate::state::{ProgramState, WorldState};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ValidationMode {
    Enabled,
    /// Forward every report to the verifier crowd untouched.
    Skipped,
}

fn anchors_duplicates(state: &LifecycleState, retain_dismissed: bool) -> bool {
    match state {
        LifecycleState::RejectedAtGate { .. } | LifecycleState::ClosedOutOfScope => false,
        LifecycleState::Decided { decision } | LifecycleState::Settled { decision } => {
            retain_dismissed || decision.kind != DecisionKind::DismissedWithReasoning
        }
        _ => true,
    }
}

/// Earliest report submitted before `before` with fingerprint `fp`, first
/// come first served. Gate-rejected and out-of-scope reports never anchor a
/// duplicate; dismissed ones only when `retain_dismissed` is set.
pub fn duplicate_check(
    world: &WorldState,
    fp: &Fingerprint,
    before: Option<ReportId>,
    retain_dismissed: bool,
) -> Option<ReportId> {
    world
        .reports_with_fingerprint(fp)
        .iter()
        .copied()
        .take_while(|id| before.is_none_or(|b| *id < b))
        .find(|id| anchors_duplicates(&world.reports[id.index()].report.state, retain_dismissed))
}

/// Outcome of an enabled validation pass: duplicate first, then scope.
pub fn classify(
    world: &WorldState,
    program: &ProgramState,
    report_id: ReportId,
    fp: &Fingerprint,
    severity: Severity,
    retain_dismissed: bool,
) -> ValidationOutcome {
    if let Some(original) = duplicate_check(world, fp, Some(report_id), retain_dismissed) {
        return ValidationOutcome::Duplicate { original };
    }
    if !program.asset_in_scope(fp.asset_token()) {
        return if severity == Severity::Critical {
            ValidationOutcome::EscalateCriticalOutOfScope
        } else {
            ValidationOutcome::OutOfScope
        };
    }
    ValidationOutcome::Forward
}
