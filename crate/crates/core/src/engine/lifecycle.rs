//! Report lifecycle graph.
//!
//! ```text
//! Submitted ──> VendorValidated ──> Distributed ──> AwaitingVerdicts ──> Decided ──> Settled
//!     │               │                  │                                 ^
//!     │               └──────────────────┴─────────────────────────────────┤
//!     ├──> ClosedDuplicate                                                 │
//!     ├──> ClosedOutOfScope                                                │
//!     └──> Decided(Escalated)   (critical out-of-scope finding) ───────────┘
//! ```
//!
//! `VendorValidated -> Decided` is the in-house path of the direct and
//! platform variants (and the fallback when no verifier panel can be formed);
//! `Distributed -> Decided` happens when every verifier slot expired.
//! `RejectedAtGate` is an initial and terminal state.

use crate::domain::{DecisionKind, LifecycleState};

pub fn can_transition(from: &LifecycleState, to: &LifecycleState) -> bool {
    use LifecycleState::*;
    match (from, to) {
        (Submitted, VendorValidated | ClosedDuplicate { .. } | ClosedOutOfScope) => true,
        (Submitted, Decided { decision }) => decision.kind == DecisionKind::Escalated,
        (VendorValidated, Distributed | Decided { .. }) => true,
        (Distributed, AwaitingVerdicts | Decided { .. }) => true,
        (AwaitingVerdicts, Decided { .. }) => true,
        (Decided { decision: a }, Settled { decision: b }) => a == b,
        _ => false,
    }
}
