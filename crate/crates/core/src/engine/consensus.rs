//! Quorum aggregation of verifier verdicts.

use crate::domain::{Decision, DecisionKind, Tally};

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("tally {tally:?} inconsistent with quorum q={q}, k={k}")]
pub struct BadTally {
    pub tally: Tally,
    pub q: u32,
    pub k: u32,
}

/// Actionable if at least `q` reproduced, else dismissed if at least `q`
/// failed to reproduce, else escalated to the vendor. `CannotTest` counts
/// towards neither side.
pub fn aggregate_verdicts(tally: Tally, q: u32, k: u32) -> Result<Decision, BadTally> {
    if q == 0 || q > k || tally.total() != k {
        return Err(BadTally { tally, q, k });
    }
    let kind = if tally.reproduced >= q {
        DecisionKind::Actionable
    } else if tally.not_reproduced >= q {
        DecisionKind::DismissedWithReasoning
    } else {
        DecisionKind::Escalated
    };
    Ok(Decision { kind, tally })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let d = aggregate_verdicts(Tally::new(2, 1, 0), 2, 3).unwrap();
        assert_eq!(d.kind, DecisionKind::Actionable);
        let d = aggregate_verdicts(Tally::new(0, 2, 1), 2, 3).unwrap();
        assert_eq!(d.kind, DecisionKind::DismissedWithReasoning);
        let d = aggregate_verdicts(Tally::new(1, 1, 1), 2, 3).unwrap();
        assert_eq!(d.kind, DecisionKind::Escalated);
        let d = aggregate_verdicts(Tally::new(0, 0, 3), 2, 3).unwrap();
        assert_eq!(d.kind, DecisionKind::Escalated, "full abstention escalates");
    }

    #[test]
    fn inconsistent_tallies() {
        assert!(aggregate_verdicts(Tally::new(1, 1, 0), 2, 3).is_err());
        assert!(aggregate_verdicts(Tally::new(1, 1, 1), 4, 3).is_err());
        assert!(aggregate_verdicts(Tally::new(1, 1, 1), 0, 3).is_err());
    }
}
