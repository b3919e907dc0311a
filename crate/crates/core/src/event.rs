//! Append-only event ledger.
//!
//! Every change to the world goes through an [`Event`]. The log is ordered by
//! `(tick, seq)`; ticks never go backwards and `seq` is the position in the
//! log. On disk the log is one JSON object per line.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{
    BadgeId, CertificateTier, Decision, DecisionKind, HackerProfile, Performer, ProcessVariant, Program, Report,
    RewardEvent, ValidationOutcome, Verdict, VerificationAssignment,
};
use crate::ids::{AssignmentId, HackerId, ProgramId, ReportId, TeamId, Tick, VulnId};

#[derive(Debug, Error)]
pub enum LedgerError {
    #[error("event at tick {tick} appended after tick {last}")]
    OutOfOrderTick { tick: Tick, last: Tick },
    #[error("event sequence {found} where {expected} was expected")]
    BadSequence { expected: u64, found: u64 },
    #[error("corrupt event on line {line}: {message}")]
    CorruptEvent { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Actor {
    System,
    Vendor,
    Platform,
    Hacker(HackerId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CorrespondenceReason {
    /// Report lacked detail; the vendor asked the hacker for more.
    RequestDetails,
    /// Vendor told the hacker the outcome.
    Outcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EngagementCause {
    Triggers,
    Onboarding,
    RoundNumberHazard,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EventKind {
    RunStarted {
        seed: u64,
        horizon: Tick,
        variant: ProcessVariant,
        /// Resolved run configuration, opaque to the engine.
        #[serde(default)]
        params: serde_json::Value,
    },
    ProgramRegistered {
        program: Program,
    },
    HackerRegistered {
        profile: HackerProfile,
    },
    ProgramLaunched {
        program_id: ProgramId,
    },
    ScopeStageActivated {
        program_id: ProgramId,
        stage: u32,
        fraction: f64,
    },
    EventWindowOpened {
        program_id: ProgramId,
        multiplier: f64,
    },
    PurposeBroadcast {
        program_id: ProgramId,
    },
    TeamJoined {
        hacker_id: HackerId,
        team_id: TeamId,
    },
    HuntAttempted {
        hacker_id: HackerId,
        program_id: ProgramId,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        found: Option<VulnId>,
    },
    ReportSubmitted {
        report: Report,
    },
    SubmissionRejected {
        report: Report,
    },
    ReportValidated {
        report_id: ReportId,
        performer: Performer,
        outcome: ValidationOutcome,
    },
    PlatformFeeCharged {
        program_id: ProgramId,
        report_id: ReportId,
        amount: f64,
    },
    VendorCorrespondence {
        report_id: ReportId,
        reason: CorrespondenceReason,
    },
    InHouseScheduled {
        report_id: ReportId,
        performer: Performer,
        due: Tick,
    },
    VerifiersAssigned {
        report_id: ReportId,
        assignments: Vec<VerificationAssignment>,
    },
    VerifierReassigned {
        assignment: VerificationAssignment,
    },
    AssignmentExpired {
        assignment_id: AssignmentId,
    },
    VerdictRecorded {
        assignment_id: AssignmentId,
        verdict: Verdict,
    },
    InHouseVerified {
        report_id: ReportId,
        performer: Performer,
        verdict: Verdict,
    },
    ReportDecided {
        report_id: ReportId,
        decision: Decision,
    },
    RewardIssued {
        reward: RewardEvent,
    },
    ReportSettled {
        report_id: ReportId,
    },
    /// The vendor's ruling on an escalated report after its own verification.
    VendorOverride {
        report_id: ReportId,
        decision: DecisionKind,
    },
    BudgetExhausted {
        program_id: ProgramId,
        report_id: ReportId,
        required: f64,
        remaining: f64,
    },
    BadgeAwarded {
        hacker_id: HackerId,
        badge: BadgeId,
    },
    CertificateIssued {
        hacker_id: HackerId,
        tier: CertificateTier,
    },
    EngagementUpdated {
        hacker_id: HackerId,
        engagement: f64,
        cause: EngagementCause,
    },
    Leak {
        report_id: ReportId,
        verifier_id: HackerId,
    },
    RunFinished,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Event {
    pub seq: u64,
    pub tick: Tick,
    pub actor: Actor,
    pub event: EventKind,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EventLog {
    events: Vec<Event>,
}

impl EventLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Event> {
        self.events.iter()
    }

    pub fn last_tick(&self) -> Option<Tick> {
        self.events.last().map(|e| e.tick)
    }

    /// Appends a new event, stamping it with the next sequence number.
    /// Same-tick events are allowed and ordered by sequence.
    pub fn append(&mut self, tick: Tick, actor: Actor, event: EventKind) -> Result<&Event, LedgerError> {
        if let Some(last) = self.last_tick() {
            if tick < last {
                return Err(LedgerError::OutOfOrderTick { tick, last });
            }
        }
        let seq = self.events.len() as u64;
        self.events.push(Event {
            seq,
            tick,
            actor,
            event,
        });
        Ok(self.events.last().expect("just pushed"))
    }

    /// Appends an already-stamped event, e.g. one read back from disk.
    pub fn push(&mut self, event: Event) -> Result<(), LedgerError> {
        let expected = self.events.len() as u64;
        if event.seq != expected {
            return Err(LedgerError::BadSequence {
                expected,
                found: event.seq,
            });
        }
        if let Some(last) = self.last_tick() {
            if event.tick < last {
                return Err(LedgerError::OutOfOrderTick {
                    tick: event.tick,
                    last,
                });
            }
        }
        self.events.push(event);
        Ok(())
    }

    pub fn write_jsonl<W: Write>(&self, mut out: W) -> Result<(), LedgerError> {
        for e in &self.events {
            serde_json::to_writer(&mut out, e).map_err(std::io::Error::from)?;
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn to_jsonl(&self) -> String {
        let mut buf = Vec::new();
        self.write_jsonl(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("serde_json emits utf-8")
    }

    pub fn read_jsonl<R: BufRead>(input: R) -> Result<Self, LedgerError> {
        let mut log = EventLog::new();
        for (i, line) in input.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let event: Event = serde_json::from_str(&line).map_err(|e| LedgerError::CorruptEvent {
                line: i + 1,
                message: e.to_string(),
            })?;
            log.push(event)?;
        }
        Ok(log)
    }

    pub fn from_jsonl(s: &str) -> Result<Self, LedgerError> {
        Self::read_jsonl(s.as_bytes())
    }
}

impl<'a> IntoIterator for &'a EventLog {
    type Item = &'a Event;
    type IntoIter = std::slice::Iter<'a, Event>;

    fn into_iter(self) -> Self::IntoIter {
        self.events.iter()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn broadcast(p: u32) -> EventKind {
        EventKind::PurposeBroadcast {
            program_id: ProgramId(p),
        }
    }

    #[test]
    fn append_to_empty_log() {
        let mut log = EventLog::new();
        log.append(0, Actor::System, broadcast(0)).unwrap();
        assert_eq!(log.len(), 1);
        assert_eq!(log.events()[0].seq, 0);
    }

    #[test]
    fn same_tick_is_ordered_by_sequence() {
        let mut log = EventLog::new();
        log.append(5, Actor::System, broadcast(0)).unwrap();
        let before = log.events()[0].clone();
        log.append(5, Actor::System, broadcast(1)).unwrap();
        assert_eq!(log.len(), 2);
        assert_eq!(log.events()[0], before);
        assert_eq!(log.events()[1].seq, 1);
    }

    #[test]
    fn earlier_tick_is_rejected() {
        let mut log = EventLog::new();
        log.append(5, Actor::System, broadcast(0)).unwrap();
        let err = log.append(4, Actor::System, broadcast(0)).unwrap_err();
        assert!(matches!(err, LedgerError::OutOfOrderTick { tick: 4, last: 5 }));
        assert_eq!(log.len(), 1);
    }

    #[test]
    fn unknown_kind_is_corrupt() {
        let line = r#"{"seq":0,"tick":0,"actor":"system","event":{"kind":"teleported"}}"#;
        let err = EventLog::from_jsonl(line).unwrap_err();
        assert!(matches!(err, LedgerError::CorruptEvent { line: 1, .. }));
    }

    #[test]
    fn jsonl_round_trip_is_bit_exact() {
        let mut log = EventLog::new();
        log.append(0, Actor::System, broadcast(0)).unwrap();
        log.append(
            3,
            Actor::Hacker(HackerId(2)),
            EventKind::EngagementUpdated {
                hacker_id: HackerId(2),
                engagement: 0.1 + 0.2,
                cause: EngagementCause::Triggers,
            },
        )
        .unwrap();
        let text = log.to_jsonl();
        let back = EventLog::from_jsonl(&text).unwrap();
        assert_eq!(back, log);
        assert_eq!(back.to_jsonl(), text);
    }
}
