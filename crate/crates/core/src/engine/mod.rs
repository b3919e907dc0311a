//! The disclosure protocol: submission, triage, crowd verification,
//! aggregation and settlement.
//!
//! [`Engine`] owns the event log and the state folded from it. Every
//! operation validates against the state, then emits events; nothing is
//! mutated any other way.

pub mod assignment;
pub mod consensus;
pub mod lifecycle;
pub mod settlement;
pub mod validation;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use assignment::{select_verifiers, InsufficientVerifiers, VerifierSelection};
pub use consensus::{aggregate_verdicts, BadTally};
pub use validation::{duplicate_check, ValidationMode};

use crate::domain::{
    Decision, DecisionKind, GateReason, LifecycleState, Performer, ProcessVariant, Report, ReportDraft,
    RewardEvent, Tally, ValidationOutcome, Verdict, VerdictKind, VerificationAssignment,
};
use crate::event::{Actor, CorrespondenceReason, Event, EventKind, EventLog, LedgerError};
use crate::gamify::{evaluate_badges, issue_certificate, GamifyError};
use crate::gates::{quality_score, rate_limit_check, signal_gate, QualityWeights, RatePolicy, SignalPolicy};
use crate::ids::{AssignmentId, HackerId, ProgramId, ReportId, Tick};
use crate::state::{ApplyError, WorldState};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("program {0} is not accepting reports")]
    ProgramInactive(ProgramId),
    #[error("unknown program {0}")]
    UnknownProgram(ProgramId),
    #[error("unknown hacker {0}")]
    UnknownHacker(HackerId),
    #[error("unknown report {0}")]
    UnknownReport(ReportId),
    #[error("unknown assignment {0}")]
    UnknownAssignment(AssignmentId),
    #[error("report {report_id} rejected at gate: {reason}")]
    GateRejected { reason: GateReason, report_id: ReportId },
    #[error("{op} not allowed while report {report_id} is {state:?}")]
    InvalidState {
        op: &'static str,
        report_id: ReportId,
        state: LifecycleState,
    },
    #[error(transparent)]
    InsufficientVerifiers(#[from] InsufficientVerifiers),
    #[error("assignment {0} already has a verdict")]
    AlreadyVerdicted(AssignmentId),
    #[error("assignment {0} is past its deadline")]
    DeadlineExpired(AssignmentId),
    #[error(transparent)]
    BadTally(#[from] BadTally),
    #[error("program {program_id} cannot pay {required:.2} from remaining {remaining:.2}")]
    BudgetExhausted {
        program_id: ProgramId,
        required: f64,
        remaining: f64,
    },
    #[error(transparent)]
    Ledger(#[from] LedgerError),
    #[error(transparent)]
    Apply(#[from] ApplyError),
    #[error(transparent)]
    Gamify(#[from] GamifyError),
}

/// Knobs of the protocol that are not properties of a single program.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProtocolRules {
    /// Vendor validation in the crowd-verified variant. The direct and
    /// platform variants always triage.
    pub validation: ValidationMode,
    /// Whether dismissed reports still anchor duplicate checks.
    pub retain_dismissed_fingerprints: bool,
    pub verification_deadline: Tick,
    pub selection: VerifierSelection,
    pub signal: SignalPolicy,
    pub rate: RatePolicy,
    pub quality_weights: QualityWeights,
    /// Flat fee per report the platform forwards to in-house verification.
    pub platform_fee: f64,
    pub vendor_turnaround: Tick,
    pub platform_turnaround: Tick,
    /// Reports scoring below this quality trigger a request for details in
    /// the direct variant.
    pub detail_request_quality: f64,
    pub points_enabled: bool,
    pub mastery_tiers: Vec<u32>,
    /// Escalated reports not yet seen in-house go to the vendor, whose
    /// ruling settles the reporter.
    pub vendor_override: bool,
}

impl Default for ProtocolRules {
    fn default() -> Self {
        Self {
            validation: ValidationMode::Enabled,
            retain_dismissed_fingerprints: true,
            verification_deadline: 72,
            selection: VerifierSelection::Uniform,
            signal: SignalPolicy::default(),
            rate: RatePolicy::default(),
            quality_weights: QualityWeights::default(),
            platform_fee: 50.0,
            vendor_turnaround: 48,
            platform_turnaround: 24,
            detail_request_quality: 0.5,
            points_enabled: true,
            mastery_tiers: vec![5, 25],
            vendor_override: true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Engine {
    log: EventLog,
    state: WorldState,
    rules: ProtocolRules,
}

impl Engine {
    pub fn new(rules: ProtocolRules) -> Self {
        Self {
            log: EventLog::new(),
            state: WorldState::new(),
            rules,
        }
    }

    pub fn log(&self) -> &EventLog {
        &self.log
    }

    pub fn state(&self) -> &WorldState {
        &self.state
    }

    pub fn rules(&self) -> &ProtocolRules {
        &self.rules
    }

    pub fn into_parts(self) -> (EventLog, WorldState) {
        (self.log, self.state)
    }

    /// Appends an event and folds it into the state.
    pub fn emit(&mut self, tick: Tick, actor: Actor, kind: EventKind) -> Result<&Event, EngineError> {
        self.log.append(tick, actor, kind)?;
        let ev = self.log.events().last().expect("just appended");
        self.state.apply(ev)?;
        Ok(ev)
    }

    fn report(&self, id: ReportId) -> Result<&Report, EngineError> {
        self.state
            .report(id)
            .map(|r| &r.report)
            .ok_or(EngineError::UnknownReport(id))
    }

    fn variant_of(&self, program: ProgramId) -> Result<ProcessVariant, EngineError> {
        self.state
            .program(program)
            .map(|p| p.program.variant)
            .ok_or(EngineError::UnknownProgram(program))
    }

    fn invalid(&self, op: &'static str, report_id: ReportId) -> EngineError {
        EngineError::InvalidState {
            op,
            report_id,
            state: self.state.reports[report_id.index()].report.state,
        }
    }

    /// Runs the submission gates. A rejected draft is still recorded, with
    /// state `RejectedAtGate`, and reported as `GateRejected`.
    pub fn submit_report(&mut self, tick: Tick, draft: ReportDraft) -> Result<ReportId, EngineError> {
        let program = self
            .state
            .program(draft.program_id)
            .ok_or(EngineError::UnknownProgram(draft.program_id))?;
        if !program.is_open() || tick < program.program.launch_tick {
            return Err(EngineError::ProgramInactive(draft.program_id));
        }
        let hacker = self
            .state
            .hacker(draft.reporter_id)
            .ok_or(EngineError::UnknownHacker(draft.reporter_id))?;
        let gate = if !rate_limit_check(&hacker.stats.last_submission_ticks, tick, &self.rules.rate) {
            Some(GateReason::RateLimited)
        } else if !signal_gate(&hacker.stats, &self.rules.signal) {
            Some(GateReason::LowSignal)
        } else {
            None
        };
        let report_id = ReportId(self.state.reports.len() as u64);
        let report = Report {
            report_id,
            program_id: draft.program_id,
            reporter_id: draft.reporter_id,
            submitted_at: tick,
            features: draft.features,
            fingerprint: draft.fingerprint,
            claimed_severity: draft.claimed_severity,
            latent_vuln_id: draft.latent_vuln_id,
            state: LifecycleState::Submitted,
        };
        let actor = Actor::Hacker(draft.reporter_id);
        match gate {
            Some(reason) => {
                let report = Report {
                    state: LifecycleState::RejectedAtGate { reason },
                    ..report
                };
                self.emit(tick, actor, EventKind::SubmissionRejected { report })?;
                Err(EngineError::GateRejected { reason, report_id })
            }
            None => {
                self.emit(tick, actor, EventKind::ReportSubmitted { report })?;
                Ok(report_id)
            }
        }
    }

    /// Triage of a freshly submitted report. In the direct variant the vendor
    /// validates and schedules its own verification; in the platform variant
    /// the platform does both and charges a fee; in the crowd-verified
    /// variant the vendor validates (or skips validation) and the report is
    /// left for the verifier crowd.
    pub fn vendor_validate(&mut self, tick: Tick, report_id: ReportId) -> Result<ValidationOutcome, EngineError> {
        let report = self.report(report_id)?.clone();
        if report.state != LifecycleState::Submitted {
            return Err(self.invalid("vendor_validate", report_id));
        }
        let variant = self.variant_of(report.program_id)?;
        let (performer, actor) = match variant {
            ProcessVariant::ADirect => (Performer::Vendor, Actor::Vendor),
            ProcessVariant::BPlatform => (Performer::Platform, Actor::Platform),
            ProcessVariant::CCrowdVetted => match self.rules.validation {
                ValidationMode::Enabled => (Performer::Vendor, Actor::Vendor),
                ValidationMode::Skipped => (Performer::Nobody, Actor::System),
            },
        };
        let outcome = if performer == Performer::Nobody {
            ValidationOutcome::Forward
        } else {
            validation::classify(
                &self.state,
                &self.state.programs[report.program_id.index()],
                report_id,
                &report.fingerprint,
                report.claimed_severity,
                self.rules.retain_dismissed_fingerprints,
            )
        };
        self.emit(
            tick,
            actor,
            EventKind::ReportValidated {
                report_id,
                performer,
                outcome: outcome.clone(),
            },
        )?;
        match (variant, &outcome) {
            (ProcessVariant::ADirect, ValidationOutcome::Forward) => {
                if quality_score(report.features, &self.rules.quality_weights) < self.rules.detail_request_quality {
                    self.correspond(tick, report_id, CorrespondenceReason::RequestDetails)?;
                }
                let due = tick + self.rules.vendor_turnaround;
                self.emit(
                    tick,
                    Actor::Vendor,
                    EventKind::InHouseScheduled {
                        report_id,
                        performer: Performer::Vendor,
                        due,
                    },
                )?;
            }
            (ProcessVariant::ADirect, ValidationOutcome::Duplicate { .. } | ValidationOutcome::OutOfScope) => {
                self.correspond(tick, report_id, CorrespondenceReason::Outcome)?;
            }
            (ProcessVariant::BPlatform, ValidationOutcome::Forward) => {
                self.emit(
                    tick,
                    Actor::Platform,
                    EventKind::PlatformFeeCharged {
                        program_id: report.program_id,
                        report_id,
                        amount: self.rules.platform_fee,
                    },
                )?;
                let due = tick + self.rules.platform_turnaround;
                self.emit(
                    tick,
                    Actor::Platform,
                    EventKind::InHouseScheduled {
                        report_id,
                        performer: Performer::Platform,
                        due,
                    },
                )?;
            }
            _ => {}
        }
        Ok(outcome)
    }

    fn correspond(&mut self, tick: Tick, report_id: ReportId, reason: CorrespondenceReason) -> Result<(), EngineError> {
        self.emit(tick, Actor::Vendor, EventKind::VendorCorrespondence { report_id, reason })?;
        Ok(())
    }

    /// Hands a validated report to a panel of `quorum_size` vetted hackers.
    pub fn assign_verifiers<R: Rng + ?Sized>(
        &mut self,
        tick: Tick,
        report_id: ReportId,
        rng: &mut R,
    ) -> Result<Vec<AssignmentId>, EngineError> {
        let report = self.report(report_id)?;
        if report.state != LifecycleState::VendorValidated
            || self.variant_of(report.program_id)? != ProcessVariant::CCrowdVetted
        {
            return Err(self.invalid("assign_verifiers", report_id));
        }
        let k = self.state.programs[report.program_id.index()].program.quorum_size;
        let chosen = select_verifiers(&self.state.hackers, report.reporter_id, &[], k, self.rules.selection, rng)?;
        let first = self.state.assignments.len() as u64;
        let deadline = tick + self.rules.verification_deadline;
        let assignments: Vec<VerificationAssignment> = chosen
            .into_iter()
            .enumerate()
            .map(|(i, verifier_id)| VerificationAssignment {
                assignment_id: AssignmentId(first + i as u64),
                report_id,
                verifier_id,
                assigned_at: tick,
                deadline,
                verdict: None,
                replaces: None,
                expired: false,
            })
            .collect();
        let ids = assignments.iter().map(|a| a.assignment_id).collect();
        self.emit(tick, Actor::Vendor, EventKind::VerifiersAssigned { report_id, assignments })?;
        Ok(ids)
    }

    /// Stores a verifier's verdict. Once no slot of the panel is still open
    /// the report is decided. Returns the report's new state.
    pub fn record_verdict(
        &mut self,
        tick: Tick,
        assignment_id: AssignmentId,
        verdict: Verdict,
    ) -> Result<LifecycleState, EngineError> {
        let a = self
            .state
            .assignment(assignment_id)
            .ok_or(EngineError::UnknownAssignment(assignment_id))?;
        if a.verdict.is_some() {
            return Err(EngineError::AlreadyVerdicted(assignment_id));
        }
        if a.expired || tick > a.deadline {
            return Err(EngineError::DeadlineExpired(assignment_id));
        }
        let (report_id, verifier) = (a.report_id, a.verifier_id);
        self.emit(tick, Actor::Hacker(verifier), EventKind::VerdictRecorded { assignment_id, verdict })?;
        self.decide_if_complete(tick, report_id)?;
        Ok(self.report(report_id)?.state)
    }

    fn decide_if_complete(&mut self, tick: Tick, report_id: ReportId) -> Result<Option<Decision>, EngineError> {
        let rec = &self.state.reports[report_id.index()];
        if !matches!(rec.report.state, LifecycleState::Distributed | LifecycleState::AwaitingVerdicts) {
            return Ok(None);
        }
        let panel: Vec<&VerificationAssignment> =
            rec.assignments.iter().map(|id| &self.state.assignments[id.index()]).collect();
        if panel.iter().any(|a| a.is_open()) {
            return Ok(None);
        }
        let program = &self.state.programs[rec.report.program_id.index()].program;
        let (q, k) = (program.quorum_threshold, program.quorum_size);
        let mut tally = Tally::default();
        for v in panel.iter().filter_map(|a| a.verdict.as_ref()) {
            tally.add(v.kind);
        }
        let cast = tally.total();
        let decision = if cast == k {
            aggregate_verdicts(tally, q, k)?
        } else if cast >= q {
            // Some slots timed out: decide on the verdicts that came in.
            aggregate_verdicts(tally, q, cast)?
        } else {
            Decision {
                kind: DecisionKind::Escalated,
                tally,
            }
        };
        self.emit(tick, Actor::System, EventKind::ReportDecided { report_id, decision })?;
        Ok(Some(decision))
    }

    /// Expires every open assignment whose deadline is before `tick`. An
    /// original slot is handed once to a fresh verifier; a replacement that
    /// also times out is dropped. Returns the reports decided as a result.
    pub fn expire_assignments<R: Rng + ?Sized>(&mut self, tick: Tick, rng: &mut R) -> Result<Vec<ReportId>, EngineError> {
        let due: Vec<AssignmentId> = self
            .state
            .open_deadlines
            .iter()
            .take_while(|(d, _)| *d < tick)
            .map(|(_, id)| *id)
            .collect();
        let mut decided = Vec::new();
        for id in due {
            self.emit(tick, Actor::System, EventKind::AssignmentExpired { assignment_id: id })?;
            let a = &self.state.assignments[id.index()];
            let report_id = a.report_id;
            if a.replaces.is_none() {
                let rec = &self.state.reports[report_id.index()];
                let panel: Vec<HackerId> = rec
                    .assignments
                    .iter()
                    .map(|x| self.state.assignments[x.index()].verifier_id)
                    .collect();
                let pool = assignment::eligible_pool(&self.state.hackers, rec.report.reporter_id, &panel);
                if let Some(h) = pool.choose(rng) {
                    let assignment = VerificationAssignment {
                        assignment_id: AssignmentId(self.state.assignments.len() as u64),
                        report_id,
                        verifier_id: h.hacker_id,
                        assigned_at: tick,
                        deadline: tick + self.rules.verification_deadline,
                        verdict: None,
                        replaces: Some(id),
                        expired: false,
                    };
                    self.emit(tick, Actor::System, EventKind::VerifierReassigned { assignment })?;
                    continue;
                }
            }
            if self.decide_if_complete(tick, report_id)?.is_some() {
                decided.push(report_id);
            }
        }
        Ok(decided)
    }

    /// Records the result of vendor or platform verification and decides the
    /// report from it.
    pub fn record_in_house_verdict(
        &mut self,
        tick: Tick,
        report_id: ReportId,
        verdict: Verdict,
    ) -> Result<Decision, EngineError> {
        let rec = self.state.report(report_id).ok_or(EngineError::UnknownReport(report_id))?;
        let performer = match (rec.in_house, &rec.in_house_verdict) {
            (Some((p, _)), None) if rec.report.state == LifecycleState::VendorValidated => p,
            _ => return Err(self.invalid("record_in_house_verdict", report_id)),
        };
        let variant = self.variant_of(rec.report.program_id)?;
        let actor = match performer {
            Performer::Platform => Actor::Platform,
            _ => Actor::Vendor,
        };
        let kind = verdict.kind;
        self.emit(tick, actor, EventKind::InHouseVerified { report_id, performer, verdict })?;
        if variant == ProcessVariant::ADirect {
            self.correspond(tick, report_id, CorrespondenceReason::Outcome)?;
        }
        let mut tally = Tally::default();
        tally.add(kind);
        let decision = Decision {
            kind: match kind {
                VerdictKind::Reproduced => DecisionKind::Actionable,
                VerdictKind::NotReproduced => DecisionKind::DismissedWithReasoning,
                VerdictKind::CannotTest => DecisionKind::Escalated,
            },
            tally,
        };
        self.emit(tick, actor, EventKind::ReportDecided { report_id, decision })?;
        Ok(decision)
    }

    /// Decides a validated report as escalated without a panel, the fallback
    /// when too few verifiers are available.
    pub fn escalate(&mut self, tick: Tick, report_id: ReportId) -> Result<Decision, EngineError> {
        if self.report(report_id)?.state != LifecycleState::VendorValidated {
            return Err(self.invalid("escalate", report_id));
        }
        let decision = Decision {
            kind: DecisionKind::Escalated,
            tally: Tally::default(),
        };
        self.emit(tick, Actor::System, EventKind::ReportDecided { report_id, decision })?;
        Ok(decision)
    }

    /// Pays out a decided report. Either every reward is issued and the
    /// report settles, or (when the budget cannot cover them) none is, the
    /// program pauses and `BudgetExhausted` is returned.
    pub fn settle(&mut self, tick: Tick, report_id: ReportId) -> Result<Vec<RewardEvent>, EngineError> {
        let rec = self.state.report(report_id).ok_or(EngineError::UnknownReport(report_id))?;
        let decision = match rec.report.state {
            LifecycleState::Decided { decision } => decision,
            _ => return Err(self.invalid("settle", report_id)),
        };
        let program = &self.state.programs[rec.report.program_id.index()];
        let completed: Vec<&VerificationAssignment> = rec
            .assignments
            .iter()
            .map(|id| &self.state.assignments[id.index()])
            .filter(|a| a.verdict.is_some())
            .collect();
        let verifiers: Vec<_> = completed.iter().map(|a| &self.state.hackers[a.verifier_id.index()]).collect();
        let reporter = &self.state.hackers[rec.report.reporter_id.index()];
        let rank = self.state.actionable_rank(reporter.hacker_id, program.program.program_id);
        let rewards = settlement::settlement_rewards(
            program,
            &rec.report,
            reporter,
            rank,
            decision.kind,
            &completed,
            &verifiers,
            self.rules.points_enabled,
            tick,
        )?;
        let required: f64 = rewards.iter().map(|r| r.amount).sum();
        let remaining = program.budget_remaining;
        let program_id = program.program.program_id;
        if required > remaining {
            if !program.paused {
                self.emit(
                    tick,
                    Actor::System,
                    EventKind::BudgetExhausted {
                        program_id,
                        report_id,
                        required,
                        remaining,
                    },
                )?;
            }
            return Err(EngineError::BudgetExhausted {
                program_id,
                required,
                remaining,
            });
        }
        let reporter_id = rec.report.reporter_id;
        let needs_vendor = decision.kind == DecisionKind::Escalated && rec.in_house.is_none();
        for reward in &rewards {
            self.emit(tick, Actor::Vendor, EventKind::RewardIssued { reward: reward.clone() })?;
        }
        self.emit(tick, Actor::Vendor, EventKind::ReportSettled { report_id })?;
        if needs_vendor && self.rules.vendor_override {
            let due = tick + self.rules.vendor_turnaround;
            self.emit(
                tick,
                Actor::Vendor,
                EventKind::InHouseScheduled {
                    report_id,
                    performer: Performer::Vendor,
                    due,
                },
            )?;
        }
        if self.rules.points_enabled {
            let mut recipients: Vec<HackerId> = rewards.iter().map(|r| r.recipient_id).collect();
            recipients.push(reporter_id);
            recipients.sort();
            recipients.dedup();
            for h in recipients {
                self.award_recognition(tick, h, program_id)?;
            }
        }
        Ok(rewards)
    }

    /// Records the vendor's own verification of an escalated report and pays
    /// the reporter accordingly. `CannotTest` leaves the report escalated.
    /// Budget shortfalls behave as in [`Engine::settle`].
    pub fn record_vendor_override(
        &mut self,
        tick: Tick,
        report_id: ReportId,
        verdict: Verdict,
    ) -> Result<Option<DecisionKind>, EngineError> {
        let rec = self.state.report(report_id).ok_or(EngineError::UnknownReport(report_id))?;
        if !rec.report.state.is_settled_escalated() || rec.in_house.is_none() || rec.in_house_verdict.is_some() {
            return Err(self.invalid("record_vendor_override", report_id));
        }
        let kind = match verdict.kind {
            VerdictKind::Reproduced => Some(DecisionKind::Actionable),
            VerdictKind::NotReproduced => Some(DecisionKind::DismissedWithReasoning),
            VerdictKind::CannotTest => None,
        };
        self.emit(
            tick,
            Actor::Vendor,
            EventKind::InHouseVerified {
                report_id,
                performer: Performer::Vendor,
                verdict,
            },
        )?;
        let Some(kind) = kind else {
            return Ok(None);
        };
        let rec = &self.state.reports[report_id.index()];
        let program = &self.state.programs[rec.report.program_id.index()];
        let reporter = &self.state.hackers[rec.report.reporter_id.index()];
        let rank = self.state.actionable_rank(reporter.hacker_id, program.program.program_id) + 1;
        let rewards = settlement::settlement_rewards(
            program,
            &rec.report,
            reporter,
            rank,
            kind,
            &[],
            &[],
            self.rules.points_enabled,
            tick,
        )?;
        let required: f64 = rewards.iter().map(|r| r.amount).sum();
        let remaining = program.budget_remaining;
        let program_id = program.program.program_id;
        let reporter_id = rec.report.reporter_id;
        if required > remaining {
            if !program.paused {
                self.emit(
                    tick,
                    Actor::System,
                    EventKind::BudgetExhausted {
                        program_id,
                        report_id,
                        required,
                        remaining,
                    },
                )?;
            }
            return Err(EngineError::BudgetExhausted {
                program_id,
                required,
                remaining,
            });
        }
        for reward in rewards {
            self.emit(tick, Actor::Vendor, EventKind::RewardIssued { reward })?;
        }
        self.emit(tick, Actor::Vendor, EventKind::VendorOverride { report_id, decision: kind })?;
        if self.rules.points_enabled {
            self.award_recognition(tick, reporter_id, program_id)?;
        }
        Ok(Some(kind))
    }

    fn award_recognition(&mut self, tick: Tick, hacker_id: HackerId, program_id: ProgramId) -> Result<(), EngineError> {
        let schedule = &self.state.programs[program_id.index()].program.reward_schedule;
        let profile = &self.state.hackers[hacker_id.index()];
        let badges = evaluate_badges(profile, schedule);
        let tiers: Vec<_> = self
            .rules
            .mastery_tiers
            .iter()
            .filter_map(|t| issue_certificate(profile, *t))
            .collect();
        for badge in badges {
            self.emit(tick, Actor::System, EventKind::BadgeAwarded { hacker_id, badge })?;
        }
        for tier in tiers {
            self.emit(tick, Actor::System, EventKind::CertificateIssued { hacker_id, tier })?;
        }
        Ok(())
    }

    /// Submission through to panel assignment (or in-house scheduling) in one
    /// call. Reports that end up decided at intake are settled immediately.
    pub fn intake<R: Rng + ?Sized>(&mut self, tick: Tick, draft: ReportDraft, rng: &mut R) -> Result<ReportId, EngineError> {
        let variant = self.variant_of(draft.program_id)?;
        let report_id = self.submit_report(tick, draft)?;
        let outcome = self.vendor_validate(tick, report_id)?;
        match outcome {
            ValidationOutcome::Forward if variant == ProcessVariant::CCrowdVetted => {
                match self.assign_verifiers(tick, report_id, rng) {
                    Ok(_) => {}
                    Err(EngineError::InsufficientVerifiers(_)) => {
                        self.escalate(tick, report_id)?;
                        self.settle_tolerant(tick, report_id)?;
                    }
                    Err(e) => return Err(e),
                }
            }
            ValidationOutcome::EscalateCriticalOutOfScope => self.settle_tolerant(tick, report_id)?,
            _ => {}
        }
        Ok(report_id)
    }

    /// Settles, treating an exhausted budget as a normal outcome.
    pub fn settle_tolerant(&mut self, tick: Tick, report_id: ReportId) -> Result<(), EngineError> {
        match self.settle(tick, report_id) {
            Ok(_) | Err(EngineError::BudgetExhausted { .. }) => Ok(()),
            Err(e) => Err(e),
        }
    }
}
