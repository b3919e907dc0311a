//! The materialized world: what you get by folding the event log.
//!
//! [`WorldState::apply`] is the only place state changes. The live engine
//! appends an event and applies it; [`replay`] applies a stored log to an
//! empty state. Both paths therefore produce the same state.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{
    DecisionKind, Fingerprint, HackerProfile, LatentVuln, LifecycleState, Performer,
    ProcessVariant, Program, Report, ValidationOutcome, Verdict, VerificationAssignment,
};
use crate::engine::lifecycle;
use crate::event::{Event, EventKind, EventLog};
use crate::ids::{AssignmentId, HackerId, ProgramId, ReportId, TeamId, Tick, VulnId};

#[derive(Debug, Error, PartialEq)]
pub enum ApplyError {
    #[error("event {seq}: unknown {what} {id}")]
    UnknownId { seq: u64, what: &'static str, id: String },
    #[error("event {seq}: illegal transition of {report} from {from:?} to {to:?}")]
    IllegalTransition {
        seq: u64,
        report: ReportId,
        from: LifecycleState,
        to: LifecycleState,
    },
    #[error("event {seq}: {message}")]
    Inconsistent { seq: u64, message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMeta {
    pub seed: u64,
    pub horizon: Tick,
    pub variant: ProcessVariant,
    pub params: serde_json::Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProgramState {
    /// As registered, with the latent vulns moved to [`WorldState::vulns`].
    pub program: Program,
    pub launched: bool,
    pub active_stage: Option<u32>,
    pub scope_fraction: f64,
    pub budget_remaining: f64,
    pub reward_spend: f64,
    pub paused: bool,
    /// Reports decided actionable so far; the bounty ladder position.
    pub actionable_count: u32,
    pub vuln_ids: Vec<VulnId>,
}

impl ProgramState {
    pub fn assets_in_scope(&self) -> usize {
        if self.active_stage.is_none() {
            return 0;
        }
        self.program.assets_in_scope(self.scope_fraction)
    }

    pub fn asset_in_scope(&self, asset_token: &str) -> bool {
        let n = self.assets_in_scope();
        self.program.assets[..n].iter().any(|a| a.trim().eq_ignore_ascii_case(asset_token))
    }

    pub fn is_open(&self) -> bool {
        self.launched && !self.paused
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub report: Report,
    pub validation: Option<(Performer, ValidationOutcome)>,
    pub assignments: Vec<AssignmentId>,
    pub in_house: Option<(Performer, Tick)>,
    pub in_house_verdict: Option<Verdict>,
    pub decided_at: Option<Tick>,
    pub settled_at: Option<Tick>,
    /// The vendor's own ruling on an escalated report.
    #[serde(default)]
    pub vendor_override: Option<DecisionKind>,
}

/// Hunting history of one hacker.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuntRecord {
    pub total_effort: u64,
    pub effort_by_program: BTreeMap<ProgramId, u64>,
    pub last_program: Option<ProgramId>,
    /// Consecutive hunts on `last_program`.
    pub streak: u64,
    pub switches: u64,
}

impl HuntRecord {
    pub fn effort_on(&self, program: ProgramId) -> u64 {
        self.effort_by_program.get(&program).copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct WorldState {
    pub meta: Option<RunMeta>,
    pub tick: Tick,
    pub finished: bool,
    pub programs: Vec<ProgramState>,
    pub hackers: Vec<HackerProfile>,
    pub hunts: Vec<HuntRecord>,
    /// Tick at which each hacker reached their current point total.
    pub points_achieved_at: Vec<Option<Tick>>,
    pub reports: Vec<ReportRecord>,
    pub assignments: Vec<VerificationAssignment>,
    pub vulns: Vec<LatentVuln>,
    /// Sim ground truth: vulns fixed after an actionable settlement.
    pub fixed_vulns: BTreeSet<VulnId>,
    /// Reports per fingerprint in submission order (gate-rejected excluded).
    #[serde(with = "pairs")]
    pub fingerprint_index: BTreeMap<Fingerprint, Vec<ReportId>>,
    pub open_by_verifier: Vec<BTreeSet<AssignmentId>>,
    /// Open assignments keyed by deadline.
    pub open_deadlines: BTreeSet<(Tick, AssignmentId)>,
    /// Scheduled in-house verifications keyed by due tick.
    pub in_house_queue: BTreeSet<(Tick, ReportId)>,
    pub teams: BTreeMap<TeamId, Vec<HackerId>>,
    /// Actionable reports per (reporter, program), the rank the bounty
    /// ladder is indexed by.
    pub actionable_by: BTreeMap<HackerId, BTreeMap<ProgramId, u32>>,
    pub leaks: u64,
}

/// Maps with structured keys, written as a list of `[key, value]` pairs so
/// the state has a JSON form.
mod pairs {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<K: Serialize, V: Serialize, S: Serializer>(
        map: &BTreeMap<K, V>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_seq(map.iter())
    }

    pub fn deserialize<'de, K, V, D>(d: D) -> Result<BTreeMap<K, V>, D::Error>
    where
        K: Deserialize<'de> + Ord,
        V: Deserialize<'de>,
        D: Deserializer<'de>,
    {
        Ok(Vec::<(K, V)>::deserialize(d)?.into_iter().collect())
    }
}

fn unknown(seq: u64, what: &'static str, id: impl ToString) -> ApplyError {
    ApplyError::UnknownId {
        seq,
        what,
        id: id.to_string(),
    }
}

fn inconsistent(seq: u64, message: impl Into<String>) -> ApplyError {
    ApplyError::Inconsistent {
        seq,
        message: message.into(),
    }
}

impl WorldState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn program(&self, id: ProgramId) -> Option<&ProgramState> {
        self.programs.get(id.index())
    }

    pub fn hacker(&self, id: HackerId) -> Option<&HackerProfile> {
        self.hackers.get(id.index())
    }

    pub fn report(&self, id: ReportId) -> Option<&ReportRecord> {
        self.reports.get(id.index())
    }

    pub fn assignment(&self, id: AssignmentId) -> Option<&VerificationAssignment> {
        self.assignments.get(id.index())
    }

    pub fn vuln(&self, id: VulnId) -> Option<&LatentVuln> {
        self.vulns.get(id.index())
    }

    fn program_mut(&mut self, seq: u64, id: ProgramId) -> Result<&mut ProgramState, ApplyError> {
        self.programs.get_mut(id.index()).ok_or_else(|| unknown(seq, "program", id))
    }

    fn hacker_mut(&mut self, seq: u64, id: HackerId) -> Result<&mut HackerProfile, ApplyError> {
        self.hackers.get_mut(id.index()).ok_or_else(|| unknown(seq, "hacker", id))
    }

    fn report_mut(&mut self, seq: u64, id: ReportId) -> Result<&mut ReportRecord, ApplyError> {
        self.reports.get_mut(id.index()).ok_or_else(|| unknown(seq, "report", id))
    }

    fn transition(&mut self, seq: u64, id: ReportId, to: LifecycleState) -> Result<(), ApplyError> {
        let rec = self.report_mut(seq, id)?;
        let from = rec.report.state;
        if !lifecycle::can_transition(&from, &to) {
            return Err(ApplyError::IllegalTransition {
                seq,
                report: id,
                from,
                to,
            });
        }
        rec.report.state = to;
        Ok(())
    }

    fn check_new_report(&self, seq: u64, report: &Report) -> Result<(), ApplyError> {
        if report.report_id.index() != self.reports.len() {
            return Err(inconsistent(seq, format!("report id {} out of order", report.report_id)));
        }
        if self.program(report.program_id).is_none() {
            return Err(unknown(seq, "program", report.program_id));
        }
        if self.hacker(report.reporter_id).is_none() {
            return Err(unknown(seq, "hacker", report.reporter_id));
        }
        Ok(())
    }

    fn push_report(&mut self, report: Report) {
        self.reports.push(ReportRecord {
            report,
            validation: None,
            assignments: Vec::new(),
            in_house: None,
            in_house_verdict: None,
            decided_at: None,
            settled_at: None,
            vendor_override: None,
        });
    }

    fn add_assignment(&mut self, seq: u64, a: &VerificationAssignment) -> Result<(), ApplyError> {
        if a.assignment_id.index() != self.assignments.len() {
            return Err(inconsistent(seq, format!("assignment id {} out of order", a.assignment_id)));
        }
        let reporter = self
            .report(a.report_id)
            .ok_or_else(|| unknown(seq, "report", a.report_id))?
            .report
            .reporter_id;
        let verifier = self.hacker(a.verifier_id).ok_or_else(|| unknown(seq, "hacker", a.verifier_id))?;
        if a.verifier_id == reporter {
            return Err(inconsistent(seq, "verifier assigned to own report"));
        }
        if !verifier.vetted {
            return Err(inconsistent(seq, "unvetted verifier assigned"));
        }
        self.assignments.push(a.clone());
        self.open_by_verifier[a.verifier_id.index()].insert(a.assignment_id);
        self.open_deadlines.insert((a.deadline, a.assignment_id));
        self.report_mut(seq, a.report_id)?.assignments.push(a.assignment_id);
        Ok(())
    }

    /// Applies one event. On error the state may be partially updated and
    /// should be discarded.
    pub fn apply(&mut self, ev: &Event) -> Result<(), ApplyError> {
        let seq = ev.seq;
        let tick = ev.tick;
        if tick < self.tick {
            return Err(inconsistent(seq, "tick went backwards"));
        }
        self.tick = tick;
        match &ev.event {
            EventKind::RunStarted {
                seed,
                horizon,
                variant,
                params,
            } => {
                self.meta = Some(RunMeta {
                    seed: *seed,
                    horizon: *horizon,
                    variant: *variant,
                    params: params.clone(),
                });
            }
            EventKind::ProgramRegistered { program } => {
                if program.program_id.index() != self.programs.len() {
                    return Err(inconsistent(seq, format!("program id {} out of order", program.program_id)));
                }
                let mut program = program.clone();
                let vulns = std::mem::take(&mut program.latent_vulns);
                let mut vuln_ids = Vec::with_capacity(vulns.len());
                for v in vulns {
                    if v.vuln_id.index() != self.vulns.len() || v.program_id != program.program_id {
                        return Err(inconsistent(seq, format!("latent vuln {} out of order", v.vuln_id)));
                    }
                    vuln_ids.push(v.vuln_id);
                    self.vulns.push(v);
                }
                self.programs.push(ProgramState {
                    budget_remaining: program.budget,
                    program,
                    launched: false,
                    active_stage: None,
                    scope_fraction: 0.0,
                    reward_spend: 0.0,
                    paused: false,
                    actionable_count: 0,
                    vuln_ids,
                });
            }
            EventKind::HackerRegistered { profile } => {
                if profile.hacker_id.index() != self.hackers.len() {
                    return Err(inconsistent(seq, format!("hacker id {} out of order", profile.hacker_id)));
                }
                if let Some(team) = profile.team_id {
                    self.teams.entry(team).or_default().push(profile.hacker_id);
                }
                self.points_achieved_at.push((profile.points > 0).then_some(tick));
                self.hackers.push(profile.clone());
                self.hunts.push(HuntRecord::default());
                self.open_by_verifier.push(BTreeSet::new());
            }
            EventKind::ProgramLaunched { program_id } => {
                self.program_mut(seq, *program_id)?.launched = true;
            }
            EventKind::ScopeStageActivated {
                program_id,
                stage,
                fraction,
            } => {
                let p = self.program_mut(seq, *program_id)?;
                if p.program.scope_stages.get(*stage as usize).is_none() {
                    return Err(inconsistent(seq, "unknown scope stage"));
                }
                if *fraction < p.scope_fraction {
                    return Err(inconsistent(seq, "scope fraction decreased"));
                }
                p.active_stage = Some(*stage);
                p.scope_fraction = *fraction;
            }
            EventKind::EventWindowOpened { program_id, .. } | EventKind::PurposeBroadcast { program_id } => {
                self.program_mut(seq, *program_id)?;
            }
            EventKind::TeamJoined { hacker_id, team_id } => {
                let h = self.hacker_mut(seq, *hacker_id)?;
                if h.team_id.is_some() {
                    return Err(inconsistent(seq, "hacker already in a team"));
                }
                h.team_id = Some(*team_id);
                self.teams.entry(*team_id).or_default().push(*hacker_id);
            }
            EventKind::HuntAttempted {
                hacker_id,
                program_id,
                found,
            } => {
                self.program_mut(seq, *program_id)?;
                let rec = self
                    .hunts
                    .get_mut(hacker_id.index())
                    .ok_or_else(|| unknown(seq, "hacker", hacker_id))?;
                rec.total_effort += 1;
                *rec.effort_by_program.entry(*program_id).or_default() += 1;
                if rec.last_program == Some(*program_id) {
                    rec.streak += 1;
                } else {
                    if rec.last_program.is_some() {
                        rec.switches += 1;
                    }
                    rec.last_program = Some(*program_id);
                    rec.streak = 1;
                }
                if let Some(v) = found {
                    let vuln = self
                        .vulns
                        .get_mut(v.index())
                        .ok_or_else(|| unknown(seq, "vuln", v))?;
                    if vuln.program_id != *program_id {
                        return Err(inconsistent(seq, "vuln found in the wrong program"));
                    }
                    vuln.discovered = true;
                }
            }
            EventKind::ReportSubmitted { report } => {
                self.check_new_report(seq, report)?;
                if report.state != LifecycleState::Submitted {
                    return Err(inconsistent(seq, "submitted report must start in Submitted"));
                }
                self.fingerprint_index
                    .entry(report.fingerprint.clone())
                    .or_default()
                    .push(report.report_id);
                self.hackers[report.reporter_id.index()]
                    .stats
                    .record_submission(tick);
                self.push_report(report.clone());
            }
            EventKind::SubmissionRejected { report } => {
                self.check_new_report(seq, report)?;
                if !matches!(report.state, LifecycleState::RejectedAtGate { .. }) {
                    return Err(inconsistent(seq, "rejected report must be RejectedAtGate"));
                }
                self.push_report(report.clone());
            }
            EventKind::ReportValidated {
                report_id,
                performer,
                outcome,
            } => {
                let to = match outcome {
                    ValidationOutcome::Forward => LifecycleState::VendorValidated,
                    ValidationOutcome::Duplicate { original } => {
                        if original.index() >= report_id.index() {
                            return Err(inconsistent(seq, "duplicate must point at an earlier report"));
                        }
                        LifecycleState::ClosedDuplicate { original: *original }
                    }
                    ValidationOutcome::OutOfScope => LifecycleState::ClosedOutOfScope,
                    ValidationOutcome::EscalateCriticalOutOfScope => LifecycleState::Decided {
                        decision: crate::domain::Decision {
                            kind: DecisionKind::Escalated,
                            tally: Default::default(),
                        },
                    },
                };
                self.transition(seq, *report_id, to)?;
                let rec = self.report_mut(seq, *report_id)?;
                rec.validation = Some((*performer, outcome.clone()));
                let reporter = rec.report.reporter_id;
                match outcome {
                    ValidationOutcome::Duplicate { .. } | ValidationOutcome::OutOfScope => {
                        self.hackers[reporter.index()].stats.unverified_count += 1;
                    }
                    ValidationOutcome::EscalateCriticalOutOfScope => {
                        self.report_mut(seq, *report_id)?.decided_at = Some(tick);
                    }
                    ValidationOutcome::Forward => {}
                }
            }
            EventKind::PlatformFeeCharged { program_id, report_id, .. } => {
                self.program_mut(seq, *program_id)?;
                self.report_mut(seq, *report_id)?;
            }
            EventKind::VendorCorrespondence { report_id, .. } => {
                self.report_mut(seq, *report_id)?;
            }
            EventKind::InHouseScheduled {
                report_id,
                performer,
                due,
            } => {
                let rec = self.report_mut(seq, *report_id)?;
                let escalated = rec.report.state.is_settled_escalated();
                if rec.report.state != LifecycleState::VendorValidated && !escalated {
                    return Err(inconsistent(
                        seq,
                        "in-house verification needs a validated or escalated report",
                    ));
                }
                if rec.in_house.is_some() {
                    return Err(inconsistent(seq, "in-house verification scheduled twice"));
                }
                rec.in_house = Some((*performer, *due));
                self.in_house_queue.insert((*due, *report_id));
            }
            EventKind::VerifiersAssigned {
                report_id,
                assignments,
            } => {
                self.transition(seq, *report_id, LifecycleState::Distributed)?;
                let mut seen = BTreeSet::new();
                for a in assignments {
                    if a.report_id != *report_id {
                        return Err(inconsistent(seq, "assignment for another report"));
                    }
                    if !seen.insert(a.verifier_id) {
                        return Err(inconsistent(seq, "verifier assigned twice"));
                    }
                    self.add_assignment(seq, a)?;
                }
            }
            EventKind::VerifierReassigned { assignment } => {
                let old = assignment
                    .replaces
                    .ok_or_else(|| inconsistent(seq, "reassignment without predecessor"))?;
                let prev = self.assignment(old).ok_or_else(|| unknown(seq, "assignment", old))?;
                if !prev.expired || prev.report_id != assignment.report_id {
                    return Err(inconsistent(seq, "reassignment must replace an expired assignment"));
                }
                let panel = &self.reports[assignment.report_id.index()].assignments;
                if panel
                    .iter()
                    .any(|a| self.assignments[a.index()].verifier_id == assignment.verifier_id)
                {
                    return Err(inconsistent(seq, "verifier already on this panel"));
                }
                self.add_assignment(seq, assignment)?;
            }
            EventKind::AssignmentExpired { assignment_id } => {
                let a = self
                    .assignments
                    .get_mut(assignment_id.index())
                    .ok_or_else(|| unknown(seq, "assignment", assignment_id))?;
                if !a.is_open() {
                    return Err(inconsistent(seq, "expiring a closed assignment"));
                }
                a.expired = true;
                let (verifier, deadline) = (a.verifier_id, a.deadline);
                self.open_by_verifier[verifier.index()].remove(assignment_id);
                self.open_deadlines.remove(&(deadline, *assignment_id));
            }
            EventKind::VerdictRecorded {
                assignment_id,
                verdict,
            } => {
                let a = self
                    .assignments
                    .get_mut(assignment_id.index())
                    .ok_or_else(|| unknown(seq, "assignment", assignment_id))?;
                if !a.is_open() {
                    return Err(inconsistent(seq, "verdict on a closed assignment"));
                }
                a.verdict = Some(verdict.clone());
                let (verifier, report_id, deadline) = (a.verifier_id, a.report_id, a.deadline);
                self.open_by_verifier[verifier.index()].remove(assignment_id);
                self.open_deadlines.remove(&(deadline, *assignment_id));
                self.hackers[verifier.index()].stats.verifications_completed += 1;
                if self.reports[report_id.index()].report.state == LifecycleState::Distributed {
                    self.transition(seq, report_id, LifecycleState::AwaitingVerdicts)?;
                }
            }
            EventKind::InHouseVerified {
                report_id,
                verdict,
                ..
            } => {
                let rec = self.report_mut(seq, *report_id)?;
                if rec.in_house.is_none() || rec.in_house_verdict.is_some() {
                    return Err(inconsistent(seq, "unexpected in-house verdict"));
                }
                rec.in_house_verdict = Some(verdict.clone());
                let due = rec.in_house.expect("checked above").1;
                self.in_house_queue.remove(&(due, *report_id));
            }
            EventKind::ReportDecided { report_id, decision } => {
                self.transition(seq, *report_id, LifecycleState::Decided { decision: *decision })?;
                let rec = self.report_mut(seq, *report_id)?;
                rec.decided_at = Some(tick);
                let program_id = rec.report.program_id;
                if decision.kind == DecisionKind::Actionable {
                    self.program_mut(seq, program_id)?.actionable_count += 1;
                    let reporter = self.reports[report_id.index()].report.reporter_id;
                    *self.actionable_by.entry(reporter).or_default().entry(program_id).or_default() += 1;
                }
            }
            EventKind::RewardIssued { reward } => {
                if reward.amount.is_nan() || reward.amount < 0.0 {
                    return Err(inconsistent(seq, "negative reward"));
                }
                self.report_mut(seq, reward.report_id)?;
                let p = self.program_mut(seq, reward.program_id)?;
                if reward.amount > p.budget_remaining {
                    return Err(inconsistent(seq, "reward exceeds remaining budget"));
                }
                p.budget_remaining -= reward.amount;
                p.reward_spend += reward.amount;
                let h = self.hacker_mut(seq, reward.recipient_id)?;
                if reward.points > 0 {
                    h.points += reward.points;
                    self.points_achieved_at[reward.recipient_id.index()] = Some(tick);
                }
            }
            EventKind::ReportSettled { report_id } => {
                let decision = self
                    .report(*report_id)
                    .ok_or_else(|| unknown(seq, "report", report_id))?
                    .report
                    .state
                    .decision()
                    .ok_or_else(|| inconsistent(seq, "settling an undecided report"))?;
                self.transition(seq, *report_id, LifecycleState::Settled { decision })?;
                let rec = self.report_mut(seq, *report_id)?;
                rec.settled_at = Some(tick);
                let reporter = rec.report.reporter_id;
                let vuln = rec.report.latent_vuln_id;
                let stats = &mut self.hackers[reporter.index()].stats;
                match decision.kind {
                    DecisionKind::Actionable => {
                        stats.verified_count += 1;
                        if let Some(v) = vuln {
                            self.fixed_vulns.insert(v);
                        }
                    }
                    DecisionKind::DismissedWithReasoning => stats.unverified_count += 1,
                    DecisionKind::Escalated => {}
                }
            }
            EventKind::VendorOverride { report_id, decision } => {
                let rec = self.report_mut(seq, *report_id)?;
                if !rec.report.state.is_settled_escalated()
                    || rec.in_house_verdict.is_none()
                    || rec.vendor_override.is_some()
                {
                    return Err(inconsistent(seq, "override needs a verified escalated report"));
                }
                rec.vendor_override = Some(*decision);
                let (program_id, reporter, vuln) = (rec.report.program_id, rec.report.reporter_id, rec.report.latent_vuln_id);
                let stats = &mut self.hackers[reporter.index()].stats;
                match decision {
                    DecisionKind::Actionable => {
                        stats.verified_count += 1;
                        if let Some(v) = vuln {
                            self.fixed_vulns.insert(v);
                        }
                        self.program_mut(seq, program_id)?.actionable_count += 1;
                        *self.actionable_by.entry(reporter).or_default().entry(program_id).or_default() += 1;
                    }
                    DecisionKind::DismissedWithReasoning => stats.unverified_count += 1,
                    DecisionKind::Escalated => return Err(inconsistent(seq, "override cannot escalate")),
                }
            }
            EventKind::BudgetExhausted { program_id, .. } => {
                self.program_mut(seq, *program_id)?.paused = true;
            }
            EventKind::BadgeAwarded { hacker_id, badge } => {
                if !self.hacker_mut(seq, *hacker_id)?.badges.insert(badge.clone()) {
                    return Err(inconsistent(seq, format!("badge {} awarded twice", badge.0)));
                }
            }
            EventKind::CertificateIssued { hacker_id, tier } => {
                if !self.hacker_mut(seq, *hacker_id)?.certificates.insert(*tier) {
                    return Err(inconsistent(seq, "certificate tier issued twice"));
                }
            }
            EventKind::EngagementUpdated {
                hacker_id,
                engagement,
                ..
            } => {
                if !(0.0..=1.0).contains(engagement) {
                    return Err(inconsistent(seq, "engagement outside [0, 1]"));
                }
                let h = self.hacker_mut(seq, *hacker_id)?;
                h.engagement = *engagement;
                h.engagement_tick = tick;
            }
            EventKind::Leak { report_id, verifier_id } => {
                self.report_mut(seq, *report_id)?;
                self.hacker_mut(seq, *verifier_id)?;
                self.leaks += 1;
            }
            EventKind::RunFinished => {
                self.finished = true;
            }
        }
        Ok(())
    }

    /// Fingerprint owners still eligible to anchor a duplicate, oldest first.
    /// Actionable reports `hacker` has had in `program` so far.
    pub fn actionable_rank(&self, hacker: HackerId, program: ProgramId) -> u32 {
        self.actionable_by
            .get(&hacker)
            .and_then(|m| m.get(&program))
            .copied()
            .unwrap_or(0)
    }

    pub fn reports_with_fingerprint(&self, fp: &Fingerprint) -> &[ReportId] {
        self.fingerprint_index.get(fp).map_or(&[], Vec::as_slice)
    }

    pub fn open_assignments_of(&self, verifier: HackerId) -> impl Iterator<Item = &VerificationAssignment> {
        self.open_by_verifier
            .get(verifier.index())
            .into_iter()
            .flatten()
            .map(|id| &self.assignments[id.index()])
    }
}

/// Folds a log into the world state it describes.
pub fn replay(log: &EventLog) -> Result<WorldState, ApplyError> {
    let mut state = WorldState::new();
    for ev in log {
        state.apply(ev)?;
    }
    Ok(state)
}
