//! Run metrics, computed from the event log alone.
//!
//! Nothing here looks at live simulator state, so the same numbers come out
//! of a fresh run and of a replayed log.

use std::collections::BTreeMap;

use crowdvet_core::domain::{DecisionKind, Performer, RewardKind, ValidationOutcome};
use crowdvet_core::event::{EventKind, EventLog};
use crowdvet_core::ids::{HackerId, Tick};
use crowdvet_core::state::ApplyError;
use crowdvet_core::WorldState;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{CostModel, SimulationConfig};

#[derive(Debug, Error)]
pub enum MetricsError {
    #[error("log does not start with run_started")]
    MissingRunStarted,
    #[error("run parameters in the log do not parse: {0}")]
    Params(#[source] serde_json::Error),
    #[error(transparent)]
    Apply(#[from] ApplyError),
}

/// What the metrics need beyond the events themselves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricsContext {
    pub cost: CostModel,
    pub engagement_decay: f64,
    /// Width of one time-series window in ticks.
    pub window: Tick,
}

impl MetricsContext {
    pub fn from_config(config: &SimulationConfig) -> Self {
        Self {
            cost: config.cost,
            engagement_decay: config.gamification.engagement.decay,
            window: 168,
        }
    }

    /// Recovers the context from the parameters recorded in `run_started`.
    pub fn from_log(log: &EventLog) -> Result<Self, MetricsError> {
        let config = recorded_config(log)?.map(|(c, _)| c).unwrap_or_default();
        Ok(Self::from_config(&config))
    }
}

/// The configuration and seed a simulator log was produced with, or `None`
/// for logs that carry no parameters (e.g. ones written by hand).
pub fn recorded_config(log: &EventLog) -> Result<Option<(SimulationConfig, u64)>, MetricsError> {
    let first = log.events().first().ok_or(MetricsError::MissingRunStarted)?;
    let EventKind::RunStarted { params, seed, .. } = &first.event else {
        return Err(MetricsError::MissingRunStarted);
    };
    if params.is_null() {
        return Ok(None);
    }
    let config = serde_json::from_value(params.clone()).map_err(MetricsError::Params)?;
    Ok(Some((config, *seed)))
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MetricsSummary {
    pub seed: u64,
    pub horizon: Tick,
    pub submissions: u64,
    pub valid_submissions: u64,
    pub invalid_submissions: u64,
    /// Valid over invalid accepted submissions, with the denominator floored at 1.
    pub snr: f64,
    pub gate_rejections: u64,
    pub vendor_validations: u64,
    pub vendor_correspondences: u64,
    pub vendor_in_house: u64,
    pub platform_in_house: u64,
    pub vendor_overhead_minutes: f64,
    pub platform_fees: f64,
    pub reward_spend: f64,
    pub bounty_spend: f64,
    pub verifier_fees: f64,
    pub verifier_fee_count: u64,
    pub actionable: u64,
    pub dismissed: u64,
    pub escalated: u64,
    /// Escalated reports the vendor later ruled on.
    pub vendor_overrides: u64,
    pub duplicates: u64,
    pub out_of_scope: u64,
    /// Mean ticks from submission to an actionable decision; 0 without any.
    pub time_to_actionable: f64,
    pub coverage: f64,
    /// Population mean engagement averaged over window ends.
    pub mean_engagement: f64,
    pub hunts: u64,
    pub switch_count: u64,
    pub switches_per_agent: f64,
    pub verdicts: u64,
    pub expired_assignments: u64,
    pub leak_count: u64,
    pub leak_exposure: f64,
    /// Submissions whose reporter had been assigned to verify an earlier
    /// report with the same fingerprint.
    pub snipes: u64,
    pub snipes_closed_duplicate: u64,
    pub budget_exhausted: u64,
}

impl MetricsSummary {
    /// Numeric fields by name, in a stable order.
    pub fn fields(&self) -> Vec<(String, f64)> {
        let value = serde_json::to_value(self).expect("summary serializes");
        value
            .as_object()
            .expect("summary is an object")
            .iter()
            .map(|(k, v)| (k.clone(), v.as_f64().unwrap_or(f64::NAN)))
            .collect()
    }

    pub fn field(&self, name: &str) -> Option<f64> {
        self.fields().into_iter().find(|(k, _)| k == name).map(|(_, v)| v)
    }
}

/// One time-series window `[start, end)`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct WindowRow {
    pub start: Tick,
    pub end: Tick,
    /// Population mean engagement at `end`.
    pub mean_engagement: f64,
    pub hunts: u64,
    pub switches: u64,
    pub submissions: u64,
    pub valid_submissions: u64,
    pub actionable: u64,
    pub reward_spend: f64,
    pub vendor_overhead_minutes: f64,
    pub coverage: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ProgramWindowRow {
    pub start: Tick,
    pub program: String,
    pub submissions: u64,
    pub actionable: u64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct RunMetrics {
    pub summary: MetricsSummary,
    pub windows: Vec<WindowRow>,
    pub program_windows: Vec<ProgramWindowRow>,
}

impl RunMetrics {
    /// Submissions to the named program in windows starting at or after `from`.
    pub fn program_submissions_since(&self, program: &str, from: Tick) -> (u64, usize) {
        let rows: Vec<_> = self
            .program_windows
            .iter()
            .filter(|r| r.program == program && r.start >= from)
            .collect();
        (rows.iter().map(|r| r.submissions).sum(), rows.len())
    }
}

fn coverage(state: &WorldState) -> f64 {
    if state.vulns.is_empty() {
        0.0
    } else {
        state.vulns.iter().filter(|v| v.discovered).count() as f64 / state.vulns.len() as f64
    }
}

fn mean_engagement(state: &WorldState, at: Tick, decay: f64) -> f64 {
    if state.hackers.is_empty() {
        return 0.0;
    }
    state.hackers.iter().map(|h| h.engagement_at(at, decay)).sum::<f64>() / state.hackers.len() as f64
}

pub fn compute_metrics(log: &EventLog, ctx: &MetricsContext) -> Result<RunMetrics, MetricsError> {
    let window = ctx.window.max(1);
    let cost = ctx.cost;
    let mut state = WorldState::new();
    let mut s = MetricsSummary::default();
    let mut windows: Vec<WindowRow> = Vec::new();
    let mut per_program: BTreeMap<(Tick, usize), (u64, u64)> = BTreeMap::new();
    let mut actionable_delays = Vec::new();
    let mut current = WindowRow {
        start: 0,
        end: window,
        ..Default::default()
    };

    let close = |row: &mut WindowRow, state: &WorldState, windows: &mut Vec<WindowRow>| {
        row.mean_engagement = mean_engagement(state, row.end, ctx.engagement_decay);
        row.coverage = coverage(state);
        let next = WindowRow {
            start: row.end,
            end: row.end + window,
            ..Default::default()
        };
        windows.push(std::mem::replace(row, next));
    };

    for ev in log.events() {
        if matches!(ev.event, EventKind::RunFinished) {
            break;
        }
        while ev.tick >= current.end {
            close(&mut current, &state, &mut windows);
        }
        let win_start = current.start;
        match &ev.event {
            EventKind::RunStarted { seed, horizon, .. } => {
                s.seed = *seed;
                s.horizon = *horizon;
            }
            EventKind::HuntAttempted { hacker_id, program_id, .. } => {
                s.hunts += 1;
                current.hunts += 1;
                let last = state.hunts.get(hacker_id.index()).and_then(|h| h.last_program);
                if last.is_some_and(|p| p != *program_id) {
                    current.switches += 1;
                }
            }
            EventKind::ReportSubmitted { report } => {
                s.submissions += 1;
                current.submissions += 1;
                if report.latent_vuln_id.is_some() {
                    s.valid_submissions += 1;
                    current.valid_submissions += 1;
                } else {
                    s.invalid_submissions += 1;
                }
                per_program.entry((win_start, report.program_id.index())).or_default().0 += 1;
                let sniped = state.reports_with_fingerprint(&report.fingerprint).iter().any(|r| {
                    state.reports[r.index()]
                        .assignments
                        .iter()
                        .any(|a| state.assignments[a.index()].verifier_id == report.reporter_id)
                });
                if sniped {
                    s.snipes += 1;
                }
            }
            EventKind::SubmissionRejected { .. } => s.gate_rejections += 1,
            EventKind::ReportValidated {
                report_id,
                performer,
                outcome,
            } => {
                if *performer == Performer::Vendor {
                    s.vendor_validations += 1;
                    s.vendor_overhead_minutes += cost.c_v;
                    current.vendor_overhead_minutes += cost.c_v;
                }
                match outcome {
                    ValidationOutcome::Duplicate { .. } => {
                        s.duplicates += 1;
                        if snipe_of(&state, *report_id) {
                            s.snipes_closed_duplicate += 1;
                        }
                    }
                    ValidationOutcome::OutOfScope => s.out_of_scope += 1,
                    _ => {}
                }
            }
            EventKind::VendorCorrespondence { .. } => {
                s.vendor_correspondences += 1;
                s.vendor_overhead_minutes += cost.c_c;
                current.vendor_overhead_minutes += cost.c_c;
            }
            EventKind::InHouseScheduled { performer, .. } => match performer {
                Performer::Vendor => {
                    s.vendor_in_house += 1;
                    s.vendor_overhead_minutes += cost.c_h;
                    current.vendor_overhead_minutes += cost.c_h;
                }
                Performer::Platform => s.platform_in_house += 1,
                Performer::Nobody => {}
            },
            EventKind::PlatformFeeCharged { amount, .. } => s.platform_fees += amount,
            EventKind::VerdictRecorded { .. } => s.verdicts += 1,
            EventKind::AssignmentExpired { .. } => s.expired_assignments += 1,
            EventKind::ReportDecided { report_id, decision } => match decision.kind {
                DecisionKind::Actionable => {
                    s.actionable += 1;
                    current.actionable += 1;
                    let report = &state.reports[report_id.index()].report;
                    actionable_delays.push(ev.tick.saturating_sub(report.submitted_at) as f64);
                    per_program.entry((win_start, report.program_id.index())).or_default().1 += 1;
                }
                DecisionKind::DismissedWithReasoning => s.dismissed += 1,
                DecisionKind::Escalated => s.escalated += 1,
            },
            EventKind::VendorOverride { report_id, decision } => {
                s.vendor_overrides += 1;
                match decision {
                    DecisionKind::Actionable => {
                        s.actionable += 1;
                        current.actionable += 1;
                        let report = &state.reports[report_id.index()].report;
                        actionable_delays.push(ev.tick.saturating_sub(report.submitted_at) as f64);
                        per_program.entry((win_start, report.program_id.index())).or_default().1 += 1;
                    }
                    DecisionKind::DismissedWithReasoning => s.dismissed += 1,
                    DecisionKind::Escalated => {}
                }
            }
            EventKind::RewardIssued { reward } => {
                s.reward_spend += reward.amount;
                current.reward_spend += reward.amount;
                match reward.kind {
                    RewardKind::ReporterBounty => s.bounty_spend += reward.amount,
                    RewardKind::VerifierFee => {
                        s.verifier_fees += reward.amount;
                        s.verifier_fee_count += 1;
                    }
                    RewardKind::PointsOnly | RewardKind::Feedback => {}
                }
            }
            EventKind::Leak { report_id, .. } => {
                s.leak_count += 1;
                let severity = state.reports[report_id.index()].report.claimed_severity;
                s.leak_exposure += cost.leak_penalty * severity.bounty_multiplier();
            }
            EventKind::BudgetExhausted { .. } => s.budget_exhausted += 1,
            _ => {}
        }
        state.apply(ev)?;
    }
    let horizon = s.horizon.max(state.tick);
    while current.start < horizon {
        close(&mut current, &state, &mut windows);
    }
    if let Some(last) = windows.last_mut() {
        last.end = last.end.min(horizon.max(last.start));
    }

    s.snr = s.valid_submissions as f64 / s.invalid_submissions.max(1) as f64;
    s.coverage = coverage(&state);
    s.time_to_actionable = if actionable_delays.is_empty() {
        0.0
    } else {
        actionable_delays.iter().sum::<f64>() / actionable_delays.len() as f64
    };
    s.mean_engagement = if windows.is_empty() {
        mean_engagement(&state, horizon, ctx.engagement_decay)
    } else {
        windows.iter().map(|w| w.mean_engagement).sum::<f64>() / windows.len() as f64
    };
    s.switch_count = state.hunts.iter().map(|h| h.switches).sum();
    s.switches_per_agent = if state.hackers.is_empty() {
        0.0
    } else {
        s.switch_count as f64 / state.hackers.len() as f64
    };

    let names: Vec<String> = state.programs.iter().map(|p| p.program.name.clone()).collect();
    let mut program_windows = Vec::new();
    for w in &windows {
        for (i, name) in names.iter().enumerate() {
            let (submissions, actionable) = per_program.get(&(w.start, i)).copied().unwrap_or_default();
            program_windows.push(ProgramWindowRow {
                start: w.start,
                program: name.clone(),
                submissions,
                actionable,
            });
        }
    }
    Ok(RunMetrics {
        summary: s,
        windows,
        program_windows,
    })
}

fn snipe_of(state: &WorldState, report_id: crowdvet_core::ids::ReportId) -> bool {
    let report = &state.reports[report_id.index()].report;
    let reporter: HackerId = report.reporter_id;
    state
        .reports_with_fingerprint(&report.fingerprint)
        .iter()
        .filter(|r| **r != report_id)
        .any(|r| {
            state.reports[r.index()]
                .assignments
                .iter()
                .any(|a| state.assignments[a.index()].verifier_id == reporter)
        })
}

/// Metrics of a log, with the context read from the log itself.
pub fn metrics_from_log(log: &EventLog) -> Result<RunMetrics, MetricsError> {
    let ctx = MetricsContext::from_log(log)?;
    compute_metrics(log, &ctx)
}
