//! Reward computation for decided reports.

use crate::domain::{
    DecisionKind, HackerProfile, PointEvent, Report, RewardEvent, RewardKind, VerificationAssignment,
};
use crate::gamify::{award_points, GamifyError};
use crate::ids::Tick;
use crate::state::ProgramState;

/// Bounty for the reporter's `rank`-th actionable report in the program:
/// the program's ladder at that rank, scaled by severity and by the payout
/// curve at the time of submission.
pub fn reporter_bounty(program: &ProgramState, report: &Report, rank: u32) -> f64 {
    let p = &program.program;
    let since_launch = report.submitted_at.saturating_sub(p.launch_tick);
    p.payoff.bounty_for(rank)
        * report.claimed_severity.bounty_multiplier()
        * p.reward_schedule.payout_multiplier(since_launch)
}

/// Reward events for a decided report: the reporter's bounty or feedback
/// (none when escalated) followed by one fee per completed assignment.
#[allow(clippy::too_many_arguments)]
pub fn settlement_rewards(
    program: &ProgramState,
    report: &Report,
    reporter: &HackerProfile,
    rank: u32,
    kind: DecisionKind,
    completed: &[&VerificationAssignment],
    verifiers: &[&HackerProfile],
    points_enabled: bool,
    tick: Tick,
) -> Result<Vec<RewardEvent>, GamifyError> {
    let schedule = &program.program.reward_schedule;
    let points = |ev: PointEvent, who: &HackerProfile| -> Result<u64, GamifyError> {
        if points_enabled {
            award_points(ev, who, schedule, tick)
        } else {
            Ok(0)
        }
    };
    let mut out = Vec::with_capacity(completed.len() + 1);
    let base = RewardEvent {
        recipient_id: report.reporter_id,
        program_id: report.program_id,
        report_id: report.report_id,
        assignment_id: None,
        kind: RewardKind::Feedback,
        amount: 0.0,
        points: 0,
        tick,
    };
    match kind {
        DecisionKind::Actionable => out.push(RewardEvent {
            kind: RewardKind::ReporterBounty,
            amount: reporter_bounty(program, report, rank),
            points: points(PointEvent::AcceptedSubmission, reporter)?,
            ..base.clone()
        }),
        DecisionKind::DismissedWithReasoning => out.push(RewardEvent {
            points: points(PointEvent::Feedback, reporter)?,
            ..base.clone()
        }),
        DecisionKind::Escalated => {}
    }
    for (a, v) in completed.iter().zip(verifiers) {
        out.push(RewardEvent {
            recipient_id: a.verifier_id,
            assignment_id: Some(a.assignment_id),
            kind: RewardKind::VerifierFee,
            amount: program.program.verifier_fee,
            points: points(PointEvent::VerificationCompleted, v)?,
            ..base.clone()
        });
    }
    Ok(out)
}
