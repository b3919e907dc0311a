use thiserror::Error;

use crate::domain::{BadgeId, CertificateTier, HackerProfile, PointEvent, RewardSchedule};
use crate::ids::Tick;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GamifyError {
    #[error("no base points configured for {0:?}")]
    UnknownEventKind(PointEvent),
}

/// Points for one accomplishment. The hacker's first accepted submission is
/// boosted by the schedule's first-submission multiplier, and any event
/// window open at `tick` multiplies the result.
pub fn award_points(
    kind: PointEvent,
    profile: &HackerProfile,
    schedule: &RewardSchedule,
    tick: Tick,
) -> Result<u64, GamifyError> {
    let base = *schedule
        .base_points
        .get(&kind)
        .ok_or(GamifyError::UnknownEventKind(kind))?;
    let mut multiplier = schedule.window_multiplier(tick);
    if kind == PointEvent::AcceptedSubmission && profile.stats.verified_count == 0 {
        multiplier *= schedule.first_submission_multiplier;
    }
    Ok((base as f64 * multiplier).round().max(0.0) as u64)
}

fn milestone_badge(milestone: u32) -> BadgeId {
    BadgeId(format!("verifications-{milestone}"))
}

/// Milestone badges (one per `badge_every_n_verifications` completed
/// verifications) that the profile qualifies for but does not hold yet.
pub fn evaluate_badges(profile: &HackerProfile, schedule: &RewardSchedule) -> Vec<BadgeId> {
    let every = schedule.badge_every_n_verifications.max(1);
    let done = profile.stats.verifications_completed;
    (1..=done / every)
        .map(|i| milestone_badge(i * every))
        .filter(|b| !profile.badges.contains(b))
        .collect()
}

pub fn issue_certificate(profile: &HackerProfile, mastery_threshold: u32) -> Option<CertificateTier> {
    let tier = CertificateTier(mastery_threshold);
    (profile.stats.verified_count >= mastery_threshold && !profile.certificates.contains(&tier))
        .then_some(tier)
}
