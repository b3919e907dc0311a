use serde::{Deserialize, Serialize};

use super::elements::{affinity, GamificationElement};
use crate::domain::UserType;

/// Occurrences that fire gamification elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trigger {
    PointsAwarded,
    BadgeEarned,
    CertificateIssued,
    ScopeStageActivated,
    TeamJoined,
    PurposeBroadcast,
    SubmissionRace,
}

pub fn trigger_elements(trigger: Trigger) -> Vec<GamificationElement> {
    use GamificationElement::*;
    match trigger {
        Trigger::PointsAwarded => vec![PointsExperience, Leaderboards],
        Trigger::BadgeEarned => vec![BadgesAchievements],
        Trigger::CertificateIssued => vec![Certificates],
        Trigger::ScopeStageActivated => vec![Challenges],
        Trigger::TeamJoined => vec![GuildsTeams, SocialStatus],
        Trigger::PurposeBroadcast => vec![MeaningPurpose],
        Trigger::SubmissionRace => vec![Competition],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EngagementParams {
    /// Exponential decay rate per tick.
    pub decay: f64,
    /// Engagement added per trigger before affinity weighting.
    pub gain: f64,
}

impl Default for EngagementParams {
    fn default() -> Self {
        Self {
            decay: 0.001,
            gain: 0.05,
        }
    }
}

/// Decays `engagement` over `dt` ticks and adds the affinity-weighted gain of
/// each trigger, clamped to [0, 1].
pub fn engagement_update(
    engagement: f64,
    user_type: UserType,
    triggers: &[GamificationElement],
    dt: u64,
    params: &EngagementParams,
) -> f64 {
    let decayed = engagement.clamp(0.0, 1.0) * (-params.decay * dt as f64).exp();
    let boost: f64 = triggers
        .iter()
        .map(|el| params.gain * affinity(*el, user_type))
        .sum();
    (decayed + boost).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use GamificationElement::*;

    #[test]
    fn decays_towards_zero_without_triggers() {
        let p = EngagementParams::default();
        let e = engagement_update(0.9, UserType::Player, &[], 50_000, &p);
        assert!(e < 1e-20);
        assert!(engagement_update(0.9, UserType::Player, &[], 10, &p) < 0.9);
    }

    #[test]
    fn saturates_at_one() {
        let p = EngagementParams::default();
        let e = engagement_update(1.0, UserType::Achiever, &[Challenges, Certificates], 0, &p);
        assert_eq!(e, 1.0);
    }

    #[test]
    fn players_gain_more_from_points_than_purpose() {
        let p = EngagementParams::default();
        let points = engagement_update(0.2, UserType::Player, &[PointsExperience], 0, &p);
        let purpose = engagement_update(0.2, UserType::Player, &[MeaningPurpose], 0, &p);
        assert!(points > purpose);
    }

    #[test]
    fn trigger_mapping() {
        assert_eq!(trigger_elements(Trigger::BadgeEarned), vec![BadgesAchievements]);
        assert_eq!(trigger_elements(Trigger::ScopeStageActivated), vec![Challenges]);
        assert_eq!(trigger_elements(Trigger::TeamJoined), vec![GuildsTeams, SocialStatus]);
        assert_eq!(trigger_elements(Trigger::PointsAwarded), vec![PointsExperience, Leaderboards]);
    }
}
