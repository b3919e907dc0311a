use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::domain::UserType;

/// Goals a gamification element can serve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Issue {
    /// Include every part of the process (discovery and verification).
    A1,
    /// Enhance and support the experience.
    A2,
    /// Incentivise any and all participation.
    A3,
    /// Encourage prolonged activity.
    A4,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GamificationElement {
    BadgesAchievements,
    Leaderboards,
    PointsExperience,
    Certificates,
    Challenges,
    SocialStatus,
    Competition,
    GuildsTeams,
    MeaningPurpose,
}

impl GamificationElement {
    pub const ALL: [GamificationElement; 9] = [
        Self::BadgesAchievements,
        Self::Leaderboards,
        Self::PointsExperience,
        Self::Certificates,
        Self::Challenges,
        Self::SocialStatus,
        Self::Competition,
        Self::GuildsTeams,
        Self::MeaningPurpose,
    ];

    pub fn user_type(self) -> UserType {
        use GamificationElement::*;
        match self {
            BadgesAchievements | Leaderboards | PointsExperience => UserType::Player,
            Certificates | Challenges => UserType::Achiever,
            SocialStatus | Competition | GuildsTeams => UserType::Socialiser,
            MeaningPurpose => UserType::Philanthropist,
        }
    }

    pub fn issues_addressed(self) -> BTreeSet<Issue> {
        use GamificationElement::*;
        use Issue::*;
        let issues: &[Issue] = match self {
            BadgesAchievements => &[A1, A2, A3, A4],
            Leaderboards => &[A1, A3, A4],
            PointsExperience => &[A1, A2, A3],
            Certificates => &[A1, A2, A3],
            Challenges => &[A1, A2, A3, A4],
            SocialStatus => &[A1, A2, A3],
            Competition => &[A2, A3],
            GuildsTeams => &[A2, A3],
            MeaningPurpose => &[A2, A3],
        };
        issues.iter().copied().collect()
    }

    /// Elements that also serve the general "progress and feedback" and
    /// "investment" concerns for every user type.
    pub fn is_general(self) -> bool {
        matches!(self, Self::PointsExperience | Self::BadgesAchievements)
    }

    pub fn display_name(self) -> &'static str {
        use GamificationElement::*;
        match self {
            BadgesAchievements => "Badges & Achievements",
            Leaderboards => "Leaderboards",
            PointsExperience => "Points & Experience",
            Certificates => "Certificates",
            Challenges => "Challenges",
            SocialStatus => "Social Status",
            Competition => "Competition",
            GuildsTeams => "Guilds or Teams",
            MeaningPurpose => "Meaning or Purpose",
        }
    }
}

/// How strongly a user type responds to an element: 1.0 for the type's own
/// elements, 0.5 for general feedback elements, 0.1 otherwise.
pub fn affinity(element: GamificationElement, user_type: UserType) -> f64 {
    if element.user_type() == user_type {
        1.0
    } else if element.is_general() {
        0.5
    } else {
        0.1
    }
}

/// One row of the shipped element table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementRow {
    pub user_type: String,
    pub user_motivation: String,
    pub element: String,
    pub description: String,
    pub issues_addressed: Vec<Issue>,
}

pub const TABLE_FIXTURE: &str = include_str!("../../data/gamification_elements.json");

impl ElementRow {
    pub fn load_fixture() -> Vec<ElementRow> {
        serde_json::from_str(TABLE_FIXTURE).expect("shipped element table is valid JSON")
    }
}
