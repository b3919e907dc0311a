//! Points, badges, certificates, leaderboards and the engagement model.

mod elements;
mod engagement;
mod leaderboard;
mod rewards;

pub use elements::{
    affinity, ElementRow, GamificationElement, Issue, TABLE_FIXTURE,
};
pub use engagement::{engagement_update, trigger_elements, EngagementParams, Trigger};
pub use leaderboard::{leaderboard_rank, Leaderboard, LeaderboardEntry, LeaderboardScope, Subject};
pub use rewards::{award_points, evaluate_badges, issue_certificate, GamifyError};
