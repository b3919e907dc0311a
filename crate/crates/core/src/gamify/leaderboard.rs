use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::event::{EventKind, EventLog};
use crate::ids::{HackerId, ProgramId, TeamId, Tick};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LeaderboardScope {
    Global,
    Program(ProgramId),
    Team,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Subject {
    Hacker(HackerId),
    Team(TeamId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeaderboardEntry {
    pub subject: Subject,
    pub points: u64,
    /// When the subject first reached `points`.
    pub achieved_at: Tick,
}

/// Entries sorted by points (descending), then by who got there first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Leaderboard {
    pub scope: LeaderboardScope,
    entries: Vec<LeaderboardEntry>,
}

impl Leaderboard {
    pub fn from_entries(scope: LeaderboardScope, mut entries: Vec<LeaderboardEntry>) -> Self {
        entries.sort_by(|a, b| {
            b.points
                .cmp(&a.points)
                .then(a.achieved_at.cmp(&b.achieved_at))
                .then(a.subject.cmp(&b.subject))
        });
        Self { scope, entries }
    }

    /// Builds a board from the points carried by reward events in the ledger.
    /// Only subjects with at least one award appear.
    pub fn from_log(log: &EventLog, scope: LeaderboardScope) -> Self {
        let mut teams: BTreeMap<HackerId, TeamId> = BTreeMap::new();
        let mut totals: BTreeMap<Subject, (u64, Tick)> = BTreeMap::new();
        for ev in log {
            match &ev.event {
                EventKind::HackerRegistered { profile } => {
                    if let Some(t) = profile.team_id {
                        teams.insert(profile.hacker_id, t);
                    }
                }
                EventKind::TeamJoined { hacker_id, team_id } => {
                    teams.insert(*hacker_id, *team_id);
                }
                EventKind::RewardIssued { reward } if reward.points > 0 => {
                    let subject = match scope {
                        LeaderboardScope::Global => Subject::Hacker(reward.recipient_id),
                        LeaderboardScope::Program(p) if p == reward.program_id => {
                            Subject::Hacker(reward.recipient_id)
                        }
                        LeaderboardScope::Program(_) => continue,
                        LeaderboardScope::Team => match teams.get(&reward.recipient_id) {
                            Some(t) => Subject::Team(*t),
                            None => continue,
                        },
                    };
                    let e = totals.entry(subject).or_insert((0, ev.tick));
                    e.0 += reward.points;
                    e.1 = ev.tick;
                }
                _ => {}
            }
        }
        let entries = totals
            .into_iter()
            .map(|(subject, (points, achieved_at))| LeaderboardEntry {
                subject,
                points,
                achieved_at,
            })
            .collect();
        Self::from_entries(scope, entries)
    }

    pub fn entries(&self) -> &[LeaderboardEntry] {
        &self.entries
    }
}

/// 1-based position of `subject`, or `None` if it has no entry.
pub fn leaderboard_rank(board: &Leaderboard, subject: Subject) -> Option<usize> {
    board
        .entries
        .iter()
        .position(|e| e.subject == subject)
        .map(|i| i + 1)
}
