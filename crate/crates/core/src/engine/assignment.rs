//! Verifier panel selection.

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::domain::HackerProfile;
use crate::gates::signal_score;
use crate::ids::HackerId;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifierSelection {
    #[default]
    Uniform,
    /// Weight each candidate by `1 + signal_score`.
    ReputationWeighted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("need {needed} eligible verifiers, found {available}")]
pub struct InsufficientVerifiers {
    pub needed: u32,
    pub available: usize,
}

/// Vetted hackers other than the reporter and the excluded ones, in id order.
pub fn eligible_pool<'a>(
    pool: &'a [HackerProfile],
    reporter: HackerId,
    exclude: &[HackerId],
) -> Vec<&'a HackerProfile> {
    let mut out: Vec<&HackerProfile> = pool
        .iter()
        .filter(|h| h.vetted && h.hacker_id != reporter && !exclude.contains(&h.hacker_id))
        .collect();
    out.sort_by_key(|h| h.hacker_id);
    out
}

/// Draws `k` distinct verifiers from the eligible part of `pool`. The result
/// is sorted by id and depends only on the pool and the rng state.
pub fn select_verifiers<R: Rng + ?Sized>(
    pool: &[HackerProfile],
    reporter: HackerId,
    exclude: &[HackerId],
    k: u32,
    selection: VerifierSelection,
    rng: &mut R,
) -> Result<Vec<HackerId>, InsufficientVerifiers> {
    let eligible = eligible_pool(pool, reporter, exclude);
    if eligible.len() < k as usize {
        return Err(InsufficientVerifiers {
            needed: k,
            available: eligible.len(),
        });
    }
    let mut chosen: Vec<HackerId> = match selection {
        VerifierSelection::Uniform => index::sample(rng, eligible.len(), k as usize)
            .into_iter()
            .map(|i| eligible[i].hacker_id)
            .collect(),
        VerifierSelection::ReputationWeighted => eligible
            .choose_multiple_weighted(rng, k as usize, |h| 1.0 + signal_score(&h.stats))
            .expect("weights are finite and positive")
            .map(|h| h.hacker_id)
            .collect(),
    };
    chosen.sort();
    Ok(chosen)
}
