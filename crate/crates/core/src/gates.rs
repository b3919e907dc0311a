//! Submission-quality policies: signal requirement, rate limiter and
//! report feature scoring.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{FeatureSet, ReportFeature, SubmissionStats};
use crate::ids::Tick;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SignalPolicy {
    pub threshold: f64,
    /// Hackers with fewer resolved submissions than this bypass the gate.
    pub grace_submissions: u32,
}

impl Default for SignalPolicy {
    fn default() -> Self {
        Self {
            threshold: 0.25,
            grace_submissions: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RatePolicy {
    pub window: Tick,
    pub max_reports: u32,
}

impl Default for RatePolicy {
    /// Five reports per simulated week.
    fn default() -> Self {
        Self {
            window: 168,
            max_reports: 5,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum PolicyError {
    #[error("quality weights must be non-negative and sum to 1 (sum = {0})")]
    BadWeights(f64),
    #[error("{name} = {value} is outside [0, 1]")]
    Domain { name: &'static str, value: f64 },
}

/// Weight of each report feature in the quality score.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 8]", into = "[f64; 8]")]
pub struct QualityWeights([f64; 8]);

impl QualityWeights {
    pub fn new(weights: [f64; 8]) -> Result<Self, PolicyError> {
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|w| *w < 0.0 || !w.is_finite()) || (sum - 1.0).abs() > 1e-9 {
            return Err(PolicyError::BadWeights(sum));
        }
        Ok(Self(weights))
    }

    pub fn uniform() -> Self {
        Self([0.125; 8])
    }

    pub fn weight(&self, feature: ReportFeature) -> f64 {
        self.0[feature.index()]
    }
}

impl Default for QualityWeights {
    fn default() -> Self {
        Self::uniform()
    }
}

impl TryFrom<[f64; 8]> for QualityWeights {
    type Error = PolicyError;

    fn try_from(w: [f64; 8]) -> Result<Self, Self::Error> {
        Self::new(w)
    }
}

impl From<QualityWeights> for [f64; 8] {
    fn from(w: QualityWeights) -> Self {
        w.0
    }
}

/// Ratio of verified to unverified submissions, with the denominator
/// floored at one.
pub fn signal_score(stats: &SubmissionStats) -> f64 {
    f64::from(stats.verified_count) / f64::from(stats.unverified_count.max(1))
}

pub fn signal_gate(stats: &SubmissionStats, policy: &SignalPolicy) -> bool {
    if stats.total_submissions() < policy.grace_submissions {
        return true;
    }
    signal_score(stats) >= policy.threshold
}

/// Passes iff fewer than `max_reports` of `history` fall in `(now - window, now]`.
pub fn rate_limit_check(history: &[Tick], now: Tick, policy: &RatePolicy) -> bool {
    let in_window = history
        .iter()
        .filter(|&&t| t <= now && t.saturating_add(policy.window) > now)
        .count();
    in_window < policy.max_reports as usize
}

pub fn quality_score(features: FeatureSet, weights: &QualityWeights) -> f64 {
    features.iter().map(|f| weights.weight(f)).sum::<f64>().clamp(0.0, 1.0)
}

/// Coefficients of the reproduction model. The functional form is a modelling
/// choice; the harness can sweep these.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReproductionModel {
    pub skill_base: f64,
    pub skill_weight: f64,
    pub difficulty_weight: f64,
}

impl Default for ReproductionModel {
    fn default() -> Self {
        Self {
            skill_base: 0.5,
            skill_weight: 0.5,
            difficulty_weight: 0.5,
        }
    }
}

fn unit(name: &'static str, value: f64) -> Result<f64, PolicyError> {
    if (0.0..=1.0).contains(&value) {
        Ok(value)
    } else {
        Err(PolicyError::Domain { name, value })
    }
}

impl ReproductionModel {
    pub fn probability(&self, quality: f64, verifier_skill: f64, difficulty: f64) -> Result<f64, PolicyError> {
        let quality = unit("quality", quality)?;
        let skill = unit("verifier_skill", verifier_skill)?;
        let difficulty = unit("difficulty", difficulty)?;
        let p = quality
            * (self.skill_base + self.skill_weight * skill)
            * (1.0 - self.difficulty_weight * difficulty);
        Ok(p.clamp(0.0, 1.0))
    }
}

/// `quality * (0.5 + 0.5 skill) * (1 - 0.5 difficulty)`, clamped to [0, 1].
pub fn reproduction_probability(quality: f64, verifier_skill: f64, difficulty: f64) -> Result<f64, PolicyError> {
    ReproductionModel::default().probability(quality, verifier_skill, difficulty)
}
