//! Run configuration, read from TOML.
//!
//! Every table rejects unknown keys. Anything left out takes the default
//! shown by `crowdvet validate --config <file>`.

use std::collections::BTreeMap;
use std::path::Path;

use crowdvet_core::domain::{CurvePoint, EventWindow, PayoffModel, PointEvent, ProcessVariant, Severity};
use crowdvet_core::engine::{ValidationMode, VerifierSelection};
use crowdvet_core::gamify::EngagementParams;
use crowdvet_core::gates::{QualityWeights, RatePolicy, ReproductionModel, SignalPolicy};
use crowdvet_core::ids::Tick;
use crowdvet_core::ProtocolRules;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: String, message: String },
    #[error("invalid value for `{field}`: {message}")]
    Validation { field: String, message: String },
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> ConfigError {
    ConfigError::Validation {
        field: field.into(),
        message: message.into(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SimulationConfig {
    /// Number of ticks (hours) to simulate.
    pub horizon: Tick,
    pub variant: ProcessVariant,
    /// Seed used by `run` when none is given on the command line.
    pub seed: u64,
    pub population: PopulationConfig,
    /// Discovery and bounty model shared by programs without their own.
    pub payoff: PayoffModel,
    pub programs: Vec<ProgramConfig>,
    pub protocol: ProtocolConfig,
    pub policies: PolicyConfig,
    pub gamification: GamificationConfig,
    pub behavior: BehaviorConfig,
    pub reproduction: ReproductionModel,
    pub cost: CostModel,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PopulationConfig {
    pub agents: u32,
    /// Weights for player, achiever, socialiser, philanthropist.
    pub user_type_mix: [f64; 4],
    /// Weights for project-specific, non-project-specific, generalist.
    pub archetype_mix: [f64; 3],
    pub skill_min: f64,
    pub skill_max: f64,
    /// Mean number of report features (out of 8) per archetype, in the
    /// order of `archetype_mix`.
    pub feature_means: [f64; 3],
    /// Agents below this skill sometimes file reports about nothing.
    pub low_skill_threshold: f64,
    /// Chance per hunt that a low-skill agent files a noise report.
    pub noise_probability: f64,
    /// Socialisers are spread over this many teams at the start.
    pub teams: u32,
    pub initial_engagement: f64,
}

impl Default for PopulationConfig {
    fn default() -> Self {
        Self {
            agents: 50,
            user_type_mix: [1.0; 4],
            archetype_mix: [0.6, 0.3, 0.1],
            skill_min: 0.2,
            skill_max: 1.0,
            feature_means: [6.0, 3.0, 4.5],
            low_skill_threshold: 0.4,
            noise_probability: 0.05,
            teams: 3,
            initial_engagement: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StageConfig {
    /// Ticks after launch.
    pub offset: Tick,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProgramConfig {
    pub name: String,
    pub launch_tick: Tick,
    pub assets: u32,
    pub vulns: u32,
    /// Weights for low, medium, high, critical.
    pub severity_mix: [f64; 4],
    pub scope_stages: Vec<StageConfig>,
    pub budget: f64,
    pub verifier_fee: f64,
    pub payoff: Option<PayoffModel>,
    /// Bounty multiplier by ticks since launch.
    pub payout_curve: Vec<CurvePoint>,
    /// Point multipliers over absolute tick ranges.
    pub event_windows: Vec<EventWindow>,
}

impl Default for ProgramConfig {
    fn default() -> Self {
        Self {
            name: "program".into(),
            launch_tick: 0,
            assets: 8,
            vulns: 40,
            severity_mix: [0.3, 0.4, 0.2, 0.1],
            scope_stages: vec![
                StageConfig {
                    offset: 0,
                    fraction: 0.5,
                },
                StageConfig {
                    offset: 1460,
                    fraction: 1.0,
                },
            ],
            budget: 5_000_000.0,
            verifier_fee: 20.0,
            payoff: None,
            payout_curve: Vec::new(),
            event_windows: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ProtocolConfig {
    pub quorum_size: u32,
    pub quorum_threshold: u32,
    pub vendor_validation: ValidationMode,
    pub retain_dismissed_fingerprints: bool,
    pub verification_deadline: Tick,
    pub verifier_selection: VerifierSelection,
    pub vendor_turnaround: Tick,
    pub platform_turnaround: Tick,
    pub detail_request_quality: f64,
    /// Skill of vendor and platform staff doing in-house verification.
    pub in_house_skill: f64,
    /// The vendor verifies escalated reports itself and settles the reporter.
    pub vendor_override: bool,
}

impl Default for ProtocolConfig {
    fn default() -> Self {
        let r = ProtocolRules::default();
        Self {
            quorum_size: 3,
            quorum_threshold: 2,
            vendor_validation: r.validation,
            retain_dismissed_fingerprints: r.retain_dismissed_fingerprints,
            verification_deadline: r.verification_deadline,
            verifier_selection: r.selection,
            vendor_turnaround: r.vendor_turnaround,
            platform_turnaround: r.platform_turnaround,
            detail_request_quality: r.detail_request_quality,
            in_house_skill: 0.9,
            vendor_override: r.vendor_override,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct PolicyConfig {
    pub signal: SignalPolicy,
    pub rate: RatePolicy,
    pub quality_weights: QualityWeights,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GamificationConfig {
    /// Points, badges and certificates. Engagement dynamics run either way.
    pub enabled: bool,
    pub first_submission_multiplier: f64,
    pub badge_every_n_verifications: u32,
    pub base_points: BTreeMap<PointEvent, u64>,
    pub mastery_tiers: Vec<u32>,
    pub engagement: EngagementParams,
    /// One-time boost at an agent's first action.
    pub onboarding_boost: f64,
    /// Ticks between purpose broadcasts; 0 disables them.
    pub purpose_interval: Tick,
    /// Penalise engagement the first time points reach 100.
    pub round_number_hazard: bool,
    pub round_number_penalty: f64,
}

impl Default for GamificationConfig {
    fn default() -> Self {
        let s = crowdvet_core::domain::RewardSchedule::default();
        Self {
            enabled: true,
            first_submission_multiplier: s.first_submission_multiplier,
            badge_every_n_verifications: s.badge_every_n_verifications,
            base_points: s.base_points,
            mastery_tiers: ProtocolRules::default().mastery_tiers,
            engagement: EngagementParams::default(),
            onboarding_boost: 0.1,
            purpose_interval: 168,
            round_number_hazard: false,
            round_number_penalty: 0.3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BehaviorConfig {
    pub temperature: f64,
    pub effort: EffortReading,
    /// Utilities below this are not worth acting on.
    pub idle_floor: f64,
    pub colluder_fraction: f64,
    pub leaker_fraction: f64,
    pub leak_probability: f64,
    pub sniper_fraction: f64,
    pub sniper_activation: f64,
    /// Honest verifiers: share of failed reproductions reported as
    /// "cannot test" rather than "not reproduced".
    pub cannot_test_share: f64,
    /// Honest verifiers: chance of reproducing a report about nothing.
    pub false_positive_rate: f64,
}

impl Default for BehaviorConfig {
    fn default() -> Self {
        Self {
            temperature: 1.0,
            effort: EffortReading::Streak,
            idle_floor: 0.5,
            colluder_fraction: 0.0,
            leaker_fraction: 0.0,
            leak_probability: 0.1,
            sniper_fraction: 0.0,
            sniper_activation: 0.5,
            cannot_test_share: 0.3,
            false_positive_rate: 0.02,
        }
    }
}

/// Which effort the discovery decay `exp(-lambda * e)` is measured in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EffortReading {
    /// Consecutive hunts on the program; moving elsewhere starts afresh.
    Streak,
    /// Every hunt the agent ever spent on the program.
    Cumulative,
}

/// Vendor labour and platform pricing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CostModel {
    /// Minutes per vendor validation.
    pub c_v: f64,
    /// Minutes per vendor correspondence.
    pub c_c: f64,
    /// Minutes per in-house verification by the vendor.
    pub c_h: f64,
    /// Platform fee per forwarded report.
    pub f_p: f64,
    /// Exposure charged per leaked report, scaled by its severity's bounty
    /// multiplier.
    pub leak_penalty: f64,
}

impl Default for CostModel {
    fn default() -> Self {
        Self {
            c_v: 10.0,
            c_c: 20.0,
            c_h: 120.0,
            f_p: 50.0,
            leak_penalty: 1.0,
        }
    }
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            horizon: 4380,
            variant: ProcessVariant::CCrowdVetted,
            seed: 0,
            population: PopulationConfig::default(),
            payoff: PayoffModel::default(),
            programs: vec![
                ProgramConfig {
                    name: "alpha".into(),
                    ..ProgramConfig::default()
                },
                ProgramConfig {
                    name: "beta".into(),
                    ..ProgramConfig::default()
                },
            ],
            protocol: ProtocolConfig::default(),
            policies: PolicyConfig::default(),
            gamification: GamificationConfig::default(),
            behavior: BehaviorConfig::default(),
            reproduction: ReproductionModel::default(),
            cost: CostModel::default(),
        }
    }
}

fn unit(field: &str, v: f64) -> Result<(), ConfigError> {
    if (0.0..=1.0).contains(&v) {
        Ok(())
    } else {
        Err(invalid(field, format!("{v} is outside [0, 1]")))
    }
}

fn non_negative(field: &str, v: f64) -> Result<(), ConfigError> {
    if v >= 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(field, format!("{v} must be a finite number >= 0")))
    }
}

fn weights(field: &str, w: &[f64]) -> Result<(), ConfigError> {
    for (i, v) in w.iter().enumerate() {
        non_negative(&format!("{field}[{i}]"), *v)?;
    }
    if w.iter().sum::<f64>() <= 0.0 {
        return Err(invalid(field, "weights must not all be zero"));
    }
    Ok(())
}

impl SimulationConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let de = toml::Deserializer::parse(text).map_err(|e| ConfigError::Parse {
            path: String::new(),
            message: e.to_string(),
        })?;
        let cfg: SimulationConfig = serde_path_to_error::deserialize(de).map_err(|e| ConfigError::Parse {
            path: e.path().to_string(),
            message: e.inner().to_string().trim_end().to_string(),
        })?;
        // a zero horizon is fine for a programmatic run but never what a
        // config file means
        if cfg.horizon == 0 {
            return Err(invalid("horizon", "must be positive"));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is representable as TOML")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let p = &self.population;
        weights("population.user_type_mix", &p.user_type_mix)?;
        weights("population.archetype_mix", &p.archetype_mix)?;
        unit("population.skill_min", p.skill_min)?;
        unit("population.skill_max", p.skill_max)?;
        if p.skill_min > p.skill_max {
            return Err(invalid("population.skill_min", "must not exceed population.skill_max"));
        }
        for (i, m) in p.feature_means.iter().enumerate() {
            if !(0.0..=8.0).contains(m) {
                return Err(invalid(format!("population.feature_means[{i}]"), "must lie in [0, 8]"));
            }
        }
        unit("population.low_skill_threshold", p.low_skill_threshold)?;
        unit("population.noise_probability", p.noise_probability)?;
        unit("population.initial_engagement", p.initial_engagement)?;

        check_payoff("payoff", &self.payoff)?;
        if self.programs.is_empty() {
            return Err(invalid("programs", "at least one program is required"));
        }
        for (i, prog) in self.programs.iter().enumerate() {
            let f = |name: &str| format!("programs[{i}].{name}");
            if prog.assets == 0 {
                return Err(invalid(f("assets"), "must be positive"));
            }
            weights(&f("severity_mix"), &prog.severity_mix)?;
            non_negative(&f("budget"), prog.budget)?;
            non_negative(&f("verifier_fee"), prog.verifier_fee)?;
            if let Some(payoff) = &prog.payoff {
                check_payoff(&f("payoff"), payoff)?;
            }
            if prog.scope_stages.is_empty() {
                return Err(invalid(f("scope_stages"), "at least one stage is required"));
            }
            if prog.scope_stages[0].offset != 0 {
                return Err(invalid(f("scope_stages[0].offset"), "the first stage opens at launch (offset 0)"));
            }
            for (j, s) in prog.scope_stages.iter().enumerate() {
                if !(s.fraction > 0.0 && s.fraction <= 1.0) {
                    return Err(invalid(f(&format!("scope_stages[{j}].fraction")), "must lie in (0, 1]"));
                }
            }
            for (j, w) in prog.scope_stages.windows(2).enumerate() {
                if w[1].offset <= w[0].offset || w[1].fraction < w[0].fraction {
                    return Err(invalid(
                        f(&format!("scope_stages[{}]", j + 1)),
                        "stages must have increasing offsets and non-decreasing fractions",
                    ));
                }
            }
            let schedule = self.reward_schedule(prog);
            schedule.validate().map_err(|m| invalid(f("payout_curve"), m))?;
        }

        let q = &self.protocol;
        if q.quorum_size == 0 {
            return Err(invalid("protocol.quorum_size", "must be positive"));
        }
        if q.quorum_threshold == 0 {
            return Err(invalid("protocol.quorum_threshold", "must be positive"));
        }
        if q.quorum_threshold > q.quorum_size {
            return Err(invalid(
                "protocol.quorum_threshold",
                format!(
                    "threshold {} exceeds quorum_size {}",
                    q.quorum_threshold, q.quorum_size
                ),
            ));
        }
        if q.verification_deadline == 0 {
            return Err(invalid("protocol.verification_deadline", "must be positive"));
        }
        unit("protocol.detail_request_quality", q.detail_request_quality)?;
        unit("protocol.in_house_skill", q.in_house_skill)?;

        let pol = &self.policies;
        if !(pol.signal.threshold >= 0.0 && pol.signal.threshold.is_finite()) {
            return Err(invalid("policies.signal.threshold", "must be a finite number >= 0"));
        }
        if pol.rate.window == 0 {
            return Err(invalid("policies.rate.window", "must be positive"));
        }
        if pol.rate.max_reports == 0 {
            return Err(invalid("policies.rate.max_reports", "must be positive"));
        }

        let g = &self.gamification;
        if !(g.first_submission_multiplier >= 1.0 && g.first_submission_multiplier.is_finite()) {
            return Err(invalid("gamification.first_submission_multiplier", "must be >= 1"));
        }
        if g.badge_every_n_verifications == 0 {
            return Err(invalid("gamification.badge_every_n_verifications", "must be positive"));
        }
        if !(g.engagement.decay > 0.0 && g.engagement.decay.is_finite()) {
            return Err(invalid("gamification.engagement.decay", "must be positive"));
        }
        non_negative("gamification.engagement.gain", g.engagement.gain)?;
        unit("gamification.onboarding_boost", g.onboarding_boost)?;
        unit("gamification.round_number_penalty", g.round_number_penalty)?;

        let b = &self.behavior;
        if !(b.temperature > 0.0 && b.temperature.is_finite()) {
            return Err(invalid("behavior.temperature", "must be positive"));
        }
        non_negative("behavior.idle_floor", b.idle_floor)?;
        for (name, v) in [
            ("behavior.colluder_fraction", b.colluder_fraction),
            ("behavior.leaker_fraction", b.leaker_fraction),
            ("behavior.leak_probability", b.leak_probability),
            ("behavior.sniper_fraction", b.sniper_fraction),
            ("behavior.sniper_activation", b.sniper_activation),
            ("behavior.cannot_test_share", b.cannot_test_share),
            ("behavior.false_positive_rate", b.false_positive_rate),
        ] {
            unit(name, v)?;
        }
        if b.colluder_fraction + b.leaker_fraction + b.sniper_fraction > 1.0 {
            return Err(invalid("behavior", "adversary fractions sum to more than 1"));
        }

        let r = &self.reproduction;
        for (name, v) in [
            ("reproduction.skill_base", r.skill_base),
            ("reproduction.skill_weight", r.skill_weight),
            ("reproduction.difficulty_weight", r.difficulty_weight),
        ] {
            unit(name, v)?;
        }

        let c = &self.cost;
        for (name, v) in [("cost.c_v", c.c_v), ("cost.c_c", c.c_c), ("cost.c_h", c.c_h), ("cost.f_p", c.f_p), ("cost.leak_penalty", c.leak_penalty)] {
            non_negative(name, v)?;
        }
        Ok(())
    }

    pub fn payoff_for(&self, program: &ProgramConfig) -> PayoffModel {
        program.payoff.unwrap_or(self.payoff)
    }

    pub fn reward_schedule(&self, program: &ProgramConfig) -> crowdvet_core::domain::RewardSchedule {
        crowdvet_core::domain::RewardSchedule {
            first_submission_multiplier: self.gamification.first_submission_multiplier,
            badge_every_n_verifications: self.gamification.badge_every_n_verifications,
            base_points: self.gamification.base_points.clone(),
            payout_curve: program.payout_curve.clone(),
            event_windows: program.event_windows.clone(),
        }
    }

    pub fn protocol_rules(&self) -> ProtocolRules {
        let q = &self.protocol;
        ProtocolRules {
            validation: q.vendor_validation,
            retain_dismissed_fingerprints: q.retain_dismissed_fingerprints,
            verification_deadline: q.verification_deadline,
            selection: q.verifier_selection,
            signal: self.policies.signal,
            rate: self.policies.rate,
            quality_weights: self.policies.quality_weights,
            platform_fee: self.cost.f_p,
            vendor_turnaround: q.vendor_turnaround,
            platform_turnaround: q.platform_turnaround,
            detail_request_quality: q.detail_request_quality,
            points_enabled: self.gamification.enabled,
            mastery_tiers: self.gamification.mastery_tiers.clone(),
            vendor_override: q.vendor_override,
        }
    }
}

fn check_payoff(field: &str, p: &PayoffModel) -> Result<(), ConfigError> {
    if !(p.p0 > 0.0 && p.p0 <= 1.0) {
        return Err(invalid(format!("{field}.p0"), "must lie in (0, 1]"));
    }
    non_negative(&format!("{field}.lambda"), p.lambda)?;
    non_negative(&format!("{field}.b0"), p.b0)?;
    if !(p.alpha > 0.0 && p.alpha.is_finite()) {
        return Err(invalid(format!("{field}.alpha"), "must be positive"));
    }
    Ok(())
}

pub fn load_config(path: &Path) -> Result<SimulationConfig, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.display().to_string(),
        source,
    })?;
    SimulationConfig::from_toml(&text)
}

/// Severity for a latent vuln drawn from `mix` with a uniform `u`.
pub(crate) fn severity_from(mix: &[f64; 4], u: f64) -> Severity {
    let total: f64 = mix.iter().sum();
    let mut acc = 0.0;
    for (w, s) in mix.iter().zip(Severity::ALL) {
        acc += w / total;
        if u < acc {
            return s;
        }
    }
    Severity::Critical
}
