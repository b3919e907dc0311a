//! Hacker agents: choosing what to do, hunting and verifying.

use crowdvet_core::domain::{
    Archetype, FeatureSet, Fingerprint, HackerProfile, PayoffModel, Report, ReportDraft, ReportFeature, Severity,
    Verdict, VerdictKind, VerificationAssignment, VulnClass,
};
use crowdvet_core::gates::{quality_score, QualityWeights, ReproductionModel};
use crowdvet_core::ids::{AssignmentId, HackerId, ProgramId, Tick};
use crowdvet_core::state::{HuntRecord, WorldState};
use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{BehaviorConfig, EffortReading, PopulationConfig};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdversaryBehavior {
    Honest,
    /// Confirms every report filed by `partner`.
    Colluder { partner: HackerId },
    /// Leaks each report it verifies with probability `leak_prob`.
    Leaker { leak_prob: f64 },
    /// Votes down valid reports and, with probability `activation`, files
    /// the same finding itself on the next tick.
    Sniper { activation: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Agent {
    pub hacker_id: HackerId,
    pub behavior: AdversaryBehavior,
    /// Has taken its first action (and had its onboarding boost).
    pub onboarded: bool,
    /// The round-number hazard has been evaluated.
    pub hazard_checked: bool,
}

impl Agent {
    pub fn new(hacker_id: HackerId, behavior: AdversaryBehavior) -> Self {
        Self {
            hacker_id,
            behavior,
            onboarded: false,
            hazard_checked: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Action {
    Hunt(ProgramId),
    Verify(AssignmentId),
    Idle,
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
#[error("effort {0} is negative")]
pub struct NegativeEffort(pub f64);

/// Expected payoff of one more hunting tick: the chance of a find after
/// `effort` ticks times the bounty of the agent's `next_k`-th actionable
/// report in that program.
pub fn expected_marginal_payoff(
    payoff: &PayoffModel,
    effort: f64,
    next_k: u32,
    multiplier: f64,
) -> Result<f64, NegativeEffort> {
    if effort < 0.0 || effort.is_nan() {
        return Err(NegativeEffort(effort));
    }
    Ok(payoff.p0 * (-payoff.lambda * effort).exp() * payoff.bounty_for(next_k) * multiplier)
}

/// Effort an agent has sunk into `program`, under the chosen reading.
pub fn effort_on(hunts: &HuntRecord, program: ProgramId, reading: EffortReading) -> u64 {
    match reading {
        EffortReading::Streak if hunts.last_program == Some(program) => hunts.streak,
        EffortReading::Streak => 0,
        EffortReading::Cumulative => hunts.effort_on(program),
    }
}

/// Utility of hunting in `program` right now, or `None` if it is closed.
pub fn hunt_utility(world: &WorldState, hacker: HackerId, program: ProgramId, reading: EffortReading) -> Option<f64> {
    let p = world.program(program)?;
    if !p.is_open() || p.active_stage.is_none() {
        return None;
    }
    let effort = effort_on(&world.hunts[hacker.index()], program, reading);
    let since_launch = world.tick.saturating_sub(p.program.launch_tick);
    let multiplier = p.program.reward_schedule.payout_multiplier(since_launch);
    let next_k = world.actionable_rank(hacker, program) + 1;
    expected_marginal_payoff(&p.program.payoff, effort as f64, next_k, multiplier).ok()
}

/// The agent's most urgent open assignment.
pub fn next_assignment(world: &WorldState, hacker: HackerId) -> Option<&VerificationAssignment> {
    world
        .open_assignments_of(hacker)
        .min_by_key(|a| (a.deadline, a.assignment_id))
}

/// Participation is a coin flip weighted by current engagement. A
/// participating agent weighs verifying its most urgent assignment (worth
/// the verifier fee) against hunting in each open program (worth the
/// expected marginal payoff), drops options below the idle floor and picks
/// among the rest by softmax.
pub fn choose_action<R: Rng + ?Sized>(
    world: &WorldState,
    hacker: HackerId,
    engagement: f64,
    behavior: &BehaviorConfig,
    rng: &mut R,
) -> Action {
    if rng.gen::<f64>() >= engagement {
        return Action::Idle;
    }
    let mut options: Vec<(Action, f64)> = Vec::new();
    if let Some(a) = next_assignment(world, hacker) {
        let program = world.reports[a.report_id.index()].report.program_id;
        options.push((Action::Verify(a.assignment_id), world.programs[program.index()].program.verifier_fee));
    }
    for p in &world.programs {
        let id = p.program.program_id;
        if let Some(u) = hunt_utility(world, hacker, id, behavior.effort) {
            options.push((Action::Hunt(id), u));
        }
    }
    options.retain(|(_, u)| *u >= behavior.idle_floor);
    match options.len() {
        0 => Action::Idle,
        1 => options[0].0,
        _ => {
            let max = options.iter().map(|(_, u)| *u).fold(f64::NEG_INFINITY, f64::max);
            let weights: Vec<f64> = options
                .iter()
                .map(|(_, u)| ((u - max) / behavior.temperature).exp())
                .collect();
            let dist = WeightedIndex::new(&weights).expect("softmax weights are positive");
            options[dist.sample(rng)].0
        }
    }
}

/// Mean report feature count for an archetype.
pub fn feature_mean(archetype: Archetype, population: &PopulationConfig) -> f64 {
    match archetype {
        Archetype::ProjectSpecific => population.feature_means[0],
        Archetype::NonProjectSpecific => population.feature_means[1],
        Archetype::Generalist => population.feature_means[2],
    }
}

/// Each of the 8 features is included independently, so the count is
/// Binomial(8, mean / 8).
pub fn draw_features<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> FeatureSet {
    let p = (mean / 8.0).clamp(0.0, 1.0);
    ReportFeature::ALL.iter().copied().filter(|_| rng.gen::<f64>() < p).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct HuntOutcome {
    pub found: Option<crowdvet_core::ids::VulnId>,
    pub draft: Option<ReportDraft>,
}

/// One tick of hunting. Succeeds with probability
/// `p0 * exp(-lambda * e) * (0.5 + 0.5 * skill)` against a uniformly chosen
/// in-scope vulnerability that has not been fixed yet. Low-skill agents may
/// instead file a report about nothing.
pub fn hunt_step<R: Rng + ?Sized>(
    world: &WorldState,
    profile: &HackerProfile,
    program: ProgramId,
    population: &PopulationConfig,
    reading: EffortReading,
    rng: &mut R,
) -> HuntOutcome {
    let none = HuntOutcome { found: None, draft: None };
    let Some(p) = world.program(program) else {
        return none;
    };
    let mean = feature_mean(profile.archetype, population);
    if profile.skill < population.low_skill_threshold && rng.gen::<f64>() < population.noise_probability {
        let asset = p.program.assets.choose(rng).expect("programs have assets");
        let class = *VulnClass::ALL.choose(rng).expect("non-empty");
        let location = format!("/noise/{}", rng.gen::<u32>());
        return HuntOutcome {
            found: None,
            draft: Some(ReportDraft {
                program_id: program,
                reporter_id: profile.hacker_id,
                features: draw_features(mean, rng),
                fingerprint: Fingerprint::new(asset, class, &location),
                claimed_severity: *Severity::ALL.choose(rng).expect("non-empty"),
                latent_vuln_id: None,
            }),
        };
    }
    let stage = p.active_stage.unwrap_or(0);
    let pool: Vec<_> = p
        .vuln_ids
        .iter()
        .filter(|v| {
            let vuln = &world.vulns[v.index()];
            vuln.in_scope_stage <= stage && !world.fixed_vulns.contains(v)
        })
        .collect();
    if pool.is_empty() {
        return none;
    }
    let effort = effort_on(&world.hunts[profile.hacker_id.index()], program, reading) as f64;
    let payoff = &p.program.payoff;
    let chance = payoff.p0 * (-payoff.lambda * effort).exp() * (0.5 + 0.5 * profile.skill);
    if rng.gen::<f64>() >= chance {
        return none;
    }
    let vuln = &world.vulns[pool.choose(rng).expect("non-empty").index()];
    HuntOutcome {
        found: Some(vuln.vuln_id),
        draft: Some(ReportDraft {
            program_id: program,
            reporter_id: profile.hacker_id,
            features: draw_features(mean, rng),
            fingerprint: vuln.fingerprint.clone(),
            claimed_severity: vuln.severity,
            latent_vuln_id: Some(vuln.vuln_id),
        }),
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyOutcome {
    pub verdict: Verdict,
    pub leaked: bool,
    /// The same finding, to be filed by the verifier on the next tick.
    pub snipe: Option<ReportDraft>,
}

/// What an honest verifier concludes. Reports about real, in-scope
/// vulnerabilities reproduce with the reproduction model's probability;
/// failures are split between "not reproduced" and "cannot test". Reports
/// about nothing are rarely confirmed.
#[allow(clippy::too_many_arguments)]
pub fn honest_verdict<R: Rng + ?Sized>(
    world: &WorldState,
    report: &Report,
    skill: f64,
    weights: &QualityWeights,
    model: &ReproductionModel,
    behavior: &BehaviorConfig,
    rng: &mut R,
) -> Verdict {
    let program = &world.programs[report.program_id.index()];
    if !program.asset_in_scope(report.fingerprint.asset_token()) {
        return Verdict::with_notes(VerdictKind::NotReproduced, "asset out of scope");
    }
    let u = rng.gen::<f64>();
    match report.latent_vuln_id {
        Some(v) => {
            let difficulty = world.vulns[v.index()].difficulty;
            let q = quality_score(report.features, weights);
            let p = model.probability(q, skill, difficulty).unwrap_or(0.0);
            if u < p {
                Verdict::new(VerdictKind::Reproduced)
            } else if rng.gen::<f64>() < behavior.cannot_test_share {
                Verdict::with_notes(VerdictKind::CannotTest, "environment unavailable")
            } else {
                Verdict::with_notes(VerdictKind::NotReproduced, "steps did not reproduce")
            }
        }
        None if u < behavior.false_positive_rate => Verdict::new(VerdictKind::Reproduced),
        None if u < behavior.false_positive_rate + 0.1 => {
            Verdict::with_notes(VerdictKind::CannotTest, "insufficient detail")
        }
        None => Verdict::with_notes(VerdictKind::NotReproduced, "no issue found"),
    }
}

/// A verifier's turn on one assignment, including adversarial side effects.
#[allow(clippy::too_many_arguments)]
pub fn verify_step<R: Rng + ?Sized>(
    world: &WorldState,
    agent: &Agent,
    profile: &HackerProfile,
    assignment: &VerificationAssignment,
    weights: &QualityWeights,
    model: &ReproductionModel,
    behavior: &BehaviorConfig,
    rng: &mut R,
) -> VerifyOutcome {
    let report = &world.reports[assignment.report_id.index()].report;
    let mut out = VerifyOutcome {
        verdict: Verdict::new(VerdictKind::NotReproduced),
        leaked: false,
        snipe: None,
    };
    match agent.behavior {
        AdversaryBehavior::Colluder { partner } if partner == report.reporter_id => {
            out.verdict = Verdict::new(VerdictKind::Reproduced);
        }
        AdversaryBehavior::Sniper { activation } => {
            out.verdict = Verdict::with_notes(VerdictKind::NotReproduced, "could not reproduce");
            if report.latent_vuln_id.is_some() && rng.gen::<f64>() < activation {
                out.snipe = Some(ReportDraft {
                    program_id: report.program_id,
                    reporter_id: profile.hacker_id,
                    features: report.features,
                    fingerprint: report.fingerprint.clone(),
                    claimed_severity: report.claimed_severity,
                    latent_vuln_id: report.latent_vuln_id,
                });
            }
        }
        AdversaryBehavior::Leaker { leak_prob } => {
            out.verdict = honest_verdict(world, report, profile.skill, weights, model, behavior, rng);
            out.leaked = rng.gen::<f64>() < leak_prob;
        }
        _ => out.verdict = honest_verdict(world, report, profile.skill, weights, model, behavior, rng),
    }
    out
}

/// Verdict of vendor or platform staff on a report queued for in-house
/// verification.
pub fn in_house_verdict<R: Rng + ?Sized>(
    world: &WorldState,
    report: &Report,
    quality: f64,
    skill: f64,
    model: &ReproductionModel,
    rng: &mut R,
) -> Verdict {
    match report.latent_vuln_id {
        Some(v) => {
            let difficulty = world.vulns[v.index()].difficulty;
            let p = model.probability(quality, skill, difficulty).unwrap_or(0.0);
            if rng.gen::<f64>() < p {
                Verdict::new(VerdictKind::Reproduced)
            } else {
                Verdict::with_notes(VerdictKind::NotReproduced, "could not reproduce in-house")
            }
        }
        None => Verdict::with_notes(VerdictKind::NotReproduced, "no issue found"),
    }
}

/// Ticks an agent has been silent, for engagement decay.
pub fn since(profile: &HackerProfile, now: Tick) -> u64 {
    now.saturating_sub(profile.engagement_tick)
}
