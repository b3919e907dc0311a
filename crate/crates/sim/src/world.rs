//! The simulated world and its tick loop.

use std::collections::BTreeMap;

use crowdvet_core::domain::{
    Fingerprint, HackerProfile, LatentVuln, LifecycleState, Program, ReportDraft, UserType, VulnClass,
};
use crowdvet_core::event::{EngagementCause, EventKind};
use crowdvet_core::gamify::{engagement_update, trigger_elements, GamificationElement, Trigger};
use crowdvet_core::gates::quality_score;
use crowdvet_core::ids::{HackerId, ProgramId, ReportId, TeamId, Tick, VulnId};
use crowdvet_core::{Actor, Engine, EngineError, EventLog, WorldState};
use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::agent::{self, Action, AdversaryBehavior, Agent};
use crate::config::{severity_from, ConfigError, SimulationConfig};

#[derive(Debug, Error)]
pub enum SimError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("engine error at tick {tick}: {source}")]
    Engine {
        tick: Tick,
        #[source]
        source: EngineError,
    },
}

const AGENT_STREAM_BASE: u64 = 1 << 32;

pub struct World {
    engine: Engine,
    agents: Vec<Agent>,
    config: SimulationConfig,
    rng: ChaCha8Rng,
    agent_rngs: Vec<ChaCha8Rng>,
    tick: Tick,
    pending_snipes: BTreeMap<Tick, Vec<ReportDraft>>,
}

/// Everything a finished run leaves behind.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub seed: u64,
    pub log: EventLog,
    pub state: WorldState,
    pub agents: Vec<Agent>,
}

fn pick<R: Rng + ?Sized>(weights: &[f64], rng: &mut R) -> usize {
    WeightedIndex::new(weights).expect("validated weights").sample(rng)
}

fn engine_err(tick: Tick, source: EngineError) -> SimError {
    SimError::Engine { tick, source }
}

impl World {
    /// Registers programs, latent vulnerabilities and the hacker population.
    /// All randomness, here and in every later tick, comes from ChaCha8
    /// keyed by `seed`: stream 0 drives the population and the dynamics,
    /// stream `i + 1` draws program `i`'s vulnerabilities.
    pub fn new(config: &SimulationConfig, seed: u64) -> Result<Self, SimError> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut engine = Engine::new(config.protocol_rules());
        let wrap = |source| SimError::Engine { tick: 0, source };
        let params = serde_json::to_value(config).expect("config serializes");
        engine
            .emit(
                0,
                Actor::System,
                EventKind::RunStarted {
                    seed,
                    horizon: config.horizon,
                    variant: config.variant,
                    params,
                },
            )
            .map_err(wrap)?;

        // The population is drawn before the programs so that adding a program
        // leaves everyone else's draws unchanged.
        let pop = &config.population;
        let b = &config.behavior;
        let mut agents = Vec::with_capacity(pop.agents as usize);
        let mut profiles = Vec::with_capacity(pop.agents as usize);
        for i in 0..pop.agents {
            let hacker_id = HackerId(i);
            let user_type = UserType::ALL[pick(&pop.user_type_mix, &mut rng)];
            let archetype = [
                crowdvet_core::domain::Archetype::ProjectSpecific,
                crowdvet_core::domain::Archetype::NonProjectSpecific,
                crowdvet_core::domain::Archetype::Generalist,
            ][pick(&pop.archetype_mix, &mut rng)];
            let skill = rng.gen_range(pop.skill_min..=pop.skill_max);
            let mut profile = HackerProfile::new(hacker_id, user_type, archetype, skill);
            profile.engagement = pop.initial_engagement;
            profiles.push(profile);

            let u: f64 = rng.gen();
            let behavior = if u < b.colluder_fraction && pop.agents > 1 {
                let mut partner = rng.gen_range(0..pop.agents - 1);
                if partner >= i {
                    partner += 1;
                }
                AdversaryBehavior::Colluder {
                    partner: HackerId(partner),
                }
            } else if u < b.colluder_fraction + b.leaker_fraction {
                AdversaryBehavior::Leaker {
                    leak_prob: b.leak_probability,
                }
            } else if u < b.colluder_fraction + b.leaker_fraction + b.sniper_fraction {
                AdversaryBehavior::Sniper {
                    activation: b.sniper_activation,
                }
            } else {
                AdversaryBehavior::Honest
            };
            agents.push(Agent::new(hacker_id, behavior));
        }
        let mut next_vuln = 0u32;
        for (i, pc) in config.programs.iter().enumerate() {
            let program_id = ProgramId(i as u32);
            let assets: Vec<String> = (0..pc.assets).map(|a| format!("{}-asset-{a}", pc.name)).collect();
            let mut program = Program {
                program_id,
                name: pc.name.clone(),
                variant: config.variant,
                launch_tick: pc.launch_tick,
                scope_stages: pc
                    .scope_stages
                    .iter()
                    .map(|s| crowdvet_core::domain::ScopeStage {
                        activation_tick: pc.launch_tick + s.offset,
                        fraction: s.fraction,
                    })
                    .collect(),
                assets,
                budget: pc.budget,
                payoff: config.payoff_for(pc),
                verifier_fee: pc.verifier_fee,
                reward_schedule: config.reward_schedule(pc),
                quorum_size: config.protocol.quorum_size,
                quorum_threshold: config.protocol.quorum_threshold,
                latent_vulns: Vec::new(),
            };
            // each program's vulns come from their own stream of the same seed
            let mut vrng = ChaCha8Rng::seed_from_u64(seed);
            vrng.set_stream(i as u64 + 1);
            for _ in 0..pc.vulns {
                let asset = vrng.gen_range(0..pc.assets as usize);
                let stage = program
                    .scope_stages
                    .iter()
                    .position(|s| program.assets_in_scope(s.fraction) > asset)
                    .unwrap_or(program.scope_stages.len() - 1);
                let class = *VulnClass::ALL.choose(&mut vrng).expect("non-empty");
                let vuln_id = VulnId(next_vuln);
                next_vuln += 1;
                program.latent_vulns.push(LatentVuln {
                    vuln_id,
                    program_id,
                    severity: severity_from(&pc.severity_mix, vrng.gen()),
                    difficulty: vrng.gen(),
                    discovered: false,
                    in_scope_stage: stage as u32,
                    fingerprint: Fingerprint::new(&program.assets[asset], class, &format!("/{vuln_id}")),
                });
            }
            program
                .validate()
                .map_err(|m| ConfigError::Validation {
                    field: format!("programs[{i}]"),
                    message: m,
                })?;
            engine
                .emit(0, Actor::System, EventKind::ProgramRegistered { program })
                .map_err(wrap)?;
        }

        // each agent decides and hunts from its own stream, so a change that
        // touches one agent's history leaves the others' draws in place
        let agent_rngs = (0..profiles.len())
            .map(|i| {
                let mut r = ChaCha8Rng::seed_from_u64(seed);
                r.set_stream(AGENT_STREAM_BASE + i as u64);
                r
            })
            .collect();
        for profile in profiles {
            engine
                .emit(0, Actor::System, EventKind::HackerRegistered { profile })
                .map_err(wrap)?;
        }
        if pop.teams > 0 {
            let socialisers: Vec<HackerId> = engine
                .state()
                .hackers
                .iter()
                .filter(|h| h.user_type == UserType::Socialiser)
                .map(|h| h.hacker_id)
                .collect();
            for (n, hacker_id) in socialisers.into_iter().enumerate() {
                let team_id = TeamId(n as u32 % pop.teams);
                engine
                    .emit(0, Actor::Hacker(hacker_id), EventKind::TeamJoined { hacker_id, team_id })
                    .map_err(wrap)?;
            }
        }
        Ok(Self {
            engine,
            agents,
            config: config.clone(),
            rng,
            agent_rngs,
            tick: 0,
            pending_snipes: BTreeMap::new(),
        })
    }

    pub fn tick(&self) -> Tick {
        self.tick
    }

    pub fn engine(&self) -> &Engine {
        &self.engine
    }

    pub fn state(&self) -> &WorldState {
        self.engine.state()
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn agents_mut(&mut self) -> &mut [Agent] {
        &mut self.agents
    }

    pub fn config(&self) -> &SimulationConfig {
        &self.config
    }

    pub fn rng_mut(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Submits a report and walks it through triage. Gate rejections and
    /// closed programs are ordinary outcomes, not errors.
    pub fn file_report(&mut self, draft: ReportDraft) -> Result<Option<ReportId>, SimError> {
        let t = self.tick;
        match self.engine.intake(t, draft, &mut self.rng) {
            Ok(id) => Ok(Some(id)),
            Err(EngineError::GateRejected { .. } | EngineError::ProgramInactive(_)) => Ok(None),
            Err(e) => Err(engine_err(t, e)),
        }
    }

    fn settle(&mut self, report_id: ReportId) -> Result<(), SimError> {
        let t = self.tick;
        self.engine
            .settle_tolerant(t, report_id)
            .map_err(|e| engine_err(t, e))
    }

    fn system_events(&mut self) -> Result<(), SimError> {
        let t = self.tick;
        let interval = self.config.gamification.purpose_interval;
        let mut events = Vec::new();
        for p in &self.engine.state().programs {
            let prog = &p.program;
            let program_id = prog.program_id;
            if t == prog.launch_tick {
                events.push(EventKind::ProgramLaunched { program_id });
            }
            for (i, s) in prog.scope_stages.iter().enumerate() {
                if s.activation_tick == t {
                    events.push(EventKind::ScopeStageActivated {
                        program_id,
                        stage: i as u32,
                        fraction: s.fraction,
                    });
                }
            }
            for w in &prog.reward_schedule.event_windows {
                if w.start == t {
                    events.push(EventKind::EventWindowOpened {
                        program_id,
                        multiplier: w.multiplier,
                    });
                }
            }
            if interval > 0 && t > prog.launch_tick && (t - prog.launch_tick).is_multiple_of(interval) && p.is_open() {
                events.push(EventKind::PurposeBroadcast { program_id });
            }
        }
        for kind in events {
            self.engine
                .emit(t, Actor::System, kind)
                .map_err(|e| engine_err(t, e))?;
        }
        Ok(())
    }

    fn in_house_work(&mut self) -> Result<(), SimError> {
        let t = self.tick;
        let due: Vec<ReportId> = self
            .state()
            .in_house_queue
            .iter()
            .take_while(|(d, _)| *d <= t)
            .map(|(_, r)| *r)
            .collect();
        let weights = self.engine.rules().quality_weights;
        let detail_quality = self.engine.rules().detail_request_quality;
        for report_id in due {
            let state = self.engine.state();
            let report = &state.reports[report_id.index()].report;
            let mut quality = quality_score(report.features, &weights);
            let detail_requested = state.programs[report.program_id.index()].program.variant
                == crowdvet_core::domain::ProcessVariant::ADirect
                && quality < detail_quality;
            if detail_requested {
                // the hacker answered the vendor's request for details
                quality = detail_quality;
            }
            let verdict = agent::in_house_verdict(
                state,
                report,
                quality,
                self.config.protocol.in_house_skill,
                &self.config.reproduction,
                &mut self.rng,
            );
            if report.state.is_settled_escalated() {
                match self.engine.record_vendor_override(t, report_id, verdict) {
                    Ok(_) | Err(EngineError::BudgetExhausted { .. }) => {}
                    Err(e) => return Err(engine_err(t, e)),
                }
            } else {
                self.engine
                    .record_in_house_verdict(t, report_id, verdict)
                    .map_err(|e| engine_err(t, e))?;
                self.settle(report_id)?;
            }
        }
        Ok(())
    }

    fn expire(&mut self) -> Result<(), SimError> {
        let t = self.tick;
        let decided = self
            .engine
            .expire_assignments(t, &mut self.rng)
            .map_err(|e| engine_err(t, e))?;
        for r in decided {
            self.settle(r)?;
        }
        Ok(())
    }

    /// Carries out one agent action at the current tick.
    pub fn act(&mut self, hacker: HackerId, action: Action) -> Result<(), SimError> {
        let t = self.tick;
        match action {
            Action::Idle => {}
            Action::Hunt(program_id) => {
                let state = self.engine.state();
                let outcome = agent::hunt_step(
                    state,
                    &state.hackers[hacker.index()],
                    program_id,
                    &self.config.population,
                    self.config.behavior.effort,
                    &mut self.agent_rngs[hacker.index()],
                );
                self.engine
                    .emit(
                        t,
                        Actor::Hacker(hacker),
                        EventKind::HuntAttempted {
                            hacker_id: hacker,
                            program_id,
                            found: outcome.found,
                        },
                    )
                    .map_err(|e| engine_err(t, e))?;
                if let Some(draft) = outcome.draft {
                    self.file_report(draft)?;
                }
            }
            Action::Verify(assignment_id) => {
                let state = self.engine.state();
                let assignment = state.assignments[assignment_id.index()].clone();
                let out = agent::verify_step(
                    state,
                    &self.agents[hacker.index()],
                    &state.hackers[hacker.index()],
                    &assignment,
                    &self.engine.rules().quality_weights,
                    &self.config.reproduction,
                    &self.config.behavior,
                    &mut self.agent_rngs[hacker.index()],
                );
                if out.leaked {
                    self.engine
                        .emit(
                            t,
                            Actor::Hacker(hacker),
                            EventKind::Leak {
                                report_id: assignment.report_id,
                                verifier_id: hacker,
                            },
                        )
                        .map_err(|e| engine_err(t, e))?;
                }
                let after = self
                    .engine
                    .record_verdict(t, assignment_id, out.verdict)
                    .map_err(|e| engine_err(t, e))?;
                if matches!(after, LifecycleState::Decided { .. }) {
                    self.settle(assignment.report_id)?;
                }
                if let Some(draft) = out.snipe {
                    self.pending_snipes.entry(t + 1).or_default().push(draft);
                }
            }
        }
        Ok(())
    }

    fn agents_act(&mut self) -> Result<Vec<HackerId>, SimError> {
        let t = self.tick;
        let decay = self.config.gamification.engagement.decay;
        let mut first_actions = Vec::new();
        for i in 0..self.agents.len() {
            let hacker = HackerId(i as u32);
            let state = self.engine.state();
            let engagement = state.hackers[i].engagement_at(t, decay);
            let action = agent::choose_action(state, hacker, engagement, &self.config.behavior, &mut self.agent_rngs[i]);
            if action != Action::Idle && !self.agents[i].onboarded {
                self.agents[i].onboarded = true;
                first_actions.push(hacker);
            }
            self.act(hacker, action)?;
        }
        Ok(first_actions)
    }

    /// Engagement bookkeeping for everything that happened this tick.
    fn update_engagement(&mut self, from_event: usize, onboarded: &[HackerId]) -> Result<(), SimError> {
        let t = self.tick;
        let n = self.agents.len();
        let mut triggers: Vec<Vec<GamificationElement>> = vec![Vec::new(); n];
        let mut everyone = Vec::new();
        let state = self.engine.state();
        for ev in &self.engine.log().events()[from_event..] {
            let mut give = |h: HackerId, trig: Trigger| {
                if let Some(list) = triggers.get_mut(h.index()) {
                    list.extend(trigger_elements(trig));
                }
            };
            match &ev.event {
                EventKind::RewardIssued { reward } if reward.points > 0 => give(reward.recipient_id, Trigger::PointsAwarded),
                EventKind::BadgeAwarded { hacker_id, .. } => give(*hacker_id, Trigger::BadgeEarned),
                EventKind::CertificateIssued { hacker_id, .. } => give(*hacker_id, Trigger::CertificateIssued),
                EventKind::TeamJoined { hacker_id, .. } => give(*hacker_id, Trigger::TeamJoined),
                EventKind::ReportValidated {
                    report_id,
                    outcome: crowdvet_core::domain::ValidationOutcome::Duplicate { original },
                    ..
                } => {
                    give(state.reports[report_id.index()].report.reporter_id, Trigger::SubmissionRace);
                    give(state.reports[original.index()].report.reporter_id, Trigger::SubmissionRace);
                }
                EventKind::ScopeStageActivated { stage, .. } if *stage > 0 => {
                    everyone.extend(trigger_elements(Trigger::ScopeStageActivated))
                }
                EventKind::PurposeBroadcast { .. } => everyone.extend(trigger_elements(Trigger::PurposeBroadcast)),
                _ => {}
            }
        }
        let g = &self.config.gamification;
        let mut updates = Vec::new();
        for (i, mut list) in triggers.into_iter().enumerate() {
            list.extend(everyone.iter().copied());
            let hacker = HackerId(i as u32);
            let onboarding = onboarded.contains(&hacker);
            let profile = &state.hackers[i];
            let hazard = !self.agents[i].hazard_checked && profile.points >= 100;
            if list.is_empty() && !onboarding && !hazard {
                continue;
            }
            let dt = t.saturating_sub(profile.engagement_tick);
            let mut e = engagement_update(profile.engagement, profile.user_type, &list, dt, &g.engagement);
            let mut cause = EngagementCause::Triggers;
            if onboarding {
                e = (e + g.onboarding_boost).min(1.0);
                cause = EngagementCause::Onboarding;
            }
            if hazard {
                self.agents[i].hazard_checked = true;
                if g.round_number_hazard {
                    e = (e - g.round_number_penalty).max(0.0);
                    cause = EngagementCause::RoundNumberHazard;
                }
            }
            updates.push((hacker, e, cause));
        }
        for (hacker_id, engagement, cause) in updates {
            self.engine
                .emit(
                    t,
                    Actor::System,
                    EventKind::EngagementUpdated {
                        hacker_id,
                        engagement,
                        cause,
                    },
                )
                .map_err(|e| engine_err(t, e))?;
        }
        Ok(())
    }

    /// Advances the world by one tick: scheduled program events, in-house
    /// verification falling due, expired assignments, queued resubmissions,
    /// every agent's action in id order, then engagement updates.
    pub fn step(&mut self) -> Result<(), SimError> {
        let from_event = self.engine.log().len();
        self.system_events()?;
        self.in_house_work()?;
        self.expire()?;
        if let Some(snipes) = self.pending_snipes.remove(&self.tick) {
            for draft in snipes {
                self.file_report(draft)?;
            }
        }
        let onboarded = self.agents_act()?;
        self.update_engagement(from_event, &onboarded)?;
        self.tick += 1;
        Ok(())
    }

    pub fn finish(mut self, seed: u64) -> Result<RunResult, SimError> {
        self.engine
            .emit(self.tick, Actor::System, EventKind::RunFinished)
            .map_err(|e| engine_err(self.tick, e))?;
        let (log, state) = self.engine.into_parts();
        Ok(RunResult {
            seed,
            log,
            state,
            agents: self.agents,
        })
    }
}

pub fn step_world(world: &mut World) -> Result<(), SimError> {
    world.step()
}

/// Runs `config.horizon` ticks. The result depends only on `(config, seed)`.
pub fn run_simulation(config: &SimulationConfig, seed: u64) -> Result<RunResult, SimError> {
    let mut world = World::new(config, seed)?;
    for _ in 0..config.horizon {
        world.step()?;
    }
    world.finish(seed)
}
