//! Shared domain types: reports, hackers, programs and the records produced
//! while a report moves through the disclosure lifecycle.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::ids::{AssignmentId, HackerId, ProgramId, ReportId, TeamId, Tick, VulnId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Low,
    Medium,
    High,
    Critical,
}

impl Severity {
    pub const ALL: [Severity; 4] = [Self::Low, Self::Medium, Self::High, Self::Critical];

    /// Multiplier applied to the base bounty.
    pub fn bounty_multiplier(self) -> f64 {
        match self {
            Severity::Low => 0.25,
            Severity::Medium => 0.5,
            Severity::High => 1.0,
            Severity::Critical => 2.0,
        }
    }
}

/// Checklist items a disclosure report may carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReportFeature {
    AffectedAsset,
    VulnClass,
    ReproductionSteps,
    ProofOfConcept,
    ImpactAssessment,
    EnvironmentDetails,
    SuggestedRemediation,
    ContactInfo,
}

impl ReportFeature {
    pub const ALL: [ReportFeature; 8] = [
        Self::AffectedAsset,
        Self::VulnClass,
        Self::ReproductionSteps,
        Self::ProofOfConcept,
        Self::ImpactAssessment,
        Self::EnvironmentDetails,
        Self::SuggestedRemediation,
        Self::ContactInfo,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    fn bit(self) -> u8 {
        1 << (self as u8)
    }
}

/// A subset of the eight [`ReportFeature`]s, stored as a bitmask and
/// serialized as the list of member names.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "Vec<ReportFeature>", into = "Vec<ReportFeature>")]
pub struct FeatureSet(u8);

impl FeatureSet {
    pub fn empty() -> Self {
        Self(0)
    }

    pub fn all() -> Self {
        ReportFeature::ALL.into_iter().collect()
    }

    pub fn from_bits(bits: u8) -> Self {
        Self(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn insert(&mut self, feature: ReportFeature) {
        self.0 |= feature.bit();
    }

    pub fn contains(self, feature: ReportFeature) -> bool {
        self.0 & feature.bit() != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: FeatureSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = ReportFeature> {
        ReportFeature::ALL.into_iter().filter(move |f| self.contains(*f))
    }
}

impl FromIterator<ReportFeature> for FeatureSet {
    fn from_iter<I: IntoIterator<Item = ReportFeature>>(iter: I) -> Self {
        let mut set = FeatureSet::empty();
        for f in iter {
            set.insert(f);
        }
        set
    }
}

impl From<Vec<ReportFeature>> for FeatureSet {
    fn from(v: Vec<ReportFeature>) -> Self {
        v.into_iter().collect()
    }
}

impl From<FeatureSet> for Vec<ReportFeature> {
    fn from(s: FeatureSet) -> Self {
        s.iter().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VulnClass {
    Xss,
    SqlInjection,
    Csrf,
    Idor,
    RemoteCodeExecution,
    Ssrf,
    AuthBypass,
    InfoDisclosure,
    Misconfiguration,
}

impl VulnClass {
    pub const ALL: [VulnClass; 9] = [
        Self::Xss,
        Self::SqlInjection,
        Self::Csrf,
        Self::Idor,
        Self::RemoteCodeExecution,
        Self::Ssrf,
        Self::AuthBypass,
        Self::InfoDisclosure,
        Self::Misconfiguration,
    ];
}

#[derive(Deserialize)]
struct RawFingerprint {
    asset_token: String,
    vuln_class: VulnClass,
    location_token: String,
}

/// Exact-match identity of a finding. Tokens are lowercased and trimmed on
/// construction (and on deserialization), so equality is component-wise on
/// normalized tokens.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "RawFingerprint")]
pub struct Fingerprint {
    asset_token: String,
    vuln_class: VulnClass,
    location_token: String,
}

impl From<RawFingerprint> for Fingerprint {
    fn from(raw: RawFingerprint) -> Self {
        Fingerprint::new(&raw.asset_token, raw.vuln_class, &raw.location_token)
    }
}

fn normalize_token(s: &str) -> String {
    s.trim().to_lowercase()
}

impl Fingerprint {
    pub fn new(asset: &str, vuln_class: VulnClass, location: &str) -> Self {
        Self {
            asset_token: normalize_token(asset),
            vuln_class,
            location_token: normalize_token(location),
        }
    }

    pub fn asset_token(&self) -> &str {
        &self.asset_token
    }

    pub fn vuln_class(&self) -> VulnClass {
        self.vuln_class
    }

    pub fn location_token(&self) -> &str {
        &self.location_token
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GateReason {
    RateLimited,
    LowSignal,
}

impl fmt::Display for GateReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateReason::RateLimited => f.write_str("rate limited"),
            GateReason::LowSignal => f.write_str("signal below threshold"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecisionKind {
    Actionable,
    DismissedWithReasoning,
    Escalated,
}

/// Verdict counts: reproduced, not reproduced, cannot test.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tally {
    pub reproduced: u32,
    pub not_reproduced: u32,
    pub cannot_test: u32,
}

impl Tally {
    pub fn new(reproduced: u32, not_reproduced: u32, cannot_test: u32) -> Self {
        Self {
            reproduced,
            not_reproduced,
            cannot_test,
        }
    }

    pub fn total(&self) -> u32 {
        self.reproduced + self.not_reproduced + self.cannot_test
    }

    pub fn add(&mut self, verdict: VerdictKind) {
        match verdict {
            VerdictKind::Reproduced => self.reproduced += 1,
            VerdictKind::NotReproduced => self.not_reproduced += 1,
            VerdictKind::CannotTest => self.cannot_test += 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decision {
    pub kind: DecisionKind,
    pub tally: Tally,
}

/// Where a report sits in the disclosure lifecycle. See
/// [`crate::engine::lifecycle`] for the transition graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "state", rename_all = "snake_case")]
pub enum LifecycleState {
    Submitted,
    VendorValidated,
    Distributed,
    AwaitingVerdicts,
    Decided { decision: Decision },
    Settled { decision: Decision },
    RejectedAtGate { reason: GateReason },
    ClosedDuplicate { original: ReportId },
    ClosedOutOfScope,
}

impl LifecycleState {
    pub fn decision(&self) -> Option<Decision> {
        match self {
            LifecycleState::Decided { decision } | LifecycleState::Settled { decision } => {
                Some(*decision)
            }
            _ => None,
        }
    }

    pub fn is_settled_escalated(&self) -> bool {
        matches!(self, LifecycleState::Settled { decision } if decision.kind == DecisionKind::Escalated)
    }

    pub fn is_terminal(&self) -> bool {
        matches!(
            self,
            LifecycleState::Settled { .. }
                | LifecycleState::RejectedAtGate { .. }
                | LifecycleState::ClosedDuplicate { .. }
                | LifecycleState::ClosedOutOfScope
        )
    }
}

/// A vulnerability claim as submitted by a hacker.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub report_id: ReportId,
    pub program_id: ProgramId,
    pub reporter_id: HackerId,
    pub submitted_at: Tick,
    pub features: FeatureSet,
    pub fingerprint: Fingerprint,
    pub claimed_severity: Severity,
    /// Simulation ground truth; set only for findings of a real latent vuln.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub latent_vuln_id: Option<VulnId>,
    pub state: LifecycleState,
}

/// The parts of a report the submitter controls.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDraft {
    pub program_id: ProgramId,
    pub reporter_id: HackerId,
    pub features: FeatureSet,
    pub fingerprint: Fingerprint,
    pub claimed_severity: Severity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub latent_vuln_id: Option<VulnId>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UserType {
    Player,
    Achiever,
    Socialiser,
    Philanthropist,
}

impl UserType {
    pub const ALL: [UserType; 4] = [
        Self::Player,
        Self::Achiever,
        Self::Socialiser,
        Self::Philanthropist,
    ];
}

/// Empirical contributor classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Archetype {
    /// Project-specific, high-effort contributor.
    ProjectSpecific,
    /// Non-project-specific contributor.
    NonProjectSpecific,
    Generalist,
}

/// Bounded history kept for the rate limiter.
pub const SUBMISSION_HISTORY_CAP: usize = 64;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubmissionStats {
    pub verified_count: u32,
    pub unverified_count: u32,
    pub verifications_completed: u32,
    /// Ticks of the most recent accepted submissions, ascending, at most
    /// [`SUBMISSION_HISTORY_CAP`] entries.
    pub last_submission_ticks: Vec<Tick>,
}

impl SubmissionStats {
    /// Resolved submissions, the count the newcomer grace is measured against.
    pub fn total_submissions(&self) -> u32 {
        self.verified_count + self.unverified_count
    }

    pub fn record_submission(&mut self, tick: Tick) {
        self.last_submission_ticks.push(tick);
        if self.last_submission_ticks.len() > SUBMISSION_HISTORY_CAP {
            self.last_submission_ticks.remove(0);
        }
    }
}

/// A badge is identified by the rule that produced it plus its milestone.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BadgeId(pub String);

/// Certificates are issued once per mastery tier (the verified-report
/// threshold of the tier).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CertificateTier(pub u32);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HackerProfile {
    pub hacker_id: HackerId,
    pub user_type: UserType,
    pub archetype: Archetype,
    pub skill: f64,
    pub vetted: bool,
    pub stats: SubmissionStats,
    pub points: u64,
    pub badges: BTreeSet<BadgeId>,
    pub certificates: BTreeSet<CertificateTier>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub team_id: Option<TeamId>,
    /// Engagement as of `engagement_tick`; it decays from there.
    pub engagement: f64,
    pub engagement_tick: Tick,
}

impl HackerProfile {
    pub fn new(hacker_id: HackerId, user_type: UserType, archetype: Archetype, skill: f64) -> Self {
        Self {
            hacker_id,
            user_type,
            archetype,
            skill: skill.clamp(0.0, 1.0),
            vetted: true,
            stats: SubmissionStats::default(),
            points: 0,
            badges: BTreeSet::new(),
            certificates: BTreeSet::new(),
            team_id: None,
            engagement: 1.0,
            engagement_tick: 0,
        }
    }

    /// Engagement decayed to `now` at rate `decay` per tick.
    pub fn engagement_at(&self, now: Tick, decay: f64) -> f64 {
        let dt = now.saturating_sub(self.engagement_tick) as f64;
        (self.engagement * (-decay * dt).exp()).clamp(0.0, 1.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProcessVariant {
    /// Hacker reports directly to the vendor, who validates and verifies in-house.
    #[serde(alias = "a")]
    ADirect,
    /// An intermediary platform triages and verifies for a fee.
    #[serde(alias = "b")]
    BPlatform,
    /// Vendor redistributes reports to vetted hackers for verification.
    #[serde(alias = "c")]
    CCrowdVetted,
}

impl ProcessVariant {
    pub const ALL: [ProcessVariant; 3] = [Self::ADirect, Self::BPlatform, Self::CCrowdVetted];

    pub fn letter(self) -> char {
        match self {
            ProcessVariant::ADirect => 'a',
            ProcessVariant::BPlatform => 'b',
            ProcessVariant::CCrowdVetted => 'c',
        }
    }

    pub fn from_letter(s: &str) -> Option<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" | "a_direct" => Some(Self::ADirect),
            "b" | "b_platform" => Some(Self::BPlatform),
            "c" | "c_crowd_vetted" => Some(Self::CCrowdVetted),
            _ => None,
        }
    }
}

impl fmt::Display for ProcessVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter().to_ascii_uppercase())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScopeStage {
    pub activation_tick: Tick,
    /// Fraction of the program's assets in scope once active, in (0, 1].
    pub fraction: f64,
}

/// Discovery odds and bounty ladder of a program.
///
/// The k-th payable bug is worth `b0 * k^alpha`; the chance of a find decays
/// as `p0 * exp(-lambda * effort)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PayoffModel {
    pub p0: f64,
    pub lambda: f64,
    pub b0: f64,
    pub alpha: f64,
}

impl Default for PayoffModel {
    fn default() -> Self {
        Self {
            p0: 0.001,
            lambda: 0.1,
            b0: 1000.0,
            alpha: 1.2,
        }
    }
}

impl PayoffModel {
    pub fn bounty_for(&self, k: u32) -> f64 {
        self.b0 * f64::from(k.max(1)).powf(self.alpha)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurvePoint {
    pub tick: Tick,
    pub multiplier: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EventWindow {
    pub start: Tick,
    pub end: Tick,
    pub multiplier: f64,
}

impl EventWindow {
    /// Half-open: active on `[start, end)`.
    pub fn contains(&self, tick: Tick) -> bool {
        self.start <= tick && tick < self.end
    }
}

/// Points earned per kind of accomplishment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointEvent {
    AcceptedSubmission,
    VerificationCompleted,
    Feedback,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RewardSchedule {
    pub first_submission_multiplier: f64,
    pub badge_every_n_verifications: u32,
    pub base_points: std::collections::BTreeMap<PointEvent, u64>,
    /// Bounty multiplier by ticks since launch; piecewise constant.
    pub payout_curve: Vec<CurvePoint>,
    /// Absolute-tick windows multiplying points.
    pub event_windows: Vec<EventWindow>,
}

impl Default for RewardSchedule {
    fn default() -> Self {
        Self {
            first_submission_multiplier: 2.0,
            badge_every_n_verifications: 10,
            base_points: [
                (PointEvent::AcceptedSubmission, 100),
                (PointEvent::VerificationCompleted, 40),
                (PointEvent::Feedback, 10),
            ]
            .into_iter()
            .collect(),
            payout_curve: Vec::new(),
            event_windows: Vec::new(),
        }
    }
}

impl RewardSchedule {
    /// Bounty multiplier `since_launch` ticks after launch. Before the first
    /// curve point (or with an empty curve) the multiplier is 1.
    pub fn payout_multiplier(&self, since_launch: Tick) -> f64 {
        self.payout_curve
            .iter()
            .take_while(|p| p.tick <= since_launch)
            .last()
            .map_or(1.0, |p| p.multiplier)
    }

    /// Product of all event windows active at `tick`.
    pub fn window_multiplier(&self, tick: Tick) -> f64 {
        self.event_windows
            .iter()
            .filter(|w| w.contains(tick))
            .map(|w| w.multiplier)
            .product()
    }

    pub fn validate(&self) -> Result<(), String> {
        if !(self.first_submission_multiplier >= 1.0 && self.first_submission_multiplier.is_finite()) {
            return Err("first_submission_multiplier must be >= 1".into());
        }
        if self.badge_every_n_verifications == 0 {
            return Err("badge_every_n_verifications must be positive".into());
        }
        if self.payout_curve.windows(2).any(|w| w[0].tick >= w[1].tick) {
            return Err("payout_curve ticks must be strictly increasing".into());
        }
        if self.payout_curve.iter().any(|p| !(p.multiplier > 0.0 && p.multiplier.is_finite())) {
            return Err("payout_curve multipliers must be > 0".into());
        }
        for w in &self.event_windows {
            if !(w.multiplier > 0.0 && w.multiplier.is_finite()) {
                return Err("event window multipliers must be > 0".into());
            }
            if w.end <= w.start {
                return Err("event window end must be after start".into());
            }
        }
        Ok(())
    }
}

/// A vulnerability hidden in a program, known only to the simulator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LatentVuln {
    pub vuln_id: VulnId,
    pub program_id: ProgramId,
    pub severity: Severity,
    pub difficulty: f64,
    pub discovered: bool,
    pub in_scope_stage: u32,
    pub fingerprint: Fingerprint,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Program {
    pub program_id: ProgramId,
    pub name: String,
    pub variant: ProcessVariant,
    pub launch_tick: Tick,
    pub scope_stages: Vec<ScopeStage>,
    /// Ordered asset names; the active scope is a prefix of this list.
    pub assets: Vec<String>,
    pub budget: f64,
    pub payoff: PayoffModel,
    pub verifier_fee: f64,
    pub reward_schedule: RewardSchedule,
    pub quorum_size: u32,
    pub quorum_threshold: u32,
    #[serde(default)]
    pub latent_vulns: Vec<LatentVuln>,
}

impl Program {
    pub fn validate(&self) -> Result<(), String> {
        if self.quorum_size == 0 {
            return Err("quorum_size must be positive".into());
        }
        if self.quorum_threshold == 0 || self.quorum_threshold > self.quorum_size {
            return Err("quorum_threshold must satisfy 0 < q <= quorum_size".into());
        }
        if self.scope_stages.is_empty() {
            return Err("at least one scope stage is required".into());
        }
        for s in &self.scope_stages {
            if !(s.fraction > 0.0 && s.fraction <= 1.0) {
                return Err("scope fractions must lie in (0, 1]".into());
            }
        }
        if self
            .scope_stages
            .windows(2)
            .any(|w| w[1].fraction < w[0].fraction || w[1].activation_tick <= w[0].activation_tick)
        {
            return Err("scope stages must be ordered by tick with non-decreasing fractions".into());
        }
        if !(self.budget >= 0.0 && self.budget.is_finite()) {
            return Err("budget must be non-negative".into());
        }
        if self.assets.is_empty() {
            return Err("a program needs at least one asset".into());
        }
        self.reward_schedule.validate()
    }

    /// Number of assets in scope under a given scope fraction.
    pub fn assets_in_scope(&self, fraction: f64) -> usize {
        ((fraction * self.assets.len() as f64).ceil() as usize).min(self.assets.len())
    }

    /// Index of the scope stage governing `tick`, if any stage has started.
    pub fn stage_at(&self, tick: Tick) -> Option<usize> {
        self.scope_stages
            .iter()
            .rposition(|s| s.activation_tick <= tick)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    Reproduced,
    NotReproduced,
    CannotTest,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

impl Verdict {
    pub fn new(kind: VerdictKind) -> Self {
        Self {
            kind,
            notes: String::new(),
        }
    }

    pub fn with_notes(kind: VerdictKind, notes: impl Into<String>) -> Self {
        Self {
            kind,
            notes: notes.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationAssignment {
    pub assignment_id: AssignmentId,
    pub report_id: ReportId,
    pub verifier_id: HackerId,
    pub assigned_at: Tick,
    pub deadline: Tick,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    /// Set when this assignment replaces an expired one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replaces: Option<AssignmentId>,
    #[serde(default)]
    pub expired: bool,
}

impl VerificationAssignment {
    pub fn is_open(&self) -> bool {
        self.verdict.is_none() && !self.expired
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum ValidationOutcome {
    Forward,
    Duplicate { original: ReportId },
    OutOfScope,
    EscalateCriticalOutOfScope,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RewardKind {
    ReporterBounty,
    VerifierFee,
    PointsOnly,
    Feedback,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RewardEvent {
    pub recipient_id: HackerId,
    pub program_id: ProgramId,
    pub report_id: ReportId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assignment_id: Option<AssignmentId>,
    pub kind: RewardKind,
    pub amount: f64,
    pub points: u64,
    pub tick: Tick,
}

/// Who performed validation or verification work.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Performer {
    Vendor,
    Platform,
    /// Validation was skipped and the report forwarded untouched.
    Nobody,
}
