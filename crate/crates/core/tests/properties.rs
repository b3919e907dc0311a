use crowdvet_core::domain::{FeatureSet, Fingerprint, SubmissionStats, Tally, UserType, VerdictKind, VulnClass};
use crowdvet_core::engine::aggregate_verdicts;
use crowdvet_core::domain::DecisionKind;
use crowdvet_core::gamify::{
    engagement_update, leaderboard_rank, EngagementParams, GamificationElement, Leaderboard, LeaderboardEntry,
    LeaderboardScope, Subject,
};
use crowdvet_core::gates::{
    quality_score, rate_limit_check, reproduction_probability, signal_gate, signal_score, QualityWeights, RatePolicy,
    SignalPolicy,
};
use crowdvet_core::ids::HackerId;
use proptest::prelude::*;

fn stats(verified: u32, unverified: u32) -> SubmissionStats {
    SubmissionStats {
        verified_count: verified,
        unverified_count: unverified,
        ..Default::default()
    }
}

/// Decision for an ordered verdict triple, written out case by case.
fn oracle(v: [VerdictKind; 3]) -> DecisionKind {
    let yes = v.iter().filter(|k| **k == VerdictKind::Reproduced).count();
    let no = v.iter().filter(|k| **k == VerdictKind::NotReproduced).count();
    if yes >= 2 {
        DecisionKind::Actionable
    } else if no >= 2 {
        DecisionKind::DismissedWithReasoning
    } else {
        DecisionKind::Escalated
    }
}

#[test]
fn consensus_matches_enumeration_of_all_27_triples() {
    use VerdictKind::*;
    let kinds = [Reproduced, NotReproduced, CannotTest];
    let mut seen = 0;
    for a in kinds {
        for b in kinds {
            for c in kinds {
                let mut t = Tally::default();
                for k in [a, b, c] {
                    t.add(k);
                }
                assert_eq!(aggregate_verdicts(t, 2, 3).unwrap().kind, oracle([a, b, c]), "{a:?} {b:?} {c:?}");
                seen += 1;
            }
        }
    }
    assert_eq!(seen, 27);
}

fn vuln_class() -> impl Strategy<Value = VulnClass> {
    prop::sample::select(VulnClass::ALL.to_vec())
}

fn token() -> impl Strategy<Value = String> {
    prop::sample::select(vec!["api", " API", "Web ", "web", "mobile", "MOBILE"]).prop_map(String::from)
}

fn fingerprint() -> impl Strategy<Value = Fingerprint> {
    (token(), vuln_class(), token()).prop_map(|(a, c, l)| Fingerprint::new(&a, c, &l))
}

fn features() -> impl Strategy<Value = FeatureSet> {
    any::<u8>().prop_map(FeatureSet::from_bits)
}

fn weights() -> impl Strategy<Value = QualityWeights> {
    prop::array::uniform8(0.0f64..1.0).prop_filter_map("degenerate weights", |w| {
        let sum: f64 = w.iter().sum();
        if sum < 1e-6 {
            return None;
        }
        let mut norm = w.map(|x| x / sum);
        let rest: f64 = norm[..7].iter().sum();
        norm[7] = (1.0 - rest).max(0.0);
        QualityWeights::new(norm).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn rate_limit_never_passes_an_over_limit_history(
        mut history in prop::collection::vec(0u64..2_000, 0..40),
        now in 0u64..2_200,
        window in 1u64..500,
        max_reports in 1u32..10,
    ) {
        history.sort();
        let policy = RatePolicy { window, max_reports };
        let in_window = history.iter().filter(|&&t| t <= now && t + window > now).count();
        prop_assert_eq!(rate_limit_check(&history, now, &policy), in_window < max_reports as usize);
    }

    #[test]
    fn signal_gate_respects_grace_and_threshold(
        verified in 0u32..50,
        unverified in 0u32..50,
        threshold in 0.0f64..3.0,
        grace in 0u32..10,
    ) {
        let s = stats(verified, unverified);
        let policy = SignalPolicy { threshold, grace_submissions: grace };
        let pass = signal_gate(&s, &policy);
        if verified + unverified < grace {
            prop_assert!(pass);
        } else {
            let score = verified as f64 / unverified.max(1) as f64;
            prop_assert_eq!(pass, score >= threshold);
        }
        // a tie on the threshold always passes
        let tie = SignalPolicy { threshold: signal_score(&s), grace_submissions: grace };
        prop_assert!(signal_gate(&s, &tie));
    }

    #[test]
    fn quality_score_is_inclusion_monotone(a in features(), b in features(), w in weights()) {
        let small = FeatureSet::from_bits(a.bits() & b.bits());
        prop_assert!(small.is_subset(a));
        prop_assert!(quality_score(small, &w) <= quality_score(a, &w) + 1e-12);
        let score = quality_score(a, &w);
        prop_assert!((0.0..=1.0).contains(&score));
    }

    #[test]
    fn engagement_never_drops_when_a_trigger_is_added(
        e in 0.0f64..=1.0,
        dt in 0u64..500,
        ut in prop::sample::select(UserType::ALL.to_vec()),
        triggers in prop::collection::vec(prop::sample::select(GamificationElement::ALL.to_vec()), 0..8),
        extra in prop::sample::select(GamificationElement::ALL.to_vec()),
    ) {
        let p = EngagementParams::default();
        let base = engagement_update(e, ut, &triggers, dt, &p);
        let mut more = triggers.clone();
        more.push(extra);
        let bigger = engagement_update(e, ut, &more, dt, &p);
        prop_assert!(bigger >= base);
        prop_assert!((0.0..=1.0).contains(&bigger));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn fingerprint_equality_is_an_equivalence(a in fingerprint(), b in fingerprint(), c in fingerprint()) {
        prop_assert_eq!(&a, &a);
        prop_assert_eq!(a == b, b == a);
        if a == b && b == c {
            prop_assert_eq!(&a, &c);
        }
        let same = a.asset_token() == b.asset_token()
            && a.vuln_class() == b.vuln_class()
            && a.location_token() == b.location_token();
        prop_assert_eq!(a == b, same);
    }

    #[test]
    fn fingerprint_survives_serialization(a in fingerprint()) {
        let text = serde_json::to_string(&a).unwrap();
        let back: Fingerprint = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn signal_score_monotone(v in 0u32..100, u in 1u32..100) {
        prop_assert!(signal_score(&stats(v + 1, u)) >= signal_score(&stats(v, u)));
        prop_assert!(signal_score(&stats(v, u + 1)) <= signal_score(&stats(v, u)));
    }

    #[test]
    fn leaderboard_is_permutation_invariant(
        raw in prop::collection::vec((0u64..50, 0u64..20), 1..12),
        seed in any::<u64>(),
    ) {
        let entries: Vec<LeaderboardEntry> = raw
            .iter()
            .enumerate()
            .map(|(i, (points, at))| LeaderboardEntry {
                subject: Subject::Hacker(HackerId(i as u32)),
                points: *points,
                achieved_at: *at,
            })
            .collect();
        let mut shuffled = entries.clone();
        let n = shuffled.len();
        for i in 0..n {
            let j = (seed.wrapping_mul(i as u64 + 1) >> 7) as usize % n;
            shuffled.swap(i, j);
        }
        let a = Leaderboard::from_entries(LeaderboardScope::Global, entries.clone());
        let b = Leaderboard::from_entries(LeaderboardScope::Global, shuffled);
        prop_assert_eq!(&a, &b);
        for w in a.entries().windows(2) {
            prop_assert!(
                w[0].points > w[1].points
                    || (w[0].points == w[1].points && w[0].achieved_at <= w[1].achieved_at)
            );
        }
        prop_assert_eq!(leaderboard_rank(&a, a.entries()[0].subject), Some(1));
    }
}

#[test]
fn reproduction_probability_is_monotone_on_a_grid() {
    let grid: Vec<f64> = (0..=20).map(|i| i as f64 / 20.0).collect();
    for &q in &grid {
        for &s in &grid {
            for &d in &grid {
                let p = reproduction_probability(q, s, d).unwrap();
                assert!((0.0..=1.0).contains(&p));
                if q < 1.0 {
                    assert!(reproduction_probability(q + 0.05, s, d).unwrap() >= p);
                }
                if s < 1.0 {
                    assert!(reproduction_probability(q, (s + 0.05).min(1.0), d).unwrap() >= p);
                }
                if d < 1.0 {
                    assert!(reproduction_probability(q, s, (d + 0.05).min(1.0)).unwrap() <= p);
                }
            }
        }
    }
}
