use crowdvet_core::domain::{FeatureSet, Fingerprint, ProcessVariant, ReportDraft, Severity, VulnClass};
use crowdvet_core::engine::ValidationMode;
use crowdvet_core::event::EventLog;
use crowdvet_core::ids::{HackerId, ProgramId};
use crowdvet_sim::compare::{mean_sd, Arm};
use crowdvet_sim::config::{ConfigError, ProgramConfig};
use crowdvet_sim::metrics::{compute_metrics, recorded_config, MetricsContext};
use crowdvet_sim::output;
use crowdvet_sim::{compare, load_config, metrics_from_log, run_simulation, variant_arms, SimulationConfig, World};

#[test]
fn empty_config_is_fully_defaulted() {
    assert_eq!(SimulationConfig::from_toml("").unwrap(), SimulationConfig::default());
    let cfg = SimulationConfig::from_toml("horizon = 100\n[population]\nagents = 7\n").unwrap();
    assert_eq!(cfg.horizon, 100);
    assert_eq!(cfg.population.agents, 7);
    assert_eq!(cfg.programs, SimulationConfig::default().programs);
}

#[test]
fn defaults_round_trip_through_toml() {
    let cfg = SimulationConfig::default();
    assert_eq!(SimulationConfig::from_toml(&cfg.to_toml()).unwrap(), cfg);
}

#[test]
fn threshold_above_quorum_names_the_field() {
    let err = SimulationConfig::from_toml("[protocol]\nquorum_size = 3\nquorum_threshold = 4\n").unwrap_err();
    match &err {
        ConfigError::Validation { field, .. } => assert_eq!(field, "protocol.quorum_threshold"),
        other => panic!("unexpected {other:?}"),
    }
    assert!(err.to_string().contains("protocol.quorum_threshold"));
}

#[test]
fn misspelt_key_is_rejected() {
    let err = SimulationConfig::from_toml("[protocol]\nquoram_size = 3\n").unwrap_err();
    assert!(matches!(err, ConfigError::Parse { .. }));
    let msg = err.to_string();
    assert!(msg.contains("quoram_size"), "{msg}");
    assert!(msg.contains("protocol"), "{msg}");
}

#[test]
fn bad_values_are_rejected_with_their_path() {
    for (text, field) in [
        ("horizon = 0\n", "horizon"),
        ("[cost]\nc_h = -1.0\n", "cost.c_h"),
        ("[population]\nskill_min = 1.5\n", "population.skill_min"),
    ] {
        match SimulationConfig::from_toml(text) {
            Err(ConfigError::Validation { field: f, .. }) => assert_eq!(f, field),
            other => panic!("{text}: {other:?}"),
        }
    }
    assert!(matches!(
        SimulationConfig::from_toml("horizon = \"long\"\n"),
        Err(ConfigError::Parse { .. })
    ));
}

#[test]
fn missing_file_is_an_io_error() {
    assert!(matches!(
        load_config(std::path::Path::new("/nonexistent/crowdvet.toml")),
        Err(ConfigError::Io { .. })
    ));
}

#[test]
fn empty_log_gives_zero_metrics() {
    let ctx = MetricsContext::from_config(&SimulationConfig::default());
    let m = compute_metrics(&EventLog::new(), &ctx).unwrap();
    assert!(m.summary.fields().iter().all(|(_, v)| *v == 0.0));
    assert_eq!(m.summary.coverage, 0.0);
}

#[test]
fn snr_of_one_valid_and_two_noise_reports() {
    let cfg = SimulationConfig {
        population: crowdvet_sim::config::PopulationConfig {
            agents: 4,
            teams: 0,
            initial_engagement: 0.0,
            ..Default::default()
        },
        ..SimulationConfig::default()
    };
    let mut world = World::new(&cfg, 1).unwrap();
    world.step().unwrap();
    let vuln = world.state().vulns.iter().find(|v| v.in_scope_stage == 0).unwrap().clone();
    let asset = world.state().programs[0].program.assets[0].clone();
    let draft = |reporter: u32, latent, path: &str| ReportDraft {
        program_id: ProgramId(0),
        reporter_id: HackerId(reporter),
        features: FeatureSet::all(),
        fingerprint: match latent {
            Some(_) => vuln.fingerprint.clone(),
            None => Fingerprint::new(&asset, VulnClass::Xss, path),
        },
        claimed_severity: Severity::Low,
        latent_vuln_id: latent,
    };
    let drafts = [draft(0, Some(vuln.vuln_id), ""), draft(1, None, "/a"), draft(2, None, "/b")];
    for d in drafts {
        world.file_report(d).unwrap().unwrap();
    }
    let log = world.finish(1).unwrap().log;
    let m = metrics_from_log(&log).unwrap().summary;
    assert_eq!((m.submissions, m.valid_submissions, m.invalid_submissions), (3, 1, 2));
    assert_eq!(m.snr, 0.5);
}

#[test]
fn crowd_vetting_without_vendor_triage_costs_the_vendor_nothing() {
    let mut cfg = SimulationConfig {
        horizon: 1500,
        variant: ProcessVariant::CCrowdVetted,
        ..SimulationConfig::default()
    };
    cfg.protocol.vendor_validation = ValidationMode::Skipped;
    cfg.protocol.vendor_override = false;
    let r = run_simulation(&cfg, 2).unwrap();
    let m = metrics_from_log(&r.log).unwrap().summary;
    assert!(m.submissions > 0);
    assert_eq!(m.vendor_overhead_minutes, 0.0);
}

#[test]
fn overhead_follows_the_cost_model() {
    let cfg = SimulationConfig {
        horizon: 1500,
        variant: ProcessVariant::ADirect,
        ..SimulationConfig::default()
    };
    let log = run_simulation(&cfg, 3).unwrap().log;
    let m = metrics_from_log(&log).unwrap().summary;
    let c = cfg.cost;
    let expected = c.c_v * m.vendor_validations as f64
        + c.c_c * m.vendor_correspondences as f64
        + c.c_h * m.vendor_in_house as f64;
    assert!(m.vendor_in_house > 0);
    assert!((m.vendor_overhead_minutes - expected).abs() < 1e-9);
}

#[test]
fn metrics_survive_a_jsonl_round_trip() {
    let cfg = SimulationConfig {
        horizon: 800,
        ..SimulationConfig::default()
    };
    let r = run_simulation(&cfg, 9).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let live = compute_metrics(&r.log, &MetricsContext::from_config(&cfg)).unwrap();
    output::write_run(dir.path(), &cfg, &r.log, &live).unwrap();
    let back = output::read_log(&dir.path().join(output::EVENTS_FILE)).unwrap();
    assert_eq!(back, r.log);
    assert_eq!(metrics_from_log(&back).unwrap(), live);
    let (recorded, seed) = recorded_config(&back).unwrap().unwrap();
    assert_eq!((recorded, seed), (cfg, 9));
    for f in ["metrics.csv", "metrics.json", "timeseries.csv", "programs.csv", "config.toml"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
}

#[test]
fn time_series_covers_the_horizon() {
    let cfg = SimulationConfig {
        horizon: 1000,
        ..SimulationConfig::default()
    };
    let m = metrics_from_log(&run_simulation(&cfg, 1).unwrap().log).unwrap();
    assert_eq!(m.windows.len(), 6);
    assert_eq!(m.windows.last().unwrap().end, 1000);
    assert_eq!(m.windows.iter().map(|w| w.submissions).sum::<u64>(), m.summary.submissions);
    assert_eq!(m.windows.iter().map(|w| w.hunts).sum::<u64>(), m.summary.hunts);
    let per_program: u64 = m.program_windows.iter().map(|w| w.submissions).sum();
    assert_eq!(per_program, m.summary.submissions);
}

fn small() -> SimulationConfig {
    SimulationConfig {
        horizon: 600,
        ..SimulationConfig::default()
    }
}

#[test]
fn one_arm_one_seed_reports_that_run() {
    let cfg = small();
    let c = compare(&[Arm::new("only", cfg.clone())], &[4], None).unwrap();
    let run = metrics_from_log(&run_simulation(&cfg, 4).unwrap().log).unwrap().summary;
    for (name, v) in run.fields() {
        let stat = c.stats.iter().find(|s| s.metric == name).unwrap();
        assert_eq!(stat.mean, v, "{name}");
        assert_eq!(stat.sd, 0.0);
    }
    assert!(c.paired.is_empty());
}

#[test]
fn paired_differences_match_the_runs() {
    let arms = variant_arms(&small(), &[ProcessVariant::ADirect, ProcessVariant::CCrowdVetted]);
    let seeds = [1, 2, 3, 4];
    let c = compare(&arms, &seeds, None).unwrap();
    for metric in ["vendor_overhead_minutes", "reward_spend", "snr"] {
        let diffs: Vec<f64> = seeds
            .iter()
            .map(|s| c.run("c", *s).unwrap().summary.field(metric).unwrap() - c.run("a", *s).unwrap().summary.field(metric).unwrap())
            .collect();
        let (mean, sd) = mean_sd(&diffs);
        let p = c.paired_diff("c", metric).unwrap();
        assert!((p.mean_diff - mean).abs() < 1e-9);
        assert!((p.sd_diff - sd).abs() < 1e-9);
        assert_eq!(p.positive, diffs.iter().filter(|d| **d > 0.0).count());
        assert_eq!(p.negative, diffs.iter().filter(|d| **d < 0.0).count());
    }
}

#[test]
fn repeated_variant_gives_identical_columns() {
    let arms = variant_arms(&small(), &[ProcessVariant::CCrowdVetted, ProcessVariant::CCrowdVetted]);
    assert_eq!(arms[0].label, "c");
    assert_eq!(arms[1].label, "c2");
    let c = compare(&arms, &[5, 6], None).unwrap();
    assert_eq!(c.values("c", "reward_spend"), c.values("c2", "reward_spend"));
    assert!(c.paired.iter().all(|p| p.mean_diff == 0.0));
}

#[test]
fn seed_order_does_not_change_the_aggregate() {
    let arms = vec![Arm::new("x", small())];
    let a = compare(&arms, &[1, 2, 3], None).unwrap();
    let b = compare(&arms, &[3, 1, 2], None).unwrap();
    for (x, y) in a.stats.iter().zip(&b.stats) {
        assert_eq!(x.metric, y.metric);
        assert!((x.mean - y.mean).abs() < 1e-9);
        assert!((x.sd - y.sd).abs() < 1e-9);
    }
}

#[test]
fn comparison_artifacts_are_written() {
    let dir = tempfile::tempdir().unwrap();
    let arms = variant_arms(&small(), &[ProcessVariant::ADirect, ProcessVariant::BPlatform]);
    let c = compare(&arms, &[1, 2], Some(dir.path())).unwrap();
    output::write_comparison(dir.path(), &c).unwrap();
    for f in ["summary.csv", "paired.csv", "comparison.json", "runs.csv"] {
        assert!(dir.path().join(f).exists(), "{f}");
    }
    assert!(dir.path().join("runs/b-2").join(output::EVENTS_FILE).exists());
}

#[test]
fn platform_variant_charges_fees() {
    let mut cfg = small();
    cfg.horizon = 1500;
    cfg.variant = ProcessVariant::BPlatform;
    cfg.programs.push(ProgramConfig {
        name: "gamma".into(),
        ..ProgramConfig::default()
    });
    let m = metrics_from_log(&run_simulation(&cfg, 2).unwrap().log).unwrap().summary;
    assert!(m.platform_fees > 0.0);
    assert_eq!(m.verifier_fee_count, 0);
}
