//! Multi-seed comparisons between configurations, run in parallel.
//!
//! Each (arm, seed) run is independent and seeded on its own, so the rayon
//! schedule has no effect on results; rows are sorted by arm then seed.

use std::collections::BTreeMap;
use std::path::Path;

use crowdvet_core::domain::ProcessVariant;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::SimulationConfig;
use crate::metrics::{compute_metrics, MetricsContext, MetricsError, MetricsSummary};
use crate::output::{write_run, OutputError};
use crate::world::{run_simulation, SimError};

#[derive(Debug, Error)]
pub enum CompareError {
    #[error("run {arm} seed {seed}: {source}")]
    Sim {
        arm: String,
        seed: u64,
        #[source]
        source: SimError,
    },
    #[error("run {arm} seed {seed}: {source}")]
    Metrics {
        arm: String,
        seed: u64,
        #[source]
        source: MetricsError,
    },
    #[error(transparent)]
    Output(#[from] OutputError),
    #[error("no arms to compare")]
    NoArms,
}

/// One configuration under comparison.
#[derive(Debug, Clone)]
pub struct Arm {
    pub label: String,
    pub config: SimulationConfig,
}

impl Arm {
    pub fn new(label: impl Into<String>, config: SimulationConfig) -> Self {
        Self {
            label: label.into(),
            config,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub arm: String,
    pub seed: u64,
    pub summary: MetricsSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArmStat {
    pub arm: String,
    pub metric: String,
    pub n: usize,
    pub mean: f64,
    pub sd: f64,
}

/// Per-seed differences `arm − baseline` of one metric.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairedDiff {
    pub arm: String,
    pub baseline: String,
    pub metric: String,
    pub n: usize,
    pub mean_diff: f64,
    pub sd_diff: f64,
    pub positive: usize,
    pub negative: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub arms: Vec<String>,
    pub seeds: Vec<u64>,
    pub runs: Vec<RunRecord>,
    pub stats: Vec<ArmStat>,
    pub paired: Vec<PairedDiff>,
}

impl Comparison {
    pub fn run(&self, arm: &str, seed: u64) -> Option<&RunRecord> {
        self.runs.iter().find(|r| r.arm == arm && r.seed == seed)
    }

    pub fn paired_diff(&self, arm: &str, metric: &str) -> Option<&PairedDiff> {
        self.paired.iter().find(|p| p.arm == arm && p.metric == metric)
    }

    /// Values of `metric` for `arm`, in seed order.
    pub fn values(&self, arm: &str, metric: &str) -> Vec<f64> {
        self.runs
            .iter()
            .filter(|r| r.arm == arm)
            .filter_map(|r| r.summary.field(metric))
            .collect()
    }
}

/// Sample mean and standard deviation (n − 1 denominator; 0 for n < 2).
pub fn mean_sd(xs: &[f64]) -> (f64, f64) {
    if xs.is_empty() {
        return (0.0, 0.0);
    }
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
    (mean, var.sqrt())
}

/// Arms for the three process variants, labelled `a`, `b`, `c`. A variant
/// listed again gets a numbered label (`a2`).
pub fn variant_arms(base: &SimulationConfig, variants: &[ProcessVariant]) -> Vec<Arm> {
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    variants
        .iter()
        .map(|v| {
            let label = match v {
                ProcessVariant::ADirect => "a",
                ProcessVariant::BPlatform => "b",
                ProcessVariant::CCrowdVetted => "c",
            };
            let n = seen.entry(label).or_insert(0);
            *n += 1;
            let label = if *n == 1 { label.to_string() } else { format!("{label}{n}") };
            let mut config = base.clone();
            config.variant = *v;
            Arm::new(label, config)
        })
        .collect()
}

/// Runs every arm on every seed. The first arm is the baseline for paired
/// differences. When `out` is given each run's artifacts go to
/// `out/runs/<arm>-<seed>/`.
pub fn compare(arms: &[Arm], seeds: &[u64], out: Option<&Path>) -> Result<Comparison, CompareError> {
    if arms.is_empty() {
        return Err(CompareError::NoArms);
    }
    let jobs: Vec<(usize, u64)> = (0..arms.len())
        .flat_map(|a| seeds.iter().map(move |s| (a, *s)))
        .collect();
    let runs: Vec<RunRecord> = jobs
        .par_iter()
        .map(|&(a, seed)| {
            let arm = &arms[a];
            let result = run_simulation(&arm.config, seed).map_err(|source| CompareError::Sim {
                arm: arm.label.clone(),
                seed,
                source,
            })?;
            let metrics = compute_metrics(&result.log, &MetricsContext::from_config(&arm.config)).map_err(|source| {
                CompareError::Metrics {
                    arm: arm.label.clone(),
                    seed,
                    source,
                }
            })?;
            if let Some(dir) = out {
                let dir = dir.join("runs").join(format!("{}-{seed}", arm.label));
                write_run(&dir, &arm.config, &result.log, &metrics)?;
            }
            Ok(RunRecord {
                arm: arm.label.clone(),
                seed,
                summary: metrics.summary,
            })
        })
        .collect::<Result<_, CompareError>>()?;
    Ok(summarize(arms.iter().map(|a| a.label.clone()).collect(), seeds.to_vec(), runs))
}

fn summarize(arms: Vec<String>, seeds: Vec<u64>, mut runs: Vec<RunRecord>) -> Comparison {
    let order = |label: &str| arms.iter().position(|a| a == label).unwrap_or(usize::MAX);
    runs.sort_by(|x, y| order(&x.arm).cmp(&order(&y.arm)).then(x.seed.cmp(&y.seed)));
    let metrics: Vec<String> = runs
        .first()
        .map(|r| r.summary.fields().into_iter().map(|(k, _)| k).collect())
        .unwrap_or_default();

    let mut stats = Vec::new();
    for arm in &arms {
        let rows: Vec<&RunRecord> = runs.iter().filter(|r| &r.arm == arm).collect();
        for m in &metrics {
            let xs: Vec<f64> = rows.iter().filter_map(|r| r.summary.field(m)).collect();
            let (mean, sd) = mean_sd(&xs);
            stats.push(ArmStat {
                arm: arm.clone(),
                metric: m.clone(),
                n: xs.len(),
                mean,
                sd,
            });
        }
    }

    let mut paired = Vec::new();
    if let Some(baseline) = arms.first() {
        for arm in &arms[1..] {
            for m in &metrics {
                let diffs: Vec<f64> = seeds
                    .iter()
                    .filter_map(|s| {
                        let a = runs.iter().find(|r| &r.arm == arm && r.seed == *s)?;
                        let b = runs.iter().find(|r| &r.arm == baseline && r.seed == *s)?;
                        Some(a.summary.field(m)? - b.summary.field(m)?)
                    })
                    .collect();
                let (mean_diff, sd_diff) = mean_sd(&diffs);
                paired.push(PairedDiff {
                    arm: arm.clone(),
                    baseline: baseline.clone(),
                    metric: m.clone(),
                    n: diffs.len(),
                    mean_diff,
                    sd_diff,
                    positive: diffs.iter().filter(|d| **d > 0.0).count(),
                    negative: diffs.iter().filter(|d| **d < 0.0).count(),
                });
            }
        }
    }
    Comparison {
        arms,
        seeds,
        runs,
        stats,
        paired,
    }
}
