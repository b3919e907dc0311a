use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use crowdvet_core::domain::ProcessVariant;
use crowdvet_sim::compare::{compare, variant_arms, CompareError};
use crowdvet_sim::metrics::{compute_metrics, metrics_from_log, recorded_config, MetricsContext, MetricsError};
use crowdvet_sim::output::{self, OutputError};
use crowdvet_sim::{load_config, run_simulation, ConfigError, SimError, SimulationConfig};

#[derive(Parser)]
#[command(name = "crowdvet", version, about = "Crowd-vetted bug bounty protocol simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one simulation and write its event log and metrics.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Overrides the seed in the config file.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run process variants over a range of seeds and report paired differences.
    Compare {
        #[arg(long)]
        config: PathBuf,
        /// Comma-separated variants; the first is the baseline.
        #[arg(long, default_value = "a,b,c", value_delimiter = ',')]
        variants: Vec<String>,
        /// Inclusive range `N..M`, or a comma-separated list.
        #[arg(long, default_value = "1..30")]
        seeds: String,
        #[arg(long)]
        out: PathBuf,
        /// Skip writing each run's event log.
        #[arg(long)]
        no_logs: bool,
    },
    /// Recompute metrics from an event log and check that the simulator
    /// regenerates the same log.
    Replay {
        #[arg(long)]
        log: PathBuf,
        /// Also write the metric tables here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a config file and print it with every default filled in.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

enum Failure {
    Config(String),
    Runtime(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        match e {
            SimError::Config(c) => c.into(),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

impl From<OutputError> for Failure {
    fn from(e: OutputError) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<MetricsError> for Failure {
    fn from(e: MetricsError) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<CompareError> for Failure {
    fn from(e: CompareError) -> Self {
        match e {
            CompareError::Sim {
                source: SimError::Config(c),
                ..
            } => c.into(),
            other => Failure::Runtime(other.to_string()),
        }
    }
}

fn parse_variant(s: &str) -> Result<ProcessVariant, Failure> {
    match s.trim().to_ascii_lowercase().as_str() {
        "a" | "a_direct" => Ok(ProcessVariant::ADirect),
        "b" | "b_platform" => Ok(ProcessVariant::BPlatform),
        "c" | "c_crowd_vetted" => Ok(ProcessVariant::CCrowdVetted),
        other => Err(Failure::Config(format!("unknown variant `{other}` (expected a, b or c)"))),
    }
}

fn parse_seeds(s: &str) -> Result<Vec<u64>, Failure> {
    let bad = || Failure::Config(format!("bad seed list `{s}` (expected N..M or a,b,c)"));
    let s = s.trim();
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u64 = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
        if hi < lo {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    s.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
}

fn run(config: &Path, seed: Option<u64>, out: &Path) -> Result<(), Failure> {
    let config = load_config(config)?;
    let seed = seed.unwrap_or(config.seed);
    let result = run_simulation(&config, seed)?;
    let metrics = compute_metrics(&result.log, &MetricsContext::from_config(&config))?;
    output::write_run(out, &config, &result.log, &metrics)?;
    let s = &metrics.summary;
    println!(
        "seed {seed}: {} events, {} submissions, {} actionable, snr {:.3}, vendor overhead {:.0} min, reward spend {:.2}",
        result.log.len(),
        s.submissions,
        s.actionable,
        s.snr,
        s.vendor_overhead_minutes,
        s.reward_spend
    );
    println!("wrote {}", out.display());
    Ok(())
}

fn compare_cmd(config: &Path, variants: &[String], seeds: &str, out: &Path, no_logs: bool) -> Result<(), Failure> {
    let config = load_config(config)?;
    let variants: Vec<ProcessVariant> = variants.iter().map(|v| parse_variant(v)).collect::<Result<_, _>>()?;
    if variants.is_empty() {
        return Err(Failure::Config("no variants given".into()));
    }
    let seeds = parse_seeds(seeds)?;
    let arms = variant_arms(&config, &variants);
    let comparison = compare(&arms, &seeds, (!no_logs).then_some(out))?;
    output::write_comparison(out, &comparison)?;
    println!("{} runs ({} variants x {} seeds)", comparison.runs.len(), arms.len(), seeds.len());
    for metric in ["vendor_overhead_minutes", "reward_spend", "snr", "actionable", "time_to_actionable"] {
        let cells: Vec<String> = comparison
            .stats
            .iter()
            .filter(|s| s.metric == metric)
            .map(|s| format!("{} {:.2} ± {:.2}", s.arm, s.mean, s.sd))
            .collect();
        println!("{metric}: {}", cells.join(", "));
        for p in comparison.paired.iter().filter(|p| p.metric == metric) {
            println!(
                "  {} - {}: {:+.2} ± {:.2} (higher in {}/{}, lower in {}/{})",
                p.arm, p.baseline, p.mean_diff, p.sd_diff, p.positive, p.n, p.negative, p.n
            );
        }
    }
    println!("wrote {}", out.display());
    Ok(())
}

fn replay(log_path: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let log = output::read_log(log_path)?;
    let metrics = metrics_from_log(&log)?;
    if let Some(out) = out {
        output::write_metrics(out, &metrics)?;
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&metrics.summary).expect("summary serializes")
    );
    match recorded_config(&log)? {
        Some((config, seed)) => {
            let rerun = run_simulation(&config, seed)?;
            if rerun.log != log {
                return Err(Failure::Runtime(format!(
                    "{} does not match a fresh run of its recorded config and seed {seed}",
                    log_path.display()
                )));
            }
            eprintln!("log reproduced from its recorded config and seed {seed}");
        }
        None => eprintln!("log carries no run parameters; skipped regeneration"),
    }
    Ok(())
}

fn validate(config: &Path) -> Result<(), Failure> {
    let config: SimulationConfig = load_config(config)?;
    print!("{}", config.to_toml());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { config, seed, out } => run(config, *seed, out),
        Command::Compare {
            config,
            variants,
            seeds,
            out,
            no_logs,
        } => compare_cmd(config, variants, seeds, out, *no_logs),
        Command::Replay { log, out } => replay(log, out.as_deref()),
        Command::Validate { config } => validate(config),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(msg)) => {
            eprintln!("config error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
