//! Command line front end for the experiments.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use advlab::lab::{run, ExperimentConfig, ExperimentKind};
use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "advlab", version, about = "Adaptive versus oblivious corruption experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Majority flipping: far from every product, close to a reachable mixture
    Counterexample(Common),
    /// Adaptive imitation of an oblivious corruption on a large sample
    EasyDirection(Common),
    /// Collision tester against oblivious and adaptive removal
    SupportSize(Common),
    /// Correlation test separating adaptive from oblivious corruption
    DegreeLb(Common),
    /// Removal and addition models through augmented cost functions
    Conversions(Common),
    /// Malicious, binomial, non-i.i.d. and additive corruption compared
    PartialAdaptive(Common),
    /// Both sides of the gap for a cost function, with diagnostics
    Certify(Common),
}

#[derive(Args)]
struct Common {
    /// Flat key = value file; flags override it
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    domain_size: Option<usize>,
    /// Rate as p/q or a decimal
    #[arg(long)]
    eta: Option<String>,
    #[arg(long)]
    epsilon: Option<f64>,
    #[arg(long)]
    n: Option<usize>,
    /// Sample size, or "auto"
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    k_max: Option<usize>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    /// Cost table for certify
    #[arg(long)]
    cost_file: Option<PathBuf>,
    /// Report file; the event log goes next to it with .log appended
    #[arg(long)]
    out: Option<PathBuf>,
    /// Any other config key, as key=value
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

impl Command {
    fn split(self) -> (ExperimentKind, Common) {
        match self {
            Command::Counterexample(c) => (ExperimentKind::Counterexample, c),
            Command::EasyDirection(c) => (ExperimentKind::EasyDirection, c),
            Command::SupportSize(c) => (ExperimentKind::SupportSize, c),
            Command::DegreeLb(c) => (ExperimentKind::DegreeLb, c),
            Command::Conversions(c) => (ExperimentKind::Conversions, c),
            Command::PartialAdaptive(c) => (ExperimentKind::PartialAdaptive, c),
            Command::Certify(c) => (ExperimentKind::Certify, c),
        }
    }
}

fn build_config(kind: ExperimentKind, c: Common) -> advlab::Result<ExperimentConfig> {
    let mut cfg = ExperimentConfig::defaults(kind);
    if let Some(p) = &c.config {
        let text = fs::read_to_string(p).map_err(|e| advlab::Error::Io(format!("{}: {e}", p.display())))?;
        cfg.apply_text(&text)?;
    }
    let mut pairs: Vec<(String, String)> = Vec::new();
    let mut put = |k: &str, v: Option<String>| {
        if let Some(v) = v {
            pairs.push((k.to_string(), v));
        }
    };
    put("domain_size", c.domain_size.map(|v| v.to_string()));
    put("eta", c.eta);
    put("epsilon", c.epsilon.map(|v| v.to_string()));
    put("n", c.n.map(|v| v.to_string()));
    put("m", c.m);
    put("k_max", c.k_max.map(|v| v.to_string()));
    put("trials", c.trials.map(|v| v.to_string()));
    put("seed", c.seed.map(|v| v.to_string()));
    put("cost_file", c.cost_file.map(|p| p.display().to_string()));
    put("out", c.out.map(|p| p.display().to_string()));
    for kv in &c.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| advlab::Error::InvalidParameter(format!("--set expects KEY=VALUE, got {kv:?}")))?;
        pairs.push((k.trim().to_string(), v.trim().to_string()));
    }
    for (k, v) in pairs {
        cfg.set(&k, &v)?;
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let (kind, common) = Cli::parse().command.split();
    let result = build_config(kind, common).and_then(|cfg| {
        let report = run(&cfg)?;
        match &cfg.out {
            Some(p) => report.write(p, cfg.seed)?,
            None => print!("{}", report.to_text()),
        }
        Ok(report)
    });
    match result {
        Ok(report) => {
            for c in &report.checks {
                eprintln!("{}", c.summary());
            }
            if report.all_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
