//! Trains three short rank-2 runs, saves their checkpoints, then measures
//! the greedy action's per-hyperedge representation across them.
//!
//! cargo run --release --example representations -- [OUT_DIR]

use std::path::PathBuf;

use hyperq::bandit::MixerChoice;
use hyperq::exp::config::{AgentVariant, AnalyzeConfig, EnvSpec, RlCommand, RlConfig};
use hyperq::exp::{cmd_analyze, cmd_rl};
use hyperq::rl::Structure;

fn main() -> hyperq::Result<()> {
    let out = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join("hyperq-representations"));
    let env = EnvSpec::Chain {
        dims: 3,
        bins: 3,
        horizon: 10,
        early_termination: false,
    };
    let mut config = RlConfig::new(
        env.clone(),
        vec![AgentVariant {
            structure: Structure::Rank(2),
            mixer: MixerChoice::Summation,
        }],
    );
    config.seeds = 3;
    config.steps = 8_000;
    config.eval_period = 4_000;
    config.agent.warmup = 1_000;
    config.agent.epsilon.final_step = 6_000;
    config.agent.adam.learning_rate = 1e-4;
    cmd_rl(&RlCommand {
        config,
        out: out.clone(),
    })?;

    let (stats, files) = cmd_analyze(&AnalyzeConfig {
        ckpt_dir: out.clone(),
        env,
        steps: 1_000,
        master_seed: 0,
        out,
    })?;
    for s in &stats {
        println!("{}: {} greedy steps", s.agent, s.count);
        for e in &s.edges {
            println!(
                "  {:<6} mean {:>8.4}  min {:>8.4}  max {:>8.4}",
                e.edge, e.mean, e.min, e.max
            );
        }
    }
    for f in files {
        println!("wrote {}", f.display());
    }
    Ok(())
}
