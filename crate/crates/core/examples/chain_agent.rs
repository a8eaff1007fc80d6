//! Q-learning on the decomposable chain: a rank-1 agent against the flat
//! baseline with the same parameter budget, one seed each.
//!
//! cargo run --release --example chain_agent

use hyperq::bandit::MixerChoice;
use hyperq::exp::config::{AgentVariant, EnvSpec, RlConfig};
use hyperq::exp::train::run_single;
use hyperq::rl::Structure;

fn main() -> hyperq::Result<()> {
    let env = EnvSpec::Chain {
        dims: 3,
        bins: 4,
        horizon: 20,
        early_termination: false,
    };
    let agents = vec![
        AgentVariant {
            structure: Structure::Rank(1),
            mixer: MixerChoice::Summation,
        },
        AgentVariant {
            structure: Structure::Flat,
            mixer: MixerChoice::Summation,
        },
    ];
    let mut cfg = RlConfig::new(env, agents.clone());
    cfg.steps = 30_000;
    cfg.eval_period = 5_000;
    cfg.agent.warmup = 5_000;
    cfg.agent.epsilon.final_step = 25_000;

    for v in agents {
        let log = run_single(&cfg, v, 0)?;
        let curve: Vec<String> = log
            .evals
            .iter()
            .map(|e| format!("{:.1}", e.mean_return))
            .collect();
        println!(
            "{:<7} {} parameters, returns {} (optimal {})",
            v.label(),
            log.agent.online().param_count(),
            curve.join(" "),
            log.optimal_return.unwrap_or(f64::NAN)
        );
    }
    Ok(())
}
