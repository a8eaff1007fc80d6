use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use super::config::{
    resolve_analyze, resolve_predict, resolve_rl, resolve_scores, AnalyzeFlags, FileValues,
    PredictFlags, RlFlags, ScoresFlags,
};
use super::{cmd_analyze, cmd_predict, cmd_rl, normalized_score, relative_score};
use crate::error::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "hyperq", version, about = "Hypergraph Q-value experiments")]
pub struct Cli {
    /// Flat TOML file whose keys mirror the long flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Bandit prediction study.
    Predict(PredictFlags),
    /// Q-learning on a built-in environment.
    Rl(RlFlags),
    /// Per-hyperedge greedy representation statistics of saved agents.
    AnalyzeReps(AnalyzeFlags),
    /// Human-normalized and relative scores.
    Scores(ScoresFlags),
}

fn io(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

/// Runs one command. `env_seed` is the value of the seed environment variable.
pub fn execute(cli: Cli, env_seed: Option<&str>, out: &mut impl Write) -> Result<()> {
    let file = match &cli.config {
        Some(p) => FileValues::load(p)?,
        None => FileValues::default(),
    };
    let written = match cli.command {
        Command::Predict(flags) => {
            let cfg = resolve_predict(flags, &file, env_seed)?;
            let (result, files) = cmd_predict(&cfg)?;
            writeln!(out, "variant size n mean_final stderr").map_err(io)?;
            for s in result.summary() {
                writeln!(
                    out,
                    "{} {} {} {:.6} {:.6}",
                    s.variant, s.size, s.n, s.mean_final, s.stderr_final
                )
                .map_err(io)?;
            }
            files
        }
        Command::Rl(flags) => {
            let cmd = resolve_rl(flags, &file, env_seed)?;
            let (logs, files) = cmd_rl(&cmd)?;
            for log in &logs {
                let e = log.final_eval();
                let opt = log
                    .optimal_return
                    .map_or("n/a".to_string(), |o| format!("{o:.4}"));
                writeln!(
                    out,
                    "{} seed {}: final return {:.4} (optimal {opt})",
                    log.variant.label(),
                    log.seed,
                    e.mean_return
                )
                .map_err(io)?;
            }
            files
        }
        Command::AnalyzeReps(flags) => {
            let cfg = resolve_analyze(flags, &file, env_seed)?;
            let (stats, files) = cmd_analyze(&cfg)?;
            writeln!(out, "agent edge mean min max steps").map_err(io)?;
            for s in &stats {
                for e in &s.edges {
                    writeln!(
                        out,
                        "{} {} {:.6} {:.6} {:.6} {}",
                        s.agent, e.edge, e.mean, e.min, e.max, s.count
                    )
                    .map_err(io)?;
                }
            }
            files
        }
        Command::Scores(flags) => {
            let cfg = resolve_scores(flags, &file)?;
            let n = normalized_score(cfg.agent, cfg.human, cfg.random)?;
            writeln!(out, "normalized {n}").map_err(io)?;
            if let Some(b) = cfg.baseline {
                let r = relative_score(cfg.agent, b, cfg.human, cfg.random)?;
                writeln!(out, "relative {r}").map_err(io)?;
            }
            vec![]
        }
    };
    for f in written {
        writeln!(out, "wrote {}", f.display()).map_err(io)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str], env_seed: Option<&str>) -> Result<String> {
        let cli =
            Cli::try_parse_from(std::iter::once("hyperq").chain(args.iter().copied())).unwrap();
        let mut buf = Vec::new();
        execute(cli, env_seed, &mut buf)?;
        Ok(String::from_utf8(buf).unwrap())
    }

    #[test]
    fn scores_command() {
        let s = run(
            &[
                "scores",
                "--agent",
                "15",
                "--baseline",
                "10",
                "--human",
                "20",
                "--random",
                "0",
            ],
            None,
        )
        .unwrap();
        assert_eq!(s, "normalized 0.75\nrelative 0.25\n");
        let s = run(
            &["scores", "--agent", "-5", "--human", "5", "--random", "-15"],
            None,
        )
        .unwrap();
        assert_eq!(s, "normalized 0.5\n");
        assert!(matches!(
            run(
                &["scores", "--agent", "1", "--human", "2", "--random", "2"],
                None
            ),
            Err(Error::UndefinedNormalization(_))
        ));
    }

    #[test]
    fn every_subcommand_parses() {
        for args in [
            vec![
                "predict",
                "--sizes",
                "5,10,20",
                "--seeds",
                "64",
                "--variants",
                "baseline,r3-uni",
                "--out",
                "d",
            ],
            vec![
                "rl", "--env", "chain", "--rank", "1,2", "--mixer", "sum", "--seeds", "3",
                "--steps", "10", "--out", "d",
            ],
            vec![
                "analyze-reps",
                "--ckpt-dir",
                "d",
                "--env",
                "pointmass",
                "--steps",
                "10000",
            ],
            vec![
                "scores",
                "--agent",
                "1",
                "--baseline",
                "2",
                "--human",
                "3",
                "--random",
                "0",
            ],
        ] {
            Cli::try_parse_from(std::iter::once("hyperq").chain(args)).unwrap();
        }
        assert!(Cli::try_parse_from(["hyperq", "train"]).is_err());
    }

    #[test]
    fn config_file_and_seed_variable() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("run.toml");
        let out = dir.path().join("p");
        std::fs::write(
            &cfg,
            format!(
                "sizes = [2]\nseeds = 1\nvariants = [\"baseline\", \"r1-sum\"]\niterations = 2\nupdates-per-iteration = 3\nout = {:?}\n",
                out.to_str().unwrap()
            ),
        )
        .unwrap();
        let c = cfg.to_str().unwrap();
        let text = run(&["predict", "--config", c], Some("9")).unwrap();
        assert!(text.contains("wrote"));
        let csv = std::fs::read_to_string(out.join(super::super::predict::CURVES_CSV)).unwrap();
        assert!(csv.contains("\"master_seed\":9"));
        run(&["predict", "--config", c, "--seed", "4"], Some("9")).unwrap();
        let csv = std::fs::read_to_string(out.join(super::super::predict::CURVES_CSV)).unwrap();
        assert!(csv.contains("\"master_seed\":4"));
    }
}
