use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{AgentVariant, RlCommand, RlConfig};
use super::svg::{self, LinePanel, Series};
use super::{create_dir, distinct, write_text};
use crate::envs::Environment;
use crate::error::{Error, Result};
use crate::rl::Agent;

pub const RETURNS_SVG: &str = "returns.svg";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalRecord {
    /// Environment steps trained so far.
    pub step: u64,
    pub mean_return: f64,
    pub std_return: f64,
    /// Training exploration rate at this step.
    pub epsilon: f64,
    /// Mean minibatch loss since the previous evaluation, if any update ran.
    pub loss_avg: Option<f64>,
    pub returns: Vec<f64>,
}

/// One JSONL line. Every run file starts with a header.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RunRecord {
    Header {
        agent: String,
        seed: u64,
        optimal_return: Option<f64>,
        config: RlConfig,
    },
    Eval(EvalRecord),
}

#[derive(Clone, Debug)]
pub struct RunLog {
    pub variant: AgentVariant,
    pub seed: u64,
    pub optimal_return: Option<f64>,
    pub evals: Vec<EvalRecord>,
    pub agent: Agent,
}

impl RunLog {
    pub fn file_stem(&self) -> String {
        format!("{}_seed{}", self.variant.label(), self.seed)
    }

    pub fn final_eval(&self) -> &EvalRecord {
        self.evals.last().expect("every run evaluates at step 0")
    }

    pub fn records(&self, cfg: &RlConfig) -> Vec<RunRecord> {
        let mut out = vec![RunRecord::Header {
            agent: self.variant.label(),
            seed: self.seed,
            optimal_return: self.optimal_return,
            config: cfg.clone(),
        }];
        out.extend(self.evals.iter().cloned().map(RunRecord::Eval));
        out
    }
}

fn mean_std(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Trains one agent on one seed, evaluating at step 0, every
/// `eval_period` steps, and at the end.
pub fn run_single(cfg: &RlConfig, variant: AgentVariant, run: usize) -> Result<RunLog> {
    let seed = cfg.run_seed(run);
    let mut env = cfg.env.build(seed)?;
    let mut eval_env = env.clone();
    let spec = cfg.net_spec(variant, env.action_space(), env.obs_width())?;
    let mut agent = Agent::build(
        &spec,
        env.action_space().clone(),
        env.obs_width(),
        cfg.agent.clone(),
        seed,
    )?;
    let optimal_return = env.optimal_return().ok();
    let mut evals = Vec::new();
    let mut state = env.reset();
    let (mut loss_sum, mut loss_n) = (0.0, 0usize);
    for step in 0..=cfg.steps {
        if step % cfg.eval_period == 0 || step == cfg.steps {
            let returns = agent.evaluate(&mut eval_env, cfg.eval_episodes)?;
            let (mean_return, std_return) = mean_std(&returns);
            evals.push(EvalRecord {
                step,
                mean_return,
                std_return,
                epsilon: agent.epsilon(step),
                loss_avg: (loss_n > 0).then(|| loss_sum / loss_n as f64),
                returns,
            });
            (loss_sum, loss_n) = (0.0, 0);
        }
        if step == cfg.steps {
            break;
        }
        if let (_, Some(loss)) = agent.train_env_step(&mut env, &mut state)? {
            loss_sum += loss;
            loss_n += 1;
        }
    }
    Ok(RunLog {
        variant,
        seed,
        optimal_return,
        evals,
        agent,
    })
}

/// Every (agent, seed) run, in config order. Runs are independent.
pub fn run_rl(cfg: &RlConfig) -> Result<Vec<RunLog>> {
    cfg.validate()?;
    let jobs: Vec<(AgentVariant, usize)> = cfg
        .agents
        .iter()
        .flat_map(|&v| (0..cfg.seeds).map(move |i| (v, i)))
        .collect();
    jobs.par_iter()
        .map(|&(v, i)| run_single(cfg, v, i))
        .collect()
}

pub fn write_jsonl(path: &Path, records: &[RunRecord]) -> Result<()> {
    let f = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(f);
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n").map_err(|e| Error::io(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_jsonl(path: &Path) -> Result<Vec<RunRecord>> {
    let f = File::open(path).map_err(|e| Error::io(path, e))?;
    BufReader::new(f)
        .lines()
        .map(|l| {
            let l = l.map_err(|e| Error::io(path, e))?;
            Ok(serde_json::from_str(&l)?)
        })
        .collect()
}

/// Mean evaluation return across seeds, one line per agent.
pub fn render_returns_svg(runs: &[Vec<RunRecord>]) -> String {
    let mut rows: Vec<(String, u64, f64)> = Vec::new();
    let mut env_name = String::new();
    for run in runs {
        let mut agent = String::new();
        for r in run {
            match r {
                RunRecord::Header {
                    agent: a, config, ..
                } => {
                    agent.clone_from(a);
                    env_name = config.env.name().to_string();
                }
                RunRecord::Eval(e) => rows.push((agent.clone(), e.step, e.mean_return)),
            }
        }
    }
    let agents = distinct(rows.iter().map(|r| r.0.clone()));
    let series = agents
        .iter()
        .map(|a| {
            let steps = distinct(rows.iter().filter(|r| &r.0 == a).map(|r| r.1));
            let points = steps
                .iter()
                .map(|&s| {
                    let xs: Vec<f64> = rows
                        .iter()
                        .filter(|r| &r.0 == a && r.1 == s)
                        .map(|r| r.2)
                        .collect();
                    (s as f64, xs.iter().sum::<f64>() / xs.len() as f64)
                })
                .collect();
            Series {
                name: a.clone(),
                points,
            }
        })
        .collect();
    svg::line_chart(&[LinePanel {
        title: env_name,
        x_label: "environment steps".into(),
        y_label: "mean evaluation return".into(),
        series,
    }])
}

/// Trains every run and writes JSONL logs, final checkpoints and the figure.
pub fn cmd_rl(cmd: &RlCommand) -> Result<(Vec<RunLog>, Vec<PathBuf>)> {
    let (cfg, out) = (&cmd.config, &cmd.out);
    create_dir(out)?;
    let logs = run_rl(cfg)?;
    let mut files = Vec::new();
    let mut runs = Vec::new();
    let env_json = serde_json::to_string(&cfg.env)?;
    for log in &logs {
        let records = log.records(cfg);
        let path = out.join(format!("{}.jsonl", log.file_stem()));
        write_jsonl(&path, &records)?;
        files.push(path);
        runs.push(records);

        let path = out.join(format!("{}.ckpt", log.file_stem()));
        let f = File::create(&path).map_err(|e| Error::io(&path, e))?;
        let meta = vec![
            ("agent".to_string(), log.variant.label()),
            ("seed".to_string(), log.seed.to_string()),
            ("steps".to_string(), cfg.steps.to_string()),
            ("env".to_string(), env_json.clone()),
        ];
        log.agent.online().save(BufWriter::new(f), &meta)?;
        files.push(path);
    }
    let path = out.join(RETURNS_SVG);
    write_text(&path, &render_returns_svg(&runs))?;
    files.push(path);
    Ok((logs, files))
}
