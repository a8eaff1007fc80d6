//! Run configuration: command-line flags over the `HYPERQ_SEED` environment
//! variable over a flat TOML file over built-in defaults.

use std::path::{Path, PathBuf};

use clap::Args;
use serde::{Deserialize, Serialize};

use crate::action_space::ActionSpace;
use crate::bandit::{MixerChoice, StudyConfig, Variant};
use crate::envs::{BuiltinEnv, DecomposableChain, Discretized, PointMassNav};
use crate::error::{Error, Result};
use crate::rl::{AgentConfig, QNetSpec, Structure};

pub const SEED_ENV: &str = "HYPERQ_SEED";

/// Values from a flat key-value TOML document. Keys are the long flag names.
#[derive(Clone, Debug, Default)]
pub struct FileValues {
    table: toml::Table,
}

impl FileValues {
    pub fn parse(text: &str) -> Result<Self> {
        let table: toml::Table = text
            .parse()
            .map_err(|e: toml::de::Error| Error::config("config", e.message().to_string()))?;
        if let Some((k, _)) = table.iter().find(|(_, v)| v.is_table()) {
            return Err(Error::config(k, "nested tables are not allowed"));
        }
        Ok(Self { table })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }

    fn check_keys(&self, allowed: &[&str]) -> Result<()> {
        match self.table.keys().find(|k| !allowed.contains(&k.as_str())) {
            Some(k) => Err(Error::config(k, "unknown key for this command")),
            None => Ok(()),
        }
    }

    fn get<T: FromValue>(&self, key: &str) -> Result<Option<T>> {
        self.table
            .get(key)
            .map(|v| T::from_value(key, v))
            .transpose()
    }
}

trait FromValue: Sized {
    fn from_value(key: &str, v: &toml::Value) -> Result<Self>;
}

fn wrong(key: &str, what: &str) -> Error {
    Error::config(key, format!("expected {what}"))
}

impl FromValue for u64 {
    fn from_value(key: &str, v: &toml::Value) -> Result<Self> {
        v.as_integer()
            .and_then(|i| u64::try_from(i).ok())
            .ok_or_else(|| wrong(key, "a non-negative integer"))
    }
}

impl FromValue for usize {
    fn from_value(key: &str, v: &toml::Value) -> Result<Self> {
        Ok(u64::from_value(key, v)? as usize)
    }
}

impl FromValue for f64 {
    fn from_value(key: &str, v: &toml::Value) -> Result<Self> {
        match v {
            toml::Value::Float(f) => Ok(*f),
            toml::Value::Integer(i) => Ok(*i as f64),
            _ => Err(wrong(key, "a number")),
        }
    }
}

impl FromValue for bool {
    fn from_value(key: &str, v: &toml::Value) -> Result<Self> {
        v.as_bool().ok_or_else(|| wrong(key, "true or false"))
    }
}

impl FromValue for String {
    fn from_value(key: &str, v: &toml::Value) -> Result<Self> {
        v.as_str()
            .map(str::to_string)
            .ok_or_else(|| wrong(key, "a string"))
    }
}

impl FromValue for PathBuf {
    fn from_value(key: &str, v: &toml::Value) -> Result<Self> {
        String::from_value(key, v).map(PathBuf::from)
    }
}

/// Arrays, or comma-separated strings as on the command line.
impl<T: FromValue + std::str::FromStr> FromValue for Vec<T> {
    fn from_value(key: &str, v: &toml::Value) -> Result<Self> {
        match v {
            toml::Value::Array(items) => items.iter().map(|x| T::from_value(key, x)).collect(),
            toml::Value::String(s) => s
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| wrong(key, "a comma-separated list"))
                })
                .collect(),
            _ => Err(wrong(key, "a list")),
        }
    }
}

/// `flag`, else the file value, else `default`.
fn pick<T: FromValue>(flag: Option<T>, file: &FileValues, key: &str, default: T) -> Result<T> {
    match flag {
        Some(v) => Ok(v),
        None => Ok(file.get(key)?.unwrap_or(default)),
    }
}

fn pick_list<T: FromValue + std::str::FromStr>(
    flag: Vec<T>,
    file: &FileValues,
    key: &str,
    default: Vec<T>,
) -> Result<Vec<T>> {
    if !flag.is_empty() {
        return Ok(flag);
    }
    Ok(file.get(key)?.unwrap_or(default))
}

/// Master seed: flag, then the environment variable, then the file, then 0.
pub fn master_seed(flag: Option<u64>, env_value: Option<&str>, file: &FileValues) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    if let Some(v) = env_value {
        return v
            .trim()
            .parse()
            .map_err(|_| Error::config(SEED_ENV, format!("`{v}` is not a non-negative integer")));
    }
    Ok(file.get("seed")?.unwrap_or(0))
}

fn positive(field: &str, v: usize) -> Result<usize> {
    if v == 0 {
        return Err(Error::config(field, "must be positive"));
    }
    Ok(v)
}

fn require_out(out: Option<PathBuf>) -> Result<PathBuf> {
    out.ok_or_else(|| Error::config("out", "an output directory is required"))
}

#[derive(Args, Clone, Debug, Default)]
pub struct PredictFlags {
    #[arg(long)]
    pub seed: Option<u64>,
    /// Sub-actions per dimension, one study size each.
    #[arg(long, value_delimiter = ',')]
    pub sizes: Vec<usize>,
    #[arg(long)]
    pub dims: Option<usize>,
    /// Reward functions per size.
    #[arg(long)]
    pub seeds: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub variants: Vec<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub iterations: Option<usize>,
    #[arg(long)]
    pub updates_per_iteration: Option<usize>,
    #[arg(long)]
    pub minibatch: Option<usize>,
    #[arg(long)]
    pub effective_lr: Option<f64>,
    #[arg(long)]
    pub universal_hidden: Option<usize>,
    #[arg(long)]
    pub universal_table_init: Option<f64>,
    #[arg(long)]
    pub adam_epsilon: Option<f64>,
}

const PREDICT_KEYS: &[&str] = &[
    "seed",
    "sizes",
    "dims",
    "seeds",
    "variants",
    "out",
    "iterations",
    "updates-per-iteration",
    "minibatch",
    "effective-lr",
    "universal-hidden",
    "universal-table-init",
    "adam-epsilon",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictConfig {
    pub study: StudyConfig,
    pub out: PathBuf,
}

pub fn resolve_predict(
    flags: PredictFlags,
    file: &FileValues,
    env_seed: Option<&str>,
) -> Result<PredictConfig> {
    file.check_keys(PREDICT_KEYS)?;
    let d = StudyConfig::default();
    let variants: Vec<String> = pick_list(flags.variants, file, "variants", vec![])?;
    let variants = if variants.is_empty() {
        d.variants.clone()
    } else {
        variants
            .iter()
            .map(|v| v.parse::<Variant>())
            .collect::<Result<Vec<_>>>()?
    };
    let mut train = d.train.clone();
    train.seeds = positive("seeds", pick(flags.seeds, file, "seeds", train.seeds)?)?;
    train.iterations = pick(flags.iterations, file, "iterations", train.iterations)?;
    train.updates_per_iteration = pick(
        flags.updates_per_iteration,
        file,
        "updates-per-iteration",
        train.updates_per_iteration,
    )?;
    train.minibatch = positive(
        "minibatch",
        pick(flags.minibatch, file, "minibatch", train.minibatch)?,
    )?;
    train.effective_lr = pick(flags.effective_lr, file, "effective-lr", train.effective_lr)?;
    train.universal_hidden = positive(
        "universal-hidden",
        pick(
            flags.universal_hidden,
            file,
            "universal-hidden",
            train.universal_hidden,
        )?,
    )?;
    train.universal_table_init = pick(
        flags.universal_table_init,
        file,
        "universal-table-init",
        train.universal_table_init,
    )?;
    train.adam.epsilon = pick(flags.adam_epsilon, file, "adam-epsilon", train.adam.epsilon)?;
    if !(train.effective_lr > 0.0) {
        return Err(Error::config("effective-lr", "must be positive"));
    }
    if !(train.adam.epsilon > 0.0) {
        return Err(Error::config("adam-epsilon", "must be positive"));
    }
    if !(train.universal_table_init >= 0.0) {
        return Err(Error::config(
            "universal-table-init",
            "must be non-negative",
        ));
    }
    let sizes = pick_list(flags.sizes, file, "sizes", d.sizes.clone())?;
    if sizes.is_empty() || sizes.contains(&0) {
        return Err(Error::config("sizes", "need at least one positive size"));
    }
    let mut seen = sizes.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != sizes.len() {
        return Err(Error::config("sizes", "sizes must be distinct"));
    }
    let dims = positive("dims", pick(flags.dims, file, "dims", d.dims)?)?;
    for v in &variants {
        if let Variant::Hypergraph { rank, .. } = v {
            if *rank > dims {
                return Err(Error::config(
                    "variants",
                    format!("rank {rank} exceeds {dims} dimensions"),
                ));
            }
        }
    }
    let study = StudyConfig {
        sizes,
        dims,
        variants,
        train,
        reward: d.reward,
        master_seed: master_seed(flags.seed, env_seed, file)?,
    };
    Ok(PredictConfig {
        study,
        out: require_out(pick(flags.out.map(Some), file, "out", None)?)?,
    })
}

impl<T: FromValue> FromValue for Option<T> {
    fn from_value(key: &str, v: &toml::Value) -> Result<Self> {
        T::from_value(key, v).map(Some)
    }
}

/// A built-in environment and its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EnvSpec {
    Chain {
        dims: usize,
        bins: usize,
        horizon: usize,
        early_termination: bool,
    },
    PointMass {
        dims: usize,
        bins: usize,
        horizon: usize,
    },
}

impl EnvSpec {
    pub fn chain() -> Self {
        EnvSpec::Chain {
            dims: 4,
            bins: 5,
            horizon: 20,
            early_termination: false,
        }
    }

    pub fn point_mass() -> Self {
        EnvSpec::PointMass {
            dims: 2,
            bins: 5,
            horizon: 200,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            EnvSpec::Chain { .. } => "chain",
            EnvSpec::PointMass { .. } => "pointmass",
        }
    }

    pub fn build(&self, seed: u64) -> Result<BuiltinEnv> {
        Ok(match *self {
            EnvSpec::Chain {
                dims,
                bins,
                horizon,
                early_termination,
            } => BuiltinEnv::Chain(DecomposableChain::new(
                dims,
                bins,
                horizon,
                early_termination,
                seed,
            )?),
            EnvSpec::PointMass {
                dims,
                bins,
                horizon,
            } => {
                if horizon == 0 {
                    return Err(Error::config("horizon", "must be positive"));
                }
                BuiltinEnv::PointMass(Discretized::new(
                    PointMassNav::new(dims, horizon, seed),
                    bins,
                )?)
            }
        })
    }
}

#[derive(Args, Clone, Debug, Default)]
pub struct EnvFlags {
    /// `chain` or `pointmass`.
    #[arg(long)]
    pub env: Option<String>,
    /// Action dimensions.
    #[arg(long)]
    pub action_dims: Option<usize>,
    /// Sub-actions per dimension.
    #[arg(long)]
    pub bins: Option<usize>,
    #[arg(long)]
    pub horizon: Option<usize>,
    /// Chain only: end the episode on a full match.
    #[arg(long)]
    pub early_termination: Option<bool>,
}

const ENV_KEYS: &[&str] = &["env", "action-dims", "bins", "horizon", "early-termination"];

fn resolve_env(flags: EnvFlags, file: &FileValues) -> Result<EnvSpec> {
    let name: String = pick(flags.env, file, "env", "chain".into())?;
    let mut spec = match name.as_str() {
        "chain" => EnvSpec::chain(),
        "pointmass" => EnvSpec::point_mass(),
        other => {
            return Err(Error::config(
                "env",
                format!("unknown environment `{other}`"),
            ))
        }
    };
    match &mut spec {
        EnvSpec::Chain {
            dims,
            bins,
            horizon,
            early_termination,
        } => {
            *dims = positive(
                "action-dims",
                pick(flags.action_dims, file, "action-dims", *dims)?,
            )?;
            *bins = positive("bins", pick(flags.bins, file, "bins", *bins)?)?;
            *horizon = positive("horizon", pick(flags.horizon, file, "horizon", *horizon)?)?;
            *early_termination = pick(
                flags.early_termination,
                file,
                "early-termination",
                *early_termination,
            )?;
        }
        EnvSpec::PointMass {
            dims,
            bins,
            horizon,
        } => {
            *dims = positive(
                "action-dims",
                pick(flags.action_dims, file, "action-dims", *dims)?,
            )?;
            *bins = pick(flags.bins, file, "bins", *bins)?;
            if *bins < 2 {
                return Err(Error::config(
                    "bins",
                    "need at least two sub-actions per dimension",
                ));
            }
            *horizon = positive("horizon", pick(flags.horizon, file, "horizon", *horizon)?)?;
            if pick(flags.early_termination, file, "early-termination", false)? {
                return Err(Error::config(
                    "early-termination",
                    "only the chain terminates early",
                ));
            }
        }
    }
    Ok(spec)
}

/// One agent flavor in an RL run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgentVariant {
    pub structure: Structure,
    pub mixer: MixerChoice,
}

impl AgentVariant {
    pub fn label(&self) -> String {
        match self.structure {
            Structure::Flat => "flat".into(),
            Structure::Rank(r) => match self.mixer {
                MixerChoice::Summation => format!("r{r}-sum"),
                MixerChoice::Universal => format!("r{r}-uni"),
            },
        }
    }
}

#[derive(Args, Clone, Debug, Default)]
pub struct RlFlags {
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub env: EnvFlags,
    /// Hypergraph ranks to train, one agent each.
    #[arg(long, value_delimiter = ',')]
    pub rank: Vec<usize>,
    /// `sum` or `universal`.
    #[arg(long)]
    pub mixer: Option<String>,
    /// Also train the flat single-head baseline.
    #[arg(long)]
    pub baseline: Option<bool>,
    #[arg(long)]
    pub seeds: Option<usize>,
    /// Environment steps per run.
    #[arg(long)]
    pub steps: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub eval_period: Option<u64>,
    #[arg(long)]
    pub eval_episodes: Option<usize>,
    #[arg(long, value_delimiter = ',')]
    pub torso_hidden: Vec<usize>,
    #[arg(long)]
    pub head_hidden: Option<usize>,
    /// Flat head width; by default it matches the rank-1 agent's parameter count.
    #[arg(long)]
    pub flat_head_hidden: Option<usize>,
    #[arg(long)]
    pub universal_hidden: Option<usize>,
    #[arg(long)]
    pub learning_rate: Option<f64>,
    #[arg(long)]
    pub warmup: Option<usize>,
    #[arg(long)]
    pub target_period: Option<u64>,
    #[arg(long)]
    pub gamma: Option<f64>,
    #[arg(long)]
    pub minibatch: Option<usize>,
    #[arg(long)]
    pub epsilon_final_step: Option<u64>,
}

const RL_KEYS: &[&str] = &[
    "seed",
    "rank",
    "mixer",
    "baseline",
    "seeds",
    "steps",
    "out",
    "eval-period",
    "eval-episodes",
    "torso-hidden",
    "head-hidden",
    "flat-head-hidden",
    "universal-hidden",
    "learning-rate",
    "warmup",
    "target-period",
    "gamma",
    "minibatch",
    "epsilon-final-step",
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RlConfig {
    pub env: EnvSpec,
    pub agents: Vec<AgentVariant>,
    pub seeds: usize,
    pub steps: u64,
    pub eval_period: u64,
    pub eval_episodes: usize,
    pub master_seed: u64,
    pub torso_hidden: Vec<usize>,
    pub total_head_hidden: usize,
    /// `None`: the flat baseline gets the parameter budget of a rank-1
    /// summation agent with the same torso and head settings.
    pub flat_head_hidden: Option<usize>,
    pub universal_hidden: usize,
    pub agent: AgentConfig,
}

/// A resolved `rl` invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct RlCommand {
    pub config: RlConfig,
    pub out: PathBuf,
}

impl RlConfig {
    /// Desk-scale defaults: 9 seeds, evaluation every 2000 steps over 5 episodes.
    pub fn new(env: EnvSpec, agents: Vec<AgentVariant>) -> Self {
        let net = QNetSpec::new(Structure::Flat, MixerChoice::Summation);
        Self {
            env,
            agents,
            seeds: 9,
            steps: 50_000,
            eval_period: 2000,
            eval_episodes: 5,
            master_seed: 0,
            torso_hidden: net.torso_hidden,
            total_head_hidden: net.total_head_hidden,
            flat_head_hidden: None,
            universal_hidden: net.universal_hidden,
            agent: AgentConfig::default(),
        }
    }

    pub fn net_spec(
        &self,
        v: AgentVariant,
        space: &ActionSpace,
        obs_width: usize,
    ) -> Result<QNetSpec> {
        let spec = QNetSpec {
            structure: v.structure,
            mixer: v.mixer,
            torso_hidden: self.torso_hidden.clone(),
            total_head_hidden: self.total_head_hidden,
            universal_hidden: self.universal_hidden,
        };
        match (v.structure, self.flat_head_hidden) {
            (Structure::Rank(_), _) => Ok(spec),
            (Structure::Flat, Some(h)) => Ok(QNetSpec {
                total_head_hidden: h,
                ..spec
            }),
            (Structure::Flat, None) => QNetSpec {
                structure: Structure::Rank(1),
                ..spec
            }
            .matched_flat(space, obs_width),
        }
    }

    pub fn run_seed(&self, i: usize) -> u64 {
        self.master_seed.wrapping_add(i as u64)
    }

    pub fn validate(&self) -> Result<()> {
        if self.agents.is_empty() {
            return Err(Error::config(
                "rank",
                "no agent selected; give --rank or --baseline",
            ));
        }
        positive("seeds", self.seeds)?;
        positive("eval-episodes", self.eval_episodes)?;
        positive("head-hidden", self.total_head_hidden)?;
        if self.eval_period == 0 {
            return Err(Error::config("eval-period", "must be positive"));
        }
        self.agent.validate()?;
        let env = self.env.build(0)?;
        let n = crate::envs::Environment::action_space(&env).n_vertices();
        for a in &self.agents {
            if let Structure::Rank(r) = a.structure {
                if r == 0 || r > n {
                    return Err(Error::config("rank", format!("rank {r} outside 1..={n}")));
                }
            }
        }
        Ok(())
    }
}

pub fn resolve_rl(flags: RlFlags, file: &FileValues, env_seed: Option<&str>) -> Result<RlCommand> {
    let allowed: Vec<&str> = RL_KEYS.iter().chain(ENV_KEYS).copied().collect();
    file.check_keys(&allowed)?;
    let env = resolve_env(flags.env, file)?;
    let mixer = match pick(flags.mixer, file, "mixer", "sum".to_string())?.as_str() {
        "sum" => MixerChoice::Summation,
        "universal" => MixerChoice::Universal,
        other => return Err(Error::config("mixer", format!("unknown mixer `{other}`"))),
    };
    let mut agents = Vec::new();
    if pick(flags.baseline, file, "baseline", false)? {
        agents.push(AgentVariant {
            structure: Structure::Flat,
            mixer: MixerChoice::Summation,
        });
    }
    for r in pick_list(flags.rank, file, "rank", vec![])? {
        agents.push(AgentVariant {
            structure: Structure::Rank(r),
            mixer,
        });
    }
    let out = require_out(pick(flags.out.map(Some), file, "out", None)?)?;
    let mut cfg = RlConfig::new(env, agents);
    cfg.master_seed = master_seed(flags.seed, env_seed, file)?;
    cfg.seeds = pick(flags.seeds, file, "seeds", cfg.seeds)?;
    cfg.steps = pick(flags.steps, file, "steps", cfg.steps)?;
    cfg.eval_period = pick(flags.eval_period, file, "eval-period", cfg.eval_period)?;
    cfg.eval_episodes = pick(
        flags.eval_episodes,
        file,
        "eval-episodes",
        cfg.eval_episodes,
    )?;
    cfg.torso_hidden = pick_list(flags.torso_hidden, file, "torso-hidden", cfg.torso_hidden)?;
    cfg.total_head_hidden = pick(
        flags.head_hidden,
        file,
        "head-hidden",
        cfg.total_head_hidden,
    )?;
    cfg.flat_head_hidden = pick(
        flags.flat_head_hidden.map(Some),
        file,
        "flat-head-hidden",
        None,
    )?;
    if cfg.flat_head_hidden == Some(0) {
        return Err(Error::config("flat-head-hidden", "must be positive"));
    }
    cfg.universal_hidden = pick(
        flags.universal_hidden,
        file,
        "universal-hidden",
        cfg.universal_hidden,
    )?;
    let a = &mut cfg.agent;
    a.adam.learning_rate = pick(
        flags.learning_rate,
        file,
        "learning-rate",
        a.adam.learning_rate,
    )?;
    a.warmup = pick(flags.warmup, file, "warmup", a.warmup)?;
    a.target_period = pick(flags.target_period, file, "target-period", a.target_period)?;
    a.gamma = pick(flags.gamma, file, "gamma", a.gamma)?;
    a.minibatch = pick(flags.minibatch, file, "minibatch", a.minibatch)?;
    a.epsilon.final_step = pick(
        flags.epsilon_final_step,
        file,
        "epsilon-final-step",
        a.epsilon.final_step,
    )?;
    if !(a.adam.learning_rate > 0.0) {
        return Err(Error::config("learning-rate", "must be positive"));
    }
    cfg.validate()?;
    Ok(RlCommand { config: cfg, out })
}

#[derive(Args, Clone, Debug, Default)]
pub struct AnalyzeFlags {
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub ckpt_dir: Option<PathBuf>,
    #[command(flatten)]
    pub env: EnvFlags,
    /// Greedy steps per checkpoint.
    #[arg(long)]
    pub steps: Option<usize>,
    /// Defaults to the checkpoint directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

const ANALYZE_KEYS: &[&str] = &["seed", "ckpt-dir", "steps", "out"];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyzeConfig {
    /// Not embedded either; the CSV lists the checkpoint file names instead.
    #[serde(skip)]
    pub ckpt_dir: PathBuf,
    pub env: EnvSpec,
    pub steps: usize,
    /// Environment seed for checkpoints that do not record their own.
    pub master_seed: u64,
    /// Left out of the embedded config so outputs do not depend on where they go.
    #[serde(skip)]
    pub out: PathBuf,
}

pub fn resolve_analyze(
    flags: AnalyzeFlags,
    file: &FileValues,
    env_seed: Option<&str>,
) -> Result<AnalyzeConfig> {
    let allowed: Vec<&str> = ANALYZE_KEYS.iter().chain(ENV_KEYS).copied().collect();
    file.check_keys(&allowed)?;
    let ckpt_dir = pick(flags.ckpt_dir.map(Some), file, "ckpt-dir", None)?
        .ok_or_else(|| Error::config("ckpt-dir", "a checkpoint directory is required"))?;
    let out = pick(flags.out.map(Some), file, "out", None)?.unwrap_or_else(|| ckpt_dir.clone());
    Ok(AnalyzeConfig {
        env: resolve_env(flags.env, file)?,
        steps: positive("steps", pick(flags.steps, file, "steps", 10_000)?)?,
        master_seed: master_seed(flags.seed, env_seed, file)?,
        ckpt_dir,
        out,
    })
}

#[derive(Args, Clone, Debug, Default)]
pub struct ScoresFlags {
    #[arg(long, allow_hyphen_values = true)]
    pub agent: Option<f64>,
    /// Score of the reference agent; adds the relative score.
    #[arg(long, allow_hyphen_values = true)]
    pub baseline: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub human: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub random: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScoresConfig {
    pub agent: f64,
    pub baseline: Option<f64>,
    pub human: f64,
    pub random: f64,
}

pub fn resolve_scores(flags: ScoresFlags, file: &FileValues) -> Result<ScoresConfig> {
    file.check_keys(&["agent", "baseline", "human", "random"])?;
    let need = |flag: Option<f64>, key: &str| -> Result<f64> {
        match flag {
            Some(v) => Ok(v),
            None => file.get(key)?.ok_or_else(|| Error::config(key, "required")),
        }
    };
    Ok(ScoresConfig {
        agent: need(flags.agent, "agent")?,
        baseline: match flags.baseline {
            Some(v) => Some(v),
            None => file.get("baseline")?,
        },
        human: need(flags.human, "human")?,
        random: need(flags.random, "random")?,
    })
}
