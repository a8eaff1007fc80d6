use std::collections::HashMap;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::{EpsilonSchedule, ReplayBuffer, Transition};
use crate::action_space::ActionSpace;
use crate::bandit::MixerChoice;
use crate::envs::{Environment, StepResult};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::nn::{Activation, Adam, AdamConfig};
use crate::rng::{self, label, Rng};
use crate::value_model::{
    argmax, Evaluation, GradScratch, HypergraphQModel, MixerKind, NeuralLayout,
};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AgentConfig {
    pub minibatch: usize,
    /// Gradient updates between hard target syncs.
    pub target_period: u64,
    /// Environment steps per gradient update.
    pub update_frequency: u64,
    /// Replay size required before learning starts.
    pub warmup: usize,
    pub replay_capacity: usize,
    pub gamma: f64,
    pub adam: AdamConfig,
    pub epsilon: EpsilonSchedule,
}

impl Default for AgentConfig {
    fn default() -> Self {
        Self {
            minibatch: 64,
            target_period: 2000,
            update_frequency: 1,
            warmup: 10_000,
            replay_capacity: 100_000,
            gamma: 0.99,
            adam: AdamConfig::AGENT,
            epsilon: EpsilonSchedule::default(),
        }
    }
}

impl AgentConfig {
    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("minibatch", self.minibatch as u64),
            ("target_period", self.target_period),
            ("update_frequency", self.update_frequency),
            ("replay_capacity", self.replay_capacity as u64),
        ];
        for (field, v) in positive {
            if v == 0 {
                return Err(Error::config(field, "must be positive"));
            }
        }
        if !(0.0..=1.0).contains(&self.gamma) {
            return Err(Error::config("gamma", "must lie in [0, 1]"));
        }
        if self.warmup > self.replay_capacity {
            return Err(Error::config("warmup", "exceeds the replay capacity"));
        }
        Ok(())
    }
}

/// Which hyperedges the value model gets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Structure {
    /// One head over the whole action space: the standard DQN output layer.
    Flat,
    /// Every hyperedge of order at most `r`.
    Rank(usize),
}

impl Structure {
    pub fn hypergraph(&self, n_vertices: usize) -> Result<Hypergraph> {
        match *self {
            Structure::Flat => Hypergraph::full_edge(n_vertices),
            Structure::Rank(r) => Hypergraph::rank(n_vertices, r),
        }
    }

    pub fn label(&self) -> String {
        match self {
            Structure::Flat => "flat".into(),
            Structure::Rank(r) => format!("r{r}"),
        }
    }
}

/// Network shape for an agent's value model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QNetSpec {
    pub structure: Structure,
    pub mixer: MixerChoice,
    pub torso_hidden: Vec<usize>,
    /// Head hidden units shared equally among hyperedges.
    pub total_head_hidden: usize,
    pub universal_hidden: usize,
}

impl QNetSpec {
    pub fn new(structure: Structure, mixer: MixerChoice) -> Self {
        Self {
            structure,
            mixer,
            torso_hidden: vec![32],
            total_head_hidden: 64,
            universal_hidden: 16,
        }
    }

    pub fn build(
        &self,
        space: ActionSpace,
        obs_width: usize,
        rng: &mut Rng,
    ) -> Result<HypergraphQModel> {
        if self.structure == Structure::Flat && self.mixer != MixerChoice::Summation {
            return Err(Error::config(
                "mixer",
                "the flat baseline has a single head and no mixer",
            ));
        }
        let h = self.structure.hypergraph(space.n_vertices())?;
        let mixer = match self.mixer {
            MixerChoice::Summation => MixerKind::Summation,
            MixerChoice::Universal => {
                MixerKind::universal(h.n_edges(), self.universal_hidden, Activation::Relu)?
            }
        };
        let layout = NeuralLayout {
            obs_width,
            torso_hidden: self.torso_hidden.clone(),
            total_head_hidden: self.total_head_hidden,
        };
        HypergraphQModel::neural(space, h, &layout, mixer, rng)
    }

    /// Flat spec on the same torso whose head width brings its parameter
    /// count closest to this spec's.
    pub fn matched_flat(&self, space: &ActionSpace, obs_width: usize) -> Result<QNetSpec> {
        let target = self
            .build(space.clone(), obs_width, &mut crate::rng::stream(0, &[]))?
            .param_count();
        let feat = self.torso_hidden.last().copied().unwrap_or(obs_width);
        let mut torso = 0;
        let mut prev = obs_width;
        for &w in &self.torso_hidden {
            torso += prev * w + w;
            prev = w;
        }
        let n = space.total_size();
        let count = |h: usize| torso + (feat + 1) * h + (h + 1) * n;
        let per_unit = feat + 1 + n;
        let guess = (target.saturating_sub(torso + n) / per_unit).max(1);
        let best = [guess, guess + 1]
            .into_iter()
            .min_by_key(|&h| count(h).abs_diff(target))
            .expect("two candidates");
        Ok(QNetSpec {
            structure: Structure::Flat,
            mixer: MixerChoice::Summation,
            total_head_hidden: best,
            ..self.clone()
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpisodeStats {
    pub ret: f64,
    pub steps: usize,
}

fn state_key(s: &[f64]) -> Vec<u64> {
    s.iter().map(|x| x.to_bits()).collect()
}

/// Per-transition targets `r + γ max_a' Q_target(s', a')`. Only genuine
/// terminals drop the bootstrap; timeouts keep it. Each distinct next state
/// is evaluated once.
pub fn td_targets(
    target: &HypergraphQModel,
    batch: &[&Transition],
    gamma: f64,
) -> Result<Vec<f64>> {
    let mut cache: HashMap<Vec<u64>, f64> = HashMap::new();
    batch
        .iter()
        .map(|t| {
            if t.terminal {
                return Ok(t.reward);
            }
            let key = state_key(&t.next_state);
            let m = match cache.get(&key) {
                Some(&m) => m,
                None => {
                    let q = target.q_values_from(&target.evaluate(&t.next_state)?);
                    let m = q.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                    cache.insert(key, m);
                    m
                }
            };
            Ok(t.reward + gamma * m)
        })
        .collect()
}

fn choose(model: &HypergraphQModel, state: &[f64], epsilon: f64, rng: &mut Rng) -> Result<usize> {
    if rng.gen::<f64>() < epsilon {
        return Ok(rng.gen_range(0..model.space().total_size()));
    }
    Ok(argmax(&model.q_values_all(state)?))
}

/// Online and target value models with replay, exploration and optimizer
/// state. Flat and hypergraph agents differ only in the model they hold.
#[derive(Clone, Debug)]
pub struct Agent {
    pub config: AgentConfig,
    online: HypergraphQModel,
    target: HypergraphQModel,
    adam: Adam,
    replay: ReplayBuffer,
    grads: Vec<f64>,
    scratch: GradScratch,
    explore_rng: Rng,
    replay_rng: Rng,
    eval_rng: Rng,
    env_steps: u64,
    updates: u64,
}

impl Agent {
    /// Wraps `model`; all further randomness comes from `seed`.
    pub fn new(model: HypergraphQModel, config: AgentConfig, seed: u64) -> Result<Self> {
        config.validate()?;
        let n = model.param_count();
        Ok(Self {
            target: model.clone(),
            online: model,
            adam: Adam::new(config.adam, n),
            replay: ReplayBuffer::new(config.replay_capacity),
            grads: vec![0.0; n],
            scratch: GradScratch::default(),
            explore_rng: rng::stream(seed, &[label::EXPLORATION]),
            replay_rng: rng::stream(seed, &[label::REPLAY]),
            eval_rng: rng::stream(seed, &[label::EVAL]),
            env_steps: 0,
            updates: 0,
            config,
        })
    }

    pub fn build(
        spec: &QNetSpec,
        space: ActionSpace,
        obs_width: usize,
        config: AgentConfig,
        seed: u64,
    ) -> Result<Self> {
        let model = spec.build(
            space,
            obs_width,
            &mut rng::stream(seed, &[label::AGENT_INIT]),
        )?;
        Self::new(model, config, seed)
    }

    pub fn online(&self) -> &HypergraphQModel {
        &self.online
    }

    pub fn online_mut(&mut self) -> &mut HypergraphQModel {
        &mut self.online
    }

    pub fn target(&self) -> &HypergraphQModel {
        &self.target
    }

    pub fn replay(&self) -> &ReplayBuffer {
        &self.replay
    }

    pub fn env_steps(&self) -> u64 {
        self.env_steps
    }

    pub fn updates(&self) -> u64 {
        self.updates
    }

    /// Training exploration rate after `step` environment steps.
    pub fn epsilon(&self, step: u64) -> f64 {
        self.config.epsilon.value(step)
    }

    /// ε-greedy under the training schedule at `step`.
    pub fn act(&self, state: &[f64], step: u64, rng: &mut Rng) -> Result<usize> {
        choose(&self.online, state, self.epsilon(step), rng)
    }

    pub fn act_with_epsilon(&self, state: &[f64], epsilon: f64, rng: &mut Rng) -> Result<usize> {
        choose(&self.online, state, epsilon, rng)
    }

    pub fn sync_target(&mut self) {
        self.target
            .params_mut()
            .copy_from_slice(self.online.params());
    }

    pub fn remember(&mut self, t: Transition) {
        self.replay.push(t);
    }

    /// One minibatch update. `None` until the replay holds `warmup` transitions.
    pub fn train_step(&mut self) -> Result<Option<f64>> {
        if self.replay.len() < self.config.warmup.max(1) {
            return Ok(None);
        }
        let idx = self
            .replay
            .sample_indices(self.config.minibatch, &mut self.replay_rng);
        let batch: Vec<&Transition> = idx.iter().map(|&i| self.replay.get(i)).collect();
        let targets = td_targets(&self.target, &batch, self.config.gamma)?;

        let b = batch.len() as f64;
        self.grads.iter_mut().for_each(|g| *g = 0.0);
        let mut evals: HashMap<Vec<u64>, Evaluation> = HashMap::new();
        let mut loss = 0.0;
        for (t, y) in batch.iter().zip(&targets) {
            let key = state_key(&t.state);
            if !evals.contains_key(&key) {
                evals.insert(key.clone(), self.online.evaluate(&t.state)?);
            }
            let eval = &evals[&key];
            let err = self.online.q_from(eval, t.action, &mut self.scratch) - y;
            loss += err * err;
            self.online.backward_q(
                &t.state,
                eval,
                t.action,
                2.0 * err / b,
                &mut self.grads,
                &mut self.scratch,
            )?;
        }
        self.adam.step(self.online.params_mut(), &self.grads);
        self.updates += 1;
        if self.updates.is_multiple_of(self.config.target_period) {
            self.sync_target();
        }
        Ok(Some(loss / b))
    }

    /// Gradient of the last [`train_step`](Self::train_step) loss.
    pub fn last_gradient(&self) -> &[f64] {
        &self.grads
    }

    /// Acts in `env` from `state` under the training schedule, stores the
    /// transition and trains when due. Resets `env` when the episode ends and
    /// writes the next starting state back into `state`.
    pub fn train_env_step<E: Environment + ?Sized>(
        &mut self,
        env: &mut E,
        state: &mut Vec<f64>,
    ) -> Result<(StepResult, Option<f64>)> {
        let eps = self.epsilon(self.env_steps);
        let a = choose(&self.online, state, eps, &mut self.explore_rng)?;
        let res = env.step(a)?;
        self.replay.push(Transition {
            state: std::mem::take(state),
            action: a,
            reward: res.reward,
            next_state: res.state.clone(),
            terminal: res.terminal,
            timeout: res.timeout,
        });
        self.env_steps += 1;
        let loss = if self.env_steps.is_multiple_of(self.config.update_frequency) {
            self.train_step()?
        } else {
            None
        };
        *state = if res.done() {
            env.reset()
        } else {
            res.state.clone()
        };
        Ok((res, loss))
    }

    /// Plays one episode from a reset. With `train`, follows the training
    /// schedule and learns; otherwise acts with the evaluation ε and leaves
    /// every parameter untouched.
    pub fn run_episode<E: Environment + ?Sized>(
        &mut self,
        env: &mut E,
        train: bool,
    ) -> Result<EpisodeStats> {
        let mut state = env.reset();
        let mut stats = EpisodeStats { ret: 0.0, steps: 0 };
        loop {
            let res = if train {
                let (res, _) = self.train_env_step(env, &mut state)?;
                res
            } else {
                let a = choose(
                    &self.online,
                    &state,
                    self.config.epsilon.eval,
                    &mut self.eval_rng,
                )?;
                let res = env.step(a)?;
                state.clone_from(&res.state);
                res
            };
            stats.ret += res.reward;
            stats.steps += 1;
            if res.done() {
                return Ok(stats);
            }
        }
    }

    /// Returns of `episodes` evaluation episodes.
    pub fn evaluate<E: Environment + ?Sized>(
        &mut self,
        env: &mut E,
        episodes: usize,
    ) -> Result<Vec<f64>> {
        (0..episodes)
            .map(|_| Ok(self.run_episode(env, false)?.ret))
            .collect()
    }
}
