//! Structured multi-armed bandit prediction study.
//!
//! Reward tables are generated by a random full-rank hypergraph model: one
//! value per output of every hyperedge, drawn from a range that halves with
//! each additional vertex in the edge, mixed by a random single-hidden-layer
//! network. Minimal predictors (a tabular baseline, and tabular-block
//! hypergraph models with summation or learned mixers) are fitted by
//! minibatch regression and scored by RMS error over all actions.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::action_space::ActionSpace;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::nn::{uniform_init, Activation, Adam, AdamConfig};
use crate::rng::{self, label};
use crate::value_model::{rms_diff, GradScratch, HypergraphQModel, MixerKind};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RewardGenConfig {
    /// Half-width of the sampling range for orders 1, 2, ...; orders beyond
    /// the list keep halving the last entry.
    pub order_half_widths: Vec<f64>,
    pub hidden_choices: Vec<usize>,
    pub activation_choices: Vec<Activation>,
    /// Mixer weights and biases come from `[-weight_range, weight_range]`.
    pub weight_range: f64,
}

impl Default for RewardGenConfig {
    fn default() -> Self {
        Self {
            order_half_widths: vec![10.0, 5.0, 2.5],
            hidden_choices: (1..=5).collect(),
            activation_choices: Activation::ALL.to_vec(),
            weight_range: 1.0,
        }
    }
}

impl RewardGenConfig {
    pub fn half_width(&self, order: usize) -> f64 {
        assert!(order >= 1);
        let known = self.order_half_widths.len();
        if order <= known {
            self.order_half_widths[order - 1]
        } else {
            self.order_half_widths[known - 1] / 2f64.powi((order - known) as i32)
        }
    }
}

/// Single-hidden-layer mixing network with a linear scalar output.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomMixer {
    pub activation: Activation,
    /// `hidden x inputs`, row-major.
    pub w1: Vec<f64>,
    pub b1: Vec<f64>,
    pub w2: Vec<f64>,
    pub b2: f64,
}

impl RandomMixer {
    pub fn hidden(&self) -> usize {
        self.b1.len()
    }

    pub fn apply(&self, rep: &[f64]) -> f64 {
        let n_in = rep.len();
        let mut out = self.b2;
        for (k, (row, b)) in self.w1.chunks_exact(n_in).zip(&self.b1).enumerate() {
            let mut z = *b;
            for (w, x) in row.iter().zip(rep) {
                z += w * x;
            }
            out += self.w2[k] * self.activation.apply(z);
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct GeneratedBandit {
    pub space: ActionSpace,
    pub seed: u64,
    /// Full-rank hypergraph the rewards were generated on.
    pub hypergraph: Hypergraph,
    /// One value per output of each edge, in edge order.
    pub block_values: Vec<Vec<f64>>,
    pub mixer: RandomMixer,
    pub rewards: Vec<f64>,
}

impl GeneratedBandit {
    /// The generating model as a [`HypergraphQModel`].
    pub fn as_model(&self) -> Result<HypergraphQModel> {
        let n_edges = self.hypergraph.n_edges();
        let mixer = MixerKind::universal(n_edges, self.mixer.hidden(), self.mixer.activation)?;
        let mut model = HypergraphQModel::tabular(
            self.space.clone(),
            self.hypergraph.clone(),
            mixer,
            &mut rng::stream(0, &[]),
        )?;
        for (j, v) in self.block_values.iter().enumerate() {
            model.block_params_mut(j).copy_from_slice(v);
        }
        let mp = model.mixer_params_mut();
        let (w1, rest) = mp.split_at_mut(self.mixer.w1.len());
        w1.copy_from_slice(&self.mixer.w1);
        let (b1, rest) = rest.split_at_mut(self.mixer.b1.len());
        b1.copy_from_slice(&self.mixer.b1);
        let (w2, b2) = rest.split_at_mut(self.mixer.w2.len());
        w2.copy_from_slice(&self.mixer.w2);
        b2[0] = self.mixer.b2;
        Ok(model)
    }
}

/// Rewards of every action: gather each edge's value at the projected
/// sub-action and mix.
pub fn rewards_from(
    space: &ActionSpace,
    hypergraph: &Hypergraph,
    values: &[Vec<f64>],
    mixer: &RandomMixer,
) -> Vec<f64> {
    let mut rep = vec![0.0; hypergraph.n_edges()];
    space
        .enumerate()
        .map(|a| {
            for ((r, e), v) in rep.iter_mut().zip(hypergraph.edges()).zip(values) {
                *r = v[e.local_index(space, &a)];
            }
            mixer.apply(&rep)
        })
        .collect()
}

pub fn generate_bandit(
    space: &ActionSpace,
    cfg: &RewardGenConfig,
    seed: u64,
) -> Result<GeneratedBandit> {
    let mut r = rng::stream(seed, &[label::BANDIT]);
    let n = space.n_vertices();
    let hypergraph = Hypergraph::rank(n, n)?;
    let block_values = hypergraph
        .edges()
        .iter()
        .map(|e| {
            let hw = cfg.half_width(e.order());
            uniform_init(&mut r, -hw, hw, e.output_count(space))
        })
        .collect::<Result<Vec<_>>>()?;
    let hidden = *cfg
        .hidden_choices
        .choose(&mut r)
        .ok_or_else(|| Error::config("hidden_choices", "empty"))?;
    let activation = *cfg
        .activation_choices
        .choose(&mut r)
        .ok_or_else(|| Error::config("activation_choices", "empty"))?;
    let wr = cfg.weight_range;
    let n_edges = hypergraph.n_edges();
    let mixer = RandomMixer {
        activation,
        w1: uniform_init(&mut r, -wr, wr, hidden * n_edges)?,
        b1: uniform_init(&mut r, -wr, wr, hidden)?,
        w2: uniform_init(&mut r, -wr, wr, hidden)?,
        b2: uniform_init(&mut r, -wr, wr, 1)?[0],
    };
    let rewards = rewards_from(space, &hypergraph, &block_values, &mixer);
    Ok(GeneratedBandit {
        space: space.clone(),
        seed,
        hypergraph,
        block_values,
        mixer,
        rewards,
    })
}

/// `effective_lr / n_edges`.
pub fn individual_lr(effective_lr: f64, n_edges: usize) -> f64 {
    assert!(n_edges >= 1);
    effective_lr / n_edges as f64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MixerChoice {
    Summation,
    Universal,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    /// One parameter per action.
    TabularBaseline,
    Hypergraph {
        rank: usize,
        mixer: MixerChoice,
    },
}

impl Variant {
    /// Baseline plus ranks 1..=3 under both mixers.
    pub fn standard_set() -> Vec<Variant> {
        let mut v = vec![Variant::TabularBaseline];
        for mixer in [MixerChoice::Summation, MixerChoice::Universal] {
            for rank in 1..=3 {
                v.push(Variant::Hypergraph { rank, mixer });
            }
        }
        v
    }

    /// Stable numeric id used to derive random streams.
    pub fn stream_key(&self) -> u64 {
        match self {
            Variant::TabularBaseline => 0,
            Variant::Hypergraph { rank, mixer } => {
                10 * *rank as u64
                    + match mixer {
                        MixerChoice::Summation => 1,
                        MixerChoice::Universal => 2,
                    }
            }
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::TabularBaseline => f.write_str("baseline"),
            Variant::Hypergraph { rank, mixer } => {
                let m = match mixer {
                    MixerChoice::Summation => "sum",
                    MixerChoice::Universal => "uni",
                };
                write!(f, "r{rank}-{m}")
            }
        }
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "baseline" {
            return Ok(Variant::TabularBaseline);
        }
        let bad = || Error::config("variants", format!("unknown variant `{s}`"));
        let (r, m) = s
            .strip_prefix('r')
            .and_then(|x| x.split_once('-'))
            .ok_or_else(bad)?;
        let rank: usize = r.parse().map_err(|_| bad())?;
        let mixer = match m {
            "sum" => MixerChoice::Summation,
            "uni" => MixerChoice::Universal,
            _ => return Err(bad()),
        };
        if rank == 0 {
            return Err(bad());
        }
        Ok(Variant::Hypergraph { rank, mixer })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictionTrainConfig {
    pub minibatch: usize,
    pub updates_per_iteration: usize,
    pub iterations: usize,
    pub effective_lr: f64,
    pub seeds: usize,
    pub universal_hidden: usize,
    /// Tables of universal-mixer predictors start from `U(-w, w)`; zero
    /// tables would leave every ReLU mixer unit at its kink with no gradient.
    pub universal_table_init: f64,
    pub adam: AdamConfig,
}

impl Default for PredictionTrainConfig {
    fn default() -> Self {
        Self {
            minibatch: 32,
            updates_per_iteration: 100,
            iterations: 400,
            effective_lr: 0.0007,
            seeds: 64,
            universal_hidden: 10,
            universal_table_init: 0.1,
            adam: AdamConfig::default(),
        }
    }
}

/// A trainable predictor with its optimizer state.
#[derive(Clone, Debug)]
pub struct Predictor {
    pub variant: Variant,
    pub model: HypergraphQModel,
    pub adam: Adam,
    grads: Vec<f64>,
    scratch: GradScratch,
}

impl Predictor {
    /// Tables start at zero; a universal mixer has `universal_hidden`
    /// Xavier-initialized ReLU units.
    pub fn new(
        variant: Variant,
        space: &ActionSpace,
        cfg: &PredictionTrainConfig,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        let n = space.n_vertices();
        let model = match variant {
            Variant::TabularBaseline => HypergraphQModel::tabular(
                space.clone(),
                Hypergraph::full_edge(n)?,
                MixerKind::Summation,
                rng,
            )?,
            Variant::Hypergraph { rank, mixer } => {
                let h = Hypergraph::rank(n, rank)?;
                match mixer {
                    MixerChoice::Summation => {
                        HypergraphQModel::tabular(space.clone(), h, MixerKind::Summation, rng)?
                    }
                    MixerChoice::Universal => {
                        let kind = MixerKind::universal(
                            h.n_edges(),
                            cfg.universal_hidden,
                            Activation::Relu,
                        )?;
                        let mut m = HypergraphQModel::tabular(space.clone(), h, kind, rng)?;
                        let w = cfg.universal_table_init;
                        if w > 0.0 {
                            for j in 0..m.n_edges() {
                                let v = uniform_init(rng, -w, w, m.blocks()[j].width)?;
                                m.block_params_mut(j).copy_from_slice(&v);
                            }
                        }
                        m
                    }
                }
            }
        };
        let lr = individual_lr(cfg.effective_lr, model.n_edges());
        let adam = Adam::new(cfg.adam.with_learning_rate(lr), model.param_count());
        Ok(Self {
            variant,
            grads: vec![0.0; model.param_count()],
            model,
            adam,
            scratch: GradScratch::default(),
        })
    }

    pub fn learning_rate(&self) -> f64 {
        self.adam.config.learning_rate
    }

    pub fn predictions(&self) -> Vec<f64> {
        self.model
            .q_values_all(&[])
            .expect("tabular model takes an empty state")
    }

    /// One minibatch update on the mean squared error; returns the batch loss.
    pub fn update(
        &mut self,
        bandit: &GeneratedBandit,
        minibatch: usize,
        rng: &mut impl Rng,
    ) -> f64 {
        let eval = self
            .model
            .evaluate(&[])
            .expect("tabular model takes an empty state");
        self.grads.fill(0.0);
        let n = bandit.rewards.len();
        let scale = 2.0 / minibatch as f64;
        let mut loss = 0.0;
        for _ in 0..minibatch {
            let a = rng.gen_range(0..n);
            let q = self.model.q_from(&eval, a, &mut self.scratch);
            let err = q - bandit.rewards[a];
            loss += err * err;
            self.model
                .backward_q(
                    &[],
                    &eval,
                    a,
                    scale * err,
                    &mut self.grads,
                    &mut self.scratch,
                )
                .expect("layout is consistent");
        }
        self.adam.step(self.model.params_mut(), &self.grads);
        loss / minibatch as f64
    }
}

/// Runs `updates_per_iteration` minibatch updates.
pub fn train_iteration(
    predictor: &mut Predictor,
    bandit: &GeneratedBandit,
    cfg: &PredictionTrainConfig,
    rng: &mut impl Rng,
) {
    assert_eq!(
        predictor.model.space(),
        &bandit.space,
        "predictor and bandit spaces differ"
    );
    for _ in 0..cfg.updates_per_iteration {
        predictor.update(bandit, cfg.minibatch, rng);
    }
}

/// RMS prediction error over every action.
pub fn rms_error(predictor: &Predictor, bandit: &GeneratedBandit) -> f64 {
    rms_diff(&predictor.predictions(), &bandit.rewards)
}

/// RMS error after each iteration of one trial; entry 0 is before training.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialCurve {
    pub variant: Variant,
    /// Sub-actions per dimension.
    pub size: usize,
    pub seed: u64,
    pub rms: Vec<f64>,
}

impl TrialCurve {
    /// Each point divided by the iteration-0 error.
    pub fn normalized(&self) -> Vec<f64> {
        let first = self.rms[0];
        self.rms
            .iter()
            .map(|&x| if first > 0.0 { x / first } else { 1.0 })
            .collect()
    }

    pub fn final_rms(&self) -> f64 {
        *self.rms.last().unwrap()
    }
}

/// Trains one predictor on one bandit, returning its curve.
pub fn run_trial(
    variant: Variant,
    bandit: &GeneratedBandit,
    size: usize,
    cfg: &PredictionTrainConfig,
    master_seed: u64,
) -> Result<TrialCurve> {
    let path = [size as u64, bandit.seed, variant.stream_key()];
    let mut init = rng::stream(master_seed, &[&[label::PREDICTOR_INIT][..], &path].concat());
    let mut batches = rng::stream(master_seed, &[&[label::MINIBATCH][..], &path].concat());
    let mut predictor = Predictor::new(variant, &bandit.space, cfg, &mut init)?;
    let mut rms = Vec::with_capacity(cfg.iterations + 1);
    rms.push(rms_error(&predictor, bandit));
    for _ in 0..cfg.iterations {
        train_iteration(&mut predictor, bandit, cfg, &mut batches);
        rms.push(rms_error(&predictor, bandit));
    }
    Ok(TrialCurve {
        variant,
        size,
        seed: bandit.seed,
        rms,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StudyConfig {
    /// Sub-actions per dimension for each space size studied.
    pub sizes: Vec<usize>,
    pub dims: usize,
    pub variants: Vec<Variant>,
    pub train: PredictionTrainConfig,
    pub reward: RewardGenConfig,
    pub master_seed: u64,
}

impl Default for StudyConfig {
    fn default() -> Self {
        Self {
            sizes: vec![5, 10, 20],
            dims: 3,
            variants: Variant::standard_set(),
            train: PredictionTrainConfig::default(),
            reward: RewardGenConfig::default(),
            master_seed: 0,
        }
    }
}

impl StudyConfig {
    /// Seed of the reward function for trial `i`.
    pub fn trial_seed(&self, i: usize) -> u64 {
        self.master_seed.wrapping_add(i as u64)
    }
}

/// Aggregates for one (variant, size).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VariantSummary {
    pub variant: Variant,
    pub size: usize,
    pub n: usize,
    pub mean_final: f64,
    pub std_final: f64,
    pub stderr_final: f64,
    pub mean_normalized_curve: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct StudyResult {
    pub config: StudyConfig,
    /// Ordered by variant (config order), size, seed.
    pub curves: Vec<TrialCurve>,
}

impl StudyResult {
    pub fn summary(&self) -> Vec<VariantSummary> {
        let mut out = Vec::new();
        for &variant in &self.config.variants {
            for &size in &self.config.sizes {
                let trials: Vec<&TrialCurve> = self
                    .curves
                    .iter()
                    .filter(|c| c.variant == variant && c.size == size)
                    .collect();
                if trials.is_empty() {
                    continue;
                }
                let n = trials.len();
                let finals: Vec<f64> = trials.iter().map(|c| c.final_rms()).collect();
                let mean = finals.iter().sum::<f64>() / n as f64;
                let var = if n > 1 {
                    finals.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64
                } else {
                    0.0
                };
                let len = trials[0].rms.len();
                let mut curve = vec![0.0; len];
                for t in &trials {
                    for (c, x) in curve.iter_mut().zip(t.normalized()) {
                        *c += x / n as f64;
                    }
                }
                out.push(VariantSummary {
                    variant,
                    size,
                    n,
                    mean_final: mean,
                    std_final: var.sqrt(),
                    stderr_final: (var / n as f64).sqrt(),
                    mean_normalized_curve: curve,
                });
            }
        }
        out
    }

    pub fn find(&self, variant: Variant, size: usize) -> Option<VariantSummary> {
        self.summary()
            .into_iter()
            .find(|s| s.variant == variant && s.size == size)
    }
}

/// Every (size, seed) trial runs its own bandit and all variants on it.
/// Trials are independent and may run in any order.
pub fn run_prediction_study(cfg: &StudyConfig) -> Result<StudyResult> {
    let jobs: Vec<(usize, usize)> = cfg
        .sizes
        .iter()
        .flat_map(|&size| (0..cfg.train.seeds).map(move |i| (size, i)))
        .collect();
    let per_job: Vec<Vec<TrialCurve>> = jobs
        .par_iter()
        .map(|&(size, i)| {
            let space = ActionSpace::uniform(cfg.dims, size)?;
            let bandit = generate_bandit(&space, &cfg.reward, cfg.trial_seed(i))?;
            cfg.variants
                .iter()
                .map(|&v| run_trial(v, &bandit, size, &cfg.train, cfg.master_seed))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut curves: Vec<TrialCurve> = per_job.into_iter().flatten().collect();
    let order = |v: &Variant| cfg.variants.iter().position(|x| x == v).unwrap();
    let size_order = |s: usize| cfg.sizes.iter().position(|&x| x == s).unwrap();
    curves.sort_by_key(|c| (order(&c.variant), size_order(c.size), c.seed));
    Ok(StudyResult {
        config: cfg.clone(),
        curves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(k: usize) -> ActionSpace {
        ActionSpace::uniform(3, k).unwrap()
    }

    #[test]
    fn generator_is_deterministic_and_in_range() {
        let cfg = RewardGenConfig::default();
        let a = generate_bandit(&space(5), &cfg, 42).unwrap();
        let b = generate_bandit(&space(5), &cfg, 42).unwrap();
        assert_eq!(a.rewards, b.rewards);
        assert_ne!(
            a.rewards,
            generate_bandit(&space(5), &cfg, 43).unwrap().rewards
        );
        for (e, v) in a.hypergraph.edges().iter().zip(&a.block_values) {
            let hw = [10.0, 5.0, 2.5][e.order() - 1];
            assert!(v.iter().all(|x| x.abs() <= hw));
            assert_eq!(v.len(), e.output_count(&a.space));
        }
        assert_eq!(a.block_values.len(), 7);
        assert!((1..=5).contains(&a.mixer.hidden()));
        assert!(a.rewards.iter().all(|r| r.is_finite()));
    }

    #[test]
    fn extended_orders_halve() {
        let cfg = RewardGenConfig::default();
        assert_eq!(cfg.half_width(4), 1.25);
        assert_eq!(cfg.half_width(5), 0.625);
    }

    #[test]
    fn identity_mixer_sums_gathered_values() {
        let cfg = RewardGenConfig::default();
        let g = generate_bandit(&space(4), &cfg, 3).unwrap();
        let sum_mixer = RandomMixer {
            activation: Activation::Linear,
            w1: vec![1.0; 7],
            b1: vec![0.0],
            w2: vec![1.0],
            b2: 0.0,
        };
        let rewards = rewards_from(&g.space, &g.hypergraph, &g.block_values, &sum_mixer);
        for (a, r) in g.space.enumerate().zip(&rewards) {
            let manual: f64 = g
                .hypergraph
                .edges()
                .iter()
                .zip(&g.block_values)
                .map(|(e, v)| v[e.local_index(&g.space, &a)])
                .sum();
            assert!((manual - r).abs() < 1e-12);
        }
    }

    #[test]
    fn generator_is_its_own_decomposition() {
        let g = generate_bandit(&space(5), &RewardGenConfig::default(), 9).unwrap();
        let q = g.as_model().unwrap().q_values_all(&[]).unwrap();
        for (a, b) in q.iter().zip(&g.rewards) {
            assert!((a - b).abs() <= 1e-12);
        }
    }

    #[test]
    fn individual_lr_examples() {
        assert!((individual_lr(0.0007, 7) - 0.0001).abs() < 1e-18);
        assert_eq!(individual_lr(0.0007, 1), 0.0007);
        assert_eq!(individual_lr(0.123, 1), 0.123);
        let s = space(5);
        let cfg = PredictionTrainConfig::default();
        let mut r = rng::stream(0, &[]);
        let base = Predictor::new(Variant::TabularBaseline, &s, &cfg, &mut r).unwrap();
        assert_eq!(base.model.param_count(), 125);
        for v in Variant::standard_set().into_iter().skip(1) {
            let p = Predictor::new(v, &s, &cfg, &mut r).unwrap();
            assert!(base.learning_rate() > p.learning_rate());
        }
    }

    #[test]
    fn variant_labels_round_trip() {
        for v in Variant::standard_set() {
            assert_eq!(v.to_string().parse::<Variant>().unwrap(), v);
        }
        assert!("r0-sum".parse::<Variant>().is_err());
        assert!("r2-max".parse::<Variant>().is_err());
        assert!("flat".parse::<Variant>().is_err());
    }

    #[test]
    fn zero_learning_rate_leaves_predictor_unchanged() {
        let g = generate_bandit(&space(5), &RewardGenConfig::default(), 1).unwrap();
        let cfg = PredictionTrainConfig {
            effective_lr: 0.0,
            ..Default::default()
        };
        let mut r = rng::stream(1, &[]);
        let mut p = Predictor::new(
            Variant::Hypergraph {
                rank: 2,
                mixer: MixerChoice::Universal,
            },
            &g.space,
            &cfg,
            &mut r,
        )
        .unwrap();
        let before = p.model.params().to_vec();
        train_iteration(&mut p, &g, &cfg, &mut r);
        assert_eq!(p.model.params(), &before[..]);
    }

    #[test]
    fn baseline_converges_on_single_action() {
        let s = ActionSpace::new(vec![1, 1, 1]).unwrap();
        let g = generate_bandit(&s, &RewardGenConfig::default(), 5).unwrap();
        // Adam moves the single parameter by about lr per update while the
        // error is large, so 400 * 100 updates at 0.0007 cover |r| <= 28.
        assert!(g.rewards[0].abs() < 20.0, "reward {}", g.rewards[0]);
        let cfg = PredictionTrainConfig::default();
        let mut r = rng::stream(2, &[]);
        let mut p = Predictor::new(Variant::TabularBaseline, &s, &cfg, &mut r).unwrap();
        for _ in 0..cfg.iterations {
            train_iteration(&mut p, &g, &cfg, &mut r);
        }
        assert!((p.predictions()[0] - g.rewards[0]).abs() < 1e-3);
    }

    #[test]
    fn rms_error_examples() {
        let s = space(3);
        let mut g = generate_bandit(&s, &RewardGenConfig::default(), 0).unwrap();
        let cfg = PredictionTrainConfig::default();
        let mut p =
            Predictor::new(Variant::TabularBaseline, &s, &cfg, &mut rng::stream(0, &[])).unwrap();
        g.rewards = vec![-2.5; 27];
        assert_eq!(rms_error(&p, &g), 2.5);
        p.model.params_mut().copy_from_slice(&[-2.5; 27]);
        assert_eq!(rms_error(&p, &g), 0.0);

        let mut r = rng::stream(3, &[]);
        for x in p.model.params_mut() {
            *x = r.gen_range(-3.0..3.0);
        }
        let pred = p.predictions();
        // two-pass: squares first, then mean
        let squares: Vec<f64> = pred
            .iter()
            .zip(&g.rewards)
            .map(|(a, b)| (a - b).powi(2))
            .collect();
        let oracle = (squares.iter().sum::<f64>() / squares.len() as f64).sqrt();
        assert!((rms_error(&p, &g) - oracle).abs() < 1e-12);
    }

    #[test]
    fn small_study_shape_and_order_independence() {
        let cfg = StudyConfig {
            sizes: vec![3, 2],
            variants: vec![
                Variant::TabularBaseline,
                Variant::Hypergraph {
                    rank: 2,
                    mixer: MixerChoice::Universal,
                },
            ],
            train: PredictionTrainConfig {
                seeds: 2,
                iterations: 4,
                updates_per_iteration: 5,
                ..Default::default()
            },
            ..Default::default()
        };
        let res = run_prediction_study(&cfg).unwrap();
        assert_eq!(res.curves.len(), 2 * 2 * 2);
        for c in &res.curves {
            assert_eq!(c.rms.len(), 5);
            assert_eq!(c.normalized()[0], 1.0);
        }
        let mut swapped = cfg.clone();
        swapped.variants.reverse();
        swapped.sizes.reverse();
        let res2 = run_prediction_study(&swapped).unwrap();
        for c in &res.curves {
            let twin = res2
                .curves
                .iter()
                .find(|d| d.variant == c.variant && d.size == c.size && d.seed == c.seed)
                .unwrap();
            assert_eq!(twin.rms, c.rms);
        }
        let summary = res.summary();
        assert_eq!(summary.len(), 4);
        assert!(summary.iter().all(|s| s.mean_normalized_curve[0] == 1.0));
    }
}
