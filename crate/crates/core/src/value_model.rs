//! Hypergraph Q-models.
//!
//! A model holds one block per hyperedge. Block `j` produces one value for each
//! sub-action combination of its edge; for an action `a` the model gathers the
//! value at `a`'s local index from every block (the action representation) and
//! mixes them into `Q(s, a)`. Blocks are either state-independent tables or
//! dense heads on top of an optional shared torso. All parameters live in one
//! [`ParamStore`] so a single optimizer state can train the whole model.

use std::io::{BufRead, Write};
use std::ops::Range;

use nalgebra::{DMatrix, DVector};
use rand::Rng;

use crate::action_space::ActionSpace;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::nn::checkpoint::{self, Checkpoint, NetEntry};
use crate::nn::{
    init_dense, Activation, BackwardScratch, DenseSpec, ForwardCache, InitScheme, ParamStore,
};

/// Hidden units per head when `total_hidden_units` are split over `n_heads`.
pub fn head_width(total_hidden_units: usize, n_heads: usize) -> usize {
    assert!(total_hidden_units > 0 && n_heads > 0);
    total_hidden_units.div_ceil(n_heads)
}

#[derive(Clone, Debug, PartialEq)]
pub enum MixerKind {
    Summation,
    /// A network from the action representation to a scalar, shared by all
    /// actions. `strictly_monotone` is a caller declaration that enables
    /// decentralized maximization.
    Universal {
        spec: DenseSpec,
        strictly_monotone: bool,
    },
}

impl MixerKind {
    /// Single hidden layer of `hidden` units with activation `act`, linear output.
    pub fn universal(n_edges: usize, hidden: usize, act: Activation) -> Result<Self> {
        Ok(MixerKind::Universal {
            spec: DenseSpec::new(vec![n_edges, hidden, 1], vec![act, Activation::Linear])?,
            strictly_monotone: false,
        })
    }

    pub fn is_summation(&self) -> bool {
        matches!(self, MixerKind::Summation)
    }

    pub fn name(&self) -> &'static str {
        match self {
            MixerKind::Summation => "sum",
            MixerKind::Universal { .. } => "universal",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BlockBody {
    /// One free parameter per output.
    Tabular,
    /// Dense head from torso features to the block outputs.
    Neural(DenseSpec),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Block {
    pub body: BlockBody,
    pub width: usize,
    pub params: Range<usize>,
}

/// Layout of a neural model.
#[derive(Clone, Debug, PartialEq)]
pub struct NeuralLayout {
    pub obs_width: usize,
    /// Hidden widths of the shared torso; empty means blocks read the state directly.
    pub torso_hidden: Vec<usize>,
    /// Hidden units split equally over the heads (see [`head_width`]).
    pub total_head_hidden: usize,
}

#[derive(Clone, Debug)]
pub struct HypergraphQModel {
    space: ActionSpace,
    hypergraph: Hypergraph,
    obs_width: usize,
    torso: Option<(DenseSpec, Range<usize>)>,
    blocks: Vec<Block>,
    mixer: MixerKind,
    mixer_params: Range<usize>,
    params: ParamStore,
    /// `gather[a * n_edges + j]` is action `a`'s output slot in block `j`.
    gather: Vec<u32>,
}

/// Per-state intermediate values.
#[derive(Clone, Debug, Default)]
pub struct Evaluation {
    torso: Option<ForwardCache>,
    heads: Vec<Option<ForwardCache>>,
}

impl Evaluation {
    fn features<'a>(&'a self, state: &'a [f64]) -> &'a [f64] {
        self.torso.as_ref().map_or(state, |c| c.output())
    }
}

/// Buffers reused across gradient computations.
#[derive(Clone, Debug, Default)]
pub struct GradScratch {
    rep: Vec<f64>,
    rep_grad: Vec<f64>,
    mixer: ForwardCache,
    mixer_back: BackwardScratch,
    head_grad: Vec<f64>,
    feature_grad: Vec<f64>,
    back: BackwardScratch,
}

fn build_gather(space: &ActionSpace, hypergraph: &Hypergraph) -> Vec<u32> {
    let n_edges = hypergraph.n_edges();
    let mut gather = Vec::with_capacity(space.total_size() * n_edges);
    let mut tuple = vec![0; space.n_vertices()];
    for a in 0..space.total_size() {
        space.decode_into(a, &mut tuple);
        gather.extend(
            hypergraph
                .edges()
                .iter()
                .map(|e| e.local_index(space, &tuple) as u32),
        );
    }
    gather
}

impl HypergraphQModel {
    fn assemble(
        space: ActionSpace,
        hypergraph: Hypergraph,
        obs_width: usize,
        torso: Option<DenseSpec>,
        bodies: Vec<BlockBody>,
        mixer: MixerKind,
        rng: &mut impl Rng,
        tabular_init: impl Fn(&mut ParamStore, usize, usize),
    ) -> Result<Self> {
        if hypergraph.n_vertices() != space.n_vertices() {
            return Err(Error::Dimension {
                expected: space.n_vertices(),
                got: hypergraph.n_vertices(),
            });
        }
        if space.total_size() > u32::MAX as usize {
            return Err(Error::UnsupportedStructure(
                "action space too large for an exact gather table".into(),
            ));
        }
        if let MixerKind::Universal { spec, .. } = &mixer {
            if spec.input_width() != hypergraph.n_edges() || spec.output_width() != 1 {
                return Err(Error::Dimension {
                    expected: hypergraph.n_edges(),
                    got: spec.input_width(),
                });
            }
        }
        let mut params = ParamStore::new();
        let torso = match torso {
            Some(spec) => {
                let v = init_dense(&spec, rng, InitScheme::Xavier)?;
                let r = params.push("torso", v);
                Some((spec, r))
            }
            None => None,
        };
        let mut blocks = Vec::with_capacity(bodies.len());
        for (j, (edge, body)) in hypergraph.edges().iter().zip(bodies).enumerate() {
            let width = edge.output_count(&space);
            let range = match &body {
                BlockBody::Tabular => {
                    tabular_init(&mut params, j, width);
                    let end = params.len();
                    end - width..end
                }
                BlockBody::Neural(spec) => {
                    let v = init_dense(spec, rng, InitScheme::Xavier)?;
                    params.push(format!("block{j}"), v)
                }
            };
            blocks.push(Block {
                body,
                width,
                params: range,
            });
        }
        let mixer_params = match &mixer {
            MixerKind::Summation => params.push("mixer", Vec::new()),
            MixerKind::Universal { spec, .. } => {
                let v = init_dense(spec, rng, InitScheme::Xavier)?;
                params.push("mixer", v)
            }
        };
        let gather = build_gather(&space, &hypergraph);
        Ok(Self {
            space,
            hypergraph,
            obs_width,
            torso,
            blocks,
            mixer,
            mixer_params,
            params,
            gather,
        })
    }

    /// State-independent model with zero-initialized tables; a universal
    /// mixer is Xavier-initialized.
    pub fn tabular(
        space: ActionSpace,
        hypergraph: Hypergraph,
        mixer: MixerKind,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        let bodies = vec![BlockBody::Tabular; hypergraph.n_edges()];
        Self::assemble(space, hypergraph, 0, None, bodies, mixer, rng, |p, j, w| {
            p.push(format!("block{j}"), vec![0.0; w]);
        })
    }

    /// Shared ReLU torso, then one head per edge with a single ReLU hidden
    /// layer of `head_width(total_head_hidden, n_edges)` units and linear outputs.
    pub fn neural(
        space: ActionSpace,
        hypergraph: Hypergraph,
        layout: &NeuralLayout,
        mixer: MixerKind,
        rng: &mut impl Rng,
    ) -> Result<Self> {
        let torso = if layout.torso_hidden.is_empty() {
            None
        } else {
            let mut sizes = vec![layout.obs_width];
            sizes.extend(&layout.torso_hidden);
            let acts = vec![Activation::Relu; sizes.len() - 1];
            Some(DenseSpec::new(sizes, acts)?)
        };
        let feat = torso
            .as_ref()
            .map_or(layout.obs_width, DenseSpec::output_width);
        let hw = head_width(layout.total_head_hidden, hypergraph.n_edges());
        let bodies = hypergraph
            .edges()
            .iter()
            .map(|e| {
                Ok(BlockBody::Neural(DenseSpec::mlp(
                    vec![feat, hw, e.output_count(&space)],
                    Activation::Relu,
                )?))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::assemble(
            space,
            hypergraph,
            layout.obs_width,
            torso,
            bodies,
            mixer,
            rng,
            |_, _, _| unreachable!("neural model has no tabular blocks"),
        )
    }

    pub fn space(&self) -> &ActionSpace {
        &self.space
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn mixer(&self) -> &MixerKind {
        &self.mixer
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn obs_width(&self) -> usize {
        self.obs_width
    }

    pub fn n_edges(&self) -> usize {
        self.blocks.len()
    }

    pub fn param_count(&self) -> usize {
        self.params.len()
    }

    pub fn params(&self) -> &[f64] {
        self.params.values()
    }

    pub fn params_mut(&mut self) -> &mut [f64] {
        self.params.values_mut()
    }

    pub fn param_store(&self) -> &ParamStore {
        &self.params
    }

    pub fn block_params_mut(&mut self, j: usize) -> &mut [f64] {
        let r = self.blocks[j].params.clone();
        &mut self.params.values_mut()[r]
    }

    pub fn mixer_params_mut(&mut self) -> &mut [f64] {
        let r = self.mixer_params.clone();
        &mut self.params.values_mut()[r]
    }

    pub fn torso_params_mut(&mut self) -> Option<&mut [f64]> {
        let r = self.torso.as_ref()?.1.clone();
        Some(&mut self.params.values_mut()[r])
    }

    /// Output slot of flat action `a` in block `j`.
    #[inline]
    pub fn gather_index(&self, a: usize, j: usize) -> usize {
        self.gather[a * self.blocks.len() + j] as usize
    }

    fn check_state(&self, state: &[f64]) -> Result<()> {
        if state.len() != self.obs_width {
            return Err(Error::Dimension {
                expected: self.obs_width,
                got: state.len(),
            });
        }
        Ok(())
    }

    /// Runs the torso and every neural head for `state`.
    pub fn evaluate(&self, state: &[f64]) -> Result<Evaluation> {
        self.evaluate_with(self.params.values(), state)
    }

    /// [`evaluate`](Self::evaluate) with an external parameter vector of this model's layout.
    pub fn evaluate_with(&self, params: &[f64], state: &[f64]) -> Result<Evaluation> {
        self.check_state(state)?;
        let torso = match &self.torso {
            Some((spec, r)) => Some(spec.forward_cache(&params[r.clone()], state)?),
            None => None,
        };
        let features = torso.as_ref().map_or(state, |c| c.output());
        let heads = self
            .blocks
            .iter()
            .map(|b| match &b.body {
                BlockBody::Tabular => Ok(None),
                BlockBody::Neural(spec) => spec
                    .forward_cache(&params[b.params.clone()], features)
                    .map(Some),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Evaluation { torso, heads })
    }

    #[inline]
    fn block_value(&self, params: &[f64], eval: &Evaluation, j: usize, slot: usize) -> f64 {
        match &eval.heads[j] {
            Some(cache) => cache.output()[slot],
            None => params[self.blocks[j].params.start + slot],
        }
    }

    fn representation_into(&self, params: &[f64], eval: &Evaluation, a: usize, rep: &mut Vec<f64>) {
        rep.clear();
        rep.extend(
            (0..self.blocks.len())
                .map(|j| self.block_value(params, eval, j, self.gather_index(a, j))),
        );
    }

    fn mix(&self, params: &[f64], rep: &[f64], cache: &mut ForwardCache) -> f64 {
        match &self.mixer {
            MixerKind::Summation => rep.iter().sum(),
            MixerKind::Universal { spec, .. } => {
                spec.forward_into(&params[self.mixer_params.clone()], rep, cache)
                    .expect("mixer width checked at construction");
                cache.output()[0]
            }
        }
    }

    /// Q-value of flat action `a` given a prepared evaluation.
    pub fn q_from(&self, eval: &Evaluation, a: usize, scratch: &mut GradScratch) -> f64 {
        self.q_from_with(self.params.values(), eval, a, scratch)
    }

    pub fn q_from_with(
        &self,
        params: &[f64],
        eval: &Evaluation,
        a: usize,
        scratch: &mut GradScratch,
    ) -> f64 {
        let mut rep = std::mem::take(&mut scratch.rep);
        self.representation_into(params, eval, a, &mut rep);
        let q = self.mix(params, &rep, &mut scratch.mixer);
        scratch.rep = rep;
        q
    }

    /// Q-values of every action, in flat order.
    pub fn q_values_from(&self, eval: &Evaluation) -> Vec<f64> {
        self.q_values_from_with(self.params.values(), eval)
    }

    pub fn q_values_from_with(&self, params: &[f64], eval: &Evaluation) -> Vec<f64> {
        let n_edges = self.blocks.len();
        // resolve each block's output vector once
        let outputs: Vec<&[f64]> = (0..n_edges)
            .map(|j| match &eval.heads[j] {
                Some(c) => c.output(),
                None => &params[self.blocks[j].params.clone()],
            })
            .collect();
        let rows = self.gather.chunks_exact(n_edges);
        match &self.mixer {
            MixerKind::Summation => rows
                .map(|row| row.iter().zip(&outputs).map(|(&s, o)| o[s as usize]).sum())
                .collect(),
            MixerKind::Universal { spec, .. } => {
                let mp = &params[self.mixer_params.clone()];
                let mut cache = ForwardCache::default();
                let mut rep = vec![0.0; n_edges];
                rows.map(|row| {
                    for ((r, &s), o) in rep.iter_mut().zip(row).zip(&outputs) {
                        *r = o[s as usize];
                    }
                    spec.forward_into(mp, &rep, &mut cache).expect("checked");
                    cache.output()[0]
                })
                .collect()
            }
        }
    }

    /// Accumulates `dq * dQ(s, a)/dθ` into `grads`.
    pub fn backward_q(
        &self,
        state: &[f64],
        eval: &Evaluation,
        a: usize,
        dq: f64,
        grads: &mut [f64],
        scratch: &mut GradScratch,
    ) -> Result<()> {
        let params = self.params.values();
        let n_edges = self.blocks.len();
        let GradScratch {
            rep,
            rep_grad,
            mixer,
            mixer_back,
            head_grad,
            feature_grad,
            back,
        } = scratch;
        rep_grad.clear();
        match &self.mixer {
            MixerKind::Summation => rep_grad.resize(n_edges, dq),
            MixerKind::Universal { spec, .. } => {
                self.representation_into(params, eval, a, rep);
                let r = self.mixer_params.clone();
                spec.forward_into(&params[r.clone()], rep, mixer)?;
                spec.backward_with(&params[r.clone()], mixer, &[dq], &mut grads[r], mixer_back)?;
                rep_grad.extend_from_slice(mixer_back.input_grad());
            }
        }
        let features = eval.features(state);
        feature_grad.clear();
        feature_grad.resize(features.len(), 0.0);
        let mut any_feature_grad = false;
        for (j, block) in self.blocks.iter().enumerate() {
            let slot = self.gather_index(a, j);
            match (&block.body, &eval.heads[j]) {
                (BlockBody::Tabular, _) => grads[block.params.start + slot] += rep_grad[j],
                (BlockBody::Neural(spec), Some(cache)) => {
                    if rep_grad[j] == 0.0 {
                        continue;
                    }
                    head_grad.clear();
                    head_grad.resize(block.width, 0.0);
                    head_grad[slot] = rep_grad[j];
                    let r = block.params.clone();
                    spec.backward_with(&params[r.clone()], cache, head_grad, &mut grads[r], back)?;
                    for (f, g) in feature_grad.iter_mut().zip(back.input_grad()) {
                        *f += g;
                    }
                    any_feature_grad = true;
                }
                (BlockBody::Neural(_), None) => return Err(Error::CacheMismatch),
            }
        }
        if let (Some((spec, r)), Some(cache), true) = (&self.torso, &eval.torso, any_feature_grad) {
            spec.backward_with(
                &params[r.clone()],
                cache,
                feature_grad,
                &mut grads[r.clone()],
                back,
            )?;
        }
        Ok(())
    }

    pub fn action_representation(&self, state: &[f64], a: &[usize]) -> Result<Vec<f64>> {
        let flat = self.space.tuple_to_flat(a)?;
        let eval = self.evaluate(state)?;
        let mut rep = Vec::new();
        self.representation_into(self.params.values(), &eval, flat, &mut rep);
        Ok(rep)
    }

    /// Representation of a flat action given a prepared evaluation.
    pub fn representation_from(&self, eval: &Evaluation, a: usize) -> Vec<f64> {
        let mut rep = Vec::new();
        self.representation_into(self.params.values(), eval, a, &mut rep);
        rep
    }

    pub fn q_value(&self, state: &[f64], a: &[usize]) -> Result<f64> {
        let flat = self.space.tuple_to_flat(a)?;
        let eval = self.evaluate(state)?;
        Ok(self.q_from(&eval, flat, &mut GradScratch::default()))
    }

    pub fn q_values_all(&self, state: &[f64]) -> Result<Vec<f64>> {
        Ok(self.q_values_from(&self.evaluate(state)?))
    }

    /// Exhaustive argmax; ties go to the lowest flat index.
    pub fn greedy_action(&self, state: &[f64]) -> Result<usize> {
        Ok(argmax(&self.q_values_all(state)?))
    }

    /// Per-vertex argmax over each singleton block, valid for 1-complete
    /// hypergraphs under a summation or strictly monotone mixer.
    pub fn decentralized_greedy(&self, state: &[f64]) -> Result<usize> {
        if !self.hypergraph.is_one_complete() {
            return Err(Error::UnsupportedStructure(
                "decentralized maximization needs a 1-complete hypergraph".into(),
            ));
        }
        if let MixerKind::Universal {
            strictly_monotone: false,
            ..
        } = self.mixer
        {
            return Err(Error::UnsupportedStructure(
                "decentralized maximization needs a strictly monotone mixer".into(),
            ));
        }
        let eval = self.evaluate(state)?;
        let params = self.params.values();
        let tuple: Vec<usize> = (0..self.blocks.len())
            .map(|j| {
                let out: Vec<f64> = (0..self.blocks[j].width)
                    .map(|s| self.block_value(params, &eval, j, s))
                    .collect();
                argmax(&out)
            })
            .collect();
        self.space.tuple_to_flat(&tuple)
    }

    /// Sets tabular block values by least squares against `targets` (one per
    /// action, flat order) and returns the RMS residual. Among exact fits the
    /// minimum-norm one is chosen.
    pub fn fit_least_squares(&mut self, targets: &[f64]) -> Result<f64> {
        if !self.mixer.is_summation() || self.blocks.iter().any(|b| b.body != BlockBody::Tabular) {
            return Err(Error::UnsupportedStructure(
                "least squares needs tabular blocks and a summation mixer".into(),
            ));
        }
        let n = self.space.total_size();
        if targets.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: targets.len(),
            });
        }
        let cols: usize = self.blocks.iter().map(|b| b.width).sum();
        let offsets: Vec<usize> = self
            .blocks
            .iter()
            .scan(0, |acc, b| {
                let o = *acc;
                *acc += b.width;
                Some(o)
            })
            .collect();
        let mut design = DMatrix::<f64>::zeros(n, cols);
        for a in 0..n {
            for (j, &o) in offsets.iter().enumerate() {
                design[(a, o + self.gather_index(a, j))] = 1.0;
            }
        }
        let b = DVector::from_column_slice(targets);
        let svd = design.clone().svd(true, true);
        let x = svd
            .solve(&b, 1e-10)
            .map_err(|e| Error::UnsupportedStructure(e.to_string()))?;
        for (j, &o) in offsets.iter().enumerate() {
            let w = self.blocks[j].width;
            self.block_params_mut(j)
                .copy_from_slice(&x.as_slice()[o..o + w]);
        }
        let fitted = self.q_values_all(&[])?;
        Ok(rms_diff(&fitted, targets))
    }

    pub fn save<W: Write>(&self, w: W, extra_meta: &[(String, String)]) -> Result<()> {
        let join = |xs: &[usize]| {
            xs.iter()
                .map(usize::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        let mut meta = vec![
            ("space".to_string(), join(self.space.cardinalities())),
            (
                "edges".to_string(),
                self.hypergraph
                    .edges()
                    .iter()
                    .map(|e| join(e.vertices()))
                    .collect::<Vec<_>>()
                    .join(";"),
            ),
            ("obs_width".to_string(), self.obs_width.to_string()),
            ("mixer".to_string(), self.mixer.name().to_string()),
        ];
        if let MixerKind::Universal {
            strictly_monotone, ..
        } = &self.mixer
        {
            meta.push(("mixer_monotone".into(), strictly_monotone.to_string()));
        }
        meta.extend(extra_meta.iter().cloned());
        let mut nets = Vec::new();
        if let Some((spec, r)) = &self.torso {
            nets.push(NetEntry {
                name: "torso".into(),
                offset: r.start,
                spec: spec.clone(),
            });
        }
        for (j, b) in self.blocks.iter().enumerate() {
            if let BlockBody::Neural(spec) = &b.body {
                nets.push(NetEntry {
                    name: format!("block{j}"),
                    offset: b.params.start,
                    spec: spec.clone(),
                });
            }
        }
        if let MixerKind::Universal { spec, .. } = &self.mixer {
            nets.push(NetEntry {
                name: "mixer".into(),
                offset: self.mixer_params.start,
                spec: spec.clone(),
            });
        }
        let ckpt = Checkpoint {
            meta,
            nets,
            params: self.params.clone(),
        };
        checkpoint::write(w, &ckpt).map_err(|e| Error::io("<checkpoint>", e))
    }

    /// Restores a model and returns it with the checkpoint's metadata.
    pub fn load<R: BufRead>(r: R) -> Result<(Self, Checkpoint)> {
        let ckpt = checkpoint::read(r)?;
        let need = |k: &str| {
            ckpt.meta(k)
                .ok_or_else(|| Error::Checkpoint(format!("missing meta `{k}`")))
        };
        let parse_list = |s: &str| -> Result<Vec<usize>> {
            s.split(',')
                .map(|x| {
                    x.parse()
                        .map_err(|_| Error::Checkpoint(format!("bad integer `{x}`")))
                })
                .collect()
        };
        let space = ActionSpace::new(parse_list(need("space")?)?)?;
        let edges = need("edges")?
            .split(';')
            .map(parse_list)
            .collect::<Result<Vec<_>>>()?;
        let hypergraph = Hypergraph::new(space.n_vertices(), &edges)?;
        let obs_width: usize = need("obs_width")?
            .parse()
            .map_err(|_| Error::Checkpoint("bad obs_width".into()))?;
        let net = |name: &str| ckpt.nets.iter().find(|n| n.name == name);
        let slice = |name: &str| {
            ckpt.params
                .slices()
                .iter()
                .find(|s| s.name == name)
                .map(|s| s.range())
                .ok_or_else(|| Error::Checkpoint(format!("missing slice `{name}`")))
        };
        let torso = match net("torso") {
            Some(n) => Some((n.spec.clone(), slice("torso")?)),
            None => None,
        };
        let mut blocks = Vec::new();
        for (j, e) in hypergraph.edges().iter().enumerate() {
            let name = format!("block{j}");
            let width = e.output_count(&space);
            let params = slice(&name)?;
            let body = match net(&name) {
                Some(n) => BlockBody::Neural(n.spec.clone()),
                None => BlockBody::Tabular,
            };
            let expect = match &body {
                BlockBody::Tabular => width,
                BlockBody::Neural(spec) => {
                    if spec.output_width() != width {
                        return Err(Error::Checkpoint(format!("{name} output width mismatch")));
                    }
                    spec.param_count()
                }
            };
            if params.len() != expect {
                return Err(Error::Checkpoint(format!(
                    "{name} has wrong parameter count"
                )));
            }
            blocks.push(Block {
                body,
                width,
                params,
            });
        }
        let mixer = match need("mixer")? {
            "sum" => MixerKind::Summation,
            "universal" => MixerKind::Universal {
                spec: net("mixer")
                    .ok_or_else(|| Error::Checkpoint("missing mixer net".into()))?
                    .spec
                    .clone(),
                strictly_monotone: ckpt.meta("mixer_monotone") == Some("true"),
            },
            other => return Err(Error::Checkpoint(format!("unknown mixer `{other}`"))),
        };
        let mixer_params = slice("mixer")?;
        let gather = build_gather(&space, &hypergraph);
        let model = Self {
            space,
            hypergraph,
            obs_width,
            torso,
            blocks,
            mixer,
            mixer_params,
            params: ckpt.params.clone(),
            gather,
        };
        Ok((model, ckpt))
    }
}

/// Index of the first maximum.
pub fn argmax(xs: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in xs.iter().enumerate().skip(1) {
        if x > xs[best] {
            best = i;
        }
    }
    best
}

pub(crate) fn rms_diff(a: &[f64], b: &[f64]) -> f64 {
    (a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>() / a.len() as f64).sqrt()
}
