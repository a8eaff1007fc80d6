use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Relu,
    Tanh,
    Sigmoid,
    Linear,
}

impl Activation {
    pub const ALL: [Activation; 4] = [
        Activation::Relu,
        Activation::Tanh,
        Activation::Sigmoid,
        Activation::Linear,
    ];

    #[inline]
    pub fn apply(self, x: f64) -> f64 {
        match self {
            Activation::Relu => x.max(0.0),
            Activation::Tanh => x.tanh(),
            Activation::Sigmoid => {
                if x >= 0.0 {
                    1.0 / (1.0 + (-x).exp())
                } else {
                    let e = x.exp();
                    e / (1.0 + e)
                }
            }
            Activation::Linear => x,
        }
    }

    /// Derivative given the pre-activation and the activation value.
    /// ReLU's subgradient at 0 is 0.
    #[inline]
    pub fn derivative(self, pre: f64, post: f64) -> f64 {
        match self {
            Activation::Relu => {
                if pre > 0.0 {
                    1.0
                } else {
                    0.0
                }
            }
            Activation::Tanh => 1.0 - post * post,
            Activation::Sigmoid => post * (1.0 - post),
            Activation::Linear => 1.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Activation::Relu => "relu",
            Activation::Tanh => "tanh",
            Activation::Sigmoid => "sigmoid",
            Activation::Linear => "linear",
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Activation {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "relu" => Ok(Activation::Relu),
            "tanh" => Ok(Activation::Tanh),
            "sigmoid" => Ok(Activation::Sigmoid),
            "linear" => Ok(Activation::Linear),
            other => Err(Error::config(
                "activation",
                format!("unknown activation `{other}`"),
            )),
        }
    }
}

/// Layer widths and per-layer activations of a fully connected network.
///
/// Parameters are laid out layer by layer: the weight matrix (row-major,
/// `out x in`) followed by the bias vector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseSpec {
    layer_sizes: Vec<usize>,
    activations: Vec<Activation>,
}

impl DenseSpec {
    pub fn new(layer_sizes: Vec<usize>, activations: Vec<Activation>) -> Result<Self> {
        if layer_sizes.len() < 2 {
            return Err(Error::config(
                "layer_sizes",
                "need at least one layer transition",
            ));
        }
        if layer_sizes.contains(&0) {
            return Err(Error::config(
                "layer_sizes",
                "layer widths must be positive",
            ));
        }
        if activations.len() != layer_sizes.len() - 1 {
            return Err(Error::Dimension {
                expected: layer_sizes.len() - 1,
                got: activations.len(),
            });
        }
        Ok(Self {
            layer_sizes,
            activations,
        })
    }

    /// Every hidden layer uses `hidden`; the output layer is linear.
    pub fn mlp(layer_sizes: Vec<usize>, hidden: Activation) -> Result<Self> {
        let n = layer_sizes.len().saturating_sub(1);
        let mut acts = vec![hidden; n];
        if let Some(last) = acts.last_mut() {
            *last = Activation::Linear;
        }
        Self::new(layer_sizes, acts)
    }

    pub fn layer_sizes(&self) -> &[usize] {
        &self.layer_sizes
    }

    pub fn activations(&self) -> &[Activation] {
        &self.activations
    }

    pub fn input_width(&self) -> usize {
        self.layer_sizes[0]
    }

    pub fn output_width(&self) -> usize {
        *self.layer_sizes.last().unwrap()
    }

    pub fn n_layers(&self) -> usize {
        self.activations.len()
    }

    /// `(weight offset, bias offset)` of each layer.
    pub fn layer_offsets(&self) -> Vec<(usize, usize)> {
        let mut off = 0;
        self.layer_sizes
            .windows(2)
            .map(|w| {
                let wo = off;
                let bo = wo + w[0] * w[1];
                off = bo + w[1];
                (wo, bo)
            })
            .collect()
    }

    pub fn param_count(&self) -> usize {
        self.layer_sizes
            .windows(2)
            .map(|w| w[0] * w[1] + w[1])
            .sum()
    }

    fn check_params(&self, params: &[f64]) -> Result<()> {
        if params.len() != self.param_count() {
            return Err(Error::Dimension {
                expected: self.param_count(),
                got: params.len(),
            });
        }
        Ok(())
    }

    pub fn forward(&self, params: &[f64], input: &[f64]) -> Result<(Vec<f64>, ForwardCache)> {
        let cache = self.forward_cache(params, input)?;
        Ok((cache.output().to_vec(), cache))
    }

    /// Forward pass keeping only the cache; the output is `cache.output()`.
    pub fn forward_cache(&self, params: &[f64], input: &[f64]) -> Result<ForwardCache> {
        let mut cache = ForwardCache::default();
        self.forward_into(params, input, &mut cache)?;
        Ok(cache)
    }

    /// Forward pass reusing the buffers of `cache`.
    pub fn forward_into(
        &self,
        params: &[f64],
        input: &[f64],
        cache: &mut ForwardCache,
    ) -> Result<()> {
        self.check_params(params)?;
        if input.len() != self.input_width() {
            return Err(Error::Dimension {
                expected: self.input_width(),
                got: input.len(),
            });
        }
        let n = self.n_layers();
        if cache.layer_sizes != self.layer_sizes {
            cache.layer_sizes.clone_from(&self.layer_sizes);
            cache.pre = self.layer_sizes[1..]
                .iter()
                .map(|&w| vec![0.0; w])
                .collect();
            cache.post = self.layer_sizes.iter().map(|&w| vec![0.0; w]).collect();
        }
        cache.post[0].copy_from_slice(input);
        let mut off = 0;
        for l in 0..n {
            let (n_in, n_out) = (self.layer_sizes[l], self.layer_sizes[l + 1]);
            let w = &params[off..off + n_in * n_out];
            let b = &params[off + n_in * n_out..off + n_in * n_out + n_out];
            off += n_in * n_out + n_out;
            let act = self.activations[l];
            let (before, after) = cache.post.split_at_mut(l + 1);
            let x = &before[l];
            let y = &mut after[0];
            let z = &mut cache.pre[l];
            for ((row, bj), (zj, yj)) in w
                .chunks_exact(n_in)
                .zip(b)
                .zip(z.iter_mut().zip(y.iter_mut()))
            {
                *zj = bj + dot(row, x);
                *yj = act.apply(*zj);
            }
        }
        Ok(())
    }

    /// Gradients of `output . output_grad` w.r.t. parameters and input.
    pub fn backward(
        &self,
        params: &[f64],
        cache: &ForwardCache,
        output_grad: &[f64],
    ) -> Result<(Vec<f64>, Vec<f64>)> {
        let mut grads = vec![0.0; self.param_count()];
        let input_grad = self.backward_into(params, cache, output_grad, &mut grads)?;
        Ok((grads, input_grad))
    }

    /// Like [`backward`](Self::backward) but accumulates parameter gradients
    /// into `grads`.
    pub fn backward_into(
        &self,
        params: &[f64],
        cache: &ForwardCache,
        output_grad: &[f64],
        grads: &mut [f64],
    ) -> Result<Vec<f64>> {
        let mut scratch = BackwardScratch::default();
        self.backward_with(params, cache, output_grad, grads, &mut scratch)?;
        Ok(std::mem::take(&mut scratch.upstream))
    }

    /// Accumulating backward pass using caller-owned buffers; the input
    /// gradient is left in `scratch.input_grad()`. Rows whose upstream
    /// gradient is exactly zero are skipped.
    pub fn backward_with(
        &self,
        params: &[f64],
        cache: &ForwardCache,
        output_grad: &[f64],
        grads: &mut [f64],
        scratch: &mut BackwardScratch,
    ) -> Result<()> {
        self.check_params(params)?;
        if cache.layer_sizes != self.layer_sizes {
            return Err(Error::CacheMismatch);
        }
        if grads.len() != params.len() {
            return Err(Error::Dimension {
                expected: params.len(),
                got: grads.len(),
            });
        }
        if output_grad.len() != self.output_width() {
            return Err(Error::Dimension {
                expected: self.output_width(),
                got: output_grad.len(),
            });
        }
        let BackwardScratch { upstream, dx } = scratch;
        upstream.clear();
        upstream.extend_from_slice(output_grad);
        let mut off = self.param_count();
        for l in (0..self.n_layers()).rev() {
            let (n_in, n_out) = (self.layer_sizes[l], self.layer_sizes[l + 1]);
            off -= n_in * n_out + n_out;
            let (wo, bo) = (off, off + n_in * n_out);
            let act = self.activations[l];
            let x = &cache.post[l];
            dx.clear();
            dx.resize(n_in, 0.0);
            for j in 0..n_out {
                if upstream[j] == 0.0 {
                    continue;
                }
                let delta = upstream[j] * act.derivative(cache.pre[l][j], cache.post[l + 1][j]);
                if delta == 0.0 {
                    continue;
                }
                grads[bo + j] += delta;
                let row = wo + j * n_in;
                let gw = &mut grads[row..row + n_in];
                let w = &params[row..row + n_in];
                for i in 0..n_in {
                    gw[i] += delta * x[i];
                    dx[i] += delta * w[i];
                }
            }
            std::mem::swap(upstream, dx);
        }
        Ok(())
    }
}

/// Reusable buffers for [`DenseSpec::backward_with`].
#[derive(Clone, Debug, Default)]
pub struct BackwardScratch {
    upstream: Vec<f64>,
    dx: Vec<f64>,
}

impl BackwardScratch {
    pub fn input_grad(&self) -> &[f64] {
        &self.upstream
    }
}

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Intermediate values of one forward pass.
#[derive(Clone, Debug, Default)]
pub struct ForwardCache {
    layer_sizes: Vec<usize>,
    pre: Vec<Vec<f64>>,
    post: Vec<Vec<f64>>,
}

impl ForwardCache {
    pub fn output(&self) -> &[f64] {
        self.post.last().unwrap()
    }
}
