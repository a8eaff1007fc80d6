use rand::Rng;

use super::{Environment, StepResult};
use crate::action_space::ActionSpace;
use crate::error::{Error, Result};
use crate::rng::{self, label};

/// A hidden target sub-action per dimension; each step pays the fraction of
/// dimensions that match it. The value decomposes additively over
/// dimensions. The observation is a constant: the clock is not part of the
/// state, so a timeout is indistinguishable from any other step.
#[derive(Clone, Debug)]
pub struct DecomposableChain {
    space: ActionSpace,
    target: Vec<usize>,
    horizon: usize,
    early_termination: bool,
    t: usize,
    done: bool,
}

impl DecomposableChain {
    /// `d` dimensions with `k` sub-actions each; the target comes from `seed`.
    pub fn new(
        d: usize,
        k: usize,
        horizon: usize,
        early_termination: bool,
        seed: u64,
    ) -> Result<Self> {
        if horizon == 0 {
            return Err(Error::config("horizon", "must be positive"));
        }
        let space = ActionSpace::uniform(d, k)?;
        let mut r = rng::stream(seed, &[label::ENV]);
        let target = (0..d).map(|_| r.gen_range(0..k)).collect();
        Ok(Self {
            space,
            target,
            horizon,
            early_termination,
            t: 0,
            done: false,
        })
    }

    pub fn target(&self) -> &[usize] {
        &self.target
    }

    fn observe(&self) -> Vec<f64> {
        vec![1.0]
    }
}

impl Environment for DecomposableChain {
    fn obs_width(&self) -> usize {
        1
    }

    fn action_space(&self) -> &ActionSpace {
        &self.space
    }

    fn time_limit(&self) -> usize {
        self.horizon
    }

    fn reset(&mut self) -> Vec<f64> {
        self.t = 0;
        self.done = false;
        self.observe()
    }

    fn step(&mut self, action: usize) -> Result<StepResult> {
        if self.done {
            return Err(Error::EpisodeFinished);
        }
        let a = self.space.flat_to_tuple(action)?;
        let d = self.target.len();
        let matches = a.iter().zip(&self.target).filter(|(x, y)| x == y).count();
        self.t += 1;
        let terminal = self.early_termination && matches == d;
        let timeout = !terminal && self.t >= self.horizon;
        self.done = terminal || timeout;
        Ok(StepResult {
            state: self.observe(),
            reward: matches as f64 / d as f64,
            terminal,
            timeout,
        })
    }

    /// Without early termination every step can pay 1. With it, the best
    /// plan collects `(d-1)/d` per step and completes the match on the last one.
    fn optimal_return(&self) -> Result<f64> {
        let t = self.horizon as f64;
        if !self.early_termination {
            return Ok(t);
        }
        let d = self.target.len() as f64;
        Ok((t - 1.0) * (d - 1.0) / d + 1.0)
    }
}
