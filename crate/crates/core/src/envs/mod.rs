//! Desk-scale environments with multi-dimensional discrete action spaces.

mod chain;
mod discretize;
mod pointmass;

pub use chain::DecomposableChain;
pub use discretize::{ContinuousEnv, Discretized};
pub use pointmass::PointMassNav;

use crate::action_space::ActionSpace;
use crate::error::Result;

/// Outcome of one environment step. `terminal` marks a genuine end of the
/// task; `timeout` marks an episode cut by the time limit. Never both.
#[derive(Clone, Debug, PartialEq)]
pub struct StepResult {
    pub state: Vec<f64>,
    pub reward: f64,
    pub terminal: bool,
    pub timeout: bool,
}

impl StepResult {
    pub fn done(&self) -> bool {
        self.terminal || self.timeout
    }
}

pub trait Environment {
    fn obs_width(&self) -> usize;
    fn action_space(&self) -> &ActionSpace;
    fn time_limit(&self) -> usize;
    fn reset(&mut self) -> Vec<f64>;
    /// Fails with [`Error::EpisodeFinished`](crate::Error::EpisodeFinished)
    /// after the episode ended.
    fn step(&mut self, action: usize) -> Result<StepResult>;
    /// Exact optimal undiscounted return from the reset state, where known.
    fn optimal_return(&self) -> Result<f64>;
}

/// The built-in environments behind one cloneable type.
#[derive(Clone, Debug)]
pub enum BuiltinEnv {
    Chain(DecomposableChain),
    PointMass(Discretized<PointMassNav>),
}

impl BuiltinEnv {
    fn inner(&self) -> &dyn Environment {
        match self {
            BuiltinEnv::Chain(e) => e,
            BuiltinEnv::PointMass(e) => e,
        }
    }

    fn inner_mut(&mut self) -> &mut dyn Environment {
        match self {
            BuiltinEnv::Chain(e) => e,
            BuiltinEnv::PointMass(e) => e,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BuiltinEnv::Chain(_) => "chain",
            BuiltinEnv::PointMass(_) => "pointmass",
        }
    }
}

impl Environment for BuiltinEnv {
    fn obs_width(&self) -> usize {
        self.inner().obs_width()
    }
    fn action_space(&self) -> &ActionSpace {
        self.inner().action_space()
    }
    fn time_limit(&self) -> usize {
        self.inner().time_limit()
    }
    fn reset(&mut self) -> Vec<f64> {
        self.inner_mut().reset()
    }
    fn step(&mut self, action: usize) -> Result<StepResult> {
        self.inner_mut().step(action)
    }
    fn optimal_return(&self) -> Result<f64> {
        self.inner().optimal_return()
    }
}
