//! Hypergraph-structured action-value estimation.
//!
//! Multi-dimensional discrete action spaces are treated as vertex sets. A
//! hypergraph over those vertices decides which sub-action combinations get
//! their own learned block; a mixer combines one value per block into an
//! action value. The crate contains the estimator, a bandit prediction study,
//! Q-learning agents with desk-scale environments, and an experiment runner.

pub mod action_space;
pub mod bandit;
pub mod envs;
mod error;
pub mod exp;
pub mod hypergraph;
pub mod nn;
pub mod rl;
pub mod rng;
pub mod value_model;

pub use action_space::ActionSpace;
pub use error::{Error, Result};
pub use hypergraph::{Hyperedge, Hypergraph};
pub use value_model::{HypergraphQModel, MixerKind};
