//! Q-learning: tabular updates, and replay-based agents whose value model is
//! any [`HypergraphQModel`](crate::HypergraphQModel).

mod agent;
mod replay;
mod schedule;
mod tabular;

pub use agent::{td_targets, Agent, AgentConfig, EpisodeStats, QNetSpec, Structure};
pub use replay::{ReplayBuffer, Transition};
pub use schedule::EpsilonSchedule;
pub use tabular::{tabular_q_update, DeterministicMdp, TabularQ, TabularTransition};
