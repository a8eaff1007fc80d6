use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TabularTransition {
    pub state: usize,
    pub action: usize,
    pub reward: f64,
    pub next_state: usize,
    pub terminal: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TabularQ {
    n_states: usize,
    n_actions: usize,
    pub alpha: f64,
    q: Vec<f64>,
}

impl TabularQ {
    pub fn new(n_states: usize, n_actions: usize, alpha: f64) -> Self {
        Self {
            n_states,
            n_actions,
            alpha,
            q: vec![0.0; n_states * n_actions],
        }
    }

    pub fn n_states(&self) -> usize {
        self.n_states
    }

    pub fn n_actions(&self) -> usize {
        self.n_actions
    }

    pub fn get(&self, s: usize, a: usize) -> f64 {
        self.q[s * self.n_actions + a]
    }

    pub fn row(&self, s: usize) -> &[f64] {
        &self.q[s * self.n_actions..(s + 1) * self.n_actions]
    }

    pub fn max_value(&self, s: usize) -> f64 {
        self.row(s)
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn values(&self) -> &[f64] {
        &self.q
    }
}

/// `Q(s,a) += α (r + γ max Q(s',·) - Q(s,a))`, without the bootstrap term
/// for terminal transitions.
pub fn tabular_q_update(q: &mut TabularQ, t: &TabularTransition, gamma: f64) -> Result<()> {
    for (i, n) in [
        (t.state, q.n_states),
        (t.next_state, q.n_states),
        (t.action, q.n_actions),
    ] {
        if i >= n {
            return Err(Error::InvalidIndex { index: i, size: n });
        }
    }
    let boot = if t.terminal {
        0.0
    } else {
        q.max_value(t.next_state)
    };
    let target = t.reward + gamma * boot;
    let k = t.state * q.n_actions + t.action;
    q.q[k] += q.alpha * (target - q.q[k]);
    Ok(())
}

/// Finite deterministic MDP: `next[s][a]`, `reward[s][a]`, and whether taking
/// `a` in `s` ends the episode.
#[derive(Clone, Debug, PartialEq)]
pub struct DeterministicMdp {
    pub next: Vec<Vec<usize>>,
    pub reward: Vec<Vec<f64>>,
    pub terminal: Vec<Vec<bool>>,
}

impl DeterministicMdp {
    pub fn n_states(&self) -> usize {
        self.next.len()
    }

    pub fn n_actions(&self) -> usize {
        self.next.first().map_or(0, Vec::len)
    }

    pub fn transition(&self, s: usize, a: usize) -> TabularTransition {
        TabularTransition {
            state: s,
            action: a,
            reward: self.reward[s][a],
            next_state: self.next[s][a],
            terminal: self.terminal[s][a],
        }
    }

    /// Applies Q-learning in round-robin sweeps over every pair until the
    /// table stops moving by more than `tol` in a sweep, or `max_updates`
    /// is spent. Returns the number of updates performed.
    pub fn q_learning_sweeps(
        &self,
        q: &mut TabularQ,
        gamma: f64,
        tol: f64,
        max_updates: usize,
    ) -> Result<usize> {
        let mut updates = 0;
        while updates < max_updates {
            let before = q.values().to_vec();
            for s in 0..self.n_states() {
                for a in 0..self.n_actions() {
                    tabular_q_update(q, &self.transition(s, a), gamma)?;
                    updates += 1;
                }
            }
            let moved = before
                .iter()
                .zip(q.values())
                .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()));
            if moved <= tol {
                break;
            }
        }
        Ok(updates)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Q* by iterating the Bellman optimality operator to numerical convergence.
    fn value_iteration(mdp: &DeterministicMdp, gamma: f64) -> Vec<f64> {
        let (ns, na) = (mdp.n_states(), mdp.n_actions());
        let mut q = vec![0.0; ns * na];
        loop {
            let v: Vec<f64> = (0..ns)
                .map(|s| {
                    q[s * na..(s + 1) * na]
                        .iter()
                        .copied()
                        .fold(f64::NEG_INFINITY, f64::max)
                })
                .collect();
            let mut delta: f64 = 0.0;
            for s in 0..ns {
                for a in 0..na {
                    let boot = if mdp.terminal[s][a] {
                        0.0
                    } else {
                        v[mdp.next[s][a]]
                    };
                    let new = mdp.reward[s][a] + gamma * boot;
                    delta = delta.max((new - q[s * na + a]).abs());
                    q[s * na + a] = new;
                }
            }
            if delta < 1e-14 {
                return q;
            }
        }
    }

    #[test]
    fn alpha_one_terminal_sets_reward() {
        let mut q = TabularQ::new(2, 2, 1.0);
        let t = TabularTransition {
            state: 0,
            action: 1,
            reward: 3.5,
            next_state: 1,
            terminal: true,
        };
        tabular_q_update(&mut q, &t, 0.9).unwrap();
        assert_eq!(q.get(0, 1), 3.5);
    }

    #[test]
    fn zero_discount_uses_reward_only() {
        let mut q = TabularQ::new(2, 1, 1.0);
        q.q[1] = 100.0;
        let t = TabularTransition {
            state: 0,
            action: 0,
            reward: -2.0,
            next_state: 1,
            terminal: false,
        };
        tabular_q_update(&mut q, &t, 0.0).unwrap();
        assert_eq!(q.get(0, 0), -2.0);
    }

    #[test]
    fn rejects_bad_ids() {
        let mut q = TabularQ::new(2, 2, 0.5);
        let t = TabularTransition {
            state: 2,
            action: 0,
            reward: 0.0,
            next_state: 0,
            terminal: false,
        };
        assert!(tabular_q_update(&mut q, &t, 0.9).is_err());
    }

    #[test]
    fn two_state_chain_converges() {
        let mdp = DeterministicMdp {
            next: vec![vec![0, 1], vec![0, 1]],
            reward: vec![vec![0.0, 1.0], vec![2.0, 0.5]],
            terminal: vec![vec![false; 2]; 2],
        };
        let mut q = TabularQ::new(2, 2, 1.0);
        mdp.q_learning_sweeps(&mut q, 0.9, 0.0, 100_000).unwrap();
        let star = value_iteration(&mdp, 0.9);
        for (a, b) in q.values().iter().zip(&star) {
            assert!((a - b).abs() < 1e-6);
        }
    }

    fn arb_mdp() -> impl Strategy<Value = DeterministicMdp> {
        (2usize..5, 1usize..4).prop_flat_map(|(ns, na)| {
            (
                proptest::collection::vec(proptest::collection::vec(0..ns, na), ns),
                proptest::collection::vec(proptest::collection::vec(-1.0f64..1.0, na), ns),
                proptest::collection::vec(
                    proptest::collection::vec(proptest::bool::weighted(0.2), na),
                    ns,
                ),
            )
                .prop_map(|(next, reward, terminal)| DeterministicMdp {
                    next,
                    reward,
                    terminal,
                })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn uniform_random_visits_reach_the_fixed_point(mdp in arb_mdp(), seed in 0u64..1000) {
            use rand::Rng;
            let gamma = 0.8;
            let star = value_iteration(&mdp, gamma);
            let mut q = TabularQ::new(mdp.n_states(), mdp.n_actions(), 1.0);
            let mut r = crate::rng::stream(seed, &[]);
            for _ in 0..100_000 {
                let t = mdp.transition(r.gen_range(0..mdp.n_states()), r.gen_range(0..mdp.n_actions()));
                tabular_q_update(&mut q, &t, gamma).unwrap();
            }
            for (a, b) in q.values().iter().zip(&star) {
                prop_assert!((a - b).abs() < 1e-6, "{} vs {}", a, b);
            }
        }
    }
}
