use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AdamConfig {
    pub learning_rate: f64,
    pub beta1: f64,
    pub beta2: f64,
    /// Added to the root of the corrected second moment.
    pub epsilon: f64,
}

impl AdamConfig {
    /// Rates and stability constant used by the Q-learning agents.
    pub const AGENT: AdamConfig = AdamConfig {
        learning_rate: 0.00001,
        beta1: 0.9,
        beta2: 0.999,
        epsilon: 0.0003125,
    };

    pub fn with_learning_rate(self, learning_rate: f64) -> Self {
        Self {
            learning_rate,
            ..self
        }
    }
}

impl Default for AdamConfig {
    fn default() -> Self {
        Self {
            learning_rate: 0.001,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

/// Adam with bias correction over one flat parameter vector.
#[derive(Clone, Debug)]
pub struct Adam {
    pub config: AdamConfig,
    m: Vec<f64>,
    v: Vec<f64>,
    t: u64,
}

impl Adam {
    pub fn new(config: AdamConfig, n_params: usize) -> Self {
        Self {
            config,
            m: vec![0.0; n_params],
            v: vec![0.0; n_params],
            t: 0,
        }
    }

    pub fn steps(&self) -> u64 {
        self.t
    }

    pub fn first_moment(&self) -> &[f64] {
        &self.m
    }

    pub fn second_moment(&self) -> &[f64] {
        &self.v
    }

    pub fn step(&mut self, params: &mut [f64], grads: &[f64]) {
        assert_eq!(params.len(), self.m.len(), "parameter length changed");
        assert_eq!(grads.len(), self.m.len(), "gradient length mismatch");
        self.t += 1;
        let AdamConfig {
            learning_rate: lr,
            beta1: b1,
            beta2: b2,
            epsilon: eps,
        } = self.config;
        let inv_bc1 = 1.0 / (1.0 - b1.powi(self.t as i32));
        let inv_bc2 = 1.0 / (1.0 - b2.powi(self.t as i32));
        for (((p, &g), m), v) in params
            .iter_mut()
            .zip(grads)
            .zip(self.m.iter_mut())
            .zip(self.v.iter_mut())
        {
            *m = b1 * *m + (1.0 - b1) * g;
            *v = b2 * *v + (1.0 - b2) * g * g;
            let m_hat = *m * inv_bc1;
            let v_hat = *v * inv_bc2;
            *p -= lr * m_hat / (v_hat.sqrt() + eps);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_gradient_is_noop() {
        let mut adam = Adam::new(AdamConfig::AGENT, 3);
        let mut p = vec![1.0, -2.0, 3.0];
        adam.step(&mut p, &[0.0; 3]);
        assert_eq!(p, vec![1.0, -2.0, 3.0]);
        assert_eq!(adam.steps(), 1);
    }

    #[test]
    fn first_step_magnitude() {
        let cfg = AdamConfig::AGENT.with_learning_rate(0.1);
        let mut adam = Adam::new(cfg, 1);
        let mut p = vec![0.0];
        adam.step(&mut p, &[1.0]);
        // m_hat = v_hat = 1 at t = 1
        let expect = 0.1 / (1.0 + 0.0003125);
        assert!((p[0] + expect).abs() < 1e-15);
        assert!((expect - 0.0999688).abs() < 1e-7);
    }

    #[test]
    fn momentum_accumulates() {
        let cfg = AdamConfig::AGENT.with_learning_rate(0.1);
        let mut adam = Adam::new(cfg, 1);
        let mut p = vec![0.0];
        adam.step(&mut p, &[1.0]);
        let one = -p[0];
        adam.step(&mut p, &[1.0]);
        assert!(-p[0] > one);
    }

    #[test]
    fn update_sign_follows_first_moment() {
        let grads = [[0.5, -2.0, 1e-3], [0.1, -1.0, -4.0], [3.0, 0.2, -0.1]];
        for scale in [1e-3, 1.0, 1e3] {
            let mut adam = Adam::new(AdamConfig::default(), 3);
            let mut p = vec![0.0; 3];
            for g in &grads {
                let g: Vec<f64> = g.iter().map(|x| x * scale).collect();
                let before = p.clone();
                adam.step(&mut p, &g);
                for i in 0..3 {
                    if adam.second_moment()[i] > 0.0 {
                        let d = p[i] - before[i];
                        assert_eq!(d.signum(), -adam.first_moment()[i].signum());
                    }
                }
            }
        }
    }
}
