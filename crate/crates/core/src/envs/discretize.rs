use super::{Environment, StepResult};
use crate::action_space::ActionSpace;
use crate::error::{Error, Result};

/// An environment with a box-bounded continuous action vector.
pub trait ContinuousEnv {
    fn obs_width(&self) -> usize;
    /// `(low, high)` per action dimension.
    fn bounds(&self) -> &[(f64, f64)];
    fn time_limit(&self) -> usize;
    fn reset(&mut self) -> Vec<f64>;
    fn step(&mut self, action: &[f64]) -> Result<StepResult>;
    /// Optimal return when restricted to the given per-dimension action grids.
    fn optimal_return_on_grid(&self, grids: &[Vec<f64>]) -> Result<f64> {
        let _ = grids;
        Err(Error::NotAvailable(
            "no optimal-return oracle for this environment".into(),
        ))
    }
}

/// Exposes `bins` evenly spaced sub-actions per continuous dimension,
/// endpoints included.
#[derive(Clone, Debug)]
pub struct Discretized<E> {
    inner: E,
    bins: usize,
    space: ActionSpace,
    grids: Vec<Vec<f64>>,
}

impl<E: ContinuousEnv> Discretized<E> {
    pub fn new(inner: E, bins: usize) -> Result<Self> {
        if bins < 2 {
            return Err(Error::config(
                "bins",
                "need at least two sub-actions per dimension",
            ));
        }
        let space = ActionSpace::uniform(inner.bounds().len(), bins)?;
        let grids = inner
            .bounds()
            .iter()
            .map(|&(lo, hi)| {
                (0..bins)
                    .map(|k| {
                        if k == bins - 1 {
                            hi
                        } else {
                            lo + k as f64 * (hi - lo) / (bins - 1) as f64
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            inner,
            bins,
            space,
            grids,
        })
    }

    pub fn bins(&self) -> usize {
        self.bins
    }

    pub fn inner(&self) -> &E {
        &self.inner
    }

    pub fn grids(&self) -> &[Vec<f64>] {
        &self.grids
    }

    /// Continuous action for a sub-action tuple.
    pub fn discretize_action(&self, a: &[usize]) -> Result<Vec<f64>> {
        self.space.check_tuple(a)?;
        Ok(a.iter().zip(&self.grids).map(|(&k, g)| g[k]).collect())
    }
}

impl<E: ContinuousEnv> Environment for Discretized<E> {
    fn obs_width(&self) -> usize {
        self.inner.obs_width()
    }

    fn action_space(&self) -> &ActionSpace {
        &self.space
    }

    fn time_limit(&self) -> usize {
        self.inner.time_limit()
    }

    fn reset(&mut self) -> Vec<f64> {
        self.inner.reset()
    }

    fn step(&mut self, action: usize) -> Result<StepResult> {
        let a = self.space.flat_to_tuple(action)?;
        let u = self.discretize_action(&a)?;
        self.inner.step(&u)
    }

    fn optimal_return(&self) -> Result<f64> {
        self.inner.optimal_return_on_grid(&self.grids)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envs::PointMassNav;

    #[test]
    fn five_bins_over_unit_box() {
        let w = Discretized::new(PointMassNav::new(1, 10, 0), 5).unwrap();
        let v: Vec<f64> = (0..5)
            .map(|k| w.discretize_action(&[k]).unwrap()[0])
            .collect();
        assert_eq!(v, vec![-1.0, -0.5, 0.0, 0.5, 1.0]);
        assert!(w.discretize_action(&[5]).is_err());
    }

    #[derive(Clone)]
    struct Unit(Vec<(f64, f64)>);

    impl ContinuousEnv for Unit {
        fn obs_width(&self) -> usize {
            1
        }
        fn bounds(&self) -> &[(f64, f64)] {
            &self.0
        }
        fn time_limit(&self) -> usize {
            1
        }
        fn reset(&mut self) -> Vec<f64> {
            vec![0.0]
        }
        fn step(&mut self, action: &[f64]) -> Result<StepResult> {
            Ok(StepResult {
                state: vec![0.0],
                reward: action.iter().sum(),
                terminal: false,
                timeout: true,
            })
        }
    }

    #[test]
    fn two_bins_hit_endpoints() {
        let w = Discretized::new(Unit(vec![(0.0, 1.0)]), 2).unwrap();
        assert_eq!(w.discretize_action(&[0]).unwrap(), vec![0.0]);
        assert_eq!(w.discretize_action(&[1]).unwrap(), vec![1.0]);
        assert!(Discretized::new(Unit(vec![(0.0, 1.0)]), 1).is_err());
        assert!(matches!(w.optimal_return(), Err(Error::NotAvailable(_))));
    }

    #[test]
    fn six_joints_five_bins() {
        let w = Discretized::new(Unit(vec![(-1.0, 1.0); 6]), 5).unwrap();
        assert_eq!(w.action_space().total_size(), 15625);
    }

    #[test]
    fn grid_is_uniform_and_exact_at_bounds() {
        let bounds = vec![(-0.3, 2.7), (1e-3, 5.0), (-7.25, -1.5)];
        for bins in [2, 3, 5, 11, 64] {
            let w = Discretized::new(Unit(bounds.clone()), bins).unwrap();
            for (g, &(lo, hi)) in w.grids().iter().zip(&bounds) {
                assert_eq!(g[0], lo);
                assert_eq!(g[bins - 1], hi);
                let h = (hi - lo) / (bins - 1) as f64;
                for pair in g.windows(2) {
                    assert!((pair[1] - pair[0] - h).abs() < 1e-12);
                }
            }
        }
    }
}
