use rand::Rng;

use super::discretize::ContinuousEnv;
use super::StepResult;
use crate::error::{Error, Result};
use crate::rng::{self, label};

pub const DT: f64 = 0.05;
pub const MAX_SPEED: f64 = 2.0;
pub const MAX_FORCE: f64 = 1.0;

/// Double integrator in `dims` dimensions, goal at the origin. Each axis is
/// driven by a force in `[-1, 1]`; the start position is drawn from the seed
/// and the start velocity is zero. Every step pays minus the L1 distance to
/// the goal after moving. Explicit Euler, velocity clamped to `±2`.
#[derive(Clone, Debug)]
pub struct PointMassNav {
    start: Vec<f64>,
    bounds: Vec<(f64, f64)>,
    horizon: usize,
    pos: Vec<f64>,
    vel: Vec<f64>,
    t: usize,
    done: bool,
}

/// An open-loop action sequence with the value the planner assigns to it.
#[derive(Clone, Debug)]
pub struct GridPlan {
    pub value: f64,
    /// Sub-action tuple per step.
    pub actions: Vec<Vec<usize>>,
}

impl PointMassNav {
    pub fn new(dims: usize, horizon: usize, seed: u64) -> Self {
        let mut r = rng::stream(seed, &[label::ENV]);
        let start: Vec<f64> = (0..dims).map(|_| r.gen_range(-1.0..1.0)).collect();
        Self::with_start(start, horizon)
    }

    pub fn with_start(start: Vec<f64>, horizon: usize) -> Self {
        let dims = start.len();
        Self {
            pos: start.clone(),
            vel: vec![0.0; dims],
            start,
            bounds: vec![(-MAX_FORCE, MAX_FORCE); dims],
            horizon,
            t: 0,
            done: false,
        }
    }

    pub fn start(&self) -> &[f64] {
        &self.start
    }

    fn observe(&self) -> Vec<f64> {
        let mut s = self.pos.clone();
        s.extend_from_slice(&self.vel);
        s
    }

    /// Exact finite-horizon planning over the given per-axis force grids.
    ///
    /// The axes are independent, so each is solved alone. Starting from rest,
    /// every reachable velocity is an integer multiple of `q`, the largest
    /// step dividing all `force * DT`, and positions move on a lattice of
    /// pitch `q * DT`. Backward induction runs on that lattice, restricted to
    /// a window around the start and the goal.
    pub fn plan_on_grid(&self, grids: &[Vec<f64>]) -> Result<GridPlan> {
        if grids.len() != self.start.len() {
            return Err(Error::Dimension {
                expected: self.start.len(),
                got: grids.len(),
            });
        }
        let mut value = 0.0;
        let mut per_axis = Vec::with_capacity(grids.len());
        for (&p0, grid) in self.start.iter().zip(grids) {
            let (v, a) = solve_axis(p0, grid, self.horizon)?;
            value += v;
            per_axis.push(a);
        }
        let actions = (0..self.horizon)
            .map(|t| per_axis.iter().map(|a| a[t]).collect())
            .collect();
        Ok(GridPlan { value, actions })
    }
}

fn lattice_step(grid: &[f64]) -> Result<(f64, Vec<i64>)> {
    let not_lattice = || Error::NotAvailable("force grid is not evenly spaced".into());
    if grid.len() < 2 {
        return Err(not_lattice());
    }
    let q = (grid[1] - grid[0]).abs() * DT / 2.0;
    if q <= 0.0 {
        return Err(not_lattice());
    }
    let mut steps = Vec::with_capacity(grid.len());
    for &g in grid {
        let m = g * DT / q;
        if (m - m.round()).abs() > 1e-9 {
            return Err(not_lattice());
        }
        steps.push(m.round() as i64);
    }
    Ok((q, steps))
}

fn solve_axis(p0: f64, grid: &[f64], horizon: usize) -> Result<(f64, Vec<usize>)> {
    let (q, steps) = lattice_step(grid)?;
    let s = q * DT;
    let margin = 0.25;
    let lo = p0.min(0.0) - margin;
    let hi = p0.max(0.0) + margin;
    let i_lo = ((lo - p0) / s).floor() as i64;
    let i_hi = ((hi - p0) / s).ceil() as i64;
    let n_p = (i_hi - i_lo + 1) as usize;

    let amax = grid.iter().fold(0.0f64, |m, g| m.max(g.abs()));
    let vmax_ratio = MAX_SPEED / q;
    let vmax_idx = (vmax_ratio + 1e-9).floor() as i64;
    // faster than this cannot stop inside the window
    let stop_idx = ((2.0 * (hi - lo) * amax).sqrt() / q).ceil() as i64 + steps.len() as i64;
    let v_idx = vmax_idx.min(stop_idx);
    let clamps = v_idx == vmax_idx;
    if clamps && (vmax_ratio - vmax_ratio.round()).abs() > 1e-9 {
        return Err(Error::NotAvailable(
            "speed limit is off the velocity lattice".into(),
        ));
    }
    let n_v = (2 * v_idx + 1) as usize;
    let cells = n_p * n_v;

    let reward: Vec<f64> = (0..n_p)
        .map(|i| -(p0 + (i as i64 + i_lo) as f64 * s).abs())
        .collect();
    let mut next = vec![0.0f64; cells];
    let mut cur = vec![f64::NEG_INFINITY; cells];
    let mut policy = vec![u8::MAX; horizon * cells];
    for t in (0..horizon).rev() {
        let pol = &mut policy[t * cells..(t + 1) * cells];
        for ip in 0..n_p {
            for iv in 0..n_v {
                let v = iv as i64 - v_idx;
                let np = ip as i64 + v;
                let c = ip * n_v + iv;
                cur[c] = f64::NEG_INFINITY;
                if np < 0 || np >= n_p as i64 {
                    continue;
                }
                let np = np as usize;
                let mut best = f64::NEG_INFINITY;
                let mut arg = u8::MAX;
                for (k, &dv) in steps.iter().enumerate() {
                    let mut nv = v + dv;
                    if clamps {
                        nv = nv.clamp(-v_idx, v_idx);
                    } else if nv.abs() > v_idx {
                        continue;
                    }
                    let x = reward[np] + next[np * n_v + (nv + v_idx) as usize];
                    if x > best {
                        best = x;
                        arg = k as u8;
                    }
                }
                cur[c] = best;
                pol[c] = arg;
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }

    let mut ip = (-i_lo) as usize;
    let mut v = 0i64;
    let value = next[ip * n_v + v_idx as usize];
    if !value.is_finite() {
        return Err(Error::NotAvailable(
            "no feasible plan inside the planning window".into(),
        ));
    }
    let mut actions = Vec::with_capacity(horizon);
    for t in 0..horizon {
        let k = policy[t * cells + ip * n_v + (v + v_idx) as usize];
        actions.push(k as usize);
        ip = (ip as i64 + v) as usize;
        v = (v + steps[k as usize]).clamp(-v_idx, v_idx);
    }
    Ok((value, actions))
}

impl ContinuousEnv for PointMassNav {
    fn obs_width(&self) -> usize {
        2 * self.start.len()
    }

    fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    fn time_limit(&self) -> usize {
        self.horizon
    }

    fn reset(&mut self) -> Vec<f64> {
        self.pos.clone_from(&self.start);
        self.vel.iter_mut().for_each(|v| *v = 0.0);
        self.t = 0;
        self.done = false;
        self.observe()
    }

    fn step(&mut self, action: &[f64]) -> Result<StepResult> {
        if self.done {
            return Err(Error::EpisodeFinished);
        }
        if action.len() != self.start.len() {
            return Err(Error::Dimension {
                expected: self.start.len(),
                got: action.len(),
            });
        }
        let mut dist = 0.0;
        for ((p, v), &u) in self.pos.iter_mut().zip(&mut self.vel).zip(action) {
            let u = u.clamp(-MAX_FORCE, MAX_FORCE);
            *p += *v * DT;
            *v = (*v + u * DT).clamp(-MAX_SPEED, MAX_SPEED);
            dist += p.abs();
        }
        self.t += 1;
        let timeout = self.t >= self.horizon;
        self.done = timeout;
        Ok(StepResult {
            state: self.observe(),
            reward: -dist,
            terminal: false,
            timeout,
        })
    }

    fn optimal_return_on_grid(&self, grids: &[Vec<f64>]) -> Result<f64> {
        Ok(self.plan_on_grid(grids)?.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envs::{Discretized, Environment};

    fn rollout(env: &mut Discretized<PointMassNav>, plan: &GridPlan) -> f64 {
        env.reset();
        let mut total = 0.0;
        for a in &plan.actions {
            let flat = env.action_space().tuple_to_flat(a).unwrap();
            total += env.step(flat).unwrap().reward;
        }
        total
    }

    #[test]
    fn euler_step() {
        let mut env = PointMassNav::with_start(vec![0.5, -0.25], 10);
        env.reset();
        let r = env.step(&[1.0, -1.0]).unwrap();
        assert_eq!(r.state, vec![0.5, -0.25, 0.05, -0.05]);
        assert!((r.reward + 0.75).abs() < 1e-15);
        let r = env.step(&[0.0, 0.0]).unwrap();
        assert!((r.state[0] - 0.5025).abs() < 1e-15);
        assert!((r.state[1] + 0.2525).abs() < 1e-15);
    }

    #[test]
    fn speed_is_clamped() {
        let mut env = PointMassNav::with_start(vec![0.0], 100);
        env.reset();
        for _ in 0..100 {
            let r = env.step(&[1.0]).unwrap();
            assert!(r.state[1] <= MAX_SPEED);
        }
        assert!(env.step(&[1.0]).is_err());
    }

    #[test]
    fn oracle_matches_rollout_of_its_plan() {
        for (seed, horizon) in [(0, 60), (3, 120)] {
            let mut env = Discretized::new(PointMassNav::new(2, horizon, seed), 5).unwrap();
            let plan = env.inner().plan_on_grid(env.grids()).unwrap();
            let ret = rollout(&mut env, &plan);
            assert!((ret - plan.value).abs() < 1e-3, "{ret} vs {}", plan.value);
            assert!((env.optimal_return().unwrap() - plan.value).abs() < 1e-12);
        }
    }

    #[test]
    fn oracle_beats_simple_controllers() {
        let mut env = Discretized::new(PointMassNav::new(2, 80, 9), 5).unwrap();
        let best = env.optimal_return().unwrap();
        let start = env.inner().start().to_vec();
        // idle, and a proportional-derivative law snapped to the grid
        let mut idle = 0.0;
        env.reset();
        for _ in 0..80 {
            idle += env
                .step(env.action_space().tuple_to_flat(&[2, 2]).unwrap())
                .unwrap()
                .reward;
        }
        assert!(best >= idle - 1e-9);
        let mut pd = 0.0;
        let mut s = env.reset();
        assert_eq!(&s[..2], &start[..]);
        for _ in 0..80 {
            let a: Vec<usize> = (0..2)
                .map(|d| {
                    let u = (-4.0 * s[d] - 3.0 * s[2 + d]).clamp(-1.0, 1.0);
                    ((u + 1.0) * 2.0).round() as usize
                })
                .collect();
            let r = env
                .step(env.action_space().tuple_to_flat(&a).unwrap())
                .unwrap();
            pd += r.reward;
            s = r.state;
        }
        assert!(best >= pd - 1e-9);
        assert!(pd > idle);
    }

    #[test]
    fn oracle_is_exhaustive_on_short_horizon() {
        let env = PointMassNav::with_start(vec![0.3], 6);
        let grid = vec![vec![-1.0, 0.0, 1.0]];
        let plan = env.plan_on_grid(&grid).unwrap();
        let mut best = f64::NEG_INFINITY;
        for code in 0..3usize.pow(6) {
            let mut e = env.clone();
            e.reset();
            let mut c = code;
            let mut total = 0.0;
            for _ in 0..6 {
                total += e.step(&[grid[0][c % 3]]).unwrap().reward;
                c /= 3;
            }
            best = best.max(total);
        }
        assert!((best - plan.value).abs() < 1e-9, "{best} vs {}", plan.value);
    }

    #[test]
    fn uneven_grid_is_refused() {
        let env = PointMassNav::with_start(vec![0.3], 6);
        assert!(env.plan_on_grid(&[vec![-1.0, 0.1, 1.0]]).is_err());
        assert!(env
            .plan_on_grid(&[vec![-1.0, 1.0], vec![-1.0, 1.0]])
            .is_err());
    }
}
