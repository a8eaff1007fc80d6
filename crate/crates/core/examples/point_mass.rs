//! The point-mass task behind the action discretizer: 5 force levels per
//! axis, an exact grid-optimal plan, and a replay of that plan through the
//! discrete interface.
//!
//! cargo run --release --example point_mass

use hyperq::envs::{Discretized, Environment, PointMassNav};

fn main() -> hyperq::Result<()> {
    let inner = PointMassNav::new(2, 200, 4);
    println!("start {:?}", inner.start());
    let mut env = Discretized::new(inner, 5)?;
    println!(
        "{} joint actions, force levels {:?}",
        env.action_space().total_size(),
        env.grids()[0]
    );
    println!(
        "sub-actions [0, 4] -> force {:?}",
        env.discretize_action(&[0, 4])?
    );

    let plan = env.inner().plan_on_grid(env.grids())?;
    env.reset();
    let mut ret = 0.0;
    for a in &plan.actions {
        let flat = env.action_space().tuple_to_flat(a)?;
        let r = env.step(flat)?;
        ret += r.reward;
        if r.done() {
            break;
        }
    }
    println!("planned value {:.4}, replayed return {ret:.4}", plan.value);
    println!("optimal return {:.4}", env.optimal_return()?);

    let mut idle = env.clone();
    idle.reset();
    let rest = idle.action_space().tuple_to_flat(&[2, 2])?;
    let mut idle_ret = 0.0;
    loop {
        let r = idle.step(rest)?;
        idle_ret += r.reward;
        if r.done() {
            break;
        }
    }
    println!("zero force return {idle_ret:.4}");
    Ok(())
}
