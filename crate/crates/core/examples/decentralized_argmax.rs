//! With only singleton hyperedges and a summation mixer the greedy action is
//! the per-dimension argmax of each block. Compare it with exhaustive search
//! on a 32768-action space.
//!
//! cargo run --release --example decentralized_argmax

use std::time::Instant;

use hyperq::nn::uniform_init;
use hyperq::rng::stream;
use hyperq::{ActionSpace, Hypergraph, HypergraphQModel, MixerKind};

fn main() -> hyperq::Result<()> {
    let space = ActionSpace::uniform(5, 8)?;
    let mut rng = stream(3, &[]);
    let mut model = HypergraphQModel::tabular(
        space.clone(),
        Hypergraph::rank(5, 1)?,
        MixerKind::Summation,
        &mut rng,
    )?;

    let mut mismatches = 0;
    for _ in 0..200 {
        let fresh = uniform_init(&mut rng, -1.0, 1.0, model.param_count())?;
        model.params_mut().copy_from_slice(&fresh);
        if model.greedy_action(&[])? != model.decentralized_greedy(&[])? {
            mismatches += 1;
        }
    }
    println!("200 random rank-1 models: {mismatches} mismatches");

    let t = Instant::now();
    let exhaustive = model.greedy_action(&[])?;
    let slow = t.elapsed();
    let t = Instant::now();
    let fast = model.decentralized_greedy(&[])?;
    let quick = t.elapsed();
    println!(
        "exhaustive {:?} in {slow:.2?}",
        space.flat_to_tuple(exhaustive)?
    );
    println!("per-vertex {:?} in {quick:.2?}", space.flat_to_tuple(fast)?);

    let pairwise = HypergraphQModel::tabular(
        space,
        Hypergraph::rank(5, 2)?,
        MixerKind::Summation,
        &mut rng,
    )?;
    if let Err(e) = pairwise.decentralized_greedy(&[]) {
        println!("rank 2: {e}");
    }
    Ok(())
}
