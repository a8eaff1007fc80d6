//! Rank-based hypergraphs over a small action space and what one action's
//! representation looks like.
//!
//! cargo run --example hypergraphs

use hyperq::rng::stream;
use hyperq::{ActionSpace, Hypergraph, HypergraphQModel, MixerKind};

fn main() -> hyperq::Result<()> {
    let space = ActionSpace::new(vec![3, 3, 2])?;
    println!(
        "{} actions over {} dimensions",
        space.total_size(),
        space.n_vertices()
    );
    for r in 1..=3 {
        let h = Hypergraph::rank(3, r)?;
        let labels: Vec<String> = h.edges().iter().map(|e| e.label()).collect();
        println!("rank {r}: {} edges {}", h.n_edges(), labels.join(" "));
    }

    let h = Hypergraph::rank(3, 2)?;
    let mut model =
        HypergraphQModel::tabular(space.clone(), h, MixerKind::Summation, &mut stream(7, &[]))?;
    for j in 0..model.n_edges() {
        for (i, p) in model.block_params_mut(j).iter_mut().enumerate() {
            *p = (j * 10 + i) as f64;
        }
    }
    let a = [2, 0, 1];
    let rep = model.action_representation(&[], &a)?;
    println!(
        "action {a:?}: representation {rep:?}, Q = {}",
        model.q_value(&[], &a)?
    );
    Ok(())
}
