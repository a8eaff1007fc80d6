//! Least-squares fits of tabular summation models. The full-rank model fits
//! any reward table exactly; rank 1 cannot express a pairwise interaction.
//!
//! cargo run --example capacity_fit

use rand::Rng;

use hyperq::rng::stream;
use hyperq::{ActionSpace, Hypergraph, HypergraphQModel, MixerKind};

fn main() -> hyperq::Result<()> {
    let space = ActionSpace::new(vec![3, 3, 2])?;
    let mut rng = stream(11, &[]);
    let table: Vec<f64> = (0..space.total_size())
        .map(|_| rng.gen_range(-1.0..1.0))
        .collect();

    // additive part plus an interaction between the first two dimensions
    let interacting: Vec<f64> = space
        .enumerate()
        .map(|a| a[0] as f64 + 0.5 * a[2] as f64 + if a[0] == a[1] { 1.0 } else { 0.0 })
        .collect();

    for r in 1..=3 {
        let mut m = HypergraphQModel::tabular(
            space.clone(),
            Hypergraph::rank(3, r)?,
            MixerKind::Summation,
            &mut rng,
        )?;
        let random = m.fit_least_squares(&table)?;
        let structured = m.fit_least_squares(&interacting)?;
        println!("rank {r}: residual {random:.3e} on a random table, {structured:.3e} with the interaction");
    }
    Ok(())
}
