//! Reverse-mode gradients against central differences, for a dense network
//! and for a full hypergraph model with a learned mixer.
//!
//! cargo run --example gradient_check

use rand::Rng;

use hyperq::nn::{check_gradient, grad_check, init_dense, Activation, DenseSpec, InitScheme};
use hyperq::rng::stream;
use hyperq::value_model::{GradScratch, NeuralLayout};
use hyperq::{ActionSpace, Hypergraph, HypergraphQModel, MixerKind};

fn main() -> hyperq::Result<()> {
    let mut rng = stream(5, &[]);
    let spec = DenseSpec::new(vec![4, 6, 3], vec![Activation::Tanh, Activation::Linear])?;
    let params = init_dense(&spec, &mut rng, InitScheme::Xavier)?;
    let input: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let report = grad_check(&spec, &params, &input, 1e-4)?;
    println!(
        "dense net: worst relative error {:.2e}",
        report.worst_relative_error
    );

    let space = ActionSpace::new(vec![3, 2, 2])?;
    let layout = NeuralLayout {
        obs_width: 2,
        torso_hidden: vec![5],
        total_head_hidden: 12,
    };
    let mixer = MixerKind::universal(6, 4, Activation::Tanh)?;
    let model = HypergraphQModel::neural(space, Hypergraph::rank(3, 2)?, &layout, mixer, &mut rng)?;
    let state = [0.3, -0.8];
    let a = 7;
    let eval = model.evaluate(&state)?;
    let mut grads = vec![0.0; model.param_count()];
    let mut scratch = GradScratch::default();
    model.backward_q(&state, &eval, a, 1.0, &mut grads, &mut scratch)?;
    let q = |p: &[f64]| {
        let e = model.evaluate_with(p, &state).expect("valid state");
        model.q_from_with(p, &e, a, &mut GradScratch::default())
    };
    let report = check_gradient(q, model.params(), &grads, 1e-5, 1e-4);
    println!(
        "rank-2 model, {} parameters: worst relative error {:.2e}",
        model.param_count(),
        report.worst_relative_error
    );
    Ok(())
}
