use super::DenseSpec;
use crate::error::Result;

/// `|a - n| / max(1, |a|, |n|)`: relative for large gradients, absolute near zero.
pub fn relative_error(analytic: f64, numeric: f64) -> f64 {
    (analytic - numeric).abs() / 1f64.max(analytic.abs()).max(numeric.abs())
}

#[derive(Clone, Debug, PartialEq)]
pub struct GradCheckReport {
    pub passed: bool,
    pub worst_relative_error: f64,
    /// Coordinate with the worst error, if any coordinates were checked.
    pub worst_index: Option<usize>,
}

/// Compares `analytic` against central differences of `f` around `x`.
pub fn check_gradient(
    mut f: impl FnMut(&[f64]) -> f64,
    x: &[f64],
    analytic: &[f64],
    step: f64,
    tol: f64,
) -> GradCheckReport {
    assert_eq!(x.len(), analytic.len());
    let mut probe = x.to_vec();
    let mut worst = 0.0;
    let mut worst_index = None;
    for i in 0..x.len() {
        probe[i] = x[i] + step;
        let up = f(&probe);
        probe[i] = x[i] - step;
        let down = f(&probe);
        probe[i] = x[i];
        let numeric = (up - down) / (2.0 * step);
        let err = relative_error(analytic[i], numeric);
        if err > worst || worst_index.is_none() {
            worst = err;
            worst_index = Some(i);
        }
    }
    GradCheckReport {
        passed: worst < tol,
        worst_relative_error: worst,
        worst_index,
    }
}

/// Projection applied to network outputs so the checked scalar mixes all of them.
fn output_weights(n: usize) -> Vec<f64> {
    (0..n)
        .map(|j| if j % 2 == 0 { 1.0 } else { -0.5 } / (1 + j / 2) as f64)
        .collect()
}

/// Checks parameter and input gradients of `spec` at `(params, input)`
/// with central differences of step `1e-5`.
pub fn grad_check(
    spec: &DenseSpec,
    params: &[f64],
    input: &[f64],
    tol: f64,
) -> Result<GradCheckReport> {
    let r = output_weights(spec.output_width());
    let (_, cache) = spec.forward(params, input)?;
    let (pg, ig) = spec.backward(params, &cache, &r)?;
    let objective = |p: &[f64], x: &[f64]| -> f64 {
        let (y, _) = spec.forward(p, x).expect("shapes checked");
        y.iter().zip(&r).map(|(a, b)| a * b).sum()
    };
    let by_params = check_gradient(|p| objective(p, input), params, &pg, 1e-5, tol);
    let by_input = check_gradient(|x| objective(params, x), input, &ig, 1e-5, tol);
    let worse = if by_input.worst_relative_error > by_params.worst_relative_error {
        GradCheckReport {
            worst_index: by_input.worst_index.map(|i| params.len() + i),
            ..by_input
        }
    } else {
        by_params
    };
    Ok(GradCheckReport {
        passed: worse.worst_relative_error < tol,
        ..worse
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::{init_dense, Activation, InitScheme};
    use crate::rng;
    use rand::Rng;

    #[test]
    fn random_nets_all_activations() {
        let mut r = rng::stream(11, &[]);
        for trial in 0..40 {
            let act = Activation::ALL[trial % 4];
            let depth = 2 + trial % 3;
            let sizes: Vec<usize> = (0..depth).map(|_| r.gen_range(1..6)).collect();
            let spec = DenseSpec::mlp(sizes, act).unwrap();
            let p = init_dense(&spec, &mut r, InitScheme::Uniform { lo: -1.0, hi: 1.0 }).unwrap();
            let x: Vec<f64> = (0..spec.input_width())
                .map(|_| r.gen_range(-2.0..2.0))
                .collect();
            let rep = grad_check(&spec, &p, &x, 1e-4).unwrap();
            assert!(rep.passed, "trial {trial}: {rep:?}");
        }
    }

    #[test]
    fn corrupted_gradient_fails() {
        let f = |x: &[f64]| x[0] * x[0] + 3.0 * x[1];
        let x = [1.5, -0.5];
        assert!(check_gradient(f, &x, &[3.0, 3.0], 1e-5, 1e-4).passed);
        let bad = check_gradient(f, &x, &[3.0, 3.1], 1e-5, 1e-4);
        assert!(!bad.passed);
        assert_eq!(bad.worst_index, Some(1));
    }

    #[test]
    fn linear_without_hidden_layer() {
        let spec = DenseSpec::new(vec![2, 1], vec![Activation::Linear]).unwrap();
        let rep = grad_check(&spec, &[0.3, -0.2, 0.1], &[1.0, 2.0], 1e-4).unwrap();
        assert!(rep.passed);
        let empty = check_gradient(|_| 0.0, &[], &[], 1e-5, 1e-4);
        assert!(empty.passed);
        assert_eq!(empty.worst_index, None);
    }
}
