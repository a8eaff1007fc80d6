use rand::distributions::{Distribution, Uniform};
use rand::Rng;

use super::DenseSpec;
use crate::error::{Error, Result};

/// `n` i.i.d. samples from `[lo, hi]`.
pub fn uniform_init<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64, n: usize) -> Result<Vec<f64>> {
    if !(lo < hi) {
        return Err(Error::Range { lo, hi });
    }
    let dist = Uniform::new_inclusive(lo, hi);
    Ok((0..n).map(|_| dist.sample(rng)).collect())
}

/// Row-major `fan_out x fan_in` weights from `U(-b, b)`, `b = sqrt(6 / (fan_in + fan_out))`.
pub fn xavier_uniform_init<R: Rng + ?Sized>(
    rng: &mut R,
    fan_in: usize,
    fan_out: usize,
) -> Vec<f64> {
    assert!(fan_in > 0 && fan_out > 0, "fans must be positive");
    let bound = (6.0 / (fan_in + fan_out) as f64).sqrt();
    uniform_init(rng, -bound, bound, fan_in * fan_out).expect("positive bound")
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum InitScheme {
    /// Xavier-uniform weights, zero biases.
    Xavier,
    /// Weights and biases from `U(lo, hi)`.
    Uniform { lo: f64, hi: f64 },
}

/// Fresh parameter vector for `spec`, layer by layer.
pub fn init_dense<R: Rng + ?Sized>(
    spec: &DenseSpec,
    rng: &mut R,
    scheme: InitScheme,
) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(spec.param_count());
    for w in spec.layer_sizes().windows(2) {
        let (fan_in, fan_out) = (w[0], w[1]);
        match scheme {
            InitScheme::Xavier => {
                out.extend(xavier_uniform_init(rng, fan_in, fan_out));
                out.extend(std::iter::repeat_n(0.0, fan_out));
            }
            InitScheme::Uniform { lo, hi } => {
                out.extend(uniform_init(rng, lo, hi, fan_in * fan_out + fan_out)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nn::Activation;
    use crate::rng;

    fn mean(v: &[f64]) -> f64 {
        v.iter().sum::<f64>() / v.len() as f64
    }

    #[test]
    fn xavier_bounds_and_stats() {
        let mut r = rng::stream(1, &[]);
        let w = xavier_uniform_init(&mut r, 3, 3);
        assert_eq!(w.len(), 9);
        assert!(w.iter().all(|x| x.abs() <= 1.0));
        let big: Vec<f64> = (0..100)
            .flat_map(|_| xavier_uniform_init(&mut r, 40, 25))
            .collect();
        assert_eq!(big.len(), 100_000);
        assert!(mean(&big).abs() < 0.01);
        let a = xavier_uniform_init(&mut rng::stream(9, &[2]), 4, 5);
        let b = xavier_uniform_init(&mut rng::stream(9, &[2]), 4, 5);
        assert_eq!(a, b);
    }

    #[test]
    fn uniform_range_and_stats() {
        let mut r = rng::stream(2, &[]);
        let v = uniform_init(&mut r, -10.0, 10.0, 100_000).unwrap();
        assert!(v.iter().all(|x| (-10.0..=10.0).contains(x)));
        assert!(mean(&v).abs() < 0.1);
        let a = uniform_init(&mut rng::stream(5, &[]), 0.0, 1.0, 16).unwrap();
        let b = uniform_init(&mut rng::stream(5, &[]), 0.0, 1.0, 16).unwrap();
        assert_eq!(a, b);
        assert!(matches!(
            uniform_init(&mut r, 1.0, 1.0, 3),
            Err(Error::Range { .. })
        ));
        assert!(uniform_init(&mut r, 2.0, 1.0, 3).is_err());
    }

    #[test]
    fn xavier_dense_has_zero_biases() {
        let spec = DenseSpec::mlp(vec![7, 10, 1], Activation::Relu).unwrap();
        let p = init_dense(&spec, &mut rng::stream(0, &[]), InitScheme::Xavier).unwrap();
        assert_eq!(p.len(), spec.param_count());
        let offs = spec.layer_offsets();
        assert!(p[offs[0].1..offs[0].1 + 10].iter().all(|&b| b == 0.0));
        assert_eq!(p[offs[1].1], 0.0);
    }
}
