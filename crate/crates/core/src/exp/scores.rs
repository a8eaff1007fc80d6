use crate::error::{Error, Result};

/// `(agent - random) / (human - random)`.
pub fn normalized_score(agent: f64, human: f64, random: f64) -> Result<f64> {
    let den = human - random;
    if den == 0.0 {
        return Err(Error::UndefinedNormalization(
            "human and random scores are equal".into(),
        ));
    }
    Ok((agent - random) / den)
}

/// `(a - b) / (max(b, human) - random)`: improvement of `a` over `b`.
pub fn relative_score(a: f64, b: f64, human: f64, random: f64) -> Result<f64> {
    let den = b.max(human) - random;
    if den == 0.0 {
        return Err(Error::UndefinedNormalization(
            "max(baseline, human) equals random".into(),
        ));
    }
    Ok((a - b) / den)
}
