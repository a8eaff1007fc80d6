use serde::{Deserialize, Serialize};

/// Linear decay from `initial` to `final_value` over `final_step` steps,
/// constant afterwards. `eval` is used for evaluation episodes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsilonSchedule {
    pub initial: f64,
    pub final_value: f64,
    pub final_step: u64,
    pub eval: f64,
}

impl Default for EpsilonSchedule {
    fn default() -> Self {
        Self {
            initial: 1.0,
            final_value: 0.05,
            final_step: 50_000,
            eval: 0.001,
        }
    }
}

impl EpsilonSchedule {
    pub fn value(&self, step: u64) -> f64 {
        if step >= self.final_step {
            return self.final_value;
        }
        let frac = step as f64 / self.final_step as f64;
        self.initial + frac * (self.final_value - self.initial)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn endpoints() {
        let s = EpsilonSchedule::default();
        assert_eq!(s.value(0), 1.0);
        assert_eq!(s.value(50_000), 0.05);
        assert_eq!(s.value(1_000_000), 0.05);
        assert!((s.value(25_000) - 0.525).abs() < 1e-15);
    }

    proptest! {
        #[test]
        fn non_increasing(a in 0u64..120_000, b in 0u64..120_000) {
            let s = EpsilonSchedule::default();
            let (lo, hi) = (a.min(b), a.max(b));
            prop_assert!(s.value(hi) <= s.value(lo));
        }
    }
}
