//! The inertial moving average: a recursive filter whose inertia parameter
//! weighs the running value against each new sample.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One inertial-moving-average accumulator.
///
/// The update is `value = value * alpha + (1 - alpha) * sample`, so
/// `alpha = 0` follows the input exactly and `alpha = 1` never moves.
/// The value stays inside the convex hull of the seed and every sample
/// seen, so nonnegative inputs keep it nonnegative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ImaState {
    value: f64,
    alpha: f64,
}

impl ImaState {
    /// Seeds the filter. `alpha` is fixed for the lifetime of the state.
    pub fn new(alpha: f64, seed_value: f64) -> Self {
        debug_assert!((0.0..=1.0).contains(&alpha));
        Self {
            value: seed_value,
            alpha,
        }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Folds one sample into the running value. Rejects negative samples;
    /// lux is a nonnegative quantity and a negative reading means the
    /// caller skipped clamping.
    pub fn update(&mut self, sample: f64) -> Result<()> {
        if sample < 0.0 {
            return Err(Error::NegativeSample { value: sample });
        }
        self.value = self.value * self.alpha + (1.0 - self.alpha) * sample;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Independent oracle: after n updates with constant input c from v0,
    /// the filter value is alpha^n * v0 + (1 - alpha^n) * c.
    fn closed_form(alpha: f64, v0: f64, c: f64, n: u32) -> f64 {
        let an = alpha.powi(n as i32);
        an * v0 + (1.0 - an) * c
    }

    #[test]
    fn zero_inertia_follows_input() {
        let mut ima = ImaState::new(0.0, 123.0);
        ima.update(7.5).unwrap();
        assert_eq!(ima.value(), 7.5);
    }

    #[test]
    fn full_inertia_never_moves() {
        let mut ima = ImaState::new(1.0, 3.25);
        for s in [0.0, 100.0, 1e4] {
            ima.update(s).unwrap();
        }
        assert_eq!(ima.value(), 3.25);
    }

    #[test]
    fn matches_geometric_closed_form() {
        for &alpha in &[0.0, 0.5, 0.9, 0.99, 1.0] {
            let mut ima = ImaState::new(alpha, 0.0);
            for n in 1..=1000u32 {
                ima.update(10.0).unwrap();
                let expect = closed_form(alpha, 0.0, 10.0, n);
                assert_relative_eq!(ima.value(), expect, max_relative = 1e-12, epsilon = 1e-300);
            }
        }
    }

    #[test]
    fn rejects_negative_sample() {
        let mut ima = ImaState::new(0.5, 1.0);
        assert!(matches!(
            ima.update(-0.1),
            Err(Error::NegativeSample { .. })
        ));
        // state untouched on error
        assert_eq!(ima.value(), 1.0);
    }
}
