use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{count_in_window, pair_correlation_direct, PairWindow, Window};
use crate::error::{invalid, Result};
use crate::scalar::Real;
use crate::seqgen::PointArray;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "method")]
pub enum VarianceMethod {
    /// `L - L² + L·R²_N(L, Δ)`.
    Identity,
    /// Average of `(S_N - L)²` over uniformly drawn centres.
    MonteCarlo { samples: u64, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NumberVariance {
    pub value: f64,
    /// Standard error of the Monte-Carlo mean; `None` for the identity.
    pub stderr: Option<f64>,
}

/// `Σ²_N(L)`, the variance of the window count over a uniformly random centre.
pub fn number_variance<T: Real>(points: &PointArray<T>, scaled_length: f64, method: VarianceMethod) -> Result<NumberVariance> {
    match method {
        VarianceMethod::Identity => {
            let r2 = pair_correlation_direct(points, scaled_length, PairWindow::Triangle)?;
            Ok(NumberVariance {
                value: scaled_length - scaled_length * scaled_length + scaled_length * r2,
                stderr: None,
            })
        }
        VarianceMethod::MonteCarlo { samples, seed } => {
            if samples < 2 {
                return invalid("Monte-Carlo variance needs at least two samples");
            }
            let l = T::lit(scaled_length);
            Window::for_points(points, T::zero(), l)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            for _ in 0..samples {
                let x0 = T::lit(rng.random::<f64>());
                let w = Window::for_points(points, x0, l)?;
                let dev = count_in_window(points, &w) as f64 - scaled_length;
                let y = dev * dev;
                sum += y;
                sum_sq += y * y;
            }
            let n = samples as f64;
            let mean = sum / n;
            let var = (sum_sq / n - mean * mean).max(0.0) * n / (n - 1.0);
            Ok(NumberVariance {
                value: mean,
                stderr: Some((var / n).sqrt()),
            })
        }
    }
}
