//! Baselines for independent random points: the Poisson law, the central
//! limit regime, and the independent-indicator model for `√(mα)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};
use statrs::function::gamma::ln_gamma;

use crate::error::{invalid, Error, Result};
use crate::localstats::{count_in_window, number_variance, CountDistribution, VarianceMethod, Window};
use crate::seqgen::{PointArray, Provenance};

/// `L^k e^{-L} / k!`, evaluated in log space.
pub fn poisson_pmf(k: u64, scaled_length: f64) -> f64 {
    if scaled_length == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if k == 0 {
        return (-scaled_length).exp();
    }
    (k as f64 * scaled_length.ln() - scaled_length - ln_gamma(k as f64 + 1.0)).exp()
}

/// How the scaled length `L` grows with `N` in the central limit regime.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "rule")]
pub enum LengthRule {
    /// `L = √N`.
    Sqrt,
    /// `L = N^exponent`.
    Power { exponent: f64 },
    /// `L` independent of `N`.
    Fixed { value: f64 },
}

impl LengthRule {
    pub fn length_for(&self, n: usize) -> f64 {
        let n = n as f64;
        match *self {
            LengthRule::Sqrt => n.sqrt(),
            LengthRule::Power { exponent } => n.powf(exponent),
            LengthRule::Fixed { value } => value,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CltResult {
    /// Kolmogorov distance of the standardised counts to the standard normal.
    pub ks_distance: f64,
    pub scaled_length: f64,
    pub trials: u64,
    /// Standardised counts `(S_N - L)/Σ_N(L)`, in trial order.
    pub standardized: Vec<f64>,
}

/// Trials per RNG stream.
const CLT_SHARD: u64 = 64;

/// For each trial draw a fresh i.i.d. array of `n` points and a uniform
/// centre, and standardise the window count by the array's own number
/// variance. Returns the Kolmogorov distance of the sample to `N(0, 1)`.
pub fn clt_statistic(n: usize, rule: LengthRule, trials: u64, seed: u64) -> Result<CltResult> {
    if trials == 0 {
        return invalid("the CLT statistic needs at least one trial");
    }
    if n == 0 {
        return invalid("the CLT statistic needs n ≥ 1");
    }
    let big_l = rule.length_for(n);
    if !(big_l > 0.0 && big_l <= n as f64 / 2.0) {
        return invalid(format!("scaled length L = {big_l} must lie in (0, n/2]"));
    }
    let shards = trials.div_ceil(CLT_SHARD);
    let parts: Vec<Result<Vec<f64>>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            let count = CLT_SHARD.min(trials - s * CLT_SHARD);
            let mut out = Vec::with_capacity(count as usize);
            for _ in 0..count {
                let pts: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
                let arr = PointArray::from_unsorted(pts, Provenance::IidUniform { seed })?;
                let x0 = rng.random::<f64>();
                let s_n = count_in_window(&arr, &Window::new(x0, big_l, n)?) as f64;
                let var = number_variance(&arr, big_l, VarianceMethod::Identity)?.value;
                if !(var > 0.0) {
                    return Err(Error::NumericFailure(format!("number variance {var} is not positive")));
                }
                out.push((s_n - big_l) / var.sqrt());
            }
            Ok(out)
        })
        .collect();
    let mut standardized = Vec::with_capacity(trials as usize);
    for p in parts {
        standardized.extend(p?);
    }
    let normal = Normal::standard();
    let ks_distance = ks_distance(&standardized, |z| normal.cdf(z));
    Ok(CltResult {
        ks_distance,
        scaled_length: big_l,
        trials,
        standardized,
    })
}

/// Kolmogorov distance `sup |F_n - F|` of a sample to a continuous CDF.
pub fn ks_distance<F: Fn(f64) -> f64>(sample: &[f64], cdf: F) -> f64 {
    let mut s = sample.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    let mut d: f64 = 0.0;
    let mut i = 0;
    while i < s.len() {
        // ties: the empirical CDF jumps over the whole block at once
        let mut j = i;
        while j + 1 < s.len() && s[j + 1] == s[i] {
            j += 1;
        }
        let f = cdf(s[i]);
        d = d.max(f - i as f64 / n).max((j + 1) as f64 / n - f);
        i = j + 1;
    }
    d
}

/// Trials per RNG stream of the indicator model.
const X_MODEL_SHARD: u64 = 1 << 16;

/// Empirical law of `X = Σ_{m=1}^{M} X_m` with independent
/// `X_m = 1{|η_m| ≤ Lm/M²}`, `η_m` uniform on `[-1/2, 1/2)`, so that
/// `P(X_m = 1) = 2Lm/M²`.
///
/// Each trial is sampled exactly by thinning: candidates arrive at rate
/// `2L/M` through geometric skips and a candidate at `m` is kept with
/// probability `m/M`.
pub fn heuristic_x_model(big_m: u64, scaled_length: f64, trials: u64, seed: u64) -> Result<CountDistribution> {
    if big_m == 0 || trials == 0 {
        return invalid("the indicator model needs M ≥ 1 and at least one trial");
    }
    if !(scaled_length >= 0.0) || 2.0 * scaled_length > big_m as f64 {
        return invalid(format!("need 0 ≤ 2L/M ≤ 1, got L = {scaled_length}, M = {big_m}"));
    }
    if scaled_length == 0.0 {
        return Ok(CountDistribution::from_tally(&[trials], 0.0));
    }
    let p_max = 2.0 * scaled_length / big_m as f64;
    let log_q = (-p_max).ln_1p();
    let mf = big_m as f64;
    let shards = trials.div_ceil(X_MODEL_SHARD);
    let tallies: Vec<Vec<u64>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            let count = X_MODEL_SHARD.min(trials - s * X_MODEL_SHARD);
            let mut tally = vec![0u64; 1];
            for _ in 0..count {
                let mut x = 0usize;
                let mut m = 0u64;
                loop {
                    // next candidate index: m += 1 + Geometric(p_max)
                    let skip = if p_max >= 1.0 {
                        0.0
                    } else {
                        let u = 1.0 - rng.random::<f64>();
                        (u.ln() / log_q).floor()
                    };
                    if skip >= (big_m - m) as f64 {
                        break;
                    }
                    m += 1 + skip as u64;
                    if rng.random::<f64>() * mf < m as f64 {
                        x += 1;
                    }
                }
                if x >= tally.len() {
                    tally.resize(x + 1, 0);
                }
                tally[x] += 1;
            }
            tally
        })
        .collect();
    let mut tally = vec![0u64; 1];
    for t in tallies {
        if t.len() > tally.len() {
            tally.resize(t.len(), 0);
        }
        for (k, c) in t.into_iter().enumerate() {
            tally[k] += c;
        }
    }
    Ok(CountDistribution::from_tally(&tally, scaled_length))
}
