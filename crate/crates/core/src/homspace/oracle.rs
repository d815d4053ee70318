use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::haar::HaarSampler;
use super::lattice::f_count;
use super::testfn::TestFunction2D;
use crate::error::{invalid, Result};
use crate::localstats::CountDistribution;

/// Samples per shard. Shard `s` draws from ChaCha stream `s` of the master
/// seed, so the merged tally does not depend on how shards are scheduled.
pub const SHARD_SIZE: u64 = 1 << 14;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OracleEstimate {
    /// Empirical `E(k, L)` with binomial standard errors.
    pub distribution: CountDistribution,
    pub accepted: u64,
    pub proposed: u64,
}

impl OracleEstimate {
    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.proposed as f64
    }

    pub fn acceptance_stderr(&self) -> f64 {
        let p = self.acceptance_rate();
        (p * (1.0 - p) / self.proposed as f64).sqrt()
    }
}

/// Monte-Carlo estimate of `E(k, L) = μ{F = k}` under the normalised Haar
/// measure on `Γ\G`. The tally covers every observed `k` and is padded with
/// zeros up to `k_max`.
pub fn ekl_oracle(psi: &TestFunction2D<f64>, k_max: usize, samples: u64, seed: u64) -> Result<OracleEstimate> {
    if samples == 0 {
        return invalid("the oracle needs at least one sample");
    }
    let shards = samples.div_ceil(SHARD_SIZE);
    let parts: Vec<Result<(Vec<u64>, u64, u64)>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            let mut sampler = HaarSampler::from_rng(rng);
            let n = SHARD_SIZE.min(samples - s * SHARD_SIZE);
            let mut tally = vec![0u64; k_max + 1];
            for _ in 0..n {
                let k = f_count(&sampler.sample().g, psi)? as usize;
                if k >= tally.len() {
                    tally.resize(k + 1, 0);
                }
                tally[k] += 1;
            }
            let (acc, prop) = sampler.acceptance();
            Ok((tally, acc, prop))
        })
        .collect();

    let mut tally = vec![0u64; k_max + 1];
    let (mut accepted, mut proposed) = (0, 0);
    for part in parts {
        let (t, a, p) = part?;
        if t.len() > tally.len() {
            tally.resize(t.len(), 0);
        }
        for (k, c) in t.into_iter().enumerate() {
            tally[k] += c;
        }
        accepted += a;
        proposed += p;
    }
    Ok(OracleEstimate {
        distribution: CountDistribution::from_tally(&tally, psi.scaled_length()),
        accepted,
        proposed,
    })
}
