//! Monte-Carlo estimates of `E_N(k, L)` for `{mα}` over random parameters.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{invalid, Result};
use crate::localstats::{count_in_window, CountDistribution, Window};
use crate::seqgen::gen_malpha;

/// Draws per RNG stream.
const SHARD: u64 = 256;

/// How the window centre is chosen for each draw of `α`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Centre {
    Random,
    Fixed(f64),
}

/// Empirical law of the window count of `{mα}`, `m ≤ n`, with `α` uniform
/// on `[0, 1)` and the centre either uniform or fixed.
pub fn malpha_count_law(n: usize, scaled_length: f64, centre: Centre, samples: u64, seed: u64) -> Result<CountDistribution> {
    if samples == 0 {
        return invalid("need at least one sample");
    }
    Window::new(0.0, scaled_length, n)?;
    let shards = samples.div_ceil(SHARD);
    let parts: Vec<Result<Vec<usize>>> = (0..shards)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(s);
            let count = SHARD.min(samples - s * SHARD);
            let mut out = Vec::with_capacity(count as usize);
            for _ in 0..count {
                let alpha = rng.random::<f64>();
                let x0 = match centre {
                    Centre::Random => rng.random::<f64>(),
                    Centre::Fixed(x) => x,
                };
                let pts = gen_malpha(alpha, n)?;
                out.push(count_in_window(&pts, &Window::new(x0, scaled_length, n)?));
            }
            Ok(out)
        })
        .collect();
    let mut counts = Vec::with_capacity(samples as usize);
    for p in parts {
        counts.extend(p?);
    }
    Ok(CountDistribution::from_counts(counts, scaled_length))
}
