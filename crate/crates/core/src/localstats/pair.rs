use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::scalar::Real;
use crate::seqgen::PointArray;

/// One-dimensional test window `ψ` for the pair correlation sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairWindow {
    /// `Δ(x) = max(1 - |x|, 0)`.
    Triangle,
    /// Indicator of `[-1/2, 1/2)`.
    Box,
}

impl PairWindow {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            PairWindow::Triangle => (1.0 - x.abs()).max(0.0),
            PairWindow::Box => {
                if (-0.5..0.5).contains(&x) {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    /// `ψ` vanishes outside `(-r, r)`.
    pub fn support_radius(self) -> f64 {
        match self {
            PairWindow::Triangle => 1.0,
            PairWindow::Box => 0.5,
        }
    }

    /// `ψ̂(y) = ∫ ψ(x) e(-xy) dx`.
    pub fn fourier(self, y: f64) -> f64 {
        let sinc = if y == 0.0 { 1.0 } else { (PI * y).sin() / (PI * y) };
        match self {
            PairWindow::Triangle => sinc * sinc,
            PairWindow::Box => sinc,
        }
    }

    /// Upper bound for `Σ_{|n| > n_max} |ψ̂(ℓ n)|`, when the series converges
    /// absolutely. `|ψ̂_Δ(y)| ≤ (πy)^{-2}` and `Σ_{n>K} n^{-2} < 1/K`.
    pub fn fourier_tail_bound(self, ell: f64, n_max: u64) -> Option<f64> {
        match self {
            PairWindow::Triangle => Some(2.0 / (PI * PI * ell * ell * n_max as f64)),
            PairWindow::Box => None,
        }
    }
}

/// `R²_N(L, ψ) = (1/N) Σ_{i≠j} Σ_m ψ((ξ_i - ξ_j + m)/ℓ)`, summed directly
/// over the pairs closer than the window support.
///
/// Requires `ℓ·r ≤ 1/2` (`r` the support radius) so that each pair meets the
/// window in at most one periodic image.
pub fn pair_correlation_direct<T: Real>(points: &PointArray<T>, scaled_length: f64, window: PairWindow) -> Result<f64> {
    let n = points.len();
    let ell = check_length(n, scaled_length)?;
    if ell * window.support_radius() > 0.5 {
        return invalid(format!(
            "window length ℓ = {ell} too large for an unambiguous wrap-around"
        ));
    }
    if ell == 0.0 {
        return Ok(0.0);
    }
    let p: Vec<f64> = points.points().iter().map(|x| x.to_f64_lossy()).collect();
    if window == PairWindow::Triangle && scaled_length > PREFIX_SUM_THRESHOLD {
        return Ok(triangle_pair_sum_prefix(&p, ell) / n as f64);
    }
    let reach = ell * window.support_radius();
    let mut sum = 0.0;
    for i in 0..n {
        // walk forward around the doubled array while the gap stays inside the support
        for step in 1..n {
            let j = i + step;
            let d = if j < n { p[j] - p[i] } else { p[j - n] + 1.0 - p[i] };
            if d >= reach {
                break;
            }
            sum += window.eval(d / ell) + window.eval(-d / ell);
        }
    }
    Ok(sum / n as f64)
}

/// Above this many expected neighbours per point the triangle sum switches
/// from the pairwise scan to prefix sums.
const PREFIX_SUM_THRESHOLD: f64 = 32.0;

/// `Σ_{i≠j} Δ((ξ_i - ξ_j)/ℓ)` over sorted points in `O(N)`: for each `i` the
/// forward neighbours `j` with gap `d < ℓ` contribute `2(1 - d/ℓ)`, and their
/// gaps are summed from prefix sums of the unrolled array.
pub(crate) fn triangle_pair_sum_prefix(p: &[f64], ell: f64) -> f64 {
    let n = p.len();
    let at = |j: usize| if j < n { p[j] } else { p[j - n] + 1.0 };
    let mut prefix = Vec::with_capacity(2 * n + 1);
    prefix.push(0.0);
    let mut acc = 0.0;
    for j in 0..2 * n {
        acc += at(j);
        prefix.push(acc);
    }
    let mut total = 0.0;
    let mut j = 0;
    for i in 0..n {
        j = j.max(i);
        while j + 1 < i + n && at(j + 1) - p[i] < ell {
            j += 1;
        }
        let c = (j - i) as f64;
        if c > 0.0 {
            let gaps = (prefix[j + 1] - prefix[i + 1]) - c * p[i];
            total += 2.0 * (c - gaps / ell);
        }
    }
    total
}

/// Pair correlation from the truncated Fourier series together with a bound
/// on the neglected terms.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FourierPairCorrelation {
    pub value: f64,
    pub n_max: u64,
    /// Bound on the modes `|n| > n_max`.
    pub truncation_bound: f64,
    /// Allowance for rounding in the exponential sums.
    pub rounding_bound: f64,
}

impl FourierPairCorrelation {
    pub fn error_bound(&self) -> f64 {
        self.truncation_bound + self.rounding_bound
    }
}

/// Number of Fourier modes that brings the triangle-window truncation bound
/// of [`pair_correlation_fourier`] below `target`.
pub fn fourier_cutoff_for(n: usize, scaled_length: f64, target: f64) -> u64 {
    let n = n as f64;
    (2.0 * n * (n - 1.0) / (PI * PI * scaled_length * target)).ceil().max(1.0) as u64
}

const MODE_CHUNK: u64 = 4096;

/// `(L/N²) Σ_{|n| ≤ n_max} ψ̂(Ln/N) (|Σ_j e(nξ_j)|² - N)`.
///
/// The exponential sums are advanced by a rotation recurrence, re-seeded
/// from `cos`/`sin` at the start of every chunk of modes; chunks are reduced
/// in a fixed order so the result does not depend on the thread count.
pub fn pair_correlation_fourier<T: Real>(
    points: &PointArray<T>,
    scaled_length: f64,
    window: PairWindow,
    n_max: u64,
) -> Result<FourierPairCorrelation> {
    let n = points.len();
    let ell = check_length(n, scaled_length)?;
    if n_max == 0 {
        return invalid("n_max must be at least 1");
    }
    if ell == 0.0 {
        return Ok(FourierPairCorrelation {
            value: 0.0,
            n_max,
            truncation_bound: 0.0,
            rounding_bound: 0.0,
        });
    }
    let Some(tail) = window.fourier_tail_bound(ell, n_max) else {
        return invalid("window transform has no absolutely summable tail");
    };
    let p: Vec<f64> = points.points().iter().map(|x| x.to_f64_lossy()).collect();
    let nf = n as f64;

    let chunks: Vec<u64> = (0..n_max.div_ceil(MODE_CHUNK)).collect();
    let partial: Vec<f64> = chunks
        .par_iter()
        .map(|&c| {
            let first = c * MODE_CHUNK + 1;
            let last = ((c + 1) * MODE_CHUNK).min(n_max);
            let mut cur: Vec<(f64, f64)> = p
                .iter()
                .map(|&x| {
                    let phase = 2.0 * PI * ((first as f64) * x).rem_euclid(1.0);
                    (phase.cos(), phase.sin())
                })
                .collect();
            let step: Vec<(f64, f64)> = p
                .iter()
                .map(|&x| ((2.0 * PI * x).cos(), (2.0 * PI * x).sin()))
                .collect();
            let mut acc = 0.0;
            for mode in first..=last {
                let (mut re, mut im) = (0.0, 0.0);
                for (z, w) in cur.iter_mut().zip(&step) {
                    re += z.0;
                    im += z.1;
                    *z = (z.0 * w.0 - z.1 * w.1, z.0 * w.1 + z.1 * w.0);
                }
                acc += window.fourier(ell * mode as f64) * (re * re + im * im - nf);
            }
            acc
        })
        .collect();
    let modes: f64 = partial.iter().sum();
    let scale = scaled_length / (nf * nf);
    let value = scale * (window.fourier(0.0) * (nf * nf - nf) + 2.0 * modes);
    Ok(FourierPairCorrelation {
        value,
        n_max,
        truncation_bound: scale * nf * (nf - 1.0) * tail,
        rounding_bound: scale * 2.0 * (n_max as f64) * nf * nf * (MODE_CHUNK as f64) * 4.0 * f64::EPSILON,
    })
}

fn check_length(n: usize, scaled_length: f64) -> Result<f64> {
    if !(scaled_length >= 0.0 && scaled_length.is_finite()) {
        return invalid(format!("scaled length must be non-negative, got {scaled_length}"));
    }
    Ok(scaled_length / n as f64)
}
