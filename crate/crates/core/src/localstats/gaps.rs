use serde::Serialize;

use crate::error::{invalid, Result};
use crate::scalar::Real;
use crate::seqgen::PointArray;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GapConvention {
    /// `N` gaps including the wrap-around gap `ξ_1 + 1 - ξ_N`.
    Circular,
    /// `N - 1` gaps between consecutive sorted points, no wrap-around.
    OpenChain,
}

/// Nearest-neighbour gaps scaled by `N` (units of the mean spacing).
#[derive(Clone, Debug, PartialEq)]
pub struct GapStatistics<T> {
    gaps: Vec<T>,
    n: usize,
    convention: GapConvention,
}

impl<T: Real> GapStatistics<T> {
    /// Gaps already scaled to mean-spacing units, for an array of `n` points.
    pub fn from_scaled(gaps: Vec<T>, n: usize, convention: GapConvention) -> Self {
        Self { gaps, n, convention }
    }

    pub fn gaps(&self) -> &[T] {
        &self.gaps
    }

    /// Number of points the gaps were taken from.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn convention(&self) -> GapConvention {
        self.convention
    }
}

pub fn gap_statistics<T: Real>(points: &PointArray<T>, convention: GapConvention) -> Result<GapStatistics<T>> {
    let n = points.len();
    if n < 2 {
        return invalid("gap statistics need at least two points");
    }
    let scale = T::from_count(n);
    let p = points.points();
    let mut gaps: Vec<T> = p.windows(2).map(|w| scale * (w[1] - w[0])).collect();
    if convention == GapConvention::Circular {
        gaps.push(scale * (p[0] + T::one() - p[n - 1]));
    }
    Ok(GapStatistics { gaps, n, convention })
}

/// Binned gap frequencies on `[0, num_bins·bin_width)` plus the values that
/// fall beyond the last bin.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Histogram {
    pub bin_width: f64,
    pub num_bins: usize,
    /// Fraction of all values in each bin.
    pub masses: Vec<f64>,
    /// Values past the last bin edge, ascending.
    pub outliers: Vec<f64>,
    pub total: usize,
}

impl Histogram {
    pub fn bin_edges(&self, i: usize) -> (f64, f64) {
        (i as f64 * self.bin_width, (i + 1) as f64 * self.bin_width)
    }

    pub fn outlier_mass(&self) -> f64 {
        self.outliers.len() as f64 / self.total.max(1) as f64
    }

    /// `∫ e^{-s} ds` over bin `i`: the exponential (Poisson) gap law.
    pub fn exponential_reference(&self, i: usize) -> f64 {
        let (lo, hi) = self.bin_edges(i);
        (-lo).exp() - (-hi).exp()
    }
}

pub fn gap_histogram<T: Real>(gaps: &GapStatistics<T>, bin_width: f64, num_bins: usize) -> Result<Histogram> {
    if !(bin_width > 0.0 && bin_width.is_finite()) {
        return invalid(format!("bin width must be positive, got {bin_width}"));
    }
    if num_bins == 0 {
        return invalid("need at least one bin");
    }
    let total = gaps.gaps().len();
    let mut counts = vec![0usize; num_bins];
    let mut outliers = Vec::new();
    for g in gaps.gaps() {
        let s = g.to_f64_lossy();
        let bin = (s / bin_width).floor();
        if bin >= num_bins as f64 {
            outliers.push(s);
        } else {
            counts[bin.max(0.0) as usize] += 1;
        }
    }
    outliers.sort_by(|a, b| a.total_cmp(b));
    let norm = total.max(1) as f64;
    Ok(Histogram {
        bin_width,
        num_bins,
        masses: counts.into_iter().map(|c| c as f64 / norm).collect(),
        outliers,
        total,
    })
}

/// `1 - (1/N) Σ_j min(s_j, L)`, the fraction of centres whose window of
/// scaled length `L` is empty. Equals `E_N(0, L)` for circular gaps.
pub fn ep_zero_gap_transform<T: Real>(gaps: &GapStatistics<T>, scaled_length: T) -> Result<f64> {
    if gaps.convention() != GapConvention::Circular {
        return invalid("the empty-window identity needs circular gaps");
    }
    let sum = gaps
        .gaps()
        .iter()
        .fold(T::zero(), |acc, &s| acc + s.min(scaled_length));
    Ok((T::one() - sum / T::from_count(gaps.n())).to_f64_lossy())
}
