//! Local statistics of a point array on the circle: window counts, the
//! exact count distribution `E_N(k, L)`, gaps, pair correlation and number
//! variance.
//!
//! Windows are half-open, `[x0 - ℓ/2, x0 + ℓ/2)` taken modulo one, with
//! `ℓ = L / N` so that `L` is measured in units of the mean spacing.

mod distribution;
mod gaps;
mod pair;
mod variance;

pub use distribution::CountDistribution;
pub use gaps::{ep_zero_gap_transform, gap_histogram, gap_statistics, GapConvention, GapStatistics, Histogram};
pub use pair::{
    fourier_cutoff_for, pair_correlation_direct, pair_correlation_fourier, FourierPairCorrelation, PairWindow,
};
pub use variance::{number_variance, NumberVariance, VarianceMethod};

use crate::error::{invalid, Result};
use crate::scalar::Real;
use crate::seqgen::PointArray;

/// A window of scaled length `L` centred at `x0`, for an array of `n` points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Window<T> {
    x0: T,
    scaled_length: T,
    n: usize,
}

impl<T: Real> Window<T> {
    pub fn new(x0: T, scaled_length: T, n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("window needs n >= 1");
        }
        if !x0.is_finite() {
            return invalid(format!("window centre must be finite, got {x0}"));
        }
        if !(scaled_length >= T::zero() && scaled_length.is_finite()) {
            return invalid(format!("scaled length must be non-negative, got {scaled_length}"));
        }
        if scaled_length > T::from_count(n) {
            return invalid(format!("window length L/n = {scaled_length}/{n} exceeds one"));
        }
        Ok(Self {
            x0: x0.frac1(),
            scaled_length,
            n,
        })
    }

    /// Window for `points` with scaled length `L`.
    pub fn for_points(points: &PointArray<T>, x0: T, scaled_length: T) -> Result<Self> {
        Self::new(x0, scaled_length, points.len())
    }

    pub fn x0(&self) -> T {
        self.x0
    }

    pub fn scaled_length(&self) -> T {
        self.scaled_length
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Unscaled length `ℓ = L / n`.
    pub fn ell(&self) -> T {
        self.scaled_length / T::from_count(self.n)
    }
}

/// Number of points in the half-open window `[x0 - ℓ/2, x0 + ℓ/2)` modulo one.
pub fn count_in_window<T: Real>(points: &PointArray<T>, w: &Window<T>) -> usize {
    count_in_arc(points.points(), w.x0() - w.ell() / T::lit(2.0), w.ell())
}

/// Points of the sorted slice `pts` inside `[start, start + len)` modulo one.
pub(crate) fn count_in_arc<T: Real>(pts: &[T], start: T, len: T) -> usize {
    if len >= T::one() {
        return pts.len();
    }
    let lo = start.frac1();
    let hi = lo + len;
    let below = |x: T| pts.partition_point(|p| *p < x);
    if hi <= T::one() {
        below(hi) - below(lo)
    } else {
        (pts.len() - below(lo)) + below(hi - T::one())
    }
}

/// Exact `E_N(k, L)`: the Lebesgue measure of the set of centres `x0` whose
/// window holds exactly `k` points, by a sweep over the `2N` window-entry and
/// window-exit positions.
pub fn count_distribution_exact<T: Real>(points: &PointArray<T>, scaled_length: T) -> Result<CountDistribution> {
    let n = points.len();
    let w = Window::new(T::zero(), scaled_length, n)?;
    let ell = w.ell();
    let half = ell / T::lit(2.0);

    // x0 covers p iff x0 lies in (p - ℓ/2, p + ℓ/2]; as a measure this is [s, s + ℓ).
    let mut events: Vec<(T, i8)> = Vec::with_capacity(2 * n);
    let mut active = 0usize;
    for &p in points.points() {
        let s = (p - half).frac1();
        let e = s + ell;
        if e > T::one() {
            active += 1;
            events.push((e - T::one(), -1));
        } else {
            events.push((e, -1));
        }
        events.push((s, 1));
    }
    // entries before exits at equal positions keep the running count non-negative
    events.sort_unstable_by(|a, b| a.0.partial_cmp(&b.0).expect("finite positions").then(b.1.cmp(&a.1)));

    let mut lengths: Vec<T> = vec![T::zero(); n + 2];
    let mut pos = T::zero();
    for (x, delta) in events {
        lengths[active] = lengths[active] + (x - pos);
        pos = x;
        active = if delta > 0 { active + 1 } else { active - 1 };
    }
    lengths[active] = lengths[active] + (T::one() - pos);

    while lengths.len() > 1 && lengths.last().is_some_and(|m| m.is_zero()) {
        lengths.pop();
    }
    Ok(CountDistribution::new(
        lengths.into_iter().map(Real::to_f64_lossy).collect(),
        None,
        scaled_length.to_f64_lossy(),
    ))
}
