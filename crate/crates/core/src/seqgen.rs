//! Point sequences on the unit torus: `{mα}`, `{√(mα)}`, i.i.d. uniform
//! draws, and density rescaling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// Where a point array came from.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "generator", rename_all = "kebab-case")]
pub enum Provenance {
    MAlpha { alpha: f64 },
    SqrtMAlpha { alpha: f64 },
    IidUniform { seed: u64 },
    Rescaled { source: Box<Provenance> },
    Explicit,
}

/// `n ≥ 1` points of `[0, 1)` in non-decreasing order.
#[derive(Clone, Debug, PartialEq)]
pub struct PointArray<T> {
    points: Vec<T>,
    provenance: Provenance,
}

impl<T: Real> PointArray<T> {
    /// Validates an already sorted list.
    pub fn from_sorted(points: Vec<T>, provenance: Provenance) -> Result<Self> {
        if points.is_empty() {
            return invalid("a point array needs at least one point");
        }
        if let Some(p) = points.iter().find(|p| !(**p >= T::zero() && **p < T::one())) {
            return invalid(format!("point {p} is outside [0, 1)"));
        }
        if points.windows(2).any(|w| w[1] < w[0]) {
            return invalid("points are not in non-decreasing order");
        }
        Ok(Self { points, provenance })
    }

    /// Stable-sorts `points` (ties keep their input order) and validates.
    pub fn from_unsorted(mut points: Vec<T>, provenance: Provenance) -> Result<Self> {
        if points.iter().any(|p| p.is_nan()) {
            return invalid("NaN point");
        }
        points.sort_by(|a, b| a.partial_cmp(b).expect("NaN filtered above"));
        Self::from_sorted(points, provenance)
    }

    pub fn explicit(points: &[T]) -> Result<Self> {
        Self::from_unsorted(points.to_vec(), Provenance::Explicit)
    }

    #[inline]
    pub fn points(&self) -> &[T] {
        &self.points
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false: arrays hold at least one point.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn into_points(self) -> Vec<T> {
        self.points
    }
}

fn check_count(n: usize) -> Result<()> {
    if n == 0 {
        return invalid("n must be at least 1");
    }
    Ok(())
}

/// Sorted fractional parts `{mα}`, `m = 1..=n`.
///
/// `α` is reduced modulo one before multiplying, so `α` and `α + 1` give the
/// same array whenever `α + 1` is exact.
pub fn gen_malpha<T: Real>(alpha: T, n: usize) -> Result<PointArray<T>> {
    check_count(n)?;
    if !alpha.is_finite() {
        return invalid(format!("alpha must be finite, got {alpha}"));
    }
    let a = alpha.frac1();
    let points = (1..=n).map(|m| (T::from_count(m) * a).frac1()).collect();
    PointArray::from_unsorted(
        points,
        Provenance::MAlpha {
            alpha: alpha.to_f64_lossy(),
        },
    )
}

/// Sorted fractional parts `{√(mα)}`, `m = 1..=n`. Perfect squares are kept.
///
/// The square root is taken in one operation on the product `m·α`.
pub fn gen_sqrt_malpha<T: Real>(alpha: T, n: usize) -> Result<PointArray<T>> {
    check_count(n)?;
    if !(alpha > T::zero() && alpha.is_finite()) {
        return invalid(format!("alpha must be positive and finite, got {alpha}"));
    }
    let points = (1..=n)
        .map(|m| (T::from_count(m) * alpha).sqrt().frac1())
        .collect();
    PointArray::from_unsorted(
        points,
        Provenance::SqrtMAlpha {
            alpha: alpha.to_f64_lossy(),
        },
    )
}

/// `n` independent uniform points, sorted. Deterministic in `seed`.
pub fn gen_iid_uniform<T: Real>(n: usize, seed: u64) -> Result<PointArray<T>> {
    check_count(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points = (0..n)
        .map(|_| T::lit(rng.random::<f64>()).frac1())
        .collect();
    PointArray::from_unsorted(points, Provenance::IidUniform { seed })
}

/// Applies a monotone `cdf` pointwise. If the input has integrated density
/// `cdf`, the output is uniformly distributed.
pub fn rescale_by_density<T: Real, F>(points: &PointArray<T>, cdf: F) -> Result<PointArray<T>>
where
    F: Fn(T) -> T,
{
    let mut out = Vec::with_capacity(points.len());
    for &p in points.points() {
        let v = cdf(p);
        if !(v >= T::zero() && v < T::one()) {
            return Err(Error::InvalidArgument(format!(
                "cdf({p}) = {v} is outside [0, 1)"
            )));
        }
        if out.last().is_some_and(|&prev| v < prev) {
            return invalid(format!("cdf is not monotone near {p}"));
        }
        out.push(v);
    }
    PointArray::from_sorted(
        out,
        Provenance::Rescaled {
            source: Box::new(points.provenance().clone()),
        },
    )
}
