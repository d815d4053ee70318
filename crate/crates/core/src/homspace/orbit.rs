//! Window counts of `{mα}` and `{√m}` written as `F` along flow orbits.

use serde::{Deserialize, Serialize};

use super::group::{embed, flow_scale, Embedding, GroupElement};
use super::lattice::f_count;
use super::testfn::TestFunction2D;
use crate::error::{invalid, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrbitKind {
    MAlpha,
    Sqrt,
}

/// The point `n₋(α, -x0)·Φ^{2 log n}`, i.e.
/// `M = [[1/n, α n], [0, n]]` and `ξ = (0, -x0 n)`.
pub fn malpha_orbit_point<T: Real>(alpha: T, x0: T, n: usize) -> Result<GroupElement<T>> {
    flow_scale(
        &embed(Embedding::NMinus { alpha, y: -x0 }),
        T::from_count(n),
    )
}

/// The point `n₁(x0)·Φ^{log n}`, i.e.
/// `M = [[n^{-1/2}, 2 x0 n^{1/2}], [0, n^{1/2}]]` and
/// `ξ = (x0 n^{-1/2}, x0² n^{1/2})`.
pub fn sqrt_orbit_point<T: Real>(x0: T, n: usize) -> Result<GroupElement<T>> {
    flow_scale(&embed(Embedding::NOne { x: x0 }), T::from_count(n).sqrt())
}

/// Lattice count along the orbit.
///
/// `MAlpha` counts `1 ≤ m ≤ n` with `mα` in the closed window
/// `x0 ± L/(2n)` mod 1 (rectangle test function). `Sqrt` evaluates the
/// triangle test function at the `√m` orbit point and only supports
/// `α = 1`. `L = 0` gives an empty window.
pub fn orbit_count<T: Real>(kind: OrbitKind, alpha: T, x0: T, n: usize, scaled_length: T) -> Result<u64> {
    if n == 0 {
        return invalid("orbit count needs n ≥ 1");
    }
    if !(scaled_length >= T::zero()) {
        return invalid(format!("orbit count needs L ≥ 0, got {scaled_length}"));
    }
    if scaled_length == T::zero() {
        return Ok(0);
    }
    match kind {
        OrbitKind::MAlpha => {
            let g = malpha_orbit_point(alpha, x0, n)?;
            f_count(&g, &TestFunction2D::rectangle(scaled_length)?)
        }
        OrbitKind::Sqrt => {
            if alpha != T::one() {
                return invalid(format!("the √m orbit is only available for α = 1, got {alpha}"));
            }
            let g = sqrt_orbit_point(x0, n)?;
            f_count(&g, &TestFunction2D::triangle(scaled_length)?)
        }
    }
}

/// Direct evaluation of
/// `Σ_{(m,n)} χ_{(-ε, 1+ε]}((x0 - m)/√(Nα)) · χ_{[-L, L)}((N^{1/2}(nα - (x0-m)²) + δ) / (N^{-1/2}(x0 - m)))`.
///
/// Both indicators have bounded support: the first confines `x0 - m` to an
/// interval of length `(1 + 2ε)√(Nα)`, and for each such `m` the second
/// confines `nα` to an interval of length `2L|x0 - m|/N`.
pub fn s_tilde_direct(alpha: f64, x0: f64, n: usize, scaled_length: f64, eps: f64, delta: f64) -> Result<u64> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return invalid(format!("S̃ needs α > 0, got {alpha}"));
    }
    if n == 0 {
        return invalid("S̃ needs N ≥ 1");
    }
    if !(scaled_length >= 0.0 && eps >= 0.0 && delta.is_finite()) {
        return invalid("S̃ needs L ≥ 0, ε ≥ 0 and finite δ");
    }
    let big_n = n as f64;
    let root = (big_n * alpha).sqrt();
    let (sqrt_n, inv_sqrt_n) = (big_n.sqrt(), 1.0 / big_n.sqrt());
    let l = scaled_length;

    let x_indicator = |x: f64| {
        let s = x / root;
        -eps < s && s <= 1.0 + eps
    };
    let y_indicator = |x: f64, k: f64| {
        let s = (sqrt_n * (k * alpha - x * x) + delta) / (inv_sqrt_n * x);
        -l <= s && s < l
    };

    // x0 - m ∈ (-ε√(Nα), (1+ε)√(Nα)]
    let m_lo = (x0 - (1.0 + eps) * root).floor() as i64 - 1;
    let m_hi = (x0 + eps * root).ceil() as i64 + 1;
    let mut count = 0u64;
    for m in m_lo..=m_hi {
        let x = x0 - m as f64;
        if x == 0.0 || !x_indicator(x) {
            continue;
        }
        // nα between x² + (±L|x| - δ)/N
        let a = x * x + (-l * x.abs() - delta) / big_n;
        let b = x * x + (l * x.abs() - delta) / big_n;
        let k_lo = (a / alpha).floor() as i64 - 1;
        let k_hi = (b / alpha).ceil() as i64 + 1;
        for k in k_lo..=k_hi {
            if y_indicator(x, k as f64) {
                count += 1;
            }
        }
    }
    Ok(count)
}
