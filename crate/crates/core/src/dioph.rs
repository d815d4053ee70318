//! Continued fractions, Diophantine type, the three-gap structure of `{mα}`,
//! interval counts of `{mα}` and averages of `‖mα‖^{-β}`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::localstats::{gap_statistics, GapConvention};
use crate::seqgen::gen_malpha;

/// Distance to the nearest integer.
pub fn dist_to_int(x: f64) -> f64 {
    (x - x.round()).abs()
}

/// First `depth` partial quotients of `alpha` by the Gauss map in double
/// precision. Stops early once the complete quotient is within `1e-12`
/// (relative) of an integer.
pub fn continued_fraction(alpha: f64, depth: usize) -> Result<Vec<i64>> {
    if depth == 0 {
        return invalid("continued fraction depth must be at least 1");
    }
    if !alpha.is_finite() {
        return invalid(format!("alpha must be finite, got {alpha}"));
    }
    let mut out = Vec::with_capacity(depth);
    let mut x = alpha;
    loop {
        let near = x.round();
        // an integer up to rounding (1/3 → 2.9999999999999996) ends the expansion
        if (x - near).abs() < 1e-12 * x.abs().max(1.0) {
            out.push(near as i64);
            return Ok(out);
        }
        let a = x.floor();
        out.push(a as i64);
        if out.len() == depth {
            return Ok(out);
        }
        x = 1.0 / (x - a);
    }
}

/// Finite-data estimate of the Diophantine type of `α`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DiophantineProfile {
    pub alpha: f64,
    pub partial_quotients: Vec<i64>,
    /// `≥ 2`. Slope of `log(1/‖qα‖)` against `log q` over the best
    /// approximations `q ≤ q_max`, plus one.
    pub kappa_estimate: f64,
    /// `min_{q ≤ q_max} q^{κ-1}‖qα‖` for the returned `κ`.
    pub c_estimate: f64,
    pub q_max: u64,
    /// Denominators `q ≥ 2` at which `‖qα‖` reaches a new minimum, with that minimum.
    pub best_approximations: Vec<(u64, f64)>,
    /// False if there are fewer than four best approximations past `q = 1`,
    /// or if the upper half of them disagrees with the full fit by more
    /// than `0.25` in `κ`.
    pub stable: bool,
}

const PARTIAL_QUOTIENT_DEPTH: usize = 20;

fn slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Estimate `(κ, c)` with `|α - p/q| > c/q^κ` from `q = 1..=q_max`.
///
/// Finite data can only ever suggest a type: the profile records `q_max`
/// and whether the fit looked settled.
pub fn dioph_type_estimate(alpha: f64, q_max: u64) -> Result<DiophantineProfile> {
    if q_max < 2 {
        return invalid("type estimation needs q_max ≥ 2");
    }
    if !alpha.is_finite() {
        return invalid(format!("alpha must be finite, got {alpha}"));
    }
    let a = alpha - alpha.floor();
    let norm = |q: u64| dist_to_int(q as f64 * a);
    let mut best = f64::INFINITY;
    let mut records = Vec::new();
    for q in 1..=q_max {
        let d = norm(q);
        if d < best {
            best = d;
            if q >= 2 && d > 0.0 {
                records.push((q, d));
            }
        }
        if d == 0.0 {
            return Err(Error::SingularInput(format!("‖{q}α‖ = 0: α looks rational")));
        }
    }
    let logs: Vec<(f64, f64)> = records.iter().map(|&(q, d)| ((q as f64).ln(), -d.ln())).collect();
    let full = slope(&logs);
    let upper = slope(&logs[logs.len() / 2..]);
    let kappa = full.map_or(2.0, |s| (1.0 + s).max(2.0));
    let stable = logs.len() >= 4
        && match (full, upper) {
            (Some(f), Some(u)) => (f - u).abs() <= 0.25,
            _ => false,
        };
    let c = (1..=q_max)
        .map(|q| (q as f64).powf(kappa - 1.0) * norm(q))
        .fold(f64::INFINITY, f64::min);
    Ok(DiophantineProfile {
        alpha,
        partial_quotients: continued_fraction(alpha, PARTIAL_QUOTIENT_DEPTH)?,
        kappa_estimate: kappa,
        c_estimate: c,
        q_max,
        best_approximations: records,
        stable,
    })
}

/// Distinct circular gap lengths of `{mα}`, `m = 1..=n`, in mean-spacing
/// units. Gaps within `tol` of the smallest member of a group are merged.
pub fn three_gap_check(alpha: f64, n: usize, tol: f64) -> Result<Vec<f64>> {
    if n < 2 {
        return invalid("three-gap check needs n ≥ 2");
    }
    let pts = gen_malpha(alpha, n)?;
    let mut gaps = gap_statistics(&pts, GapConvention::Circular)?.gaps().to_vec();
    gaps.sort_by(f64::total_cmp);
    let mut reps: Vec<f64> = Vec::new();
    for g in gaps {
        match reps.last() {
            Some(&r) if g - r <= tol => {}
            _ => reps.push(g),
        }
    }
    Ok(reps)
}

/// `#{1 ≤ m ≤ n : mα ∈ [x0, x0 + ℓ] + ℤ}`.
pub fn count_in_closed_arc(alpha: f64, n: u64, x0: f64, ell: f64) -> u64 {
    let a = alpha - alpha.floor();
    let x0 = x0 - x0.floor();
    (1..=n)
        .filter(|&m| {
            let p = m as f64 * a;
            let d = (p - p.floor() - x0).rem_euclid(1.0);
            d <= ell || ell >= 1.0
        })
        .count() as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountingRegime {
    /// `n^{κ-1} ℓ < c`: every pair of points is further apart than `ℓ`.
    Sparse,
    Bulk,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CountingReport {
    pub count: u64,
    pub bound: f64,
    pub regime: CountingRegime,
    pub satisfied: bool,
}

/// Interval count of `{mα}` against its Diophantine bound: at most one point
/// when `n^{κ-1}ℓ < c`, and at most `B n ℓ^{1/(κ-1)}` otherwise.
pub fn counting_bound_check(
    profile: &DiophantineProfile,
    n: u64,
    x0: f64,
    ell: f64,
    constant: f64,
) -> Result<CountingReport> {
    if profile.q_max < n {
        return invalid(format!("profile covers q ≤ {} but n = {n}", profile.q_max));
    }
    if !(ell >= 0.0 && ell <= 1.0) {
        return invalid(format!("interval length must lie in [0, 1], got {ell}"));
    }
    let k = profile.kappa_estimate;
    let count = count_in_closed_arc(profile.alpha, n, x0, ell);
    let (regime, bound) = if (n as f64).powf(k - 1.0) * ell < profile.c_estimate {
        (CountingRegime::Sparse, 1.0)
    } else {
        (CountingRegime::Bulk, constant * n as f64 * ell.powf(1.0 / (k - 1.0)))
    };
    Ok(CountingReport {
        count,
        bound,
        regime,
        satisfied: count as f64 <= bound,
    })
}

/// A random interval `[x0, x0 + ℓ]` with `x0` uniform and `ℓ` log-uniform
/// between a hundredth of the sparse threshold `c/n^{κ-1}` and `1/2`.
pub fn random_interval(profile: &DiophantineProfile, n: u64, rng: &mut ChaCha8Rng) -> (f64, f64) {
    let lo = (0.01 * profile.c_estimate / (n as f64).powf(profile.kappa_estimate - 1.0)).min(0.5);
    let (a, b) = (lo.ln(), 0.5f64.ln());
    let x0 = rng.random::<f64>();
    let ell = (a + (b - a) * rng.random::<f64>()).exp();
    (x0, ell)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CountingCalibration {
    /// Largest `count / (n ℓ^{1/(κ-1)})` seen in the bulk regime.
    pub constant: f64,
    pub worst_x0: f64,
    pub worst_ell: f64,
    pub samples: u64,
}

/// Fix the constant `B` from a sweep over [`random_interval`].
pub fn calibrate_counting_constant(profile: &DiophantineProfile, n: u64, samples: u64, seed: u64) -> Result<CountingCalibration> {
    if samples == 0 {
        return invalid("calibration needs at least one sample");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cal = CountingCalibration {
        constant: 0.0,
        worst_x0: 0.0,
        worst_ell: 0.0,
        samples,
    };
    for _ in 0..samples {
        let (x0, ell) = random_interval(profile, n, &mut rng);
        let r = counting_bound_check(profile, n, x0, ell, 1.0)?;
        if r.regime == CountingRegime::Bulk && r.bound > 0.0 {
            let ratio = r.count as f64 / r.bound;
            if ratio > cal.constant {
                cal.constant = ratio;
                cal.worst_x0 = x0;
                cal.worst_ell = ell;
            }
        }
    }
    Ok(cal)
}

/// `(1/n) Σ_{m=1}^{n} ‖mα‖^{-β}`. Its limit is `∫ |x|^{-β} dx = 2^β/(1-β)`
/// over `[-1/2, 1/2)` when `α` has type `κ` and `β < 1/(κ-1)`.
pub fn singular_average(alpha: f64, beta: f64, n: u64) -> Result<f64> {
    if n == 0 {
        return invalid("singular average needs n ≥ 1");
    }
    if !(0.0..1.0).contains(&beta) {
        return invalid(format!("β must lie in [0, 1), got {beta}"));
    }
    let a = alpha - alpha.floor();
    let mut sum = 0.0;
    for m in 1..=n {
        let d = dist_to_int(m as f64 * a);
        if d == 0.0 {
            return Err(Error::SingularInput(format!("‖{m}α‖ = 0")));
        }
        sum += d.powf(-beta);
    }
    Ok(sum / n as f64)
}

/// `2^β/(1-β)`.
pub fn singular_average_limit(beta: f64) -> f64 {
    2f64.powf(beta) / (1.0 - beta)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GOLDEN: f64 = 1.618_033_988_749_895;

    #[test]
    fn classical_expansions() {
        assert_eq!(continued_fraction(2f64.sqrt(), 12).unwrap(), [1, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 2]);
        assert_eq!(continued_fraction(GOLDEN, 15).unwrap(), vec![1; 15]);
        assert_eq!(continued_fraction(0.5, 10).unwrap(), [0, 2]);
        assert_eq!(continued_fraction(1.0 / 3.0, 10).unwrap(), [0, 3]);
        assert_eq!(continued_fraction(355.0 / 113.0, 10).unwrap(), [3, 7, 16]);
        assert!(continued_fraction(1.0, 0).is_err());
    }

    #[test]
    fn quadratic_surds_have_type_two() {
        let p = dioph_type_estimate(2f64.sqrt(), 100_000).unwrap();
        assert!((p.kappa_estimate - 2.0).abs() < 0.05, "{p:?}");
        assert!(p.c_estimate >= 0.2);
        assert!(p.stable);
        // ‖qα‖ over the convergent denominators of √2
        let qs: Vec<u64> = p.best_approximations.iter().map(|r| r.0).collect();
        assert_eq!(&qs[..6], &[2, 5, 12, 29, 70, 169]);

        let g = dioph_type_estimate(GOLDEN, 100_000).unwrap();
        assert!((g.kappa_estimate - 2.0).abs() < 0.05);
        assert!(g.c_estimate > p.c_estimate);
    }

    #[test]
    fn liouville_like_is_flagged() {
        let alpha: f64 = (1..=4u32).map(|j| 10f64.powi(-((1..=j).product::<u32>() as i32))).sum();
        let p = dioph_type_estimate(alpha, 100_000).unwrap();
        assert!(!p.stable, "{p:?}");
        // the strongest visible approximation: ‖100α‖ = 10^-4 = 100^-2
        let (q, d) = p.best_approximations[1];
        assert_eq!(q, 100);
        assert!((2.0 + (1.0 / (q as f64 * d)).ln() / (q as f64).ln() - 3.0).abs() < 1e-9);
    }

    #[test]
    fn c_estimate_bounds_every_q() {
        let p = dioph_type_estimate(3f64.sqrt(), 5000).unwrap();
        for q in 1..=5000u64 {
            let lhs = (q as f64).powf(p.kappa_estimate - 1.0) * dist_to_int(q as f64 * (p.alpha - 1.0));
            assert!(p.c_estimate <= lhs + 1e-15);
        }
    }

    #[test]
    fn rationals_are_singular() {
        assert!(matches!(dioph_type_estimate(0.25, 100), Err(Error::SingularInput(_))));
        assert!(matches!(singular_average(0.5, 0.5, 10), Err(Error::SingularInput(_))));
        assert!(dioph_type_estimate(0.3, 1).is_err());
    }

    #[test]
    fn three_gap_examples() {
        assert_eq!(three_gap_check(0.25, 4, 1e-9).unwrap(), [1.0]);
        assert!(three_gap_check(0.25, 1, 1e-9).is_err());
        for n in [10, 100, 1000] {
            for alpha in [2f64.sqrt(), GOLDEN, std::f64::consts::PI, 0.123_456_789] {
                assert!(three_gap_check(alpha, n, 1e-9).unwrap().len() <= 3);
            }
        }
    }

    /// `p + q√5` has the sign of ... compared exactly in integers.
    fn sign_p_plus_q_root5(p: i128, q: i128) -> i128 {
        match (p.signum(), q.signum()) {
            (a, b) if a >= 0 && b >= 0 => (a + b).signum(),
            (a, b) if a <= 0 && b <= 0 => (a + b).signum(),
            (a, _) => {
                let d = p * p - 5 * q * q;
                if a > 0 {
                    d.signum()
                } else {
                    -d.signum()
                }
            }
        }
    }

    /// `x + yφ` as `(2x + y + y√5)/2`.
    fn cmp_golden(a: (i128, i128), b: (i128, i128)) -> std::cmp::Ordering {
        let (x, y) = (a.0 - b.0, a.1 - b.1);
        sign_p_plus_q_root5(2 * x + y, y).cmp(&0)
    }

    #[test]
    fn golden_gaps_match_exact_arithmetic() {
        // {mφ} = mφ - ⌊mφ⌋, kept as (−⌊mφ⌋, m) in ℤ[φ]
        let n = 13;
        let mut pts: Vec<(i128, i128)> = (1..=n)
            .map(|m| {
                let mut f = (m as f64 * GOLDEN).floor() as i128;
                // fix the floor exactly: need 0 ≤ m φ - f < 1
                while cmp_golden((-f, m), (0, 0)).is_lt() {
                    f -= 1;
                }
                while cmp_golden((1 - f, m), (1, 0)).is_ge() && cmp_golden((-f - 1, m), (0, 0)).is_ge() {
                    f += 1;
                }
                (-f, m)
            })
            .collect();
        pts.sort_by(|a, b| cmp_golden(*a, *b));
        let mut gaps: Vec<(i128, i128)> = pts.windows(2).map(|w| (w[1].0 - w[0].0, w[1].1 - w[0].1)).collect();
        let (first, last) = (pts[0], pts[n as usize - 1]);
        gaps.push((first.0 + 1 - last.0, first.1 - last.1));
        gaps.sort_by(|a, b| cmp_golden(*a, *b));
        gaps.dedup();
        let exact: Vec<f64> = gaps
            .iter()
            .map(|&(x, y)| n as f64 * (x as f64 + y as f64 * GOLDEN))
            .collect();
        let got = three_gap_check(GOLDEN, n as usize, 1e-9).unwrap();
        assert_eq!(got.len(), exact.len());
        assert!(got.len() <= 3);
        for (g, e) in got.iter().zip(&exact) {
            assert!((g - e).abs() < 1e-9, "{g} vs {e}");
        }
    }

    #[test]
    fn counting_regimes() {
        let p = dioph_type_estimate(2f64.sqrt(), 10_000).unwrap();
        // a tiny interval right after a point of the sequence
        let r = counting_bound_check(&p, 10_000, 0.123, 1e-9, 4.0).unwrap();
        assert_eq!(r.regime, CountingRegime::Sparse);
        assert_eq!(r.count, 0);
        let x = 2f64.sqrt() * 7.0;
        let r = counting_bound_check(&p, 10_000, x - x.floor() - 1e-10, 1e-9, 4.0).unwrap();
        assert_eq!((r.count, r.satisfied), (1, true));
        let r = counting_bound_check(&p, 10_000, 0.3, 1.0, 1.0).unwrap();
        assert_eq!(r.count, 10_000);
        assert!(r.satisfied);
        assert!(counting_bound_check(&p, 20_000, 0.3, 0.1, 1.0).is_err());
    }

    #[test]
    fn calibration_is_below_the_gap_bound() {
        // for κ = 2 a closed interval of length ℓ holds at most nℓ/c + 1
        // points, so B = 2/c always suffices in the bulk regime
        let p = dioph_type_estimate(2f64.sqrt(), 2000).unwrap();
        let cal = calibrate_counting_constant(&p, 2000, 300, 5).unwrap();
        assert!(cal.constant > 0.0 && cal.constant <= 2.0 / p.c_estimate);
    }

    #[test]
    fn singular_average_basics() {
        assert_eq!(singular_average(2f64.sqrt(), 0.0, 1000).unwrap(), 1.0);
        assert!((singular_average_limit(0.5) - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        let mut last = 0.0;
        for beta in [0.0, 0.1, 0.3, 0.5, 0.7] {
            let v = singular_average(GOLDEN, beta, 5000).unwrap();
            assert!(v >= last);
            last = v;
        }
        assert!(singular_average(2f64.sqrt(), 1.0, 10).is_err());
    }
}
