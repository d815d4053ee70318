//! The `√(m√2)` gap worksheet evaluated the way a 12-digit computer algebra
//! session does it.
//!
//! `√(n√2)` is first simplified to `k·√r·2^{1/4}` with `n = k²r`, `r`
//! squarefree. Each radical is rounded to 12 significant digits, then their
//! product, then the product with `k`. Fractional parts, differences and the
//! scaling by `N` are exact on those decimals, and each gap is rounded to 12
//! digits again. Plain double precision lands up to about `1.4e-6` away from
//! the printed outliers; this pipeline reproduces them digit for digit.

use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::localstats::{gap_histogram, GapConvention, GapStatistics, Histogram};
use crate::seqgen::{PointArray, Provenance};

pub const DIGITS: u32 = 12;
pub const DEFAULT_N: usize = 6001;
pub const BIN_WIDTH: f64 = 0.2;
pub const NUM_BINS: usize = 35;
pub const OUTLIER_TOLERANCE: f64 = 1e-6;

/// Gaps beyond the last bin in the reference run, ascending.
pub const REFERENCE_OUTLIERS: [f64; 15] = [
    7.0547245915,
    7.0674227075,
    7.1105849000,
    7.1693268887,
    7.2093775627,
    7.3219323187,
    7.3381866273,
    7.4195061783,
    7.5000233956,
    7.6451419780,
    7.7497418084,
    7.9388213164,
    8.0221013941,
    8.1512135092,
    8.4582030656,
];

/// `mantissa · 10^exponent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Decimal {
    pub mantissa: i128,
    pub exponent: i32,
}

fn pow10(k: u32) -> i128 {
    10i128.pow(k)
}

fn digit_count(m: i128) -> u32 {
    let m = m.unsigned_abs();
    if m == 0 {
        1
    } else {
        m.ilog10() + 1
    }
}

impl Decimal {
    /// Round half away from zero to `digits` significant digits.
    pub fn round_sig(mantissa: i128, exponent: i32, digits: u32) -> Self {
        let nd = digit_count(mantissa);
        if nd <= digits {
            return Decimal { mantissa, exponent };
        }
        let drop = nd - digits;
        let p = pow10(drop);
        let (q, r) = (mantissa / p, mantissa % p);
        let q = if 2 * r.abs() >= p { q + mantissa.signum() } else { q };
        Self::round_sig(q, exponent + drop as i32, digits)
    }

    pub fn mul(self, o: Decimal, digits: u32) -> Self {
        Self::round_sig(self.mantissa * o.mantissa, self.exponent + o.exponent, digits)
    }

    /// The value as an integer multiple of `10^-scale`; `None` if it is not one.
    pub fn fixed(self, scale: u32) -> Option<i128> {
        let shift = self.exponent + scale as i32;
        if shift >= 0 {
            self.mantissa.checked_mul(pow10(shift as u32))
        } else {
            let p = pow10((-shift) as u32);
            (self.mantissa % p == 0).then(|| self.mantissa / p)
        }
    }

    pub fn to_f64(self) -> f64 {
        format!("{}e{}", self.mantissa, self.exponent)
            .parse()
            .expect("decimal literal")
    }
}

/// `radicand^{1/degree}` rounded to `digits` significant digits.
pub fn root_sig(radicand: u64, degree: u32, digits: u32) -> Decimal {
    // enough fractional digits that at least one is dropped by the rounding;
    // rounding the floor then agrees with rounding the exact root
    let frac_digits = digits + 2;
    let scaled = BigUint::from(radicand) * BigUint::from(10u32).pow(degree * frac_digits);
    let root: i128 = scaled
        .nth_root(degree)
        .try_into()
        .expect("root fits in i128");
    Decimal::round_sig(root, -(frac_digits as i32), digits)
}

/// `n = k²r` with `r` squarefree.
pub fn square_split(n: u64) -> (u64, u64) {
    let (mut k, mut r, mut m) = (1, 1, n);
    let mut p = 2;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        k *= p.pow(e / 2);
        if e % 2 == 1 {
            r *= p;
        }
        p += 1;
    }
    (k, r * m)
}

/// `√(n√2)` as the worksheet evaluates it.
pub fn sqrt_n_sqrt2(n: u64) -> Decimal {
    let (k, r) = square_split(n);
    let fourth = root_sig(2, 4, DIGITS);
    let radical = if r == 1 {
        fourth
    } else {
        root_sig(r, 2, DIGITS).mul(fourth, DIGITS)
    };
    radical.mul(
        Decimal {
            mantissa: k as i128,
            exponent: 0,
        },
        DIGITS,
    )
}

/// Fixed-point scale for fractional parts; every 12-digit value above one
/// is a multiple of `10^-11`.
const SCALE: u32 = 24;

fn sorted_fractions(n: usize) -> Result<Vec<i128>> {
    if n < 2 {
        return invalid("the worksheet needs at least two points");
    }
    let one = pow10(SCALE);
    let mut fr: Vec<i128> = (1..=n as u64)
        .map(|m| {
            let v = sqrt_n_sqrt2(m).fixed(SCALE).expect("12-digit values are exact at scale 24");
            v.rem_euclid(one)
        })
        .collect();
    fr.sort_unstable();
    Ok(fr)
}

/// Sorted `{√(m√2)}`, `m = 1..=n`, from the 12-digit evaluation.
pub fn worksheet_points(n: usize) -> Result<PointArray<f64>> {
    let pts = sorted_fractions(n)?
        .into_iter()
        .map(|f| Decimal { mantissa: f, exponent: -(SCALE as i32) }.to_f64())
        .collect();
    PointArray::from_sorted(pts, Provenance::SqrtMAlpha { alpha: std::f64::consts::SQRT_2 })
}

/// Open-chain gaps `N(L[i+1] - L[i])`, each rounded to 12 digits.
pub fn worksheet_gaps(n: usize) -> Result<GapStatistics<f64>> {
    let fr = sorted_fractions(n)?;
    let scale = n as i128;
    let gaps = fr
        .windows(2)
        .map(|w| Decimal::round_sig(scale * (w[1] - w[0]), -(SCALE as i32), DIGITS).to_f64())
        .collect();
    Ok(GapStatistics::from_scaled(gaps, n, GapConvention::OpenChain))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WorksheetReport {
    pub n: usize,
    pub histogram: Histogram,
    pub outliers: Vec<f64>,
    pub reference: Vec<f64>,
    /// `max |outlier - reference|` when the two lists have equal length.
    pub max_abs_diff: Option<f64>,
    pub matched: bool,
}

impl WorksheetReport {
    /// One line per position where the lists disagree.
    pub fn diff_lines(&self) -> Vec<String> {
        let len = self.outliers.len().max(self.reference.len());
        (0..len)
            .filter_map(|i| match (self.outliers.get(i), self.reference.get(i)) {
                (Some(a), Some(b)) if (a - b).abs() <= OUTLIER_TOLERANCE => None,
                (a, b) => {
                    let show = |v: Option<&f64>| v.map_or("nothing".to_string(), |x| format!("{x:.10}"));
                    Some(format!("#{}: got {}, expected {}", i + 1, show(a), show(b)))
                }
            })
            .collect()
    }
}

/// Run the worksheet for `n` points and compare its outliers with the
/// reference list.
pub fn repro_maple(n: usize) -> Result<WorksheetReport> {
    let gaps = worksheet_gaps(n)?;
    let histogram = gap_histogram(&gaps, BIN_WIDTH, NUM_BINS)?;
    let outliers = histogram.outliers.clone();
    let max_abs_diff = (outliers.len() == REFERENCE_OUTLIERS.len()).then(|| {
        outliers
            .iter()
            .zip(REFERENCE_OUTLIERS)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    });
    let matched = max_abs_diff.is_some_and(|d| d <= OUTLIER_TOLERANCE);
    Ok(WorksheetReport {
        n,
        histogram,
        outliers,
        reference: REFERENCE_OUTLIERS.to_vec(),
        max_abs_diff,
        matched,
    })
}
