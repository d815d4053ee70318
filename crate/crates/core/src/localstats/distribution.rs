use serde::Serialize;

/// Probability masses `k ↦ P(count = k)` for `k = 0..len`.
///
/// Exact distributions carry no standard errors; empirical ones built from a
/// tally carry per-`k` binomial standard errors and the sample size.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountDistribution {
    masses: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stderr: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    samples: Option<u64>,
    /// Scaled window length the distribution was computed for.
    scaled_length: f64,
}

impl CountDistribution {
    pub fn new(masses: Vec<f64>, stderr: Option<Vec<f64>>, scaled_length: f64) -> Self {
        Self {
            masses,
            stderr,
            samples: None,
            scaled_length,
        }
    }

    /// Empirical frequencies from `tally[k]` = number of samples with count `k`.
    pub fn from_tally(tally: &[u64], scaled_length: f64) -> Self {
        let total: u64 = tally.iter().sum();
        let n = total.max(1) as f64;
        let masses: Vec<f64> = tally.iter().map(|&t| t as f64 / n).collect();
        let stderr = masses.iter().map(|&p| (p * (1.0 - p) / n).sqrt()).collect();
        Self {
            masses,
            stderr: Some(stderr),
            samples: Some(total),
            scaled_length,
        }
    }

    /// Tally of raw counts, one entry per sample.
    pub fn from_counts(counts: impl IntoIterator<Item = usize>, scaled_length: f64) -> Self {
        let mut tally: Vec<u64> = Vec::new();
        for c in counts {
            if c >= tally.len() {
                tally.resize(c + 1, 0);
            }
            tally[c] += 1;
        }
        Self::from_tally(&tally, scaled_length)
    }

    pub fn mass(&self, k: usize) -> f64 {
        self.masses.get(k).copied().unwrap_or(0.0)
    }

    /// Binomial standard error of `mass(k)`; zero for exact distributions.
    pub fn stderr(&self, k: usize) -> f64 {
        self.stderr
            .as_ref()
            .and_then(|s| s.get(k).copied())
            .unwrap_or(0.0)
    }

    pub fn masses(&self) -> &[f64] {
        &self.masses
    }

    pub fn stderrs(&self) -> Option<&[f64]> {
        self.stderr.as_deref()
    }

    pub fn samples(&self) -> Option<u64> {
        self.samples
    }

    pub fn scaled_length(&self) -> f64 {
        self.scaled_length
    }

    /// Largest `k` with a stored mass.
    pub fn k_max(&self) -> usize {
        self.masses.len().saturating_sub(1)
    }

    pub fn total_mass(&self) -> f64 {
        self.masses.iter().sum()
    }

    pub fn mean(&self) -> f64 {
        self.masses.iter().enumerate().map(|(k, m)| k as f64 * m).sum()
    }

    pub fn variance(&self) -> f64 {
        let mean = self.mean();
        self.masses
            .iter()
            .enumerate()
            .map(|(k, m)| (k as f64 - mean).powi(2) * m)
            .sum()
    }

    /// Standard error of `mean()` for empirical distributions.
    pub fn mean_stderr(&self) -> Option<f64> {
        self.samples.map(|n| (self.variance() / n.max(1) as f64).sqrt())
    }

    /// `½ Σ_k |p_k - q_k|` against a reference pmf, summed over `k` until both
    /// the stored masses and `reference_tail(k)` are exhausted.
    pub fn total_variation(&self, reference: impl Fn(usize) -> f64) -> f64 {
        let mut tv = 0.0;
        let mut ref_mass = 0.0;
        let mut k = 0;
        while k < self.masses.len() || ref_mass < 1.0 - 1e-15 {
            let q = reference(k);
            ref_mass += q;
            tv += (self.mass(k) - q).abs();
            k += 1;
            if k > self.masses.len() + 10_000 {
                break;
            }
        }
        0.5 * tv
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tally_frequencies_and_errors() {
        let d = CountDistribution::from_counts([0, 1, 1, 3], 1.0);
        assert_eq!(d.masses(), &[0.25, 0.5, 0.0, 0.25]);
        assert_eq!(d.total_mass(), 1.0);
        assert_eq!(d.mean(), 1.25);
        assert!((d.stderr(1) - 0.25).abs() < 1e-15);
        assert_eq!(d.stderr(9), 0.0);
        assert_eq!(d.samples(), Some(4));
    }

    #[test]
    fn total_variation_of_identical_is_zero() {
        let d = CountDistribution::new(vec![0.5, 0.5], None, 0.5);
        assert_eq!(d.total_variation(|k| if k < 2 { 0.5 } else { 0.0 }), 0.0);
        assert!((d.total_variation(|k| if k == 0 { 1.0 } else { 0.0 }) - 0.5).abs() < 1e-15);
    }
}
