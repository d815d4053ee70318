use serde::Serialize;

use super::group::Matrix2;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Iwasawa coordinates of `M ∈ SL(2,ℝ)`:
/// `M = ± [[1, u], [0, 1]] · diag(v^{1/2}, v^{-1/2}) · k(φ/2)` with
/// `k(θ) = [[cos θ, sin θ], [-sin θ, cos θ]]`.
///
/// `φ` is kept in `[0, 2π)`; the sign `-1 = k(π)` that distinguishes the two
/// lifts in `[0, 4π)` is carried in `negated`. On `Γ\G` both lifts are the
/// same point since `-1 ∈ SL(2,ℤ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IwasawaCoords<T> {
    pub u: T,
    pub v: T,
    pub phi: T,
    pub negated: bool,
}

impl<T: Real> IwasawaCoords<T> {
    pub fn compose(&self) -> Matrix2<T> {
        let half = self.phi / T::lit(2.0);
        let (s, c) = half.sin_cos();
        let r = self.v.sqrt();
        let k = Matrix2::new(c, s, -s, c);
        let m = Matrix2::upper_shear(self.u)
            .mul(&Matrix2::diag(r, T::one() / r))
            .mul(&k);
        if self.negated {
            m.neg()
        } else {
            m
        }
    }

    /// The raw chart angle in `[0, 4π)`.
    pub fn phi_double_cover(&self) -> T {
        if self.negated {
            self.phi + T::TAU()
        } else {
            self.phi
        }
    }
}

pub fn iwasawa<T: Real>(m: &Matrix2<T>) -> Result<IwasawaCoords<T>> {
    if m.det_defect() >= T::lit(1e-12) {
        return Err(Error::NumericFailure(format!("det M = {} is not 1", m.det())));
    }
    // bottom row of M is (-sin, cos)·v^{-1/2}
    let norm2 = m.c * m.c + m.d * m.d;
    if !(norm2 > T::zero() && norm2.is_finite()) {
        return Err(Error::NumericFailure("degenerate bottom row".into()));
    }
    let v = T::one() / norm2;
    let u = (m.a * m.c + m.b * m.d) / norm2;
    let mut phi = T::lit(2.0) * (-m.c).atan2(m.d);
    if phi < T::zero() {
        phi = phi + T::lit(4.0) * T::PI();
    }
    let tau = T::TAU();
    let negated = phi >= tau;
    if negated {
        phi = phi - tau;
    }
    if phi >= tau || phi < T::zero() {
        phi = T::zero();
    }
    if !(u.is_finite() && v.is_finite() && phi.is_finite()) {
        return Err(Error::NumericFailure("non-finite Iwasawa coordinates".into()));
    }
    Ok(IwasawaCoords { u, v, phi, negated })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_coords() {
        let c = iwasawa(&Matrix2::<f64>::identity()).unwrap();
        assert_eq!((c.u, c.v, c.phi, c.negated), (0.0, 1.0, 0.0, false));
    }

    #[test]
    fn diagonal_coords() {
        let c = iwasawa(&Matrix2::diag(2.0f64, 0.5)).unwrap();
        assert!(c.u.abs() < 1e-15 && (c.v - 4.0).abs() < 1e-14 && c.phi.abs() < 1e-15);
    }

    #[test]
    fn minus_identity_is_negated() {
        let c = iwasawa(&Matrix2::diag(-1.0f64, -1.0)).unwrap();
        assert!(c.negated);
        assert!(c.phi.abs() < 1e-15);
        assert!((c.phi_double_cover() - std::f64::consts::TAU).abs() < 1e-15);
    }

    #[test]
    fn round_trip_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for _ in 0..10_000 {
            let a: f64 = rng.random_range(-3.0..3.0);
            let b: f64 = rng.random_range(-3.0..3.0);
            let c: f64 = rng.random_range(-3.0..3.0);
            if a.abs() < 0.2 {
                continue;
            }
            let m = Matrix2::new(a, b, c, (1.0 + b * c) / a);
            let coords = iwasawa(&m).unwrap();
            assert!(coords.v > 0.0);
            assert!((0.0..std::f64::consts::TAU).contains(&coords.phi));
            assert!(coords.compose().max_abs_diff(&m) < 1e-10, "{m:?} -> {coords:?}");
        }
    }

    #[test]
    fn singular_matrix_fails() {
        assert!(matches!(
            iwasawa(&Matrix2::new(1.0f64, 2.0, 2.0, 4.0)),
            Err(Error::NumericFailure(_))
        ));
        assert!(iwasawa(&Matrix2::new(1e300f64, 0.0, 0.0, 1e-300)).is_err());
    }
}
