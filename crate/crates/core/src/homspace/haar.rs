use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::group::{GroupElement, Matrix2};
use super::iwasawa::IwasawaCoords;

/// Lower edge of the Siegel strip containing the fundamental domain.
pub const SIEGEL_FLOOR: f64 = 0.866_025_403_784_438_6; // √3/2

/// `vol(F) / vol(Siegel strip) = (π/3) / (2/√3)`.
pub const FUNDAMENTAL_DOMAIN_ACCEPTANCE: f64 = std::f64::consts::PI * 1.732_050_807_568_877_2 / 6.0;

/// A Haar-random point of `Γ\G` in Iwasawa-plus-torus coordinates, and the
/// group element `g = (1, (x, y))·(M, 0) = (M, (x, y)M)` it represents.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HaarSample {
    pub u: f64,
    pub v: f64,
    pub phi: f64,
    pub x: f64,
    pub y: f64,
    pub g: GroupElement<f64>,
}

impl HaarSample {
    /// `|u| ≤ 1/2` and `u² + v² ≥ 1`.
    pub fn in_fundamental_domain(&self) -> bool {
        self.u.abs() <= 0.5 && self.u * self.u + self.v * self.v >= 1.0
    }
}

/// Rejection sampler for the normalised Haar measure
/// `du dv/v² dφ dx dy` on `F × [0, 2π) × [0, 1)²`.
#[derive(Clone, Debug)]
pub struct HaarSampler {
    rng: ChaCha8Rng,
    proposed: u64,
    accepted: u64,
}

impl HaarSampler {
    pub fn new(seed: u64) -> Self {
        Self::from_rng(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn from_rng(rng: ChaCha8Rng) -> Self {
        Self {
            rng,
            proposed: 0,
            accepted: 0,
        }
    }

    pub fn sample(&mut self) -> HaarSample {
        let (u, v) = loop {
            self.proposed += 1;
            let u = self.rng.random::<f64>() - 0.5;
            // density ∝ v^{-2} on [√3/2, ∞) by inversion; 1 - U lies in (0, 1]
            let v = SIEGEL_FLOOR / (1.0 - self.rng.random::<f64>());
            if u * u + v * v >= 1.0 {
                break (u, v);
            }
        };
        self.accepted += 1;
        let phi = self.rng.random::<f64>() * std::f64::consts::TAU;
        let x = self.rng.random::<f64>();
        let y = self.rng.random::<f64>();
        let m: Matrix2<f64> = IwasawaCoords {
            u,
            v,
            phi,
            negated: false,
        }
        .compose();
        let g = GroupElement::from_parts(m, m.left_apply([x, y]));
        HaarSample { u, v, phi, x, y, g }
    }

    /// `(accepted, proposed)` pairs so far.
    pub fn acceptance(&self) -> (u64, u64) {
        (self.accepted, self.proposed)
    }
}

/// One Haar sample from a fresh stream seeded by `seed`.
pub fn haar_sample(seed: u64) -> HaarSample {
    HaarSampler::new(seed).sample()
}
