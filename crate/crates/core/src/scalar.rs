//! Scalar abstraction shared by the sequence, statistics and group code.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, ToPrimitive};

/// Floating point scalar: `f32` or `f64`.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from an `f64` literal or intermediate.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("f64 is representable in every Real")
    }

    #[inline]
    fn from_count(n: usize) -> Self {
        Self::from_usize(n).expect("counts are representable in every Real")
    }

    #[inline]
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Fractional part in `[0, 1)`. Unlike `Float::fract` this is the
    /// representative modulo one, also for negative inputs.
    #[inline]
    fn frac1(self) -> Self {
        let r = self - self.floor();
        // x - floor(x) rounds up to 1 for tiny negative x
        if r >= Self::one() {
            Self::zero()
        } else {
            r
        }
    }
}

impl Real for f32 {}
impl Real for f64 {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac1_is_unit_interval_representative() {
        assert_eq!(2.25f64.frac1(), 0.25);
        assert_eq!((-0.25f64).frac1(), 0.75);
        assert_eq!((-1e-20f64).frac1(), 0.0);
        assert_eq!((-3.0f32).frac1(), 0.0);
    }
}
