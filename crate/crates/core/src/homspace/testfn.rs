use serde::Serialize;

use crate::error::{invalid, Result};
use crate::scalar::Real;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestFunctionKind {
    /// `(0, 1] × [-L/2, L/2]`, the window of the `{mα}` orbit.
    Rectangle,
    /// `{0 < x ≤ 1, -L < y/x ≤ L}`, the window of the `{√m}` orbit.
    Triangle,
}

/// Indicator function `ψ` on `ℝ²` with bounded convex support of area `L`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TestFunction2D<T> {
    kind: TestFunctionKind,
    scaled_length: T,
}

impl<T: Real> TestFunction2D<T> {
    pub fn new(kind: TestFunctionKind, scaled_length: T) -> Result<Self> {
        if !(scaled_length > T::zero() && scaled_length.is_finite()) {
            return invalid(format!("test function needs L > 0, got {scaled_length}"));
        }
        Ok(Self { kind, scaled_length })
    }

    pub fn rectangle(scaled_length: T) -> Result<Self> {
        Self::new(TestFunctionKind::Rectangle, scaled_length)
    }

    pub fn triangle(scaled_length: T) -> Result<Self> {
        Self::new(TestFunctionKind::Triangle, scaled_length)
    }

    pub fn kind(&self) -> TestFunctionKind {
        self.kind
    }

    pub fn scaled_length(&self) -> T {
        self.scaled_length
    }

    /// Exact indicator with the half-open conventions of each kind.
    #[inline]
    pub fn contains(&self, x: T, y: T) -> bool {
        if !(x > T::zero() && x <= T::one()) {
            return false;
        }
        let l = self.scaled_length;
        match self.kind {
            TestFunctionKind::Rectangle => {
                let h = l / T::lit(2.0);
                -h <= y && y <= h
            }
            TestFunctionKind::Triangle => -l * x < y && y <= l * x,
        }
    }

    pub fn area(&self) -> T {
        self.scaled_length
    }

    /// Vertices of the closure of the support, counter-clockwise.
    pub fn vertices(&self) -> Vec<[T; 2]> {
        let (z, o, l) = (T::zero(), T::one(), self.scaled_length);
        match self.kind {
            TestFunctionKind::Rectangle => {
                let h = l / T::lit(2.0);
                vec![[z, -h], [o, -h], [o, h], [z, h]]
            }
            TestFunctionKind::Triangle => vec![[z, z], [o, -l], [o, l]],
        }
    }

    /// Closed half-planes `n·w ≤ c` whose intersection is the closure of
    /// the support.
    pub fn half_planes(&self) -> Vec<([T; 2], T)> {
        let (z, o, l) = (T::zero(), T::one(), self.scaled_length);
        match self.kind {
            TestFunctionKind::Rectangle => {
                let h = l / T::lit(2.0);
                vec![([-o, z], z), ([o, z], o), ([z, -o], h), ([z, o], h)]
            }
            TestFunctionKind::Triangle => vec![([o, z], o), ([-l, o], z), ([-l, -o], z)],
        }
    }
}
