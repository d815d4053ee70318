use std::ops::Neg;

use num_traits::{Num, NumCast};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::scalar::Real;

/// Row-major 2×2 matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Matrix2<T> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T> Matrix2<T>
where
    T: Copy + Num + Neg<Output = T>,
{
    pub const fn new(a: T, b: T, c: T, d: T) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::one())
    }

    /// Upper shear `[[1, s], [0, 1]]`.
    pub fn upper_shear(s: T) -> Self {
        Self::new(T::one(), s, T::zero(), T::one())
    }

    /// Lower shear `[[1, 0], [s, 1]]`.
    pub fn lower_shear(s: T) -> Self {
        Self::new(T::one(), T::zero(), s, T::one())
    }

    pub fn diag(p: T, q: T) -> Self {
        Self::new(p, T::zero(), T::zero(), q)
    }

    pub fn det(&self) -> T {
        self.a * self.d - self.b * self.c
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }

    /// Inverse of a unit-determinant matrix (the adjugate).
    pub fn unimodular_inverse(&self) -> Self {
        Self::new(self.d, -self.b, -self.c, self.a)
    }

    /// Row vector times matrix, `v·M`.
    pub fn left_apply(&self, v: [T; 2]) -> [T; 2] {
        [v[0] * self.a + v[1] * self.c, v[0] * self.b + v[1] * self.d]
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.a, -self.b, -self.c, -self.d)
    }

    pub fn cast<U: NumCast>(&self) -> Option<Matrix2<U>>
    where
        T: NumCast,
    {
        Some(Matrix2 {
            a: U::from(self.a)?,
            b: U::from(self.b)?,
            c: U::from(self.c)?,
            d: U::from(self.d)?,
        })
    }
}

impl<T: Real> Matrix2<T> {
    /// `|det M - 1|` measured against the size of the products forming it.
    pub fn det_defect(&self) -> T {
        let scale = T::one().max((self.a * self.d).abs() + (self.b * self.c).abs());
        (self.det() - T::one()).abs() / scale
    }

    pub fn max_abs_diff(&self, o: &Self) -> T {
        (self.a - o.a)
            .abs()
            .max((self.b - o.b).abs())
            .max((self.c - o.c).abs())
            .max((self.d - o.d).abs())
    }
}

/// Element `(M, ξ)` of `SL(2,ℝ) ⋉ ℝ²`, with `ξ` a row vector and the product
/// `(M, ξ)(M', ξ') = (MM', ξM' + ξ')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupElement<T> {
    pub m: Matrix2<T>,
    pub xi: [T; 2],
}

impl<T> GroupElement<T>
where
    T: Copy + Num + Neg<Output = T>,
{
    /// Assembles an element without checking the determinant.
    pub const fn from_parts(m: Matrix2<T>, xi: [T; 2]) -> Self {
        Self { m, xi }
    }

    pub fn identity() -> Self {
        Self::from_parts(Matrix2::identity(), [T::zero(), T::zero()])
    }

    pub fn mul(&self, o: &Self) -> Self {
        let v = o.m.left_apply(self.xi);
        Self::from_parts(self.m.mul(&o.m), [v[0] + o.xi[0], v[1] + o.xi[1]])
    }

    /// `(M⁻¹, -ξM⁻¹)`.
    pub fn inverse(&self) -> Self {
        let inv = self.m.unimodular_inverse();
        let v = inv.left_apply(self.xi);
        Self::from_parts(inv, [-v[0], -v[1]])
    }

    /// The point `mM + ξ` for an integer row vector `m`.
    pub fn act(&self, m: [T; 2]) -> [T; 2] {
        let v = self.m.left_apply(m);
        [v[0] + self.xi[0], v[1] + self.xi[1]]
    }

    pub fn cast<U>(&self) -> Option<GroupElement<U>>
    where
        T: NumCast,
        U: NumCast + Copy + Num + Neg<Output = U>,
    {
        Some(GroupElement {
            m: self.m.cast()?,
            xi: [U::from(self.xi[0])?, U::from(self.xi[1])?],
        })
    }
}

impl<T: Real> GroupElement<T> {
    /// Checked constructor: `M` must have unit determinant (to 1e-12,
    /// relative to the magnitude of `ad` and `bc`).
    pub fn new(m: Matrix2<T>, xi: [T; 2]) -> Result<Self> {
        if !(m.a.is_finite() && m.b.is_finite() && m.c.is_finite() && m.d.is_finite()) {
            return invalid("matrix entries must be finite");
        }
        if m.det_defect() >= T::lit(1e-12) {
            return invalid(format!("det M = {} is not 1", m.det()));
        }
        Ok(Self { m, xi })
    }

    pub fn max_abs_diff(&self, o: &Self) -> T {
        self.m
            .max_abs_diff(&o.m)
            .max((self.xi[0] - o.xi[0]).abs())
            .max((self.xi[1] - o.xi[1]).abs())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupOp {
    Multiply,
    Inverse,
}

/// `a·b` for [`GroupOp::Multiply`], `a⁻¹` for [`GroupOp::Inverse`] (`b` unused).
pub fn group_op<T>(a: &GroupElement<T>, b: &GroupElement<T>, op: GroupOp) -> GroupElement<T>
where
    T: Copy + Num + Neg<Output = T>,
{
    match op {
        GroupOp::Multiply => a.mul(b),
        GroupOp::Inverse => a.inverse(),
    }
}

/// `g·Φᵗ` with `Φᵗ = (diag(e^{-t/2}, e^{t/2}), 0)`.
pub fn flow_translate<T: Real>(g: &GroupElement<T>, t: T) -> Result<GroupElement<T>> {
    let half = t / T::lit(2.0);
    let up = half.exp();
    let down = (-half).exp();
    if !up.is_finite() || !down.is_finite() || up.is_zero() || down.is_zero() {
        return Err(Error::Range(format!("flow time {t} overflows")));
    }
    Ok(scale_columns(g, down, up))
}

/// `g·Φᵗ` for `e^{t/2} = scale`, with the contracting factor taken as
/// `1/scale` directly. Orbit maps use this so that `m/N` lands exactly on
/// `1` at `m = N`.
pub fn flow_scale<T: Real>(g: &GroupElement<T>, scale: T) -> Result<GroupElement<T>> {
    if !(scale > T::zero() && scale.is_finite()) {
        return Err(Error::Range(format!("flow scale {scale} is not a positive finite number")));
    }
    Ok(GroupElement::from_parts(
        Matrix2::new(g.m.a / scale, g.m.b * scale, g.m.c / scale, g.m.d * scale),
        [g.xi[0] / scale, g.xi[1] * scale],
    ))
}

fn scale_columns<T: Real>(g: &GroupElement<T>, down: T, up: T) -> GroupElement<T> {
    GroupElement::from_parts(
        Matrix2::new(g.m.a * down, g.m.b * up, g.m.c * down, g.m.d * up),
        [g.xi[0] * down, g.xi[1] * up],
    )
}

/// The three embedded subgroups used by the orbit maps.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Embedding<T> {
    /// `n₋(α, y) = ([[1, α], [0, 1]], (0, y))`.
    NMinus { alpha: T, y: T },
    /// `n₊(β, x) = ([[1, 0], [β, 1]], (x, 0))`.
    NPlus { beta: T, x: T },
    /// `n₁(x) = ([[1, 2x], [0, 1]], (x, x²))`.
    NOne { x: T },
}

pub fn embed<T: Real>(e: Embedding<T>) -> GroupElement<T> {
    match e {
        Embedding::NMinus { alpha, y } => GroupElement::from_parts(Matrix2::upper_shear(alpha), [T::zero(), y]),
        Embedding::NPlus { beta, x } => GroupElement::from_parts(Matrix2::lower_shear(beta), [x, T::zero()]),
        Embedding::NOne { x } => GroupElement::from_parts(Matrix2::upper_shear(x + x), [x, x * x]),
    }
}

/// Generators of `SL(2,ℤ)` and their inverses.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModularGenerator {
    S,
    SInv,
    T,
    TInv,
}

impl ModularGenerator {
    pub fn matrix(self) -> Matrix2<i64> {
        match self {
            ModularGenerator::S => Matrix2::new(0, -1, 1, 0),
            ModularGenerator::SInv => Matrix2::new(0, 1, -1, 0),
            ModularGenerator::T => Matrix2::new(1, 1, 0, 1),
            ModularGenerator::TInv => Matrix2::new(1, -1, 0, 1),
        }
    }
}

/// `(γ, n)` with `γ` the product of `word` and `n ∈ ℤ²`; fails if an entry
/// overflows `i64`.
pub fn gamma_from_word(word: &[ModularGenerator], n: [i64; 2]) -> Result<GroupElement<i64>> {
    let mut m = Matrix2::<i64>::identity();
    for g in word {
        let h = g.matrix();
        let entry = |x: i64, y: i64, z: i64, w: i64| -> Option<i64> { x.checked_mul(y)?.checked_add(z.checked_mul(w)?) };
        m = match (
            entry(m.a, h.a, m.b, h.c),
            entry(m.a, h.b, m.b, h.d),
            entry(m.c, h.a, m.d, h.c),
            entry(m.c, h.b, m.d, h.d),
        ) {
            (Some(a), Some(b), Some(c), Some(d)) => Matrix2::new(a, b, c, d),
            _ => return Err(Error::Range("word entries overflow i64".into())),
        };
    }
    Ok(GroupElement::from_parts(m, n))
}

/// A random element of `Γ = SL(2,ℤ) ⋉ ℤ²`: a uniformly random word of
/// `word_length` letters in `S^{±1}, T^{±1}` and a translation in `[-5, 5]²`.
pub fn gamma_element(seed: u64, word_length: usize) -> Result<GroupElement<i64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    const LETTERS: [ModularGenerator; 4] = [
        ModularGenerator::S,
        ModularGenerator::SInv,
        ModularGenerator::T,
        ModularGenerator::TInv,
    ];
    let word: Vec<ModularGenerator> = (0..word_length).map(|_| LETTERS[rng.random_range(0..4)]).collect();
    let n = [rng.random_range(-5..=5), rng.random_range(-5..=5)];
    gamma_from_word(&word, n)
}
