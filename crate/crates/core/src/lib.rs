//! Local statistics of sequences modulo one and their limit laws on the
//! space of affine lattices.
//!
//! The numeric core is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix it to `f64`.

pub mod dioph;
pub mod empirical;
pub mod error;
pub mod homspace;
pub mod localstats;
pub mod randmodel;
pub mod scalar;
pub mod seqgen;
pub mod worksheet;

pub use error::{Error, Result};
pub use scalar::Real;

pub type PointArray64 = seqgen::PointArray<f64>;
pub type GapStatistics64 = localstats::GapStatistics<f64>;
pub type Window64 = localstats::Window<f64>;
pub type Matrix2x64 = homspace::Matrix2<f64>;
pub type GroupElement64 = homspace::GroupElement<f64>;
pub type IwasawaCoords64 = homspace::IwasawaCoords<f64>;
pub type TestFunction2D64 = homspace::TestFunction2D<f64>;
