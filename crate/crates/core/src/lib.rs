//! Distinguished projection quadruples, the strategies built from them, and a
//! verifier that extracts local dilations from candidate strategies.

pub mod cli;
pub mod error;
mod intertwine;
pub mod matcore;
pub mod repcat;
pub mod scalar;
pub mod spectral;
pub mod strategy;
pub mod verifier;

pub use error::{Error, Result};
pub use matcore::{EigenDecomposition, Matrix, Vector};
pub use repcat::{Alpha, RankSignature, Rational, Representation};
pub use scalar::Real;

pub type Matrix64 = Matrix<f64>;
pub type Matrix32 = Matrix<f32>;
pub type Vector64 = Vector<f64>;
pub type Vector32 = Vector<f32>;
pub type Representation64 = Representation<f64>;
pub type Representation32 = Representation<f32>;
