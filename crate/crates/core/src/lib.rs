//! Exact verification toolkit for Frobenius cellular algebras.

pub mod algebra;
pub mod builtin;
pub mod cellular;
pub mod dual;
pub mod io;
pub mod linalg;
pub mod projectivity;
pub mod report;
pub mod scalar;
pub mod validation;

pub use scalar::{Field, FieldKind, Fp, Rational};

pub type QAlgebra = algebra::Algebra<Rational>;
pub type FpAlgebra = algebra::Algebra<Fp>;
pub type QMatrix = linalg::Matrix<Rational>;
pub type FpMatrix = linalg::Matrix<Fp>;
