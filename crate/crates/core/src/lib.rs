//! Exact construction and verification of finite-dimensional triangular
//! Hopf algebras: group algebras and their Drinfeld twists, supergroup
//! algebras `k[G] ⋉ ΛV`, modified supergroup algebras with the rank-two
//! R-matrix `R_u`, and the structure checks that every triangular Hopf
//! algebra over a field of characteristic zero must pass.

pub mod atlas;
pub mod constructions;
pub mod error;
pub mod hopf;
pub mod report;
pub mod scalars;
pub mod tensor;
pub mod triangular;
pub mod wire;

pub use error::{Error, Result};
pub use hopf::HopfData;
pub use scalars::{CycScalar, Rational};
pub use tensor::{Mat, Sparse, Tensor2};
pub use triangular::RMatrix;
