//! Numerical kernels for quantum SU(2) coupling coefficients: basic
//! hypergeometric series, Jackson q-integrals, q-orthogonal polynomial
//! families, coupling kernels, and exact operator representations used as
//! oracles in the verification suites.

pub mod error;
pub mod families;
pub mod qintegrate;
pub mod qkernel;
pub mod rep;
pub mod scalar;

pub use error::{CoreError, Result};
pub use scalar::{Precision, QBase, Scalar};
