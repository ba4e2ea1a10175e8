//! Matrix-level oracle for the quantized function algebra: formal elements
//! of the generator algebra, their coproducts, truncated representations on
//! the basis ladder, and the special elements the spectral analysis runs on.

mod algebra;
mod matrix;
mod special;

pub use algebra::{AlgebraElement, Gen, GeneratorWord, Tensor3Element, TensorElement};
pub use matrix::{
    eigen_residual, norm2, represent, represent3, represent_tensor, truncated_spectrum,
    verify_relation, verify_relation3, verify_relation_tensor, BandedOperator,
};
pub use special::{build_rho, build_twisted};
