//! Error type shared by every numerical routine in the crate.

/// Failure modes of series, products, integrals and operator routines.
#[derive(Debug, Clone, thiserror::Error)]
pub enum CoreError {
    /// The base must satisfy `0 < q < 1` strictly.
    #[error("invalid base: need 0 < q < 1, got {got}")]
    InvalidBase { got: String },

    /// A factor in a denominator vanished (lattice collision or grid singularity).
    #[error("pole encountered in {ctx}")]
    Pole { ctx: String },

    /// A series, product, integral or bilateral sum failed its tail criterion
    /// within the configured budget, or is divergent for the given arguments.
    #[error("failed to converge: {ctx}")]
    NonConvergent { ctx: String },

    /// Argument outside the operation's domain (NaN, wrong sign, lattice point, ...).
    #[error("invalid argument: {ctx}")]
    InvalidArgument { ctx: String },

    /// A relation involves words of higher degree than the truncation can hold exactly.
    #[error("word degree {degree} exceeds what truncation size {n} can verify")]
    DegreeOverflow { degree: usize, n: usize },

    /// A coefficient vector still carries weight at the truncation boundary.
    #[error("vector tail at the truncation boundary is not negligible: {ctx}")]
    TailTooFat { ctx: String },
}

pub type Result<T> = std::result::Result<T, CoreError>;
