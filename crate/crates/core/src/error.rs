//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong across the exact-arithmetic engine and the
/// lattice validator. Variants are grouped roughly by module.
#[derive(Debug, Error)]
pub enum Error {
    /// An isotropy order does not divide the covering group order.
    #[error("isotropy order {isotropy} at marked point `{label}` does not divide group order {group_order}")]
    IsotropyMismatch {
        label: String,
        isotropy: u32,
        group_order: u64,
    },

    /// No smooth Galois cover of the requested order exists for this data.
    #[error("no smooth cover of order {group_order}: {detail}")]
    NonIntegralCover { group_order: u64, detail: String },

    /// Two bundles live on different base orbifolds.
    #[error("operands live on different base orbifolds")]
    BaseMismatch,

    /// A prescribed orbifold degree is incompatible with the monodromy data.
    #[error("orbifold degree {degree} minus the monodromy sum is not an integer")]
    NonIntegralSmoothDegree { degree: String },

    /// |G| * deg_orb must be an integer for an equivariant lift to exist.
    #[error("equivariant degree |G|*deg_orb = {value} is not an integer")]
    NonIntegralEquivariantDegree { value: String },

    /// The degree bound required by the spectral theory fails.
    #[error("degree hypothesis violated: {detail}")]
    HypothesisViolated { detail: String },

    /// A Landau level index beyond the certified validity range.
    #[error("level q = {q} exceeds the validity range q_max = {q_max}")]
    OutOfValidRange { q: i64, q_max: i64 },

    /// Vector or matrix dimensions do not match.
    #[error("dimension mismatch: {detail}")]
    DimensionMismatch { detail: String },

    /// Magnetic boundary phases fail the plaquette consistency check.
    #[error("magnetic boundary phases are inconsistent: {detail}")]
    FluxInconsistency { detail: String },

    /// The iterative eigensolver did not reach the residual target.
    #[error("eigensolver failed to converge: {detail}")]
    ConvergenceFailure { detail: String },

    /// Eigenvalue clustering has no clean scale separation.
    #[error("eigenvalue clustering is ambiguous: {detail}")]
    AmbiguousClustering { detail: String },

    /// No gauge phase assignment makes the symmetry commute with H.
    #[error("symmetry lift failed: {detail}")]
    SymmetryBroken { detail: String },

    /// The lifted symmetry squared is not scalar on an eigenspace.
    #[error("symmetry squared is not scalar on the eigenspace: {detail}")]
    NonInvolutive { detail: String },

    /// Malformed or inconsistent input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
