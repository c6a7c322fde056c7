//! Dense operator algebra over labeled tensor-product spaces.

pub mod haar;
pub mod info;
pub mod layout;
pub mod linalg;
pub mod operator;
pub mod purify;

pub use haar::{haar_unitary, unitarity_defect};
pub use info::{
    binary_entropy, eta, holevo, relative_entropy, shannon_entropy, von_neumann_entropy,
    ProbVector, RelativeEntropy,
};
pub use layout::SubsystemLayout;
pub use linalg::{CMatrix, CVector, C64};
pub use operator::{
    matrix_trace_norm, min_eigenvalue, partial_trace, partial_transpose, tensor, trace_norm,
    Operator,
};
pub use purify::{purification, purification_sqrt, purify, Purification};

/// Hermiticity tolerance: largest allowed |M - M^dag| entry.
pub const TAU_HERM: f64 = 1e-10;
/// Trace tolerance for states and probability vectors.
pub const TAU_TR: f64 = 1e-10;
/// Eigenvalues down to -TAU_PSD count as zero.
pub const TAU_PSD: f64 = 1e-9;
/// Support threshold for relative entropy.
pub const TAU_SUPP: f64 = 1e-9;
/// Default limit on the total dimension of dense materializations.
pub const DEFAULT_DENSE_CAP: usize = 4096;

/// Fails with `SizeCap` when `dim` exceeds `cap`.
pub fn check_cap(dim: usize, cap: usize) -> crate::Result<()> {
    if dim > cap {
        Err(crate::Error::SizeCap { dim, cap })
    } else {
        Ok(())
    }
}
