//! Dense complex-matrix numerics: the carrier type, Hermitian spectral
//! calculus and Hilbert–Schmidt subspace arithmetic.

mod matrix;
mod spectral;
mod subspace;
mod svd;

pub use matrix::{ComplexMatrix, C64};
pub use spectral::{
    functional_calculus, hermitian_eig, pinv_sqrt, projection_above, range_projection,
    spectral_projection_above, SpectralDecomposition, ZeroSplit,
};
pub use svd::{checked_svd, ComplexSvd};
pub use subspace::{orthonormalize, solve_membership, Membership, Subspace};
