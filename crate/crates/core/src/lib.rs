//! Finite-dimensional C*-algebras of matrices and the constructive structure
//! theory around finitely generated right ideals: projection generators,
//! minimal projections and maximal right ideals, Wedderburn blocks, and
//! ternary rings of operators viewed as Hilbert C*-modules.

pub mod error;
pub mod fixture;
pub mod ideals;
pub mod matcore;
pub mod star_algebra;
pub mod planted;
pub mod selftest;
pub mod structure;
pub mod tro;
pub mod tol;

pub use error::{Error, Result};
pub use matcore::{ComplexMatrix, Subspace, C64};
pub use star_algebra::{generate_algebra, StarAlgebra};
pub use tol::Tolerances;
pub use fixture::Fixture;
pub use ideals::{projection_generator, ProjectionCertificate, RightIdeal};
pub use structure::{wedderburn_decompose, BlockDecomposition};
pub use tro::{classify_tro, Submodule, Tro, TroClassification};
