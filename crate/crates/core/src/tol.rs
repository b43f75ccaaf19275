use serde::{Deserialize, Serialize};

/// Numerical tolerances shared by every routine. All are relative to the
/// scale of the input they are applied to.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Eigendecomposition reconstruction and unitarity.
    pub spec: f64,
    /// Rank decisions during orthonormalization.
    pub rank: f64,
    /// Subspace membership.
    pub member: f64,
    /// Spectral gap width around thresholds.
    pub gap: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            spec: 1e-10,
            rank: 1e-9,
            member: 1e-8,
            gap: 1e-7,
        }
    }
}
