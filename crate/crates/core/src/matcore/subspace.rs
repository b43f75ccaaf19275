//! Subspaces of rectangular matrices, carried by a Hilbert–Schmidt
//! orthonormal basis.

use serde::Serialize;

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct Subspace {
    rows: usize,
    cols: usize,
    basis: Vec<ComplexMatrix>,
}

/// Result of expanding a matrix against a subspace basis.
#[derive(Debug, Clone)]
pub struct Membership {
    pub coefficients: Vec<C64>,
    pub residual: f64,
}

impl Subspace {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Subspace {
            rows,
            cols,
            basis: Vec::new(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    fn check_shape(&self, x: &ComplexMatrix) -> Result<()> {
        if x.shape() != self.shape() {
            return Err(Error::ShapeMismatch {
                expected: self.shape(),
                found: x.shape(),
            });
        }
        Ok(())
    }

    /// Remove the component of `v` along the current basis, twice.
    fn reduce(&self, v: &mut ComplexMatrix) {
        for _ in 0..2 {
            for b in &self.basis {
                let c = v.hs_inner(b);
                v.axpy(-c, b);
            }
        }
    }

    /// Modified Gram–Schmidt step with one reorthogonalization pass. The
    /// candidate is kept when its residual exceeds `tol_rank * scale`.
    /// Returns whether the dimension grew.
    pub fn try_push(&mut self, v: &ComplexMatrix, scale: f64, tol_rank: f64) -> Result<bool> {
        self.check_shape(v)?;
        let mut r = v.clone();
        self.reduce(&mut r);
        let norm = r.hs_norm();
        if norm <= tol_rank * scale || norm == 0.0 {
            return Ok(false);
        }
        self.basis.push(r.scale_real(1.0 / norm));
        Ok(true)
    }

    /// Coefficients against the basis and the HS norm of what is left.
    pub fn solve_membership(&self, x: &ComplexMatrix) -> Result<Membership> {
        self.check_shape(x)?;
        let coefficients: Vec<C64> = self.basis.iter().map(|b| x.hs_inner(b)).collect();
        let mut r = x.clone();
        for (c, b) in coefficients.iter().zip(&self.basis) {
            r.axpy(-*c, b);
        }
        Ok(Membership {
            coefficients,
            residual: r.hs_norm(),
        })
    }

    /// Residual of `x` relative to `max(1, ‖x‖)`.
    pub fn relative_residual(&self, x: &ComplexMatrix) -> Result<f64> {
        let m = self.solve_membership(x)?;
        Ok(m.residual / x.hs_norm().max(1.0))
    }

    pub fn contains(&self, x: &ComplexMatrix, tol_member: f64) -> Result<bool> {
        Ok(self.relative_residual(x)? <= tol_member)
    }

    /// Orthogonal projection of `x` onto the subspace.
    pub fn project(&self, x: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.check_shape(x)?;
        let mut out = ComplexMatrix::zeros(self.rows, self.cols);
        for b in &self.basis {
            out.axpy(x.hs_inner(b), b);
        }
        Ok(out)
    }

    /// `Σ cᵢ bᵢ`.
    pub fn combine(&self, coefficients: &[C64]) -> ComplexMatrix {
        assert_eq!(coefficients.len(), self.dim());
        let mut out = ComplexMatrix::zeros(self.rows, self.cols);
        for (c, b) in coefficients.iter().zip(&self.basis) {
            out.axpy(*c, b);
        }
        out
    }

    /// Largest relative residual of `other`'s basis inside `self`.
    pub fn max_residual_of(&self, other: &Subspace) -> Result<f64> {
        other
            .basis
            .iter()
            .try_fold(0.0f64, |acc, b| Ok(acc.max(self.relative_residual(b)?)))
    }

    /// Symmetric containment residual: zero iff the spans coincide.
    pub fn span_distance(&self, other: &Subspace) -> Result<f64> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch {
                expected: self.shape(),
                found: other.shape(),
            });
        }
        Ok(self.max_residual_of(other)?.max(other.max_residual_of(self)?))
    }

    pub fn same_span(&self, other: &Subspace, tol_member: f64) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.span_distance(other)? <= tol_member)
    }

    /// `max |<bᵢ, bⱼ> − δᵢⱼ|` over basis pairs.
    pub fn orthonormality_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.basis.iter().enumerate() {
            for (j, b) in self.basis.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((a.hs_inner(b) - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

/// Orthonormalize `vectors` of shape `rows × cols`. A vector is discarded when
/// its residual against the vectors already kept is at most `tol_rank` times
/// the largest input norm.
pub fn orthonormalize(
    rows: usize,
    cols: usize,
    vectors: &[ComplexMatrix],
    tol_rank: f64,
) -> Result<Subspace> {
    let scale = vectors.iter().map(|v| v.hs_norm()).fold(0.0, f64::max);
    let mut s = Subspace::zero(rows, cols);
    for v in vectors {
        s.try_push(v, scale, tol_rank)?;
    }
    Ok(s)
}

pub fn solve_membership(x: &ComplexMatrix, s: &Subspace) -> Result<Membership> {
    s.solve_membership(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: usize, j: usize) -> ComplexMatrix {
        ComplexMatrix::unit(2, 2, i, j)
    }

    #[test]
    fn duplicates_collapse() {
        let s = orthonormalize(2, 2, &[e(0, 0), e(0, 0)], 1e-9).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.basis()[0].distance(&e(0, 0)) < 1e-15);
    }

    #[test]
    fn empty_input_gives_zero_subspace() {
        let s = orthonormalize(2, 2, &[], 1e-9).unwrap();
        assert_eq!(s.dim(), 0);
        assert!(s.is_zero());
    }

    #[test]
    fn rank_two_from_three_vectors() {
        let v = [&e(0, 0) + &e(0, 1), &e(0, 0) - &e(0, 1), e(0, 0)];
        let s = orthonormalize(2, 2, &v, 1e-9).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&e(0, 0), 1e-8).unwrap());
        assert!(s.contains(&e(0, 1), 1e-8).unwrap());
        assert!(!s.contains(&e(1, 1), 1e-8).unwrap());
        assert!(s.orthonormality_defect() < 1e-14);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let v = [e(0, 0), ComplexMatrix::zeros(3, 3)];
        assert!(matches!(
            orthonormalize(2, 2, &v, 1e-9),
            Err(Error::ShapeMismatch { .. })
        ));
    }

    #[test]
    fn membership_examples() {
        let s = orthonormalize(2, 2, &[e(0, 0)], 1e-9).unwrap();
        let zero = s.solve_membership(&ComplexMatrix::zeros(2, 2)).unwrap();
        assert_eq!(zero.residual, 0.0);
        assert!(zero.coefficients.iter().all(|c| c.norm() == 0.0));

        let own = s.solve_membership(&e(0, 0)).unwrap();
        assert!((own.coefficients[0] - C64::new(1.0, 0.0)).norm() < 1e-15);
        assert!(own.residual < 1e-15);

        let off = s.solve_membership(&e(1, 1)).unwrap();
        assert!((off.residual - 1.0).abs() < 1e-15);
    }
}
