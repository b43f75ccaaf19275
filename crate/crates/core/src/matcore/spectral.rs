//! Hermitian eigendecomposition and the functional calculus built on it.

use std::ops::Range;

use nalgebra::linalg::SymmetricEigen;

use super::matrix::{ComplexMatrix, C64};
use crate::error::{Error, Result};
use crate::tol::Tolerances;

const MAX_EIG_ITERATIONS: usize = 10_000;

/// `M = U diag(λ) U*` with eigenvalues ascending.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub basis: ComplexMatrix,
}

/// How the spectrum of a matrix splits into a cluster around zero and the rest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroSplit {
    /// Number of eigenvalues in the zero cluster. Only meaningful for
    /// positive semidefinite input, where the cluster is a prefix.
    pub zero_count: usize,
    /// Largest absolute eigenvalue inside the zero cluster (0 if empty).
    pub zero_max: f64,
    /// Smallest eigenvalue outside the cluster.
    pub rest_min: Option<f64>,
    pub scale: f64,
}

pub fn hermitian_eig(m: &ComplexMatrix, tol: f64) -> Result<SpectralDecomposition> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch {
            expected: (m.rows(), m.rows()),
            found: m.shape(),
        });
    }
    let norm = m.hs_norm();
    let asymmetry = m.asymmetry();
    if asymmetry > tol * norm.max(1.0) {
        return Err(Error::NotSelfAdjoint { asymmetry });
    }
    let sym = m.hermitian_part().into_nalgebra();
    let mut last = String::from("Hermitian eigensolver did not converge");
    // A looser deflation threshold is tried when the tight one misbehaves.
    for eps in [f64::EPSILON, 1e-14] {
        let Some(eig) = SymmetricEigen::try_new(sym.clone(), eps, MAX_EIG_ITERATIONS) else {
            continue;
        };
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
        let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let vectors = eig.eigenvectors.select_columns(order.iter());
        let decomposition = SpectralDecomposition {
            eigenvalues,
            basis: ComplexMatrix::from_nalgebra(vectors),
        };

        let recon = decomposition.apply(|t| t).distance(m);
        let unitarity = decomposition.unitarity_defect();
        if recon <= tol * norm.max(1.0) && unitarity <= tol {
            return Ok(decomposition);
        }
        last = format!(
            "eigendecomposition residuals too large (reconstruction {recon:.3e}, unitarity {unitarity:.3e})"
        );
    }
    Err(Error::NumericalFailure(last))
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `U diag(f(λ)) U*`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        self.apply_complex(|t| C64::new(f(t), 0.0))
    }

    /// `U diag(f(λ)) U*` for complex-valued `f`, e.g. `t ↦ exp(it)`.
    pub fn apply_complex(&self, f: impl Fn(f64) -> C64) -> ComplexMatrix {
        let n = self.dim();
        let u = self.basis.as_nalgebra();
        let mut scaled = u.clone();
        for (j, &lambda) in self.eigenvalues.iter().enumerate() {
            let fj = f(lambda);
            for i in 0..n {
                scaled[(i, j)] *= fj;
            }
        }
        ComplexMatrix::from_nalgebra(scaled * u.adjoint())
    }

    /// Orthogonal projection onto the span of the eigenvectors at `indices`.
    pub fn projection_onto(&self, indices: Range<usize>) -> ComplexMatrix {
        let n = self.dim();
        let cols = self.basis.as_nalgebra().columns(indices.start, indices.len());
        let p = cols * cols.adjoint();
        debug_assert_eq!(p.nrows(), n);
        ComplexMatrix::from_nalgebra(p)
    }

    /// Eigenvectors at `indices` as column vectors.
    pub fn eigenvectors(&self, indices: Range<usize>) -> Vec<Vec<C64>> {
        indices.map(|j| self.basis.column(j)).collect()
    }

    pub fn spectral_radius(&self) -> f64 {
        self.eigenvalues.iter().fold(0.0, |acc, &l| acc.max(l.abs()))
    }

    /// Group consecutive eigenvalues whose neighbours are closer than `width`.
    pub fn clusters(&self, width: f64) -> Vec<Range<usize>> {
        let mut out = Vec::new();
        let mut start = 0;
        for i in 1..=self.dim() {
            if i == self.dim() || self.eigenvalues[i] - self.eigenvalues[i - 1] > width {
                if i > start {
                    out.push(start..i);
                }
                start = i;
            }
        }
        out
    }

    /// Split off the eigenvalues within `tol.gap` (relative to the spectral
    /// radius) of zero.
    pub fn zero_split(&self, tol: &Tolerances) -> ZeroSplit {
        let scale = self.spectral_radius();
        let window = tol.gap * scale;
        let mut zero_count = 0;
        let mut zero_max: f64 = 0.0;
        let mut rest_min: Option<f64> = None;
        for &l in &self.eigenvalues {
            if l.abs() <= window || scale == 0.0 {
                zero_count += 1;
                zero_max = zero_max.max(l.abs());
            } else {
                rest_min = Some(rest_min.map_or(l, |r: f64| r.min(l)));
            }
        }
        ZeroSplit {
            zero_count,
            zero_max,
            rest_min,
            scale,
        }
    }

    fn unitarity_defect(&self) -> f64 {
        let u = self.basis.as_nalgebra();
        let gram = u.adjoint() * u;
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                let target = if i == j { 1.0 } else { 0.0 };
                acc += (gram[(i, j)] - C64::new(target, 0.0)).norm_sqr();
            }
        }
        acc.sqrt()
    }
}

/// `f(M)` computed eigenvalue-wise.
pub fn functional_calculus(
    m: &ComplexMatrix,
    f: impl Fn(f64) -> f64,
    tol: f64,
) -> Result<ComplexMatrix> {
    Ok(hermitian_eig(m, tol)?.apply(f))
}

/// Projection onto the eigenvectors of `m` with eigenvalue above `tau`.
///
/// `tau` must sit in a spectral gap: no eigenvalue may lie within
/// `tol.gap` times the spectral radius of it.
pub fn spectral_projection_above(
    m: &ComplexMatrix,
    tau: f64,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    let decomposition = hermitian_eig(m, tol.spec)?;
    projection_above(&decomposition, tau, tol)
}

/// Same as [`spectral_projection_above`] on an existing decomposition.
pub fn projection_above(
    decomposition: &SpectralDecomposition,
    tau: f64,
    tol: &Tolerances,
) -> Result<ComplexMatrix> {
    let window = tol.gap * decomposition.spectral_radius().max(tau.abs());
    if let Some(&eigenvalue) = decomposition
        .eigenvalues
        .iter()
        .find(|&&l| (l - tau).abs() <= window)
    {
        return Err(Error::ThresholdInsideSpectrum { tau, eigenvalue });
    }
    let first_above = decomposition.eigenvalues.partition_point(|&l| l <= tau);
    Ok(decomposition.projection_onto(first_above..decomposition.dim()))
}

/// Range (support) projection of a positive semidefinite matrix.
pub fn range_projection(m: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let decomposition = hermitian_eig(m, tol.spec)?;
    let split = decomposition.zero_split(tol);
    Ok(decomposition.projection_onto(split.zero_count..decomposition.dim()))
}

/// `(M^+)^{1/2}` for positive semidefinite `M`: inverse square root on the
/// range, zero on the kernel.
pub fn pinv_sqrt(m: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    let decomposition = hermitian_eig(m, tol.spec)?;
    let split = decomposition.zero_split(tol);
    let window = tol.gap * split.scale;
    Ok(decomposition.apply(|t| if t.abs() <= window || t <= 0.0 { 0.0 } else { t.powf(-0.5) }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn identity_and_diagonal() {
        let d = hermitian_eig(&ComplexMatrix::identity(2), 1e-10).unwrap();
        assert_eq!(d.eigenvalues.len(), 2);
        assert!(d.eigenvalues.iter().all(|&l| (l - 1.0).abs() < 1e-14));

        let d = hermitian_eig(&ComplexMatrix::from_diagonal(&[3.0, 1.0]), 1e-10).unwrap();
        assert!((d.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((d.eigenvalues[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn swap_matrix_eigenvectors() {
        let x = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let d = hermitian_eig(&x, 1e-10).unwrap();
        assert!((d.eigenvalues[0] + 1.0).abs() < 1e-14);
        assert!((d.eigenvalues[1] - 1.0).abs() < 1e-14);
        let s = std::f64::consts::FRAC_1_SQRT_2;
        // Columns are (1, -1)/√2 and (1, 1)/√2 up to phase.
        let v0 = d.basis.column(0);
        let v1 = d.basis.column(1);
        let overlap0 = (v0[0] * s - v0[1] * s).norm();
        let overlap1 = (v1[0] * s + v1[1] * s).norm();
        assert!((overlap0 - 1.0).abs() < 1e-12);
        assert!((overlap1 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn rejects_non_self_adjoint() {
        let m = ComplexMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(hermitian_eig(&m, 1e-10), Err(Error::NotSelfAdjoint { .. })));
    }

    #[test]
    fn functional_calculus_examples() {
        let m = ComplexMatrix::from_real_rows(&[&[2.0, 1.0], &[1.0, 3.0]]);
        let id = functional_calculus(&m, |t| t, 1e-10).unwrap();
        assert!(id.distance(&m) < 1e-13);

        let q = functional_calculus(&ComplexMatrix::from_diagonal(&[16.0, 0.0]), |t| t.powf(0.25), 1e-10)
            .unwrap();
        assert!(q.distance(&ComplexMatrix::from_diagonal(&[2.0, 0.0])) < 1e-13);

        let half = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]);
        let ind = functional_calculus(&half, |t| if t >= 0.5 { 1.0 } else { 0.0 }, 1e-10).unwrap();
        assert!(ind.distance(&half) < 1e-13);
    }

    #[test]
    fn projection_above_examples() {
        let t = tol();
        let p = spectral_projection_above(&ComplexMatrix::from_diagonal(&[1.0, 0.0]), 0.5, &t).unwrap();
        assert!(p.distance(&ComplexMatrix::from_diagonal(&[1.0, 0.0])) < 1e-13);
        let p = spectral_projection_above(&ComplexMatrix::identity(3), 0.5, &t).unwrap();
        assert!(p.distance(&ComplexMatrix::identity(3)) < 1e-13);
        let p = spectral_projection_above(&ComplexMatrix::from_diagonal(&[4.0, 1.0, 0.0]), 0.5, &t).unwrap();
        assert!(p.distance(&ComplexMatrix::from_diagonal(&[1.0, 1.0, 0.0])) < 1e-13);
    }

    #[test]
    fn threshold_inside_spectrum_is_rejected() {
        let m = ComplexMatrix::from_diagonal(&[1.0, 0.5]);
        assert!(matches!(
            spectral_projection_above(&m, 0.5, &tol()),
            Err(Error::ThresholdInsideSpectrum { .. })
        ));
    }

    #[test]
    fn clusters_group_near_eigenvalues() {
        let d = hermitian_eig(&ComplexMatrix::from_diagonal(&[0.0, 1e-12, 1.0, 1.0, 2.0]), 1e-10).unwrap();
        let c = d.clusters(1e-7);
        assert_eq!(c, vec![0..2, 2..4, 4..5]);
        let split = d.zero_split(&tol());
        assert_eq!(split.zero_count, 2);
        assert_eq!(split.rest_min, Some(1.0));
    }

    #[test]
    fn pinv_sqrt_inverts_on_range() {
        let m = ComplexMatrix::from_diagonal(&[4.0, 0.0, 0.25]);
        let r = pinv_sqrt(&m, &tol()).unwrap();
        assert!(r.distance(&ComplexMatrix::from_diagonal(&[0.5, 0.0, 2.0])) < 1e-13);
    }
}
